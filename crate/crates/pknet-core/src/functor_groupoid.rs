//! Chord classes and the groupoid they span. A [`ChordClass`] is a functor
//! from a finite shape category into a finite group (presented as its
//! one-object category), and a [`ClassMorphism`] is a natural transformation
//! between two such functors — always invertible, because the components
//! live in a group. Hom-sets are enumerated exactly: by propagation from the
//! bottom object when the shape is a poset with a bottom, by a
//! spanning-forest search otherwise. [`materialize`] turns a family of
//! classes into an explicit [`Groupoid`] with one morphism per natural
//! transformation.

use std::collections::HashMap;
use std::sync::Arc;

use crate::category::{deloop, FinCategory, Functor, Groupoid, MorId, MorphismData, ObjId};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;

/// A functor from a shape category `delta` into a group: one group element
/// per shape morphism, identities to the identity, composition to products.
#[derive(Clone)]
pub struct ChordClass {
    name: String,
    delta: Arc<FinCategory>,
    group: Arc<FiniteGroup>,
    images: Vec<usize>,
}

impl std::fmt::Debug for ChordClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "ChordClass({} over {})", self.name, self.delta.name())
    }
}

impl ChordClass {
    /// Total assignment, one group element index per shape morphism.
    pub fn try_new(
        name: impl Into<String>,
        delta: Arc<FinCategory>,
        group: Arc<FiniteGroup>,
        images: Vec<usize>,
    ) -> Result<Self> {
        let name = name.into();
        if images.len() != delta.morphism_count() {
            return Err(Error::NotAFunctor(format!(
                "class {name:?} assigns {} images to {} morphisms",
                images.len(),
                delta.morphism_count()
            )));
        }
        if images.iter().any(|&g| g >= group.order()) {
            return Err(Error::NotAFunctor(format!(
                "class {name:?} assigns an out-of-range group element"
            )));
        }
        for o in 0..delta.object_count() {
            if images[delta.identity(o)] != group.identity() {
                return Err(Error::NotAFunctor(format!(
                    "class {name:?} sends the identity of {:?} to {}",
                    delta.object_label(o),
                    group.label(images[delta.identity(o)])
                )));
            }
        }
        for m1 in 0..delta.morphism_count() {
            for m2 in 0..delta.morphism_count() {
                if let Some(m) = delta.compose(m2, m1) {
                    let product = group.mul(images[m2], images[m1]);
                    if images[m] != product {
                        return Err(Error::NotAFunctor(format!(
                            "class {name:?} breaks composition at ({}, {}): {} ≠ {}",
                            delta.morphism(m2).label,
                            delta.morphism(m1).label,
                            group.label(images[m]),
                            group.label(product)
                        )));
                    }
                }
            }
        }
        Ok(ChordClass {
            name,
            delta,
            group,
            images,
        })
    }

    /// Partial assignment by label, extended by closure: composites of known
    /// images are filled in, and since the target is a group, a known
    /// composite with one known factor determines the other factor.
    pub fn from_labels(
        name: impl Into<String>,
        delta: Arc<FinCategory>,
        group: Arc<FiniteGroup>,
        assignments: &[(&str, &str)],
    ) -> Result<Self> {
        let name = name.into();
        let mut images: Vec<Option<usize>> = vec![None; delta.morphism_count()];
        for o in 0..delta.object_count() {
            images[delta.identity(o)] = Some(group.identity());
        }
        for &(morphism, element) in assignments {
            let m = delta.morphism_index(morphism)?;
            let g = group.index_of(element)?;
            if let Some(prev) = images[m] {
                if prev != g {
                    return Err(Error::NotAFunctor(format!(
                        "class {name:?} assigns {:?} twice",
                        morphism
                    )));
                }
            }
            images[m] = Some(g);
        }
        let mut changed = true;
        while changed {
            changed = false;
            for m1 in 0..delta.morphism_count() {
                for m2 in 0..delta.morphism_count() {
                    let Some(m) = delta.compose(m2, m1) else { continue };
                    let filled = match (images[m], images[m2], images[m1]) {
                        (None, Some(a2), Some(a1)) => Some((m, group.mul(a2, a1))),
                        (Some(a), None, Some(a1)) => Some((m2, group.mul(a, group.inv(a1)))),
                        (Some(a), Some(a2), None) => Some((m1, group.mul(group.inv(a2), a))),
                        _ => None,
                    };
                    if let Some((slot, value)) = filled {
                        images[slot] = Some(value);
                        changed = true;
                    }
                }
            }
        }
        let images: Vec<usize> = images
            .into_iter()
            .enumerate()
            .map(|(m, img)| {
                img.ok_or_else(|| {
                    Error::NotAFunctor(format!(
                        "class {name:?} leaves {:?} without an image",
                        delta.morphism(m).label
                    ))
                })
            })
            .collect::<Result<_>>()?;
        Self::try_new(name, delta, group, images)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn delta(&self) -> &Arc<FinCategory> {
        &self.delta
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn image(&self, m: MorId) -> usize {
        self.images[m]
    }

    pub fn image_label(&self, morphism: &str) -> Result<String> {
        let m = self.delta.morphism_index(morphism)?;
        Ok(self.group.label(self.images[m]).to_string())
    }

    /// Structural equality: same name, shape, group and assignment.
    pub fn same_class(&self, other: &ChordClass) -> bool {
        self.name == other.name
            && self.delta.same_category(&other.delta)
            && self.group.same_group(&other.group)
            && self.images == other.images
    }

    /// Shares shape and group with `other` (morphisms may differ).
    pub fn compatible(&self, other: &ChordClass) -> bool {
        self.delta.same_category(&other.delta) && self.group.same_group(&other.group)
    }

    /// The same data as an honest functor into the one-object category of
    /// the group (morphism ids there coincide with element indices).
    pub fn to_functor(&self) -> (Arc<FinCategory>, Functor) {
        let target = deloop(&self.group).expect("group table is valid");
        let functor = Functor::try_new(
            Arc::clone(&self.delta),
            Arc::clone(&target),
            vec![0; self.delta.object_count()],
            self.images.clone(),
        )
        .expect("class assignments were validated as a functor");
        (target, functor)
    }

    /// The object indexing hom-sets: the bottom when the shape has one,
    /// otherwise object 0.
    pub fn anchor_object(&self) -> ObjId {
        self.delta.thin_bottom().unwrap_or(0)
    }
}

/// A natural transformation between two compatible classes: one group
/// element per shape object, satisfying every naturality square.
#[derive(Clone)]
pub struct ClassMorphism {
    source: Arc<ChordClass>,
    target: Arc<ChordClass>,
    components: Vec<usize>,
}

impl ClassMorphism {
    pub fn try_new(
        source: Arc<ChordClass>,
        target: Arc<ChordClass>,
        components: Vec<usize>,
    ) -> Result<Self> {
        if !source.compatible(&target) {
            return Err(Error::ClassMismatch(format!(
                "{} and {} do not share shape and group",
                source.name(),
                target.name()
            )));
        }
        let delta = source.delta();
        let group = source.group();
        if components.len() != delta.object_count() {
            return Err(Error::NotNatural(
                "one component per shape object required".into(),
            ));
        }
        if components.iter().any(|&c| c >= group.order()) {
            return Err(Error::NotNatural("component out of range".into()));
        }
        for m in 0..delta.morphism_count() {
            let (x, y) = (delta.src(m), delta.tgt(m));
            let left = group.mul(components[y], source.image(m));
            let right = group.mul(target.image(m), components[x]);
            if left != right {
                return Err(Error::NotNatural(format!(
                    "square at {:?} fails: {}·{} = {} but {}·{} = {}",
                    delta.morphism(m).label,
                    group.label(components[y]),
                    group.label(source.image(m)),
                    group.label(left),
                    group.label(target.image(m)),
                    group.label(components[x]),
                    group.label(right)
                )));
            }
        }
        Ok(ClassMorphism {
            source,
            target,
            components,
        })
    }

    pub fn identity(class: &Arc<ChordClass>) -> ClassMorphism {
        ClassMorphism {
            source: Arc::clone(class),
            target: Arc::clone(class),
            components: vec![class.group().identity(); class.delta().object_count()],
        }
    }

    pub fn source(&self) -> &Arc<ChordClass> {
        &self.source
    }

    pub fn target(&self) -> &Arc<ChordClass> {
        &self.target
    }

    pub fn components(&self) -> &[usize] {
        &self.components
    }

    pub fn component(&self, o: ObjId) -> usize {
        self.components[o]
    }

    pub fn component_labels(&self) -> Vec<String> {
        self.components
            .iter()
            .map(|&c| self.source.group().label(c).to_string())
            .collect()
    }

    /// The component at the anchor object; in a poset-with-bottom shape it
    /// determines the whole transformation.
    pub fn anchor(&self) -> usize {
        self.components[self.source.anchor_object()]
    }

    /// Display name `^{UV}T3`: source and target class names, then the
    /// anchor component.
    pub fn label(&self) -> String {
        format!(
            "^{{{}{}}}{}",
            self.source.name(),
            self.target.name(),
            self.source.group().label(self.anchor())
        )
    }

    pub fn is_identity(&self) -> bool {
        self.source.same_class(&self.target)
            && self
                .components
                .iter()
                .all(|&c| c == self.source.group().identity())
    }

    /// `self ∘ first` (apply `first`, then `self`), composed pointwise.
    pub fn compose(&self, first: &ClassMorphism) -> Result<ClassMorphism> {
        if !first.target.same_class(&self.source) {
            return Err(Error::ClassMismatch(format!(
                "cannot compose: {} lands in {} but the next step leaves {}",
                first.label(),
                first.target.name(),
                self.source.name()
            )));
        }
        let group = self.source.group();
        let components: Vec<usize> = self
            .components
            .iter()
            .zip(&first.components)
            .map(|(&a, &b)| group.mul(a, b))
            .collect();
        let composed = ClassMorphism {
            source: Arc::clone(&first.source),
            target: Arc::clone(&self.target),
            components,
        };
        debug_assert!(composed.clone().revalidate().is_ok());
        Ok(composed)
    }

    pub fn inverse(&self) -> ClassMorphism {
        let group = self.source.group();
        ClassMorphism {
            source: Arc::clone(&self.target),
            target: Arc::clone(&self.source),
            components: self.components.iter().map(|&c| group.inv(c)).collect(),
        }
    }

    fn revalidate(self) -> Result<Self> {
        ClassMorphism::try_new(self.source, self.target, self.components)
    }

    /// Bridge to the category-level machinery (used for cross-checking).
    pub fn to_natural_transformation(&self) -> crate::category::NaturalTransformation {
        let (target_cat, f) = self.source.to_functor();
        let f2 = Functor::try_new(
            Arc::clone(self.target.delta()),
            target_cat,
            vec![0; self.target.delta().object_count()],
            self.target.images().to_vec(),
        )
        .expect("class assignments were validated as a functor");
        crate::category::NaturalTransformation::try_new(f, f2, self.components.clone())
            .expect("class morphism components were validated as natural")
    }
}

impl PartialEq for ClassMorphism {
    fn eq(&self, other: &Self) -> bool {
        self.source.same_class(&other.source)
            && self.target.same_class(&other.target)
            && self.components == other.components
    }
}

impl std::fmt::Debug for ClassMorphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} {:?}", self.label(), self.component_labels())
    }
}

fn require_compatible(src: &ChordClass, tgt: &ChordClass) -> Result<()> {
    if src.compatible(tgt) {
        Ok(())
    } else {
        Err(Error::ClassMismatch(format!(
            "{} and {} do not share shape and group",
            src.name(),
            tgt.name()
        )))
    }
}

/// All natural transformations `src ⇒ tgt`. When the shape is a poset with a
/// bottom object the set is in bijection with the group: each element `g`
/// propagates to the component family `X ↦ tgt(0→X) · g · src(0→X)⁻¹`, and
/// the result is ordered by `g`. Other shapes fall back to
/// [`homset_general`].
pub fn homset(src: &Arc<ChordClass>, tgt: &Arc<ChordClass>) -> Result<Vec<ClassMorphism>> {
    require_compatible(src, tgt)?;
    let delta = src.delta();
    let Some(bottom) = delta.thin_bottom() else {
        return homset_general(src, tgt);
    };
    let group = src.group();
    let to_object: Vec<MorId> = (0..delta.object_count())
        .map(|x| delta.hom(bottom, x)[0])
        .collect();
    let mut out = Vec::with_capacity(group.order());
    for g in group.elements() {
        let components: Vec<usize> = to_object
            .iter()
            .map(|&m| group.mul(group.mul(tgt.image(m), g), group.inv(src.image(m))))
            .collect();
        out.push(
            ClassMorphism::try_new(Arc::clone(src), Arc::clone(tgt), components)
                .expect("propagation from the bottom object is always natural"),
        );
    }
    Ok(out)
}

/// Hom-set enumeration for arbitrary finite shapes: pick a base object per
/// connected component, propagate each choice of base components along a
/// spanning forest, and keep the families that satisfy every naturality
/// square. May be empty. Ordered lexicographically in the base components.
pub fn homset_general(src: &Arc<ChordClass>, tgt: &Arc<ChordClass>) -> Result<Vec<ClassMorphism>> {
    require_compatible(src, tgt)?;
    let delta = src.delta();
    let group = src.group();
    let n_obj = delta.object_count();

    let mut bases: Vec<ObjId> = Vec::new();
    {
        let mut seen = vec![false; delta.component_count()];
        for o in 0..n_obj {
            let c = delta.component_of(o);
            if !seen[c] {
                seen[c] = true;
                bases.push(o);
            }
        }
    }

    // Spanning forest: BFS from each base, remembering the morphism used to
    // reach each object and its direction.
    struct Step {
        parent: ObjId,
        via: MorId,
        forward: bool,
    }
    let mut steps: Vec<Option<Step>> = (0..n_obj).map(|_| None).collect();
    let mut order: Vec<ObjId> = Vec::with_capacity(n_obj);
    for &base in &bases {
        let mut queue = std::collections::VecDeque::from([base]);
        let mut visited = vec![false; n_obj];
        visited[base] = true;
        order.push(base);
        while let Some(o) = queue.pop_front() {
            for m in 0..delta.morphism_count() {
                let (s, t) = (delta.src(m), delta.tgt(m));
                let (next, forward) = if s == o {
                    (t, true)
                } else if t == o {
                    (s, false)
                } else {
                    continue;
                };
                if next == o || visited[next] || steps[next].is_some() {
                    continue;
                }
                visited[next] = true;
                steps[next] = Some(Step {
                    parent: o,
                    via: m,
                    forward,
                });
                order.push(next);
                queue.push_back(next);
            }
        }
    }

    let mut out = Vec::new();
    let mut choice = vec![0usize; bases.len()];
    loop {
        let mut components = vec![usize::MAX; n_obj];
        for (b, &base) in bases.iter().enumerate() {
            components[base] = choice[b];
        }
        for &o in &order {
            let Some(step) = &steps[o] else { continue };
            let parent = components[step.parent];
            // Forward edge m: parent → o forces η_o = tgt(m)·η_parent·src(m)⁻¹;
            // a backward edge solves the same square the other way round.
            components[o] = if step.forward {
                group.mul(
                    group.mul(tgt.image(step.via), parent),
                    group.inv(src.image(step.via)),
                )
            } else {
                group.mul(
                    group.mul(group.inv(tgt.image(step.via)), parent),
                    src.image(step.via),
                )
            };
        }
        if let Ok(morphism) =
            ClassMorphism::try_new(Arc::clone(src), Arc::clone(tgt), components)
        {
            out.push(morphism);
        }
        // Odometer: last base varies fastest.
        let mut pos = bases.len();
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            choice[pos] += 1;
            if choice[pos] < group.order() {
                break;
            }
            choice[pos] = 0;
        }
    }
}

/// A family of classes materialized into an explicit groupoid: objects are
/// the classes, morphisms the natural transformations, labelled `^{UV}T3`
/// by source, target and anchor component.
pub struct ClassGroupoid {
    groupoid: Groupoid,
    classes: Vec<Arc<ChordClass>>,
    morphisms: Vec<ClassMorphism>,
    by_anchor: HashMap<(usize, usize, usize), MorId>,
}

impl std::fmt::Debug for ClassGroupoid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "ClassGroupoid({} classes, {} morphisms)",
            self.classes.len(),
            self.morphisms.len()
        )
    }
}

impl ClassGroupoid {
    pub fn groupoid(&self) -> &Groupoid {
        &self.groupoid
    }

    pub fn classes(&self) -> &[Arc<ChordClass>] {
        &self.classes
    }

    pub fn class_index(&self, name: &str) -> Result<usize> {
        self.classes
            .iter()
            .position(|c| c.name() == name)
            .ok_or_else(|| Error::UnknownObject(name.to_string()))
    }

    pub fn class_morphism(&self, m: MorId) -> &ClassMorphism {
        &self.morphisms[m]
    }

    pub fn class_morphisms(&self) -> &[ClassMorphism] {
        &self.morphisms
    }

    /// Morphism id with the given endpoints and anchor component.
    pub fn morphism_id(&self, src: usize, tgt: usize, anchor: usize) -> Option<MorId> {
        self.by_anchor.get(&(src, tgt, anchor)).copied()
    }

    /// Lookup by class names and group element label, e.g. `("U", "V", "T3")`.
    pub fn find_morphism(&self, src: &str, tgt: &str, element: &str) -> Result<MorId> {
        let s = self.class_index(src)?;
        let t = self.class_index(tgt)?;
        let g = self.classes[s].group().index_of(element)?;
        self.morphism_id(s, t, g).ok_or_else(|| {
            Error::UnknownMorphism(format!("^{{{src}{tgt}}}{element}"))
        })
    }
}

/// Build the explicit groupoid over a family of compatible classes. The
/// shape must be a poset with a bottom object, so that hom-sets are indexed
/// by their anchor components and every hom-set has exactly one morphism per
/// group element.
pub fn materialize(classes: &[Arc<ChordClass>]) -> Result<ClassGroupoid> {
    if classes.is_empty() {
        return Err(Error::MalformedCategory(
            "cannot materialize an empty class family".into(),
        ));
    }
    for c in classes.iter().skip(1) {
        require_compatible(&classes[0], c)?;
    }
    {
        let mut names = std::collections::BTreeSet::new();
        for c in classes {
            if !names.insert(c.name()) {
                return Err(Error::ClassMismatch(format!(
                    "duplicate class name {:?}",
                    c.name()
                )));
            }
        }
    }
    let delta = classes[0].delta();
    if delta.thin_bottom().is_none() {
        return Err(Error::NotPosetWithBottom(delta.name().to_string()));
    }
    let group = classes[0].group();

    let mut morphisms: Vec<ClassMorphism> = Vec::new();
    let mut data: Vec<MorphismData> = Vec::new();
    let mut by_anchor: HashMap<(usize, usize, usize), MorId> = HashMap::new();
    for (i, src) in classes.iter().enumerate() {
        for (j, tgt) in classes.iter().enumerate() {
            for morphism in homset(src, tgt)? {
                let id = morphisms.len();
                by_anchor.insert((i, j, morphism.anchor()), id);
                data.push(MorphismData {
                    label: morphism.label(),
                    src: i,
                    tgt: j,
                });
                morphisms.push(morphism);
            }
        }
    }
    let identities: Vec<MorId> = (0..classes.len())
        .map(|i| by_anchor[&(i, i, group.identity())])
        .collect();
    let mut entries = Vec::new();
    for (m1, first) in morphisms.iter().enumerate() {
        let (i, j) = (data[m1].src, data[m1].tgt);
        for (m2, second) in morphisms.iter().enumerate() {
            if data[m2].src != j {
                continue;
            }
            let k = data[m2].tgt;
            let anchor = group.mul(second.anchor(), first.anchor());
            entries.push((m2, m1, by_anchor[&(i, k, anchor)]));
        }
    }
    let names: Vec<String> = classes.iter().map(|c| c.name().to_string()).collect();
    let category = FinCategory::try_new(
        format!("{}-classes", group.name()),
        names,
        data,
        identities,
        &entries,
    )?;
    let groupoid = Groupoid::try_new(Arc::new(category))?;
    Ok(ClassGroupoid {
        groupoid,
        classes: classes.to_vec(),
        morphisms,
        by_anchor,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::PosetCategory;
    use crate::group::{isomorphism, ti_group, TiElement};

    fn ti() -> Arc<FiniteGroup> {
        Arc::new(ti_group())
    }

    fn span_class(name: &str, f: i32, g: i32) -> Arc<ChordClass> {
        let span = PosetCategory::span();
        Arc::new(
            ChordClass::from_labels(
                name,
                Arc::clone(span.category()),
                ti(),
                &[("f", &format!("T{f}")), ("g", &format!("T{g}"))],
            )
            .unwrap(),
        )
    }

    fn t(n: i32) -> usize {
        TiElement::transposition(n).index()
    }

    fn i(n: i32) -> usize {
        TiElement::inversion(n).index()
    }

    #[test]
    fn endomorphisms_of_the_major_triad_class() {
        let u = span_class("U", 4, 7);
        let hom = homset(&u, &u).unwrap();
        assert_eq!(hom.len(), 24);
        for m in &hom {
            let e = TiElement::from_index(m.anchor());
            let expect: Vec<usize> = if e.is_transposition() {
                vec![m.anchor(); 3]
            } else {
                let p = e.shift() as i32;
                vec![i(p), i(p + 8), i(p + 2)]
            };
            assert_eq!(m.components(), &expect, "components of {}", m.label());
        }
    }

    #[test]
    fn transformations_between_distinct_classes() {
        let u = span_class("U", 4, 7);
        let v = span_class("V", 2, 5);
        let hom = homset(&u, &v).unwrap();
        assert_eq!(hom.len(), 24);
        for m in &hom {
            let e = TiElement::from_index(m.anchor());
            let p = e.shift() as i32;
            let expect: Vec<usize> = if e.is_transposition() {
                vec![t(p), t(p + 10), t(p + 10)]
            } else {
                vec![i(p), i(p + 6), i(p)]
            };
            assert_eq!(m.components(), &expect, "components of {}", m.label());
        }
    }

    #[test]
    fn propagation_agrees_with_forest_search() {
        let u = span_class("U", 4, 7);
        let v = span_class("V", 2, 5);
        for (a, b) in [(&u, &u), (&u, &v), (&v, &u), (&v, &v)] {
            let fast = homset(a, b).unwrap();
            let general = homset_general(a, b).unwrap();
            assert_eq!(fast.len(), general.len());
            for m in &fast {
                assert!(general.contains(m), "{} missing from forest search", m.label());
            }
        }
    }

    #[test]
    fn composition_inverse_and_identity() {
        let u = span_class("U", 4, 7);
        let v = span_class("V", 2, 5);
        let alpha = homset(&u, &v).unwrap().into_iter().find(|m| m.anchor() == t(3)).unwrap();
        assert_eq!(alpha.components(), &[t(3), t(1), t(1)]);
        let back = alpha.inverse();
        assert_eq!(back.components(), &[t(-3), t(-1), t(-1)]);
        let round = back.compose(&alpha).unwrap();
        assert!(round.is_identity());
        assert_eq!(round, ClassMorphism::identity(&u));
        assert_eq!(alpha.label(), "^{UV}T3");

        let w = span_class("W", 1, 1);
        let beta = homset(&v, &w).unwrap().into_iter().next().unwrap();
        let through = beta.compose(&alpha).unwrap();
        assert!(through.source().same_class(&u));
        assert!(through.target().same_class(&w));
        // Mismatched endpoints refuse to compose.
        assert!(matches!(
            alpha.compose(&beta),
            Err(Error::ClassMismatch(_))
        ));
    }

    #[test]
    fn naturality_is_enforced() {
        let u = span_class("U", 4, 7);
        let err =
            ClassMorphism::try_new(Arc::clone(&u), Arc::clone(&u), vec![i(8), i(8), i(8)])
                .unwrap_err();
        assert!(matches!(err, Error::NotNatural(_)));
        let ok = ClassMorphism::try_new(Arc::clone(&u), Arc::clone(&u), vec![i(8), i(4), i(10)])
            .unwrap();
        assert_eq!(ok.label(), "^{UU}I8");
        // The category-level bridge accepts the same data.
        let nt = ok.to_natural_transformation();
        assert_eq!(nt.components(), ok.components());
    }

    #[test]
    fn label_derivation_by_closure() {
        let triangle = PosetCategory::triangle();
        let c = ChordClass::from_labels(
            "C",
            Arc::clone(triangle.category()),
            ti(),
            &[("f", "T4"), ("g", "T3")],
        )
        .unwrap();
        assert_eq!(c.image_label("g∘f").unwrap(), "T7");
        // A known composite and one factor determine the other factor.
        let solved = ChordClass::from_labels(
            "C2",
            Arc::clone(triangle.category()),
            ti(),
            &[("f", "T4"), ("g∘f", "T7")],
        )
        .unwrap();
        assert_eq!(solved.image_label("g").unwrap(), "T3");
        let err = ChordClass::from_labels(
            "C3",
            Arc::clone(triangle.category()),
            ti(),
            &[("f", "T4"), ("g", "T3"), ("g∘f", "T8")],
        )
        .unwrap_err();
        assert!(matches!(err, Error::NotAFunctor(_)));
        let unfilled = ChordClass::from_labels(
            "C4",
            Arc::clone(triangle.category()),
            ti(),
            &[("f", "T4")],
        )
        .unwrap_err();
        assert!(matches!(unfilled, Error::NotAFunctor(_)));
    }

    #[test]
    fn inversion_generated_class_over_the_triangle() {
        let triangle = PosetCategory::triangle();
        let wb = ChordClass::from_labels(
            "Wb",
            Arc::clone(triangle.category()),
            ti(),
            &[("f", "I8"), ("g", "I9")],
        )
        .unwrap();
        assert_eq!(wb.image_label("g∘f").unwrap(), "T1");
        let wb = Arc::new(wb);
        assert_eq!(homset(&wb, &wb).unwrap().len(), 24);
    }

    #[test]
    fn materialized_groupoid_shape() {
        let u = span_class("U", 4, 7);
        let one = materialize(&[Arc::clone(&u)]).unwrap();
        assert_eq!(one.groupoid().morphism_count(), 24);

        let v = span_class("V", 2, 5);
        let two = materialize(&[Arc::clone(&u), Arc::clone(&v)]).unwrap();
        assert_eq!(two.groupoid().object_count(), 2);
        assert_eq!(two.groupoid().morphism_count(), 96);
        assert!(two.groupoid().is_connected());

        let (endos, _) = two.groupoid().endomorphism_group(0);
        assert!(isomorphism(&endos, &ti_group()).is_some());

        let m = two.find_morphism("U", "V", "T3").unwrap();
        assert_eq!(two.groupoid().morphism(m).label, "^{UV}T3");
        assert_eq!(two.class_morphism(m).components(), &[t(3), t(1), t(1)]);
        // Groupoid inverse matches the pointwise inverse.
        let w = two.groupoid().inverse(m);
        assert_eq!(two.class_morphism(w).components(), &[t(-3), t(-1), t(-1)]);
    }

    #[test]
    fn incompatible_classes_are_refused() {
        let u = span_class("U", 4, 7);
        let triangle = PosetCategory::triangle();
        let other = Arc::new(
            ChordClass::from_labels(
                "O",
                Arc::clone(triangle.category()),
                ti(),
                &[("f", "T4"), ("g", "T3")],
            )
            .unwrap(),
        );
        assert!(matches!(homset(&u, &other), Err(Error::ClassMismatch(_))));

        let z12 = Arc::new(FiniteGroup::cyclic(12).unwrap());
        let span = PosetCategory::span();
        let modal = Arc::new(
            ChordClass::from_labels(
                "M",
                Arc::clone(span.category()),
                z12,
                &[("f", "4"), ("g", "7")],
            )
            .unwrap(),
        );
        assert!(matches!(homset(&u, &modal), Err(Error::ClassMismatch(_))));
        assert!(matches!(
            materialize(&[u, modal]),
            Err(Error::ClassMismatch(_))
        ));
    }

    #[test]
    fn discrete_shape_falls_back_to_forest_search() {
        // Two objects, identities only: not a poset with a bottom, two
        // connected components, so hom-sets carry an independent choice per
        // component.
        let discrete = FinCategory::try_new(
            "discrete2",
            vec!["A".into(), "B".into()],
            vec![
                MorphismData { label: "id_A".into(), src: 0, tgt: 0 },
                MorphismData { label: "id_B".into(), src: 1, tgt: 1 },
            ],
            vec![0, 1],
            &[(0, 0, 0), (1, 1, 1)],
        )
        .unwrap();
        let delta = Arc::new(discrete);
        assert!(delta.thin_bottom().is_none());
        let z3 = Arc::new(FiniteGroup::cyclic(3).unwrap());
        let c = Arc::new(
            ChordClass::try_new("D", Arc::clone(&delta), z3, vec![0, 0]).unwrap(),
        );
        let hom = homset(&c, &c).unwrap();
        assert_eq!(hom.len(), 9);
        assert!(matches!(
            materialize(&[c]),
            Err(Error::NotPosetWithBottom(_))
        ));
    }

    #[test]
    fn duplicate_class_names_are_refused() {
        let u1 = span_class("U", 4, 7);
        let u2 = span_class("U", 2, 5);
        assert!(matches!(
            materialize(&[u1, u2]),
            Err(Error::ClassMismatch(_))
        ));
    }
}
