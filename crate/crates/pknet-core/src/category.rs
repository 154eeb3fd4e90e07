//! Finite categories represented extensionally: every object, every morphism
//! and the whole composition table are stored, so each axiom is checked by
//! exhaustion at construction time. On top of the plain [`FinCategory`] sit
//! thin poset shapes with a bottom object ([`PosetCategory`]), groupoids with
//! synthesized inverses ([`Groupoid`]), functors, natural transformations,
//! group actions on finite sets ([`GSet`]) and a categorical pullback.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::FiniteGroup;

pub type ObjId = usize;
pub type MorId = usize;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MorphismData {
    pub label: String,
    pub src: ObjId,
    pub tgt: ObjId,
}

/// A finite category. `compose[m2 * n + m1]` holds `m2 ∘ m1` (apply `m1`
/// first) and is populated exactly on composable pairs.
pub struct FinCategory {
    name: String,
    objects: Vec<String>,
    morphisms: Vec<MorphismData>,
    identities: Vec<MorId>,
    compose: Vec<Option<u32>>,
    /// Connected component id per object (undirected reachability).
    components: Vec<usize>,
    /// `Some(bottom)` iff the category is thin (at most one morphism per
    /// ordered object pair) and some object reaches every object.
    thin_bottom: Option<ObjId>,
}

impl fmt::Debug for FinCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FinCategory")
            .field("name", &self.name)
            .field("objects", &self.objects.len())
            .field("morphisms", &self.morphisms.len())
            .finish()
    }
}

impl FinCategory {
    /// Validates everything: bookkeeping, totality of composition on
    /// composable pairs, identity laws and associativity.
    pub fn try_new(
        name: impl Into<String>,
        objects: Vec<String>,
        morphisms: Vec<MorphismData>,
        identities: Vec<MorId>,
        compose_entries: &[(MorId, MorId, MorId)],
    ) -> Result<Self> {
        let name = name.into();
        let bad = |msg: String| Err(Error::MalformedCategory(msg));
        if objects.is_empty() {
            return bad(format!("category {name:?} has no objects"));
        }
        let n_obj = objects.len();
        let n_mor = morphisms.len();
        {
            let mut seen = HashMap::new();
            for (i, o) in objects.iter().enumerate() {
                if seen.insert(o.clone(), i).is_some() {
                    return bad(format!("duplicate object id {o:?}"));
                }
            }
        }
        {
            let mut seen = HashMap::new();
            for (i, m) in morphisms.iter().enumerate() {
                if m.src >= n_obj || m.tgt >= n_obj {
                    return bad(format!("morphism {:?} has out-of-range endpoints", m.label));
                }
                if seen.insert(m.label.clone(), i).is_some() {
                    return bad(format!("duplicate morphism id {:?}", m.label));
                }
            }
        }
        if identities.len() != n_obj {
            return bad("one identity morphism per object required".into());
        }
        for (o, &id) in identities.iter().enumerate() {
            if id >= n_mor || morphisms[id].src != o || morphisms[id].tgt != o {
                return bad(format!("identity of {:?} is not an endomorphism", objects[o]));
            }
        }

        let mut compose = vec![None; n_mor * n_mor];
        for &(m2, m1, m) in compose_entries {
            if m2 >= n_mor || m1 >= n_mor || m >= n_mor {
                return bad("composition entry out of range".into());
            }
            if morphisms[m1].tgt != morphisms[m2].src {
                return bad(format!(
                    "composition defined on non-composable pair ({}, {})",
                    morphisms[m2].label, morphisms[m1].label
                ));
            }
            if morphisms[m].src != morphisms[m1].src || morphisms[m].tgt != morphisms[m2].tgt {
                return bad(format!(
                    "composite {} ∘ {} = {} has inconsistent endpoints",
                    morphisms[m2].label, morphisms[m1].label, morphisms[m].label
                ));
            }
            if compose[m2 * n_mor + m1].replace(m as u32).is_some() {
                return bad(format!(
                    "composition of ({}, {}) defined twice",
                    morphisms[m2].label, morphisms[m1].label
                ));
            }
        }
        // Totality on composable pairs.
        for m1 in 0..n_mor {
            for m2 in 0..n_mor {
                if morphisms[m1].tgt == morphisms[m2].src && compose[m2 * n_mor + m1].is_none() {
                    return bad(format!(
                        "missing composite for composable pair ({}, {})",
                        morphisms[m2].label, morphisms[m1].label
                    ));
                }
            }
        }
        let at = |m2: usize, m1: usize| compose[m2 * n_mor + m1].unwrap() as usize;
        // Identity laws.
        for m in 0..n_mor {
            let (s, t) = (morphisms[m].src, morphisms[m].tgt);
            if at(m, identities[s]) != m || at(identities[t], m) != m {
                return bad(format!("identities are not neutral at {:?}", morphisms[m].label));
            }
        }
        // Associativity over all composable triples.
        for m1 in 0..n_mor {
            for m2 in 0..n_mor {
                if morphisms[m1].tgt != morphisms[m2].src {
                    continue;
                }
                let m21 = at(m2, m1);
                for m3 in 0..n_mor {
                    if morphisms[m2].tgt != morphisms[m3].src {
                        continue;
                    }
                    if at(m3, m21) != at(at(m3, m2), m1) {
                        return bad(format!(
                            "associativity fails at ({}, {}, {})",
                            morphisms[m3].label, morphisms[m2].label, morphisms[m1].label
                        ));
                    }
                }
            }
        }

        let components = connected_components(n_obj, &morphisms);
        let thin_bottom = find_thin_bottom(n_obj, &morphisms);
        Ok(FinCategory {
            name,
            objects,
            morphisms,
            identities,
            compose,
            components,
            thin_bottom,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_label(&self, o: ObjId) -> &str {
        &self.objects[o]
    }

    pub fn object_index(&self, label: &str) -> Result<ObjId> {
        self.objects
            .iter()
            .position(|o| o == label)
            .ok_or_else(|| Error::UnknownObject(label.to_string()))
    }

    pub fn morphism(&self, m: MorId) -> &MorphismData {
        &self.morphisms[m]
    }

    pub fn morphisms(&self) -> &[MorphismData] {
        &self.morphisms
    }

    pub fn morphism_index(&self, label: &str) -> Result<MorId> {
        self.morphisms
            .iter()
            .position(|m| m.label == label)
            .ok_or_else(|| Error::UnknownMorphism(label.to_string()))
    }

    pub fn src(&self, m: MorId) -> ObjId {
        self.morphisms[m].src
    }

    pub fn tgt(&self, m: MorId) -> ObjId {
        self.morphisms[m].tgt
    }

    pub fn identity(&self, o: ObjId) -> MorId {
        self.identities[o]
    }

    pub fn is_identity(&self, m: MorId) -> bool {
        self.identities[self.morphisms[m].src] == m && self.morphisms[m].src == self.morphisms[m].tgt
    }

    /// `m2 ∘ m1` if composable.
    pub fn compose(&self, m2: MorId, m1: MorId) -> Option<MorId> {
        self.compose[m2 * self.morphisms.len() + m1].map(|m| m as usize)
    }

    /// Complete a thin category from its non-identity generators: missing
    /// identities are added, and every composite is the unique morphism with
    /// the right endpoints — its absence is a closure failure.
    pub fn thin(
        name: impl Into<String>,
        objects: Vec<String>,
        named: Vec<(String, usize, usize)>,
    ) -> Result<FinCategory> {
        let n = objects.len();
        let mut morphisms: Vec<MorphismData> = Vec::new();
        let mut identities = vec![usize::MAX; n];
        for (label, src, tgt) in named {
            if src >= n || tgt >= n {
                return Err(Error::MalformedCategory(format!(
                    "morphism {label:?} endpoints out of range"
                )));
            }
            if src == tgt {
                identities[src] = morphisms.len();
            }
            morphisms.push(MorphismData { label, src, tgt });
        }
        for o in 0..n {
            if identities[o] == usize::MAX {
                identities[o] = morphisms.len();
                morphisms.push(MorphismData {
                    label: format!("id_{}", objects[o]),
                    src: o,
                    tgt: o,
                });
            }
        }
        let find = |s: usize, t: usize| -> Option<usize> {
            morphisms.iter().position(|m| m.src == s && m.tgt == t)
        };
        let mut entries = Vec::new();
        for m1 in 0..morphisms.len() {
            for m2 in 0..morphisms.len() {
                if morphisms[m1].tgt != morphisms[m2].src {
                    continue;
                }
                let m = find(morphisms[m1].src, morphisms[m2].tgt).ok_or_else(|| {
                    Error::MalformedCategory(format!(
                        "relation not transitively closed at ({}, {})",
                        morphisms[m2].label, morphisms[m1].label
                    ))
                })?;
                entries.push((m2, m1, m));
            }
        }
        FinCategory::try_new(name, objects, morphisms, identities, &entries)
    }

    pub fn hom(&self, a: ObjId, b: ObjId) -> Vec<MorId> {
        (0..self.morphisms.len())
            .filter(|&m| self.morphisms[m].src == a && self.morphisms[m].tgt == b)
            .collect()
    }

    pub fn component_of(&self, o: ObjId) -> usize {
        self.components[o]
    }

    pub fn component_count(&self) -> usize {
        self.components.iter().max().map_or(0, |&m| m + 1)
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }

    /// Bottom object of a thin category whose bottom reaches everything;
    /// None when the category is not of that shape.
    pub fn thin_bottom(&self) -> Option<ObjId> {
        self.thin_bottom
    }

    pub fn same_category(&self, other: &FinCategory) -> bool {
        std::ptr::eq(self, other)
            || (self.objects == other.objects
                && self.morphisms == other.morphisms
                && self.compose == other.compose)
    }
}

fn connected_components(n_obj: usize, morphisms: &[MorphismData]) -> Vec<usize> {
    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); n_obj];
    for m in morphisms {
        if m.src != m.tgt {
            adjacency[m.src].push(m.tgt);
            adjacency[m.tgt].push(m.src);
        }
    }
    let mut component = vec![usize::MAX; n_obj];
    let mut next = 0;
    for start in 0..n_obj {
        if component[start] != usize::MAX {
            continue;
        }
        let mut stack = vec![start];
        component[start] = next;
        while let Some(o) = stack.pop() {
            for &p in &adjacency[o] {
                if component[p] == usize::MAX {
                    component[p] = next;
                    stack.push(p);
                }
            }
        }
        next += 1;
    }
    component
}

fn find_thin_bottom(n_obj: usize, morphisms: &[MorphismData]) -> Option<ObjId> {
    let mut count = vec![0usize; n_obj * n_obj];
    for m in morphisms {
        count[m.src * n_obj + m.tgt] += 1;
        if count[m.src * n_obj + m.tgt] > 1 {
            return None;
        }
    }
    (0..n_obj).find(|&o| (0..n_obj).all(|x| count[o * n_obj + x] == 1))
}

/// A thin category with a bottom object: between any two objects at most one
/// morphism, and a morphism from the bottom to every object.
#[derive(Clone, Debug)]
pub struct PosetCategory {
    category: Arc<FinCategory>,
    bottom: ObjId,
}

impl std::ops::Deref for PosetCategory {
    type Target = FinCategory;

    fn deref(&self) -> &FinCategory {
        &self.category
    }
}

impl PosetCategory {
    pub fn try_new(category: Arc<FinCategory>) -> Result<Self> {
        match category.thin_bottom() {
            Some(bottom) => Ok(PosetCategory { category, bottom }),
            None => Err(Error::NotPosetWithBottom(category.name().to_string())),
        }
    }

    /// Build from a reflexive-transitive closure of the given relation pairs
    /// (object index pairs, "from ≤ to"). Non-identity morphisms are
    /// labelled `A→B`.
    pub fn from_relation(
        name: impl Into<String>,
        objects: Vec<String>,
        relation: &[(usize, usize)],
    ) -> Result<Self> {
        let name = name.into();
        let n = objects.len();
        if n == 0 {
            return Err(Error::MalformedCategory(format!(
                "poset {name:?} has no objects"
            )));
        }
        let mut le = vec![false; n * n];
        for o in 0..n {
            le[o * n + o] = true;
        }
        for &(a, b) in relation {
            if a >= n || b >= n {
                return Err(Error::MalformedCategory(format!(
                    "relation pair ({a}, {b}) out of range in {name:?}"
                )));
            }
            le[a * n + b] = true;
        }
        // Transitive closure.
        for k in 0..n {
            for a in 0..n {
                for b in 0..n {
                    if le[a * n + k] && le[k * n + b] {
                        le[a * n + b] = true;
                    }
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                if a != b && le[a * n + b] && le[b * n + a] {
                    return Err(Error::MalformedCategory(format!(
                        "not a poset: {:?} and {:?} are mutually related",
                        objects[a], objects[b]
                    )));
                }
            }
        }
        let mut labelled = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if le[a * n + b] {
                    let label = if a == b {
                        format!("id_{}", objects[a])
                    } else {
                        format!("{}→{}", objects[a], objects[b])
                    };
                    labelled.push((label, a, b));
                }
            }
        }
        Self::from_thin_morphisms(name, objects, labelled)
    }

    /// Assemble a thin category from explicitly named morphisms (identities
    /// may be omitted; they are added as `id_X`).
    pub fn from_thin_morphisms(
        name: impl Into<String>,
        objects: Vec<String>,
        named: Vec<(String, usize, usize)>,
    ) -> Result<Self> {
        let category = FinCategory::thin(name, objects, named)?;
        Self::try_new(Arc::new(category))
    }

    /// The three-object fan `X → Y`, `X → Z` with arrows `f` and `g`:
    /// a root interpreted against two upper voices.
    pub fn span() -> PosetCategory {
        Self::from_thin_morphisms(
            "span",
            vec!["X".into(), "Y".into(), "Z".into()],
            vec![("f".into(), 0, 1), ("g".into(), 0, 2)],
        )
        .expect("span shape is valid")
    }

    /// The three-object chain `X → Y → Z` with `f`, `g` and the composite
    /// `g∘f` all present.
    pub fn triangle() -> PosetCategory {
        Self::from_thin_morphisms(
            "triangle",
            vec!["X".into(), "Y".into(), "Z".into()],
            vec![
                ("f".into(), 0, 1),
                ("g".into(), 1, 2),
                ("g∘f".into(), 0, 2),
            ],
        )
        .expect("triangle shape is valid")
    }

    pub fn category(&self) -> &Arc<FinCategory> {
        &self.category
    }

    pub fn bottom(&self) -> ObjId {
        self.bottom
    }

    /// The unique morphism `bottom → x`.
    pub fn from_bottom(&self, x: ObjId) -> MorId {
        self.unique_morphism(self.bottom, x)
            .expect("bottom reaches every object")
    }

    pub fn unique_morphism(&self, a: ObjId, b: ObjId) -> Option<MorId> {
        let hom = self.category.hom(a, b);
        debug_assert!(hom.len() <= 1);
        hom.first().copied()
    }
}

/// A finite groupoid: a category in which every morphism has a two-sided
/// inverse (synthesized and checked at construction).
#[derive(Clone, Debug)]
pub struct Groupoid {
    category: Arc<FinCategory>,
    inverse: Vec<MorId>,
}

impl std::ops::Deref for Groupoid {
    type Target = FinCategory;

    fn deref(&self) -> &FinCategory {
        &self.category
    }
}

impl Groupoid {
    pub fn try_new(category: Arc<FinCategory>) -> Result<Self> {
        let n = category.morphism_count();
        let mut inverse = vec![usize::MAX; n];
        for m in 0..n {
            let (s, t) = (category.src(m), category.tgt(m));
            let found = category.hom(t, s).into_iter().find(|&w| {
                category.compose(w, m) == Some(category.identity(s))
                    && category.compose(m, w) == Some(category.identity(t))
            });
            match found {
                Some(w) => inverse[m] = w,
                None => {
                    return Err(Error::NotAGroupoid(format!(
                        "morphism {:?} has no two-sided inverse",
                        category.morphism(m).label
                    )))
                }
            }
        }
        Ok(Groupoid { category, inverse })
    }

    pub fn category(&self) -> &Arc<FinCategory> {
        &self.category
    }

    pub fn inverse(&self, m: MorId) -> MorId {
        self.inverse[m]
    }

    pub fn endomorphisms(&self, o: ObjId) -> Vec<MorId> {
        self.category.hom(o, o)
    }

    /// The endomorphism group at `o` as an explicit table, together with the
    /// morphism ids realizing each element (in morphism-id order).
    pub fn endomorphism_group(&self, o: ObjId) -> (FiniteGroup, Vec<MorId>) {
        let endos = self.endomorphisms(o);
        let position: HashMap<MorId, usize> =
            endos.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let labels: Vec<String> = endos
            .iter()
            .map(|&m| self.category.morphism(m).label.clone())
            .collect();
        let mut table = Vec::with_capacity(endos.len() * endos.len());
        for &a in &endos {
            for &b in &endos {
                let c = self.category.compose(a, b).expect("endomorphisms compose");
                table.push(position[&c] as u32);
            }
        }
        let group = FiniteGroup::try_from_table(
            format!("End({})", self.category.object_label(o)),
            labels,
            table,
        )
        .expect("endomorphisms of a groupoid object form a group");
        (group, endos)
    }

    /// The product of the pair groupoid on `objects` with the group `z`:
    /// morphisms are triples `(a, b, z)`, composed by multiplying the group
    /// parts. Every hom-set is a copy of `z`.
    pub fn pair_product(z: &FiniteGroup, objects: Vec<String>) -> Result<Groupoid> {
        let n = objects.len();
        if n == 0 {
            return Err(Error::MalformedCategory("pair groupoid needs objects".into()));
        }
        let zo = z.order();
        let mor_id = |a: usize, b: usize, g: usize| (a * n + b) * zo + g;
        let mut morphisms = Vec::with_capacity(n * n * zo);
        for a in 0..n {
            for b in 0..n {
                for g in 0..zo {
                    morphisms.push(MorphismData {
                        label: format!("({},{},{})", objects[a], objects[b], z.label(g)),
                        src: a,
                        tgt: b,
                    });
                }
            }
        }
        let identities: Vec<MorId> = (0..n).map(|a| mor_id(a, a, z.identity())).collect();
        let mut entries = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for g1 in 0..zo {
                        for g2 in 0..zo {
                            entries.push((
                                mor_id(b, c, g2),
                                mor_id(a, b, g1),
                                mor_id(a, c, z.mul(g2, g1)),
                            ));
                        }
                    }
                }
            }
        }
        let category = FinCategory::try_new(
            format!("pair×{}", z.name()),
            objects,
            morphisms,
            identities,
            &entries,
        )?;
        Groupoid::try_new(Arc::new(category))
    }
}

/// A functor between finite categories, validated exhaustively.
#[derive(Clone)]
pub struct Functor {
    source: Arc<FinCategory>,
    target: Arc<FinCategory>,
    on_objects: Vec<ObjId>,
    on_morphisms: Vec<MorId>,
}

/// The functor laws for raw assignment data; `Err` names the first failure.
pub fn functor_laws(
    source: &FinCategory,
    target: &FinCategory,
    on_objects: &[ObjId],
    on_morphisms: &[MorId],
) -> Result<()> {
    let bad = |msg: String| Err(Error::NotAFunctor(msg));
    if on_objects.len() != source.object_count() || on_morphisms.len() != source.morphism_count() {
        return bad("assignment lengths do not match the source category".into());
    }
    if on_objects.iter().any(|&o| o >= target.object_count())
        || on_morphisms.iter().any(|&m| m >= target.morphism_count())
    {
        return bad("assignment hits an out-of-range id".into());
    }
    for m in 0..source.morphism_count() {
        let img = on_morphisms[m];
        if target.src(img) != on_objects[source.src(m)]
            || target.tgt(img) != on_objects[source.tgt(m)]
        {
            return bad(format!(
                "image of {:?} has wrong endpoints",
                source.morphism(m).label
            ));
        }
    }
    for o in 0..source.object_count() {
        if on_morphisms[source.identity(o)] != target.identity(on_objects[o]) {
            return bad(format!(
                "identity of {:?} is not sent to an identity",
                source.object_label(o)
            ));
        }
    }
    for m1 in 0..source.morphism_count() {
        for m2 in 0..source.morphism_count() {
            if let Some(m) = source.compose(m2, m1) {
                let expect = target
                    .compose(on_morphisms[m2], on_morphisms[m1])
                    .ok_or_else(|| {
                        Error::NotAFunctor(format!(
                            "images of ({}, {}) do not compose",
                            source.morphism(m2).label,
                            source.morphism(m1).label
                        ))
                    })?;
                if on_morphisms[m] != expect {
                    return bad(format!(
                        "composition not preserved at ({}, {})",
                        source.morphism(m2).label,
                        source.morphism(m1).label
                    ));
                }
            }
        }
    }
    Ok(())
}

/// True iff the assignments satisfy all functor laws.
pub fn check_functor(
    source: &FinCategory,
    target: &FinCategory,
    on_objects: &[ObjId],
    on_morphisms: &[MorId],
) -> bool {
    functor_laws(source, target, on_objects, on_morphisms).is_ok()
}

impl Functor {
    pub fn try_new(
        source: Arc<FinCategory>,
        target: Arc<FinCategory>,
        on_objects: Vec<ObjId>,
        on_morphisms: Vec<MorId>,
    ) -> Result<Self> {
        functor_laws(&source, &target, &on_objects, &on_morphisms)?;
        Ok(Functor {
            source,
            target,
            on_objects,
            on_morphisms,
        })
    }

    pub fn identity(category: Arc<FinCategory>) -> Functor {
        Functor {
            source: Arc::clone(&category),
            on_objects: (0..category.object_count()).collect(),
            on_morphisms: (0..category.morphism_count()).collect(),
            target: category,
        }
    }

    pub fn source(&self) -> &Arc<FinCategory> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinCategory> {
        &self.target
    }

    pub fn map_object(&self, o: ObjId) -> ObjId {
        self.on_objects[o]
    }

    pub fn map_morphism(&self, m: MorId) -> MorId {
        self.on_morphisms[m]
    }

    pub fn on_objects(&self) -> &[ObjId] {
        &self.on_objects
    }

    pub fn on_morphisms(&self) -> &[MorId] {
        &self.on_morphisms
    }

    /// `self ∘ first` (apply `first`, then `self`).
    pub fn compose(&self, first: &Functor) -> Result<Functor> {
        if !first.target.same_category(&self.source) {
            return Err(Error::NotAFunctor(
                "functor composition endpoint mismatch".into(),
            ));
        }
        Functor::try_new(
            Arc::clone(&first.source),
            Arc::clone(&self.target),
            first.on_objects.iter().map(|&o| self.on_objects[o]).collect(),
            first
                .on_morphisms
                .iter()
                .map(|&m| self.on_morphisms[m])
                .collect(),
        )
    }

    pub fn is_bijective(&self) -> bool {
        let obj_ok = self.target.object_count() == self.source.object_count() && {
            let mut seen = vec![false; self.target.object_count()];
            self.on_objects
                .iter()
                .all(|&o| !std::mem::replace(&mut seen[o], true))
        };
        let mor_ok = self.target.morphism_count() == self.source.morphism_count() && {
            let mut seen = vec![false; self.target.morphism_count()];
            self.on_morphisms
                .iter()
                .all(|&m| !std::mem::replace(&mut seen[m], true))
        };
        obj_ok && mor_ok
    }
}

impl PartialEq for Functor {
    fn eq(&self, other: &Self) -> bool {
        self.source.same_category(&other.source)
            && self.target.same_category(&other.target)
            && self.on_objects == other.on_objects
            && self.on_morphisms == other.on_morphisms
    }
}

impl fmt::Debug for Functor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Functor({} → {})",
            self.source.name(),
            self.target.name()
        )
    }
}

/// The naturality condition for raw component data: for every `m: X → Y` of
/// the shared source category, `component_Y ∘ F(m) = F'(m) ∘ component_X`.
pub fn naturality(f: &Functor, f2: &Functor, components: &[MorId]) -> Result<()> {
    let bad = |msg: String| Err(Error::NotNatural(msg));
    if !f.source.same_category(&f2.source) || !f.target.same_category(&f2.target) {
        return bad("functors do not share (co)domains".into());
    }
    let src = &f.source;
    let tgt = &f.target;
    if components.len() != src.object_count() {
        return bad("one component per object required".into());
    }
    for (o, &c) in components.iter().enumerate() {
        if c >= tgt.morphism_count()
            || tgt.src(c) != f.map_object(o)
            || tgt.tgt(c) != f2.map_object(o)
        {
            return bad(format!(
                "component at {:?} has wrong endpoints",
                src.object_label(o)
            ));
        }
    }
    for m in 0..src.morphism_count() {
        let (x, y) = (src.src(m), src.tgt(m));
        let left = tgt.compose(components[y], f.map_morphism(m));
        let right = tgt.compose(f2.map_morphism(m), components[x]);
        if left.is_none() || left != right {
            return bad(format!(
                "naturality square fails at {:?}",
                src.morphism(m).label
            ));
        }
    }
    Ok(())
}

pub fn check_natural(f: &Functor, f2: &Functor, components: &[MorId]) -> bool {
    naturality(f, f2, components).is_ok()
}

/// A natural transformation with its naturality squares verified.
#[derive(Clone, Debug)]
pub struct NaturalTransformation {
    source: Functor,
    target: Functor,
    components: Vec<MorId>,
}

impl NaturalTransformation {
    pub fn try_new(source: Functor, target: Functor, components: Vec<MorId>) -> Result<Self> {
        naturality(&source, &target, &components)?;
        Ok(NaturalTransformation {
            source,
            target,
            components,
        })
    }

    pub fn source(&self) -> &Functor {
        &self.source
    }

    pub fn target(&self) -> &Functor {
        &self.target
    }

    pub fn components(&self) -> &[MorId] {
        &self.components
    }

    pub fn component(&self, o: ObjId) -> MorId {
        self.components[o]
    }
}

/// A finite group action: a set of points and, for every group element, the
/// image of every point. Both action axioms are checked exhaustively.
pub struct GSet {
    group: Arc<FiniteGroup>,
    carrier: Vec<String>,
    act: Vec<u32>,
}

impl fmt::Debug for GSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GSet({} on {} points)", self.group.name(), self.carrier.len())
    }
}

impl GSet {
    pub fn try_new(group: Arc<FiniteGroup>, carrier: Vec<String>, act: Vec<u32>) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidAction(msg));
        let n = carrier.len();
        if n == 0 {
            return bad("empty carrier".into());
        }
        if act.len() != group.order() * n {
            return bad("action table size mismatch".into());
        }
        if act.iter().any(|&p| p as usize >= n) {
            return bad("action hits a point outside the carrier".into());
        }
        let at = |g: usize, x: usize| act[g * n + x] as usize;
        for x in 0..n {
            if at(group.identity(), x) != x {
                return bad(format!("identity moves point {:?}", carrier[x]));
            }
        }
        for g in group.elements() {
            for h in group.elements() {
                let gh = group.mul(g, h);
                for x in 0..n {
                    if at(gh, x) != at(g, at(h, x)) {
                        return bad(format!(
                            "action not compatible at ({}, {}, {:?})",
                            group.label(g),
                            group.label(h),
                            carrier[x]
                        ));
                    }
                }
            }
        }
        Ok(GSet {
            group,
            carrier,
            act,
        })
    }

    pub fn from_fn(
        group: Arc<FiniteGroup>,
        carrier: Vec<String>,
        f: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let n = carrier.len();
        let mut act = Vec::with_capacity(group.order() * n);
        for g in group.elements() {
            for x in 0..n {
                act.push(f(g, x) as u32);
            }
        }
        Self::try_new(group, carrier, act)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn carrier(&self) -> &[String] {
        &self.carrier
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn point_label(&self, x: usize) -> &str {
        &self.carrier[x]
    }

    pub fn point_index(&self, label: &str) -> Result<usize> {
        self.carrier
            .iter()
            .position(|p| p == label)
            .ok_or_else(|| Error::UnknownPitch(label.to_string()))
    }

    pub fn act(&self, g: usize, x: usize) -> usize {
        self.act[g * self.carrier.len() + x] as usize
    }

    pub fn same_action(&self, other: &GSet) -> bool {
        std::ptr::eq(self, other)
            || (self.group.same_group(&other.group)
                && self.carrier == other.carrier
                && self.act == other.act)
    }
}

/// The one-object category presenting a group: morphisms are the group
/// elements, morphism ids coincide with element indices.
pub fn deloop(group: &Arc<FiniteGroup>) -> Result<Arc<FinCategory>> {
    let morphisms: Vec<MorphismData> = group
        .labels()
        .iter()
        .map(|l| MorphismData {
            label: l.clone(),
            src: 0,
            tgt: 0,
        })
        .collect();
    let mut entries = Vec::with_capacity(group.order() * group.order());
    for a in group.elements() {
        for b in group.elements() {
            entries.push((a, b, group.mul(a, b)));
        }
    }
    FinCategory::try_new(
        group.name().to_string(),
        vec!["•".into()],
        morphisms,
        vec![group.identity()],
        &entries,
    )
    .map(Arc::new)
}

/// The pullback of `P: A → C` and `Q: B → C`: the category of pairs of
/// objects and morphisms with equal images, composed componentwise.
pub fn pullback_category(p: &Functor, q: &Functor) -> Result<FinCategory> {
    if !p.target().same_category(q.target()) {
        return Err(Error::MalformedCategory(
            "pullback requires a shared codomain".into(),
        ));
    }
    let (a, b) = (p.source(), q.source());
    let mut objects = Vec::new();
    let mut object_pos = HashMap::new();
    for oa in 0..a.object_count() {
        for ob in 0..b.object_count() {
            if p.map_object(oa) == q.map_object(ob) {
                object_pos.insert((oa, ob), objects.len());
                objects.push(format!("({},{})", a.object_label(oa), b.object_label(ob)));
            }
        }
    }
    let mut morphisms = Vec::new();
    let mut morphism_pos = HashMap::new();
    for ma in 0..a.morphism_count() {
        for mb in 0..b.morphism_count() {
            if p.map_morphism(ma) == q.map_morphism(mb) {
                let src = object_pos[&(a.src(ma), b.src(mb))];
                let tgt = object_pos[&(a.tgt(ma), b.tgt(mb))];
                morphism_pos.insert((ma, mb), morphisms.len());
                morphisms.push(MorphismData {
                    label: format!(
                        "({},{})",
                        a.morphism(ma).label,
                        b.morphism(mb).label
                    ),
                    src,
                    tgt,
                });
            }
        }
    }
    let identities: Vec<MorId> = object_pos
        .iter()
        .map(|(&(oa, ob), &pos)| (pos, morphism_pos[&(a.identity(oa), b.identity(ob))]))
        .collect::<std::collections::BTreeMap<_, _>>()
        .into_values()
        .collect();
    let mut entries = Vec::new();
    for (&(ma1, mb1), &m1) in &morphism_pos {
        for (&(ma2, mb2), &m2) in &morphism_pos {
            if let (Some(ca), Some(cb)) = (a.compose(ma2, ma1), b.compose(mb2, mb1)) {
                entries.push((m2, m1, morphism_pos[&(ca, cb)]));
            }
        }
    }
    FinCategory::try_new(
        format!("pullback({},{})", a.name(), b.name()),
        objects,
        morphisms,
        identities,
        &entries,
    )
}
