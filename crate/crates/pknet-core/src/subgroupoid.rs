//! Subgroupoids cut out by an extension 1 → Z → G → H → 1. Projecting each
//! class morphism to its H-part turns the materialized class groupoid into
//! an H-valued one; a section subcategory picks one H-label per ordered pair
//! of classes (with trivial endomorphisms), and the morphisms projecting
//! onto the chosen labels form a subgroupoid whose endomorphism groups are
//! copies of Z and whose hom-sets are cosets of Z. The same construction is
//! also realized through the generic categorical pullback as an oracle.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::category::{
    pullback_category, FinCategory, Functor, Groupoid, MorId, MorphismData,
};
use crate::error::{Error, Result};
use crate::functor_groupoid::{materialize, ChordClass, ClassGroupoid, ClassMorphism};
use crate::group::{isomorphism, FiniteGroup, GroupExtension};

/// A wide subcategory of the H-valued class groupoid with exactly one
/// morphism per ordered pair of objects: `choice(i, j)` is its H-label.
/// Endomorphisms are trivial and the choices compose.
#[derive(Clone)]
pub struct SectionSubcategory {
    objects: Vec<String>,
    quotient: Arc<FiniteGroup>,
    choice: Vec<usize>,
}

impl std::fmt::Debug for SectionSubcategory {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "SectionSubcategory({} objects over {})",
            self.objects.len(),
            self.quotient.name()
        )
    }
}

impl SectionSubcategory {
    /// `choice` is row-major: `choice[from * n + to]`.
    pub fn try_new(
        objects: Vec<String>,
        quotient: Arc<FiniteGroup>,
        choice: Vec<usize>,
    ) -> Result<Self> {
        let n = objects.len();
        if n == 0 || choice.len() != n * n {
            return Err(Error::SectionNotClosed(
                "one choice per ordered object pair required".into(),
            ));
        }
        if choice.iter().any(|&h| h >= quotient.order()) {
            return Err(Error::SectionNotClosed("choice out of range".into()));
        }
        for (i, object) in objects.iter().enumerate() {
            if choice[i * n + i] != quotient.identity() {
                return Err(Error::SectionNotClosed(format!(
                    "End({object}) must be trivial but choice({object},{object}) = {}",
                    quotient.label(choice[i * n + i])
                )));
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let through = quotient.mul(choice[j * n + k], choice[i * n + j]);
                    if through != choice[i * n + k] {
                        return Err(Error::SectionNotClosed(format!(
                            "not closed at ({}, {}, {}): {}·{} = {} ≠ {}",
                            objects[i],
                            objects[j],
                            objects[k],
                            quotient.label(choice[j * n + k]),
                            quotient.label(choice[i * n + j]),
                            quotient.label(through),
                            quotient.label(choice[i * n + k])
                        )));
                    }
                }
            }
        }
        Ok(SectionSubcategory {
            objects,
            quotient,
            choice,
        })
    }

    /// The default section: every choice is the identity of H.
    pub fn all_identity(objects: Vec<String>, quotient: Arc<FiniteGroup>) -> SectionSubcategory {
        let n = objects.len();
        let choice = vec![quotient.identity(); n * n];
        SectionSubcategory::try_new(objects, quotient, choice)
            .expect("the constant-identity choice is closed")
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn quotient(&self) -> &Arc<FiniteGroup> {
        &self.quotient
    }

    pub fn choice(&self, from: usize, to: usize) -> usize {
        self.choice[from * self.objects.len() + to]
    }

    /// The section as an explicit thin category (one morphism per ordered
    /// pair), used by the pullback oracle.
    pub fn to_category(&self) -> Result<Arc<FinCategory>> {
        let n = self.objects.len();
        let mut morphisms = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let label = if i == j {
                    format!("id_{}", self.objects[i])
                } else {
                    format!("{}→{}", self.objects[i], self.objects[j])
                };
                morphisms.push(MorphismData { label, src: i, tgt: j });
            }
        }
        let identities: Vec<MorId> = (0..n).map(|i| i * n + i).collect();
        let mut entries = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    entries.push((j * n + k, i * n + j, i * n + k));
                }
            }
        }
        FinCategory::try_new(
            "section",
            self.objects.clone(),
            morphisms,
            identities,
            &entries,
        )
        .map(Arc::new)
    }
}

/// The H-part of a class morphism: decompose its anchor in the extension.
pub fn project(morphism: &ClassMorphism, extension: &GroupExtension) -> Result<usize> {
    if !morphism.source().group().same_group(extension.total()) {
        return Err(Error::GroupMismatch);
    }
    Ok(extension.project(morphism.anchor()))
}

/// The projection hits every H-label on every hom-set of the ambient
/// groupoid (fullness of the induced functor).
pub fn projection_is_full(ambient: &ClassGroupoid, extension: &GroupExtension) -> Result<bool> {
    let n = ambient.groupoid().object_count();
    let mut hit = vec![vec![false; extension.quotient().order()]; n * n];
    for (m, morphism) in ambient.class_morphisms().iter().enumerate() {
        let i = ambient.groupoid().src(m);
        let j = ambient.groupoid().tgt(m);
        hit[i * n + j][project(morphism, extension)?] = true;
    }
    Ok(hit.iter().all(|row| row.iter().all(|&b| b)))
}

/// The subgroupoid of morphisms whose projection matches the section.
pub struct SubGroupoid {
    groupoid: Groupoid,
    classes: Vec<Arc<ChordClass>>,
    morphisms: Vec<ClassMorphism>,
    ambient_ids: Vec<MorId>,
}

impl std::fmt::Debug for SubGroupoid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "SubGroupoid({} objects, {} morphisms)",
            self.groupoid.object_count(),
            self.groupoid.morphism_count()
        )
    }
}

impl SubGroupoid {
    pub fn groupoid(&self) -> &Groupoid {
        &self.groupoid
    }

    pub fn classes(&self) -> &[Arc<ChordClass>] {
        &self.classes
    }

    pub fn class_morphism(&self, m: MorId) -> &ClassMorphism {
        &self.morphisms[m]
    }

    pub fn class_morphisms(&self) -> &[ClassMorphism] {
        &self.morphisms
    }

    /// Morphism id in the ambient materialized groupoid.
    pub fn ambient_id(&self, m: MorId) -> MorId {
        self.ambient_ids[m]
    }
}

/// Keep exactly the ambient morphisms whose H-part equals the section's
/// choice for their endpoints. Closure under composition and inverse follows
/// from the section axioms and is re-verified by construction.
pub fn pullback_subgroupoid(
    ambient: &ClassGroupoid,
    extension: &GroupExtension,
    section: &SectionSubcategory,
) -> Result<SubGroupoid> {
    let names: Vec<String> = ambient
        .classes()
        .iter()
        .map(|c| c.name().to_string())
        .collect();
    if section.objects() != names.as_slice() {
        return Err(Error::ClassMismatch(
            "section objects do not match the class family".into(),
        ));
    }
    if !ambient.classes()[0].group().same_group(extension.total()) {
        return Err(Error::GroupMismatch);
    }
    if !section.quotient().same_group(extension.quotient()) {
        return Err(Error::GroupMismatch);
    }

    let category = ambient.groupoid().category();
    let mut kept: Vec<MorId> = Vec::new();
    let mut new_id: HashMap<MorId, MorId> = HashMap::new();
    for m in 0..category.morphism_count() {
        let h = project(ambient.class_morphism(m), extension)?;
        if h == section.choice(category.src(m), category.tgt(m)) {
            new_id.insert(m, kept.len());
            kept.push(m);
        }
    }
    let morphism_data: Vec<MorphismData> = kept
        .iter()
        .map(|&m| category.morphism(m).clone())
        .collect();
    let identities: Vec<MorId> = (0..category.object_count())
        .map(|o| new_id[&category.identity(o)])
        .collect();
    let mut entries = Vec::new();
    for (a_new, &a) in kept.iter().enumerate() {
        for (b_new, &b) in kept.iter().enumerate() {
            if let Some(c) = category.compose(b, a) {
                let c_new = *new_id.get(&c).ok_or_else(|| {
                    Error::SectionNotClosed(format!(
                        "composite {} escapes the chosen hom-sets",
                        category.morphism(c).label
                    ))
                })?;
                entries.push((b_new, a_new, c_new));
            }
        }
    }
    let sub_category = FinCategory::try_new(
        format!("{}⋔section", category.name()),
        category.objects().to_vec(),
        morphism_data,
        identities,
        &entries,
    )?;
    let groupoid = Groupoid::try_new(Arc::new(sub_category))?;
    let morphisms = kept
        .iter()
        .map(|&m| ambient.class_morphism(m).clone())
        .collect();
    Ok(SubGroupoid {
        groupoid,
        classes: ambient.classes().to_vec(),
        morphisms,
        ambient_ids: kept,
    })
}

/// The structural facts promised for a section subgroupoid, all computed
/// exhaustively.
#[derive(Clone, Debug, Serialize)]
pub struct StructureReport {
    pub object_count: usize,
    pub morphism_count: usize,
    /// |Z| · n².
    pub expected_morphism_count: usize,
    /// Every endomorphism monoid is a group isomorphic to the kernel Z.
    pub endos_isomorphic_to_kernel: bool,
    /// Every hom-set's anchor-label set is a left coset of inject(Z).
    pub hom_sets_are_cosets: bool,
}

impl StructureReport {
    pub fn holds(&self) -> bool {
        self.morphism_count == self.expected_morphism_count
            && self.endos_isomorphic_to_kernel
            && self.hom_sets_are_cosets
    }
}

/// Check that End(U) ≅ Z at every object and that every hom-set's label set
/// is a left coset of the injected kernel.
pub fn verify_endo_and_coset_structure(
    sub: &SubGroupoid,
    extension: &GroupExtension,
) -> Result<StructureReport> {
    let groupoid = sub.groupoid();
    let n = groupoid.object_count();
    let z = extension.kernel();
    let g = extension.total();

    let mut endos_ok = true;
    for o in 0..n {
        let (endo_group, _) = groupoid.endomorphism_group(o);
        if isomorphism(&endo_group, z).is_none() {
            endos_ok = false;
        }
    }

    let mut cosets_ok = true;
    for i in 0..n {
        for j in 0..n {
            let labels: std::collections::BTreeSet<usize> = groupoid
                .hom(i, j)
                .into_iter()
                .map(|m| sub.class_morphism(m).anchor())
                .collect();
            let Some(&first) = labels.iter().next() else {
                cosets_ok = false;
                continue;
            };
            let coset: std::collections::BTreeSet<usize> = z
                .elements()
                .map(|zi| g.mul(first, extension.inject(zi)))
                .collect();
            if labels != coset {
                cosets_ok = false;
            }
        }
    }

    Ok(StructureReport {
        object_count: n,
        morphism_count: groupoid.morphism_count(),
        expected_morphism_count: z.order() * n * n,
        endos_isomorphic_to_kernel: endos_ok,
        hom_sets_are_cosets: cosets_ok,
    })
}

/// Oracle: rebuild the subgroupoid through the generic categorical pullback
/// of the projection functor against the section's inclusion, and compare
/// everything — object count, morphism sets, and full composition tables.
pub fn pullback_oracle(
    ambient: &ClassGroupoid,
    extension: &GroupExtension,
    section: &SectionSubcategory,
) -> Result<bool> {
    let sub = pullback_subgroupoid(ambient, extension, section)?;

    // The H-valued class family: same names and shape, images projected.
    let h_classes: Vec<Arc<ChordClass>> = ambient
        .classes()
        .iter()
        .map(|class| {
            let images = class
                .images()
                .iter()
                .map(|&g| extension.project(g))
                .collect();
            ChordClass::try_new(
                class.name(),
                Arc::clone(class.delta()),
                Arc::clone(extension.quotient()),
                images,
            )
            .map(Arc::new)
        })
        .collect::<Result<_>>()?;
    let h_groupoid = materialize(&h_classes)?;

    let ambient_category = ambient.groupoid().category();
    let h_category = h_groupoid.groupoid().category();

    // Π: identity on objects, anchor-wise projection on morphisms.
    let on_morphisms: Vec<MorId> = (0..ambient_category.morphism_count())
        .map(|m| {
            let i = ambient_category.src(m);
            let j = ambient_category.tgt(m);
            let h = extension.project(ambient.class_morphism(m).anchor());
            h_groupoid
                .morphism_id(i, j, h)
                .ok_or_else(|| Error::UnknownMorphism(format!("projected image of morphism {m}")))
        })
        .collect::<Result<_>>()?;
    let projection = Functor::try_new(
        Arc::clone(ambient_category),
        Arc::clone(h_category),
        (0..ambient_category.object_count()).collect(),
        on_morphisms,
    )?;

    // ι: the section included into the H-valued groupoid.
    let section_category = section.to_category()?;
    let n = section.objects().len();
    let inclusion_morphisms: Vec<MorId> = (0..section_category.morphism_count())
        .map(|m| {
            let i = section_category.src(m);
            let j = section_category.tgt(m);
            h_groupoid
                .morphism_id(i, j, section.choice(i, j))
                .ok_or_else(|| Error::UnknownMorphism(format!("section image of morphism {m}")))
        })
        .collect::<Result<_>>()?;
    let inclusion = Functor::try_new(
        Arc::clone(&section_category),
        Arc::clone(h_category),
        (0..n).collect(),
        inclusion_morphisms,
    )?;

    let pulled = pullback_category(&projection, &inclusion)?;
    if pulled.object_count() != sub.groupoid().object_count()
        || pulled.morphism_count() != sub.groupoid().morphism_count()
    {
        return Ok(false);
    }

    // Match each filtered morphism with its pullback pair by label, then
    // compare the entire composition table through that matching.
    let section_label = |i: usize, j: usize| section_category.morphism(i * n + j).label.clone();
    let mut pair_of = Vec::with_capacity(sub.groupoid().morphism_count());
    for m in 0..sub.groupoid().morphism_count() {
        let i = sub.groupoid().src(m);
        let j = sub.groupoid().tgt(m);
        let label = format!(
            "({},{})",
            sub.groupoid().morphism(m).label,
            section_label(i, j)
        );
        match pulled.morphism_index(&label) {
            Ok(p) => pair_of.push(p),
            Err(_) => return Ok(false),
        }
    }
    for a in 0..sub.groupoid().morphism_count() {
        for b in 0..sub.groupoid().morphism_count() {
            let ours = sub.groupoid().compose(b, a);
            let theirs = pulled.compose(pair_of[b], pair_of[a]);
            match (ours, theirs) {
                (None, None) => {}
                (Some(c), Some(p)) if pair_of[c] == p => {}
                _ => return Ok(false),
            }
        }
    }
    Ok(true)
}
