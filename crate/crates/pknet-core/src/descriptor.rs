//! JSON descriptors for groups, categories, chord classes, networks,
//! sections and progressions, and the workspace that resolves them into
//! live values. Everything is validated on resolution; name references must
//! exist, and all structural checks of the underlying constructors apply.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::category::{FinCategory, GSet, Groupoid, PosetCategory};
use crate::error::{Error, Result};
use crate::functor_groupoid::ChordClass;
use crate::group::{
    ti_group, wreath_group_capped, FiniteGroup, DEFAULT_ORDER_CAP,
};
use crate::music::{pitch_classes, PitchClass, Progression};
use crate::net::{PKNet, SetValuedDiagram};
use crate::subgroupoid::SectionSubcategory;

fn bad(msg: impl Into<String>) -> Error {
    Error::Descriptor(msg.into())
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GroupDescriptor {
    Cyclic {
        order: usize,
    },
    Symmetric {
        degree: usize,
    },
    Ti,
    Table {
        #[serde(default)]
        order: Option<usize>,
        labels: Vec<String>,
        /// Flat row-major products: entry `a * order + b` is the index of
        /// `a · b` (right factor applied first).
        table: Vec<u32>,
    },
    Wreath {
        base: Box<GroupDescriptor>,
        copies: usize,
    },
}

pub fn resolve_group(descriptor: &GroupDescriptor, name: &str, cap: usize) -> Result<FiniteGroup> {
    match descriptor {
        GroupDescriptor::Cyclic { order } => {
            if *order > cap {
                return Err(Error::OrderCap { order: *order as u128, cap });
            }
            FiniteGroup::cyclic(*order)
        }
        GroupDescriptor::Symmetric { degree } => {
            let order: u128 = (1..=*degree as u128).product();
            if order > cap as u128 {
                return Err(Error::OrderCap { order, cap });
            }
            FiniteGroup::symmetric(*degree)
        }
        GroupDescriptor::Ti => Ok(ti_group()),
        GroupDescriptor::Table { order, labels, table } => {
            if let Some(order) = order {
                if *order != labels.len() {
                    return Err(bad(format!(
                        "group {name:?}: declared order {order} but {} labels",
                        labels.len()
                    )));
                }
            }
            FiniteGroup::try_from_table_capped(name, labels.clone(), table.clone(), cap)
        }
        GroupDescriptor::Wreath { base, copies } => {
            let base = resolve_group(base, &format!("{name}-base"), cap)?;
            wreath_group_capped(&base, *copies, cap)
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MorphismDescriptor {
    pub label: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PosetBlock {
    /// "from ≤ to" generator pairs; reflexive-transitive closure is taken.
    pub relation: Vec<(String, String)>,
    #[serde(default)]
    pub bottom: Option<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CategoryDescriptor {
    pub objects: Vec<String>,
    /// Non-identity generating morphisms of a thin category; identities and
    /// unique composites are synthesized. Mutually exclusive with `poset`.
    #[serde(default)]
    pub morphisms: Vec<MorphismDescriptor>,
    #[serde(default)]
    pub poset: Option<PosetBlock>,
    /// Require the category to be a groupoid (inverses are synthesized and
    /// checked at resolution).
    #[serde(default)]
    pub groupoid: bool,
}

pub fn resolve_category(descriptor: &CategoryDescriptor, name: &str) -> Result<Arc<FinCategory>> {
    let object_index = |label: &str| -> Result<usize> {
        descriptor
            .objects
            .iter()
            .position(|o| o == label)
            .ok_or_else(|| bad(format!("category {name:?}: unknown object {label:?}")))
    };
    let category = if let Some(poset) = &descriptor.poset {
        if !descriptor.morphisms.is_empty() {
            return Err(bad(format!(
                "category {name:?}: give either a poset relation or explicit morphisms, not both"
            )));
        }
        let relation: Vec<(usize, usize)> = poset
            .relation
            .iter()
            .map(|(a, b)| Ok((object_index(a)?, object_index(b)?)))
            .collect::<Result<_>>()?;
        let poset_category =
            PosetCategory::from_relation(name, descriptor.objects.clone(), &relation)?;
        if let Some(bottom) = &poset.bottom {
            if poset_category.bottom() != object_index(bottom)? {
                return Err(bad(format!(
                    "category {name:?}: declared bottom {bottom:?} but the relation's bottom is {:?}",
                    poset_category.object_label(poset_category.bottom())
                )));
            }
        }
        Arc::clone(poset_category.category())
    } else {
        let named: Vec<(String, usize, usize)> = descriptor
            .morphisms
            .iter()
            .map(|m| Ok((m.label.clone(), object_index(&m.src)?, object_index(&m.tgt)?)))
            .collect::<Result<_>>()?;
        Arc::new(FinCategory::thin(name, descriptor.objects.clone(), named)?)
    };
    if descriptor.groupoid {
        Groupoid::try_new(Arc::clone(&category))?;
    }
    Ok(category)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassDescriptor {
    pub name: String,
    /// Name of a category in the workspace.
    pub delta: String,
    /// Name of a group in the workspace.
    pub group: String,
    /// Generator morphism label → group element label; identities and
    /// derivable composites are filled in.
    #[serde(default)]
    pub assignments: BTreeMap<String, String>,
}

/// A pitch (or context point): an integer or a label. Integers mean pitch
/// classes 0–11 in the pitch-class context and 0-based carrier indices
/// otherwise; labels are note names (`"Eb"`, `"F♯"`) or carrier labels.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointValue {
    Number(i64),
    Label(String),
}

/// One object's assignment: a single point, or a one-element list (the
/// descriptor forms carry singleton supports).
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PointSpec {
    One(PointValue),
    Many(Vec<PointValue>),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NetDescriptor {
    pub class: String,
    /// Object label → point spec.
    pub phi: BTreeMap<String, PointSpec>,
}

/// A quotient-group element: an index or a label.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum HValue {
    Number(usize),
    Label(String),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SectionPair {
    pub from: String,
    pub to: String,
    pub h: HValue,
}

#[derive(Clone, Debug, Serialize, Deserialize, Default)]
pub struct SectionDescriptor {
    #[serde(default)]
    pub pairs: Vec<SectionPair>,
    /// Fills every off-diagonal pair not listed; the diagonal defaults to
    /// the identity.
    #[serde(default)]
    pub default: Option<HValue>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ChordDescriptor {
    pub class: String,
    /// Object label → pitch.
    pub pitches: BTreeMap<String, PointSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProgressionDescriptor {
    /// The class family the analysis works over (all must share shape and
    /// group).
    pub classes: Vec<String>,
    pub chords: Vec<ChordDescriptor>,
}

#[derive(Clone, Debug, Serialize, Deserialize, Default)]
pub struct BoundsDescriptor {
    #[serde(default)]
    pub order_cap: Option<usize>,
    #[serde(default)]
    pub search_bound: Option<u64>,
}

#[derive(Clone, Debug, Serialize, Deserialize, Default)]
pub struct WorkspaceConfig {
    #[serde(default)]
    pub groups: BTreeMap<String, GroupDescriptor>,
    #[serde(default)]
    pub categories: BTreeMap<String, CategoryDescriptor>,
    #[serde(default)]
    pub classes: Vec<ClassDescriptor>,
    #[serde(default)]
    pub sections: BTreeMap<String, SectionDescriptor>,
    #[serde(default)]
    pub nets: BTreeMap<String, NetDescriptor>,
    #[serde(default)]
    pub progressions: BTreeMap<String, ProgressionDescriptor>,
    #[serde(default)]
    pub bounds: BoundsDescriptor,
}

/// A resolved workspace: every named object built and validated, reference
/// errors caught eagerly.
pub struct Workspace {
    pub groups: BTreeMap<String, Arc<FiniteGroup>>,
    pub categories: BTreeMap<String, Arc<FinCategory>>,
    pub classes: BTreeMap<String, Arc<ChordClass>>,
    /// Class names in declaration order.
    pub class_names: Vec<String>,
    pub sections: BTreeMap<String, SectionDescriptor>,
    pub nets: BTreeMap<String, NetDescriptor>,
    pub progressions: BTreeMap<String, ProgressionDescriptor>,
    pub order_cap: usize,
    pub search_bound: u64,
}

pub struct ResolvedProgression {
    pub classes: Vec<Arc<ChordClass>>,
    pub progression: Progression,
    pub context: Arc<GSet>,
    pub form: Arc<SetValuedDiagram>,
}

impl Workspace {
    pub fn from_json(text: &str) -> Result<Workspace> {
        let config: WorkspaceConfig =
            serde_json::from_str(text).map_err(|e| bad(format!("invalid JSON config: {e}")))?;
        Workspace::from_config(&config)
    }

    pub fn from_config(config: &WorkspaceConfig) -> Result<Workspace> {
        let order_cap = config.bounds.order_cap.unwrap_or(DEFAULT_ORDER_CAP);
        let search_bound = config.bounds.search_bound.unwrap_or(1_000_000);
        if order_cap == 0 || search_bound == 0 {
            return Err(bad("resource bounds must be positive"));
        }

        let mut groups = BTreeMap::new();
        for (name, descriptor) in &config.groups {
            groups.insert(
                name.clone(),
                Arc::new(resolve_group(descriptor, name, order_cap)?),
            );
        }
        let mut categories = BTreeMap::new();
        for (name, descriptor) in &config.categories {
            categories.insert(name.clone(), resolve_category(descriptor, name)?);
        }

        let mut classes = BTreeMap::new();
        let mut class_names = Vec::new();
        for descriptor in &config.classes {
            let delta = categories.get(&descriptor.delta).ok_or_else(|| {
                bad(format!(
                    "class {:?}: unknown category {:?}",
                    descriptor.name, descriptor.delta
                ))
            })?;
            let group = groups.get(&descriptor.group).ok_or_else(|| {
                bad(format!(
                    "class {:?}: unknown group {:?}",
                    descriptor.name, descriptor.group
                ))
            })?;
            let assignments: Vec<(&str, &str)> = descriptor
                .assignments
                .iter()
                .map(|(m, g)| (m.as_str(), g.as_str()))
                .collect();
            let class = ChordClass::from_labels(
                descriptor.name.clone(),
                Arc::clone(delta),
                Arc::clone(group),
                &assignments,
            )?;
            if classes.insert(descriptor.name.clone(), Arc::new(class)).is_some() {
                return Err(bad(format!("duplicate class name {:?}", descriptor.name)));
            }
            class_names.push(descriptor.name.clone());
        }

        let workspace = Workspace {
            groups,
            categories,
            classes,
            class_names,
            sections: config.sections.clone(),
            nets: config.nets.clone(),
            progressions: config.progressions.clone(),
            order_cap,
            search_bound,
        };

        // Eager reference validation for the lazily-resolved descriptors.
        for (name, net) in &workspace.nets {
            let class = workspace.class(&net.class).map_err(|_| {
                bad(format!("net {name:?}: unknown class {:?}", net.class))
            })?;
            for object in net.phi.keys() {
                class.delta().object_index(object).map_err(|_| {
                    bad(format!("net {name:?}: unknown object {object:?}"))
                })?;
            }
        }
        for (name, progression) in &workspace.progressions {
            for class in &progression.classes {
                workspace.class(class).map_err(|_| {
                    bad(format!("progression {name:?}: unknown class {class:?}"))
                })?;
            }
            for (i, chord) in progression.chords.iter().enumerate() {
                if !progression.classes.contains(&chord.class) {
                    return Err(bad(format!(
                        "progression {name:?}: chord {} uses class {:?} outside the family",
                        i + 1,
                        chord.class
                    )));
                }
            }
        }
        Ok(workspace)
    }

    pub fn group(&self, name: &str) -> Result<&Arc<FiniteGroup>> {
        self.groups
            .get(name)
            .ok_or_else(|| bad(format!("unknown group {name:?}")))
    }

    pub fn category(&self, name: &str) -> Result<&Arc<FinCategory>> {
        self.categories
            .get(name)
            .ok_or_else(|| bad(format!("unknown category {name:?}")))
    }

    pub fn class(&self, name: &str) -> Result<&Arc<ChordClass>> {
        self.classes
            .get(name)
            .ok_or_else(|| bad(format!("unknown class {name:?}")))
    }

    /// The context a class's networks live in: the twelve pitch classes
    /// under T/I, or the group acting on itself on the left otherwise.
    pub fn context_for(&self, class: &Arc<ChordClass>) -> Result<Arc<GSet>> {
        let group = class.group();
        if group.name() == "T/I" {
            return Ok(pitch_classes());
        }
        let carrier = group.labels().to_vec();
        let group = Arc::clone(group);
        let acting = Arc::clone(&group);
        GSet::from_fn(group, carrier, move |g, x| acting.mul(g, x)).map(Arc::new)
    }

    fn resolve_point(&self, value: &PointValue, context: &GSet) -> Result<usize> {
        let pitch_context = context.group().name() == "T/I";
        match value {
            PointValue::Number(k) => {
                if pitch_context {
                    if !(0..12).contains(k) {
                        return Err(bad(format!("pitch class {k} out of range 0–11")));
                    }
                    Ok(*k as usize)
                } else {
                    let k = usize::try_from(*k)
                        .map_err(|_| bad(format!("point index {k} is negative")))?;
                    if k >= context.len() {
                        return Err(bad(format!("point index {k} out of range")));
                    }
                    Ok(k)
                }
            }
            PointValue::Label(s) => {
                if pitch_context {
                    Ok(PitchClass::parse(s)?.0 as usize)
                } else {
                    context.point_index(s)
                }
            }
        }
    }

    fn resolve_spec(&self, spec: &PointSpec, context: &GSet) -> Result<usize> {
        match spec {
            PointSpec::One(v) => self.resolve_point(v, context),
            PointSpec::Many(vs) if vs.len() == 1 => self.resolve_point(&vs[0], context),
            PointSpec::Many(vs) => Err(bad(format!(
                "descriptor supports are singletons; got {} points",
                vs.len()
            ))),
        }
    }

    fn assemble_net(
        &self,
        class: &Arc<ChordClass>,
        phi: &BTreeMap<String, PointSpec>,
        form: &Arc<SetValuedDiagram>,
        context: &Arc<GSet>,
    ) -> Result<PKNet> {
        let delta = class.delta();
        let mut points = Vec::with_capacity(delta.object_count());
        for o in 0..delta.object_count() {
            let label = delta.object_label(o);
            let spec = phi
                .get(label)
                .ok_or_else(|| bad(format!("missing assignment for object {label:?}")))?;
            points.push(self.resolve_spec(spec, context)?);
        }
        if phi.len() != delta.object_count() {
            let extra: Vec<&String> = phi
                .keys()
                .filter(|k| delta.object_index(k).is_err())
                .collect();
            return Err(bad(format!("assignments for unknown objects: {extra:?}")));
        }
        PKNet::singleton_in(
            Arc::clone(form),
            Arc::clone(context),
            Arc::clone(class),
            &points,
        )
    }

    pub fn net(&self, name: &str) -> Result<PKNet> {
        let descriptor = self
            .nets
            .get(name)
            .ok_or_else(|| bad(format!("unknown net {name:?}")))?;
        let class = self.class(&descriptor.class)?;
        let context = self.context_for(class)?;
        let form = Arc::new(SetValuedDiagram::singleton(Arc::clone(class.delta())));
        self.assemble_net(class, &descriptor.phi, &form, &context)
    }

    pub fn progression(&self, name: &str) -> Result<ResolvedProgression> {
        let descriptor = self
            .progressions
            .get(name)
            .ok_or_else(|| bad(format!("unknown progression {name:?}")))?;
        if descriptor.classes.is_empty() {
            return Err(bad(format!("progression {name:?} names no classes")));
        }
        let classes: Vec<Arc<ChordClass>> = descriptor
            .classes
            .iter()
            .map(|c| self.class(c).cloned())
            .collect::<Result<_>>()?;
        let context = self.context_for(&classes[0])?;
        let form = Arc::new(SetValuedDiagram::singleton(Arc::clone(classes[0].delta())));
        let nets: Vec<PKNet> = descriptor
            .chords
            .iter()
            .map(|chord| {
                let class = self.class(&chord.class)?;
                self.assemble_net(class, &chord.pitches, &form, &context)
            })
            .collect::<Result<_>>()?;
        let progression = Progression::try_new(nets)?;
        Ok(ResolvedProgression {
            classes,
            progression,
            context,
            form,
        })
    }

    fn resolve_h(&self, value: &HValue, quotient: &FiniteGroup) -> Result<usize> {
        match value {
            HValue::Number(k) => {
                if *k >= quotient.order() {
                    return Err(bad(format!("quotient element index {k} out of range")));
                }
                Ok(*k)
            }
            HValue::Label(s) => quotient.index_of(s),
        }
    }

    /// Build a section over the given object family from a named descriptor;
    /// `None` means the all-identity default.
    pub fn section(
        &self,
        name: Option<&str>,
        objects: Vec<String>,
        quotient: &Arc<FiniteGroup>,
    ) -> Result<SectionSubcategory> {
        let Some(name) = name else {
            return Ok(SectionSubcategory::all_identity(objects, Arc::clone(quotient)));
        };
        let descriptor = self
            .sections
            .get(name)
            .ok_or_else(|| bad(format!("unknown section {name:?}")))?;
        let n = objects.len();
        let default = match &descriptor.default {
            Some(h) => self.resolve_h(h, quotient)?,
            None => quotient.identity(),
        };
        let mut choice = vec![default; n * n];
        for i in 0..n {
            choice[i * n + i] = quotient.identity();
        }
        let object_index = |label: &str| -> Result<usize> {
            objects
                .iter()
                .position(|o| o == label)
                .ok_or_else(|| bad(format!("section {name:?}: unknown object {label:?}")))
        };
        for pair in &descriptor.pairs {
            let i = object_index(&pair.from)?;
            let j = object_index(&pair.to)?;
            choice[i * n + j] = self.resolve_h(&pair.h, quotient)?;
        }
        SectionSubcategory::try_new(objects, Arc::clone(quotient), choice)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::functor_groupoid::homset;
    use crate::group::ti_extension;
    use crate::music::{analyze_progression, Preference};

    const SMALL_CONFIG: &str = r#"{
        "groups": {
            "ti": {"kind": "ti"},
            "z4": {"kind": "cyclic", "order": 4},
            "klein": {
                "kind": "table",
                "order": 4,
                "labels": ["e", "a", "b", "ab"],
                "table": [0,1,2,3, 1,0,3,2, 2,3,0,1, 3,2,1,0]
            },
            "utt": {"kind": "wreath", "base": {"kind": "cyclic", "order": 12}, "copies": 2}
        },
        "categories": {
            "span": {
                "objects": ["X", "Y", "Z"],
                "morphisms": [
                    {"label": "f", "src": "X", "tgt": "Y"},
                    {"label": "g", "src": "X", "tgt": "Z"}
                ]
            },
            "chain": {
                "objects": ["A", "B", "C"],
                "poset": {"relation": [["A", "B"], ["B", "C"]], "bottom": "A"}
            },
            "triangle": {
                "objects": ["X", "Y", "Z"],
                "morphisms": [
                    {"label": "f", "src": "X", "tgt": "Y"},
                    {"label": "g", "src": "Y", "tgt": "Z"},
                    {"label": "g∘f", "src": "X", "tgt": "Z"}
                ]
            },
            "mirror": {
                "objects": ["A", "B"],
                "morphisms": [
                    {"label": "s", "src": "A", "tgt": "B"},
                    {"label": "s'", "src": "B", "tgt": "A"}
                ],
                "groupoid": true
            }
        },
        "classes": [
            {"name": "U", "delta": "span", "group": "ti",
             "assignments": {"f": "T4", "g": "T7"}},
            {"name": "V", "delta": "span", "group": "ti",
             "assignments": {"f": "T2", "g": "T5"}},
            {"name": "Wb", "delta": "triangle", "group": "ti",
             "assignments": {"f": "I8", "g": "I9"}},
            {"name": "Steps", "delta": "chain", "group": "ti",
             "assignments": {"A→B": "T3", "B→C": "T4"}}
        ],
        "sections": {
            "swap": {"default": 1},
            "named-swap": {"pairs": [
                {"from": "U", "to": "V", "h": "1"},
                {"from": "V", "to": "U", "h": 1}
            ]}
        },
        "nets": {
            "c-major": {"class": "U", "phi": {"X": 0, "Y": 4, "Z": 7}},
            "eflat-major": {"class": "U", "phi": {"X": "Eb", "Y": ["G"], "Z": "A#"}}
        },
        "progressions": {
            "rise": {
                "classes": ["U", "V"],
                "chords": [
                    {"class": "U", "pitches": {"X": 0, "Y": 4, "Z": 7}},
                    {"class": "V", "pitches": {"X": 2, "Y": 4, "Z": 7}}
                ]
            }
        },
        "bounds": {"order_cap": 10000, "search_bound": 100000}
    }"#;

    #[test]
    fn full_config_resolves() {
        let ws = Workspace::from_json(SMALL_CONFIG).unwrap();
        assert_eq!(ws.group("ti").unwrap().order(), 24);
        assert_eq!(ws.group("klein").unwrap().order(), 4);
        assert!(ws.group("klein").unwrap().is_abelian());
        assert_eq!(ws.group("utt").unwrap().order(), 288);
        assert_eq!(ws.category("span").unwrap().morphism_count(), 5);
        assert_eq!(ws.category("chain").unwrap().morphism_count(), 6);
        assert_eq!(ws.category("triangle").unwrap().morphism_count(), 6);
        assert_eq!(ws.category("mirror").unwrap().morphism_count(), 4);
        assert_eq!(ws.class_names, ["U", "V", "Wb", "Steps"]);
        // Classes derive composites from the generators: I9 · I8 = T1 in the
        // explicit triangle, T4 · T3 = T7 along the closed poset chain.
        assert_eq!(ws.class("Wb").unwrap().image_label("g∘f").unwrap(), "T1");
        assert_eq!(
            ws.class("Steps").unwrap().image_label("A→C").unwrap(),
            "T7"
        );
    }

    #[test]
    fn resolved_classes_have_working_homsets() {
        let ws = Workspace::from_json(SMALL_CONFIG).unwrap();
        let u = ws.class("U").unwrap();
        let v = ws.class("V").unwrap();
        assert_eq!(homset(u, v).unwrap().len(), 24);
    }

    #[test]
    fn nets_resolve_pitches_in_all_forms() {
        let ws = Workspace::from_json(SMALL_CONFIG).unwrap();
        let c = ws.net("c-major").unwrap();
        assert_eq!(c.points(), vec![0, 4, 7]);
        let eflat = ws.net("eflat-major").unwrap();
        assert_eq!(eflat.points(), vec![3, 7, 10]);
    }

    #[test]
    fn progressions_analyze() {
        let ws = Workspace::from_json(SMALL_CONFIG).unwrap();
        let resolved = ws.progression("rise").unwrap();
        let steps =
            analyze_progression(&resolved.progression, Preference::TranspositionFirst).unwrap();
        assert_eq!(steps.len(), 1);
    }

    #[test]
    fn sections_resolve_and_validate() {
        let ws = Workspace::from_json(SMALL_CONFIG).unwrap();
        let extension = ti_extension();
        let objects = vec!["U".to_string(), "V".to_string()];
        let default = ws
            .section(None, objects.clone(), extension.quotient())
            .unwrap();
        assert_eq!(default.choice(0, 1), 0);
        let swap = ws
            .section(Some("swap"), objects.clone(), extension.quotient())
            .unwrap();
        assert_eq!(swap.choice(0, 1), 1);
        assert_eq!(swap.choice(0, 0), 0);
        let named = ws
            .section(Some("named-swap"), objects, extension.quotient())
            .unwrap();
        assert_eq!(named.choice(1, 0), 1);
    }

    #[test]
    fn reference_errors_are_caught_eagerly() {
        let broken = r#"{
            "groups": {"ti": {"kind": "ti"}},
            "categories": {"span": {
                "objects": ["X", "Y", "Z"],
                "morphisms": [
                    {"label": "f", "src": "X", "tgt": "Y"},
                    {"label": "g", "src": "X", "tgt": "Z"}
                ]
            }},
            "classes": [{"name": "U", "delta": "span", "group": "nope",
                         "assignments": {"f": "T4", "g": "T7"}}]
        }"#;
        assert!(matches!(
            Workspace::from_json(broken),
            Err(Error::Descriptor(msg)) if msg.contains("unknown group")
        ));

        let bad_pitch = r#"{
            "groups": {"ti": {"kind": "ti"}},
            "categories": {"span": {
                "objects": ["X", "Y", "Z"],
                "morphisms": [
                    {"label": "f", "src": "X", "tgt": "Y"},
                    {"label": "g", "src": "X", "tgt": "Z"}
                ]
            }},
            "classes": [{"name": "U", "delta": "span", "group": "ti",
                         "assignments": {"f": "T4", "g": "T7"}}],
            "nets": {"bad": {"class": "U", "phi": {"X": 12, "Y": 0, "Z": 0}}}
        }"#;
        let ws = Workspace::from_json(bad_pitch).unwrap();
        assert!(ws.net("bad").is_err());
    }

    #[test]
    fn malformed_structures_are_refused() {
        // Declared bottom contradicts the relation.
        let wrong_bottom = r#"{
            "categories": {"span": {
                "objects": ["X", "Y"],
                "poset": {"relation": [["X", "Y"]], "bottom": "Y"}
            }}
        }"#;
        assert!(Workspace::from_json(wrong_bottom).is_err());

        // Groupoid flag on a one-way arrow.
        let not_groupoid = r#"{
            "categories": {"arrow": {
                "objects": ["A", "B"],
                "morphisms": [{"label": "s", "src": "A", "tgt": "B"}],
                "groupoid": true
            }}
        }"#;
        assert!(matches!(
            Workspace::from_json(not_groupoid),
            Err(Error::NotAGroupoid(_))
        ));

        // Corrupted multiplication table.
        let bad_table = r#"{
            "groups": {"g": {
                "kind": "table",
                "labels": ["e", "a"],
                "table": [0, 1, 1, 1]
            }}
        }"#;
        assert!(matches!(
            Workspace::from_json(bad_table),
            Err(Error::NotAGroup(_))
        ));
    }

    #[test]
    fn non_pitch_contexts_use_the_group_carrier() {
        let config = r#"{
            "groups": {"z3": {"kind": "cyclic", "order": 3}},
            "categories": {"dot": {"objects": ["X"], "poset": {"relation": []}}},
            "classes": [{"name": "D", "delta": "dot", "group": "z3", "assignments": {}}],
            "nets": {"origin": {"class": "D", "phi": {"X": "0"}}}
        }"#;
        let ws = Workspace::from_json(config).unwrap();
        let net = ws.net("origin").unwrap();
        assert_eq!(net.points(), vec![0]);
        let context = ws.context_for(ws.class("D").unwrap()).unwrap();
        assert_eq!(context.len(), 3);
    }
}
