//! Runtime verification batteries. Every claim the library's constructions
//! rely on is re-checked here against an independent computation: hom-sets
//! against a brute-force filter over all component tuples, the wreath table
//! against its imprimitive permutation realization, section subgroupoids
//! against the generic categorical pullback, and the analysis fixtures
//! against their known readings. The batteries are also what the `verify`
//! CLI command runs.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bisection::{
    compare_with_wreath, inner_action_report, semidirect_report, trivialize,
    verify_bisection_action, BisectionGroup, GroupoidAction, TransportFrame,
};
use crate::category::{deloop, FinCategory, Groupoid, MorphismData, PosetCategory};
use crate::error::{Error, Result};
use crate::functor_groupoid::{
    homset, homset_general, materialize, ChordClass, ClassMorphism,
};
use crate::group::{
    isomorphism, ti_extension, ti_group, wreath_group, FiniteGroup, Permutation, TiElement,
    WreathElement,
};
use crate::music::{berg_op5_fixture, webern_op11_fixture, Preference};
use crate::net::{
    check_action_functoriality, enumerate_nets, solve_transport, PKNet, SetValuedDiagram,
};
use crate::subgroupoid::{
    projection_is_full, pullback_oracle, pullback_subgroupoid, verify_endo_and_coset_structure,
    SectionSubcategory,
};
use crate::category::GSet;

const ENUM_BOUND: u64 = 1_000_000;

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub details: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: String,
    pub checks: Vec<Check>,
}

impl Report {
    fn new(suite: &str) -> Report {
        Report {
            suite: suite.to_string(),
            checks: Vec::new(),
        }
    }

    fn push(&mut self, name: &str, passed: bool, details: impl Into<String>) {
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            details: details.into(),
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn lines(&self) -> Vec<String> {
        self.checks
            .iter()
            .map(|c| {
                let mark = if c.passed { "ok  " } else { "FAIL" };
                if c.details.is_empty() {
                    format!("{mark} {}::{}", self.suite, c.name)
                } else {
                    format!("{mark} {}::{} — {}", self.suite, c.name, c.details)
                }
            })
            .collect()
    }
}

/// Independent hom-set oracle: try every component tuple and keep the
/// natural ones. Exponential in the object count, fine for the shapes used
/// here.
pub fn brute_force_homset(
    src: &Arc<ChordClass>,
    tgt: &Arc<ChordClass>,
) -> Result<Vec<ClassMorphism>> {
    if !src.compatible(tgt) {
        return Err(Error::ClassMismatch(format!(
            "{} and {} do not share shape and group",
            src.name(),
            tgt.name()
        )));
    }
    let n = src.delta().object_count();
    let order = src.group().order();
    let mut out = Vec::new();
    let mut tuple = vec![0usize; n];
    loop {
        if let Ok(m) = ClassMorphism::try_new(Arc::clone(src), Arc::clone(tgt), tuple.clone()) {
            out.push(m);
        }
        let mut pos = n;
        loop {
            if pos == 0 {
                return Ok(out);
            }
            pos -= 1;
            tuple[pos] += 1;
            if tuple[pos] < order {
                break;
            }
            tuple[pos] = 0;
        }
    }
}

fn component_set(morphisms: &[ClassMorphism]) -> BTreeSet<Vec<usize>> {
    morphisms.iter().map(|m| m.components().to_vec()).collect()
}

/// Compare the propagation hom-set, the spanning-forest hom-set and the
/// brute-force filter on one ordered pair of classes.
pub fn homsets_agree(src: &Arc<ChordClass>, tgt: &Arc<ChordClass>) -> Result<bool> {
    let fast = component_set(&homset(src, tgt)?);
    let general = component_set(&homset_general(src, tgt)?);
    let brute = component_set(&brute_force_homset(src, tgt)?);
    Ok(fast == general && general == brute)
}

/// Realize `Z ≀ Sn` as permutations of `n·|Z|` points (blocks permuted by
/// the top permutation, each block translated by its coordinate) and check
/// the realization is faithful and matches the multiplication table.
pub fn wreath_permutation_oracle(z: &FiniteGroup, n: usize) -> Result<bool> {
    let wreath = wreath_group(z, n)?;
    let zo = z.order();
    let points = n * zo;
    let realize = |ix: usize| -> Permutation {
        let w = WreathElement::from_canonical_index(ix, zo, n);
        let images: Vec<usize> = (0..points)
            .map(|p| {
                let (block, x) = (p / zo, p % zo);
                w.perm.apply(block) * zo + z.mul(w.coords[block], x)
            })
            .collect();
        Permutation::from_images(images).expect("blocks translate bijectively")
    };
    let perms: Vec<Permutation> = (0..wreath.order()).map(realize).collect();
    let distinct: HashSet<Vec<usize>> = perms.iter().map(|p| p.images().to_vec()).collect();
    if distinct.len() != wreath.order() {
        return Ok(false);
    }
    if !perms[wreath.identity()].is_identity() {
        return Ok(false);
    }
    for a in 0..wreath.order() {
        for b in 0..wreath.order() {
            if perms[a].compose(&perms[b]) != perms[wreath.mul(a, b)] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Build the action of a class groupoid (or one of its subgroupoids) on the
/// disjoint union of each class's networks over a fixed form and context.
pub fn net_action_for(
    groupoid: &Groupoid,
    classes: &[Arc<ChordClass>],
    class_morphisms: &[ClassMorphism],
    form: &Arc<SetValuedDiagram>,
    context: &Arc<GSet>,
    bound: u64,
) -> Result<GroupoidAction> {
    let nets: Vec<Vec<PKNet>> = classes
        .iter()
        .map(|class| enumerate_nets(form, context, class, bound))
        .collect::<Result<_>>()?;
    let lookup: Vec<HashMap<Vec<usize>, usize>> = nets
        .iter()
        .map(|ns| ns.iter().enumerate().map(|(i, n)| (n.points(), i)).collect())
        .collect();
    let carriers: Vec<Vec<String>> = nets
        .iter()
        .map(|ns| {
            ns.iter()
                .map(|n| {
                    let labels: Vec<&str> =
                        n.points().iter().map(|&p| context.point_label(p)).collect();
                    format!("({})", labels.join(","))
                })
                .collect()
        })
        .collect();
    let maps: Vec<Vec<usize>> = class_morphisms
        .iter()
        .enumerate()
        .map(|(m, cm)| {
            let tgt = groupoid.tgt(m);
            nets[groupoid.src(m)]
                .iter()
                .map(|net| {
                    let moved = net.act(cm)?;
                    lookup[tgt].get(&moved.points()).copied().ok_or_else(|| {
                        Error::InvalidAction("image network escapes the enumeration".into())
                    })
                })
                .collect::<Result<Vec<usize>>>()
        })
        .collect::<Result<_>>()?;
    GroupoidAction::try_new(groupoid, carriers, maps)
}

/// The order-288 instance: the transposition-part subgroupoid over two
/// triadic classes, its bisection group (Hook's uniform triadic
/// transformations), and its action on the 24 networks.
pub fn utt_instance() -> Result<(BisectionGroup, GroupoidAction)> {
    let fixture = berg_op5_fixture();
    let classes = vec![fixture.class("U"), fixture.class("V")];
    let ambient = materialize(&classes)?;
    let extension = ti_extension();
    let section = SectionSubcategory::all_identity(
        vec!["U".into(), "V".into()],
        Arc::clone(extension.quotient()),
    );
    let sub = pullback_subgroupoid(&ambient, &extension, &section)?;
    let bis = BisectionGroup::new(sub.groupoid())?;
    let action = net_action_for(
        sub.groupoid(),
        sub.classes(),
        sub.class_morphisms(),
        &fixture.form,
        &fixture.context,
        ENUM_BOUND,
    )?;
    Ok((bis, action))
}

fn interval_classes() -> Result<(Arc<ChordClass>, Arc<ChordClass>)> {
    let span = PosetCategory::span();
    let ti = Arc::new(ti_group());
    let u = Arc::new(ChordClass::from_labels(
        "U",
        Arc::clone(span.category()),
        Arc::clone(&ti),
        &[("f", "T4"), ("g", "T7")],
    )?);
    let v = Arc::new(ChordClass::from_labels(
        "V",
        Arc::clone(span.category()),
        Arc::clone(&ti),
        &[("f", "T2"), ("g", "T5")],
    )?);
    Ok((u, v))
}

fn random_ti_label(rng: &mut ChaCha8Rng) -> String {
    TiElement::from_index(rng.random_range(0..24)).to_string()
}

pub fn suite_groups(seed: u64) -> Result<Report> {
    let mut report = Report::new("groups");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let ti = ti_group();
    report.push(
        "transposition-inversion-axioms",
        ti.verify_axioms().is_ok() && ti.order() == 24,
        "order 24, table re-checked",
    );

    let mut dihedral = true;
    for m in 0..12i32 {
        for n in 0..12i32 {
            let t = |k: i32| TiElement::transposition(k);
            let i = |k: i32| TiElement::inversion(k);
            dihedral &= i(m).compose(t(n)) == i(m - n);
            dihedral &= t(m).compose(i(n)) == i(m + n);
            dihedral &= i(m).compose(i(n)) == t(m - n);
            dihedral &= t(m).compose(t(n)) == t(m + n);
        }
    }
    report.push(
        "dihedral-relations",
        dihedral,
        "all 4×144 product identities",
    );

    let extension = ti_extension();
    let mut split_ok = true;
    for g in 0..24 {
        let (z, h) = extension.decompose(g);
        split_ok &= extension.recompose(z, h) == g;
        split_ok &= extension.in_kernel(g) == (h == extension.quotient().identity());
    }
    for h in extension.quotient().elements() {
        split_ok &= extension.project(extension.section(h)) == h;
    }
    for z in extension.kernel().elements() {
        split_ok &= extension.project(extension.inject(z)) == extension.quotient().identity();
    }
    report.push(
        "split-extension-round-trip",
        split_ok,
        "decompose/recompose on all 24 elements",
    );

    let z3 = FiniteGroup::cyclic(3)?;
    let z12 = FiniteGroup::cyclic(12)?;
    report.push(
        "wreath-permutation-realization-z3-s2",
        wreath_permutation_oracle(&z3, 2)?,
        "order 18 vs action on 6 points",
    );
    report.push(
        "wreath-permutation-realization-z3-s3",
        wreath_permutation_oracle(&z3, 3)?,
        "order 162 vs action on 9 points",
    );
    report.push(
        "wreath-permutation-realization-z12-s2",
        wreath_permutation_oracle(&z12, 2)?,
        "order 288 vs action on 24 points",
    );

    let w = wreath_group(&z3, 2)?;
    let z18 = FiniteGroup::cyclic(18)?;
    report.push(
        "wreath-is-not-cyclic",
        isomorphism(&w, &z18).is_none() && !w.is_abelian(),
        "order 18 alone does not determine the group",
    );

    let mut random_ok = true;
    for _ in 0..3 {
        let n = rng.random_range(2..=8usize);
        let g = FiniteGroup::cyclic(n)?;
        random_ok &= g.verify_axioms().is_ok();
        random_ok &= g.is_abelian();
        random_ok &= g.elements().all(|a| n % g.element_order(a) == 0);
    }
    let s3 = FiniteGroup::symmetric(3)?;
    random_ok &= s3.verify_axioms().is_ok() && !s3.is_abelian() && s3.order() == 6;
    report.push(
        "sampled-group-tables",
        random_ok,
        "axioms and element orders on seeded samples",
    );

    Ok(report)
}

pub fn suite_homsets(seed: u64) -> Result<Report> {
    let mut report = Report::new("homsets");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let (u, v) = interval_classes()?;
    let mut all_agree = true;
    for src in [&u, &v] {
        for tgt in [&u, &v] {
            all_agree &= homsets_agree(src, tgt)?;
            all_agree &= homset(src, tgt)?.len() == 24;
        }
    }
    report.push(
        "span-classes-match-oracle",
        all_agree,
        "4 ordered pairs × 24 morphisms each",
    );

    let fixture = berg_op5_fixture();
    let mut berg_agree = true;
    for src in &fixture.classes {
        for tgt in &fixture.classes {
            berg_agree &= homsets_agree(src, tgt)?;
            berg_agree &= homset(src, tgt)?.len() == 24;
        }
    }
    report.push(
        "berg-classes-match-oracle",
        berg_agree,
        "16 ordered pairs × 24 morphisms each",
    );

    let triangle = PosetCategory::triangle();
    let ti = Arc::new(ti_group());
    let wb = Arc::new(ChordClass::from_labels(
        "Wb",
        Arc::clone(triangle.category()),
        Arc::clone(&ti),
        &[("f", "I8"), ("g", "I9")],
    )?);
    let variant = Arc::new(ChordClass::from_labels(
        "U'",
        Arc::clone(triangle.category()),
        Arc::clone(&ti),
        &[("f", "I7"), ("g", "I3")],
    )?);
    let mut triangle_agree = true;
    for src in [&wb, &variant] {
        for tgt in [&wb, &variant] {
            triangle_agree &= homsets_agree(src, tgt)?;
            triangle_agree &= homset(src, tgt)?.len() == 24;
        }
    }
    report.push(
        "triangle-classes-match-oracle",
        triangle_agree,
        "composition-constrained shape, 4 ordered pairs",
    );

    // Over a shape with a non-invertible relation pattern — one object whose
    // single generator squares to the identity — hom-sets can be empty, and
    // are reported empty rather than papered over.
    let z2 = Arc::new(FiniteGroup::cyclic(2)?);
    let loop_shape = deloop(&z2)?;
    let trivial = Arc::new(ChordClass::from_labels(
        "A",
        Arc::clone(&loop_shape),
        Arc::clone(&ti),
        &[("1", "T0")],
    )?);
    let halfturn = Arc::new(ChordClass::from_labels(
        "B",
        Arc::clone(&loop_shape),
        Arc::clone(&ti),
        &[("1", "T6")],
    )?);
    let ab = homset_general(&trivial, &halfturn)?;
    let ba = homset_general(&halfturn, &trivial)?;
    let honest = ab.is_empty()
        && ba.is_empty()
        && brute_force_homset(&trivial, &halfturn)?.is_empty()
        && homsets_agree(&trivial, &trivial)?
        && homset_general(&trivial, &trivial)?.len() == 24;
    report.push(
        "empty-homsets-reported-honestly",
        honest,
        "loop shape with incompatible images",
    );

    let span = PosetCategory::span();
    let mut random_span_ok = true;
    for _ in 0..3 {
        let a = Arc::new(ChordClass::from_labels(
            "R1",
            Arc::clone(span.category()),
            Arc::clone(&ti),
            &[("f", random_ti_label(&mut rng).as_str()), ("g", random_ti_label(&mut rng).as_str())],
        )?);
        let b = Arc::new(ChordClass::from_labels(
            "R2",
            Arc::clone(span.category()),
            Arc::clone(&ti),
            &[("f", random_ti_label(&mut rng).as_str()), ("g", random_ti_label(&mut rng).as_str())],
        )?);
        random_span_ok &= homsets_agree(&a, &b)? && homsets_agree(&b, &a)?;
    }
    report.push(
        "sampled-span-classes-match-oracle",
        random_span_ok,
        "3 seeded class pairs",
    );

    let mut random_triangle_ok = true;
    for _ in 0..2 {
        let a = Arc::new(ChordClass::from_labels(
            "R1",
            Arc::clone(triangle.category()),
            Arc::clone(&ti),
            &[("f", random_ti_label(&mut rng).as_str()), ("g", random_ti_label(&mut rng).as_str())],
        )?);
        let b = Arc::new(ChordClass::from_labels(
            "R2",
            Arc::clone(triangle.category()),
            Arc::clone(&ti),
            &[("f", random_ti_label(&mut rng).as_str()), ("g", random_ti_label(&mut rng).as_str())],
        )?);
        random_triangle_ok &= homsets_agree(&a, &b)? && homsets_agree(&b, &a)?;
    }
    report.push(
        "sampled-triangle-classes-match-oracle",
        random_triangle_ok,
        "2 seeded class pairs",
    );

    Ok(report)
}

pub fn suite_networks() -> Result<Report> {
    let mut report = Report::new("networks");

    let fixture = berg_op5_fixture();
    let mut counts_ok = true;
    for class in &fixture.classes {
        let nets = enumerate_nets(&fixture.form, &fixture.context, class, ENUM_BOUND)?;
        counts_ok &= nets.len() == 12;
    }
    report.push(
        "berg-class-network-counts",
        counts_ok,
        "12 networks per class",
    );

    let (u, v) = interval_classes()?;
    let span_form = Arc::new(SetValuedDiagram::singleton(Arc::clone(u.delta())));
    let context = fixture.context.clone();
    let mut interval_counts = true;
    for class in [&u, &v] {
        interval_counts &=
            enumerate_nets(&span_form, &context, class, ENUM_BOUND)?.len() == 12;
    }
    report.push(
        "span-class-network-counts",
        interval_counts,
        "12 networks per class",
    );

    let discrete = Arc::new(FinCategory::try_new(
        "discrete",
        vec!["X".into(), "Y".into()],
        vec![
            MorphismData { label: "id_X".into(), src: 0, tgt: 0 },
            MorphismData { label: "id_Y".into(), src: 1, tgt: 1 },
        ],
        vec![0, 1],
        &[(0, 0, 0), (1, 1, 1)],
    )?);
    let ti = Arc::new(ti_group());
    let free = Arc::new(ChordClass::from_labels(
        "F",
        Arc::clone(&discrete),
        Arc::clone(&ti),
        &[],
    )?);
    let free_form = Arc::new(SetValuedDiagram::singleton(Arc::clone(&discrete)));
    let free_nets = enumerate_nets(&free_form, &context, &free, ENUM_BOUND)?;
    report.push(
        "disconnected-shape-network-count",
        free_nets.len() == 144,
        "12² unconstrained assignments",
    );

    let analysis_part1 =
        crate::music::analyze_progression(&fixture.part1(), Preference::TranspositionFirst)?;
    let labels1: Vec<String> = analysis_part1
        .iter()
        .map(|s| s.display_label(false))
        .collect();
    report.push(
        "berg-part-one-reading",
        labels1 == ["^{UV}T-2", "^{VV}T-1", "^{VU}T2", "^{UU}T1"],
        labels1.join(", "),
    );

    let analysis_part2 =
        crate::music::analyze_progression(&fixture.part2(), Preference::TranspositionFirst)?;
    let labels2: Vec<String> = analysis_part2
        .iter()
        .map(|s| s.display_label(false))
        .collect();
    report.push(
        "berg-part-two-reading",
        labels2 == ["^{U'W}T-2", "^{WU'}T1", "^{U'U'}T1"],
        labels2.join(", "),
    );

    let total = analysis_part1[1..]
        .iter()
        .try_fold(analysis_part1[0].morphism.clone(), |acc, step| {
            step.morphism.compose(&acc)
        })?;
    report.push(
        "berg-part-one-telescopes-to-identity",
        total.is_identity(),
        "four steps multiply out to ^{UU}T0",
    );

    let second_step = &analysis_part1[1].morphism;
    let third_step = &analysis_part1[2].morphism;
    let across = third_step.compose(second_step)?;
    let mirrored = &analysis_part2[1].morphism;
    report.push(
        "parallel-parts-share-components",
        across.label() == "^{VU}T1"
            && across.component_labels() == mirrored.component_labels(),
        format!(
            "{} and {} both move ({})",
            across.label(),
            mirrored.label(),
            across.component_labels().join(", ")
        ),
    );

    let webern = webern_op11_fixture();
    let mut webern_ok = webern.progression.len() == 3;
    for a in webern.progression.nets() {
        for b in webern.progression.nets() {
            webern_ok &= !solve_transport(a, b)?.is_empty();
        }
    }
    report.push(
        "webern-all-pairs-admit-transports",
        webern_ok,
        "9 ordered pairs of networks",
    );

    let functorial = check_action_functoriality(
        &fixture.classes,
        &fixture.form,
        &fixture.context,
        ENUM_BOUND,
    )?;
    report.push(
        "network-action-is-functorial",
        functorial,
        "identities and all hom-pairings on 12 networks per class",
    );

    Ok(report)
}

pub fn suite_subgroupoids() -> Result<Report> {
    let mut report = Report::new("subgroupoids");

    let fixture = berg_op5_fixture();
    let ambient = materialize(&fixture.classes)?;
    let extension = ti_extension();
    let names: Vec<String> = fixture.classes.iter().map(|c| c.name().to_string()).collect();

    report.push(
        "projection-hits-every-label",
        projection_is_full(&ambient, &extension)?,
        "both quotient labels on all 16 hom-sets",
    );

    let section =
        SectionSubcategory::all_identity(names.clone(), Arc::clone(extension.quotient()));
    let sub = pullback_subgroupoid(&ambient, &extension, &section)?;
    let structure = verify_endo_and_coset_structure(&sub, &extension)?;
    report.push(
        "default-section-structure",
        structure.holds() && structure.morphism_count == 192,
        format!(
            "{} morphisms, endomorphism groups ≅ kernel, hom-sets are cosets",
            structure.morphism_count
        ),
    );

    report.push(
        "four-class-pullback-matches-generic",
        pullback_oracle(&ambient, &extension, &section)?,
        "filtered groupoid ≡ categorical pullback",
    );

    let two_classes = vec![fixture.class("U"), fixture.class("V")];
    let two_ambient = materialize(&two_classes)?;
    let default_two = SectionSubcategory::all_identity(
        vec!["U".into(), "V".into()],
        Arc::clone(extension.quotient()),
    );
    let swapped_two = SectionSubcategory::try_new(
        vec!["U".into(), "V".into()],
        Arc::clone(extension.quotient()),
        vec![0, 1, 1, 0],
    )?;
    report.push(
        "two-class-pullbacks-match-generic",
        pullback_oracle(&two_ambient, &extension, &default_two)?
            && pullback_oracle(&two_ambient, &extension, &swapped_two)?,
        "identity and swapped sections",
    );

    let sub_swapped = pullback_subgroupoid(&two_ambient, &extension, &swapped_two)?;
    let cross_inverted = sub_swapped
        .groupoid()
        .hom(0, 1)
        .into_iter()
        .all(|m| !TiElement::from_index(sub_swapped.class_morphism(m).anchor()).is_transposition());
    let endo_straight = sub_swapped
        .groupoid()
        .hom(0, 0)
        .into_iter()
        .all(|m| TiElement::from_index(sub_swapped.class_morphism(m).anchor()).is_transposition());
    report.push(
        "swapped-section-crosses-by-inversion",
        cross_inverted && endo_straight,
        "cross hom-sets all inverting, endomorphisms all transposing",
    );

    let parity = SectionSubcategory::try_new(
        vec!["U".into(), "V".into(), "W".into()],
        Arc::clone(extension.quotient()),
        vec![0, 1, 0, 1, 0, 1, 0, 1, 0],
    );
    let broken = SectionSubcategory::try_new(
        vec!["U".into(), "V".into()],
        Arc::clone(extension.quotient()),
        vec![0, 1, 0, 0],
    );
    report.push(
        "section-closure-is-enforced",
        parity.is_ok() && broken.is_err(),
        "parity pattern accepted, one-sided swap refused",
    );

    Ok(report)
}

pub fn suite_bisections(seed: u64) -> Result<Report> {
    let mut report = Report::new("bisections");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let z3 = FiniteGroup::cyclic(3)?;
    let z12 = FiniteGroup::cyclic(12)?;
    let pair_z3_2 = Groupoid::pair_product(&z3, vec!["A".into(), "B".into()])?;
    let pair_z3_3 = Groupoid::pair_product(&z3, vec!["A".into(), "B".into(), "C".into()])?;
    let pair_z12_2 = Groupoid::pair_product(&z12, vec!["A".into(), "B".into()])?;

    for (name, groupoid, expect) in [
        ("frame-coordinates-z3-s2", &pair_z3_2, 18usize),
        ("frame-coordinates-z3-s3", &pair_z3_3, 162),
        ("frame-coordinates-z12-s2", &pair_z12_2, 288),
    ] {
        let bis = BisectionGroup::new(groupoid)?;
        let frame = TransportFrame::from_base(groupoid, 0)?;
        let comparison = compare_with_wreath(&bis, &frame);
        report.push(
            name,
            comparison.is_isomorphism() && bis.order() == expect,
            format!("order {} ≅ wreath of order {}", bis.order(), comparison.wreath_order),
        );
    }

    let bis_z12 = BisectionGroup::new(&pair_z12_2)?;
    let skewed_anchor = pair_z12_2.hom(1, 0)[5];
    let skewed = TransportFrame::try_new(&pair_z12_2, 1, vec![skewed_anchor, pair_z12_2.identity(1)])?;
    report.push(
        "frame-change-preserves-isomorphism",
        compare_with_wreath(&bis_z12, &skewed).is_isomorphism(),
        "different base and non-default anchor",
    );

    let (utt, action) = utt_instance()?;
    let action_report = verify_bisection_action(&utt, &action);
    report.push(
        "triadic-bisections-act-on-networks",
        action_report.holds() && utt.order() == 288 && action.point_count() == 24,
        format!(
            "group of order {} on {} networks",
            utt.order(),
            action.point_count()
        ),
    );

    let bis_z3 = BisectionGroup::new(&pair_z3_2)?;
    let inner_small = inner_action_report(&bis_z3)?;
    let inner_large = inner_action_report(&bis_z12)?;
    report.push(
        "inner-action-kernels",
        inner_small.homomorphism
            && inner_large.homomorphism
            && inner_small.kernel_size == 3
            && inner_large.kernel_size == 12
            && inner_small.faithful_up_to_center
            && inner_large.faithful_up_to_center,
        format!(
            "kernels {} and {} (the diagonal centers)",
            inner_small.kernel_size, inner_large.kernel_size
        ),
    );
    report.push(
        "inner-action-exhaustion-observed",
        !inner_small.inner_automorphisms_exhaust_bisections
            && !inner_large.inner_automorphisms_exhaust_bisections,
        format!(
            "images {}/{} and {}/{}: conjugation forgets the diagonal over an abelian local group",
            inner_small.image_size,
            inner_small.bisection_count,
            inner_large.image_size,
            inner_large.bisection_count
        ),
    );

    let frame_z12 = TransportFrame::from_base(&pair_z12_2, 0)?;
    let trivialization = trivialize(&frame_z12)?;
    report.push(
        "trivialization-is-bijective",
        trivialization.functor.is_bijective()
            && trivialization.target.morphism_count() == 48,
        "48 morphisms matched over 2 objects",
    );

    let frame_z3 = TransportFrame::from_base(&pair_z3_2, 0)?;
    let semi_small = semidirect_report(&bis_z3, &frame_z3);
    let semi_large = semidirect_report(&bis_z12, &frame_z12);
    report.push(
        "semidirect-split",
        semi_small.holds() && semi_large.holds(),
        format!(
            "{} = {}⋊{} and {} = {}⋊{}",
            semi_small.total_order,
            semi_small.normal_part_order,
            semi_small.frame_part_order,
            semi_large.total_order,
            semi_large.normal_part_order,
            semi_large.frame_part_order
        ),
    );

    let pool: [(&str, FiniteGroup); 4] = [
        ("z2", FiniteGroup::cyclic(2)?),
        ("z4", FiniteGroup::cyclic(4)?),
        ("z5", FiniteGroup::cyclic(5)?),
        ("s3", FiniteGroup::symmetric(3)?),
    ];
    let (z_name, z) = &pool[rng.random_range(0..pool.len())];
    let n = rng.random_range(2..=3usize);
    let objects: Vec<String> = (0..n).map(|i| format!("O{i}")).collect();
    let sampled = Groupoid::pair_product(z, objects)?;
    let sampled_bis = BisectionGroup::with_cap(&sampled, 2000)?;
    let sampled_frame = TransportFrame::from_base(&sampled, 0)?;
    let sampled_ok = compare_with_wreath(&sampled_bis, &sampled_frame).is_isomorphism()
        && semidirect_report(&sampled_bis, &sampled_frame).holds()
        && trivialize(&sampled_frame)?.functor.is_bijective();
    report.push(
        "sampled-instance",
        sampled_ok,
        format!("pair groupoid over {z_name} on {n} objects"),
    );

    Ok(report)
}

pub fn run_all(seed: u64) -> Result<Vec<Report>> {
    Ok(vec![
        suite_groups(seed)?,
        suite_homsets(seed)?,
        suite_networks()?,
        suite_subgroupoids()?,
        suite_bisections(seed)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brute_force_oracle_matches_known_counts() {
        let (u, v) = interval_classes().unwrap();
        assert_eq!(brute_force_homset(&u, &v).unwrap().len(), 24);
        assert!(homsets_agree(&u, &v).unwrap());
    }

    #[test]
    fn wreath_oracle_accepts_the_table() {
        let z3 = FiniteGroup::cyclic(3).unwrap();
        assert!(wreath_permutation_oracle(&z3, 2).unwrap());
    }

    #[test]
    fn groups_suite_passes() {
        let report = suite_groups(7).unwrap();
        assert!(report.passed(), "{:#?}", report.checks);
    }

    #[test]
    fn homsets_suite_passes() {
        let report = suite_homsets(7).unwrap();
        assert!(report.passed(), "{:#?}", report.checks);
    }

    #[test]
    fn networks_suite_passes() {
        let report = suite_networks().unwrap();
        assert!(report.passed(), "{:#?}", report.checks);
    }

    #[test]
    fn subgroupoids_suite_passes() {
        let report = suite_subgroupoids().unwrap();
        assert!(report.passed(), "{:#?}", report.checks);
    }

    #[test]
    fn bisections_suite_passes() {
        let report = suite_bisections(7).unwrap();
        assert!(report.passed(), "{:#?}", report.checks);
    }

    #[test]
    fn different_seeds_also_pass() {
        for seed in [0, 42] {
            assert!(suite_groups(seed).unwrap().passed());
            assert!(suite_homsets(seed).unwrap().passed());
            assert!(suite_bisections(seed).unwrap().passed());
        }
    }
}
