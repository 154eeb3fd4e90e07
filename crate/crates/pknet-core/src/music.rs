//! Pitch classes, the T/I action on them, display conventions, and the two
//! analysis fixtures: the nine-chord Berg Op. 5/2 progression over the
//! classes U, V, U′, W, and the three Webern Op. 11/2 networks sharing one
//! triangle-shaped class. The analyzer solves each consecutive transport and
//! picks the transposition-like solution by default.

use std::sync::Arc;

use crate::category::{GSet, PosetCategory};
use crate::error::{Error, Result};
use crate::functor_groupoid::{ChordClass, ClassMorphism};
use crate::group::{ti_group, FiniteGroup, TiElement};
use crate::net::{solve_transport, PKNet, SetValuedDiagram};

pub const NAMES_SHARP: [&str; 12] = [
    "C", "C♯", "D", "D♯", "E", "F", "F♯", "G", "G♯", "A", "A♯", "B",
];
pub const NAMES_FLAT: [&str; 12] = [
    "C", "D♭", "D", "E♭", "E", "F", "G♭", "G", "A♭", "A", "B♭", "B",
];

/// A pitch class, 0 = C.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct PitchClass(pub u8);

impl PitchClass {
    pub fn new(value: i32) -> PitchClass {
        PitchClass(value.rem_euclid(12) as u8)
    }

    /// Accepts residues 0–11 and note names with ♯/♭ (ASCII #/b too).
    pub fn parse(text: &str) -> Result<PitchClass> {
        let text = text.trim();
        if let Ok(value) = text.parse::<i64>() {
            if (0..12).contains(&value) {
                return Ok(PitchClass(value as u8));
            }
            return Err(Error::UnknownPitch(text.to_string()));
        }
        let mut chars = text.chars();
        let letter = chars.next().ok_or_else(|| Error::UnknownPitch(text.to_string()))?;
        let base: i32 = match letter.to_ascii_uppercase() {
            'C' => 0,
            'D' => 2,
            'E' => 4,
            'F' => 5,
            'G' => 7,
            'A' => 9,
            'B' => 11,
            _ => return Err(Error::UnknownPitch(text.to_string())),
        };
        let mut value = base;
        for accidental in chars {
            match accidental {
                '♯' | '#' => value += 1,
                '♭' | 'b' => value -= 1,
                _ => return Err(Error::UnknownPitch(text.to_string())),
            }
        }
        Ok(PitchClass::new(value))
    }

    pub fn name(self, flats: bool) -> &'static str {
        if flats {
            NAMES_FLAT[self.0 as usize]
        } else {
            NAMES_SHARP[self.0 as usize]
        }
    }
}

/// The usual T/I action on the twelve pitch classes, point labels in sharps.
pub fn pitch_classes() -> Arc<GSet> {
    let group = Arc::new(ti_group());
    let carrier = NAMES_SHARP.iter().map(|s| s.to_string()).collect();
    Arc::new(
        GSet::from_fn(group, carrier, |g, x| {
            TiElement::from_index(g).apply(x as u8) as usize
        })
        .expect("the pitch-class action satisfies the action axioms"),
    )
}

/// Display a T/I element in analytical shorthand: transpositions above T₆
/// appear negated (`T10` → `T-2`) unless `normalize` requests the 0–11
/// representative; inversions always show 0–11.
pub fn display_ti(element: TiElement, normalize: bool) -> String {
    if element.is_transposition() && element.shift() > 6 && !normalize {
        format!("T-{}", 12 - element.shift())
    } else {
        element.to_string()
    }
}

/// Display a group element: T/I elements use [`display_ti`], anything else
/// keeps its table label.
pub fn display_element(group: &FiniteGroup, index: usize, normalize: bool) -> String {
    if group.name() == "T/I" {
        display_ti(TiElement::from_index(index), normalize)
    } else {
        group.label(index).to_string()
    }
}

/// An ordered sequence of networks over one shared form and context.
#[derive(Clone)]
pub struct Progression {
    nets: Vec<PKNet>,
}

impl Progression {
    pub fn try_new(nets: Vec<PKNet>) -> Result<Progression> {
        if nets.is_empty() {
            return Err(Error::MalformedNetwork("empty progression".into()));
        }
        for pair in nets.windows(2) {
            if !pair[0].same_context(&pair[1]) {
                return Err(Error::MalformedNetwork(
                    "progression networks live over different forms or contexts".into(),
                ));
            }
            if !pair[0].class().compatible(pair[1].class()) {
                return Err(Error::ClassMismatch(
                    "progression classes do not share shape and group".into(),
                ));
            }
        }
        Ok(Progression { nets })
    }

    pub fn len(&self) -> usize {
        self.nets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nets.is_empty()
    }

    pub fn net(&self, index: usize) -> &PKNet {
        &self.nets[index]
    }

    pub fn nets(&self) -> &[PKNet] {
        &self.nets
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> Progression {
        Progression {
            nets: self.nets[range].to_vec(),
        }
    }
}

/// One solved arrow of an analysis: the morphism carrying chord `from` to
/// chord `to` (0-based indices into the progression).
#[derive(Clone, Debug)]
pub struct AnalysisStep {
    pub from: usize,
    pub to: usize,
    pub morphism: ClassMorphism,
}

impl AnalysisStep {
    /// Shorthand label with negative transpositions, e.g. `^{UV}T-2`.
    pub fn display_label(&self, normalize: bool) -> String {
        display_morphism(&self.morphism, normalize)
    }
}

pub fn display_morphism(morphism: &ClassMorphism, normalize: bool) -> String {
    format!(
        "^{{{}{}}}{}",
        morphism.source().name(),
        morphism.target().name(),
        display_element(morphism.source().group(), morphism.anchor(), normalize)
    )
}

pub fn display_components(morphism: &ClassMorphism, normalize: bool) -> Vec<String> {
    morphism
        .components()
        .iter()
        .map(|&c| display_element(morphism.source().group(), c, normalize))
        .collect()
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Preference {
    /// One step per pair: the first transport lying in the transpositions,
    /// falling back to the overall first solution.
    TranspositionFirst,
    /// Every transport of every pair becomes its own step.
    All,
}

fn is_transposition_like(group: &FiniteGroup, index: usize) -> bool {
    if group.name() == "T/I" {
        TiElement::from_index(index).is_transposition()
    } else {
        true
    }
}

/// Solve every consecutive transport of the progression. Errors with the
/// 1-based chord pair when some step admits no transport at all.
pub fn analyze_progression(
    progression: &Progression,
    preference: Preference,
) -> Result<Vec<AnalysisStep>> {
    let mut steps = Vec::new();
    for index in 0..progression.len().saturating_sub(1) {
        let a = progression.net(index);
        let b = progression.net(index + 1);
        let solutions = solve_transport(a, b)?;
        if solutions.is_empty() {
            return Err(Error::NoTransport {
                from: index + 1,
                to: index + 2,
            });
        }
        match preference {
            Preference::All => {
                for morphism in solutions {
                    steps.push(AnalysisStep {
                        from: index,
                        to: index + 1,
                        morphism,
                    });
                }
            }
            Preference::TranspositionFirst => {
                let group = a.class().group();
                let chosen = solutions
                    .iter()
                    .find(|m| is_transposition_like(group, m.anchor()))
                    .unwrap_or(&solutions[0])
                    .clone();
                steps.push(AnalysisStep {
                    from: index,
                    to: index + 1,
                    morphism: chosen,
                });
            }
        }
    }
    Ok(steps)
}

/// Which of the given classes admit a valid singleton network on these
/// points? Listed by name; never guesses or reorders.
pub fn matching_classes(
    classes: &[Arc<ChordClass>],
    context: &Arc<GSet>,
    points: &[usize],
) -> Vec<String> {
    classes
        .iter()
        .filter(|class| PKNet::singleton(Arc::clone(context), Arc::clone(class), points).is_ok())
        .map(|class| class.name().to_string())
        .collect()
}

/// The Berg Op. 5/2 material: four interval classes over the two-arrow fan
/// and the nine-chord progression, chords 1–5 over {U, V} and 6–9 over
/// {U′, W}.
pub struct BergFixture {
    pub classes: Vec<Arc<ChordClass>>,
    pub progression: Progression,
    pub context: Arc<GSet>,
    pub form: Arc<SetValuedDiagram>,
}

impl BergFixture {
    pub fn class(&self, name: &str) -> Arc<ChordClass> {
        self.classes
            .iter()
            .find(|c| c.name() == name)
            .cloned()
            .unwrap_or_else(|| panic!("fixture has no class named {name}"))
    }

    /// Chords 1–5 (the {U, V} half).
    pub fn part1(&self) -> Progression {
        self.progression.slice(0..5)
    }

    /// Chords 6–9 (the {U′, W} half).
    pub fn part2(&self) -> Progression {
        self.progression.slice(5..9)
    }
}

pub fn berg_op5_fixture() -> BergFixture {
    let span = PosetCategory::span();
    let delta = Arc::clone(span.category());
    let group = Arc::new(ti_group());
    let class = |name: &str, f: &str, g: &str| -> Arc<ChordClass> {
        Arc::new(
            ChordClass::from_labels(name, Arc::clone(&delta), Arc::clone(&group), &[
                ("f", f),
                ("g", g),
            ])
            .expect("fixture class is a functor"),
        )
    };
    let u = class("U", "I3", "I10");
    let v = class("V", "I4", "I10");
    let u_prime = class("U'", "I7", "I3");
    let w = class("W", "I8", "I3");

    let context = pitch_classes();
    let form = Arc::new(SetValuedDiagram::singleton(Arc::clone(&delta)));
    let chord = |class: &Arc<ChordClass>, points: [usize; 3]| -> PKNet {
        PKNet::singleton_in(
            Arc::clone(&form),
            Arc::clone(&context),
            Arc::clone(class),
            &points,
        )
        .expect("fixture chord validates")
    };
    let nets = vec![
        chord(&u, [3, 0, 7]),        // E♭, C, G
        chord(&v, [1, 3, 9]),        // C♯, E♭, A
        chord(&v, [0, 4, 10]),       // C, E, B♭
        chord(&u, [2, 1, 8]),        // D, C♯, G♯
        chord(&u, [3, 0, 7]),        // E♭, C, G
        chord(&u_prime, [0, 7, 3]),  // C, G, E♭
        chord(&w, [10, 10, 5]),      // B♭, B♭, F (unison at X and Y)
        chord(&u_prime, [11, 8, 4]), // B, G♯, E
        chord(&u_prime, [0, 7, 3]),  // C, G, E♭
    ];
    let progression = Progression::try_new(nets).expect("fixture progression is coherent");
    BergFixture {
        classes: vec![u, v, u_prime, w],
        progression,
        context,
        form,
    }
}

/// The Webern Op. 11/2 material: one triangle-shaped class generated by
/// I₈ and I₉ (composite T₁) and its three networks.
pub struct WebernFixture {
    pub class: Arc<ChordClass>,
    pub progression: Progression,
    pub context: Arc<GSet>,
    pub form: Arc<SetValuedDiagram>,
}

pub fn webern_op11_fixture() -> WebernFixture {
    let triangle = PosetCategory::triangle();
    let delta = Arc::clone(triangle.category());
    let group = Arc::new(ti_group());
    let class = Arc::new(
        ChordClass::from_labels("Wb", Arc::clone(&delta), group, &[("f", "I8"), ("g", "I9")])
            .expect("fixture class is a functor"),
    );
    let context = pitch_classes();
    let form = Arc::new(SetValuedDiagram::singleton(delta));
    let net = |points: [usize; 3]| -> PKNet {
        PKNet::singleton_in(
            Arc::clone(&form),
            Arc::clone(&context),
            Arc::clone(&class),
            &points,
        )
        .expect("fixture network validates")
    };
    let nets = vec![
        net([9, 11, 10]), // A, B, B♭
        net([1, 7, 2]),   // C♯, G, D
        net([5, 3, 6]),   // F, E♭, F♯
    ];
    let progression = Progression::try_new(nets).expect("fixture progression is coherent");
    WebernFixture {
        class,
        progression,
        context,
        form,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pitch_parsing_and_names() {
        assert_eq!(PitchClass::parse("0").unwrap(), PitchClass(0));
        assert_eq!(PitchClass::parse("11").unwrap(), PitchClass(11));
        assert_eq!(PitchClass::parse("C").unwrap(), PitchClass(0));
        assert_eq!(PitchClass::parse("C♯").unwrap(), PitchClass(1));
        assert_eq!(PitchClass::parse("C#").unwrap(), PitchClass(1));
        assert_eq!(PitchClass::parse("Eb").unwrap(), PitchClass(3));
        assert_eq!(PitchClass::parse("E♭").unwrap(), PitchClass(3));
        assert_eq!(PitchClass::parse("Bb").unwrap(), PitchClass(10));
        assert_eq!(PitchClass::parse("Cb").unwrap(), PitchClass(11));
        assert_eq!(PitchClass::parse("B♯").unwrap(), PitchClass(0));
        assert!(PitchClass::parse("H").is_err());
        assert!(PitchClass::parse("12").is_err());
        assert!(PitchClass::parse("-1").is_err());
        assert_eq!(PitchClass(3).name(false), "D♯");
        assert_eq!(PitchClass(3).name(true), "E♭");
        // Round trip through both spellings.
        for p in 0..12u8 {
            assert_eq!(PitchClass::parse(NAMES_SHARP[p as usize]).unwrap().0, p);
            assert_eq!(PitchClass::parse(NAMES_FLAT[p as usize]).unwrap().0, p);
        }
    }

    #[test]
    fn label_display_rules() {
        assert_eq!(display_ti(TiElement::transposition(10), false), "T-2");
        assert_eq!(display_ti(TiElement::transposition(10), true), "T10");
        assert_eq!(display_ti(TiElement::transposition(6), false), "T6");
        assert_eq!(display_ti(TiElement::transposition(0), false), "T0");
        assert_eq!(display_ti(TiElement::inversion(10), false), "I10");
        assert_eq!(display_ti(TiElement::inversion(10), true), "I10");
    }

    #[test]
    fn berg_fixture_chords() {
        let fixture = berg_op5_fixture();
        assert_eq!(fixture.progression.len(), 9);
        assert_eq!(fixture.progression.net(1).points(), vec![1, 3, 9]);
        let unison = fixture.progression.net(6).points();
        assert_eq!(unison[0], 10);
        assert_eq!(unison[1], 10);
        // Chords 1 and 5 coincide, as do 6 and 9.
        assert_eq!(
            fixture.progression.net(0).points(),
            fixture.progression.net(4).points()
        );
        assert_eq!(
            fixture.progression.net(5),
            fixture.progression.net(8)
        );
    }

    #[test]
    fn berg_part1_analysis() {
        let fixture = berg_op5_fixture();
        let steps = analyze_progression(&fixture.part1(), Preference::TranspositionFirst).unwrap();
        let labels: Vec<String> = steps.iter().map(|s| s.display_label(false)).collect();
        assert_eq!(labels, vec!["^{UV}T-2", "^{VV}T-1", "^{VU}T2", "^{UU}T1"]);
        let components: Vec<Vec<String>> = steps
            .iter()
            .map(|s| display_components(&s.morphism, false))
            .collect();
        assert_eq!(components[0], vec!["T-2", "T3", "T2"]);
        assert_eq!(components[1], vec!["T-1", "T1", "T1"]);
        assert_eq!(components[2], vec!["T2", "T-3", "T-2"]);
        assert_eq!(components[3], vec!["T1", "T-1", "T-1"]);
        // Each step is the unique transposition-like transport.
        for (index, step) in steps.iter().enumerate() {
            let all = solve_transport(
                fixture.progression.net(index),
                fixture.progression.net(index + 1),
            )
            .unwrap();
            let kernel: Vec<_> = all
                .iter()
                .filter(|m| TiElement::from_index(m.anchor()).is_transposition())
                .collect();
            assert_eq!(kernel.len(), 1);
            assert_eq!(*kernel[0], step.morphism);
        }
    }

    #[test]
    fn berg_part2_analysis() {
        let fixture = berg_op5_fixture();
        let steps = analyze_progression(&fixture.part2(), Preference::TranspositionFirst).unwrap();
        let labels: Vec<String> = steps.iter().map(|s| s.display_label(false)).collect();
        assert_eq!(labels, vec!["^{U'W}T-2", "^{WU'}T1", "^{U'U'}T1"]);
        let components: Vec<Vec<String>> = steps
            .iter()
            .map(|s| display_components(&s.morphism, false))
            .collect();
        assert_eq!(components[0], vec!["T-2", "T3", "T2"]);
        assert_eq!(components[1], vec!["T1", "T-2", "T-1"]);
        assert_eq!(components[2], vec!["T1", "T-1", "T-1"]);
    }

    #[test]
    fn steps_telescope() {
        let fixture = berg_op5_fixture();
        let steps = analyze_progression(&fixture.part1(), Preference::TranspositionFirst).unwrap();
        let mut total = steps[0].morphism.clone();
        for step in &steps[1..] {
            total = step.morphism.compose(&total).unwrap();
        }
        // Chord 5 equals chord 1, so the telescoped transport is an identity;
        // it must agree with some direct transport chord 1 → chord 5.
        assert!(total.is_identity());
        let direct = solve_transport(fixture.progression.net(0), fixture.progression.net(4)).unwrap();
        assert!(direct.contains(&total));
    }

    #[test]
    fn analysis_with_all_solutions() {
        let fixture = berg_op5_fixture();
        let steps = analyze_progression(&fixture.part1(), Preference::All).unwrap();
        // Each consecutive pair contributes at least its transposition
        // solution; pairs may add inversion solutions on top.
        assert!(steps.len() >= 4);
        for step in &steps {
            let moved = fixture.progression.net(step.from).act(&step.morphism).unwrap();
            assert_eq!(moved, *fixture.progression.net(step.to));
        }
    }

    #[test]
    fn webern_fixture_and_transports() {
        let fixture = webern_op11_fixture();
        assert_eq!(fixture.progression.len(), 3);
        assert_eq!(fixture.progression.net(0).points(), vec![9, 11, 10]);
        assert_eq!(fixture.progression.net(2).points(), vec![5, 3, 6]);
        assert_eq!(fixture.class.image_label("f").unwrap(), "I8");
        assert_eq!(fixture.class.image_label("g∘f").unwrap(), "T1");
        // Every ordered pair of networks admits a transport.
        for a in 0..3 {
            for b in 0..3 {
                let found =
                    solve_transport(fixture.progression.net(a), fixture.progression.net(b))
                        .unwrap();
                assert!(!found.is_empty(), "no transport {a} → {b}");
            }
        }
        let steps =
            analyze_progression(&fixture.progression, Preference::TranspositionFirst).unwrap();
        assert_eq!(steps[0].display_label(false), "^{WbWb}T4");
    }

    #[test]
    fn constant_progression_yields_identity_step() {
        let fixture = berg_op5_fixture();
        let twice = Progression::try_new(vec![
            fixture.progression.net(0).clone(),
            fixture.progression.net(0).clone(),
        ])
        .unwrap();
        let steps = analyze_progression(&twice, Preference::TranspositionFirst).unwrap();
        assert_eq!(steps.len(), 1);
        assert!(steps[0].morphism.is_identity());
    }

    #[test]
    fn class_matcher_never_guesses() {
        let span = PosetCategory::span();
        let group = Arc::new(ti_group());
        let u = Arc::new(
            ChordClass::from_labels("U", Arc::clone(span.category()), Arc::clone(&group), &[
                ("f", "T4"),
                ("g", "T7"),
            ])
            .unwrap(),
        );
        let v = Arc::new(
            ChordClass::from_labels("V", Arc::clone(span.category()), group, &[
                ("f", "T2"),
                ("g", "T5"),
            ])
            .unwrap(),
        );
        let context = pitch_classes();
        let classes = vec![u, v];
        assert_eq!(matching_classes(&classes, &context, &[5, 9, 0]), vec!["U"]);
        assert_eq!(matching_classes(&classes, &context, &[5, 7, 10]), vec!["V"]);
        assert!(matching_classes(&classes, &context, &[5, 9, 1]).is_empty());
    }
}
