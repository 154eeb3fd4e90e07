//! DOT rendering of an analyzed progression: one cluster per chord with a
//! node per object, black arrows inside each chord labeled by the class's
//! functor, violet arrows between consecutive chords labeled by the
//! transport's per-object components, and one red cluster-to-cluster arrow
//! per step carrying the step label.

use pknet_core::descriptor::ResolvedProgression;
use pknet_core::music::{display_element, AnalysisStep, PitchClass};

fn quote(label: &str) -> String {
    format!("\"{}\"", label.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn render(
    name: &str,
    resolved: &ResolvedProgression,
    steps: &[AnalysisStep],
    flats: bool,
    normalize: bool,
) -> String {
    let context = &resolved.context;
    let pitch_context = context.group().name() == "T/I";
    let point_name = |p: usize| -> String {
        if pitch_context {
            PitchClass::new(p as i32).name(flats).to_string()
        } else {
            context.point_label(p).to_string()
        }
    };

    let mut out = String::new();
    let mut push = |line: &str| {
        out.push_str(line);
        out.push('\n');
    };

    push(&format!("digraph {} {{", quote(name)));
    push("  compound=true;");
    push("  rankdir=LR;");
    push("  node [shape=circle, fontname=\"Helvetica\"];");
    push("  edge [fontname=\"Helvetica\"];");

    for (i, net) in resolved.progression.nets().iter().enumerate() {
        let class = net.class();
        let delta = class.delta();
        let group = class.group();
        let chord = i + 1;
        push(&format!("  subgraph cluster_{chord} {{"));
        push(&format!("    label={};", quote(&format!("{chord}: {}", class.name()))));
        let points = net.points();
        for (o, &p) in points.iter().enumerate() {
            push(&format!(
                "    n{chord}_{o} [label={}];",
                quote(&point_name(p))
            ));
        }
        for m in 0..delta.morphism_count() {
            if delta.is_identity(m) {
                continue;
            }
            let label = display_element(group, class.images()[m], normalize);
            push(&format!(
                "    n{chord}_{} -> n{chord}_{} [label={}];",
                delta.src(m),
                delta.tgt(m),
                quote(&label)
            ));
        }
        push("  }");
    }

    for step in steps {
        let (a, b) = (step.from + 1, step.to + 1);
        let source = step.morphism.source();
        let group = source.group();
        for (o, &c) in step.morphism.components().iter().enumerate() {
            push(&format!(
                "  n{a}_{o} -> n{b}_{o} [label={}, color=violet, fontcolor=violet];",
                quote(&display_element(group, c, normalize))
            ));
        }
        push(&format!(
            "  n{a}_0 -> n{b}_0 [label={}, color=red, fontcolor=red, \
             ltail=cluster_{a}, lhead=cluster_{b}];",
            quote(&step.display_label(normalize))
        ));
    }

    push("}");
    out
}
