//! One function per subcommand, plus the shared workspace/display plumbing.

use std::fs;
use std::sync::Arc;

use serde_json::json;

use pknet_core::bisection::{compare_with_wreath, trivialize, BisectionGroup, TransportFrame};
use pknet_core::category::{GSet, Groupoid};
use pknet_core::descriptor::Workspace;
use pknet_core::functor_groupoid::{homset, materialize, ChordClass, ClassMorphism};
use pknet_core::group::{ti_extension, FiniteGroup, GroupExtension, TiElement};
use pknet_core::music::{
    analyze_progression, display_element, display_morphism, PitchClass, Preference,
};
use pknet_core::net::{enumerate_nets, SetValuedDiagram};
use pknet_core::subgroupoid::{
    pullback_subgroupoid, verify_endo_and_coset_structure, SubGroupoid,
};
use pknet_core::verify::{
    run_all, suite_bisections, suite_groups, suite_homsets, suite_networks, suite_subgroupoids,
    Report,
};

use crate::{Cli, Command, Failure};

const DEFAULT_CONFIG: &str = include_str!("../fixtures/default.json");

#[derive(Clone, Copy)]
struct Options {
    json: bool,
    flats: bool,
    normalize: bool,
}

pub fn run(cli: Cli) -> Result<(), Failure> {
    let options = Options {
        json: cli.json,
        flats: cli.flats,
        normalize: cli.normalize_labels,
    };
    let text = match &cli.config {
        Some(path) => fs::read_to_string(path)
            .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?,
        None => DEFAULT_CONFIG.to_string(),
    };
    let workspace = Workspace::from_json(&text)?;
    let bound = cli.bound.unwrap_or(workspace.search_bound);

    match cli.command {
        Command::Homset { from, to } => cmd_homset(&workspace, options, &from, &to),
        Command::Analyze { progression } => cmd_analyze(&workspace, options, &progression),
        Command::Act { net, to, element } => cmd_act(&workspace, options, &net, &to, &element),
        Command::Nf { class } => cmd_nf(&workspace, options, &class, bound),
        Command::Subgroupoid { section, classes } => {
            cmd_subgroupoid(&workspace, options, section.as_deref(), &classes)
        }
        Command::Bisections { section, classes } => {
            cmd_bisections(&workspace, options, section.as_deref(), &classes)
        }
        Command::WreathIso { base_order, copies } => {
            cmd_wreath_iso(&workspace, options, base_order, copies)
        }
        Command::Trivialize { section, classes } => {
            cmd_trivialize(&workspace, options, section.as_deref(), &classes)
        }
        Command::Verify { suite } => cmd_verify(options, &suite, cli.seed),
        Command::Dot { progression } => cmd_dot(&workspace, options, &progression),
    }
}

/// Point display: note names in the pitch-class context, carrier labels
/// elsewhere.
fn point_name(context: &GSet, point: usize, flats: bool) -> String {
    if context.group().name() == "T/I" {
        PitchClass::new(point as i32).name(flats).to_string()
    } else {
        context.point_label(point).to_string()
    }
}

fn tuple_of(context: &GSet, points: &[usize], flats: bool) -> String {
    let names: Vec<String> = points
        .iter()
        .map(|&p| point_name(context, p, flats))
        .collect();
    format!("({})", names.join(", "))
}

fn print_table(header: Vec<String>, rows: Vec<Vec<String>>) {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in &rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.chars().count());
        }
    }
    let render = |cells: &[String]| {
        let mut line = String::from(" ");
        for (i, cell) in cells.iter().enumerate() {
            line.push(' ');
            line.push_str(cell);
            if i + 1 < cells.len() {
                let pad = widths[i].saturating_sub(cell.chars().count()) + 1;
                line.push_str(&" ".repeat(pad));
            }
        }
        line
    };
    println!("{}", render(&header));
    for row in &rows {
        println!("{}", render(row));
    }
}

fn emit_json(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("JSON output"));
}

fn component_map(
    morphism: &ClassMorphism,
    normalize: bool,
) -> serde_json::Map<String, serde_json::Value> {
    let delta = morphism.source().delta();
    let group = morphism.source().group();
    morphism
        .components()
        .iter()
        .enumerate()
        .map(|(o, &c)| {
            (
                delta.object_label(o).to_string(),
                json!(display_element(group, c, normalize)),
            )
        })
        .collect()
}

fn cmd_homset(ws: &Workspace, options: Options, from: &str, to: &str) -> Result<(), Failure> {
    let src = ws.class(from)?;
    let tgt = ws.class(to)?;
    let morphisms = homset(src, tgt)?;
    let delta = src.delta();
    let group = src.group();

    if options.json {
        let rows: Vec<serde_json::Value> = morphisms
            .iter()
            .map(|m| {
                json!({
                    "label": display_morphism(m, options.normalize),
                    "components": component_map(m, options.normalize),
                })
            })
            .collect();
        emit_json(&json!({
            "from": from,
            "to": to,
            "count": morphisms.len(),
            "morphisms": rows,
        }));
        return Ok(());
    }

    println!("Hom({from}, {to}): {} morphisms", morphisms.len());
    if morphisms.is_empty() {
        return Ok(());
    }
    let mut header = vec!["morphism".to_string()];
    header.extend(delta.objects().iter().cloned());
    let rows: Vec<Vec<String>> = morphisms
        .iter()
        .map(|m| {
            let mut row = vec![display_morphism(m, options.normalize)];
            row.extend(
                m.components()
                    .iter()
                    .map(|&c| display_element(group, c, options.normalize)),
            );
            row
        })
        .collect();
    print_table(header, rows);
    Ok(())
}

fn cmd_analyze(ws: &Workspace, options: Options, name: &str) -> Result<(), Failure> {
    let resolved = ws.progression(name)?;
    let steps = analyze_progression(&resolved.progression, Preference::TranspositionFirst)?;
    let context = &resolved.context;
    let delta = resolved.classes[0].delta();

    if options.json {
        let chords: Vec<serde_json::Value> = resolved
            .progression
            .nets()
            .iter()
            .enumerate()
            .map(|(i, net)| {
                let pitches: serde_json::Map<String, serde_json::Value> = net
                    .points()
                    .iter()
                    .enumerate()
                    .map(|(o, &p)| {
                        (
                            delta.object_label(o).to_string(),
                            json!(point_name(context, p, options.flats)),
                        )
                    })
                    .collect();
                json!({
                    "index": i + 1,
                    "class": net.class().name(),
                    "pitches": pitches,
                })
            })
            .collect();
        let steps: Vec<serde_json::Value> = steps
            .iter()
            .map(|s| {
                json!({
                    "from": s.from + 1,
                    "to": s.to + 1,
                    "label": s.display_label(options.normalize),
                    "components": component_map(&s.morphism, options.normalize),
                })
            })
            .collect();
        emit_json(&json!({
            "progression": name,
            "chords": chords,
            "steps": steps,
        }));
        return Ok(());
    }

    println!(
        "progression '{name}': {} chords, {} steps",
        resolved.progression.len(),
        steps.len()
    );
    let mut header = vec!["chord".to_string(), "class".to_string()];
    header.extend(delta.objects().iter().cloned());
    let rows: Vec<Vec<String>> = resolved
        .progression
        .nets()
        .iter()
        .enumerate()
        .map(|(i, net)| {
            let mut row = vec![(i + 1).to_string(), net.class().name().to_string()];
            row.extend(
                net.points()
                    .iter()
                    .map(|&p| point_name(context, p, options.flats)),
            );
            row
        })
        .collect();
    print_table(header, rows);
    if steps.is_empty() {
        return Ok(());
    }
    println!();
    let mut header = vec!["step".to_string(), "morphism".to_string()];
    header.extend(delta.objects().iter().cloned());
    let group = resolved.classes[0].group();
    let rows: Vec<Vec<String>> = steps
        .iter()
        .map(|s| {
            let mut row = vec![
                format!("{}→{}", s.from + 1, s.to + 1),
                s.display_label(options.normalize),
            ];
            row.extend(
                s.morphism
                    .components()
                    .iter()
                    .map(|&c| display_element(group, c, options.normalize)),
            );
            row
        })
        .collect();
    print_table(header, rows);
    Ok(())
}

fn cmd_act(
    ws: &Workspace,
    options: Options,
    net_name: &str,
    to: &str,
    element: &str,
) -> Result<(), Failure> {
    let net = ws.net(net_name)?;
    let src = Arc::clone(net.class());
    let tgt = ws.class(to)?;
    let group = src.group();
    let anchor = if group.name() == "T/I" {
        TiElement::parse(element)?.index()
    } else {
        group.index_of(element)?
    };
    let morphisms = homset(&src, tgt)?;
    let morphism = morphisms
        .iter()
        .find(|m| m.anchor() == anchor)
        .ok_or_else(|| {
            Failure::Verification(format!(
                "no morphism from {} to {} is anchored at {element}",
                src.name(),
                tgt.name()
            ))
        })?;
    let image = net.act(morphism)?;
    let context = net.context();

    if options.json {
        let delta = src.delta();
        let result: serde_json::Map<String, serde_json::Value> = image
            .points()
            .iter()
            .enumerate()
            .map(|(o, &p)| {
                (
                    delta.object_label(o).to_string(),
                    json!(point_name(context, p, options.flats)),
                )
            })
            .collect();
        emit_json(&json!({
            "net": net_name,
            "morphism": display_morphism(morphism, options.normalize),
            "components": component_map(morphism, options.normalize),
            "result": result,
        }));
        return Ok(());
    }

    println!(
        "{} applied to '{net_name}' {}",
        display_morphism(morphism, options.normalize),
        tuple_of(context, &net.points(), options.flats)
    );
    let delta = src.delta();
    let components: Vec<String> = morphism
        .components()
        .iter()
        .enumerate()
        .map(|(o, &c)| {
            format!(
                "{}: {}",
                delta.object_label(o),
                display_element(group, c, options.normalize)
            )
        })
        .collect();
    println!("  components: {}", components.join("  "));
    println!(
        "  result: {}",
        tuple_of(context, &image.points(), options.flats)
    );
    Ok(())
}

fn cmd_nf(ws: &Workspace, options: Options, class_name: &str, bound: u64) -> Result<(), Failure> {
    let class = ws.class(class_name)?;
    let context = ws.context_for(class)?;
    let form = Arc::new(SetValuedDiagram::singleton(Arc::clone(class.delta())));
    let nets = enumerate_nets(&form, &context, class, bound)?;

    if options.json {
        let delta = class.delta();
        let rows: Vec<serde_json::Value> = nets
            .iter()
            .map(|net| {
                let pitches: serde_json::Map<String, serde_json::Value> = net
                    .points()
                    .iter()
                    .enumerate()
                    .map(|(o, &p)| {
                        (
                            delta.object_label(o).to_string(),
                            json!(point_name(&context, p, options.flats)),
                        )
                    })
                    .collect();
                json!(pitches)
            })
            .collect();
        emit_json(&json!({
            "class": class_name,
            "count": nets.len(),
            "nets": rows,
        }));
        return Ok(());
    }

    println!("networks of class {class_name}: {}", nets.len());
    for (i, net) in nets.iter().enumerate() {
        println!(
            "  {:>3}  {}",
            i + 1,
            tuple_of(&context, &net.points(), options.flats)
        );
    }
    Ok(())
}

/// Shared setup for the three groupoid commands: resolve the class family,
/// require the transposition/inversion split, pull back along the section.
fn pulled_back(
    ws: &Workspace,
    section: Option<&str>,
    classes: &[String],
) -> Result<(Vec<String>, SubGroupoid, GroupExtension), Failure> {
    let names: Vec<String> = if classes.is_empty() {
        vec!["U".to_string(), "V".to_string()]
    } else {
        classes.to_vec()
    };
    let family: Vec<Arc<ChordClass>> = names
        .iter()
        .map(|n| ws.class(n).cloned())
        .collect::<Result<_, _>>()?;
    for class in &family {
        if class.group().name() != "T/I" {
            return Err(Failure::Input(format!(
                "class {} is not a T/I class; sections split the transposition/inversion quotient",
                class.name()
            )));
        }
    }
    let ambient = materialize(&family)?;
    let extension = ti_extension();
    let section = ws.section(section, names.clone(), extension.quotient())?;
    let sub = pullback_subgroupoid(&ambient, &extension, &section)?;
    Ok((names, sub, extension))
}

fn family_display(names: &[String]) -> String {
    format!("{{{}}}", names.join(", "))
}

fn cmd_subgroupoid(
    ws: &Workspace,
    options: Options,
    section: Option<&str>,
    classes: &[String],
) -> Result<(), Failure> {
    let section_name = section.unwrap_or("identity");
    let (names, sub, extension) = pulled_back(ws, section, classes)?;
    let report = verify_endo_and_coset_structure(&sub, &extension)?;

    if options.json {
        emit_json(&json!({
            "classes": names,
            "section": section_name,
            "report": report,
        }));
    } else {
        println!(
            "pullback of {} along section '{section_name}'",
            family_display(&names)
        );
        println!("  objects:    {}", report.object_count);
        println!(
            "  morphisms:  {} (expected {})",
            report.morphism_count, report.expected_morphism_count
        );
        println!(
            "  every End ≅ kernel of order {}: {}",
            extension.kernel().order(),
            if report.endos_isomorphic_to_kernel { "yes" } else { "NO" }
        );
        println!(
            "  hom-sets are kernel cosets: {}",
            if report.hom_sets_are_cosets { "yes" } else { "NO" }
        );
        println!("result: {}", if report.holds() { "PASS" } else { "FAIL" });
    }
    if report.holds() {
        Ok(())
    } else {
        Err(Failure::Verification(format!(
            "subgroupoid structure check failed on {}",
            family_display(&names)
        )))
    }
}

fn cmd_bisections(
    ws: &Workspace,
    options: Options,
    section: Option<&str>,
    classes: &[String],
) -> Result<(), Failure> {
    let section_name = section.unwrap_or("identity");
    let (names, sub, _) = pulled_back(ws, section, classes)?;
    let groupoid = sub.groupoid();
    let bisections = BisectionGroup::with_cap(groupoid, ws.order_cap)?;
    let frame = TransportFrame::from_base(groupoid, 0)?;
    let comparison = compare_with_wreath(&bisections, &frame);

    if options.json {
        emit_json(&json!({
            "classes": names,
            "section": section_name,
            "comparison": comparison,
        }));
    } else {
        println!(
            "bisections of the pullback of {} along section '{section_name}'",
            family_display(&names)
        );
        println!("  bisections:    {}", comparison.bisection_count);
        println!("  wreath order:  {}", comparison.wreath_order);
        println!(
            "  frame coordinates are an isomorphism: {}",
            if comparison.is_isomorphism() { "yes" } else { "NO" }
        );
    }
    if comparison.is_isomorphism() {
        Ok(())
    } else {
        Err(Failure::Verification(
            "bisection group and wreath product disagree".to_string(),
        ))
    }
}

fn cmd_wreath_iso(
    ws: &Workspace,
    options: Options,
    base_order: usize,
    copies: usize,
) -> Result<(), Failure> {
    let z = FiniteGroup::cyclic(base_order)?;
    let objects: Vec<String> = (1..=copies).map(|k| format!("E{k}")).collect();
    let groupoid = Groupoid::pair_product(&z, objects)?;
    let bisections = BisectionGroup::with_cap(&groupoid, ws.order_cap)?;
    let frame = TransportFrame::from_base(&groupoid, 0)?;
    let comparison = compare_with_wreath(&bisections, &frame);

    if options.json {
        emit_json(&json!({
            "base_order": base_order,
            "copies": copies,
            "comparison": comparison,
        }));
    } else {
        println!(
            "Z{base_order} wr S{copies}: bisections {}, wreath order {}, isomorphism {}",
            comparison.bisection_count,
            comparison.wreath_order,
            if comparison.is_isomorphism() { "verified" } else { "FAILED" }
        );
    }
    if comparison.is_isomorphism() {
        Ok(())
    } else {
        Err(Failure::Verification(
            "bisection group and wreath product disagree".to_string(),
        ))
    }
}

fn cmd_trivialize(
    ws: &Workspace,
    options: Options,
    section: Option<&str>,
    classes: &[String],
) -> Result<(), Failure> {
    let section_name = section.unwrap_or("identity");
    let (names, sub, extension) = pulled_back(ws, section, classes)?;
    let groupoid = sub.groupoid();
    let frame = TransportFrame::from_base(groupoid, 0)?;
    let trivialization = trivialize(&frame)?;
    let bijective = trivialization.functor.is_bijective();

    if options.json {
        emit_json(&json!({
            "classes": names,
            "section": section_name,
            "objects": groupoid.object_count(),
            "endo_order": frame.endo_group().order(),
            "target_morphisms": trivialization.target.morphism_count(),
            "bijective": bijective,
        }));
    } else {
        println!(
            "trivialization of the pullback of {} along section '{section_name}'",
            family_display(&names)
        );
        println!(
            "  target: pair groupoid on {} objects with vertex group of order {}",
            groupoid.object_count(),
            extension.kernel().order()
        );
        println!(
            "  target morphisms: {}",
            trivialization.target.morphism_count()
        );
        println!(
            "  flattening functor is bijective: {}",
            if bijective { "yes" } else { "NO" }
        );
    }
    if bijective {
        Ok(())
    } else {
        Err(Failure::Verification(
            "trivialization functor is not bijective".to_string(),
        ))
    }
}

fn cmd_verify(options: Options, suite: &str, seed: u64) -> Result<(), Failure> {
    let reports: Vec<Report> = match suite {
        "groups" => vec![suite_groups(seed)?],
        "functor-groupoid" => vec![suite_homsets(seed)?, suite_networks()?],
        "subgroupoid" => vec![suite_subgroupoids()?],
        "bisections" => vec![suite_bisections(seed)?],
        "all" => run_all(seed)?,
        other => {
            return Err(Failure::Input(format!(
                "unknown suite {other:?}; choose groups, functor-groupoid, subgroupoid, \
                 bisections, or all"
            )))
        }
    };

    if options.json {
        emit_json(&serde_json::to_value(&reports).expect("reports serialize"));
    } else {
        for report in &reports {
            for line in report.lines() {
                println!("{line}");
            }
        }
    }
    let checks: usize = reports.iter().map(|r| r.checks.len()).sum();
    let failed: usize = reports
        .iter()
        .flat_map(|r| r.checks.iter())
        .filter(|c| !c.passed)
        .count();
    if failed == 0 {
        if !options.json {
            println!("all {checks} checks passed");
        }
        Ok(())
    } else {
        Err(Failure::Verification(format!(
            "{failed} of {checks} checks failed"
        )))
    }
}

fn cmd_dot(ws: &Workspace, options: Options, name: &str) -> Result<(), Failure> {
    let resolved = ws.progression(name)?;
    let steps = analyze_progression(&resolved.progression, Preference::TranspositionFirst)?;
    let rendered = crate::dot::render(
        name,
        &resolved,
        &steps,
        options.flats,
        options.normalize,
    );
    if options.json {
        emit_json(&json!({ "progression": name, "dot": rendered }));
    } else {
        print!("{rendered}");
    }
    Ok(())
}
