use std::path::Path;

use anyhow::{bail, Context};
use profgen::catalog;
use profgen::graphs::{self, CompatibilityReport, GraphReport};
use profgen::probability::{self, IdentityReport, ProbabilityReport};
use profgen::tower;
use profgen::wreath;
use profgen::{Classifier, FiniteGroup, GroupClass, Permutation, Rational};
use serde::Serialize;
use serde_json::{json, Value};

use crate::output::{Envelope, Table};
use crate::{Common, Format, GroupArgs};

fn format_name(f: Format) -> &'static str {
    match f {
        Format::Json => "json",
        Format::Csv => "csv",
    }
}

fn config(common: &Common, extra: Value) -> Value {
    let mut base = json!({
        "format": format_name(common.format),
        "cap": common.cap,
        "pair_budget": common.pair_budget,
        "cache": common.cache.as_ref().map(|p| p.display().to_string()),
    });
    if let (Value::Object(b), Value::Object(e)) = (&mut base, extra) {
        b.extend(e);
    }
    base
}

fn load_group(common: &Common, args: &GroupArgs) -> anyhow::Result<FiniteGroup> {
    let g = match (&args.group, &args.group_file) {
        (Some(name), _) => catalog::load(name)?,
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            let (degree, gens) =
                catalog::parse_group_spec(&text).with_context(|| format!("parsing {}", path.display()))?;
            FiniteGroup::from_generators(degree, gens)?.with_name(path.display().to_string())
        }
        (None, None) => bail!("one of --group or --group-file is required"),
    };
    Ok(g.with_cap(common.cap))
}

fn group_config(common: &Common, args: &GroupArgs) -> Value {
    config(
        common,
        json!({
            "group": args.group,
            "group_file": args.group_file.as_ref().map(|p| p.display().to_string()),
            "class": args.class,
        }),
    )
}

fn classifier<'g>(common: &Common, g: &'g FiniteGroup, class: GroupClass) -> anyhow::Result<Classifier<'g>> {
    let mut c = Classifier::new(g, class);
    if let Some(b) = common.pair_budget {
        c = c.with_pair_budget(b);
    }
    if let Some(path) = &common.cache {
        if path.exists() {
            c.load_cache(path)?;
        }
    }
    Ok(c)
}

fn save_cache(common: &Common, c: &Classifier<'_>) -> anyhow::Result<()> {
    if let Some(path) = &common.cache {
        c.save_cache(path)?;
    }
    Ok(())
}

#[derive(Serialize)]
struct ElementRow {
    representative: String,
    class_size: usize,
    omega_size: usize,
    probability: Rational,
}

#[derive(Serialize)]
struct OmegaGlobal {
    size: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    elements: Option<Vec<String>>,
}

#[derive(Serialize)]
struct AnalyzeReport {
    group: String,
    order: String,
    class: String,
    elements: Vec<ElementRow>,
    prob_group: ProbabilityReport,
    omega_global: OmegaGlobal,
    identities: IdentityReport,
}

pub fn analyze(common: &Common, args: &GroupArgs) -> anyhow::Result<Envelope> {
    let g = load_group(common, args)?;
    let class = GroupClass::from_name(&args.class)?;
    let c = classifier(common, &g, class)?;
    let e = g.enumeration()?;
    let classes = g.conjugacy_classes()?;
    let mut elements = Vec::new();
    let mut table = Table::new(&["representative", "class_size", "omega_size", "probability"]);
    for (rep, size) in classes.summary() {
        let om = probability::omega_idx(&c, rep)?;
        let row = ElementRow {
            representative: e.element(rep).to_string(),
            class_size: size,
            omega_size: om.len(),
            probability: Rational::new(om.len() as u64, e.len() as u64),
        };
        table.push(vec![
            row.representative.clone(),
            size.to_string(),
            row.omega_size.to_string(),
            row.probability.to_string(),
        ]);
        elements.push(row);
    }
    let prob_group = probability::prob_group(&c)?;
    let omega = probability::omega_global(&c)?;
    let omega_global = OmegaGlobal {
        size: omega.len(),
        elements: (omega.len() <= 64).then(|| omega.iter().map(|i| e.element(i).to_string()).collect()),
    };
    let identities = probability::verify_identities(&g)?;
    save_cache(common, &c)?;

    let report = AnalyzeReport {
        group: g.name(),
        order: g.order().to_string(),
        class: args.class.clone(),
        elements,
        prob_group,
        omega_global,
        identities: identities.clone(),
    };
    let mut env = Envelope::new("analyze", group_config(common, args), common.seed, report, table)?;
    for check in &identities.checks {
        env.fail_unless(check.pass, format!("{}: {}", identities.group, check.identity));
    }
    Ok(env)
}

#[derive(Serialize)]
struct GraphCommandReport {
    #[serde(flatten)]
    graph: GraphReport,
    /// Diameter bound checked for this class, if any.
    bound: Option<u32>,
    within_bound: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    compatibility: Option<CompatibilityReport>,
}

/// Soluble graphs must be connected with diameter at most 5; every component
/// of a nilpotent graph has diameter at most 10. Empty graphs pass.
fn graph_bound(class: &str, r: &GraphReport) -> (Option<u32>, bool) {
    match class {
        "soluble" | "solvable" => (Some(5), r.vertices == 0 || (r.connected && r.max_diameter <= 5)),
        "nilpotent" => (Some(10), r.max_diameter <= 10),
        _ => (None, true),
    }
}

pub fn graph(common: &Common, args: &GroupArgs, dot: Option<&Path>, compat: bool) -> anyhow::Result<Envelope> {
    let g = load_group(common, args)?;
    let class = GroupClass::from_name(&args.class)?;
    let c = classifier(common, &g, class)?;
    let gamma = graphs::build_graph(c)?;
    let report = gamma.components_and_diameters();
    save_cache(common, gamma.classifier())?;
    if let Some(path) = dot {
        std::fs::write(path, gamma.to_dot()?).with_context(|| format!("writing {}", path.display()))?;
    }
    let compatibility = if compat {
        Some(graphs::quotient_graph_compatibility(&g)?)
    } else {
        None
    };
    let (bound, within_bound) = graph_bound(&args.class, &report);
    let mut table = Table::new(&["component", "size", "diameter"]);
    for comp in &report.components {
        table.push(vec![
            e_label(&g, comp.label)?,
            comp.size.to_string(),
            comp.diameter.to_string(),
        ]);
    }
    let compatibility_ok = compatibility.as_ref().map_or(true, |c| c.passed);
    let out = GraphCommandReport {
        graph: report,
        bound,
        within_bound,
        compatibility,
    };
    let mut extra = group_config(common, args);
    extra["dot"] = json!(dot.map(|p| p.display().to_string()));
    extra["compatibility"] = json!(compat);
    let mut env = Envelope::new("graph", extra, common.seed, out, table)?;
    env.fail_unless(within_bound, format!("diameter bound for the {} graph", args.class));
    env.fail_unless(compatibility_ok, "quotient graph compatibility");
    Ok(env)
}

fn e_label(g: &FiniteGroup, i: usize) -> anyhow::Result<String> {
    Ok(g.element(i)?.to_string())
}

pub fn wreath(common: &Common, samples: usize) -> anyhow::Result<Envelope> {
    let report = wreath::verify(samples, common.seed)?;
    let mut table = Table::new(&["key", "value"]);
    let value = serde_json::to_value(&report)?;
    if let Value::Object(map) = &value {
        for (k, v) in map {
            let v = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            table.push(vec![k.clone(), v]);
        }
    }
    let passed = report.passed;
    let mut env = Envelope::new("wreath verify", config(common, json!({ "samples": samples })), common.seed, value, table)?;
    env.fail_unless(passed, "wreath level-1 verification");
    Ok(env)
}

pub fn tower_dihedral(common: &Common, prime: u64, levels: u32, class: &str, track: &str) -> anyhow::Result<Envelope> {
    let t = tower::dihedral_tower(prime, levels, common.cap)?;
    let c = GroupClass::from_name(class)?;
    let report = tower::analyze(&c, &t, track)?;
    let mut table = Table::new(&["level", "order", "probability"]);
    for (k, l) in report.levels.iter().enumerate() {
        table.push(vec![(k + 1).to_string(), l.order.clone(), l.probability.to_string()]);
    }
    let monotone = report.monotone;
    let shadows = report.levels.iter().all(|l| l.shadows_hold);
    let cfg = config(
        common,
        json!({ "builder": "dihedral", "prime": prime, "levels": levels, "class": class, "track": track }),
    );
    let mut env = Envelope::new("tower dihedral", cfg, common.seed, report, table)?;
    env.fail_unless(monotone, "probability sequence is non-increasing");
    env.fail_unless(shadows, "per-level radical and hypercenter shadows");
    Ok(env)
}

#[derive(Serialize)]
struct CatalogRow {
    name: String,
    order: u64,
    tags: catalog::Tags,
}

pub fn catalog_list(common: &Common) -> anyhow::Result<Envelope> {
    let mut table = Table::new(&["name", "order", "soluble", "nilpotent", "abelian", "simple"]);
    let mut rows = Vec::new();
    for e in catalog::entries() {
        table.push(vec![
            e.name.clone(),
            e.expected_order.to_string(),
            e.tags.soluble.to_string(),
            e.tags.nilpotent.to_string(),
            e.tags.abelian.to_string(),
            e.tags.simple.to_string(),
        ]);
        rows.push(CatalogRow {
            name: e.name.clone(),
            order: e.expected_order,
            tags: e.tags.clone(),
        });
    }
    Envelope::new("catalog-list", config(common, json!({})), common.seed, rows, table)
}

#[derive(Serialize)]
struct SelfCheck {
    name: String,
    passed: bool,
    detail: Value,
}

fn check(name: &str, f: impl FnOnce() -> anyhow::Result<(bool, Value)>) -> SelfCheck {
    match f() {
        Ok((passed, detail)) => SelfCheck {
            name: name.to_string(),
            passed,
            detail,
        },
        Err(e) => SelfCheck {
            name: name.to_string(),
            passed: false,
            detail: json!({ "error": format!("{e:#}") }),
        },
    }
}

fn p(degree: usize, s: &str) -> anyhow::Result<Permutation> {
    Ok(Permutation::parse(degree, s)?)
}

pub fn selftest(common: &Common) -> anyhow::Result<Envelope> {
    let seed = common.seed;
    let checks = vec![
        check("catalog orders and tags", || {
            let mut bad = Vec::new();
            for e in catalog::entries() {
                let g = e.load()?;
                let ok = g.is_soluble() == e.tags.soluble
                    && g.is_nilpotent() == e.tags.nilpotent
                    && g.is_abelian() == e.tags.abelian;
                if !ok {
                    bad.push(e.name.clone());
                }
            }
            Ok((bad.is_empty(), json!({ "entries": catalog::entries().len(), "mismatches": bad })))
        }),
        check("identities on catalog groups of order <= 60", || {
            let mut groups = Vec::new();
            let mut ok = true;
            for e in catalog::up_to_order(60) {
                let g = e.load()?.with_cap(common.cap);
                let r = probability::verify_identities(&g)?;
                let cent = probability::verify_centralizer_identity(&g)?;
                ok &= r.passed() && cent.is_empty();
                groups.push(json!({ "group": e.name, "passed": r.passed() && cent.is_empty() }));
            }
            Ok((ok, json!(groups)))
        }),
        check("prob_group(nilpotent, S3) = 1/2 by both methods", || {
            let g = catalog::load("S3")?;
            let c = Classifier::new(&g, GroupClass::nilpotent());
            let a = probability::prob_group_with(&c, probability::Method::Exhaustive)?;
            let b = probability::prob_group_with(&c, probability::Method::ClassReduced)?;
            let ok = a.probability == b.probability && a.probability == Rational::new(1, 2);
            Ok((ok, json!({ "exhaustive": a.probability, "class_reduced": b.probability })))
        }),
        check("soluble graph of A5", || {
            let g = catalog::load("A5")?;
            let r = graphs::build_class_graph(&g, GroupClass::soluble())?.components_and_diameters();
            Ok((r.vertices == 59 && r.connected && r.max_diameter <= 5, serde_json::to_value(&r)?))
        }),
        check("soluble graph of S4 is empty", || {
            let g = catalog::load("S4")?;
            let r = graphs::build_class_graph(&g, GroupClass::soluble())?.components_and_diameters();
            Ok((r.vertices == 0 && r.components.is_empty(), serde_json::to_value(&r)?))
        }),
        check("nilpotentizer bound on A4 over the Klein group", || {
            let g = catalog::load("A4")?;
            let klein = g.normal_closure(&[p(4, "(1,2)(3,4)")?])?;
            let u = p(4, "(1,2,3)")?;
            let r = probability::hall_bound_check(&g, &klein, &u, &u)?;
            Ok((r.holds, serde_json::to_value(&r)?))
        }),
        check("quotient monotonicity on S4 over the Klein group", || {
            let g = catalog::load("S4")?;
            let klein = g.normal_closure(&[p(4, "(1,2)(3,4)")?])?;
            let mut out = Vec::new();
            let mut ok = true;
            for class in GroupClass::builtins() {
                for x in ["(1,2)", "(1,2,3)", "(1,2,3,4)"] {
                    let r = probability::quotient_monotonicity_check(&class, &g, &klein, &p(4, x)?)?;
                    ok &= r.holds;
                    out.push(serde_json::to_value(&r)?);
                }
            }
            Ok((ok, json!(out)))
        }),
        check("quotient graph compatibility on C3xA5", || {
            let g = catalog::load("C3xA5")?;
            let r = graphs::quotient_graph_compatibility(&g)?;
            Ok((r.passed, serde_json::to_value(&r)?))
        }),
        check("wreath level 1", || {
            let r = wreath::verify(10, seed)?;
            Ok((r.passed, serde_json::to_value(&r)?))
        }),
        check("dihedral tower (3, 4), nilpotent, track x", || {
            let t = tower::dihedral_tower(3, 4, common.cap)?;
            let r = tower::analyze(&GroupClass::nilpotent(), &t, "x")?;
            let expect: Vec<Rational> = (1..=4).map(|k| Rational::new(1, 3i64.pow(k))).collect();
            let got: Vec<Rational> = r.levels.iter().map(|l| l.probability.clone()).collect();
            Ok((got == expect && r.passed(), serde_json::to_value(&r)?))
        }),
    ];
    let mut table = Table::new(&["check", "passed"]);
    for c in &checks {
        table.push(vec![c.name.clone(), c.passed.to_string()]);
    }
    let failures: Vec<String> = checks.iter().filter(|c| !c.passed).map(|c| c.name.clone()).collect();
    let mut env = Envelope::new("selftest", config(common, json!({})), seed, checks, table)?;
    for f in failures {
        env.fail_unless(false, f);
    }
    Ok(env)
}
