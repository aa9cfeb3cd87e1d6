//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Wherever a quantity can be computed by brute force over element
//! sets, the oracle here does so without going through the engine.

use std::collections::{BTreeSet, HashSet};
use std::process::{Command, ExitCode};
use std::time::Instant;

use profgen::probability::{self, Method};
use profgen::{catalog, graphs, tower, wreath, Classifier, ElementSet, FiniteGroup, GroupClass, Permutation, Rational};

type Set = HashSet<Permutation>;
type Outcome = Result<(bool, String), String>;

fn closure(gens: &[Permutation], degree: usize) -> Set {
    let id = Permutation::identity(degree);
    let mut seen: Set = HashSet::from([id.clone()]);
    let mut stack = vec![id];
    while let Some(x) = stack.pop() {
        for g in gens {
            let y = &x * g;
            if seen.insert(y.clone()) {
                stack.push(y);
            }
        }
    }
    seen
}

fn soluble(set: &Set, degree: usize) -> bool {
    let mut h = set.clone();
    while h.len() > 1 {
        let comms: BTreeSet<Permutation> = h
            .iter()
            .flat_map(|a| h.iter().map(move |b| Permutation::commutator(a, b)))
            .collect();
        let next = closure(&comms.into_iter().collect::<Vec<_>>(), degree);
        if next.len() == h.len() {
            return false;
        }
        h = next;
    }
    true
}

/// A finite group is nilpotent iff elements of coprime order commute.
fn nilpotent(set: &Set) -> bool {
    let els: Vec<&Permutation> = set.iter().collect();
    els.iter().all(|a| {
        let oa = a.order();
        els.iter().all(|b| num_integer::gcd(oa, b.order()) != 1 || a.commutes_with(b))
    })
}

fn in_class(class: &str, gens: &[Permutation], degree: usize) -> bool {
    let h = closure(gens, degree);
    match class {
        "abelian" => h.iter().all(|a| h.iter().all(|b| a.commutes_with(b))),
        "nilpotent" => nilpotent(&h),
        _ => soluble(&h, degree),
    }
}

fn brute_classes(els: &[Permutation]) -> Vec<BTreeSet<Permutation>> {
    let mut seen: HashSet<&Permutation> = HashSet::new();
    let mut out = Vec::new();
    for x in els {
        if seen.contains(x) {
            continue;
        }
        let class: BTreeSet<Permutation> = els.iter().map(|h| x.conjugate_by(h)).collect();
        for y in &class {
            seen.insert(els.iter().find(|e| *e == y).unwrap());
        }
        out.push(class);
    }
    out
}

/// Union of the classes whose normal closure is soluble.
fn radical_oracle(g: &FiniteGroup) -> BTreeSet<Permutation> {
    let els = g.elements().unwrap();
    brute_classes(els)
        .into_iter()
        .filter(|cl| soluble(&closure(&cl.iter().cloned().collect::<Vec<_>>(), g.degree()), g.degree()))
        .flatten()
        .collect()
}

fn hypercenter_oracle(g: &FiniteGroup) -> BTreeSet<Permutation> {
    let els = g.elements().unwrap();
    let mut z: BTreeSet<Permutation> = BTreeSet::from([g.identity()]);
    loop {
        let next: BTreeSet<Permutation> = els
            .iter()
            .filter(|x| els.iter().all(|h| z.contains(&Permutation::commutator(x, h))))
            .cloned()
            .collect();
        if next.len() == z.len() {
            return z;
        }
        z = next;
    }
}

fn center_oracle(g: &FiniteGroup) -> BTreeSet<Permutation> {
    let els = g.elements().unwrap();
    els.iter().filter(|x| els.iter().all(|h| x.commutes_with(h))).cloned().collect()
}

fn as_set(g: &FiniteGroup, s: &ElementSet) -> BTreeSet<Permutation> {
    s.iter().map(|i| g.element(i).unwrap().clone()).collect()
}

fn p(n: usize, s: &str) -> Permutation {
    Permutation::parse(n, s).unwrap()
}

fn e<E: std::fmt::Display>(err: E) -> String {
    err.to_string()
}

fn criterion_1() -> Outcome {
    let mut groups = 0;
    let mut bad = Vec::new();
    for entry in catalog::up_to_order(360) {
        let g = entry.load().map_err(e)?;
        let els = g.elements().map_err(e)?;
        let ab = Classifier::new(&g, GroupClass::abelian());
        for (i, x) in els.iter().enumerate() {
            let centralizer: BTreeSet<Permutation> = els.iter().filter(|h| h.commutes_with(x)).cloned().collect();
            if as_set(&g, &probability::omega_idx(&ab, i).map_err(e)?) != centralizer {
                bad.push(format!("{}: omega_A({x}) != C_G({x})", entry.name));
            }
        }
        let global = |class| probability::omega_global(&Classifier::new(&g, class)).map(|s| as_set(&g, &s));
        if global(GroupClass::abelian()).map_err(e)? != center_oracle(&g) {
            bad.push(format!("{}: omega_A(G) != Z(G)", entry.name));
        }
        if global(GroupClass::soluble()).map_err(e)? != radical_oracle(&g) {
            bad.push(format!("{}: omega_S(G) != R(G)", entry.name));
        }
        if global(GroupClass::nilpotent()).map_err(e)? != hypercenter_oracle(&g) {
            bad.push(format!("{}: omega_N(G) != Z_inf(G)", entry.name));
        }
        groups += 1;
    }
    Ok((bad.is_empty(), format!("{groups} groups of order <= 360 against set oracles; {}", summary(&bad))))
}

fn criterion_2() -> Outcome {
    let mut compared = 0;
    let mut bad = Vec::new();
    for entry in catalog::up_to_order(360) {
        let g = entry.load().map_err(e)?;
        let n = g.elements().map_err(e)?.len();
        for class in GroupClass::builtins() {
            let ex = probability::prob_group_with(&Classifier::new(&g, class.clone()), Method::Exhaustive).map_err(e)?;
            let cr = probability::prob_group_with(&Classifier::new(&g, class.clone()), Method::ClassReduced).map_err(e)?;
            if ex.probability != cr.probability {
                bad.push(format!("{} {}: {} vs {}", entry.name, class.name(), ex.probability, cr.probability));
            }
            if n <= 24 {
                let els = g.elements().map_err(e)?;
                let fav = els
                    .iter()
                    .flat_map(|x| els.iter().map(move |y| (x, y)))
                    .filter(|(x, y)| in_class(class.name(), &[(*x).clone(), (*y).clone()], g.degree()))
                    .count();
                if Rational::new(fav as u64, (n * n) as u64) != ex.probability {
                    bad.push(format!("{} {}: brute force disagrees", entry.name, class.name()));
                }
            }
            compared += 1;
        }
    }
    let s3 = catalog::load("S3").map_err(e)?;
    let s3_nil = probability::prob_group(&Classifier::new(&s3, GroupClass::nilpotent())).map_err(e)?.probability;
    if s3_nil != Rational::new(1, 2) {
        bad.push(format!("P_N(S3) = {s3_nil}, expected 1/2"));
    }
    Ok((bad.is_empty(), format!("{compared} (group, class) pairs, exhaustive = class-reduced; P_N(S3) = {s3_nil}; {}", summary(&bad))))
}

fn criterion_3() -> Outcome {
    let mut bad = Vec::new();
    let mut groups = 0;
    let mut elements = 0;
    for entry in catalog::entries() {
        let g = entry.load().map_err(e)?;
        let n = g.elements().map_err(e)?.len();
        let sol = probability::omega_global(&Classifier::new(&g, GroupClass::soluble())).map_err(e)?;
        let radical = probability::soluble_radical(&g).map_err(e)?;
        if n % radical.len() != 0 || sol.len() * (n / radical.len()) != n {
            bad.push(format!("{}: |omega_S| = {}, |R| = {}", entry.name, sol.len(), radical.len()));
        }
        groups += 1;
        if entry.expected_order > 360 {
            continue;
        }
        let floor = Rational::new(probability::hypercenter(&g).map_err(e)?.len() as u64, n as u64);
        let nil = Classifier::new(&g, GroupClass::nilpotent());
        for x in g.elements().map_err(e)? {
            let pr = probability::prob_elem(&nil, x).map_err(e)?.probability;
            if pr < floor {
                bad.push(format!("{}: P_N({x}) = {pr} < {floor}", entry.name));
            }
            elements += 1;
        }
    }
    Ok((bad.is_empty(), format!("|omega_S|.|G:R| = |G| on all {groups} groups; P_N floor on {elements} elements; {}", summary(&bad))))
}

/// Distinct normal subgroups other than 1 and G, as normal closures of classes.
fn proper_normal_subgroups(g: &FiniteGroup) -> Result<Vec<FiniteGroup>, String> {
    let n = g.elements().map_err(e)?.len();
    let mut seen: Vec<BTreeSet<Permutation>> = Vec::new();
    let mut out = Vec::new();
    for rep in g.conjugacy_classes().map_err(e)?.representatives() {
        let x = g.element(rep).map_err(e)?.clone();
        let normal = g.normal_closure(&[x]).map_err(e)?;
        let set: BTreeSet<Permutation> = normal.elements().map_err(e)?.iter().cloned().collect();
        if set.len() == 1 || set.len() == n || seen.contains(&set) {
            continue;
        }
        seen.push(set);
        out.push(normal);
    }
    Ok(out)
}

fn criterion_4() -> Outcome {
    let mut triples = 0;
    let mut checks = 0;
    let mut bad = Vec::new();
    for name in ["S3", "D8", "Q8", "A4", "S4", "D12", "SL23", "S3xC2", "D18", "Q8xS3", "C3xA5"] {
        let g = catalog::load(name).map_err(e)?;
        let reps: Vec<Permutation> = g
            .conjugacy_classes()
            .map_err(e)?
            .representatives()
            .map(|r| g.element(r).unwrap().clone())
            .collect();
        for normal in proper_normal_subgroups(&g)? {
            let quotient = g.quotient(&normal).map_err(e)?;
            let cosets = quotient.representatives();
            let xs = &cosets[..cosets.len().min(3)];
            let ys = &cosets[cosets.len().saturating_sub(2)..];
            for class in GroupClass::builtins() {
                for x in &reps {
                    let m = probability::quotient_monotonicity_check(&class, &g, &normal, x).map_err(e)?;
                    if !m.holds {
                        bad.push(format!("{name} {} {x}: {} < {}", class.name(), m.quotient, m.full));
                    }
                    checks += 1;
                }
                let c = Classifier::new(&g, class.clone());
                let part = probability::partition_identity_check(&c, &normal, xs, ys).map_err(e)?;
                if !part.holds {
                    bad.push(format!("{name} {} |N|={}: partition identity", class.name(), normal.order()));
                }
                checks += 1;
                triples += 1;
            }
        }
    }
    let ok = bad.is_empty() && triples >= 20;
    Ok((ok, format!("{triples} (G, N, class) triples, {checks} checks; {}", summary(&bad))))
}

/// Pairs `(a, b) ∈ Q × Q` with `⟨ua, vb⟩` nilpotent, counted by sets.
fn hall_oracle(q: &FiniteGroup, u: &Permutation, v: &Permutation) -> Rational {
    let els = q.elements().unwrap();
    let fav = els
        .iter()
        .flat_map(|a| els.iter().map(move |b| (a, b)))
        .filter(|(a, b)| nilpotent(&closure(&[u * *a, v * *b], u.degree())))
        .count();
    Rational::new(fav as u64, (els.len() * els.len()) as u64)
}

fn criterion_5() -> Outcome {
    struct Case {
        group: &'static str,
        q: &'static [&'static str],
        u: &'static str,
        v: &'static str,
        bound: (u64, u64),
    }
    let cases = [
        Case { group: "S4", q: &["(1,2)(3,4)"], u: "(1,2,3)", v: "(1,2,3)", bound: (1, 4) },
        Case { group: "S4", q: &["(1,2)(3,4)"], u: "(1,2,3)", v: "(1,3,2)", bound: (1, 4) },
        Case { group: "S4", q: &["(1,2)(3,4)"], u: "(1,2)", v: "(3,4)", bound: (1, 1) },
        Case { group: "S3", q: &["(1,2,3)"], u: "(1,2)", v: "(1,2)", bound: (1, 3) },
        Case { group: "D10", q: &[], u: "", v: "", bound: (1, 5) },
        Case { group: "D18", q: &[], u: "", v: "", bound: (1, 9) },
        Case { group: "SL23", q: &[], u: "", v: "", bound: (1, 4) },
    ];
    let mut lines = Vec::new();
    let mut bad = Vec::new();
    for case in &cases {
        let g = catalog::load(case.group).map_err(e)?;
        let d = g.degree();
        let (q, u, v) = if case.q.is_empty() {
            // Dihedral and SL(2,3) cases: Q is the normal subgroup generated by
            // the commutators, u = v is an element outside it of prime order.
            let q = g.derived_subgroup();
            let want_odd = case.group == "SL23";
            let outside = g
                .elements()
                .map_err(e)?
                .iter()
                .find(|x| !q.contains(x).unwrap() && (x.order() % 2 == 1) == want_odd)
                .unwrap()
                .clone();
            (q, outside.clone(), outside)
        } else {
            let gens: Vec<Permutation> = case.q.iter().map(|s| p(d, s)).collect();
            (g.normal_closure(&gens).map_err(e)?, p(d, case.u), p(d, case.v))
        };
        let r = probability::hall_bound_check(&g, &q, &u, &v).map_err(e)?;
        let brute = hall_oracle(&q, &u, &v);
        let expect_ok = r.bound == Rational::new(case.bound.0, case.bound.1);
        if !r.holds || brute != r.probability || !expect_ok {
            bad.push(format!("{} u={u} v={v}: P = {} (brute {brute}) bound {}", case.group, r.probability, r.bound));
        }
        lines.push(format!("{}[|Q|={} u={u}] {} <= {}", case.group, r.q_order, r.probability, r.bound));
    }
    let ok = bad.is_empty() && cases.len() >= 6;
    Ok((ok, format!("{}; {}", lines.join(", "), summary(&bad))))
}

fn criterion_6() -> Outcome {
    let mut lines = Vec::new();
    let mut bad = Vec::new();
    for name in ["A5", "S5", "PSL27", "A6", "S6"] {
        let g = catalog::load(name).map_err(e)?;
        let sol = graphs::build_class_graph(&g, GroupClass::soluble()).map_err(e)?.components_and_diameters();
        let nil = graphs::build_class_graph(&g, GroupClass::nilpotent()).map_err(e)?.components_and_diameters();
        if !sol.connected || sol.max_diameter > 5 {
            bad.push(format!("{name}: soluble graph connected={} diameter={}", sol.connected, sol.max_diameter));
        }
        if nil.components.iter().any(|c| c.diameter > 10) {
            bad.push(format!("{name}: nilpotent component diameter {}", nil.max_diameter));
        }
        lines.push(format!("{name} S-diam {} N-max {}", sol.max_diameter, nil.max_diameter));
    }
    let g = catalog::load("C3xA5").map_err(e)?;
    let compat = graphs::quotient_graph_compatibility(&g).map_err(e)?;
    if !compat.passed {
        bad.push(format!("C3xA5 compatibility: {} mismatches", compat.mismatches));
    }
    lines.push(format!("C3xA5 vs quotient {} pairs", compat.pairs_checked));
    Ok((bad.is_empty(), format!("{}; {}", lines.join(", "), summary(&bad))))
}

fn criterion_7() -> Outcome {
    let mut groups = 0;
    let mut reps = 0;
    let mut bad = Vec::new();
    for entry in catalog::entries().iter().filter(|en| !en.tags.soluble) {
        let g = entry.load().map_err(e)?;
        for check in graphs::solubilizer_checks(&g).map_err(e)? {
            if !check.proper || !check.noncommuting {
                bad.push(format!("{} {}: proper={} noncommuting={}", entry.name, check.representative, check.proper, check.noncommuting));
            }
            reps += 1;
        }
        groups += 1;
    }
    let ok = bad.is_empty() && groups > 0;
    Ok((ok, format!("{groups} insoluble groups, {reps} class representatives; {}", summary(&bad))))
}

fn criterion_8() -> Outcome {
    let r = wreath::verify(100, 0).map_err(e)?;
    let ok = r.passed
        && r.alpha_beta_passed == r.alpha_beta_checks
        && r.containment_failures.is_empty()
        && r.containment_ok
        && r.transversals_tested >= 3
        && r.h_pattern_ok
        && (r.order_g1, r.order_h1) == (45, 15);
    Ok((
        ok,
        format!(
            "alpha/beta {}/{}, {} sampled checks over {} transversals, |g_1| = {}, |h_1| = {}",
            r.alpha_beta_passed, r.alpha_beta_checks, r.sampled_checks, r.transversals_tested, r.order_g1, r.order_h1
        ),
    ))
}

fn criterion_9() -> Outcome {
    let t = tower::dihedral_tower(3, 6, profgen::group::DEFAULT_CAP).map_err(e)?;
    let nil = tower::analyze(&GroupClass::nilpotent(), &t, "x").map_err(e)?;
    let want: Vec<Rational> = (1..=6).map(|n| Rational::new(1, 3u64.pow(n))).collect();
    let got: Vec<Rational> = nil.levels.iter().map(|l| l.probability.clone()).collect();
    let sol = tower::analyze(&GroupClass::soluble(), &t, "x").map_err(e)?;
    let ok = got == want
        && nil.strictly_decreasing
        && nil.verdict.contains("not 𝔑-positive along track")
        && nil.levels.iter().all(|l| l.shadows_hold)
        && sol.levels.iter().all(|l| l.probability == Rational::one())
        && sol.verdict.contains("virtually prosoluble");
    let shown: Vec<String> = got.iter().map(|r| r.to_string()).collect();
    Ok((ok, format!("nilpotent [{}] ({}); soluble constant 1 ({})", shown.join(", "), nil.verdict, sol.verdict)))
}

fn criterion_10() -> Outcome {
    let run = |workers: &str| {
        Command::new(env!("CARGO_BIN_EXE_profgen"))
            .args(["selftest", "--seed", "7", "--workers", workers])
            .output()
            .map_err(e)
    };
    let one = run("1")?;
    let many = run("4")?;
    let ok = one.status.success() && many.status.success() && one.stdout == many.stdout && !one.stdout.is_empty();
    Ok((ok, format!("selftest with 1 and 4 workers: {} bytes each, identical = {}", one.stdout.len(), one.stdout == many.stdout)))
}

fn summary(bad: &[String]) -> String {
    match bad {
        [] => "no failures".to_string(),
        _ => format!("{} failures, first: {}", bad.len(), bad[0]),
    }
}

fn main() -> ExitCode {
    let criteria: [(u32, fn() -> Outcome); 10] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
        (9, criterion_9),
        (10, criterion_10),
    ];
    let mut failed = 0;
    for (n, run) in criteria {
        let start = Instant::now();
        let (ok, detail) = match run() {
            Ok(r) => r,
            Err(msg) => (false, format!("error: {msg}")),
        };
        failed += !ok as u32;
        let verdict = if ok { "PASS" } else { "FAIL" };
        println!("criterion {n}: {verdict} ({:.1}s) {detail}", start.elapsed().as_secs_f64());
    }
    println!("acceptance: {} of 10 criteria passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
