//! Finite-quotient towers `… → G_{n+1} → G_n → … → G_1`, standing in for
//! profinite groups.
//!
//! Each projection is given by generator images and verified: the graph
//! `⟨(s, φ(s))⟩` inside `G_{n+1} × G_n` has order `|G_{n+1}|` exactly when
//! `φ` extends to a homomorphism, and the images must generate `G_n`.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::classc::{Classifier, GroupClass};
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::perm::Permutation;
use crate::probability::{hypercenter, omega_global, prob_elem, soluble_radical};
use crate::rational::Rational;

/// Surjection `G_{n+1} → G_n` by generator images.
#[derive(Clone, Debug)]
pub struct Projection {
    pub sources: Vec<Permutation>,
    pub images: Vec<Permutation>,
    graph: FiniteGroup,
}

impl Projection {
    fn new(upper: &FiniteGroup, lower: &FiniteGroup, sources: Vec<Permutation>, images: Vec<Permutation>) -> Result<Self> {
        let (du, dl) = (upper.degree(), lower.degree());
        let gens: Vec<Permutation> = sources
            .iter()
            .zip(&images)
            .map(|(s, i)| &s.shifted(0, du + dl) * &i.shifted(du, du + dl))
            .collect();
        let graph = FiniteGroup::from_generators(du + dl, gens)?;
        if upper.subgroup(&sources)?.order() != upper.order() {
            return Err(Error::Precondition("projection sources do not generate the upper level".into()));
        }
        if graph.order() != upper.order() {
            return Err(Error::Precondition("generator images do not define a homomorphism".into()));
        }
        if lower.subgroup(&images)?.order() != lower.order() {
            return Err(Error::Precondition("projection is not surjective".into()));
        }
        Ok(Projection { sources, images, graph })
    }

    /// Whether `upper ↦ lower` under this projection.
    pub fn maps(&self, upper: &Permutation, lower: &Permutation) -> bool {
        let du = upper.degree();
        let total = self.graph.degree();
        let pair = &upper.shifted(0, total) * &lower.shifted(du, total);
        self.graph.chain().contains(&pair)
    }
}

/// Levels `G_1, …, G_n` (index 0 is `G_1`) with verified projections and named
/// element tracks commuting with them.
#[derive(Clone, Debug)]
pub struct QuotientTower {
    pub name: String,
    levels: Vec<FiniteGroup>,
    /// `projections[k]` maps `levels[k + 1]` onto `levels[k]`.
    projections: Vec<Projection>,
    tracks: BTreeMap<String, Vec<Permutation>>,
}

impl QuotientTower {
    /// Assembles a tower, verifying every projection and track.
    pub fn new(
        name: impl Into<String>,
        levels: Vec<FiniteGroup>,
        maps: Vec<(Vec<Permutation>, Vec<Permutation>)>,
        tracks: BTreeMap<String, Vec<Permutation>>,
    ) -> Result<Self> {
        if levels.is_empty() || maps.len() + 1 != levels.len() {
            return Err(Error::Precondition("need one projection between consecutive levels".into()));
        }
        let projections = maps
            .into_iter()
            .enumerate()
            .map(|(k, (src, img))| Projection::new(&levels[k + 1], &levels[k], src, img))
            .collect::<Result<Vec<_>>>()?;
        for (name, xs) in &tracks {
            if xs.len() != levels.len() {
                return Err(Error::Precondition(format!("track {name} has the wrong length")));
            }
            for (k, x) in xs.iter().enumerate() {
                levels[k].require_member(x)?;
                if k > 0 && !projections[k - 1].maps(x, &xs[k - 1]) {
                    return Err(Error::Precondition(format!("track {name} does not commute with projection {k}")));
                }
            }
        }
        Ok(QuotientTower {
            name: name.into(),
            levels,
            projections,
            tracks,
        })
    }

    pub fn levels(&self) -> &[FiniteGroup] {
        &self.levels
    }

    pub fn projections(&self) -> &[Projection] {
        &self.projections
    }

    pub fn track(&self, name: &str) -> Result<&[Permutation]> {
        self.tracks
            .get(name)
            .map(Vec::as_slice)
            .ok_or_else(|| Error::Precondition(format!("no track named {name}")))
    }

    pub fn track_names(&self) -> impl Iterator<Item = &str> {
        self.tracks.keys().map(String::as_str)
    }
}

fn is_odd_prime(p: u64) -> bool {
    p > 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Dihedral groups of order `2 p^n`, `n = 1..=n_max`, acting on `Z/p^n` with
/// rotation `r: i ↦ i + 1` and inversion `x: i ↦ -i`; tracks `"r"` and `"x"`.
pub fn dihedral_tower(p: u64, n_max: u32, cap: usize) -> Result<QuotientTower> {
    if !is_odd_prime(p) {
        return Err(Error::Precondition(format!("{p} is not an odd prime")));
    }
    if n_max == 0 {
        return Err(Error::Precondition("a tower needs at least one level".into()));
    }
    let top = p
        .checked_pow(n_max)
        .and_then(|m| m.checked_mul(2))
        .filter(|&o| o <= cap as u64)
        .ok_or_else(|| Error::CapExceeded {
            cap: "materialization",
            needed: format!("2*{p}^{n_max}"),
            limit: cap.to_string(),
        })?;
    debug_assert!(top <= cap as u64);
    let mut levels = Vec::new();
    let mut rs = Vec::new();
    let mut xs = Vec::new();
    for n in 1..=n_max {
        let m = p.pow(n) as usize;
        let r = Permutation::from_images((0..m).map(|i| (i + 1) % m).collect())?;
        let x = Permutation::from_images((0..m).map(|i| (m - i) % m).collect())?;
        let g = FiniteGroup::from_generators(m, vec![r.clone(), x.clone()])?
            .with_cap(cap)
            .with_name(format!("D{}", 2 * m));
        levels.push(g);
        rs.push(r);
        xs.push(x);
    }
    let maps = (0..levels.len() - 1)
        .map(|k| (vec![rs[k + 1].clone(), xs[k + 1].clone()], vec![rs[k].clone(), xs[k].clone()]))
        .collect();
    let tracks = BTreeMap::from([("r".to_string(), rs), ("x".to_string(), xs)]);
    QuotientTower::new(format!("dihedral({p},{n_max})"), levels, maps, tracks)
}

/// `G` repeated `n` times with identity projections; one track per generator,
/// named `g1`, `g2`, ….
pub fn constant_tower(g: &FiniteGroup, n: usize) -> Result<QuotientTower> {
    if n == 0 {
        return Err(Error::Precondition("a tower needs at least one level".into()));
    }
    let levels = vec![g.clone(); n];
    let gens = g.generators().to_vec();
    let maps = (1..n).map(|_| (gens.clone(), gens.clone())).collect();
    let tracks = gens
        .iter()
        .enumerate()
        .map(|(i, s)| (format!("g{}", i + 1), vec![s.clone(); n]))
        .collect();
    QuotientTower::new(format!("constant({})", g.name()), levels, maps, tracks)
}

/// `[P_C(x_n, G_n)]` along a track, levels computed concurrently.
pub fn prob_sequence(class: &GroupClass, tower: &QuotientTower, track: &str) -> Result<Vec<Rational>> {
    let xs = tower.track(track)?;
    tower
        .levels
        .par_iter()
        .zip(xs)
        .map(|(g, x)| Ok(prob_elem(&Classifier::new(g, class.clone()), x)?.probability))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonotonicityReport {
    pub values: Vec<Rational>,
    pub monotone: bool,
    pub strictly_decreasing: bool,
    /// Level pairs `(k, k + 1)` (1-based) where the value went up.
    pub violations: Vec<(usize, usize)>,
    /// The last value; a non-increasing sequence bounds its infimum by it.
    pub inf_upper_bound: Rational,
}

pub fn monotonicity(values: Vec<Rational>) -> MonotonicityReport {
    let violations: Vec<(usize, usize)> = values
        .windows(2)
        .enumerate()
        .filter(|(_, w)| w[1] > w[0])
        .map(|(k, _)| (k + 1, k + 2))
        .collect();
    MonotonicityReport {
        monotone: violations.is_empty(),
        strictly_decreasing: values.windows(2).all(|w| w[1] < w[0]),
        inf_upper_bound: values.last().cloned().unwrap_or_else(Rational::one),
        violations,
        values,
    }
}

pub fn monotonicity_report(class: &GroupClass, tower: &QuotientTower, track: &str) -> Result<MonotonicityReport> {
    Ok(monotonicity(prob_sequence(class, tower, track)?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PositivityVerdict {
    /// The subgroup whose index is tracked: center, hypercenter or soluble radical.
    pub subgroup: &'static str,
    pub indices: Vec<u64>,
    pub bounded: bool,
    pub verdict: String,
}

fn class_symbol(class: &GroupClass) -> &str {
    match class.name() {
        "abelian" => "𝔄",
        "nilpotent" => "𝔑",
        "soluble" => "𝔖",
        other => other,
    }
}

/// Reads the index of the class's canonical normal subgroup along the tower.
/// A stable index (the last two levels agree, or a single level) is the
/// finite pattern of a bounded-positive group; strictly growing indices with
/// strictly falling probabilities along the track report failure of
/// positivity along that track. Anything else is undetermined.
pub fn positivity_verdict(class: &GroupClass, tower: &QuotientTower, track: &str) -> Result<PositivityVerdict> {
    let mono = monotonicity_report(class, tower, track)?;
    verdict_from(class, tower, track, &mono)
}

fn verdict_from(
    class: &GroupClass,
    tower: &QuotientTower,
    track: &str,
    mono: &MonotonicityReport,
) -> Result<PositivityVerdict> {
    let (subgroup, positive) = match class.name() {
        "abelian" => ("center", "virtually abelian"),
        "nilpotent" => ("hypercenter", "finite-by-pronilpotent"),
        "soluble" => ("soluble radical", "virtually prosoluble"),
        other => return Err(Error::UnknownClass(other.to_string())),
    };
    let indices: Vec<u64> = tower
        .levels
        .par_iter()
        .map(|g| {
            let sub = match class.name() {
                "abelian" => g.center()?,
                "nilpotent" => hypercenter(g)?,
                _ => soluble_radical(g)?,
            };
            let order = g.order().to_u64().expect("materialized order fits");
            Ok(order / sub.len() as u64)
        })
        .collect::<Result<_>>()?;
    let bounded = indices.len() == 1 || indices[indices.len() - 1] == indices[indices.len() - 2];
    let verdict = if bounded {
        positive.to_string()
    } else if indices.windows(2).all(|w| w[1] > w[0]) && mono.strictly_decreasing {
        format!("not {}-positive along track \"{track}\"", class_symbol(class))
    } else {
        "undetermined".to_string()
    };
    Ok(PositivityVerdict {
        subgroup,
        indices,
        bounded,
        verdict,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelReport {
    pub order: String,
    pub probability: Rational,
    /// `|Ω_S(G_n)| = |R(G_n)|` and `P_N(x_n, G_n) ≥ |Z_∞(G_n)| / |G_n|`.
    pub shadows_hold: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TowerReport {
    pub tower: String,
    pub class: String,
    pub track: String,
    pub levels: Vec<LevelReport>,
    pub monotone: bool,
    pub strictly_decreasing: bool,
    pub inf_upper_bound: Rational,
    pub verdict: String,
    pub indices: Vec<u64>,
}

impl TowerReport {
    pub fn passed(&self) -> bool {
        self.monotone && self.levels.iter().all(|l| l.shadows_hold)
    }
}

fn level_shadows(g: &FiniteGroup, x: &Permutation, nil: Option<&Rational>) -> Result<bool> {
    let soluble = Classifier::new(g, GroupClass::soluble());
    let radical_ok = omega_global(&soluble)? == soluble_radical(g)?;
    let n = g.enumeration()?.len() as u64;
    let nil = match nil {
        Some(p) => p.clone(),
        None => prob_elem(&Classifier::new(g, GroupClass::nilpotent()), x)?.probability,
    };
    let z = Rational::new(hypercenter(g)?.len() as u64, n);
    Ok(radical_ok && nil >= z)
}

/// Sequence, monotonicity, per-level shadow checks and verdict for one track.
pub fn analyze(class: &GroupClass, tower: &QuotientTower, track: &str) -> Result<TowerReport> {
    let mono = monotonicity_report(class, tower, track)?;
    let xs = tower.track(track)?;
    let known = class.name() == "nilpotent";
    let shadows: Vec<bool> = tower
        .levels
        .par_iter()
        .zip(xs)
        .zip(&mono.values)
        .map(|((g, x), p)| level_shadows(g, x, known.then_some(p)))
        .collect::<Result<_>>()?;
    let verdict = verdict_from(class, tower, track, &mono)?;
    let levels = tower
        .levels
        .iter()
        .zip(&mono.values)
        .zip(shadows)
        .map(|((g, p), ok)| LevelReport {
            order: g.order().to_string(),
            probability: p.clone(),
            shadows_hold: ok,
        })
        .collect();
    Ok(TowerReport {
        tower: tower.name.clone(),
        class: class.name().to_string(),
        track: track.to_string(),
        levels,
        monotone: mono.monotone,
        strictly_decreasing: mono.strictly_decreasing,
        inf_upper_bound: mono.inf_upper_bound,
        verdict: verdict.verdict,
        indices: verdict.indices,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::group::DEFAULT_CAP;

    fn powers(p: i64, n: u32) -> Vec<Rational> {
        (1..=n).map(|k| Rational::new(1, p.pow(k))).collect()
    }

    #[test]
    fn dihedral_levels() {
        let t = dihedral_tower(3, 3, DEFAULT_CAP).unwrap();
        let orders: Vec<String> = t.levels().iter().map(|g| g.order().to_string()).collect();
        assert_eq!(orders, ["6", "18", "54"]);
        let r = t.track("r").unwrap();
        assert_eq!(r[1].order(), 9);
        assert!(t.projections()[0].maps(&r[1], &r[0]));
        assert!(!t.projections()[0].maps(&r[1], &r[0].pow(2)));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(dihedral_tower(4, 2, DEFAULT_CAP).is_err());
        assert!(matches!(dihedral_tower(3, 12, 1000), Err(Error::CapExceeded { .. })));
        // r_2 ↦ r_1, x ↦ r_1 is not a homomorphism
        let t = dihedral_tower(3, 2, DEFAULT_CAP).unwrap();
        let (r, x) = (t.track("r").unwrap(), t.track("x").unwrap());
        let bad = QuotientTower::new(
            "bad",
            t.levels().to_vec(),
            vec![(vec![r[1].clone(), x[1].clone()], vec![r[0].clone(), r[0].clone()])],
            BTreeMap::new(),
        );
        assert!(bad.is_err());
    }

    #[test]
    fn nilpotent_sequence_decreases() {
        let t = dihedral_tower(3, 4, DEFAULT_CAP).unwrap();
        let m = monotonicity_report(&GroupClass::nilpotent(), &t, "x").unwrap();
        assert_eq!(m.values, powers(3, 4));
        assert!(m.monotone && m.strictly_decreasing);
        assert_eq!(m.inf_upper_bound, Rational::new(1, 81));
        let a = prob_sequence(&GroupClass::abelian(), &t, "x").unwrap();
        assert_eq!(a, powers(3, 4));
        let s = prob_sequence(&GroupClass::soluble(), &t, "x").unwrap();
        assert!(s.iter().all(|v| *v == Rational::one()));
    }

    #[test]
    fn verdicts() {
        let t = dihedral_tower(3, 4, DEFAULT_CAP).unwrap();
        let v = positivity_verdict(&GroupClass::soluble(), &t, "x").unwrap();
        assert_eq!(v.verdict, "virtually prosoluble");
        let v = positivity_verdict(&GroupClass::nilpotent(), &t, "x").unwrap();
        assert_eq!(v.indices, vec![6, 18, 54, 162]);
        assert_eq!(v.verdict, "not 𝔑-positive along track \"x\"");

        let q8 = catalog::load("Q8").unwrap();
        let c = constant_tower(&q8, 3).unwrap();
        let v = positivity_verdict(&GroupClass::nilpotent(), &c, "g1").unwrap();
        assert_eq!((v.indices.clone(), v.verdict.as_str()), (vec![1, 1, 1], "finite-by-pronilpotent"));
        let single = monotonicity_report(&GroupClass::nilpotent(), &constant_tower(&q8, 1).unwrap(), "g1").unwrap();
        assert!(single.monotone);
    }

    #[test]
    fn report_shadows() {
        let t = dihedral_tower(5, 2, DEFAULT_CAP).unwrap();
        let r = analyze(&GroupClass::nilpotent(), &t, "x").unwrap();
        assert!(r.passed());
        let json = serde_json::to_value(&r).unwrap();
        assert_eq!(json["levels"][1]["probability"], serde_json::json!({"num": 1, "den": 25}));
    }
}
