//! Explicit arithmetic in `G_1 = Alt(5) wr G_0` with `G_0 = Alt(5)` acting
//! regularly on itself, and checks of the finite steps that make
//! `Ω_S(g_1, G_1) ⊆ M_1⟨g_0⟩`.
//!
//! An element is a pair `(f, a)` with base `f: G_0 → Alt(5)` and top
//! `a ∈ G_0`. It acts on `G_0 × {1..5}` by `(x, i) ↦ (x a, i^{f(x)})`, which
//! gives the product
//!
//! ```text
//! (f, a)(f', b) = (x ↦ f(x) f'(x a), a b)
//! ```
//!
//! and for a base element `w` and top `z`, `(w^z)(x) = w(x z⁻¹)`.
//!
//! Level 2 has base length `60^61`, so only level 1 is built explicitly.

use std::collections::HashSet;

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::catalog;
use crate::classc::{Classifier, GroupClass};
use crate::error::{Error, Result};
use crate::group::{ElementSet, FiniteGroup};
use crate::perm::Permutation;
use crate::probability::omega;

/// The 3-cycle `α = (1,2,3)`, also `g_0`.
pub fn alpha() -> Permutation {
    Permutation::parse(5, "(1,2,3)").expect("valid cycle")
}

/// The 5-cycle `β = (1,2,3,4,5)`.
pub fn beta() -> Permutation {
    Permutation::parse(5, "(1,2,3,4,5)").expect("valid cycle")
}

fn alt5() -> FiniteGroup {
    catalog::load("A5").expect("catalog has A5")
}

/// `Alt(5) wr G_t` with base coordinates indexed by the canonical
/// enumeration of the top group.
#[derive(Debug)]
pub struct WreathLevel {
    top: FiniteGroup,
    bottom: FiniteGroup,
    g_t: Permutation,
    /// `right[a][i]` is the index of `element(i) · element(a)`.
    right: Vec<Vec<u32>>,
}

impl WreathLevel {
    /// Level 0 → 1: `G_0 = Alt(5)`, `g_0 = α`.
    pub fn level_one() -> Self {
        WreathLevel::new(alt5(), alpha()).expect("α lies in Alt(5)")
    }

    pub fn new(top: FiniteGroup, g_t: Permutation) -> Result<Self> {
        top.require_member(&g_t)?;
        let e = top.enumeration()?;
        let n = e.len();
        let right = (0..n)
            .map(|a| {
                (0..n)
                    .map(|i| e.index_of(&(e.element(i) * e.element(a))).expect("closed") as u32)
                    .collect()
            })
            .collect();
        Ok(WreathLevel {
            bottom: alt5(),
            top,
            g_t,
            right,
        })
    }

    pub fn top(&self) -> &FiniteGroup {
        &self.top
    }

    pub fn bottom(&self) -> &FiniteGroup {
        &self.bottom
    }

    pub fn g_t(&self) -> &Permutation {
        &self.g_t
    }

    /// Number of base coordinates, `|G_t|`.
    pub fn base_len(&self) -> usize {
        self.right.len()
    }

    /// Elements of the top group in coordinate order; entry 0 is the identity.
    pub fn index(&self) -> &[Permutation] {
        self.top.elements().expect("top is materialized")
    }

    fn idx(&self, x: &Permutation) -> Result<usize> {
        self.top.index_of(x)
    }

    /// `|G_{t+1}| = |G_t| · 60^{|G_t|}`.
    pub fn group_order(&self) -> BigUint {
        let n = self.base_len();
        BigUint::from(n) * BigUint::from(60u32).pow(n as u32)
    }

    pub fn identity(&self) -> WreathElement {
        WreathElement {
            base: vec![Permutation::identity(5); self.base_len()],
            top: self.top.identity(),
        }
    }

    /// The top element `z` as `(1, z)`.
    pub fn embed_top(&self, z: &Permutation) -> Result<WreathElement> {
        self.top.require_member(z)?;
        Ok(WreathElement {
            base: vec![Permutation::identity(5); self.base_len()],
            top: z.clone(),
        })
    }

    /// A socle element from its coordinates.
    pub fn socle_element(&self, base: Vec<Permutation>) -> Result<WreathElement> {
        let w = WreathElement {
            base,
            top: self.top.identity(),
        };
        self.validate(&w)?;
        Ok(w)
    }

    pub fn validate(&self, w: &WreathElement) -> Result<()> {
        if w.base.len() != self.base_len() {
            return Err(Error::Precondition(format!(
                "base has {} coordinates, expected {}",
                w.base.len(),
                self.base_len()
            )));
        }
        for y in &w.base {
            if y.degree() != 5 || !y.is_even() {
                return Err(Error::NotInGroup(format!("coordinate {y} is not in Alt(5)")));
            }
        }
        self.top.require_member(&w.top)
    }

    pub fn multiply(&self, a: &WreathElement, b: &WreathElement) -> WreathElement {
        let shift = &self.right[self.idx(&a.top).expect("top element")];
        let base = a
            .base
            .iter()
            .enumerate()
            .map(|(x, f)| f * &b.base[shift[x] as usize])
            .collect();
        WreathElement {
            base,
            top: &a.top * &b.top,
        }
    }

    pub fn inverse(&self, a: &WreathElement) -> WreathElement {
        // (f, a)⁻¹ = (x ↦ f(x a⁻¹)⁻¹, a⁻¹)
        let ai = a.top.inverse();
        let shift = &self.right[self.idx(&ai).expect("top element")];
        let base = (0..self.base_len()).map(|x| a.base[shift[x] as usize].inverse()).collect();
        WreathElement { base, top: ai }
    }

    pub fn pow(&self, a: &WreathElement, k: u64) -> WreathElement {
        let mut result = self.identity();
        let mut base = a.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = self.multiply(&result, &base);
            }
            base = self.multiply(&base, &base);
            k >>= 1;
        }
        result
    }

    /// `b⁻¹ a b`.
    pub fn conjugate(&self, a: &WreathElement, b: &WreathElement) -> WreathElement {
        self.multiply(&self.multiply(&self.inverse(b), a), b)
    }

    /// Order: with `k = |top|`, `a^k` lies in the socle.
    pub fn order(&self, a: &WreathElement) -> u64 {
        let k = a.top.order();
        let ak = self.pow(a, k);
        let base_order = ak.base.iter().fold(1u64, |acc, y| num_integer::lcm(acc, y.order()));
        k * base_order
    }

    /// `π_x(w)`: the coordinate of a socle element at `x`.
    pub fn projection(&self, w: &WreathElement, x: &Permutation) -> Result<Permutation> {
        if !w.top.is_identity() {
            return Err(Error::NotSocle(w.top.to_string()));
        }
        Ok(w.base[self.idx(x)?].clone())
    }

    /// Indices of the cyclic subgroup `⟨g_t⟩`.
    pub fn cyclic_indices(&self) -> Vec<usize> {
        (0..self.g_t.order()).map(|k| self.idx(&self.g_t.pow(k)).expect("member")).collect()
    }

    /// Index of each element's left coset `x⟨g_t⟩`, numbered by first appearance.
    fn coset_ids(&self) -> Vec<usize> {
        let n = self.base_len();
        let powers: Vec<usize> = self.cyclic_indices();
        let mut id = vec![usize::MAX; n];
        let mut next = 0;
        for x in 0..n {
            if id[x] != usize::MAX {
                continue;
            }
            for &p in &powers {
                id[self.right[p][x] as usize] = next;
            }
            next += 1;
        }
        id
    }

    /// Greedy sweep in enumeration order: the first element of each left coset.
    pub fn canonical_transversal(&self) -> Transversal {
        self.pick_transversal(|members| members[0])
    }

    /// The last element of each left coset, except `1` for `⟨g_t⟩` itself.
    pub fn last_transversal(&self) -> Transversal {
        self.pick_transversal(|members| if members[0] == 0 { 0 } else { *members.last().unwrap() })
    }

    /// A seeded random element of each left coset, except `1` for `⟨g_t⟩`.
    pub fn random_transversal(&self, seed: u64) -> Transversal {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.pick_transversal(|members| {
            if members[0] == 0 {
                0
            } else {
                members[rng.gen_range(0..members.len())]
            }
        })
    }

    fn pick_transversal(&self, mut pick: impl FnMut(&[usize]) -> usize) -> Transversal {
        let ids = self.coset_ids();
        let cosets = ids.iter().max().map_or(0, |m| m + 1);
        let mut members = vec![Vec::new(); cosets];
        for (x, &c) in ids.iter().enumerate() {
            members[c].push(x);
        }
        let e = self.index();
        Transversal {
            representatives: members.iter().map(|m| e[pick(m)].clone()).collect(),
        }
    }

    /// Checks one representative per left coset of `⟨g_t⟩` and `1 ∈ T`.
    pub fn validate_transversal(&self, t: &Transversal) -> Result<()> {
        let ids = self.coset_ids();
        let cosets = ids.iter().max().map_or(0, |m| m + 1);
        if t.representatives.len() != cosets {
            return Err(Error::InvalidTransversal(format!(
                "{} representatives for {cosets} cosets",
                t.representatives.len()
            )));
        }
        let mut seen = HashSet::new();
        let mut has_identity = false;
        for r in &t.representatives {
            let i = self
                .idx(r)
                .map_err(|_| Error::InvalidTransversal(format!("{r} is not in the top group")))?;
            has_identity |= i == 0;
            if !seen.insert(ids[i]) {
                return Err(Error::InvalidTransversal(format!("{r} repeats a coset")));
            }
        }
        if has_identity {
            Ok(())
        } else {
            Err(Error::InvalidTransversal("identity missing".into()))
        }
    }

    /// `m_{t+1}`: `α` at `1`, `β` on `T ∖ {1}`, identity off `T`.
    pub fn build_m(&self, t: &Transversal) -> Result<WreathElement> {
        self.validate_transversal(t)?;
        let mut base = vec![Permutation::identity(5); self.base_len()];
        for r in &t.representatives {
            let i = self.idx(r)?;
            base[i] = if i == 0 { alpha() } else { beta() };
        }
        self.socle_element(base)
    }

    /// `g_{t+1} = m_{t+1} g_t`.
    pub fn build_g(&self, t: &Transversal) -> Result<WreathElement> {
        Ok(self.multiply(&self.build_m(t)?, &self.embed_top(&self.g_t)?))
    }

    /// `h_{t+1} = g_{t+1}^{|g_t|}`, which must lie in the socle.
    pub fn compute_h(&self, g: &WreathElement) -> Result<WreathElement> {
        let h = self.pow(g, self.g_t.order());
        if !h.top.is_identity() {
            return Err(Error::NotSocle(h.top.to_string()));
        }
        Ok(h)
    }

    /// `h` has `α` on `⟨g_t⟩` and `β` off it.
    pub fn h_pattern_ok(&self, h: &WreathElement) -> bool {
        let cyclic: HashSet<usize> = self.cyclic_indices().into_iter().collect();
        h.top.is_identity()
            && h.base
                .iter()
                .enumerate()
                .all(|(x, y)| *y == if cyclic.contains(&x) { alpha() } else { beta() })
    }

    /// A uniformly random socle element.
    pub fn random_socle<R: Rng + ?Sized>(&self, rng: &mut R) -> WreathElement {
        let base = (0..self.base_len()).map(|_| self.bottom.random_element(rng)).collect();
        WreathElement {
            base,
            top: self.top.identity(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WreathElement {
    pub base: Vec<Permutation>,
    pub top: Permutation,
}

impl WreathElement {
    pub fn is_socle(&self) -> bool {
        self.top.is_identity()
    }
}

/// One representative per left coset of `⟨g_t⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transversal {
    pub representatives: Vec<Permutation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlphaBetaReport {
    pub checks: usize,
    pub passed: usize,
    /// `u` for which `⟨α, b^u⟩ ≠ Alt(5)`.
    pub failures: Vec<String>,
}

impl AlphaBetaReport {
    pub fn all_passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `⟨α, b^u⟩ = Alt(5)` for every `u ∈ Alt(5)`.
pub fn alpha_beta_checks(b: &Permutation) -> Result<AlphaBetaReport> {
    let a5 = alt5();
    a5.require_member(b)?;
    let a = alpha();
    let failures: Vec<String> = a5
        .elements()?
        .par_iter()
        .filter(|u| a5.subgroup(&[a.clone(), b.conjugate_by(u)]).map(|s| s.order() != a5.order()).unwrap_or(true))
        .map(|u| u.to_string())
        .collect();
    Ok(AlphaBetaReport {
        checks: 60,
        passed: 60 - failures.len(),
        failures,
    })
}

pub fn verify_alpha_beta_generation() -> AlphaBetaReport {
    alpha_beta_checks(&beta()).expect("β lies in Alt(5)")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContainmentReport {
    pub seed: u64,
    pub samples: usize,
    /// Top elements `z ∉ ⟨g_t⟩`.
    pub outside: usize,
    /// `outside × samples`.
    pub sampled_checks: usize,
    pub failures: Vec<String>,
    /// `ρ = m z ∈ M⟨g_t⟩` for `z ∈ ⟨g_t⟩`.
    pub containment_checks: usize,
    pub containment_ok: bool,
}

impl ContainmentReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty() && self.containment_ok
    }
}

/// For each top `z ∉ ⟨g_t⟩` and `samples` random socle `m`, with
/// `ρ = m z`, checks at the coordinate `x = 1` that
/// `π_1(h^ρ) = β^{u_{z⁻¹}}` and `⟨π_1(h), π_1(h^ρ)⟩ = Alt(5)`, so
/// `⟨h, ρ⟩` is insoluble. The first sample for each `z` uses `m = 1`.
pub fn verify_containment(l: &WreathLevel, t: &Transversal, samples: usize, seed: u64) -> Result<ContainmentReport> {
    let h = l.compute_h(&l.build_g(t)?)?;
    let id = l.top.identity();
    let h1 = l.projection(&h, &id)?;
    let cyclic: HashSet<usize> = l.cyclic_indices().into_iter().collect();
    let a5 = alt5();
    let tops: Vec<usize> = (0..l.base_len()).collect();

    let outcomes: Vec<(bool, Vec<String>)> = tops
        .par_iter()
        .map(|&zi| -> Result<(bool, Vec<String>)> {
            let z_el = &l.index()[zi];
            let z = l.embed_top(z_el)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(zi as u64);
            let mut failures = Vec::new();
            let mut contained = true;
            for s in 0..samples {
                let m = if s == 0 { l.identity() } else { l.random_socle(&mut rng) };
                let rho = l.multiply(&m, &z);
                if cyclic.contains(&zi) {
                    contained &= cyclic.contains(&l.idx(&rho.top)?);
                    continue;
                }
                let conj = l.conjugate(&h, &rho);
                let at_one = l.projection(&conj, &id)?;
                let zinv = l.idx(&z_el.inverse())?;
                let predicted = beta().conjugate_by(&m.base[zinv]);
                let generated = a5.subgroup(&[h1.clone(), at_one.clone()])?.order() == a5.order();
                if at_one != predicted || !generated {
                    failures.push(format!("z={z_el} sample={s}"));
                }
            }
            Ok((contained, failures))
        })
        .collect::<Result<_>>()?;

    let outside = l.base_len() - cyclic.len();
    Ok(ContainmentReport {
        seed,
        samples,
        outside,
        sampled_checks: outside * samples,
        containment_checks: cyclic.len() * samples,
        containment_ok: outcomes.iter().all(|(c, _)| *c),
        failures: outcomes.into_iter().flat_map(|(_, f)| f).collect(),
    })
}

/// `Ω_S(x, Alt(5))` by exhaustive check.
pub fn solubilizer_in_alt5(x: &Permutation) -> Result<ElementSet> {
    let a5 = alt5();
    let c = Classifier::new(&a5, GroupClass::soluble());
    omega(&c, x)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WreathReport {
    pub alpha_beta_checks: usize,
    pub alpha_beta_passed: usize,
    pub passed: bool,
    pub sampled_checks: usize,
    pub containment_failures: Vec<String>,
    pub containment_ok: bool,
    pub transversals_tested: usize,
    pub h_pattern_ok: bool,
    /// Coordinates of `h_1` equal to `α`, and to `β`.
    pub h_alpha_coordinates: usize,
    pub h_beta_coordinates: usize,
    pub order_g1: u64,
    pub order_h1: u64,
    /// `|G_1|` in decimal.
    pub order_level: String,
    pub seed: u64,
    pub samples: usize,
}

/// Everything checked at level 1, across three distinct transversals.
pub fn verify(samples: usize, seed: u64) -> Result<WreathReport> {
    let l = WreathLevel::level_one();
    let transversals = [l.canonical_transversal(), l.last_transversal(), l.random_transversal(seed)];
    let mut h_pattern_ok = true;
    let mut canonical = None;
    for t in &transversals {
        let g = l.build_g(t)?;
        let h = l.compute_h(&g)?;
        h_pattern_ok &= l.h_pattern_ok(&h);
        canonical.get_or_insert((g, h));
    }
    let distinct: HashSet<Vec<Permutation>> = transversals.iter().map(|t| t.representatives.clone()).collect();
    let (g1, h1) = canonical.expect("three transversals");
    let ab = verify_alpha_beta_generation();
    let runs = transversals
        .iter()
        .map(|t| verify_containment(&l, t, samples, seed))
        .collect::<Result<Vec<_>>>()?;
    let h_alpha_coordinates = h1.base.iter().filter(|y| **y == alpha()).count();
    let h_beta_coordinates = h1.base.iter().filter(|y| **y == beta()).count();
    let order_g1 = l.order(&g1);
    let order_h1 = l.order(&h1);
    Ok(WreathReport {
        alpha_beta_checks: ab.checks,
        alpha_beta_passed: ab.passed,
        passed: ab.all_passed() && runs.iter().all(|r| r.passed()) && h_pattern_ok && distinct.len() == transversals.len(),
        sampled_checks: runs.iter().map(|r| r.sampled_checks).sum(),
        containment_failures: runs.iter().flat_map(|r| r.failures.iter().cloned()).collect(),
        containment_ok: runs.iter().all(|r| r.containment_ok),
        transversals_tested: distinct.len(),
        h_pattern_ok,
        h_alpha_coordinates,
        h_beta_coordinates,
        order_g1,
        order_h1,
        order_level: l.group_order().to_string(),
        seed,
        samples,
    })
}
