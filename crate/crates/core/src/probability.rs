//! Ω-sets and exact probabilities over finite groups, with checks of the
//! identities and inequalities relating them to the center, the soluble
//! radical and the hypercenter.
//!
//! Haar measure on a finite group is uniform counting measure, so every
//! probability here is a ratio of integers and is carried as a [`Rational`].

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::Serialize;

use crate::classc::{Classifier, GroupClass};
use crate::error::{Error, Result};
use crate::group::{ElementSet, FiniteGroup};
use crate::perm::Permutation;
use crate::rational::{serialize_biguint, Rational};

/// Up to this order `prob_group` defaults to the exhaustive double loop.
pub const EXHAUSTIVE_MAX_ORDER: usize = 360;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Exhaustive,
    ClassReduced,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProbabilityReport {
    pub group: String,
    pub class: String,
    pub method: Method,
    #[serde(serialize_with = "serialize_biguint")]
    pub favorable: BigUint,
    #[serde(serialize_with = "serialize_biguint")]
    pub total: BigUint,
    pub probability: Rational,
}

impl ProbabilityReport {
    fn new(c: &Classifier<'_>, method: Method, favorable: u64, total: u64) -> Self {
        let favorable = BigUint::from(favorable);
        let total = BigUint::from(total);
        ProbabilityReport {
            group: c.group().name(),
            class: c.class().name().to_string(),
            method,
            probability: Rational::from_counts(&favorable, &total),
            favorable,
            total,
        }
    }
}

fn order_of(g: &FiniteGroup) -> Result<usize> {
    Ok(g.enumeration()?.len())
}

fn check_pair_budget(c: &Classifier<'_>, pairs: u64) -> Result<()> {
    match c.pair_budget() {
        Some(limit) if pairs > limit => Err(Error::CapExceeded {
            cap: "pair budget",
            needed: pairs.to_string(),
            limit: limit.to_string(),
        }),
        _ => Ok(()),
    }
}

/// `Ω_C(x, G)` for `x` given by canonical index.
pub fn omega_idx(c: &Classifier<'_>, x: usize) -> Result<ElementSet> {
    let n = order_of(c.group())?;
    let members: Result<Vec<Option<usize>>> = (0..n)
        .into_par_iter()
        .map(|g| Ok(c.test_idx(x, g)?.then_some(g)))
        .collect();
    Ok(ElementSet::new(n, members?.into_iter().flatten()))
}

/// `Ω_C(x, G) = { g ∈ G : ⟨x, g⟩ ∈ C }`.
pub fn omega(c: &Classifier<'_>, x: &Permutation) -> Result<ElementSet> {
    let i = c.group().index_of(x)?;
    omega_idx(c, i)
}

/// `P_C(x, G) = |Ω_C(x, G)| / |G|`.
pub fn prob_elem(c: &Classifier<'_>, x: &Permutation) -> Result<ProbabilityReport> {
    let n = order_of(c.group())?;
    let om = omega(c, x)?;
    Ok(ProbabilityReport::new(c, Method::Exhaustive, om.len() as u64, n as u64))
}

/// Number of pairs in `X × Y` generating a subgroup in the class.
fn count_pairs(c: &Classifier<'_>, xs: &ElementSet, ys: &ElementSet) -> Result<u64> {
    let xs: Vec<usize> = xs.iter().collect();
    let ys: Vec<usize> = ys.iter().collect();
    xs.par_iter()
        .map(|&x| {
            ys.iter().try_fold(0u64, |acc, &y| Ok(acc + c.test_idx(x, y)? as u64))
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))
}

/// `P_C(X, Y) = |Θ_C(X, Y)| / (|X| |Y|)` for nonempty `X`, `Y`.
pub fn prob_sets(c: &Classifier<'_>, xs: &ElementSet, ys: &ElementSet) -> Result<ProbabilityReport> {
    if xs.is_empty() || ys.is_empty() {
        return Err(Error::EmptySet);
    }
    let total = xs.len() as u64 * ys.len() as u64;
    check_pair_budget(c, total)?;
    let favorable = count_pairs(c, xs, ys)?;
    Ok(ProbabilityReport::new(c, Method::Exhaustive, favorable, total))
}

/// `P_C(G, G)`, with the method chosen by group order.
pub fn prob_group(c: &Classifier<'_>) -> Result<ProbabilityReport> {
    let method = if order_of(c.group())? <= EXHAUSTIVE_MAX_ORDER {
        Method::Exhaustive
    } else {
        Method::ClassReduced
    };
    prob_group_with(c, method)
}

pub fn prob_group_with(c: &Classifier<'_>, method: Method) -> Result<ProbabilityReport> {
    let g = c.group();
    let n = order_of(g)?;
    let total = n as u64 * n as u64;
    match method {
        Method::Exhaustive => {
            check_pair_budget(c, total)?;
            let all = ElementSet::full(n);
            let favorable = count_pairs(c, &all, &all)?;
            Ok(ProbabilityReport::new(c, method, favorable, total))
        }
        Method::ClassReduced => {
            let classes = g.conjugacy_classes()?;
            check_pair_budget(c, classes.len() as u64 * n as u64)?;
            let mut favorable = 0u64;
            for (rep, size) in classes.summary() {
                favorable += size as u64 * omega_idx(c, rep)?.len() as u64;
            }
            Ok(ProbabilityReport::new(c, method, favorable, total))
        }
    }
}

/// `Ω_C(G) = ⋂_x Ω_C(x, G)`, computed over class representatives: `y` lies in
/// the intersection iff its whole conjugacy class lies in `Ω_C(r, G)` for
/// every representative `r`.
pub fn omega_global(c: &Classifier<'_>) -> Result<ElementSet> {
    let g = c.group();
    let n = order_of(g)?;
    let classes = g.conjugacy_classes()?;
    let mut inter = ElementSet::full(n);
    for rep in classes.representatives() {
        inter = inter.intersection(&omega_idx(c, rep)?);
    }
    let mask = inter.mask();
    let keep = (0..classes.len())
        .filter(|&k| classes.members(k).all(|y| mask[y]))
        .flat_map(|k| classes.members(k).collect::<Vec<_>>());
    Ok(ElementSet::new(n, keep))
}

/// `Ω_C(G)` as the plain intersection over every element.
pub fn omega_global_unreduced(c: &Classifier<'_>) -> Result<ElementSet> {
    let n = order_of(c.group())?;
    let mut inter = ElementSet::full(n);
    for x in 0..n {
        inter = inter.intersection(&omega_idx(c, x)?);
    }
    Ok(inter)
}

/// `{ x : the normal closure of x is soluble }`. The normal closure of `x`
/// depends only on its conjugacy class, so one test per class suffices.
pub fn soluble_radical(g: &FiniteGroup) -> Result<ElementSet> {
    let e = g.enumeration()?;
    let classes = g.conjugacy_classes()?;
    let soluble: Vec<bool> = classes
        .representatives()
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&r| g.normal_closure_unchecked(&[e.element(r).clone()]).is_soluble())
        .collect();
    Ok(ElementSet::new(
        e.len(),
        (0..classes.len())
            .filter(|&k| soluble[k])
            .flat_map(|k| classes.members(k).collect::<Vec<_>>()),
    ))
}

/// Final term of the upper central series.
pub fn hypercenter(g: &FiniteGroup) -> Result<ElementSet> {
    Ok(g.upper_central_series()?.last().clone())
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub identity: String,
    pub lhs_size: usize,
    pub rhs_size: usize,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub group: String,
    pub order: usize,
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

fn identity_check(name: &str, lhs: &ElementSet, rhs: &ElementSet) -> IdentityCheck {
    IdentityCheck {
        identity: name.to_string(),
        lhs_size: lhs.len(),
        rhs_size: rhs.len(),
        pass: lhs == rhs,
    }
}

/// Checks `Ω_A(G) = Z(G)`, `Ω_S(G) = R(G)` and `Ω_N(G) = Z_∞(G)`, each side
/// computed independently.
pub fn verify_identities(g: &FiniteGroup) -> Result<IdentityReport> {
    let ab = omega_global(&Classifier::new(g, GroupClass::abelian()))?;
    let sol = omega_global(&Classifier::new(g, GroupClass::soluble()))?;
    let nil = omega_global(&Classifier::new(g, GroupClass::nilpotent()))?;
    Ok(IdentityReport {
        group: g.name(),
        order: order_of(g)?,
        checks: vec![
            identity_check("omega_abelian(G) = Z(G)", &ab, &g.center()?),
            identity_check("omega_soluble(G) = R(G)", &sol, &soluble_radical(g)?),
            identity_check("omega_nilpotent(G) = Z_inf(G)", &nil, &hypercenter(g)?),
        ],
    })
}

/// Checks `Ω_A(x, G) = C_G(x)` for every `x ∈ G`; returns the failing indices.
pub fn verify_centralizer_identity(g: &FiniteGroup) -> Result<Vec<usize>> {
    let c = Classifier::new(g, GroupClass::abelian());
    let e = g.enumeration()?;
    let mut failures = Vec::new();
    for x in 0..e.len() {
        if omega_idx(&c, x)? != g.centralizer(e.element(x))? {
            failures.push(x);
        }
    }
    Ok(failures)
}

#[derive(Clone, Debug, Serialize)]
pub struct MonotonicityCheck {
    pub group: String,
    pub class: String,
    pub element: String,
    pub normal_order: usize,
    pub quotient: Rational,
    pub full: Rational,
    pub holds: bool,
}

/// `P_C(xN, G/N) ≥ P_C(x, G)`, both sides exact.
pub fn quotient_monotonicity_check(
    class: &GroupClass,
    g: &FiniteGroup,
    normal: &FiniteGroup,
    x: &Permutation,
) -> Result<MonotonicityCheck> {
    g.require_member(x)?;
    let quotient = g.quotient(normal)?;
    let q = quotient.group();
    let full = prob_elem(&Classifier::new(g, class.clone()), x)?.probability;
    let image = quotient.project(x);
    let lhs = prob_elem(&Classifier::new(q, class.clone()), &image)?.probability;
    Ok(MonotonicityCheck {
        group: g.name(),
        class: class.name().to_string(),
        element: x.to_string(),
        normal_order: order_of(normal)?,
        holds: lhs >= full,
        quotient: lhs,
        full,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct AveragingCheck {
    pub set_size: usize,
    pub theta_size: u64,
    pub omega_sum: u64,
    pub probability: Rational,
    pub average: Rational,
    pub minimum: Rational,
    pub holds: bool,
}

/// `|Θ_C(X, G)| = Σ_{x∈X} |Ω_C(x, G)|`, hence `P_C(X, G)` is the average of
/// `P_C(x, G)` over `X` and is at least its minimum.
pub fn averaging_identity_check(c: &Classifier<'_>, xs: &ElementSet) -> Result<AveragingCheck> {
    if xs.is_empty() {
        return Err(Error::EmptySet);
    }
    let n = order_of(c.group())?;
    let joint = prob_sets(c, xs, &ElementSet::full(n))?;
    let sizes: Vec<u64> = xs
        .iter()
        .map(|x| Ok(omega_idx(c, x)?.len() as u64))
        .collect::<Result<_>>()?;
    let omega_sum: u64 = sizes.iter().sum();
    let per_elem: Vec<Rational> = sizes.iter().map(|&s| Rational::new(s, n as u64)).collect();
    let average = &per_elem.iter().cloned().sum::<Rational>() / &Rational::new(xs.len() as u64, 1u64);
    let minimum = per_elem.iter().min().cloned().expect("nonempty");
    let theta_size = joint.favorable.to_u64().expect("pair count fits in u64");
    Ok(AveragingCheck {
        set_size: xs.len(),
        theta_size,
        omega_sum,
        holds: theta_size == omega_sum && joint.probability == average && joint.probability >= minimum,
        probability: joint.probability,
        average,
        minimum,
    })
}

/// Indices of the coset `x H`.
pub fn coset(g: &FiniteGroup, sub: &FiniteGroup, x: &Permutation) -> Result<ElementSet> {
    g.require_member(x)?;
    let e = g.enumeration()?;
    let members = sub
        .elements()?
        .iter()
        .map(|h| e.index_of(&(x * h)).ok_or_else(|| Error::NotInGroup(h.to_string())))
        .collect::<Result<Vec<_>>>()?;
    Ok(ElementSet::new(e.len(), members))
}

#[derive(Clone, Debug, Serialize)]
pub struct PartitionCheck {
    pub blocks_x: usize,
    pub blocks_y: usize,
    pub whole: Rational,
    pub block_average: Rational,
    pub holds: bool,
}

/// For `X = ⋃ x_i H` and `Y = ⋃ y_j H` (distinct cosets of one subgroup),
/// `P_C(X, Y) = Σ_{i,j} P_C(x_i H, y_j H) / (r s)`.
pub fn partition_identity_check(
    c: &Classifier<'_>,
    sub: &FiniteGroup,
    x_reps: &[Permutation],
    y_reps: &[Permutation],
) -> Result<PartitionCheck> {
    let g = c.group();
    let n = order_of(g)?;
    let xs: Vec<ElementSet> = x_reps.iter().map(|x| coset(g, sub, x)).collect::<Result<_>>()?;
    let ys: Vec<ElementSet> = y_reps.iter().map(|y| coset(g, sub, y)).collect::<Result<_>>()?;
    let union = |blocks: &[ElementSet]| -> Result<ElementSet> {
        let set = ElementSet::new(n, blocks.iter().flat_map(|b| b.iter().collect::<Vec<_>>()));
        if set.len() != blocks.iter().map(ElementSet::len).sum::<usize>() {
            return Err(Error::Precondition("coset representatives are not distinct".into()));
        }
        Ok(set)
    };
    let whole = prob_sets(c, &union(&xs)?, &union(&ys)?)?.probability;
    let mut sum = Rational::zero();
    for bx in &xs {
        for by in &ys {
            sum = &sum + &prob_sets(c, bx, by)?.probability;
        }
    }
    let block_average = &sum / &Rational::new((xs.len() * ys.len()) as u64, 1u64);
    Ok(PartitionCheck {
        blocks_x: xs.len(),
        blocks_y: ys.len(),
        holds: whole == block_average,
        whole,
        block_average,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct HallBoundCheck {
    pub q_order: usize,
    pub n_order: usize,
    pub nq_order: usize,
    pub hall_order: usize,
    pub centralizer_order: usize,
    pub probability: Rational,
    pub bound: Rational,
    pub holds: bool,
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// For a normal nilpotent π-subgroup `Q` (π = primes of `|Q|`) and a
/// nilpotent `N = ⟨u, v⟩`, checks `P_N(uQ, vQ) ≤ |Q : C_Q(R)|⁻¹` inside
/// `NQ`, where `R` is the π′-Hall subgroup of `N`. `G` may be larger than
/// `NQ` (for instance `Sym(4)` around `Klein ⋊ ⟨(1,2,3)⟩`); the pairs
/// `(ua, vb)` only ever generate subgroups of `NQ`.
pub fn hall_bound_check(
    g: &FiniteGroup,
    q: &FiniteGroup,
    u: &Permutation,
    v: &Permutation,
) -> Result<HallBoundCheck> {
    g.require_member(u)?;
    g.require_member(v)?;
    if !q.is_subgroup_of(g) {
        return Err(Error::Precondition("Q is not a subgroup of G".into()));
    }
    if !q.is_nilpotent() {
        return Err(Error::Precondition("Q is not nilpotent".into()));
    }
    let n = g.subgroup(&[u.clone(), v.clone()])?;
    if !n.is_nilpotent() {
        return Err(Error::Precondition("N = <u, v> is not nilpotent".into()));
    }
    let mut nq_gens = vec![u.clone(), v.clone()];
    nq_gens.extend(q.generators().iter().cloned());
    let nq = g.subgroup(&nq_gens)?;
    if !nq.normalizes(q) {
        return Err(Error::Precondition("Q is not normal in <u, v> Q".into()));
    }

    let q_order = order_of(q)? as u64;
    let n_order = order_of(&n)? as u64;
    let pi = prime_divisors(q_order);
    // π-part of |N|: raising to it kills the π-component and permutes the π′-component.
    let mut pi_part = 1u64;
    let mut rest = n_order;
    for &p in &pi {
        while rest % p == 0 {
            rest /= p;
            pi_part *= p;
        }
    }
    let hall_elems: std::collections::BTreeSet<Permutation> =
        n.elements()?.iter().map(|x| x.pow(pi_part)).collect();
    debug_assert!(pi_part.gcd(&rest) == 1);
    let hall = g.subgroup(&hall_elems.iter().cloned().collect::<Vec<_>>())?;
    if order_of(&hall)? != hall_elems.len() {
        return Err(Error::Precondition("pi'-parts of N do not form a subgroup".into()));
    }
    let centralizer = q
        .elements()?
        .iter()
        .filter(|a| hall.generators().iter().all(|r| a.commutes_with(r)))
        .count();
    let bound = Rational::new(centralizer as u64, q_order);

    let c = Classifier::new(&nq, GroupClass::nilpotent());
    let uq = coset(&nq, q, u)?;
    let vq = coset(&nq, q, v)?;
    let probability = prob_sets(&c, &uq, &vq)?.probability;
    Ok(HallBoundCheck {
        q_order: q_order as usize,
        n_order: n_order as usize,
        nq_order: order_of(&nq)?,
        hall_order: hall_elems.len(),
        centralizer_order: centralizer,
        holds: probability <= bound,
        probability,
        bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn p(n: usize, s: &str) -> Permutation {
        Permutation::parse(n, s).unwrap()
    }

    fn set_strings(g: &FiniteGroup, s: &ElementSet) -> Vec<String> {
        let e = g.enumeration().unwrap();
        let mut v: Vec<String> = s.iter().map(|i| e.element(i).to_string()).collect();
        v.sort();
        v
    }

    #[test]
    fn omega_examples() {
        let s3 = catalog::load("S3").unwrap();
        let nil = Classifier::new(&s3, GroupClass::nilpotent());
        let om = omega(&nil, &p(3, "(1,2)")).unwrap();
        assert_eq!(set_strings(&s3, &om), vec!["()", "(1,2)"]);
        for class in GroupClass::builtins() {
            let c = Classifier::new(&s3, class);
            assert_eq!(omega(&c, &s3.identity()).unwrap().len(), 6);
        }
    }

    #[test]
    fn prob_elem_examples() {
        let s3 = catalog::load("S3").unwrap();
        let ab = Classifier::new(&s3, GroupClass::abelian());
        assert_eq!(prob_elem(&ab, &p(3, "(1,2)")).unwrap().probability, Rational::new(1, 3));
        let s4 = catalog::load("S4").unwrap();
        let sol = Classifier::new(&s4, GroupClass::soluble());
        for x in s4.elements().unwrap() {
            assert_eq!(prob_elem(&sol, x).unwrap().probability, Rational::one());
        }
        let d6 = catalog::load("D6").unwrap();
        let nil = Classifier::new(&d6, GroupClass::nilpotent());
        let reflection = &d6.generators()[1];
        assert_eq!(prob_elem(&nil, reflection).unwrap().probability, Rational::new(1, 3));
    }

    #[test]
    fn prob_sets_examples() {
        let a5 = catalog::load("A5").unwrap();
        let sol = Classifier::new(&a5, GroupClass::soluble());
        let all = ElementSet::full(60);
        let one = ElementSet::new(60, [0]);
        assert_eq!(prob_sets(&sol, &one, &all).unwrap().probability, Rational::one());
        assert_eq!(
            prob_sets(&sol, &all, &all).unwrap().probability,
            prob_group(&sol).unwrap().probability
        );
        assert_eq!(prob_sets(&sol, &ElementSet::empty(60), &all).unwrap_err(), Error::EmptySet);
    }

    #[test]
    fn partition_on_s3() {
        let s3 = catalog::load("S3").unwrap();
        let a3 = s3.subgroup(&[p(3, "(1,2,3)")]).unwrap();
        let reps = [s3.identity(), p(3, "(1,2)")];
        for class in GroupClass::builtins() {
            let c = Classifier::new(&s3, class);
            let check = partition_identity_check(&c, &a3, &reps, &reps).unwrap();
            assert!(check.holds, "{check:?}");
        }
        // nilpotent blocks by hand: A3×A3 = 9/9, A3×t = 3/9, t×A3 = 3/9, t×t = 3/9
        let c = Classifier::new(&s3, GroupClass::nilpotent());
        let check = partition_identity_check(&c, &a3, &reps, &reps).unwrap();
        assert_eq!(check.whole, Rational::new(1, 2));
        let t = coset(&s3, &a3, &p(3, "(1,2)")).unwrap();
        assert_eq!(prob_sets(&c, &t, &t).unwrap().probability, Rational::new(1, 3));
    }

    #[test]
    fn prob_group_examples() {
        let s3 = catalog::load("S3").unwrap();
        let nil = Classifier::new(&s3, GroupClass::nilpotent());
        let ex = prob_group_with(&nil, Method::Exhaustive).unwrap();
        assert_eq!(ex.probability, Rational::new(1, 2));
        assert_eq!(ex.favorable, BigUint::from(18u32));
        let cr = prob_group_with(&nil, Method::ClassReduced).unwrap();
        assert_eq!(cr.favorable, ex.favorable);

        let a5 = catalog::load("A5").unwrap();
        let sol = Classifier::new(&a5, GroupClass::soluble());
        let ex = prob_group_with(&sol, Method::Exhaustive).unwrap();
        let cr = prob_group_with(&sol, Method::ClassReduced).unwrap();
        assert_eq!(ex.probability, cr.probability);
        assert!(ex.probability < Rational::one());

        let budget = Classifier::new(&a5, GroupClass::soluble()).with_pair_budget(100);
        assert!(matches!(
            prob_group_with(&budget, Method::Exhaustive),
            Err(Error::CapExceeded { cap: "pair budget", .. })
        ));
    }

    #[test]
    fn global_sets() {
        let a5 = catalog::load("A5").unwrap();
        assert_eq!(omega_global(&Classifier::new(&a5, GroupClass::soluble())).unwrap().len(), 1);
        let s3c2 = catalog::load("S3xC2").unwrap();
        let nil = omega_global(&Classifier::new(&s3c2, GroupClass::nilpotent())).unwrap();
        assert_eq!(set_strings(&s3c2, &nil), vec!["()", "(4,5)"]);
        for name in ["S4", "Q8", "D12", "SL23"] {
            let g = catalog::load(name).unwrap();
            let ab = omega_global(&Classifier::new(&g, GroupClass::abelian())).unwrap();
            assert_eq!(ab, g.center().unwrap(), "{name}");
        }
    }

    #[test]
    fn radical_and_hypercenter() {
        let s4 = catalog::load("S4").unwrap();
        assert_eq!(soluble_radical(&s4).unwrap().len(), 24);
        assert_eq!(soluble_radical(&catalog::load("A5").unwrap()).unwrap().len(), 1);
        let s3a5 = catalog::load("S3xA5").unwrap();
        let r = soluble_radical(&s3a5).unwrap();
        assert_eq!(r.len(), 6);
        let e = s3a5.enumeration().unwrap();
        assert!(r.iter().all(|i| (3..8).all(|pt| e.element(i).apply(pt) == pt)));

        assert_eq!(hypercenter(&catalog::load("Q8").unwrap()).unwrap().len(), 8);
        assert_eq!(hypercenter(&catalog::load("S3").unwrap()).unwrap().len(), 1);
        let q8s3 = catalog::load("Q8xS3").unwrap();
        let z = hypercenter(&q8s3).unwrap();
        assert_eq!(z.len(), 8);
        let e = q8s3.enumeration().unwrap();
        assert!(z.iter().all(|i| (8..11).all(|pt| e.element(i).apply(pt) == pt)));
    }

    #[test]
    fn identities() {
        for name in ["S4", "A5", "SL23"] {
            let g = catalog::load(name).unwrap();
            let report = verify_identities(&g).unwrap();
            assert!(report.passed(), "{report:?}");
        }
        let a5 = verify_identities(&catalog::load("A5").unwrap()).unwrap();
        assert!(a5.checks.iter().all(|c| c.lhs_size == 1));
        let sl = verify_identities(&catalog::load("SL23").unwrap()).unwrap();
        assert_eq!(sl.checks[0].rhs_size, 2);
        assert_eq!(sl.checks[2].rhs_size, 2);
    }

    #[test]
    fn monotonicity_examples() {
        let s4 = catalog::load("S4").unwrap();
        let klein = s4.normal_closure(&[p(4, "(1,2)(3,4)")]).unwrap();
        let x = p(4, "(1,2)");
        let nil = GroupClass::nilpotent();
        let check = quotient_monotonicity_check(&nil, &s4, &klein, &x).unwrap();
        assert!(check.holds, "{check:?}");
        let trivial = FiniteGroup::trivial(4);
        let eq = quotient_monotonicity_check(&nil, &s4, &trivial, &x).unwrap();
        assert_eq!(eq.quotient, eq.full);
        let top = quotient_monotonicity_check(&nil, &s4, &s4, &x).unwrap();
        assert_eq!(top.quotient, Rational::one());
    }

    #[test]
    fn averaging_examples() {
        let s3 = catalog::load("S3").unwrap();
        let c = Classifier::new(&s3, GroupClass::nilpotent());
        let x = s3.index_of(&p(3, "(1,2)")).unwrap();
        let single = averaging_identity_check(&c, &ElementSet::new(6, [x])).unwrap();
        assert!(single.holds);
        assert_eq!(single.probability, prob_elem(&c, &p(3, "(1,2)")).unwrap().probability);
        let whole = averaging_identity_check(&c, &ElementSet::full(6)).unwrap();
        assert_eq!(whole.average, Rational::new(1, 2));
        let a3 = s3.subgroup(&[p(3, "(1,2,3)")]).unwrap();
        let cos = coset(&s3, &a3, &p(3, "(1,2)")).unwrap();
        assert!(averaging_identity_check(&c, &cos).unwrap().holds);
        assert_eq!(averaging_identity_check(&c, &ElementSet::empty(6)).unwrap_err(), Error::EmptySet);
    }

    #[test]
    fn hall_bound_examples() {
        let a4 = catalog::load("A4").unwrap();
        let klein = a4.normal_closure(&[p(4, "(1,2)(3,4)")]).unwrap();
        let u = p(4, "(1,2,3)");
        let check = hall_bound_check(&a4, &klein, &u, &u).unwrap();
        let s4 = catalog::load("S4").unwrap();
        let inside = hall_bound_check(&s4, &klein, &u, &u).unwrap();
        assert_eq!((inside.nq_order, inside.probability.clone()), (12, check.probability.clone()));
        assert_eq!(check.bound, Rational::new(1, 4));
        assert!(check.holds, "{check:?}");
        // 4 of the 16 pairs (a, b) give a nilpotent ⟨ua, ub⟩ (brute-force count)
        assert_eq!(check.probability, Rational::new(1, 4));

        let q8 = catalog::load("Q8").unwrap();
        let id = q8.identity();
        let vacuous = hall_bound_check(&q8, &FiniteGroup::trivial(8), &q8.generators()[0], &q8.generators()[1]).unwrap();
        assert_eq!(vacuous.bound, Rational::one());
        let whole = hall_bound_check(&q8, &q8, &id, &id).unwrap();
        assert_eq!((whole.probability.clone(), whole.bound.clone()), (Rational::one(), Rational::one()));

        let s3 = catalog::load("S3").unwrap();
        let err = hall_bound_check(&s3, &FiniteGroup::trivial(3), &p(3, "(1,2)"), &p(3, "(1,3)")).unwrap_err();
        assert!(matches!(err, Error::Precondition(m) if m.contains("nilpotent")));
    }
}
