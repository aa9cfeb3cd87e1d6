//! Group classes and the memoized pair classifier.
//!
//! A class is a predicate on finite groups that is meant to be closed under
//! subgroups, quotients and finite direct products. The three built-ins are
//! the abelian, nilpotent and soluble groups; [`closure_audit`] probes the
//! closure axioms for any predicate.

use std::fmt;
use std::io::{BufRead, Write};
use std::path::Path;
use std::sync::{Arc, OnceLock};

use dashmap::DashMap;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{generators_commute, prime_parts, FiniteGroup};
use crate::perm::Permutation;

type Predicate = Arc<dyn Fn(&FiniteGroup) -> bool + Send + Sync>;

#[derive(Clone)]
enum Kind {
    Abelian,
    Nilpotent,
    Soluble,
    Custom(Predicate),
}

#[derive(Clone)]
pub struct GroupClass {
    name: String,
    kind: Kind,
}

impl fmt::Debug for GroupClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupClass({})", self.name)
    }
}

impl GroupClass {
    pub fn abelian() -> Self {
        GroupClass {
            name: "abelian".into(),
            kind: Kind::Abelian,
        }
    }

    pub fn nilpotent() -> Self {
        GroupClass {
            name: "nilpotent".into(),
            kind: Kind::Nilpotent,
        }
    }

    pub fn soluble() -> Self {
        GroupClass {
            name: "soluble".into(),
            kind: Kind::Soluble,
        }
    }

    /// A user-supplied class. Nothing checks the closure axioms here; see [`closure_audit`].
    pub fn custom(
        name: impl Into<String>,
        predicate: impl Fn(&FiniteGroup) -> bool + Send + Sync + 'static,
    ) -> Self {
        GroupClass {
            name: name.into(),
            kind: Kind::Custom(Arc::new(predicate)),
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        match name {
            "abelian" => Ok(Self::abelian()),
            "nilpotent" => Ok(Self::nilpotent()),
            "soluble" | "solvable" => Ok(Self::soluble()),
            other => Err(Error::UnknownClass(other.to_string())),
        }
    }

    pub fn builtins() -> [GroupClass; 3] {
        [Self::abelian(), Self::nilpotent(), Self::soluble()]
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Built-in classes contain every cyclic group.
    pub fn is_builtin(&self) -> bool {
        !matches!(self.kind, Kind::Custom(_))
    }

    pub fn contains(&self, group: &FiniteGroup) -> bool {
        match &self.kind {
            Kind::Abelian => group.is_abelian(),
            Kind::Nilpotent => group.is_nilpotent(),
            Kind::Soluble => group.is_soluble(),
            Kind::Custom(p) => p(group),
        }
    }

    /// Membership of the group generated by `gens`.
    pub fn contains_generated(&self, degree: usize, gens: &[Permutation]) -> bool {
        let gens: Vec<Permutation> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        if self.is_builtin() && generators_commute(&gens) {
            return true;
        }
        match self.kind {
            Kind::Abelian => false,
            Kind::Nilpotent => nilpotent_generated(degree, &gens),
            _ => {
                let h = FiniteGroup::from_generators(degree, gens).expect("degrees checked by caller");
                self.contains(&h)
            }
        }
    }
}

/// `⟨S⟩` is nilpotent iff `p`-parts and `q`-parts of the generators commute
/// for all primes `p ≠ q` and each `K_p = ⟨p-parts of S⟩` is a `p`-group:
/// then `⟨S⟩` is the product of the pairwise commuting `K_p`, every `p`-part
/// being a power of its generator.
fn nilpotent_generated(degree: usize, gens: &[Permutation]) -> bool {
    let mut primes: Vec<u64> = Vec::new();
    for g in gens {
        let mut m = g.order();
        let mut p = 2;
        while m > 1 {
            if m % p == 0 {
                primes.push(p);
                while m % p == 0 {
                    m /= p;
                }
            }
            p += 1;
        }
    }
    primes.sort_unstable();
    primes.dedup();
    let parts: Vec<Vec<(u64, Permutation)>> = gens.iter().map(|g| prime_parts(g, &primes)).collect();
    for (i, a) in parts.iter().enumerate() {
        for b in &parts[i + 1..] {
            for (p, x) in a {
                if b.iter().any(|(q, y)| p != q && !x.commutes_with(y)) {
                    return false;
                }
            }
        }
    }
    primes.iter().all(|&p| {
        let sub: Vec<Permutation> = parts.iter().flatten().filter(|(q, _)| *q == p).map(|(_, x)| x.clone()).collect();
        generators_commute(&sub)
            || FiniteGroup::from_generators(degree, sub).expect("degrees checked by caller").order_primes() == [p]
    })
}

/// `⟨x, y⟩ ∈ C`, without caching.
pub fn test_pair(class: &GroupClass, group: &FiniteGroup, x: &Permutation, y: &Permutation) -> Result<bool> {
    group.require_member(x)?;
    group.require_member(y)?;
    Ok(class.contains_generated(group.degree(), &[x.clone(), y.clone()]))
}

/// Pair classifier for one `(G, C)`, memoized on unordered pairs of
/// canonical element indices. Safe to share across threads.
pub struct Classifier<'g> {
    group: &'g FiniteGroup,
    class: GroupClass,
    cache: DashMap<(u32, u32), bool>,
    pair_budget: Option<u64>,
    /// Built-in classes are subgroup-closed: if `G ∈ C`, every pair is.
    whole: OnceLock<bool>,
}

#[derive(Serialize, Deserialize)]
struct CacheLine {
    group: String,
    class: String,
    pair: [u32; 2],
    value: bool,
}

impl<'g> Classifier<'g> {
    pub fn new(group: &'g FiniteGroup, class: GroupClass) -> Self {
        Classifier {
            group,
            class,
            cache: DashMap::new(),
            pair_budget: None,
            whole: OnceLock::new(),
        }
    }

    /// Bounds the number of pairs a single enumeration may visit.
    pub fn with_pair_budget(mut self, budget: u64) -> Self {
        self.pair_budget = Some(budget);
        self
    }

    pub fn pair_budget(&self) -> Option<u64> {
        self.pair_budget
    }

    pub fn group(&self) -> &'g FiniteGroup {
        self.group
    }

    pub fn class(&self) -> &GroupClass {
        &self.class
    }

    pub fn cached_pairs(&self) -> usize {
        self.cache.len()
    }

    /// Whether the shortcut `G ∈ C` applies (built-in classes only).
    pub fn group_in_class(&self) -> bool {
        *self
            .whole
            .get_or_init(|| self.class.is_builtin() && self.class.contains(self.group))
    }

    /// `⟨x, y⟩ ∈ C` for canonical element indices `i`, `j`.
    pub fn test_idx(&self, i: usize, j: usize) -> Result<bool> {
        if self.group_in_class() {
            return Ok(true);
        }
        let key = if i <= j { (i as u32, j as u32) } else { (j as u32, i as u32) };
        if let Some(v) = self.cache.get(&key) {
            return Ok(*v);
        }
        let e = self.group.enumeration()?;
        let value = self
            .class
            .contains_generated(self.group.degree(), &[e.element(i).clone(), e.element(j).clone()]);
        self.cache.insert(key, value);
        Ok(value)
    }

    pub fn test(&self, x: &Permutation, y: &Permutation) -> Result<bool> {
        match self.group.enumeration() {
            Ok(_) => {
                let i = self.group.index_of(x)?;
                let j = self.group.index_of(y)?;
                self.test_idx(i, j)
            }
            Err(Error::CapExceeded { .. }) => test_pair(&self.class, self.group, x, y),
            Err(e) => Err(e),
        }
    }

    fn group_key(&self) -> String {
        format!("{:016x}", self.group.fingerprint())
    }

    /// Loads cached classifications for this group and class from a JSON-lines
    /// file; lines for other groups or classes are ignored. Returns the count loaded.
    pub fn load_cache(&self, path: &Path) -> Result<usize> {
        if !path.exists() {
            return Ok(0);
        }
        let key = self.group_key();
        let file = std::io::BufReader::new(std::fs::File::open(path)?);
        let mut loaded = 0;
        for (n, line) in file.lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let entry: CacheLine = serde_json::from_str(&line).map_err(|e| Error::Parse {
                line: n + 1,
                message: e.to_string(),
            })?;
            if entry.group == key && entry.class == self.class.name {
                self.cache.insert((entry.pair[0], entry.pair[1]), entry.value);
                loaded += 1;
            }
        }
        Ok(loaded)
    }

    /// Appends this classifier's cache, sorted by pair, to a JSON-lines file.
    pub fn save_cache(&self, path: &Path) -> Result<()> {
        let key = self.group_key();
        let mut entries: Vec<((u32, u32), bool)> =
            self.cache.iter().map(|e| (*e.key(), *e.value())).collect();
        entries.sort_unstable();
        let mut out = std::fs::OpenOptions::new().create(true).append(true).open(path)?;
        for ((a, b), value) in entries {
            let line = CacheLine {
                group: key.clone(),
                class: self.class.name.clone(),
                pair: [a, b],
                value,
            };
            writeln!(out, "{}", serde_json::to_string(&line).expect("serializable"))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosureKind {
    Subgroup,
    Quotient,
    DirectProduct,
}

#[derive(Clone, Debug, Serialize)]
pub struct Violation {
    pub kind: ClosureKind,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClosureAudit {
    pub class: String,
    pub samples_in_class: usize,
    pub checks: usize,
    pub violations: Vec<Violation>,
}

impl ClosureAudit {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Probes the closure axioms of `class` on the members of `samples` that lie
/// in it: random 2-generated subgroups, quotients by normal closures of random
/// elements, and all pairwise direct products on disjoint supports.
pub fn closure_audit(
    class: &GroupClass,
    samples: &[FiniteGroup],
    rounds: usize,
    seed: u64,
) -> Result<ClosureAudit> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let members: Vec<(usize, &FiniteGroup)> = samples
        .iter()
        .enumerate()
        .filter(|(_, g)| class.contains(g))
        .collect();
    let mut violations = Vec::new();
    let mut checks = 0;
    for &(k, g) in &members {
        for _ in 0..rounds {
            let x = g.random_element(&mut rng);
            let y = g.random_element(&mut rng);
            let sub = g.subgroup(&[x.clone(), y.clone()])?;
            checks += 1;
            if !class.contains(&sub) {
                violations.push(Violation {
                    kind: ClosureKind::Subgroup,
                    detail: format!("sample {k}: <{x}, {y}> of order {}", sub.order()),
                });
            }
            let r = g.random_element(&mut rng);
            let normal = g.normal_closure(&[r.clone()])?;
            let q = g.quotient(&normal)?;
            checks += 1;
            if !class.contains(q.group()) {
                violations.push(Violation {
                    kind: ClosureKind::Quotient,
                    detail: format!("sample {k}: quotient by normal closure of {r}"),
                });
            }
        }
    }
    for (a, &(i, g)) in members.iter().enumerate() {
        for &(j, h) in &members[a..] {
            let prod = FiniteGroup::direct_product(g, h);
            checks += 1;
            if !class.contains(&prod) {
                violations.push(Violation {
                    kind: ClosureKind::DirectProduct,
                    detail: format!("samples {i} x {j}, order {}", prod.order()),
                });
            }
        }
    }
    Ok(ClosureAudit {
        class: class.name.clone(),
        samples_in_class: members.len(),
        checks,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    fn p(n: usize, s: &str) -> Permutation {
        Permutation::parse(n, s).unwrap()
    }

    fn group(n: usize, gens: &[&str]) -> FiniteGroup {
        FiniteGroup::from_generators(n, gens.iter().map(|s| p(n, s)).collect()).unwrap()
    }

    #[test]
    fn pair_examples() {
        let a5 = group(5, &["(1,2,3)", "(1,2,3,4,5)"]);
        let sol = GroupClass::soluble();
        assert!(!test_pair(&sol, &a5, &p(5, "(1,2,3)"), &p(5, "(1,2,3,4,5)")).unwrap());
        for c in GroupClass::builtins() {
            for y in a5.elements().unwrap() {
                assert!(test_pair(&c, &a5, &a5.identity(), y).unwrap());
            }
        }
        let s3 = group(3, &["(1,2)", "(1,2,3)"]);
        assert!(!test_pair(&GroupClass::nilpotent(), &s3, &p(3, "(1,2)"), &p(3, "(1,3)")).unwrap());
        assert!(matches!(
            test_pair(&sol, &a5, &p(5, "(1,2)"), &a5.identity()),
            Err(Error::NotInGroup(_))
        ));
    }

    #[test]
    fn classifier_symmetry_and_equivariance() {
        let s4 = group(4, &["(1,2)", "(1,2,3,4)"]);
        let els = s4.elements().unwrap();
        for class in GroupClass::builtins() {
            let c = Classifier::new(&s4, class);
            for (i, x) in els.iter().enumerate() {
                for (j, y) in els.iter().enumerate() {
                    let v = c.test_idx(i, j).unwrap();
                    assert_eq!(v, c.test_idx(j, i).unwrap());
                    let g = &els[(i * 7 + j) % 24];
                    assert_eq!(v, c.test(&x.conjugate_by(g), &y.conjugate_by(g)).unwrap());
                }
            }
        }
    }

    #[test]
    fn builtins_are_ordered() {
        let s4 = group(4, &["(1,2)", "(1,2,3,4)"]);
        let els = s4.elements().unwrap();
        let [ab, nil, sol] = GroupClass::builtins().map(|c| Classifier::new(&s4, c));
        for i in 0..24 {
            for j in 0..24 {
                let (a, n, s) = (
                    ab.test_idx(i, j).unwrap(),
                    nil.test_idx(i, j).unwrap(),
                    sol.test_idx(i, j).unwrap(),
                );
                assert!(!a || n);
                assert!(!n || s);
                assert_eq!(a, els[i].commutes_with(&els[j]));
            }
        }
    }

    #[test]
    fn unmaterialized_groups_fall_back() {
        let a5 = group(5, &["(1,2,3)", "(1,2,3,4,5)"]).with_cap(10);
        let c = Classifier::new(&a5, GroupClass::soluble());
        assert!(!c.test(&p(5, "(1,2,3)"), &p(5, "(1,2,3,4,5)")).unwrap());
        assert!(c.test(&p(5, "(1,2,3)"), &p(5, "(1,3,2)")).unwrap());
        assert_eq!(c.cached_pairs(), 0);
    }

    #[test]
    fn cache_round_trip() {
        let dir = std::env::temp_dir().join(format!("profgen-cache-{}", std::process::id()));
        let _ = std::fs::remove_file(&dir);
        let s3 = group(3, &["(1,2)", "(1,2,3)"]);
        let c = Classifier::new(&s3, GroupClass::nilpotent());
        for i in 0..6 {
            for j in 0..6 {
                c.test_idx(i, j).unwrap();
            }
        }
        c.save_cache(&dir).unwrap();
        let fresh = Classifier::new(&s3, GroupClass::nilpotent());
        assert_eq!(fresh.load_cache(&dir).unwrap(), c.cached_pairs());
        let other = Classifier::new(&s3, GroupClass::soluble());
        assert_eq!(other.load_cache(&dir).unwrap(), 0);
        std::fs::remove_file(&dir).unwrap();
    }

    #[test]
    fn audits() {
        let s4 = group(4, &["(1,2)", "(1,2,3,4)"]);
        let d8 = group(4, &["(1,2,3,4)", "(1,3)"]);
        let audit = closure_audit(&GroupClass::soluble(), &[s4, d8], 5, 0).unwrap();
        assert!(audit.passed(), "{audit:?}");
        assert_eq!(audit.samples_in_class, 2);

        let c6 = group(6, &["(1,2,3,4,5,6)"]);
        assert!(closure_audit(&GroupClass::abelian(), &[c6], 5, 0).unwrap().passed());

        let small = GroupClass::custom("order<=10", |g| *g.order() <= BigUint::from(10u32));
        let klein = group(4, &["(1,2)(3,4)", "(1,3)(2,4)"]);
        let c3 = group(3, &["(1,2,3)"]);
        let audit = closure_audit(&small, &[klein, c3], 3, 0).unwrap();
        assert!(!audit.passed());
        assert!(audit
            .violations
            .iter()
            .any(|v| v.kind == ClosureKind::DirectProduct && v.detail.contains("order 12")));
    }
}
