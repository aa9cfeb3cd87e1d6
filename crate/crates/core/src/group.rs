//! Finite permutation groups: construction, membership, enumeration,
//! structural subgroups and series.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use rand::Rng;

use crate::chain::StabChain;
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Default bound on the number of elements a group may materialize.
pub const DEFAULT_CAP: usize = 100_000;

/// Canonical enumeration of a materialized group.
#[derive(Debug)]
pub struct Enumeration {
    elements: Vec<Permutation>,
    index: HashMap<Permutation, u32>,
}

impl Enumeration {
    /// Layered breadth-first closure from the identity, multiplying on the
    /// right by generators in their given order; each layer is sorted by
    /// image array.
    fn build(degree: usize, gens: &[Permutation]) -> Self {
        let id = Permutation::identity(degree);
        let mut index = HashMap::new();
        index.insert(id.clone(), 0u32);
        let mut elements = vec![id];
        let mut layer_start = 0;
        while layer_start < elements.len() {
            let layer_end = elements.len();
            let mut next = Vec::new();
            for k in layer_start..layer_end {
                for s in gens {
                    let y = &elements[k] * s;
                    if !index.contains_key(&y) {
                        index.insert(y.clone(), u32::MAX);
                        next.push(y);
                    }
                }
            }
            next.sort();
            for y in next {
                index.insert(y.clone(), elements.len() as u32);
                elements.push(y);
            }
            layer_start = layer_end;
        }
        Enumeration { elements, index }
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).map(|&i| i as usize)
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }
}

/// A subset of a materialized group, as sorted canonical element indices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    ambient: usize,
    members: Vec<u32>,
}

impl ElementSet {
    pub fn new(ambient: usize, members: impl IntoIterator<Item = usize>) -> Self {
        let mut members: Vec<u32> = members
            .into_iter()
            .map(|m| {
                assert!(m < ambient, "element index {m} out of range");
                m as u32
            })
            .collect();
        members.sort_unstable();
        members.dedup();
        ElementSet { ambient, members }
    }

    pub fn full(ambient: usize) -> Self {
        ElementSet {
            ambient,
            members: (0..ambient as u32).collect(),
        }
    }

    pub fn empty(ambient: usize) -> Self {
        ElementSet {
            ambient,
            members: Vec::new(),
        }
    }

    pub fn from_mask(mask: &[bool]) -> Self {
        ElementSet {
            ambient: mask.len(),
            members: (0..mask.len() as u32).filter(|&i| mask[i as usize]).collect(),
        }
    }

    pub fn ambient_order(&self) -> usize {
        self.ambient
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.binary_search(&(i as u32)).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.members.iter().map(|&m| m as usize)
    }

    pub fn mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.ambient];
        for i in self.iter() {
            mask[i] = true;
        }
        mask
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        ElementSet {
            ambient: self.ambient,
            members: self
                .members
                .iter()
                .copied()
                .filter(|&m| other.members.binary_search(&m).is_ok())
                .collect(),
        }
    }

    pub fn complement(&self) -> ElementSet {
        let mask = self.mask();
        ElementSet {
            ambient: self.ambient,
            members: (0..self.ambient as u32).filter(|&i| !mask[i as usize]).collect(),
        }
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.members
            .iter()
            .all(|m| other.members.binary_search(m).is_ok())
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ElementSet({}/{}: {:?})", self.len(), self.ambient, self.members)
    }
}

/// Conjugacy classes of a materialized group.
#[derive(Debug)]
pub struct ConjugacyClasses {
    /// Members of each class in increasing index order; the first is the representative.
    classes: Vec<Vec<u32>>,
    class_of: Vec<u32>,
    /// `conjugator[x] = g` with `rep(class_of[x])^g = x`.
    conjugator: Vec<u32>,
}

impl ConjugacyClasses {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn representatives(&self) -> impl Iterator<Item = usize> + '_ {
        self.classes.iter().map(|c| c[0] as usize)
    }

    /// `(representative, class size)` pairs.
    pub fn summary(&self) -> Vec<(usize, usize)> {
        self.classes.iter().map(|c| (c[0] as usize, c.len())).collect()
    }

    pub fn members(&self, class: usize) -> impl Iterator<Item = usize> + '_ {
        self.classes[class].iter().map(|&m| m as usize)
    }

    pub fn class_size(&self, class: usize) -> usize {
        self.classes[class].len()
    }

    pub fn class_of(&self, element: usize) -> usize {
        self.class_of[element] as usize
    }

    pub fn conjugator(&self, element: usize) -> usize {
        self.conjugator[element] as usize
    }
}

/// A descending or ascending series, stopped at the first repeated term.
#[derive(Clone, Debug)]
pub struct Series<T> {
    pub terms: Vec<T>,
    pub stabilized: bool,
}

impl<T> Series<T> {
    pub fn last(&self) -> &T {
        self.terms.last().expect("series has at least one term")
    }
}

/// A finite permutation group with a stabilizer-chain certificate.
#[derive(Clone)]
pub struct FiniteGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: StabChain,
    order: BigUint,
    cap: usize,
    name: Option<Arc<str>>,
    enumeration: OnceLock<Option<Arc<Enumeration>>>,
    classes: OnceLock<Arc<ConjugacyClasses>>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("degree", &self.degree)
            .field("generators", &self.generators)
            .field("order", &self.order)
            .finish()
    }
}

impl FiniteGroup {
    pub fn from_generators(degree: usize, gens: Vec<Permutation>) -> Result<Self> {
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let gens: Vec<Permutation> = gens.into_iter().filter(|g| !g.is_identity()).collect();
        Ok(Self::from_parts(degree, gens, DEFAULT_CAP))
    }

    fn from_parts(degree: usize, generators: Vec<Permutation>, cap: usize) -> Self {
        let chain = StabChain::new(degree, &generators);
        let order = chain.order();
        FiniteGroup {
            degree,
            generators,
            chain,
            order,
            cap,
            name: None,
            enumeration: OnceLock::new(),
            classes: OnceLock::new(),
        }
    }

    pub fn trivial(degree: usize) -> Self {
        Self::from_parts(degree, Vec::new(), DEFAULT_CAP)
    }

    /// Sets the materialization cap; resets any materialized data.
    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self.enumeration = OnceLock::new();
        self.classes = OnceLock::new();
        self
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(Arc::from(name.into()));
        self
    }

    /// Display label: the assigned name, or a fingerprint-derived id.
    pub fn name(&self) -> String {
        match &self.name {
            Some(n) => n.to_string(),
            None => format!("group:{:016x}", self.fingerprint()),
        }
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn chain(&self) -> &StabChain {
        &self.chain
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn order_usize(&self) -> Option<usize> {
        self.order.to_usize()
    }

    pub fn is_trivial(&self) -> bool {
        self.order.is_one()
    }

    pub fn identity(&self) -> Permutation {
        Permutation::identity(self.degree)
    }

    fn check_degree(&self, p: &Permutation) -> Result<()> {
        if p.degree() != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: p.degree(),
            });
        }
        Ok(())
    }

    pub fn contains(&self, p: &Permutation) -> Result<bool> {
        self.check_degree(p)?;
        Ok(self.chain.contains(p))
    }

    pub(crate) fn require_member(&self, p: &Permutation) -> Result<()> {
        if !self.contains(p)? {
            return Err(Error::NotInGroup(p.to_string()));
        }
        Ok(())
    }

    /// Stable 64-bit fingerprint of degree and generators (FNV-1a).
    pub fn fingerprint(&self) -> u64 {
        let mut h: u64 = 0xcbf29ce484222325;
        let mut feed = |x: u64| {
            for b in x.to_le_bytes() {
                h ^= b as u64;
                h = h.wrapping_mul(0x100000001b3);
            }
        };
        feed(self.degree as u64);
        for g in &self.generators {
            for i in g.images() {
                feed(i as u64);
            }
        }
        h
    }

    pub fn cap_error(&self) -> Error {
        Error::CapExceeded {
            cap: "materialization",
            needed: self.order.to_string(),
            limit: self.cap.to_string(),
        }
    }

    pub fn enumeration(&self) -> Result<&Enumeration> {
        let slot = self.enumeration.get_or_init(|| {
            match self.order.to_usize() {
                Some(n) if n <= self.cap => {
                    let e = Enumeration::build(self.degree, &self.generators);
                    debug_assert_eq!(e.len(), n);
                    Some(Arc::new(e))
                }
                _ => None,
            }
        });
        slot.as_deref().ok_or_else(|| self.cap_error())
    }

    pub fn elements(&self) -> Result<&[Permutation]> {
        Ok(self.enumeration()?.elements())
    }

    pub fn index_of(&self, p: &Permutation) -> Result<usize> {
        self.check_degree(p)?;
        self.enumeration()?
            .index_of(p)
            .ok_or_else(|| Error::NotInGroup(p.to_string()))
    }

    pub fn element(&self, i: usize) -> Result<&Permutation> {
        Ok(self.enumeration()?.element(i))
    }

    /// Uniformly random element, drawn through the stabilizer chain transversals.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        self.chain.random_element(rng)
    }

    pub fn subgroup(&self, gens: &[Permutation]) -> Result<FiniteGroup> {
        for g in gens {
            self.require_member(g)?;
        }
        Ok(Self::from_parts(
            self.degree,
            gens.iter().filter(|g| !g.is_identity()).cloned().collect(),
            self.cap,
        ))
    }

    /// Subgroup generated by a set of elements given by index.
    pub fn subgroup_of_set(&self, set: &ElementSet) -> Result<FiniteGroup> {
        let e = self.enumeration()?;
        let mut chain = StabChain::trivial(self.degree);
        let mut gens = Vec::new();
        for i in set.iter() {
            let x = e.element(i);
            if chain.add_generator(x) {
                gens.push(x.clone());
            }
        }
        Ok(Self::from_parts(self.degree, gens, self.cap))
    }

    pub fn is_subgroup_of(&self, other: &FiniteGroup) -> bool {
        self.degree == other.degree && self.generators.iter().all(|g| other.chain.contains(g))
    }

    /// Normal closure of `set` under conjugation by this group.
    pub fn normal_closure(&self, set: &[Permutation]) -> Result<FiniteGroup> {
        for s in set {
            self.require_member(s)?;
        }
        Ok(self.normal_closure_unchecked(set))
    }

    pub(crate) fn normal_closure_unchecked(&self, set: &[Permutation]) -> FiniteGroup {
        let mut chain = StabChain::trivial(self.degree);
        let mut gens = Vec::new();
        let mut queue = Vec::new();
        for s in set {
            if chain.add_generator(s) {
                gens.push(s.clone());
                queue.push(s.clone());
            }
        }
        let mut k = 0;
        while k < queue.len() {
            let n = queue[k].clone();
            for g in &self.generators {
                let c = n.conjugate_by(g);
                if chain.add_generator(&c) {
                    gens.push(c.clone());
                    queue.push(c);
                }
            }
            k += 1;
        }
        let order = chain.order();
        FiniteGroup {
            degree: self.degree,
            generators: gens,
            chain,
            order,
            cap: self.cap,
            name: None,
            enumeration: OnceLock::new(),
            classes: OnceLock::new(),
        }
    }

    /// Normality of `sub` in `self`, checked on generators.
    pub fn normalizes(&self, sub: &FiniteGroup) -> bool {
        sub.is_subgroup_of(self)
            && sub.generators.iter().all(|n| {
                self.generators
                    .iter()
                    .all(|g| sub.chain.contains(&n.conjugate_by(g)))
            })
    }

    pub fn centralizer(&self, x: &Permutation) -> Result<ElementSet> {
        self.require_member(x)?;
        let e = self.enumeration()?;
        Ok(ElementSet::new(
            e.len(),
            (0..e.len()).filter(|&i| e.element(i).commutes_with(x)),
        ))
    }

    pub fn center(&self) -> Result<ElementSet> {
        let e = self.enumeration()?;
        Ok(ElementSet::new(
            e.len(),
            (0..e.len()).filter(|&i| {
                let z = e.element(i);
                self.generators.iter().all(|g| z.commutes_with(g))
            }),
        ))
    }

    pub fn conjugacy_classes(&self) -> Result<&ConjugacyClasses> {
        let e = self.enumeration()?;
        Ok(self.classes.get_or_init(|| Arc::new(self.compute_classes(e))))
    }

    fn compute_classes(&self, e: &Enumeration) -> ConjugacyClasses {
        let n = e.len();
        let mut class_of = vec![u32::MAX; n];
        let mut conjugator = vec![0u32; n];
        let gen_idx: Vec<usize> = self
            .generators
            .iter()
            .map(|g| e.index_of(g).expect("generator enumerated"))
            .collect();
        let mut classes = Vec::new();
        for start in 0..n {
            if class_of[start] != u32::MAX {
                continue;
            }
            let cid = classes.len() as u32;
            class_of[start] = cid;
            conjugator[start] = 0;
            let mut orbit = vec![start as u32];
            let mut k = 0;
            while k < orbit.len() {
                let x = orbit[k] as usize;
                let gx = conjugator[x] as usize;
                for (s, &si) in self.generators.iter().zip(&gen_idx) {
                    let y = e.element(x).conjugate_by(s);
                    let yi = e.index_of(&y).expect("closed under conjugation");
                    if class_of[yi] == u32::MAX {
                        class_of[yi] = cid;
                        let g = e.element(gx) * e.element(si);
                        conjugator[yi] = e.index_of(&g).expect("closed") as u32;
                        orbit.push(yi as u32);
                    }
                }
                k += 1;
            }
            orbit.sort_unstable();
            classes.push(orbit);
        }
        ConjugacyClasses {
            classes,
            class_of,
            conjugator,
        }
    }

    pub fn derived_subgroup(&self) -> FiniteGroup {
        let mut comms = Vec::new();
        for (i, a) in self.generators.iter().enumerate() {
            for b in &self.generators[i + 1..] {
                comms.push(Permutation::commutator(a, b));
            }
        }
        self.normal_closure_unchecked(&comms)
    }

    /// `[self, G]` where `self` is normal in `ambient`.
    fn commutator_with(&self, ambient: &FiniteGroup) -> FiniteGroup {
        let mut comms = Vec::new();
        for a in &self.generators {
            for g in &ambient.generators {
                comms.push(Permutation::commutator(a, g));
            }
        }
        ambient.normal_closure_unchecked(&comms)
    }

    pub fn derived_series(&self) -> Series<FiniteGroup> {
        let mut terms = vec![self.clone()];
        loop {
            let last = terms.last().unwrap();
            if last.is_trivial() {
                break;
            }
            let next = last.derived_subgroup();
            if next.order == last.order {
                break;
            }
            terms.push(next);
        }
        Series {
            terms,
            stabilized: true,
        }
    }

    pub fn lower_central_series(&self) -> Series<FiniteGroup> {
        let mut terms = vec![self.clone()];
        loop {
            let last = terms.last().unwrap();
            if last.is_trivial() {
                break;
            }
            let next = last.commutator_with(self);
            if next.order == last.order {
                break;
            }
            terms.push(next);
        }
        Series {
            terms,
            stabilized: true,
        }
    }

    /// `Z_{i+1} = { x : [x, g] ∈ Z_i for every generator g }`, starting from `Z_0 = 1`.
    pub fn upper_central_series(&self) -> Result<Series<ElementSet>> {
        let e = self.enumeration()?;
        let n = e.len();
        let mut current = vec![false; n];
        current[0] = true;
        let mut terms = vec![ElementSet::from_mask(&current)];
        loop {
            let next: Vec<bool> = (0..n)
                .map(|i| {
                    let x = e.element(i);
                    self.generators.iter().all(|g| {
                        let c = Permutation::commutator(x, g);
                        current[e.index_of(&c).expect("closed")]
                    })
                })
                .collect();
            let set = ElementSet::from_mask(&next);
            if set.len() == terms.last().unwrap().len() {
                break;
            }
            terms.push(set);
            current = next;
        }
        Ok(Series {
            terms,
            stabilized: true,
        })
    }

    pub fn is_abelian(&self) -> bool {
        generators_commute(&self.generators)
    }

    /// Distinct prime divisors of the order, read off the orbit lengths.
    pub fn order_primes(&self) -> Vec<u64> {
        let mut primes = Vec::new();
        for len in self.chain.orbit_lengths() {
            let mut m = len as u64;
            let mut p = 2;
            while p * p <= m {
                if m % p == 0 {
                    primes.push(p);
                    while m % p == 0 {
                        m /= p;
                    }
                }
                p += 1;
            }
            if m > 1 {
                primes.push(m);
            }
        }
        primes.sort_unstable();
        primes.dedup();
        primes
    }

    /// Groups of odd order (Feit–Thompson) and of order `p^a q^b` (Burnside)
    /// are soluble; otherwise the derived series decides.
    pub fn is_soluble(&self) -> bool {
        let primes = self.order_primes();
        if primes.len() <= 2 || primes[0] != 2 {
            return true;
        }
        self.is_soluble_by_series()
    }

    pub(crate) fn is_soluble_by_series(&self) -> bool {
        let mut h = self.clone();
        while !h.is_trivial() {
            let next = h.derived_subgroup();
            if next.order == h.order {
                return false;
            }
            h = next;
        }
        true
    }

    /// `p`-groups are nilpotent. Otherwise a generator's `p`-part failing to
    /// commute with another's `q`-part (for primes `p ≠ q`) rules nilpotence
    /// out, and the lower central series decides the rest.
    pub fn is_nilpotent(&self) -> bool {
        let primes = self.order_primes();
        if primes.len() <= 1 {
            return true;
        }
        let parts: Vec<Vec<(u64, Permutation)>> = self.generators.iter().map(|g| prime_parts(g, &primes)).collect();
        for (i, a) in parts.iter().enumerate() {
            for b in &parts[i + 1..] {
                for (p, x) in a {
                    for (q, y) in b {
                        if p != q && !x.commutes_with(y) {
                            return false;
                        }
                    }
                }
            }
        }
        self.is_nilpotent_by_series()
    }

    pub(crate) fn is_nilpotent_by_series(&self) -> bool {
        let mut h = self.clone();
        while !h.is_trivial() {
            let next = h.commutator_with(self);
            if next.order == h.order {
                return false;
            }
            h = next;
        }
        true
    }

    /// Nontrivial with no proper nontrivial normal subgroup.
    pub fn is_simple(&self) -> Result<bool> {
        if self.is_trivial() {
            return Ok(false);
        }
        let classes = self.conjugacy_classes()?;
        let e = self.enumeration()?;
        Ok(classes
            .representatives()
            .filter(|&r| r != 0)
            .all(|r| self.normal_closure_unchecked(&[e.element(r).clone()]).order == self.order))
    }

    /// Direct product on disjoint supports: `a` on the first points, `b` after.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
        let total = a.degree + b.degree;
        let gens = a
            .generators
            .iter()
            .map(|g| g.shifted(0, total))
            .chain(b.generators.iter().map(|g| g.shifted(a.degree, total)))
            .collect();
        Self::from_parts(total, gens, a.cap.max(b.cap))
    }

    /// Quotient `self / normal`, realized by the action on cosets of `normal`.
    pub fn quotient(&self, normal: &FiniteGroup) -> Result<Quotient> {
        if normal.degree != self.degree || !self.normalizes(normal) {
            return Err(Error::NotNormal(format!(
                "subgroup of order {} in group of order {}",
                normal.order, self.order
            )));
        }
        let index = &self.order / &normal.order;
        let index = match index.to_usize() {
            Some(i) if i <= self.cap => i,
            _ => {
                return Err(Error::CapExceeded {
                    cap: "materialization",
                    needed: index.to_string(),
                    limit: self.cap.to_string(),
                })
            }
        };
        let id = self.identity();
        let mut q = Quotient {
            group: FiniteGroup::trivial(1),
            reps: vec![id.clone()],
            lookup: HashMap::new(),
            keyer: CosetKeyer::new(normal),
        };
        if let CosetKeyer::Materialized(_) = q.keyer {
            q.lookup.insert(q.keyer.key(&id), 0);
        }
        let mut k = 0;
        while k < q.reps.len() {
            for s in &self.generators {
                let y = &q.reps[k] * s;
                if q.locate(&y).is_none() {
                    if let CosetKeyer::Materialized(_) = q.keyer {
                        q.lookup.insert(q.keyer.key(&y), q.reps.len());
                    }
                    q.reps.push(y);
                }
            }
            k += 1;
        }
        debug_assert_eq!(q.reps.len(), index);
        let gens: Vec<Permutation> = self
            .generators
            .iter()
            .map(|g| q.coset_action(g))
            .filter(|g| !g.is_identity())
            .collect();
        q.group = Self::from_parts(q.reps.len(), gens, self.cap);
        Ok(q)
    }
}

/// Nontrivial `p`-parts of `g` for the given primes.
pub(crate) fn prime_parts(g: &Permutation, primes: &[u64]) -> Vec<(u64, Permutation)> {
    let order = g.order();
    primes
        .iter()
        .filter(|&&p| order % p == 0)
        .map(|&p| {
            let mut rest = order;
            while rest % p == 0 {
                rest /= p;
            }
            (p, g.pow(rest))
        })
        .collect()
}

pub(crate) fn generators_commute(gens: &[Permutation]) -> bool {
    gens.iter()
        .enumerate()
        .all(|(i, a)| gens[i + 1..].iter().all(|b| a.commutes_with(b)))
}

/// Canonical keys for right cosets `N g` (equal to left cosets, `N` being normal).
enum CosetKeyer {
    /// Minimal element of `N g` under the image-array order.
    Materialized(Vec<Permutation>),
    /// Pairwise membership tests `g h⁻¹ ∈ N` against stored representatives.
    Chain(StabChain),
}

impl CosetKeyer {
    fn new(normal: &FiniteGroup) -> Self {
        match normal.elements() {
            Ok(els) if els.len() <= 4096 => CosetKeyer::Materialized(els.to_vec()),
            _ => CosetKeyer::Chain(normal.chain.clone()),
        }
    }

    fn key(&self, g: &Permutation) -> Permutation {
        match self {
            CosetKeyer::Materialized(els) => els.iter().map(|n| n * g).min().unwrap(),
            CosetKeyer::Chain(_) => unreachable!("chain cosets have no canonical key"),
        }
    }
}

/// `G/N` acting on cosets, with the projection `G → G/N`.
#[derive(Debug)]
pub struct Quotient {
    group: FiniteGroup,
    reps: Vec<Permutation>,
    lookup: HashMap<Permutation, usize>,
    keyer: CosetKeyer,
}

impl fmt::Debug for CosetKeyer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CosetKeyer::Materialized(e) => write!(f, "Materialized({})", e.len()),
            CosetKeyer::Chain(_) => f.write_str("Chain"),
        }
    }
}

impl Quotient {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn into_group(self) -> FiniteGroup {
        self.group
    }

    pub fn index(&self) -> usize {
        self.reps.len()
    }

    /// Coset representatives; index `i` is the point `i` of the quotient action.
    pub fn representatives(&self) -> &[Permutation] {
        &self.reps
    }

    fn locate(&self, g: &Permutation) -> Option<usize> {
        match &self.keyer {
            CosetKeyer::Materialized(_) => self.lookup.get(&self.keyer.key(g)).copied(),
            CosetKeyer::Chain(n) => {
                let gi = g.inverse();
                self.reps.iter().position(|r| n.contains(&(r * &gi)))
            }
        }
    }

    /// Point (coset index) containing `g`.
    pub fn coset_of(&self, g: &Permutation) -> usize {
        self.locate(g).expect("element lies in some coset")
    }

    fn coset_action(&self, g: &Permutation) -> Permutation {
        let images = self.reps.iter().map(|r| self.coset_of(&(r * g))).collect();
        Permutation::from_images(images).expect("coset action is a bijection")
    }

    /// Image of `g` in the quotient.
    pub fn project(&self, g: &Permutation) -> Permutation {
        if self.reps.len() == 1 {
            return self.group.identity();
        }
        self.coset_action(g)
    }
}
