//! Deterministic Schreier–Sims stabilizer chains.

use num_bigint::BigUint;
use rand::Rng;

use crate::perm::Permutation;

#[derive(Clone, Debug)]
struct Level {
    base_point: usize,
    /// Strong generators fixing every earlier base point.
    gens: Vec<Permutation>,
    orbit: Vec<usize>,
    /// `transversal[c] = (u, u⁻¹)` with `base_point^u = c`, for `c` in the orbit.
    transversal: Vec<Option<(Permutation, Permutation)>>,
}

impl Level {
    fn new(degree: usize, base_point: usize) -> Self {
        let id = Permutation::identity(degree);
        let mut transversal = vec![None; degree];
        transversal[base_point] = Some((id.clone(), id));
        Level {
            base_point,
            gens: Vec::new(),
            orbit: vec![base_point],
            transversal,
        }
    }

    /// Adds a generator, extending the orbit and transversal in place.
    fn push_generator(&mut self, g: Permutation) {
        self.gens.push(g);
        let s = self.gens.len() - 1;
        let old = self.orbit.len();
        for k in 0..old {
            self.visit(self.orbit[k], s);
        }
        let mut k = old;
        while k < self.orbit.len() {
            let b = self.orbit[k];
            for s in 0..self.gens.len() {
                self.visit(b, s);
            }
            k += 1;
        }
    }

    fn visit(&mut self, b: usize, s: usize) {
        let c = self.gens[s].apply(b);
        if self.transversal[c].is_none() {
            let u = &self.transversal[b].as_ref().unwrap().0 * &self.gens[s];
            let ui = u.inverse();
            self.transversal[c] = Some((u, ui));
            self.orbit.push(c);
        }
    }
}

/// Base and strong generating set for a permutation group.
#[derive(Clone, Debug)]
pub struct StabChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabChain {
    pub fn trivial(degree: usize) -> Self {
        StabChain {
            degree,
            levels: Vec::new(),
        }
    }

    pub fn new(degree: usize, gens: &[Permutation]) -> Self {
        let mut chain = StabChain::trivial(degree);
        for g in gens {
            chain.add_generator(g);
        }
        chain
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    pub fn orbit_lengths(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels
            .iter()
            .fold(BigUint::from(1u32), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn order_u64(&self) -> Option<u64> {
        self.levels
            .iter()
            .try_fold(1u64, |acc, l| acc.checked_mul(l.orbit.len() as u64))
    }

    pub fn strong_generators(&self) -> Vec<Permutation> {
        self.levels.first().map(|l| l.gens.clone()).unwrap_or_default()
    }

    /// Sifts `g` starting at level `from`; returns the residue and the level at
    /// which sifting stopped (`levels.len()` if it went through every level).
    fn strip(&self, g: &Permutation, from: usize) -> (Permutation, usize) {
        let mut h = g.clone();
        for (i, level) in self.levels.iter().enumerate().skip(from) {
            let c = h.apply(level.base_point);
            match &level.transversal[c] {
                None => return (h, i),
                Some((_, ui)) => h = &h * ui,
            }
        }
        (h, self.levels.len())
    }

    /// Uniform random element: a product of one random transversal element per level.
    pub fn random_element<R: Rng + ?Sized>(&self, rng: &mut R) -> Permutation {
        let mut g = Permutation::identity(self.degree);
        for level in &self.levels {
            let c = level.orbit[rng.gen_range(0..level.orbit.len())];
            g = &level.transversal[c].as_ref().unwrap().0 * &g;
        }
        g
    }

    pub fn contains(&self, g: &Permutation) -> bool {
        let (h, j) = self.strip(g, 0);
        j == self.levels.len() && h.is_identity()
    }

    /// Adds `g` to the group; returns `false` if it was already a member.
    pub fn add_generator(&mut self, g: &Permutation) -> bool {
        assert_eq!(g.degree(), self.degree, "generator degree mismatch");
        let (h, j) = self.strip(g, 0);
        if j == self.levels.len() && h.is_identity() {
            return false;
        }
        self.insert_residue(h, 0, j);
        self.complete(j);
        true
    }

    /// Adds residue `h` (which fixes the first `j` base points) to levels `from..=j`.
    fn insert_residue(&mut self, h: Permutation, from: usize, j: usize) {
        if j == self.levels.len() {
            let point = h.first_moved().expect("nontrivial residue");
            self.levels.push(Level::new(self.degree, point));
        }
        for level in &mut self.levels[from..=j] {
            level.push_generator(h.clone());
        }
    }

    /// Runs the Schreier generator test downward from level `start`.
    fn complete(&mut self, start: usize) {
        let mut i = start as isize;
        while i >= 0 {
            let iu = i as usize;
            match self.failing_schreier_generator(iu) {
                Some((h, j)) => {
                    self.insert_residue(h, iu + 1, j);
                    i = j as isize;
                }
                None => i -= 1,
            }
        }
    }

    fn failing_schreier_generator(&self, i: usize) -> Option<(Permutation, usize)> {
        let level = &self.levels[i];
        for &b in &level.orbit {
            let (ub, _) = level.transversal[b].as_ref().unwrap();
            for s in &level.gens {
                let c = s.apply(b);
                let (_, uci) = level.transversal[c].as_ref().unwrap();
                let schreier = &(ub * s) * uci;
                if schreier.is_identity() {
                    continue;
                }
                let (h, j) = self.strip(&schreier, i + 1);
                if j < self.levels.len() || !h.is_identity() {
                    return Some((h, j));
                }
            }
        }
        None
    }
}
