//! The graphs `Γ_C(G)`: vertices `G ∖ Ω_C(G)`, with two distinct vertices
//! adjacent when they generate a subgroup in `C`.
//!
//! Adjacency is invariant under conjugation, so only the rows of conjugacy
//! class representatives are ever classified. The row of `r^g` is the row of
//! `r` conjugated by `g`; eccentricities are likewise computed from class
//! representatives only.

use std::collections::VecDeque;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::classc::{test_pair, Classifier, GroupClass};
use crate::error::{Error, Result};
use crate::group::{ElementSet, FiniteGroup};
use crate::probability::{omega_global, soluble_radical};

/// Adjacency lists are stored for every vertex up to this many vertices.
pub const MATERIALIZE_MAX_VERTICES: usize = 20_000;

/// DOT output is refused above this many vertices.
pub const DOT_MAX_VERTICES: usize = 500;

const NONE: u32 = u32::MAX;

/// `Γ_C(G)` over canonical element indices.
pub struct ClassGraph<'g> {
    classifier: Classifier<'g>,
    vertices: ElementSet,
    is_vertex: Vec<bool>,
    /// Neighbours of each class representative that is a vertex, by class id.
    rep_rows: Vec<Option<Vec<u32>>>,
    /// Neighbours of every vertex, when materialized.
    rows: Option<Vec<Vec<u32>>>,
}

impl std::fmt::Debug for ClassGraph<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ClassGraph")
            .field("group", &self.group().name())
            .field("class", &self.class().name())
            .field("vertices", &self.vertices.len())
            .field("materialized", &self.rows.is_some())
            .finish()
    }
}

/// Builds `Γ_C(G)` for the classifier's group and class.
pub fn build_graph(classifier: Classifier<'_>) -> Result<ClassGraph<'_>> {
    build_graph_with(classifier, MATERIALIZE_MAX_VERTICES)
}

/// As [`build_graph`], materializing adjacency only up to `threshold` vertices.
pub fn build_graph_with(classifier: Classifier<'_>, threshold: usize) -> Result<ClassGraph<'_>> {
    let g = classifier.group();
    let e = g.enumeration()?;
    let classes = g.conjugacy_classes()?;
    let vertices = omega_global(&classifier)?.complement();
    let is_vertex = vertices.mask();
    let reps: Vec<usize> = classes.representatives().collect();
    let rep_rows: Vec<Option<Vec<u32>>> = reps
        .par_iter()
        .map(|&r| {
            if !is_vertex[r] {
                return Ok(None);
            }
            let mut row = Vec::new();
            for y in vertices.iter() {
                if y != r && classifier.test_idx(r, y)? {
                    row.push(y as u32);
                }
            }
            Ok(Some(row))
        })
        .collect::<Result<_>>()?;
    let mut graph = ClassGraph {
        classifier,
        vertices,
        is_vertex,
        rep_rows,
        rows: None,
    };
    if graph.vertices.len() <= threshold {
        let rows: Vec<Vec<u32>> = (0..e.len())
            .into_par_iter()
            .map(|x| if graph.is_vertex[x] { graph.compute_row(x) } else { Vec::new() })
            .collect();
        graph.rows = Some(rows);
    }
    Ok(graph)
}

/// Convenience wrapper: builds the graph for `class` on `group`.
pub fn build_class_graph(group: &FiniteGroup, class: GroupClass) -> Result<ClassGraph<'_>> {
    build_graph(Classifier::new(group, class))
}

impl<'g> ClassGraph<'g> {
    pub fn group(&self) -> &'g FiniteGroup {
        self.classifier.group()
    }

    pub fn class(&self) -> &GroupClass {
        self.classifier.class()
    }

    pub fn classifier(&self) -> &Classifier<'g> {
        &self.classifier
    }

    pub fn vertices(&self) -> &ElementSet {
        &self.vertices
    }

    pub fn is_vertex(&self, x: usize) -> bool {
        self.is_vertex[x]
    }

    pub fn is_materialized(&self) -> bool {
        self.rows.is_some()
    }

    fn compute_row(&self, x: usize) -> Vec<u32> {
        let g = self.group();
        let e = g.enumeration().expect("materialized");
        let classes = g.conjugacy_classes().expect("materialized");
        let k = classes.class_of(x);
        let rep_row = self.rep_rows[k].as_ref().expect("vertex class has a row");
        let c = classes.conjugator(x);
        if c == 0 {
            return rep_row.clone();
        }
        let conj = e.element(c);
        let mut row: Vec<u32> = rep_row
            .iter()
            .map(|&w| e.index_of(&e.element(w as usize).conjugate_by(conj)).expect("closed") as u32)
            .collect();
        row.sort_unstable();
        row
    }

    /// Sorted neighbours of vertex `x` (empty for non-vertices).
    pub fn neighbours(&self, x: usize) -> Vec<u32> {
        if !self.is_vertex[x] {
            return Vec::new();
        }
        match &self.rows {
            Some(rows) => rows[x].clone(),
            None => self.compute_row(x),
        }
    }

    fn with_row<T>(&self, x: usize, f: impl FnOnce(&[u32]) -> T) -> T {
        match &self.rows {
            Some(rows) => f(&rows[x]),
            None => f(&self.neighbours(x)),
        }
    }

    pub fn adjacent(&self, x: usize, y: usize) -> bool {
        x != y
            && self.is_vertex[x]
            && self.is_vertex[y]
            && self.with_row(x, |row| row.binary_search(&(y as u32)).is_ok())
    }

    /// Edge count, from the degrees of class representatives.
    pub fn edge_count(&self) -> u64 {
        let classes = self.group().conjugacy_classes().expect("materialized");
        let twice: u64 = (0..classes.len())
            .filter_map(|k| self.rep_rows[k].as_ref().map(|r| r.len() as u64 * classes.class_size(k) as u64))
            .sum();
        twice / 2
    }

    /// Distances from `source` within its component (`NONE` when unreachable).
    fn bfs(&self, source: usize) -> Vec<u32> {
        let n = self.is_vertex.len();
        let mut dist = vec![NONE; n];
        dist[source] = 0;
        let mut queue = VecDeque::from([source]);
        while let Some(x) = queue.pop_front() {
            let d = dist[x] + 1;
            self.with_row(x, |row| {
                for &y in row {
                    if dist[y as usize] == NONE {
                        dist[y as usize] = d;
                        queue.push_back(y as usize);
                    }
                }
            });
        }
        dist
    }

    /// Connected components (labelled by their minimal vertex) and diameters.
    pub fn components_and_diameters(&self) -> GraphReport {
        let g = self.group();
        let classes = g.conjugacy_classes().expect("materialized");
        let n = self.is_vertex.len();

        let mut label = vec![NONE; n];
        let mut components: Vec<(u32, Vec<u32>)> = Vec::new();
        for v in self.vertices.iter() {
            if label[v] != NONE {
                continue;
            }
            let id = v as u32;
            label[v] = id;
            let mut members = vec![id];
            let mut k = 0;
            while k < members.len() {
                let x = members[k] as usize;
                self.with_row(x, |row| {
                    for &y in row {
                        if label[y as usize] == NONE {
                            label[y as usize] = id;
                            members.push(y);
                        }
                    }
                });
                k += 1;
            }
            components.push((id, members));
        }

        // Conjugation is a graph automorphism, so every vertex has the
        // eccentricity of its class representative.
        let sources: Vec<(usize, usize)> = (0..classes.len())
            .filter(|&k| self.rep_rows[k].is_some())
            .map(|k| (k, classes.members(k).next().unwrap()))
            .collect();
        let ecc_by_class: Vec<(usize, u32)> = sources
            .par_iter()
            .map(|&(k, r)| {
                let ecc = self.bfs(r).into_iter().filter(|&d| d != NONE).max().unwrap_or(0);
                (k, ecc)
            })
            .collect();
        let mut ecc = vec![0u32; classes.len()];
        for (k, d) in ecc_by_class {
            ecc[k] = d;
        }

        let components: Vec<ComponentReport> = components
            .into_iter()
            .map(|(id, members)| ComponentReport {
                label: id as usize,
                size: members.len(),
                diameter: if members.len() < 2 {
                    0
                } else {
                    members.iter().map(|&x| ecc[classes.class_of(x as usize)]).max().unwrap_or(0)
                },
            })
            .collect();
        GraphReport {
            group: g.name(),
            class: self.class().name().to_string(),
            order: g.order().to_string(),
            vertices: self.vertices.len(),
            edges: Some(self.edge_count()),
            connected: components.len() == 1,
            max_diameter: components.iter().map(|c| c.diameter).max().unwrap_or(0),
            components,
        }
    }

    /// DOT dump of the edge set, vertices labelled in cycle notation.
    pub fn to_dot(&self) -> Result<String> {
        if self.vertices.len() > DOT_MAX_VERTICES {
            return Err(Error::CapExceeded {
                cap: "dot vertices",
                needed: self.vertices.len().to_string(),
                limit: DOT_MAX_VERTICES.to_string(),
            });
        }
        let e = self.group().enumeration()?;
        let mut out = String::from("graph G {\n");
        for v in self.vertices.iter() {
            let _ = writeln!(out, "  {v} [label=\"{}\"];", e.element(v));
        }
        for x in self.vertices.iter() {
            for y in self.neighbours(x) {
                if (y as usize) > x {
                    let _ = writeln!(out, "  {x} -- {y};");
                }
            }
        }
        out.push_str("}\n");
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComponentReport {
    /// Minimal vertex index in the component.
    pub label: usize,
    pub size: usize,
    pub diameter: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GraphReport {
    pub group: String,
    pub class: String,
    pub order: String,
    pub vertices: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edges: Option<u64>,
    pub connected: bool,
    pub components: Vec<ComponentReport>,
    pub max_diameter: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CompatibilityReport {
    pub group: String,
    pub radical_order: usize,
    pub quotient_order: usize,
    pub vertices: usize,
    pub quotient_vertices: usize,
    /// `x` is a vertex of `Γ_S(G)` iff `xR` is a vertex of `Γ_S(G/R)`.
    pub vertices_correspond: bool,
    pub pairs_checked: u64,
    pub mismatches: u64,
    pub max_diameter: u32,
    pub quotient_max_diameter: u32,
    pub passed: bool,
}

/// Checks that `g1, g2` are adjacent in `Γ_S(G)` exactly when their images
/// are adjacent in `Γ_S(G/R(G))`, counting equal images as adjacent: distinct
/// elements of one coset of `R(G)` always generate a soluble subgroup.
pub fn quotient_graph_compatibility(g: &FiniteGroup) -> Result<CompatibilityReport> {
    let radical_set = soluble_radical(g)?;
    let radical = g.subgroup_of_set(&radical_set)?;
    let quotient = g.quotient(&radical)?;
    let q = quotient.group();
    let gamma = build_class_graph(g, GroupClass::soluble())?;
    let gamma_q = build_class_graph(q, GroupClass::soluble())?;

    let e = g.enumeration()?;
    let eq = q.enumeration()?;
    let image: Vec<usize> = e
        .elements()
        .par_iter()
        .map(|x| eq.index_of(&quotient.project(x)).expect("projection lands in quotient"))
        .collect();
    let vertices_correspond = (0..e.len()).all(|x| gamma.is_vertex(x) == gamma_q.is_vertex(image[x]));

    let verts: Vec<usize> = gamma.vertices().iter().collect();
    let (pairs_checked, mismatches) = verts
        .par_iter()
        .map(|&x| {
            let row = gamma.neighbours(x);
            let mut bad = 0u64;
            for &y in &verts {
                if y == x {
                    continue;
                }
                let in_g = row.binary_search(&(y as u32)).is_ok();
                let in_q = image[x] == image[y] || gamma_q.adjacent(image[x], image[y]);
                bad += (in_g != in_q) as u64;
            }
            (verts.len() as u64 - 1, bad)
        })
        .reduce(|| (0, 0), |a, b| (a.0 + b.0, a.1 + b.1));

    let max_diameter = gamma.components_and_diameters().max_diameter;
    let quotient_max_diameter = gamma_q.components_and_diameters().max_diameter;
    Ok(CompatibilityReport {
        group: g.name(),
        radical_order: radical_set.len(),
        quotient_order: eq.len(),
        vertices: gamma.vertices().len(),
        quotient_vertices: gamma_q.vertices().len(),
        vertices_correspond,
        pairs_checked,
        mismatches,
        max_diameter,
        quotient_max_diameter,
        passed: vertices_correspond && mismatches == 0 && max_diameter == quotient_max_diameter,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolubilizerCheck {
    pub representative: String,
    pub solubilizer_size: usize,
    pub cyclic_size: usize,
    /// `Ω_S(g, G) ⊋ ⟨g⟩`.
    pub proper: bool,
    /// Some `a, b ∈ Ω_S(g, G)` do not commute.
    pub noncommuting: bool,
}

/// For each class representative `g`, whether the solubilizer properly
/// contains `⟨g⟩` and contains a non-commuting pair.
pub fn solubilizer_checks(g: &FiniteGroup) -> Result<Vec<SolubilizerCheck>> {
    let c = Classifier::new(g, GroupClass::soluble());
    let e = g.enumeration()?;
    let reps: Vec<usize> = g.conjugacy_classes()?.representatives().collect();
    reps.par_iter()
        .map(|&r| {
            let x = e.element(r);
            let om = crate::probability::omega_idx(&c, r)?;
            let cyclic = x.order() as usize;
            let powers_inside = (0..x.order()).all(|k| om.contains(e.index_of(&x.pow(k)).unwrap()));
            let members: Vec<usize> = om.iter().collect();
            let noncommuting = members.iter().enumerate().any(|(i, &a)| {
                members[i + 1..].iter().any(|&b| !e.element(a).commutes_with(e.element(b)))
            });
            Ok(SolubilizerCheck {
                representative: x.to_string(),
                solubilizer_size: om.len(),
                cyclic_size: cyclic,
                proper: powers_inside && om.len() > cyclic,
                noncommuting,
            })
        })
        .collect()
}

/// `⟨x, y⟩ ∈ C` for two vertices, bypassing any graph cache.
pub fn adjacent_uncached(class: &GroupClass, g: &FiniteGroup, x: usize, y: usize) -> Result<bool> {
    let e = g.enumeration()?;
    Ok(x != y && test_pair(class, g, e.element(x), e.element(y))?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn soluble_group_has_empty_graph() {
        let s4 = catalog::load("S4").unwrap();
        let gamma = build_class_graph(&s4, GroupClass::soluble()).unwrap();
        assert!(gamma.vertices().is_empty());
        let r = gamma.components_and_diameters();
        assert!(r.components.is_empty());
        assert_eq!(r.max_diameter, 0);
    }

    #[test]
    fn commuting_graph_of_s3() {
        let s3 = catalog::load("S3").unwrap();
        let gamma = build_class_graph(&s3, GroupClass::abelian()).unwrap();
        assert_eq!(gamma.vertices().len(), 5);
        let e = s3.enumeration().unwrap();
        for x in gamma.vertices().iter() {
            for y in gamma.vertices().iter() {
                let expect = x != y && e.element(x).commutes_with(e.element(y));
                assert_eq!(gamma.adjacent(x, y), expect);
            }
        }
        // the two 3-cycles form one edge, the three reflections are isolated
        let r = gamma.components_and_diameters();
        let mut sizes: Vec<_> = r.components.iter().map(|c| (c.size, c.diameter)).collect();
        sizes.sort();
        assert_eq!(sizes, vec![(1, 0), (1, 0), (1, 0), (2, 1)]);
        assert_eq!(r.edges, Some(1));
    }

    #[test]
    fn nilpotent_graph_of_s3_matches_pair_check() {
        let s3 = catalog::load("S3").unwrap();
        let gamma = build_class_graph(&s3, GroupClass::nilpotent()).unwrap();
        assert_eq!(gamma.vertices().len(), 5);
        for x in gamma.vertices().iter() {
            for y in gamma.vertices().iter() {
                let expect = adjacent_uncached(&GroupClass::nilpotent(), &s3, x, y).unwrap();
                assert_eq!(gamma.adjacent(x, y), expect);
            }
        }
    }

    #[test]
    fn alt5_soluble_graph() {
        let a5 = catalog::load("A5").unwrap();
        let gamma = build_class_graph(&a5, GroupClass::soluble()).unwrap();
        assert_eq!(gamma.vertices().len(), 59);
        let r = gamma.components_and_diameters();
        assert!(r.connected);
        assert!(r.max_diameter <= 5);
    }

    #[test]
    fn implicit_adjacency_agrees() {
        let a5 = catalog::load("A5").unwrap();
        let stored = build_class_graph(&a5, GroupClass::nilpotent()).unwrap();
        let implicit = build_graph_with(Classifier::new(&a5, GroupClass::nilpotent()), 0).unwrap();
        assert!(stored.is_materialized() && !implicit.is_materialized());
        for x in 0..60 {
            assert_eq!(stored.neighbours(x), implicit.neighbours(x));
        }
        assert_eq!(stored.components_and_diameters(), implicit.components_and_diameters());
    }

    #[test]
    fn centerless_quotient_compatibility_is_trivial() {
        let a5 = catalog::load("A5").unwrap();
        let r = quotient_graph_compatibility(&a5).unwrap();
        assert_eq!(r.radical_order, 1);
        assert!(r.passed, "{r:?}");
        let s4 = catalog::load("S4").unwrap();
        let r = quotient_graph_compatibility(&s4).unwrap();
        assert_eq!((r.vertices, r.quotient_vertices), (0, 0));
        assert!(r.passed);
    }

    #[test]
    fn dot_output() {
        let s3 = catalog::load("S3").unwrap();
        let gamma = build_class_graph(&s3, GroupClass::abelian()).unwrap();
        let dot = gamma.to_dot().unwrap();
        assert_eq!(dot.matches(" -- ").count(), 1);
        assert!(dot.contains("(1,2,3)"));
    }
}
