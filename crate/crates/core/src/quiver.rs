//! The compatibility graph on subsets of `S`: vertices are generator bitmasks,
//! with an edge `I <- J` exactly when `I\J` is nonempty and no element of `I\J`
//! commutes with an element of `J\I`. Inclusion edges have `J` inside `I`;
//! everything else is transversal and comes in opposite pairs.

use crate::coxeter::CoxeterSystem;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum QuiverError {
    #[error("rank {0} too large for subset bitmasks (max 20)")]
    TooLarge(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeKind {
    Inclusion,
    Transversal,
    None,
}

/// Vertex set `2^S` plus the directed edge relation; `loose` keeps every pair
/// with nonempty `I\J` regardless of commutation (used to check that the
/// defining ideal forces the dropped edge elements to vanish).
#[derive(Debug)]
pub struct Quiver {
    n: usize,
    gen_names: Vec<String>,
    /// out[I] = sorted list of J with an edge (I, J)
    out: Vec<Vec<u32>>,
    /// into[J] = sorted list of I with an edge (I, J)
    into: Vec<Vec<u32>>,
    loose: bool,
}

impl Quiver {
    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        1 << self.n
    }

    pub fn vertices(&self) -> impl Iterator<Item = u32> {
        0..(1u32 << self.n)
    }

    pub fn is_loose(&self) -> bool {
        self.loose
    }

    pub fn has_edge(&self, i: u32, j: u32) -> bool {
        self.out[i as usize].binary_search(&j).is_ok()
    }

    pub fn out_edges(&self, i: u32) -> &[u32] {
        &self.out[i as usize]
    }

    pub fn in_edges(&self, j: u32) -> &[u32] {
        &self.into[j as usize]
    }

    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.vertices()
            .flat_map(move |i| self.out[i as usize].iter().map(move |&j| (i, j)))
    }

    pub fn classify(&self, i: u32, j: u32) -> EdgeKind {
        if !self.has_edge(i, j) {
            EdgeKind::None
        } else if j & !i == 0 {
            EdgeKind::Inclusion
        } else {
            EdgeKind::Transversal
        }
    }

    /// All transversal edges in deterministic (bitmask) order.
    pub fn transversal_edges(&self) -> Vec<(u32, u32)> {
        self.edges()
            .filter(|&(i, j)| self.classify(i, j) == EdgeKind::Transversal)
            .collect()
    }

    /// Generators of the subalgebra Psi: every vertex idempotent plus every
    /// transversal edge element.
    pub fn psi_generators(&self) -> (Vec<u32>, Vec<(u32, u32)>) {
        (self.vertices().collect(), self.transversal_edges())
    }

    pub fn subset_label(&self, i: u32) -> String {
        let names: Vec<&str> = (0..self.n)
            .filter(|b| i >> b & 1 == 1)
            .map(|b| self.gen_names[b].as_str())
            .collect();
        format!("{{{}}}", names.join(","))
    }

    /// DOT rendering with deterministic (bitmask) ordering: inclusion edges
    /// solid, transversal edges dashed.
    pub fn to_dot(&self) -> String {
        let mut s = String::new();
        writeln!(s, "digraph compatibility {{").unwrap();
        writeln!(s, "  rankdir=BT;").unwrap();
        for v in self.vertices() {
            writeln!(s, "  v{} [label=\"{}\"];", v, self.subset_label(v)).unwrap();
        }
        for (i, j) in self.edges() {
            let style = match self.classify(i, j) {
                EdgeKind::Inclusion => "solid",
                EdgeKind::Transversal => "dashed",
                EdgeKind::None => unreachable!(),
            };
            writeln!(s, "  v{j} -> v{i} [style={style}];").unwrap();
        }
        writeln!(s, "}}").unwrap();
        s
    }
}

/// Build the compatibility graph of `W`.
pub fn build_compatibility_graph(w: &CoxeterSystem) -> Result<Quiver, QuiverError> {
    build(w, false)
}

/// The unpruned variant: every ordered pair with `I\J` nonempty is kept as an
/// edge. The compatibility condition is not applied, so edge elements that the
/// quotient forces to zero are still present as paths.
pub fn build_unpruned_graph(w: &CoxeterSystem) -> Result<Quiver, QuiverError> {
    build(w, true)
}

fn build(w: &CoxeterSystem, loose: bool) -> Result<Quiver, QuiverError> {
    let n = w.rank();
    if n > 20 {
        return Err(QuiverError::TooLarge(n));
    }
    let size = 1usize << n;
    let mut out = vec![Vec::new(); size];
    let mut into = vec![Vec::new(); size];
    for i in 0..size as u32 {
        for j in 0..size as u32 {
            if edge_exists(w, i, j, loose) {
                out[i as usize].push(j);
                into[j as usize].push(i);
            }
        }
    }
    Ok(Quiver {
        n,
        gen_names: w.generators().to_vec(),
        out,
        into,
        loose,
    })
}

fn edge_exists(w: &CoxeterSystem, i: u32, j: u32, loose: bool) -> bool {
    let fwd = i & !j;
    if fwd == 0 {
        return false;
    }
    if loose {
        return true;
    }
    let back = j & !i;
    for a in 0..w.rank() {
        if fwd >> a & 1 == 0 {
            continue;
        }
        for b in 0..w.rank() {
            if back >> b & 1 == 1 && w.order(a, b) == 2 {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::parse_coxeter;

    fn q(name: &str) -> Quiver {
        build_compatibility_graph(&parse_coxeter(name).unwrap()).unwrap()
    }

    #[test]
    fn a1_single_inclusion_edge() {
        let q = q("A1");
        assert_eq!(q.vertex_count(), 2);
        let edges: Vec<_> = q.edges().collect();
        assert_eq!(edges, vec![(1, 0)]);
        assert_eq!(q.classify(1, 0), EdgeKind::Inclusion);
        assert!(q.transversal_edges().is_empty());
    }

    #[test]
    fn a1xa1_no_cross_edges() {
        let q = q("A1xA1");
        assert_eq!(q.vertex_count(), 4);
        // s1 and t1 commute, so {s1} and {t1} are not connected
        assert_eq!(q.classify(0b01, 0b10), EdgeKind::None);
        assert_eq!(q.classify(0b10, 0b01), EdgeKind::None);
        let inc: Vec<_> = q
            .edges()
            .filter(|&(i, j)| q.classify(i, j) == EdgeKind::Inclusion)
            .collect();
        assert_eq!(inc.len(), 5);
        assert!(q.transversal_edges().is_empty());
    }

    #[test]
    fn a2_transversal_pair() {
        let q = q("A2");
        assert_eq!(q.classify(0b01, 0b10), EdgeKind::Transversal);
        assert_eq!(q.classify(0b10, 0b01), EdgeKind::Transversal);
        assert_eq!(q.classify(0b11, 0), EdgeKind::Inclusion);
        assert_eq!(q.transversal_edges(), vec![(0b01, 0b10), (0b10, 0b01)]);
        let (verts, trans) = q.psi_generators();
        assert_eq!(verts.len(), 4);
        assert_eq!(trans.len(), 2);
    }

    #[test]
    fn transversal_edges_pair_up() {
        for name in ["A2", "B2", "I2(5)", "A2xA1", "A2xA2"] {
            let q = q(name);
            for (i, j) in q.transversal_edges() {
                assert_eq!(q.classify(j, i), EdgeKind::Transversal, "{name} {i} {j}");
            }
            // no self-edges ever
            for v in q.vertices() {
                assert_eq!(q.classify(v, v), EdgeKind::None);
            }
        }
    }

    #[test]
    fn product_edges_have_split_form() {
        for name in ["A1xA1", "A2xA1"] {
            let w = parse_coxeter(name).unwrap();
            let (s1, s2) = w.product_split().unwrap();
            let q = build_compatibility_graph(&w).unwrap();
            for (i, j) in q.edges() {
                match q.classify(i, j) {
                    EdgeKind::Inclusion => {
                        assert_eq!(j & s1 & !(i & s1), 0, "{name}: not componentwise");
                        assert_eq!(j & s2 & !(i & s2), 0, "{name}: not componentwise");
                    }
                    EdgeKind::Transversal => {
                        // symmetric difference lies in exactly one factor
                        let diff = i ^ j;
                        assert!(
                            diff & s2 == 0 || diff & s1 == 0,
                            "{name}: transversal edge crosses factors"
                        );
                    }
                    EdgeKind::None => unreachable!(),
                }
            }
        }
    }

    #[test]
    fn psi_generators_examples() {
        assert_eq!(q("A1").psi_generators().1.len(), 0);
        assert_eq!(q("A1xA1").psi_generators().1.len(), 0);
        assert_eq!(q("A2").psi_generators().1.len(), 2);
    }

    #[test]
    fn dot_export_is_deterministic() {
        let d = q("A1xA1").to_dot();
        assert_eq!(d, q("A1xA1").to_dot());
        assert!(d.contains("v0 [label=\"{}\"]"));
        assert!(d.contains("v3 [label=\"{s1,t1}\"]"));
        assert!(d.contains("style=solid"));
        assert!(!d.contains("style=dashed"));
        let d2 = q("A2").to_dot();
        assert!(d2.contains("style=dashed"));
    }
}
