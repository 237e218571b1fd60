//! Graphs as symmetric matrices over F₂, their graph-state groups, and the
//! loopless reduction.
//!
//! Two generator conventions exist. In the standard one, generator `i` is
//! `X` on vertex `i` and `Z` on its neighbours, so the generator rows are
//! `[θ | I]` (μ-block `θ`). In the minor-table convention the roles of `Z`
//! and `X` are exchanged, giving `[I | θ]`. The two differ by a Hadamard on
//! every qubit. [`graph_to_point`] is the principal-minor vector of `θ`,
//! which is the point of the minor-table Lagrangian.

use std::fmt;

use crate::error::{Error, Result};
use crate::f2core::{BitMatrix, BitVector};
use crate::groupaction::{GroupElement, Local2};
use crate::lagrangian::Lagrangian;
use crate::minorvariety::{from_symmetric, MinorPoint};
use crate::pauli::{PauliOp, StabilizerGroup};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    theta: BitMatrix,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Convention {
    /// `X` on the vertex, `Z` on the neighbours.
    #[default]
    Standard,
    /// `Z` on the vertex, `X` on the neighbours.
    MinorTable,
}

impl Graph {
    pub fn new(theta: BitMatrix) -> Result<Self> {
        if !theta.is_square() {
            return Err(Error::NotSquare {
                rows: theta.rows(),
                cols: theta.cols(),
            });
        }
        if !theta.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        Ok(Self {
            n: theta.rows(),
            theta,
        })
    }

    pub fn empty(n: usize) -> Self {
        Self {
            n,
            theta: BitMatrix::zeros(n, n),
        }
    }

    /// Builds a graph from 1-based edges; `(i, i)` is a loop.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut theta = BitMatrix::zeros(n, n);
        for &(i, j) in edges {
            for v in [i, j] {
                if v == 0 || v > n {
                    return Err(Error::IndexOutOfRange { index: v, bound: n });
                }
            }
            theta.set(i - 1, j - 1, true);
            theta.set(j - 1, i - 1, true);
        }
        Ok(Self { n, theta })
    }

    /// Parses `"1-2,2-3,1-1"`. Whitespace is ignored and the empty string is
    /// the empty graph.
    pub fn parse(s: &str, n: usize) -> Result<Self> {
        let mut edges = Vec::new();
        for token in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (a, b) = token
                .split_once('-')
                .ok_or_else(|| Error::Parse(format!("edge {token:?} is not of the form i-j")))?;
            let vertex = |v: &str| {
                v.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad vertex {v:?} in edge {token:?}")))
            };
            edges.push((vertex(a)?, vertex(b)?));
        }
        Self::from_edges(n, &edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn theta(&self) -> &BitMatrix {
        &self.theta
    }

    pub fn has_loops(&self) -> bool {
        (0..self.n).any(|i| self.theta.get(i, i))
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.theta.get(i, j)
    }

    /// 1-based edges `(i, j)` with `i ≤ j`, in lex order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i..self.n {
                if self.theta.get(i, j) {
                    out.push((i + 1, j + 1));
                }
            }
        }
        out
    }

    pub fn edge_string(&self) -> String {
        self.edges()
            .iter()
            .map(|(i, j)| format!("{i}-{j}"))
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for v in 1..=self.n {
            out.push_str(&format!("  {v};\n"));
        }
        for (i, j) in self.edges() {
            if i == j {
                out.push_str(&format!("  {i} -- {i} [style=dashed];\n"));
            } else {
                out.push_str(&format!("  {i} -- {j};\n"));
            }
        }
        out.push_str("}\n");
        out
    }

    /// Relabels vertex `i` (0-based) as `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::SizeMismatch {
                expected: self.n,
                found: perm.len(),
            });
        }
        let mut theta = BitMatrix::zeros(self.n, self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                theta.set(perm[i], perm[j], self.theta.get(i, j));
            }
        }
        Ok(Self { n: self.n, theta })
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.edge_string())
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, {})", self.n, self.edge_string())
    }
}

/// The graph-state group. A looped vertex carries `Y`, the Hermitian
/// representative of `ZX`.
pub fn graph_generators(g: &Graph, convention: Convention) -> StabilizerGroup {
    let n = g.n;
    let gens = (0..n)
        .map(|i| {
            let row = g.theta.row(i);
            let mut unit = BitVector::zeros(n);
            unit.set(i, true);
            let (mu, nu) = match convention {
                Convention::Standard => (row, unit),
                Convention::MinorTable => (unit, row),
            };
            PauliOp::hermitian(mu, nu).expect("equal lengths")
        })
        .collect();
    StabilizerGroup::from_generators(gens).expect("a symmetric matrix gives commuting generators")
}

pub fn graph_lagrangian(g: &Graph, convention: Convention) -> Lagrangian {
    match convention {
        Convention::Standard => Lagrangian::from_graph_matrix(&g.theta),
        Convention::MinorTable => Lagrangian::from_symmetric(&g.theta),
    }
    .expect("a symmetric matrix spans a Lagrangian")
}

/// `[1 : θ_ii : θ_[ij] : … : det θ]`.
pub fn graph_to_point(g: &Graph) -> Result<MinorPoint> {
    from_symmetric(&g.theta)
}

/// Clears the diagonal. The witness is `SQZ` on each looped vertex; it maps
/// the standard-convention Lagrangian of `g` to that of the result.
pub fn loopless(g: &Graph) -> (Graph, GroupElement) {
    let mut theta = g.theta.clone();
    let slots = (0..g.n)
        .map(|i| {
            if g.theta.get(i, i) {
                theta.set(i, i, false);
                Local2::SQZ
            } else {
                Local2::ID
            }
        })
        .collect();
    (Graph { n: g.n, theta }, GroupElement::local(slots))
}

/// Complements the subgraph induced on the neighbourhood of `v` (1-based).
pub fn local_complementation(g: &Graph, v: usize) -> Result<Graph> {
    if v == 0 || v > g.n {
        return Err(Error::IndexOutOfRange { index: v, bound: g.n });
    }
    if g.has_loops() {
        return Err(Error::LoopsPresent);
    }
    let nbrs: Vec<usize> = (0..g.n).filter(|&u| g.theta.get(v - 1, u)).collect();
    let mut theta = g.theta.clone();
    for (k, &a) in nbrs.iter().enumerate() {
        for &b in &nbrs[k + 1..] {
            let flipped = !theta.get(a, b);
            theta.set(a, b, flipped);
            theta.set(b, a, flipped);
        }
    }
    Ok(Graph { n: g.n, theta })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::minorvariety::minor_point;
    use crate::subset::Subset;

    fn graph(s: &str, n: usize) -> Graph {
        Graph::parse(s, n).unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(graph("1-2", 2).theta(), &BitMatrix::from_strs(&["01", "10"]).unwrap());
        assert!(graph("", 4).theta().is_zero());
        assert_eq!(
            graph("1-2,2-3,3-4,4-1", 4).theta(),
            &BitMatrix::from_strs(&["0101", "1010", "0101", "1010"]).unwrap()
        );
        assert!(graph("1-1", 1).has_loops());
        assert!(Graph::parse("1-5", 4).is_err());
        assert!(Graph::parse("1:2", 4).is_err());
        assert!(Graph::parse("1-x", 4).is_err());
        assert_eq!(graph("2-1, 3-3", 3).edge_string(), "1-2,3-3");
    }

    #[test]
    fn dot_output() {
        let dot = graph("1-2,2-2", 2).to_dot();
        assert!(dot.contains("1 -- 2;"));
        assert!(dot.contains("2 -- 2 [style=dashed];"));
    }

    #[test]
    fn generator_examples() {
        let g = graph("1-2", 5);
        assert_eq!(
            graph_generators(&g, Convention::MinorTable).to_string(),
            "ZXIII,XZIII,IIZII,IIIZI,IIIIZ"
        );
        assert_eq!(
            graph_generators(&graph("1-2,2-3", 5), Convention::MinorTable).to_string(),
            "ZXIII,XZXII,IXZII,IIIZI,IIIIZ"
        );
        assert_eq!(graph_generators(&Graph::empty(3), Convention::Standard).to_string(), "XII,IXI,IIX");
        let looped = graph_generators(&graph("1-1,1-2", 2), Convention::Standard);
        assert_eq!(looped.to_string(), "YZ,ZX");
        assert!(!looped.contains_minus_identity());
    }

    #[test]
    fn point_examples() {
        let star = graph_to_point(&graph("1-2,1-3,1-4", 4)).unwrap();
        assert_eq!(star.to_string(), "[1:0:0:0:0:1:1:1:0:0:0:0:0:0:0:0]");
        let matching = graph_to_point(&graph("1-2,3-4", 4)).unwrap();
        assert_eq!(matching.to_string(), "[1:0:0:0:0:1:0:0:0:0:1:0:0:0:0:1]");
        assert_eq!(graph_to_point(&graph("1-1", 1)).unwrap().to_string(), "[1:1]");
    }

    #[test]
    fn graph_point_routes_agree_exhaustively() {
        for n in 1..=4usize {
            let pairs: Vec<(usize, usize)> = (1..=n).flat_map(|i| (i..=n).map(move |j| (i, j))).collect();
            for code in 0u32..1 << pairs.len() {
                let edges: Vec<_> = pairs
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| code >> b & 1 == 1)
                    .map(|(_, &e)| e)
                    .collect();
                let g = Graph::from_edges(n, &edges).unwrap();
                let p = graph_to_point(&g).unwrap();
                let via_table = Lagrangian::from_group(&graph_generators(&g, Convention::MinorTable)).unwrap();
                assert_eq!(minor_point(&via_table), p);
                let via_std = Lagrangian::from_group(&graph_generators(&g, Convention::Standard)).unwrap();
                assert_eq!(minor_point(&via_std), p.hadamard(Subset::full(n)));
                assert_eq!(via_std, graph_lagrangian(&g, Convention::Standard));
            }
        }
    }

    #[test]
    fn loopless_examples() {
        let (g0, w) = loopless(&graph("1-2", 3));
        assert_eq!(g0, graph("1-2", 3));
        assert!(w.is_identity());

        let tri = graph("1-2,2-3,1-3,1-1", 3);
        let (g0, w) = loopless(&tri);
        assert_eq!(g0, graph("1-2,2-3,1-3", 3));
        assert_eq!(w.to_string(), "S@1");
        let moved = w.act_on_lagrangian(&graph_lagrangian(&tri, Convention::Standard)).unwrap();
        assert_eq!(moved, graph_lagrangian(&g0, Convention::Standard));

        let all = Graph::new(BitMatrix::identity(3)).unwrap();
        let (g0, w) = loopless(&all);
        assert_eq!(g0, Graph::empty(3));
        assert_eq!(w.to_string(), "S@1 S@2 S@3");
    }

    #[test]
    fn local_complementation_examples() {
        let g = graph("1-2", 3);
        assert_eq!(local_complementation(&g, 3).unwrap(), g);
        let path = graph("1-2,2-3", 3);
        assert_eq!(local_complementation(&path, 1).unwrap(), path);
        assert_eq!(local_complementation(&path, 2).unwrap(), graph("1-2,2-3,1-3", 3));
        assert_eq!(local_complementation(&graph("1-1", 2), 1), Err(Error::LoopsPresent));
    }

    #[test]
    fn relabel_swaps_rows_and_columns() {
        let g = graph("1-2,2-3", 3);
        assert_eq!(g.relabel(&[2, 1, 0]).unwrap(), graph("3-2,2-1", 3));
        assert_eq!(g.relabel(&[1, 0, 2]).unwrap(), graph("1-2,1-3", 3));
    }
}
