//! Even-even partitions of undirected graphs and their correspondence with
//! odd-parity covers of the odd-extension.
//!
//! A subset `Q` of a graph `H` is an odd-parity cover when every closed
//! neighbourhood meets `Q` in an odd number of vertices, i.e.
//! `(A + I) 1_Q = 1` over GF(2). The odd-extension of `G` attaches a pendant
//! vertex to every even-degree vertex; its odd-parity covers are in bijection
//! with the co-even subsets of `G` (subsets `V1` such that `G[V1]` and
//! `G[V \ V1]` are both even).

use num_bigint::BigUint;
use num_traits::One;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf2::{AffineSolutionSpace, BitVector, Gf2Matrix};
use crate::paley::{PaleyKind, PaleyStructure};
use crate::subsets::{ParityClass, ParityHost};

/// Largest vertex count accepted by [`brute_force_coeven`].
pub const BRUTE_FORCE_MAX_VERTICES: usize = 24;

/// Undirected simple graph on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    adj: Gf2Matrix,
}

impl SimpleGraph {
    pub fn empty(n: usize) -> Self {
        SimpleGraph { adj: Gf2Matrix::zeros(n, n) }
    }

    pub fn complete(n: usize) -> Self {
        SimpleGraph { adj: Gf2Matrix::from_fn(n, n, |r, c| r != c) }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            if u == v || u >= n || v >= n {
                return Err(Error::InvalidArgument(format!("bad edge ({u}, {v}) for {n} vertices")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    /// Wraps a symmetric, loop-free adjacency matrix.
    pub fn from_adjacency(adj: Gf2Matrix) -> Result<Self> {
        if !adj.is_symmetric() || (0..adj.rows()).any(|v| adj.get(v, v)) {
            return Err(Error::InvalidArgument("adjacency must be symmetric with zero diagonal".into()));
        }
        Ok(SimpleGraph { adj })
    }

    /// The Paley graph as a simple graph; tournaments are rejected.
    pub fn from_paley(p: &PaleyStructure) -> Result<Self> {
        if p.kind() != PaleyKind::Graph {
            return Err(Error::NotAGraph("an undirected host"));
        }
        Ok(SimpleGraph { adj: p.adjacency_gf2() })
    }

    /// `G(n, p)` with `p = num / den`.
    pub fn random<R: Rng>(rng: &mut R, n: usize, num: u32, den: u32) -> Self {
        let mut g = Self::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_ratio(num, den) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert_ne!(u, v, "loops are not allowed");
        self.adj.set(u, v, true);
        self.adj.set(v, u, true);
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.rows()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj.get(u, v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj.row_weight(v)
    }

    pub fn adjacency(&self) -> &Gf2Matrix {
        &self.adj
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).sum::<usize>() / 2
    }

    pub fn complement(&self) -> SimpleGraph {
        SimpleGraph { adj: Gf2Matrix::from_fn(self.n(), self.n(), |r, c| r != c && !self.has_edge(r, c)) }
    }

    /// Induced subgraph on `vertices`, relabelled `0..vertices.len()` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> SimpleGraph {
        let k = vertices.len();
        SimpleGraph { adj: Gf2Matrix::from_fn(k, k, |i, j| self.has_edge(vertices[i], vertices[j])) }
    }

    /// Whether every vertex of `G[set]` has even degree.
    pub fn is_even_on(&self, set: &[usize]) -> bool {
        self.classify(set) == ParityClass::Even
    }
}

impl ParityHost for SimpleGraph {
    fn order(&self) -> usize {
        self.n()
    }

    fn toggle_rows(&self) -> &Gf2Matrix {
        &self.adj
    }

    fn counts_towards(&self, v: usize, u: usize) -> bool {
        self.has_edge(v, u)
    }
}

/// `G` with a pendant `v'` attached to each even-degree vertex `v`.
///
/// Pendants are numbered `n + i` where `i` is the rank of `v` among the
/// even-degree vertices, so for an all-even host the adjacency is
/// `[[A, I], [I, 0]]`.
#[derive(Clone, Debug)]
pub struct OddExtension {
    pub graph: SimpleGraph,
    pub host_order: usize,
    /// Pendant index of each host vertex, if it has one.
    pub pendant_of: Vec<Option<usize>>,
}

impl OddExtension {
    pub fn pendant_count(&self) -> usize {
        self.graph.n() - self.host_order
    }
}

pub fn odd_extension(g: &SimpleGraph) -> OddExtension {
    let n = g.n();
    let mut pendant_of = vec![None; n];
    let mut next = n;
    for (v, slot) in pendant_of.iter_mut().enumerate() {
        if g.degree(v).is_multiple_of(2) {
            *slot = Some(next);
            next += 1;
        }
    }
    let mut ext = SimpleGraph::empty(next);
    for (u, pendant) in pendant_of.iter().enumerate() {
        for v in u + 1..n {
            if g.has_edge(u, v) {
                ext.add_edge(u, v);
            }
        }
        if let Some(pu) = *pendant {
            ext.add_edge(u, pu);
        }
    }
    OddExtension { graph: ext, host_order: n, pendant_of }
}

/// A subset `Q` of the odd-extension's vertices with `(A + I) 1_Q = 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OddParityCover {
    pub cover: BitVector,
}

/// `V(G) = part1 ⊔ part2` with both induced subgraphs even.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvenEvenPartition {
    pub part1: Vec<usize>,
    pub part2: Vec<usize>,
}

impl EvenEvenPartition {
    pub fn is_valid_for(&self, g: &SimpleGraph) -> bool {
        let mut all: Vec<usize> = self.part1.iter().chain(&self.part2).copied().collect();
        all.sort_unstable();
        all == (0..g.n()).collect::<Vec<_>>() && g.is_even_on(&self.part1) && g.is_even_on(&self.part2)
    }

    /// The part with at least half of the vertices.
    pub fn primary(&self) -> &[usize] {
        if self.part1.len() >= self.part2.len() {
            &self.part1
        } else {
            &self.part2
        }
    }
}

fn closed_neighbourhood_matrix(g: &SimpleGraph) -> Gf2Matrix {
    g.adjacency().add(&Gf2Matrix::identity(g.n()))
}

/// Solution space of `(Ā + I) X = 1`, where `Ā` is the odd-extension's adjacency.
pub fn odd_parity_covers(g: &SimpleGraph) -> (OddExtension, AffineSolutionSpace) {
    let ext = odd_extension(g);
    let m = closed_neighbourhood_matrix(&ext.graph);
    let space = m.solve_affine(&BitVector::ones(ext.graph.n()));
    debug_assert!(space.is_consistent(), "every graph has an even-even partition");
    (ext, space)
}

fn is_cover(ext: &OddExtension, q: &BitVector) -> bool {
    q.len() == ext.graph.n() && closed_neighbourhood_matrix(&ext.graph).mul_vec(q) == BitVector::ones(q.len())
}

/// `Q ↦ (Q ∩ V(G), V(G) \ Q)`.
pub fn cover_to_partition(ext: &OddExtension, q: &OddParityCover) -> Result<EvenEvenPartition> {
    if !is_cover(ext, &q.cover) {
        return Err(Error::InvalidCover);
    }
    let (part1, part2) = (0..ext.host_order).partition(|&v| q.cover.get(v));
    let partition = EvenEvenPartition { part1, part2 };
    debug_assert!(partition.is_valid_for(&ext.graph.induced(&(0..ext.host_order).collect::<Vec<_>>())));
    Ok(partition)
}

/// `V1 ↦ V1 ∪ { v' : v ∉ V1, deg(v) even }`.
pub fn partition_to_cover(ext: &OddExtension, g: &SimpleGraph, part1: &[usize]) -> Result<OddParityCover> {
    let n = g.n();
    if part1.iter().any(|&v| v >= n) {
        return Err(Error::InvalidArgument("vertex outside the graph".into()));
    }
    let inside = BitVector::from_indices(n, part1.iter().copied());
    let part2: Vec<usize> = (0..n).filter(|&v| !inside.get(v)).collect();
    if !g.is_even_on(part1) || !g.is_even_on(&part2) {
        return Err(Error::NotCoEven);
    }
    let mut cover = BitVector::zeros(ext.graph.n());
    for v in inside.ones_iter() {
        cover.set(v, true);
    }
    for &v in &part2 {
        if let Some(pv) = ext.pendant_of[v] {
            cover.set(pv, true);
        }
    }
    Ok(OddParityCover { cover })
}

/// One even-even partition: the echelon particular solution mapped back to `G`.
pub fn gallai_partition(g: &SimpleGraph) -> EvenEvenPartition {
    let (ext, space) = odd_parity_covers(g);
    let cover = OddParityCover { cover: space.particular.expect("covers always exist") };
    cover_to_partition(&ext, &cover).expect("solutions of the system are covers")
}

/// Number of co-even subsets of a graph, with the kernel dimension it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoevenCount {
    pub count: BigUint,
    pub dimension: usize,
}

/// `2^{dim ker(Ā + I)}`.
pub fn count_coeven(g: &SimpleGraph) -> CoevenCount {
    let (_, space) = odd_parity_covers(g);
    let dimension = space.dimension();
    CoevenCount { count: BigUint::one() << dimension, dimension }
}

/// Co-even count by testing all `2^n` subsets in Gray-code order.
pub fn brute_force_coeven(g: &SimpleGraph) -> Result<u64> {
    let n = g.n();
    if n > BRUTE_FORCE_MAX_VERTICES {
        return Err(Error::TooLarge(format!("brute force needs n <= {BRUTE_FORCE_MAX_VERTICES}, got {n}")));
    }
    let rows: Vec<u64> = (0..n).map(|v| g.adjacency().row_words(v).first().copied().unwrap_or(0)).collect();
    let degree_parity: u64 = (0..n).filter(|&v| g.degree(v) % 2 == 1).fold(0, |m, v| m | 1 << v);
    let total: u64 = 1 << n;
    let chunk: u64 = 1 << 14;
    let count = (0..total.div_ceil(chunk))
        .into_par_iter()
        .map(|c| {
            let start = c * chunk;
            let end = (start + chunk).min(total);
            let mut set = start ^ (start >> 1);
            let mut parity = (0..n).filter(|&u| set >> u & 1 == 1).fold(0u64, |p, u| p ^ rows[u]);
            let mut hits = 0u64;
            let mut i = start;
            loop {
                // Inside S the degree into S is even; outside, the degree into
                // the complement is even, i.e. parity into S equals deg(v) mod 2.
                if parity == degree_parity & !set {
                    hits += 1;
                }
                i += 1;
                if i == end {
                    break;
                }
                let u = i.trailing_zeros() as usize;
                set ^= 1 << u;
                parity ^= rows[u];
            }
            hits
        })
        .sum();
    Ok(count)
}
