//! Paley graphs `P_q` (q = 1 mod 4) and Paley tournaments `PT_q`
//! (q = 3 mod 4) with degree-parity queries.

use std::fmt::Write as _;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ffield::{FieldElement, FiniteField};
use crate::gf2::Gf2Matrix;
use crate::subsets::{classify_pairwise, ParityClass, ParityHost, ParityWalk};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PaleyKind {
    Graph,
    Tournament,
}

/// `P_q` or `PT_q` on the canonical element order of `F_q`: bit `(x, y)` is
/// set iff `x - y` is a non-zero square.
#[derive(Clone, Debug)]
pub struct PaleyStructure {
    field: Arc<FiniteField>,
    kind: PaleyKind,
    adjacency: Gf2Matrix,
    // Transposed adjacency for tournaments; graphs are symmetric.
    incoming: Option<Gf2Matrix>,
}

impl PaleyStructure {
    pub fn new(field: Arc<FiniteField>) -> Self {
        let q = field.order();
        let kind = if field.minus_one_is_square() { PaleyKind::Graph } else { PaleyKind::Tournament };
        let stride = crate::gf2::words_for(q);
        let rows: Vec<Vec<u64>> = (0..q)
            .into_par_iter()
            .map(|x| {
                let mut row = vec![0u64; stride];
                let fx = FieldElement(x as u32);
                for y in 0..q {
                    if field.eta(field.sub(fx, FieldElement(y as u32))) == 1 {
                        row[y / 64] |= 1u64 << (y % 64);
                    }
                }
                row
            })
            .collect();
        let adjacency = Gf2Matrix::from_words(q, q, rows.concat());
        let incoming = (kind == PaleyKind::Tournament).then(|| adjacency.transpose());
        PaleyStructure { field, kind, adjacency, incoming }
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn kind(&self) -> PaleyKind {
        self.kind
    }

    pub fn q(&self) -> usize {
        self.field.order()
    }

    #[inline]
    pub fn has_arc(&self, x: usize, y: usize) -> bool {
        self.adjacency.get(x, y)
    }

    /// (Out-)degree of `v` in the whole structure.
    pub fn degree(&self, v: usize) -> usize {
        self.adjacency.row_weight(v)
    }

    /// Parity class of the sub(di)graph induced on `subset` (vertex indices),
    /// using out-degrees for tournaments; the empty set is even.
    pub fn classify_induced(&self, subset: &[usize]) -> ParityClass {
        if subset.len() <= 64 {
            return classify_pairwise(subset, |v, u| self.has_arc(v, u));
        }
        let mut walk = ParityWalk::new(self.toggle_rows());
        for &u in subset {
            walk.toggle(u);
        }
        walk.class()
    }

    /// Number of pairs `(u, w)` in `U x W` with an edge (or arc `u -> w`).
    pub fn cut_arc_count(&self, from: &[usize], to: &[usize]) -> usize {
        from.iter().map(|&u| to.iter().filter(|&&w| self.has_arc(u, w)).count()).sum()
    }

    /// Copy of the adjacency as a binary matrix.
    pub fn adjacency_gf2(&self) -> Gf2Matrix {
        self.adjacency.clone()
    }

    pub fn adjacency(&self) -> &Gf2Matrix {
        &self.adjacency
    }

    /// One `"u v"` line per edge (`u < v`) or per arc `u -> v`.
    pub fn edge_list(&self) -> String {
        let mut out = String::new();
        for u in 0..self.q() {
            for v in 0..self.q() {
                let emit = match self.kind {
                    PaleyKind::Graph => u < v && self.has_arc(u, v),
                    PaleyKind::Tournament => self.has_arc(u, v),
                };
                if emit {
                    writeln!(out, "{u} {v}").expect("writing to a String");
                }
            }
        }
        out
    }
}

impl ParityHost for PaleyStructure {
    fn order(&self) -> usize {
        self.q()
    }

    fn toggle_rows(&self) -> &Gf2Matrix {
        self.incoming.as_ref().unwrap_or(&self.adjacency)
    }

    fn counts_towards(&self, v: usize, u: usize) -> bool {
        self.has_arc(v, u)
    }

    fn classify(&self, subset: &[usize]) -> ParityClass {
        self.classify_induced(subset)
    }
}
