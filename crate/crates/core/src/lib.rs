//! Paley graphs and tournaments over odd-order finite fields, degree-parity
//! censuses of their induced sub(di)graphs, and the MDS self-dual
//! (extended) generalized Reed–Solomon codes those subgraphs describe.
//!
//! Module map:
//! - [`ffield`]: arithmetic, quadratic character and square roots in `F_q`.
//! - [`paley`]: `P_q` / `PT_q` as bit-packed adjacency with parity queries.
//! - [`gf2`]: dense GF(2) rank, affine solves and solution enumeration.
//! - [`parity_core`]: even-even partitions, odd-parity covers, co-even counts.
//! - [`census`]: parity censuses, character sums, Weil checks, giant-subgraph bounds.
//! - [`mds`]: self-dual GRS code construction and verification.
//! - [`randmodel`]: exact expectations in `G(n, p)` / `D(n, p)` and Monte Carlo.

pub mod census;
pub mod error;
pub mod ffield;
pub mod gf2;
pub mod mds;
pub mod paley;
pub mod parity_core;
pub mod randmodel;
pub mod subsets;

pub use error::{Error, Result};
pub use ffield::{FieldDescriptor, FieldElement, FiniteField};
pub use gf2::{AffineSolutionSpace, BitVector, Gf2Matrix};
pub use paley::{PaleyKind, PaleyStructure};
pub use parity_core::{EvenEvenPartition, OddParityCover, SimpleGraph};
pub use subsets::{ParityClass, ParityCounts, ParityHost};
