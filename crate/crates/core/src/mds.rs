//! MDS self-dual (extended) generalized Reed–Solomon codes built from
//! evaluation sets, and the families `Ω(n, q)`, `Ω̃(n + 1, q)` and `𝒜`.

use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{check_budget, Error, Result};
use crate::ffield::{FieldDescriptor, FieldElement, FiniteField};
use crate::gf2::{BitVector, Gf2Matrix};
use crate::paley::{PaleyKind, PaleyStructure};
use crate::subsets::{binomial, Colex, ParityHost};

/// Largest `q^k` for which [`verify_mds`] enumerates codewords.
pub const CODEWORD_LIMIT: u128 = 10_000_000;
/// Largest `C(length, k)` for which [`verify_mds`] checks column subsets.
pub const COLUMN_SUBSET_LIMIT: u128 = 1_000_000;
/// Default cap on subsets visited by [`enumerate_omega`].
pub const DEFAULT_OMEGA_BUDGET: u128 = 200_000_000;
/// Largest order for which [`coeven_pair_census`] also scans all `2^q` subsets.
pub const PAIR_SCAN_MAX_ORDER: usize = 21;

/// Distinct evaluation points `α_1, ..., α_n` of `F_q`.
#[derive(Clone, Debug)]
pub struct EvaluationSet {
    field: Arc<FiniteField>,
    alphas: Vec<FieldElement>,
}

impl EvaluationSet {
    pub fn new(field: Arc<FiniteField>, alphas: Vec<FieldElement>) -> Result<Self> {
        let mut seen = vec![false; field.order()];
        for &a in &alphas {
            if a.index() >= field.order() {
                return Err(Error::InvalidElement(a.0 as u64));
            }
            if std::mem::replace(&mut seen[a.index()], true) {
                return Err(Error::InvalidArgument(format!("evaluation point {} repeated", a.0)));
            }
        }
        Ok(EvaluationSet { field, alphas })
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn alphas(&self) -> &[FieldElement] {
        &self.alphas
    }

    pub fn len(&self) -> usize {
        self.alphas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alphas.is_empty()
    }

    pub fn indices(&self) -> Vec<usize> {
        self.alphas.iter().map(|a| a.index()).collect()
    }
}

/// `Δ_S(α_i) = ∏_{j ≠ i} (α_i − α_j)`.
pub fn delta(s: &EvaluationSet, i: usize) -> FieldElement {
    delta_of(&s.field, &s.alphas, i)
}

fn delta_of(f: &FiniteField, alphas: &[FieldElement], i: usize) -> FieldElement {
    let ai = alphas[i];
    alphas
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != i)
        .fold(FieldElement::ONE, |acc, (_, &aj)| f.mul(acc, f.sub(ai, aj)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Feasibility {
    EvenLengthOk,
    OddLengthOk,
    Infeasible,
}

/// Even `n`: all `η(Δ_i)` equal. Odd `n`: all `η(−Δ_i) = +1`.
pub fn feasibility(s: &EvaluationSet) -> Result<Feasibility> {
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    Ok(feasibility_of(&s.field, &s.alphas))
}

fn feasibility_of(f: &FiniteField, alphas: &[FieldElement]) -> Feasibility {
    let n = alphas.len();
    let etas = (0..n).map(|i| f.eta(delta_of(f, alphas, i)));
    if n.is_multiple_of(2) {
        let etas: Vec<i8> = etas.collect();
        if etas.iter().all(|&e| e == etas[0]) {
            Feasibility::EvenLengthOk
        } else {
            Feasibility::Infeasible
        }
    } else {
        let minus_one = f.eta(f.neg(FieldElement::ONE));
        if etas.into_iter().all(|e| e * minus_one == 1) {
            Feasibility::OddLengthOk
        } else {
            Feasibility::Infeasible
        }
    }
}

/// A generalized Reed–Solomon code `GRS_k(α, v)` or its extension
/// `GRS_k(α, v, ∞)`, with generator rows `(v_i α_i^j)_i` for `j < k`.
#[derive(Clone, Debug)]
pub struct GrsCode {
    field: Arc<FiniteField>,
    alphas: Vec<FieldElement>,
    v: Vec<FieldElement>,
    k: usize,
    extended: bool,
    /// The `λ` that produced `v`, when built by [`construct_self_dual`].
    lambda: Option<FieldElement>,
    generator: Vec<Vec<FieldElement>>,
}

impl GrsCode {
    pub fn new(
        field: Arc<FiniteField>,
        alphas: Vec<FieldElement>,
        v: Vec<FieldElement>,
        k: usize,
        extended: bool,
    ) -> Result<Self> {
        EvaluationSet::new(field.clone(), alphas.clone())?;
        if v.len() != alphas.len() || v.iter().any(|x| x.is_zero() || x.index() >= field.order()) {
            return Err(Error::InvalidArgument("weights must be non-zero, one per evaluation point".into()));
        }
        if k == 0 || k > alphas.len() + extended as usize {
            return Err(Error::InvalidArgument(format!("dimension {k} out of range")));
        }
        let generator = (0..k)
            .map(|j| {
                let mut row: Vec<FieldElement> =
                    alphas.iter().zip(&v).map(|(&a, &vi)| field.mul(vi, field.pow(a, j as u64))).collect();
                if extended {
                    row.push(if j + 1 == k { FieldElement::ONE } else { FieldElement::ZERO });
                }
                row
            })
            .collect();
        Ok(GrsCode { field, alphas, v, k, extended, lambda: None, generator })
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }

    pub fn alphas(&self) -> &[FieldElement] {
        &self.alphas
    }

    pub fn weights(&self) -> &[FieldElement] {
        &self.v
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn is_extended(&self) -> bool {
        self.extended
    }

    pub fn lambda(&self) -> Option<FieldElement> {
        self.lambda
    }

    /// Code length: evaluation points plus the extended coordinate.
    pub fn length(&self) -> usize {
        self.alphas.len() + self.extended as usize
    }

    pub fn generator(&self) -> &[Vec<FieldElement>] {
        &self.generator
    }

    /// `m G` for a message of length `k`.
    pub fn encode(&self, message: &[FieldElement]) -> Vec<FieldElement> {
        let f = &self.field;
        (0..self.length())
            .map(|c| {
                message
                    .iter()
                    .zip(&self.generator)
                    .fold(FieldElement::ZERO, |acc, (&m, row)| f.add(acc, f.mul(m, row[c])))
            })
            .collect()
    }

    /// `"q n k"` followed by `k` rows of canonical element indices.
    pub fn generator_text(&self) -> String {
        let mut out = format!("{} {} {}\n", self.field.q(), self.length(), self.k);
        for row in &self.generator {
            let cells: Vec<String> = row.iter().map(|x| x.0.to_string()).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn to_record(&self) -> CodeRecord {
        CodeRecord {
            q: self.field.q(),
            field: self.field.descriptor(),
            n: self.alphas.len(),
            k: self.k,
            alphas: self.alphas.iter().map(|a| a.0).collect(),
            v: self.v.iter().map(|a| a.0).collect(),
            extended: self.extended,
            lambda: self.lambda.map(|l| l.0),
            generator: self.generator.iter().map(|row| row.iter().map(|x| x.0).collect()).collect(),
        }
    }

    /// Rebuilds a code and checks the stored generator against `α` and `v`.
    pub fn from_record(record: &CodeRecord) -> Result<Self> {
        let field = Arc::new(FiniteField::from_descriptor(&record.field)?);
        if field.q() != record.q {
            return Err(Error::InvalidArgument("field descriptor disagrees with q".into()));
        }
        let elems = |xs: &[u32]| xs.iter().map(|&x| field.element(x as u64)).collect::<Result<Vec<_>>>();
        let mut code =
            GrsCode::new(field.clone(), elems(&record.alphas)?, elems(&record.v)?, record.k, record.extended)?;
        let stored = record.generator.iter().map(|row| elems(row)).collect::<Result<Vec<_>>>()?;
        if stored != code.generator {
            return Err(Error::InvalidArgument("generator does not match alphas and weights".into()));
        }
        code.lambda = record.lambda.map(|l| field.element(l as u64)).transpose()?;
        Ok(code)
    }
}

/// Serialized form of a [`GrsCode`]; `n` counts evaluation points only.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeRecord {
    pub q: u64,
    pub field: FieldDescriptor,
    pub n: usize,
    pub k: usize,
    pub alphas: Vec<u32>,
    pub v: Vec<u32>,
    pub extended: bool,
    #[serde(default)]
    pub lambda: Option<u32>,
    pub generator: Vec<Vec<u32>>,
}

fn gram_is_zero(code: &GrsCode) -> bool {
    let f = &code.field;
    let g = &code.generator;
    (0..code.k).all(|a| {
        (a..code.k)
            .all(|b| g[a].iter().zip(&g[b]).fold(FieldElement::ZERO, |acc, (&x, &y)| f.add(acc, f.mul(x, y))).is_zero())
    })
}

/// Rank over `F_q` by Gaussian elimination.
pub fn rank_fq(field: &FiniteField, rows: &[Vec<FieldElement>]) -> usize {
    let mut m: Vec<Vec<FieldElement>> = rows.to_vec();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = field.inv(m[rank][c]).expect("pivot is non-zero");
        let pivot: Vec<FieldElement> = m[rank].iter().map(|&x| field.mul(x, inv)).collect();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && !row[c].is_zero() {
                let factor = row[c];
                for (x, &px) in row.iter_mut().zip(&pivot) {
                    *x = field.sub(*x, field.mul(factor, px));
                }
            }
        }
        m[rank] = pivot;
        rank += 1;
    }
    rank
}

/// `G Gᵀ = 0` and `rank G = k = length / 2`.
pub fn verify_self_dual(code: &GrsCode) -> bool {
    2 * code.k == code.length() && gram_is_zero(code) && rank_fq(&code.field, &code.generator) == code.k
}

fn weights_for(f: &FiniteField, deltas: &[FieldElement], lambda: FieldElement) -> Option<Vec<FieldElement>> {
    deltas.iter().map(|&d| f.sqrt(f.div(lambda, d).ok()?).ok()).collect()
}

/// A self-dual code from a feasible set: `GRS_{n/2}(α, v)` for even `n`,
/// `GRS_{(n+1)/2}(α, v, ∞)` for odd `n`.
///
/// Even `n` takes `λ = 1` when every `η(Δ_i) = +1`, else the smallest
/// nonsquare, and `v_i = √(λ / Δ_i)`. Odd `n` tries `v_i = √(λ / (−Δ_i))`
/// for `λ` over `F_q^*` in canonical order and keeps the first verified code.
pub fn construct_self_dual(s: &EvaluationSet) -> Result<GrsCode> {
    let f = &s.field;
    let n = s.len();
    let kind = feasibility(s)?;
    if kind == Feasibility::Infeasible {
        return Err(Error::Infeasible);
    }
    let deltas: Vec<FieldElement> = (0..n).map(|i| delta(s, i)).collect();
    let candidates: Vec<FieldElement> = if n.is_multiple_of(2) {
        vec![if f.eta(deltas[0]) == 1 { FieldElement::ONE } else { f.smallest_nonsquare() }]
    } else {
        f.elements().skip(1).collect()
    };
    let (k, extended, scaled): (usize, bool, Vec<FieldElement>) = if n.is_multiple_of(2) {
        (n / 2, false, deltas)
    } else {
        (n.div_ceil(2), true, deltas.iter().map(|&d| f.neg(d)).collect())
    };
    for lambda in candidates {
        let Some(v) = weights_for(f, &scaled, lambda) else {
            continue;
        };
        let mut code = GrsCode::new(f.clone(), s.alphas.clone(), v, k, extended)?;
        if verify_self_dual(&code) {
            code.lambda = Some(lambda);
            return Ok(code);
        }
    }
    Err(Error::ConstructionFailed)
}

/// Minimum Hamming weight over all non-zero codewords.
pub fn minimum_distance(code: &GrsCode) -> Result<usize> {
    let q = code.field.order();
    let k = code.k as u32;
    let total = (q as u128)
        .checked_pow(k)
        .filter(|&t| t <= CODEWORD_LIMIT)
        .ok_or_else(|| Error::TooLarge(format!("q^k = {q}^{k} codewords exceed {CODEWORD_LIMIT}")))?;
    let len = code.length();
    const CHUNK: u64 = 4096;
    let total = total as u64;
    let best = (0..total.div_ceil(CHUNK))
        .into_par_iter()
        .flat_map_iter(|c| (c * CHUNK).max(1)..((c + 1) * CHUNK).min(total))
        .map(|m| {
            let mut rest = m;
            let message: Vec<FieldElement> = (0..k)
                .map(|_| {
                    let d = rest % q as u64;
                    rest /= q as u64;
                    FieldElement(d as u32)
                })
                .collect();
            code.encode(&message).iter().filter(|x| !x.is_zero()).count()
        })
        .min()
        .unwrap_or(len);
    Ok(best)
}

/// Every `k`-subset of generator columns is invertible.
fn all_column_subsets_invertible(code: &GrsCode) -> Result<bool> {
    let len = code.length();
    let k = code.k;
    check_budget(binomial(len as u64, k as u64), COLUMN_SUBSET_LIMIT)
        .map_err(|_| Error::TooLarge(format!("C({len}, {k}) column subsets exceed {COLUMN_SUBSET_LIMIT}")))?;
    let mut colex = Colex::first(len, k).expect("k <= length");
    loop {
        let cols = colex.current();
        let sub: Vec<Vec<FieldElement>> =
            code.generator.iter().map(|row| cols.iter().map(|&c| row[c]).collect()).collect();
        if rank_fq(&code.field, &sub) < k {
            return Ok(false);
        }
        if !colex.advance(|_| {}) {
            return Ok(true);
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MdsStrategy {
    Codewords,
    ColumnSubsets,
}

/// Strategy [`verify_mds`] would pick for this code.
pub fn mds_strategy(code: &GrsCode) -> Result<MdsStrategy> {
    let codewords = (code.field.order() as u128).checked_pow(code.k as u32);
    if codewords.is_some_and(|c| c <= CODEWORD_LIMIT) {
        Ok(MdsStrategy::Codewords)
    } else if binomial(code.length() as u64, code.k as u64) <= COLUMN_SUBSET_LIMIT {
        Ok(MdsStrategy::ColumnSubsets)
    } else {
        Err(Error::TooLarge("neither MDS verification strategy fits its budget".into()))
    }
}

pub fn verify_mds_with(code: &GrsCode, strategy: MdsStrategy) -> Result<bool> {
    if code.k > code.length() || rank_fq(&code.field, &code.generator) < code.k {
        return Ok(false);
    }
    match strategy {
        MdsStrategy::Codewords => Ok(minimum_distance(code)? == code.length() - code.k + 1),
        MdsStrategy::ColumnSubsets => all_column_subsets_invertible(code),
    }
}

/// Minimum distance equals `length − k + 1`.
pub fn verify_mds(code: &GrsCode) -> Result<bool> {
    verify_mds_with(code, mds_strategy(code)?)
}

/// All `n`-subsets of `F_q` (as canonical index sets, colex order) passing
/// [`feasibility`]: `Ω(n, q)` for even `n`, the base sets of `Ω̃(n + 1, q)`
/// for odd `n`.
pub fn enumerate_omega(field: &Arc<FiniteField>, n: usize, budget: u128) -> Result<Vec<EvaluationSet>> {
    let q = field.order();
    if n == 0 || n > q {
        return Err(Error::InvalidArgument(format!("need 1 <= n <= {q}")));
    }
    let total = binomial(q as u64, n as u64);
    check_budget(total, budget)?;
    const CHUNK: u128 = 1 << 14;
    let elements: Vec<FieldElement> = field.elements().collect();
    let chunks: Vec<Vec<Vec<usize>>> = (0..total.div_ceil(CHUNK) as u64)
        .into_par_iter()
        .map(|c| {
            let start = c as u128 * CHUNK;
            let mut colex = Colex::unrank(q, n, start).expect("rank in range");
            let mut hits = Vec::new();
            let mut alphas = Vec::with_capacity(n);
            for i in 0..CHUNK.min(total - start) {
                if i > 0 {
                    colex.advance(|_| {});
                }
                alphas.clear();
                alphas.extend(colex.current().iter().map(|&j| elements[j]));
                if feasibility_of(field, &alphas) != Feasibility::Infeasible {
                    hits.push(colex.current().to_vec());
                }
            }
            hits
        })
        .collect();
    Ok(chunks
        .into_iter()
        .flatten()
        .map(|idx| EvaluationSet { field: field.clone(), alphas: idx.into_iter().map(|j| elements[j]).collect() })
        .collect())
}

/// `|Ω(n, q)|` (or `|Ω̃(n + 1, q)|` for odd `n`) predicted by the parity
/// census of the Paley structure: even `n` counts even plus odd induced
/// sub(di)graphs; odd `n` counts even ones for graphs, odd ones for tournaments.
pub fn omega_count_from_census(p: &PaleyStructure, n: usize, budget: u128) -> Result<u64> {
    let c = crate::census::census_exhaustive(p, n, budget)?.counts;
    Ok(match (n % 2, p.kind()) {
        (0, _) => c.even + c.odd,
        (_, PaleyKind::Graph) => c.even,
        (_, PaleyKind::Tournament) => c.odd,
    })
}

/// Sets `S` of even size, `2 ≤ |S| ≤ q − 1`, with `η(Δ_S(α)) = 1` on `S`
/// and `η(Δ_{F_q \ S}(β)) = 1` off `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairCensus {
    pub q: u64,
    pub count: BigUint,
    /// Count from the literal `2^q` scan, when `q` is small enough.
    pub scan_count: Option<u64>,
    /// Up to the requested number of members, smallest first in the scan
    /// order (or from the solution space when no scan ran).
    pub witnesses: Vec<Vec<usize>>,
}

fn pair_condition(f: &FiniteField, inside: &[FieldElement], outside: &[FieldElement]) -> bool {
    (0..inside.len()).all(|i| f.eta(delta_of(f, inside, i)) == 1)
        && (0..outside.len()).all(|i| f.eta(delta_of(f, outside, i)) == 1)
}

/// The family `𝒜` counted two ways.
///
/// Over GF(2) the conditions say `P[S]` has all (out-)degrees odd and
/// `P[F_q \ S]` all even, i.e. `(A + (1 + D) I) 1_S = D 1` with
/// `D = (q − 1) / 2`; the count is the number of even-weight solutions minus
/// the empty set. For `q ≤ 21` every subset is also checked against the
/// `Δ` conditions directly.
pub fn coeven_pair_census(field: &Arc<FiniteField>, witness_cap: usize) -> Result<PairCensus> {
    let q = field.order();
    let p = PaleyStructure::new(field.clone());
    let d_odd = (q - 1) / 2 % 2 == 1;
    let mut m = p.adjacency_gf2();
    if !d_odd {
        m = m.add(&Gf2Matrix::identity(q));
    }
    let rhs = if d_odd { BitVector::ones(q) } else { BitVector::zeros(q) };
    let space = m.solve_affine(&rhs);
    let count = match &space.particular {
        None => BigUint::zero(),
        Some(part) => {
            let parity = |x: &BitVector| x.count_ones() % 2 == 1;
            let evens = if space.kernel_basis.iter().any(parity) {
                BigUint::one() << (space.dimension() - 1)
            } else if parity(part) {
                BigUint::zero()
            } else {
                BigUint::one() << space.dimension()
            };
            // The zero vector solves the system only when it is homogeneous.
            if d_odd || evens.is_zero() {
                evens
            } else {
                evens - 1u32
            }
        }
    };
    let elements: Vec<FieldElement> = field.elements().collect();
    let (scan_count, witnesses) = if q <= PAIR_SCAN_MAX_ORDER {
        let hits: Vec<u64> = (0u64..1 << (q.saturating_sub(10)))
            .into_par_iter()
            .flat_map_iter(|c| (c << 10)..((c + 1) << 10).min(1 << q))
            .filter(|&mask| {
                let size = mask.count_ones() as usize;
                if size % 2 == 1 || size < 2 || size > q - 1 {
                    return false;
                }
                let (inside, outside): (Vec<FieldElement>, Vec<FieldElement>) =
                    elements.iter().partition(|x| mask >> x.index() & 1 == 1);
                pair_condition(field, &inside, &outside)
            })
            .collect();
        let witnesses =
            hits.iter().take(witness_cap).map(|&mask| (0..q).filter(|&i| mask >> i & 1 == 1).collect()).collect();
        (Some(hits.len() as u64), witnesses)
    } else {
        let mut witnesses = Vec::new();
        if witness_cap > 0 {
            for x in space.iter()? {
                let size = x.count_ones();
                if size % 2 == 0 && size >= 2 {
                    witnesses.push(x.ones_iter().collect());
                    if witnesses.len() == witness_cap {
                        break;
                    }
                }
            }
        }
        (None, witnesses)
    };
    Ok(PairCensus { q: field.q(), count, scan_count, witnesses })
}

/// `(A + (1 + D) I)` solution membership, for callers holding a candidate.
pub fn is_pair_member(p: &PaleyStructure, s: &[usize]) -> bool {
    let q = p.q();
    if s.len() % 2 == 1 || s.len() < 2 || s.len() > q - 1 {
        return false;
    }
    let inside = BitVector::from_indices(q, s.iter().copied());
    let outside: Vec<usize> = (0..q).filter(|&v| !inside.get(v)).collect();
    let odd_inside = s.iter().all(|&v| s.iter().filter(|&&u| p.counts_towards(v, u)).count() % 2 == 1);
    odd_inside && p.classify(&outside) == crate::subsets::ParityClass::Even
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::census::DEFAULT_EXHAUSTIVE_BUDGET;
    use crate::parity_core::{brute_force_coeven, SimpleGraph};

    fn field(q: u64) -> Arc<FiniteField> {
        Arc::new(FiniteField::with_order(q).unwrap())
    }

    fn set(f: &Arc<FiniteField>, xs: &[u32]) -> EvaluationSet {
        EvaluationSet::new(f.clone(), xs.iter().map(|&x| FieldElement(x)).collect()).unwrap()
    }

    #[test]
    fn delta_examples() {
        let f5 = field(5);
        let s = set(&f5, &[0, 1, 2]);
        assert_eq!((0..3).map(|i| delta(&s, i).0).collect::<Vec<_>>(), vec![2, 4, 2]);
        assert_eq!(delta(&set(&f5, &[3]), 0), FieldElement::ONE);
        let f13 = field(13);
        for x in 1..13 {
            let s = set(&f13, &[0, x]);
            let prod = f13.mul(delta(&s, 0), delta(&s, 1));
            let x = FieldElement(x);
            assert_eq!(prod, f13.neg(f13.mul(x, x)));
        }
    }

    #[test]
    fn feasibility_examples() {
        let f5 = field(5);
        assert_eq!(feasibility(&set(&f5, &[0, 1, 2])).unwrap(), Feasibility::Infeasible);
        assert_eq!(construct_self_dual(&set(&f5, &[0, 1, 2])).unwrap_err(), Error::Infeasible);
        let f13 = field(13);
        for a in 0..13 {
            for b in a + 1..13 {
                assert_eq!(feasibility(&set(&f13, &[a, b])).unwrap(), Feasibility::EvenLengthOk);
            }
        }
        assert_eq!(feasibility(&set(&f13, &[])).unwrap_err(), Error::EmptySet);
        assert!(EvaluationSet::new(f13.clone(), vec![FieldElement(1), FieldElement(1)]).is_err());
    }

    #[test]
    fn omega_counts() {
        assert_eq!(enumerate_omega(&field(13), 2, DEFAULT_OMEGA_BUDGET).unwrap().len(), 78);
        assert_eq!(enumerate_omega(&field(7), 2, DEFAULT_OMEGA_BUDGET).unwrap().len(), 0);
        for q in [7u64, 11, 19] {
            for n in [1usize, 5] {
                assert!(enumerate_omega(&field(q), n, DEFAULT_OMEGA_BUDGET).unwrap().is_empty(), "q = {q}, n = {n}");
            }
        }
        assert_eq!(enumerate_omega(&field(13), 6, 10).unwrap_err().kind(), "BudgetExceeded");
    }

    #[test]
    fn omega_matches_census() {
        for (q, ns) in
            [(13u64, vec![2usize, 3, 4, 5, 6]), (7, vec![2, 3, 4, 5]), (11, vec![2, 3, 4, 5]), (9, vec![2, 3, 4])]
        {
            let f = field(q);
            let p = PaleyStructure::new(f.clone());
            for n in ns {
                let omega = enumerate_omega(&f, n, DEFAULT_OMEGA_BUDGET).unwrap().len() as u64;
                assert_eq!(
                    omega,
                    omega_count_from_census(&p, n, DEFAULT_EXHAUSTIVE_BUDGET).unwrap(),
                    "q = {q}, n = {n}"
                );
            }
        }
    }

    #[test]
    fn every_omega_member_gives_an_mds_self_dual_code() {
        for (q, n) in [(13u64, 3usize), (13, 4), (13, 6), (17, 4), (9, 4), (11, 3), (25, 4)] {
            let f = field(q);
            let sets = enumerate_omega(&f, n, DEFAULT_OMEGA_BUDGET).unwrap();
            assert!(!sets.is_empty(), "q = {q}, n = {n}");
            for s in &sets {
                let code = construct_self_dual(s).unwrap();
                assert!(verify_self_dual(&code));
                assert_eq!(code.length(), 2 * code.k());
                assert_eq!(code.is_extended(), n % 2 == 1);
                assert_eq!(minimum_distance(&code).unwrap(), code.length() / 2 + 1);
                if n % 2 == 1 {
                    assert_eq!(code.lambda(), Some(FieldElement::ONE));
                }
            }
        }
    }

    #[test]
    fn perturbed_weights_break_self_duality() {
        let f = field(13);
        let s = &enumerate_omega(&f, 4, DEFAULT_OMEGA_BUDGET).unwrap()[0];
        let code = construct_self_dual(s).unwrap();
        let mut v = code.weights().to_vec();
        v[0] = f.add(v[0], FieldElement::ONE);
        if v[0].is_zero() {
            v[0] = f.add(v[0], FieldElement::ONE);
        }
        let bad = GrsCode::new(f.clone(), code.alphas().to_vec(), v, 2, false).unwrap();
        assert!(!verify_self_dual(&bad));
        let short = GrsCode::new(f.clone(), code.alphas().to_vec(), code.weights().to_vec(), 1, false).unwrap();
        assert!(!verify_self_dual(&short));
    }

    #[test]
    fn mds_strategies_agree() {
        let f = field(13);
        for n in [4usize, 6] {
            for s in enumerate_omega(&f, n, DEFAULT_OMEGA_BUDGET).unwrap().iter().take(20) {
                let code = construct_self_dual(s).unwrap();
                assert!(verify_mds_with(&code, MdsStrategy::Codewords).unwrap());
                assert!(verify_mds_with(&code, MdsStrategy::ColumnSubsets).unwrap());
            }
        }
        // A repeated column pair breaks MDS for both strategies.
        let bad = GrsCode {
            field: f.clone(),
            alphas: (0..4).map(FieldElement).collect(),
            v: vec![FieldElement::ONE; 4],
            k: 2,
            extended: false,
            lambda: None,
            generator: vec![
                vec![FieldElement(1), FieldElement(1), FieldElement(1), FieldElement(0)],
                vec![FieldElement(2), FieldElement(2), FieldElement(3), FieldElement(1)],
            ],
        };
        assert_eq!(minimum_distance(&bad).unwrap(), 2);
        assert!(!verify_mds_with(&bad, MdsStrategy::Codewords).unwrap());
        assert!(!verify_mds_with(&bad, MdsStrategy::ColumnSubsets).unwrap());
    }

    #[test]
    fn strategy_selection() {
        let f = field(13);
        let s = &enumerate_omega(&f, 6, DEFAULT_OMEGA_BUDGET).unwrap()[0];
        assert_eq!(mds_strategy(&construct_self_dual(s).unwrap()).unwrap(), MdsStrategy::Codewords);
        let big = field(101);
        let alphas: Vec<FieldElement> = (0..8).map(FieldElement).collect();
        let code = GrsCode::new(big.clone(), alphas, vec![FieldElement::ONE; 8], 4, false).unwrap();
        assert_eq!(mds_strategy(&code).unwrap(), MdsStrategy::ColumnSubsets);
        assert!(verify_mds(&code).unwrap());
    }

    #[test]
    fn records_round_trip() {
        let f = field(9);
        let s = &enumerate_omega(&f, 3, DEFAULT_OMEGA_BUDGET).unwrap()[0];
        let code = construct_self_dual(s).unwrap();
        let record = code.to_record();
        let back = GrsCode::from_record(&record).unwrap();
        assert_eq!(back.to_record(), record);
        let mut tampered = record.clone();
        tampered.generator[0][0] = (tampered.generator[0][0] + 1) % 9;
        assert!(GrsCode::from_record(&tampered).is_err());
        let text = code.generator_text();
        assert_eq!(text.lines().next().unwrap(), "9 4 2");
        assert_eq!(text.lines().count(), 3);
    }

    #[test]
    fn pair_census_values() {
        let expected = [(9u64, 15u64), (13, 0), (17, 255), (5, 0), (7, 0), (11, 0)];
        for (q, want) in expected {
            let rep = coeven_pair_census(&field(q), 4).unwrap();
            assert_eq!(rep.count, BigUint::from(want), "q = {q}");
            assert_eq!(rep.scan_count, Some(want), "q = {q}");
            let p = PaleyStructure::new(field(q));
            assert!(rep.witnesses.iter().all(|w| is_pair_member(&p, w)));
        }
        assert_eq!(coeven_pair_census(&field(29), 0).unwrap().count, BigUint::zero());
        assert_eq!(coeven_pair_census(&field(41), 0).unwrap().count, BigUint::from((1u64 << 20) - 1));
    }

    #[test]
    fn pair_census_matches_even_coeven_subsets() {
        // Oracle: co-even subsets V1 of P_q by brute force, keeping even |V1|.
        for q in [9u64, 13, 17] {
            let g = SimpleGraph::from_paley(&PaleyStructure::new(field(q))).unwrap();
            let n = q as usize;
            let mut even_coeven = 0u64;
            for mask in 0u64..1 << n {
                if mask.count_ones() % 2 == 0 {
                    let inside: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
                    let outside: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 0).collect();
                    if g.is_even_on(&inside) && g.is_even_on(&outside) {
                        even_coeven += 1;
                    }
                }
            }
            assert!(brute_force_coeven(&g).unwrap() >= even_coeven);
            let rep = coeven_pair_census(&field(q), 0).unwrap();
            assert_eq!(rep.count, BigUint::from(even_coeven - 1), "q = {q}");
        }
    }
}
