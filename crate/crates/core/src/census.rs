//! Parity censuses of induced sub(di)graphs, the character sums `A_k(W)`
//! behind the exact `N_r` expansion, Weil-bound checks and the
//! giant-subgraph lower bound with its `Θ`-set construction.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{check_budget, Error, Result};
use crate::ffield::{FieldElement, FiniteField};
use crate::paley::PaleyKind;
use crate::parity_core::{odd_parity_covers, OddParityCover, SimpleGraph};
use crate::subsets::{
    binomial, binomial_big, draw_rng, exhaustive_counts, random_subset, Colex, ParityCounts, ParityHost,
};

/// Default cap on subset steps for an exhaustive census.
pub const DEFAULT_EXHAUSTIVE_BUDGET: u128 = 200_000_000;
/// Default cap on the terms behind character-sum quantities.
pub const DEFAULT_CHARACTER_BUDGET: u128 = 10_000_000;
/// Number of sets `W` needed by [`reconstruct_nr`] at `q = 17, r = 5`;
/// the default ceiling for that pipeline.
pub const DEFAULT_RECONSTRUCT_BUDGET: u128 = 9402;
/// Largest host accepted by [`theta_set`].
pub const THETA_MAX_VERTICES: usize = 14;

const SAMPLE_CHUNK: u64 = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CensusMode {
    Exhaustive,
    Sampled,
}

/// Fractions of sampled draws per parity class with their standard errors.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampleEstimate {
    pub even_fraction: f64,
    pub odd_fraction: f64,
    pub mixed_fraction: f64,
    pub even_stderr: f64,
    pub odd_stderr: f64,
    pub mixed_stderr: f64,
}

impl SampleEstimate {
    fn from_counts(c: &ParityCounts) -> Self {
        let n = c.total() as f64;
        let frac = |k: u64| k as f64 / n;
        let se = |k: u64| {
            let f = frac(k);
            (f * (1.0 - f) / n).sqrt()
        };
        SampleEstimate {
            even_fraction: frac(c.even),
            odd_fraction: frac(c.odd),
            mixed_fraction: frac(c.mixed),
            even_stderr: se(c.even),
            odd_stderr: se(c.odd),
            mixed_stderr: se(c.mixed),
        }
    }
}

/// Parity census of the order-`r` induced sub(di)graphs of one host.
///
/// In sampled mode `counts` tallies the drawn subsets, not the whole population.
#[derive(Clone, Debug, PartialEq)]
pub struct CensusReport {
    pub order: usize,
    pub r: usize,
    pub mode: CensusMode,
    /// `C(order, r)`.
    pub population: BigUint,
    pub counts: ParityCounts,
    pub samples: Option<u64>,
    pub seed: Option<u64>,
    pub estimate: Option<SampleEstimate>,
    pub truncated: bool,
}

/// Exact census of all `r`-subsets; fails when `C(n, r)` exceeds `budget`.
pub fn census_exhaustive<H: ParityHost>(host: &H, r: usize, budget: u128) -> Result<CensusReport> {
    let n = host.order();
    if r > n {
        return Err(Error::InvalidArgument(format!("order {r} exceeds the {n} vertices")));
    }
    let population = binomial_big(n as u64, r as u64);
    check_budget(binomial(n as u64, r as u64), budget)?;
    let counts = exhaustive_counts(host, r);
    debug_assert_eq!(BigUint::from(counts.total()), population);
    Ok(CensusReport {
        order: n,
        r,
        mode: CensusMode::Exhaustive,
        population,
        counts,
        samples: None,
        seed: None,
        estimate: None,
        truncated: false,
    })
}

/// Census of `samples` uniform `r`-subsets. Draw `i` always uses the same
/// generator stream, so the result does not depend on the thread count.
pub fn census_sampled<H: ParityHost>(host: &H, r: usize, samples: u64, seed: u64) -> Result<CensusReport> {
    let n = host.order();
    if r > n || samples == 0 {
        return Err(Error::InvalidArgument(format!("need 1 <= samples and r <= {n}")));
    }
    let counts = (0..samples.div_ceil(SAMPLE_CHUNK))
        .into_par_iter()
        .map(|c| {
            let mut counts = ParityCounts::default();
            let mut subset = Vec::with_capacity(r);
            for i in c * SAMPLE_CHUNK..((c + 1) * SAMPLE_CHUNK).min(samples) {
                random_subset(&mut draw_rng(seed, i), n, r, &mut subset);
                counts.record(host.classify(&subset));
            }
            counts
        })
        .reduce(ParityCounts::default, ParityCounts::merge);
    Ok(CensusReport {
        order: n,
        r,
        mode: CensusMode::Sampled,
        population: binomial_big(n as u64, r as u64),
        estimate: Some(SampleEstimate::from_counts(&counts)),
        counts,
        samples: Some(samples),
        seed: Some(seed),
        truncated: false,
    })
}

/// Number of even induced subgraphs with order in `lo..=hi`, exhaustively.
pub fn even_count_in_range<H: ParityHost>(host: &H, lo: usize, hi: usize, budget: u128) -> Result<u64> {
    let mut total = 0;
    for r in lo..=hi.min(host.order()) {
        total += census_exhaustive(host, r, budget)?.counts.even;
    }
    Ok(total)
}

/// `f_W(x) = ∏_{w ∈ W} (x − w)`, with `f_∅ = 1`.
pub fn f_w(field: &FiniteField, w: &[FieldElement], x: FieldElement) -> FieldElement {
    w.iter().fold(FieldElement::ONE, |acc, &wi| field.mul(acc, field.sub(x, wi)))
}

fn check_distinct(field: &FiniteField, w: &[FieldElement]) -> Result<()> {
    let mut seen = vec![false; field.order()];
    for &x in w {
        if x.index() >= field.order() {
            return Err(Error::InvalidElement(x.0 as u64));
        }
        if std::mem::replace(&mut seen[x.index()], true) {
            return Err(Error::InvalidArgument("repeated element in W".into()));
        }
    }
    Ok(())
}

/// Counts of `u ∉ W` with `η(f_W(u)) = +1` and `−1`.
fn character_split(field: &FiniteField, w: &[FieldElement]) -> (u64, u64) {
    let mut in_w = vec![false; field.order()];
    for &x in w {
        in_w[x.index()] = true;
    }
    field.elements().filter(|u| !in_w[u.index()]).fold((0, 0), |(plus, minus), u| {
        if field.eta(f_w(field, w, u)) == 1 {
            (plus + 1, minus)
        } else {
            (plus, minus + 1)
        }
    })
}

/// `e_k` of a multiset holding `plus` copies of `+1` and `minus` copies of `−1`.
fn signed_elementary(plus: u64, minus: u64, k: u64) -> BigInt {
    (0..=k)
        .map(|j| {
            let term = BigInt::from(binomial_big(plus, j) * binomial_big(minus, k - j));
            if (k - j) % 2 == 1 {
                -term
            } else {
                term
            }
        })
        .sum()
}

/// `A_k(W) = Σ_{U ⊆ F_q \ W, |U| = k} ∏_{u ∈ U} η(f_W(u))`.
///
/// Every `f_W(u)` with `u ∉ W` is non-zero, so the sum is the `k`-th elementary
/// symmetric polynomial of a `±1` multiset and only the two multiplicities matter.
pub fn character_sum_a(field: &FiniteField, w: &[FieldElement], k: usize) -> Result<BigInt> {
    check_distinct(field, w)?;
    let rest = field.order() - w.len();
    if k > rest {
        return Err(Error::InvalidArgument(format!("k = {k} exceeds the {rest} elements outside W")));
    }
    let (plus, minus) = character_split(field, w);
    Ok(signed_elementary(plus, minus, k as u64))
}

/// `N_r` (or `Ñ_r` for a tournament) from character sums alone:
/// `2^{-r} Σ_k s_k Σ_{|W| = r−k} A_k(W)` with `s_k = (−1)^{k(r−k)}`, times
/// `(−1)^{k(k−1)/2}` for tournaments.
///
/// `budget` caps the number of sets `W` visited.
pub fn reconstruct_nr(field: &FiniteField, r: usize, budget: u128) -> Result<BigUint> {
    let q = field.order();
    if r == 0 || r > q {
        return Err(Error::InvalidArgument(format!("need 1 <= r <= {q}")));
    }
    let needed = (0..=r).map(|j| binomial(q as u64, j as u64)).fold(0u128, u128::saturating_add);
    check_budget(needed, budget)?;
    let tournament = !field.minus_one_is_square();
    let elements: Vec<FieldElement> = field.elements().collect();
    let mut total = BigInt::zero();
    for k in 0..=r {
        let size = r - k;
        // Σ_W A_k(W) over all |W| = size, split by the (plus, minus) profile.
        let sum: BigInt = match Colex::first(q, size) {
            None => BigInt::zero(),
            Some(first) => {
                let mut sets = vec![first.current().to_vec()];
                let mut colex = first;
                while colex.advance(|_| {}) {
                    sets.push(colex.current().to_vec());
                }
                sets.par_iter()
                    .map(|idx| {
                        let w: Vec<FieldElement> = idx.iter().map(|&i| elements[i]).collect();
                        let (plus, minus) = character_split(field, &w);
                        signed_elementary(plus, minus, k as u64)
                    })
                    .sum()
            }
        };
        let mut negative = (k * (r - k)) % 2 == 1;
        if tournament && (k * k.saturating_sub(1) / 2) % 2 == 1 {
            negative = !negative;
        }
        total += if negative { -sum } else { sum };
    }
    let denom = BigInt::one() << r;
    if (&total % &denom) != BigInt::zero() || total.is_negative() {
        return Err(Error::DomainError(format!("expansion gave {total}, not a multiple of 2^{r}")));
    }
    Ok((total / denom).to_biguint().expect("checked non-negative"))
}

/// Outcome of one Weil-bound check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeilReport {
    pub q: u64,
    pub w: Vec<FieldElement>,
    pub n: u32,
    /// `|Σ_c η(f_W(c)^n)|`.
    pub lhs: u64,
    /// `(|W| − 1) √q`.
    pub bound: f64,
    pub ok: bool,
}

/// `|Σ_{c ∈ F_q} η(f_W(c)^n)| ≤ (|W| − 1) √q`, by direct summation.
pub fn weil_check(field: &FiniteField, w: &[FieldElement], n: u32) -> Result<WeilReport> {
    check_distinct(field, w)?;
    if w.len() < 2 || n.is_multiple_of(2) {
        return Err(Error::InvalidArgument("need |W| >= 2 and odd n".into()));
    }
    let sum: i64 = field.elements().map(|c| field.eta(field.pow(f_w(field, w, c), n as u64)) as i64).sum();
    let lhs = sum.unsigned_abs();
    let d = (w.len() - 1) as u128;
    Ok(WeilReport {
        q: field.q(),
        w: w.to_vec(),
        n,
        lhs,
        bound: d as f64 * (field.q() as f64).sqrt(),
        // lhs <= d √q compared in integers.
        ok: (lhs as u128).pow(2) <= d * d * field.q() as u128,
    })
}

/// Odd prime powers up to `max`.
pub fn odd_prime_powers(max: u64) -> Vec<u64> {
    (3..=max).filter(|&q| q % 2 == 1 && crate::ffield::prime_power(q).is_some()).collect()
}

/// `trials` random Weil checks: `|W|` is `deg` if given, else uniform in
/// `2..=6`; the order is `q` if given, else uniform over odd prime powers
/// up to 101 that are at least `|W|`; `n` is uniform among `1, 3, 5`.
/// Trial `i` uses stream `i`.
pub fn weil_trials(q: Option<u64>, deg: Option<usize>, trials: u64, seed: u64) -> Result<Vec<WeilReport>> {
    let orders = match q {
        Some(q) => vec![q],
        None => odd_prime_powers(101),
    };
    let fields = orders.iter().map(|&q| FiniteField::with_order(q)).collect::<Result<Vec<_>>>()?;
    (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = draw_rng(seed, i);
            let size = deg.unwrap_or_else(|| rng.gen_range(2..=6));
            let fits: Vec<&FiniteField> = fields.iter().filter(|f| f.order() >= size).collect();
            if fits.is_empty() {
                return Err(Error::InvalidArgument(format!("|W| = {size} exceeds every field order")));
            }
            let field = fits[rng.gen_range(0..fits.len())];
            let n = [1, 3, 5][rng.gen_range(0..3)];
            let mut idx = Vec::new();
            random_subset(&mut rng, field.order(), size, &mut idx);
            let w: Vec<FieldElement> = idx.into_iter().map(|i| FieldElement(i as u32)).collect();
            weil_check(field, &w, n)
        })
        .collect()
}

/// `H(x) = −x log₂ x − (1 − x) log₂(1 − x)`.
pub fn binary_entropy(x: f64) -> Result<f64> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::DomainError(format!("entropy needs 0 < x < 1, got {x}")));
    }
    Ok(-x * x.log2() - (1.0 - x) * (1.0 - x).log2())
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundReport {
    pub n: usize,
    pub theta: usize,
    /// `C(n, n − θ) / C(n − ⌈θ/2⌉, n − θ)`.
    pub bound_value: BigRational,
    /// `2^{(H(α/2) − α) n}` with `α = θ / n`, when `0 < θ < n`.
    pub entropy_rhs: Option<f64>,
}

impl BoundReport {
    /// Smallest integer not below the bound.
    pub fn ceil(&self) -> BigInt {
        self.bound_value.ceil().to_integer()
    }

    pub fn to_f64(&self) -> f64 {
        self.bound_value.numer().to_f64().unwrap_or(f64::INFINITY)
            / self.bound_value.denom().to_f64().unwrap_or(f64::INFINITY)
    }
}

/// Lower bound on the number of even induced subgraphs with order in
/// `[θ/2, θ]` of any `n`-vertex graph.
pub fn giant_lower_bound(n: usize, theta: usize) -> Result<BoundReport> {
    if theta == 0 || theta > n {
        return Err(Error::InvalidArgument(format!("need 1 <= theta <= n, got theta = {theta}, n = {n}")));
    }
    let (n64, t64) = (n as u64, theta as u64);
    let half = t64.div_ceil(2);
    let bound_value =
        BigRational::new(BigInt::from(binomial_big(n64, n64 - t64)), BigInt::from(binomial_big(n64 - half, n64 - t64)));
    let entropy_rhs = (theta < n).then(|| {
        let alpha = theta as f64 / n as f64;
        let h = binary_entropy(alpha / 2.0).expect("alpha / 2 lies in (0, 1/2)");
        ((h - alpha) * n as f64).exp2()
    });
    Ok(BoundReport { n, theta, bound_value, entropy_rhs })
}

/// Every part of size at least `θ/2` of an even-even partition of `G[W]`,
/// over all `θ`-subsets `W`, deduplicated and sorted.
pub fn theta_set(g: &SimpleGraph, theta: usize, budget: u128) -> Result<Vec<Vec<usize>>> {
    let n = g.n();
    if n > THETA_MAX_VERTICES {
        return Err(Error::TooLarge(format!("theta_set needs n <= {THETA_MAX_VERTICES}, got {n}")));
    }
    if theta == 0 || theta > n {
        return Err(Error::InvalidArgument(format!("need 1 <= theta <= n, got theta = {theta}")));
    }
    check_budget(binomial(n as u64, theta as u64), budget)?;
    let half = theta.div_ceil(2);
    let mut out: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut colex = Colex::first(n, theta).expect("theta <= n");
    loop {
        let w = colex.current().to_vec();
        let sub = g.induced(&w);
        let (ext, space) = odd_parity_covers(&sub);
        for cover in space.iter()? {
            let part = crate::parity_core::cover_to_partition(&ext, &OddParityCover { cover })?;
            for side in [&part.part1, &part.part2] {
                if side.len() >= half {
                    out.insert(side.iter().map(|&i| w[i]).collect());
                }
            }
        }
        if !colex.advance(|_| {}) {
            break;
        }
    }
    Ok(out.into_iter().collect())
}

/// Whether the structure is an undirected Paley graph or a tournament.
pub fn kind_of(field: &FiniteField) -> PaleyKind {
    if field.minus_one_is_square() {
        PaleyKind::Graph
    } else {
        PaleyKind::Tournament
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paley::PaleyStructure;
    use crate::subsets::ParityClass;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::sync::Arc;

    fn field(q: u64) -> Arc<FiniteField> {
        Arc::new(FiniteField::with_order(q).unwrap())
    }

    fn paley(q: u64) -> PaleyStructure {
        PaleyStructure::new(field(q))
    }

    fn exhaustive(p: &PaleyStructure, r: usize) -> ParityCounts {
        census_exhaustive(p, r, DEFAULT_EXHAUSTIVE_BUDGET).unwrap().counts
    }

    // Independent oracle: classify every subset by pairwise degree counts.
    fn naive_counts(p: &PaleyStructure, r: usize) -> ParityCounts {
        let q = p.q();
        let mut c = ParityCounts::default();
        for m in 0u32..1 << q {
            if m.count_ones() as usize == r {
                let s: Vec<usize> = (0..q).filter(|i| m >> i & 1 == 1).collect();
                let degs: Vec<usize> = s.iter().map(|&v| s.iter().filter(|&&u| p.has_arc(v, u)).count()).collect();
                c.record(if degs.iter().all(|d| d % 2 == 0) {
                    ParityClass::Even
                } else if degs.iter().all(|d| d % 2 == 1) {
                    ParityClass::Odd
                } else {
                    ParityClass::Mixed
                });
            }
        }
        c
    }

    #[test]
    fn p13_small_orders() {
        let p = paley(13);
        let c1 = exhaustive(&p, 1);
        assert_eq!((c1.even, c1.odd, c1.mixed), (13, 0, 0));
        let c2 = exhaustive(&p, 2);
        assert_eq!((c2.even, c2.odd, c2.mixed), (39, 39, 0));
        let pt7 = paley(7);
        assert_eq!(exhaustive(&pt7, 2).even, 0);
    }

    #[test]
    fn walk_matches_naive_classification() {
        for q in [7u64, 9, 11, 13] {
            let p = paley(q);
            for r in 0..=q as usize {
                assert_eq!(exhaustive(&p, r), naive_counts(&p, r), "q = {q}, r = {r}");
            }
        }
    }

    #[test]
    fn counts_partition_population() {
        let p = paley(29);
        for r in 1..=6 {
            let rep = census_exhaustive(&p, r, DEFAULT_EXHAUSTIVE_BUDGET).unwrap();
            assert_eq!(BigUint::from(rep.counts.total()), rep.population);
        }
    }

    #[test]
    fn budget_is_enforced() {
        let p = paley(13);
        let err = census_exhaustive(&p, 6, 1000).unwrap_err();
        assert_eq!(err.kind(), "BudgetExceeded");
    }

    #[test]
    fn complement_swaps_odd_and_even_for_even_orders() {
        for q in [13u64, 17] {
            let g = SimpleGraph::from_paley(&paley(q)).unwrap();
            let gc = g.complement();
            for r in [2usize, 4, 6] {
                let odd = census_exhaustive(&g, r, DEFAULT_EXHAUSTIVE_BUDGET).unwrap().counts.odd;
                let even_c = census_exhaustive(&gc, r, DEFAULT_EXHAUSTIVE_BUDGET).unwrap().counts.even;
                assert_eq!(odd, even_c, "q = {q}, r = {r}");
                // P_q is self-complementary.
                assert_eq!(odd, census_exhaustive(&g, r, DEFAULT_EXHAUSTIVE_BUDGET).unwrap().counts.even);
            }
        }
    }

    #[test]
    fn tournament_exclusions() {
        for q in [7u64, 11] {
            let p = paley(q);
            for r in 1..=7 {
                let c = exhaustive(&p, r);
                if matches!(r % 4, 2 | 3) {
                    assert_eq!(c.even, 0, "q = {q}, r = {r}");
                }
                if matches!(r % 4, 1 | 2) {
                    assert_eq!(c.odd, 0, "q = {q}, r = {r}");
                }
            }
        }
    }

    #[test]
    fn sampling_is_reproducible_and_unbiased() {
        let p = paley(17);
        let truth = exhaustive(&p, 4);
        let a = census_sampled(&p, 4, 50_000, 11).unwrap();
        let b = census_sampled(&p, 4, 50_000, 11).unwrap();
        assert_eq!(a, b);
        let est = a.estimate.unwrap();
        let f = truth.even as f64 / truth.total() as f64;
        assert!((est.even_fraction - f).abs() <= 4.0 * est.even_stderr, "{est:?} vs {f}");
        let thread_one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        assert_eq!(thread_one.install(|| census_sampled(&p, 4, 50_000, 11).unwrap()), a);
    }

    #[test]
    fn character_sum_examples() {
        let f = field(13);
        for w in 0..13 {
            assert_eq!(character_sum_a(&f, &[FieldElement(w)], 0).unwrap(), BigInt::one());
            assert_eq!(character_sum_a(&f, &[FieldElement(w)], 1).unwrap(), BigInt::zero());
        }
        assert_eq!(character_sum_a(&f, &[], 3).unwrap(), BigInt::from(286));
        assert!(character_sum_a(&f, &[FieldElement(1), FieldElement(1)], 1).is_err());
        assert!(character_sum_a(&f, &[FieldElement(1)], 13).is_err());
    }

    #[test]
    fn character_sum_matches_subset_enumeration() {
        // Oracle: literal sum over k-subsets U of F_q \ W.
        for q in [11u64, 13] {
            let f = field(q);
            let mut rng = ChaCha8Rng::seed_from_u64(q);
            for _ in 0..20 {
                let size = rng.gen_range(0..4);
                let mut idx = Vec::new();
                random_subset(&mut rng, q as usize, size, &mut idx);
                let w: Vec<FieldElement> = idx.iter().map(|&i| FieldElement(i as u32)).collect();
                let rest: Vec<FieldElement> = f.elements().filter(|x| !w.contains(x)).collect();
                for k in 0..=4 {
                    let mut expected = 0i64;
                    for m in 0u32..1 << rest.len() {
                        if m.count_ones() as usize == k {
                            expected += (0..rest.len())
                                .filter(|i| m >> i & 1 == 1)
                                .map(|i| f.eta(f_w(&f, &w, rest[i])) as i64)
                                .product::<i64>();
                        }
                    }
                    assert_eq!(character_sum_a(&f, &w, k).unwrap(), BigInt::from(expected));
                }
            }
        }
    }

    #[test]
    fn reconstruction_matches_census() {
        for q in [7u64, 11, 13, 17] {
            let f = field(q);
            let p = PaleyStructure::new(f.clone());
            for r in 1..=4 {
                let nr = reconstruct_nr(&f, r, DEFAULT_RECONSTRUCT_BUDGET).unwrap();
                assert_eq!(nr, BigUint::from(exhaustive(&p, r).even), "q = {q}, r = {r}");
            }
        }
        assert_eq!(reconstruct_nr(&field(13), 2, DEFAULT_RECONSTRUCT_BUDGET).unwrap(), BigUint::from(39u32));
        assert_eq!(reconstruct_nr(&field(13), 1, DEFAULT_RECONSTRUCT_BUDGET).unwrap(), BigUint::from(13u32));
        let f17 = field(17);
        assert_eq!(
            reconstruct_nr(&f17, 5, DEFAULT_RECONSTRUCT_BUDGET).unwrap(),
            BigUint::from(exhaustive(&PaleyStructure::new(f17.clone()), 5).even)
        );
        assert_eq!(reconstruct_nr(&field(19), 5, DEFAULT_RECONSTRUCT_BUDGET).unwrap_err().kind(), "BudgetExceeded");
    }

    #[test]
    fn weil_examples() {
        let f = field(13);
        let rep = weil_check(&f, &[FieldElement(0), FieldElement(1)], 1).unwrap();
        assert!(rep.ok);
        // Σ η(c(c-1)) = -1 for any odd q.
        assert_eq!(rep.lhs, 1);
        assert!(weil_check(&f, &[FieldElement(0)], 1).is_err());
        assert!(weil_check(&f, &[FieldElement(0), FieldElement(2)], 2).is_err());
        let reports = weil_trials(None, None, 1000, 5).unwrap();
        assert!(reports.iter().all(|r| r.ok && r.q <= 101 && (2..=6).contains(&r.w.len()) && r.n % 2 == 1));
        assert_eq!(reports, weil_trials(None, None, 1000, 5).unwrap());
    }

    #[test]
    fn entropy_values() {
        assert_eq!(binary_entropy(0.5).unwrap(), 1.0);
        for i in 1..100 {
            let x = i as f64 / 100.0;
            assert!((binary_entropy(x).unwrap() - binary_entropy(1.0 - x).unwrap()).abs() < 1e-12);
            assert!(binary_entropy(x / 2.0).unwrap() - x > 0.0, "alpha = {x}");
        }
        assert!(binary_entropy(0.35).unwrap() - 0.7 > 0.0);
        assert_eq!(binary_entropy(0.0).unwrap_err().kind(), "DomainError");
        assert!(binary_entropy(1.0).is_err());
    }

    #[test]
    fn bound_values() {
        let int = |n| BigRational::from_integer(BigInt::from(n));
        assert_eq!(giant_lower_bound(4, 2).unwrap().bound_value, int(2));
        assert_eq!(giant_lower_bound(12, 6).unwrap().bound_value, int(11));
        assert_eq!(giant_lower_bound(7, 7).unwrap().bound_value, int(1));
        let b = giant_lower_bound(8, 4).unwrap();
        assert_eq!(b.bound_value, BigRational::new(BigInt::from(14), BigInt::from(3)));
        assert_eq!(b.ceil(), BigInt::from(5));
        assert!(giant_lower_bound(5, 0).is_err());
        // Odd theta rounds theta/2 up: C(5, 2) / C(3, 2).
        assert_eq!(giant_lower_bound(5, 3).unwrap().bound_value, BigRational::new(BigInt::from(10), BigInt::from(3)));
    }

    #[test]
    fn theta_set_examples() {
        let empty = SimpleGraph::empty(4);
        let t = theta_set(&empty, 2, DEFAULT_EXHAUSTIVE_BUDGET).unwrap();
        assert_eq!(t.len(), 10);
        let p13 = SimpleGraph::from_paley(&paley(13)).unwrap();
        let g8 = p13.induced(&(0..8).collect::<Vec<_>>());
        let t8 = theta_set(&g8, 4, DEFAULT_EXHAUSTIVE_BUDGET).unwrap();
        assert!(BigInt::from(t8.len()) >= giant_lower_bound(8, 4).unwrap().ceil());
        for s in &t8 {
            assert!(s.len() >= 2 && s.len() <= 4 && g8.is_even_on(s));
        }
        let k4_minus = SimpleGraph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let full = theta_set(&k4_minus, 4, DEFAULT_EXHAUSTIVE_BUDGET).unwrap();
        assert!(full.contains(&vec![0, 1, 2, 3]));
        assert_eq!(theta_set(&SimpleGraph::empty(15), 3, u128::MAX).unwrap_err().kind(), "TooLarge");
    }

    #[test]
    fn theta_set_dominates_bound_on_random_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..5 {
            let g = SimpleGraph::random(&mut rng, 10, 1, 2);
            let t = theta_set(&g, 5, DEFAULT_EXHAUSTIVE_BUDGET).unwrap();
            assert!(BigInt::from(t.len()) >= giant_lower_bound(10, 5).unwrap().ceil());
            let evens = even_count_in_range(&g, 3, 5, DEFAULT_EXHAUSTIVE_BUDGET).unwrap();
            assert!(evens as usize >= t.len());
        }
    }
}
