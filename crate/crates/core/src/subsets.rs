//! Subset enumeration machinery shared by the census and code-search modules:
//! binomials, colexicographic walks with incremental degree parities, and
//! reproducible random subsets.

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::gf2::{words_for, Gf2Matrix};

/// `C(n, k)`, saturating at `u128::MAX`.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step.
        let num = (n - i) as u128;
        let den = (i + 1) as u128;
        let g = num_integer::gcd(acc, den);
        let (a, d) = (acc / g, den / g);
        let Some(x) = a.checked_mul(num / d) else {
            return u128::MAX;
        };
        acc = x;
    }
    acc
}

pub fn binomial_big(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::default();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// Degree-parity class of an induced sub(di)graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ParityClass {
    Even,
    Odd,
    Mixed,
}

/// A host whose induced sub(di)graphs can be classified by degree parity.
///
/// Row `u` of [`ParityHost::toggle_rows`] is the set of vertices whose
/// (out-)degree parity flips when `u` joins the current subset.
pub trait ParityHost: Sync {
    fn order(&self) -> usize;
    fn toggle_rows(&self) -> &Gf2Matrix;
    /// Whether `v` counts `u` towards its (out-)degree.
    fn counts_towards(&self, v: usize, u: usize) -> bool;

    fn classify(&self, subset: &[usize]) -> ParityClass {
        classify_pairwise(subset, |v, u| self.counts_towards(v, u))
    }
}

pub(crate) fn classify_pairwise(subset: &[usize], arc: impl Fn(usize, usize) -> bool) -> ParityClass {
    if subset.is_empty() {
        return ParityClass::Even;
    }
    let (mut even, mut odd) = (true, true);
    for &v in subset {
        let d = subset.iter().filter(|&&u| u != v && arc(v, u)).count();
        if d % 2 == 0 {
            odd = false;
        } else {
            even = false;
        }
        if !even && !odd {
            return ParityClass::Mixed;
        }
    }
    if even {
        ParityClass::Even
    } else {
        ParityClass::Odd
    }
}

/// Exact tallies of the three parity classes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParityCounts {
    pub even: u64,
    pub odd: u64,
    pub mixed: u64,
}

impl ParityCounts {
    pub fn total(&self) -> u64 {
        self.even + self.odd + self.mixed
    }

    pub fn record(&mut self, class: ParityClass) {
        match class {
            ParityClass::Even => self.even += 1,
            ParityClass::Odd => self.odd += 1,
            ParityClass::Mixed => self.mixed += 1,
        }
    }

    pub fn merge(self, other: ParityCounts) -> ParityCounts {
        ParityCounts { even: self.even + other.even, odd: self.odd + other.odd, mixed: self.mixed + other.mixed }
    }
}

/// Maintains, for every vertex, the parity of its (out-)degree into the
/// current subset; one row XOR per insertion or deletion.
pub(crate) struct ParityWalk<'a> {
    toggles: &'a Gf2Matrix,
    parity: Vec<u64>,
    mask: Vec<u64>,
}

impl<'a> ParityWalk<'a> {
    pub(crate) fn new(toggles: &'a Gf2Matrix) -> Self {
        let w = words_for(toggles.cols());
        ParityWalk { toggles, parity: vec![0; w], mask: vec![0; w] }
    }

    #[inline]
    pub(crate) fn toggle(&mut self, u: usize) {
        for (p, t) in self.parity.iter_mut().zip(self.toggles.row_words(u)) {
            *p ^= t;
        }
        self.mask[u / 64] ^= 1u64 << (u % 64);
    }

    #[inline]
    pub(crate) fn class(&self) -> ParityClass {
        let (mut all_zero, mut all_one) = (true, true);
        for (p, m) in self.parity.iter().zip(&self.mask) {
            let inside = p & m;
            all_zero &= inside == 0;
            all_one &= inside == *m;
        }
        if all_zero {
            ParityClass::Even
        } else if all_one {
            ParityClass::Odd
        } else {
            ParityClass::Mixed
        }
    }
}

/// k-subsets of `0..n` in colexicographic order.
#[derive(Clone, Debug)]
pub struct Colex {
    n: usize,
    current: Vec<usize>,
}

impl Colex {
    pub fn first(n: usize, k: usize) -> Option<Self> {
        (k <= n).then(|| Colex { n, current: (0..k).collect() })
    }

    /// The subset of colex rank `rank`, via the combinatorial number system.
    pub fn unrank(n: usize, k: usize, mut rank: u128) -> Option<Self> {
        if k > n || rank >= binomial(n as u64, k as u64) {
            return None;
        }
        let mut current = vec![0; k];
        let mut hi = n;
        for i in (0..k).rev() {
            // Largest c < hi with C(c, i + 1) <= rank.
            let mut c = hi - 1;
            while binomial(c as u64, i as u64 + 1) > rank {
                c -= 1;
            }
            current[i] = c;
            rank -= binomial(c as u64, i as u64 + 1);
            hi = c;
        }
        Some(Colex { n, current })
    }

    pub fn current(&self) -> &[usize] {
        &self.current
    }

    /// Steps to the colex successor, reporting removed and added elements.
    pub fn advance(&mut self, mut on_change: impl FnMut(usize)) -> bool {
        let k = self.current.len();
        if k == 0 {
            return false;
        }
        let mut j = 0;
        while j + 1 < k && self.current[j] + 1 == self.current[j + 1] {
            j += 1;
        }
        if j + 1 == k && self.current[j] + 1 >= self.n {
            return false;
        }
        for i in 0..=j {
            on_change(self.current[i]);
        }
        self.current[j] += 1;
        for i in 0..j {
            self.current[i] = i;
        }
        for i in 0..=j {
            on_change(self.current[i]);
        }
        true
    }
}

const CHUNK: u128 = 1 << 16;

/// Census of the colex ranks `start..start + len` of the `r`-subsets, on the
/// calling thread.
pub(crate) fn census_range<H: ParityHost + ?Sized>(host: &H, r: usize, start: u128, len: u128) -> ParityCounts {
    let mut counts = ParityCounts::default();
    let Some(mut colex) = Colex::unrank(host.order(), r, start) else {
        return counts;
    };
    let mut walk = ParityWalk::new(host.toggle_rows());
    for &u in colex.current() {
        walk.toggle(u);
    }
    counts.record(walk.class());
    for _ in 1..len {
        if !colex.advance(|u| walk.toggle(u)) {
            break;
        }
        counts.record(walk.class());
    }
    counts
}

/// Exact parity census of every `r`-subset of the host, in parallel over
/// contiguous colex ranges.
pub(crate) fn exhaustive_counts<H: ParityHost>(host: &H, r: usize) -> ParityCounts {
    let total = binomial(host.order() as u64, r as u64);
    if total == 0 {
        return ParityCounts::default();
    }
    (0..total.div_ceil(CHUNK) as u64)
        .into_par_iter()
        .map(|c| {
            let start = c as u128 * CHUNK;
            census_range(host, r, start, CHUNK.min(total - start))
        })
        .reduce(ParityCounts::default, ParityCounts::merge)
}

/// Deterministic generator for draw `index` under `seed`, independent of how
/// draws are split across workers.
pub fn draw_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Uniform `r`-subset of `0..n` by a partial Fisher-Yates shuffle over the
/// identity permutation, touching only the swapped positions.
pub fn random_subset<R: Rng>(rng: &mut R, n: usize, r: usize, out: &mut Vec<usize>) {
    assert!(r <= n);
    out.clear();
    let mut swapped: Vec<(usize, usize)> = Vec::with_capacity(2 * r);
    let lookup =
        |swapped: &[(usize, usize)], i: usize| swapped.iter().rev().find(|(pos, _)| *pos == i).map_or(i, |&(_, v)| v);
    for j in 0..r {
        let t = rng.gen_range(j..n);
        let vj = lookup(&swapped, j);
        let vt = lookup(&swapped, t);
        swapped.push((t, vj));
        swapped.push((j, vt));
        out.push(vt);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binomial(13, 2), 78);
        assert_eq!(binomial(12, 6), 924);
        assert_eq!(binomial(5, 7), 0);
        assert_eq!(binomial(0, 0), 1);
        assert_eq!(binomial_big(10009, 5).to_string(), binomial(10009, 5).to_string());
        assert_eq!(binomial(1000, 500), u128::MAX);
    }

    #[test]
    fn colex_visits_every_subset_once() {
        let mut c = Colex::first(7, 3).unwrap();
        let mut seen = vec![c.current().to_vec()];
        while c.advance(|_| {}) {
            seen.push(c.current().to_vec());
        }
        assert_eq!(seen.len(), 35);
        for (rank, s) in seen.iter().enumerate() {
            assert_eq!(Colex::unrank(7, 3, rank as u128).unwrap().current(), &s[..]);
        }
        let mut sorted = seen.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 35);
    }

    #[test]
    fn colex_change_stream_tracks_membership() {
        let mut c = Colex::first(9, 4).unwrap();
        let mut member = [false; 9];
        for &u in c.current() {
            member[u] = true;
        }
        while c.advance(|u| member[u] = !member[u]) {
            let expected: Vec<usize> = (0..9).filter(|&i| member[i]).collect();
            assert_eq!(c.current(), &expected[..]);
        }
    }

    #[test]
    fn random_subsets_are_distinct_and_reproducible() {
        let mut a = Vec::new();
        let mut b = Vec::new();
        for i in 0..200 {
            random_subset(&mut draw_rng(7, i), 30, 6, &mut a);
            random_subset(&mut draw_rng(7, i), 30, 6, &mut b);
            assert_eq!(a, b);
            let mut s = a.clone();
            s.sort();
            s.dedup();
            assert_eq!(s.len(), 6);
            assert!(s.iter().all(|&x| x < 30));
        }
    }

    #[test]
    fn random_subset_is_uniform_on_small_case() {
        // All 10 2-subsets of 0..5 should appear roughly 1000 times each.
        let mut hist = std::collections::HashMap::new();
        let mut out = Vec::new();
        for i in 0..10_000 {
            random_subset(&mut draw_rng(1, i), 5, 2, &mut out);
            out.sort();
            *hist.entry(out.clone()).or_insert(0u32) += 1;
        }
        assert_eq!(hist.len(), 10);
        for &c in hist.values() {
            assert!((850..1150).contains(&c), "count {c}");
        }
    }
}
