//! Expected numbers of even induced sub(di)graphs in `G(n, p)` and
//! `D(n, p)`, exactly, with a reproducible Monte Carlo cross-check.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{check_budget, Error, Result};
use crate::gf2::Gf2Matrix;
use crate::subsets::{
    binomial, binomial_big, census_range, classify_pairwise, draw_rng, random_subset, ParityClass, ParityHost,
};

/// Above this many `r`-subsets per graph, Monte Carlo samples subsets too.
pub const FULL_WALK_LIMIT: u128 = 1_000_000;
/// Subsets drawn per sampled graph in the two-level estimator.
pub const INNER_SAMPLES: u64 = 1024;
/// Default cap on subset checks across all Monte Carlo trials.
pub const DEFAULT_MC_BUDGET: u128 = 200_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ModelKind {
    Graph,
    Digraph,
}

impl FromStr for ModelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "graph" => Ok(ModelKind::Graph),
            "digraph" => Ok(ModelKind::Digraph),
            _ => Err(Error::InvalidArgument(format!("unknown kind {s:?}"))),
        }
    }
}

/// An edge probability `num / den` in lowest terms, strictly between 0 and 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Probability {
    num: u64,
    den: u64,
}

impl Probability {
    pub fn new(num: u64, den: u64) -> Result<Self> {
        if den == 0 || num == 0 || num >= den {
            return Err(Error::DomainError(format!("p = {num}/{den} must lie strictly between 0 and 1")));
        }
        let g = num.gcd(&den);
        Ok(Probability { num: num / g, den: den / g })
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(BigInt::from(self.num), BigInt::from(self.den))
    }

    fn sample<R: Rng>(&self, rng: &mut R) -> bool {
        rng.gen_range(0..self.den) < self.num
    }
}

impl FromStr for Probability {
    type Err = Error;

    /// Accepts `"3/10"` or a terminating decimal such as `"0.3"`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("cannot read probability {s:?}"));
        if let Some((a, b)) = s.split_once('/') {
            return Probability::new(a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
        }
        let (int, frac) = s.split_once('.').unwrap_or((s, ""));
        if frac.len() > 18 || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let den = 10u64.pow(frac.len() as u32);
        let int: u64 = if int.is_empty() { 0 } else { int.parse().map_err(|_| bad())? };
        let frac: u64 = if frac.is_empty() { 0 } else { frac.parse().map_err(|_| bad())? };
        let num = int.checked_mul(den).and_then(|x| x.checked_add(frac)).ok_or_else(bad)?;
        Probability::new(num, den)
    }
}

impl fmt::Display for Probability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

fn check_orders(n: usize, r: usize) -> Result<()> {
    if r == 0 || r > n {
        return Err(Error::DomainError(format!("need 1 <= r <= n, got r = {r}, n = {n}")));
    }
    Ok(())
}

/// `Σ_{k=0}^{r} C(r, k) (1 − 2p)^{k(r−k)}`, exactly.
pub fn parity_sum(p: Probability, r: usize) -> BigRational {
    // 1 − 2p = a / b; bring every term over b^E with E the largest exponent.
    let a = BigInt::from(p.den as i128 - 2 * p.num as i128);
    let b = BigInt::from(p.den);
    let e_max = (r / 2) * (r - r / 2);
    let mut numer = BigInt::zero();
    for k in 0..=r {
        let e = k * (r - k);
        let term = BigInt::from(binomial_big(r as u64, k as u64))
            * num_traits::pow(a.clone(), e)
            * num_traits::pow(b.clone(), e_max - e);
        numer += term;
    }
    BigRational::new(numer, num_traits::pow(b, e_max))
}

/// `E X_r = 2^{−r} C(n, r) Σ_k C(r, k) (1 − 2p)^{k(r−k)}` in `G(n, p)`.
pub fn expected_graph(n: usize, p: Probability, r: usize) -> Result<BigRational> {
    check_orders(n, r)?;
    let scale = BigRational::new(BigInt::from(binomial_big(n as u64, r as u64)), BigInt::one() << r);
    Ok(scale * parity_sum(p, r))
}

/// `E X̃_r = 2^{−r} C(n, r) (1 + (1 − 2p)^{r−1})^r` in `D(n, p)`.
pub fn expected_digraph(n: usize, p: Probability, r: usize) -> Result<BigRational> {
    check_orders(n, r)?;
    let one_minus_2p = BigRational::one() - p.to_rational() * BigInt::from(2);
    let inner = BigRational::one() + num_traits::pow(one_minus_2p, r - 1);
    let scale = BigRational::new(BigInt::from(binomial_big(n as u64, r as u64)), BigInt::one() << r);
    Ok(scale * num_traits::pow(inner, r))
}

/// Decimal expansion rounded half away from zero to `digits` places.
pub fn to_decimal(x: &BigRational, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = x.abs() * BigRational::from_integer(scale.clone());
    let rounded = (scaled + BigRational::new(BigInt::one(), BigInt::from(2))).floor().to_integer();
    let (int, frac) = rounded.div_rem(&scale);
    let sign = if x.is_negative() && !rounded.is_zero() { "-" } else { "" };
    if digits == 0 {
        return format!("{sign}{int}");
    }
    format!("{sign}{int}.{:0>width$}", frac.to_string(), width = digits)
}

pub fn to_f64(x: &BigRational) -> f64 {
    to_decimal(x, 17).parse().unwrap_or(f64::NAN)
}

/// `a/b` with `b` omitted when it is 1.
pub fn fraction_string(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// A sampled (di)graph on `0..n`; `incoming` is the transpose, which is what
/// an out-degree census toggles.
struct Sampled {
    out: Gf2Matrix,
    incoming: Gf2Matrix,
    directed: bool,
}

impl Sampled {
    fn draw(rng: &mut ChaCha8Rng, n: usize, p: Probability, kind: ModelKind) -> Self {
        let mut out = Gf2Matrix::zeros(n, n);
        for u in 0..n {
            for v in 0..n {
                if u == v || (kind == ModelKind::Graph && v < u) {
                    continue;
                }
                if p.sample(rng) {
                    out.set(u, v, true);
                    if kind == ModelKind::Graph {
                        out.set(v, u, true);
                    }
                }
            }
        }
        let directed = kind == ModelKind::Digraph;
        let incoming = if directed { out.transpose() } else { out.clone() };
        Sampled { out, incoming, directed }
    }
}

impl ParityHost for Sampled {
    fn order(&self) -> usize {
        self.out.rows()
    }

    fn toggle_rows(&self) -> &Gf2Matrix {
        if self.directed {
            &self.incoming
        } else {
            &self.out
        }
    }

    fn counts_towards(&self, v: usize, u: usize) -> bool {
        self.out.get(v, u)
    }
}

/// Edges drawn on first use, so a graph too large to build is still a
/// consistent sample of the model.
struct LazyGraph {
    p: Probability,
    kind: ModelKind,
    arcs: HashMap<(usize, usize), bool>,
}

impl LazyGraph {
    fn arc(&mut self, rng: &mut ChaCha8Rng, u: usize, v: usize) -> bool {
        let key = if self.kind == ModelKind::Graph { (u.min(v), u.max(v)) } else { (u, v) };
        let p = self.p;
        *self.arcs.entry(key).or_insert_with(|| p.sample(rng))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum McMethod {
    FullWalk,
    TwoLevel,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RandomModelReport {
    pub kind: ModelKind,
    pub n: usize,
    pub r: usize,
    pub p: String,
    /// Exact expectation as `a/b`.
    pub closed_form: String,
    pub closed_form_decimal: String,
    pub mc_mean: f64,
    pub mc_stderr: f64,
    pub trials: u64,
    pub seed: u64,
    pub method: McMethod,
    pub inner_samples: Option<u64>,
}

impl RandomModelReport {
    /// `|mean − E| / stderr`; infinite when the error is zero but the means differ.
    pub fn z_score(&self) -> f64 {
        let exact: f64 = self.closed_form_decimal.parse().unwrap_or(f64::NAN);
        let diff = (self.mc_mean - exact).abs();
        if self.mc_stderr > 0.0 {
            diff / self.mc_stderr
        } else if diff == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    }
}

/// Exact running sums of per-trial statistics.
#[derive(Clone, Copy, Default)]
struct Moments {
    sum: u128,
    sum_sq: u128,
}

impl Moments {
    fn push(&mut self, x: u64) {
        self.sum += x as u128;
        self.sum_sq += (x as u128) * (x as u128);
    }

    fn merge(self, o: Moments) -> Moments {
        Moments { sum: self.sum + o.sum, sum_sq: self.sum_sq + o.sum_sq }
    }

    /// Mean and standard error of the mean of `scale · x` over `t` trials.
    fn summary(&self, t: u64, scale: f64) -> (f64, f64) {
        let t_big = BigInt::from(t);
        let mean = BigRational::new(BigInt::from(self.sum), t_big.clone());
        if t < 2 {
            return (to_f64(&mean) * scale, 0.0);
        }
        // Unbiased variance (Σx² − (Σx)²/t) / (t − 1), still exact.
        let s = BigInt::from(self.sum);
        let var = BigRational::new(BigInt::from(self.sum_sq) * &t_big - &s * &s, &t_big * BigInt::from(t - 1));
        let se = (to_f64(&var) / t as f64).sqrt();
        (to_f64(&mean) * scale, se * scale)
    }
}

const TRIAL_CHUNK: u64 = 256;

/// Mean number of even induced sub(di)graphs of order `r` over `trials`
/// samples of the model; trial `i` draws from stream `i` of `seed`.
///
/// When `C(n, r) ≤ 10^6` every `r`-subset of each sample is classified;
/// otherwise [`INNER_SAMPLES`] uniform subsets per sample are, and the
/// per-trial estimate `C(n, r) · even / inner` is averaged.
pub fn monte_carlo(
    kind: ModelKind,
    n: usize,
    p: Probability,
    r: usize,
    trials: u64,
    seed: u64,
    budget: u128,
) -> Result<RandomModelReport> {
    check_orders(n, r)?;
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be positive".into()));
    }
    let per_graph = binomial(n as u64, r as u64);
    let full = per_graph <= FULL_WALK_LIMIT;
    let cost = if full { per_graph } else { INNER_SAMPLES as u128 };
    check_budget(cost.saturating_mul(trials as u128), budget)?;
    let moments = (0..trials.div_ceil(TRIAL_CHUNK))
        .into_par_iter()
        .map(|c| {
            let mut m = Moments::default();
            for t in c * TRIAL_CHUNK..((c + 1) * TRIAL_CHUNK).min(trials) {
                let mut rng = draw_rng(seed, t);
                m.push(if full {
                    full_walk(&mut rng, n, p, r, kind, per_graph)
                } else {
                    two_level(&mut rng, n, p, r, kind)
                });
            }
            m
        })
        .reduce(Moments::default, Moments::merge);
    let scale = if full { 1.0 } else { per_graph as f64 / INNER_SAMPLES as f64 };
    let (mc_mean, mc_stderr) = moments.summary(trials, scale);
    let exact = match kind {
        ModelKind::Graph => expected_graph(n, p, r)?,
        ModelKind::Digraph => expected_digraph(n, p, r)?,
    };
    Ok(RandomModelReport {
        kind,
        n,
        r,
        p: p.to_string(),
        closed_form: fraction_string(&exact),
        closed_form_decimal: to_decimal(&exact, 12),
        mc_mean,
        mc_stderr,
        trials,
        seed,
        method: if full { McMethod::FullWalk } else { McMethod::TwoLevel },
        inner_samples: (!full).then_some(INNER_SAMPLES),
    })
}

fn full_walk(rng: &mut ChaCha8Rng, n: usize, p: Probability, r: usize, kind: ModelKind, per_graph: u128) -> u64 {
    let g = Sampled::draw(rng, n, p, kind);
    census_range(&g, r, 0, per_graph).even
}

fn two_level(rng: &mut ChaCha8Rng, n: usize, p: Probability, r: usize, kind: ModelKind) -> u64 {
    let mut g = LazyGraph { p, kind, arcs: HashMap::new() };
    let mut subset = Vec::with_capacity(r);
    let mut even = 0;
    for _ in 0..INNER_SAMPLES {
        random_subset(rng, n, r, &mut subset);
        // Materialise the arcs first so the draw order is fixed.
        let mut arcs = Vec::with_capacity(r * r);
        for &v in &subset {
            for &u in &subset {
                arcs.push(u != v && g.arc(rng, v, u));
            }
        }
        let index: HashMap<usize, usize> = subset.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let class = classify_pairwise(&subset, |v, u| arcs[index[&v] * r + index[&u]]);
        if class == ParityClass::Even {
            even += 1;
        }
    }
    even
}
