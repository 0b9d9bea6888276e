//! Arithmetic in `F_q` for odd prime powers `q = p^e`.
//!
//! Elements are identified with their position in a fixed canonical order:
//! the element with coefficient vector `(c_0, .., c_{e-1})` (low degree first)
//! has index `c_0 + c_1 p + .. + c_{e-1} p^{e-1}`. The prime field therefore
//! occupies indices `0..p`, and the order is lexicographic in the coefficient
//! vectors read from the leading coefficient down.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest order for which multiplication, character and square-root tables
/// are precomputed.
pub const TABLE_LIMIT: u64 = 1 << 20;

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 31;

/// An element of a [`FiniteField`], stored as its canonical index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldElement(pub u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// JSON descriptor of a field: `{"p", "e", "modulus"}` with the modulus
/// coefficients listed low-to-high (empty for prime fields).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldDescriptor {
    pub p: u64,
    pub e: u32,
    pub modulus: Vec<u32>,
}

#[derive(Clone, Debug)]
struct Tables {
    // exp[i] = g^i for i in 0..2(q-1), so log sums never need reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
    eta: Vec<i8>,
    // Canonical square root of each square, u32::MAX for non-squares.
    sqrt: Vec<u32>,
}

/// The finite field `F_q`, immutable after construction.
#[derive(Clone, Debug)]
pub struct FiniteField {
    p: u32,
    e: u32,
    q: u32,
    modulus: Option<Vec<u32>>,
    pow_p: Vec<u32>,
    tables: Option<Tables>,
    nonsquare: FieldElement,
}

/// Conway polynomials (low-to-high) for the extension fields of order ≤ 169.
const BUILTIN_MODULI: &[(u32, u32, &[u32])] = &[
    (3, 2, &[2, 2, 1]),
    (5, 2, &[2, 4, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (7, 2, &[3, 6, 1]),
    (3, 4, &[2, 0, 0, 2, 1]),
    (11, 2, &[2, 7, 1]),
    (5, 3, &[3, 3, 0, 1]),
    (13, 2, &[2, 12, 1]),
];

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Writes `q = p^e` with `p` prime, if possible.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..).take_while(|d| d * d <= q).find(|d| q.is_multiple_of(*d)).unwrap_or(q);
    let mut rest = q;
    let mut e = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        e += 1;
    }
    (rest == 1).then_some((p, e))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl FiniteField {
    /// Builds `F_{p^e}`. For `e > 1` the modulus must be monic of degree `e`
    /// and irreducible; when omitted, a built-in polynomial is used for the
    /// orders 9, 25, 27, 49, 81, 121, 125 and 169.
    pub fn new(p: u64, e: u32, modulus: Option<Vec<u32>>) -> Result<Self> {
        if p == 2 {
            return Err(Error::EvenCharacteristic(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 {
            return Err(Error::InvalidArgument("extension degree must be at least 1".into()));
        }
        let q = (p as u128).checked_pow(e).filter(|&q| q <= MAX_ORDER as u128);
        let Some(q) = q else {
            return Err(Error::FieldTooLarge(p.saturating_pow(e)));
        };
        let (p32, q32) = (p as u32, q as u32);

        let modulus = if e == 1 {
            match modulus {
                Some(m) if !(m.len() == 2 && m[1] == 1 && m[0] < p32) => {
                    return Err(Error::ReduciblePolynomial(m));
                }
                _ => None,
            }
        } else {
            let m = match modulus {
                Some(m) => m,
                None => BUILTIN_MODULI
                    .iter()
                    .find(|(bp, be, _)| *bp == p32 && *be == e)
                    .map(|(_, _, m)| m.to_vec())
                    .ok_or(Error::NoBuiltinPolynomial { p, e })?,
            };
            let well_formed = m.len() == e as usize + 1 && m[e as usize] == 1 && m.iter().all(|&c| c < p32);
            if !well_formed || !poly::is_irreducible(&m, p32) {
                return Err(Error::ReduciblePolynomial(m));
            }
            Some(m)
        };

        let pow_p = (0..e).map(|i| p32.pow(i)).collect();
        let mut field = FiniteField { p: p32, e, q: q32, modulus, pow_p, tables: None, nonsquare: FieldElement::ZERO };
        if q <= TABLE_LIMIT as u128 {
            field.tables = Some(field.build_tables());
        }
        field.nonsquare = field.elements().find(|&x| field.eta(x) == -1).expect("odd-order fields contain non-squares");
        Ok(field)
    }

    /// Builds the prime field `F_p`.
    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, 1, None)
    }

    /// Builds the field of order `q`, which must be an odd prime power with a
    /// built-in modulus when it is not prime.
    pub fn with_order(q: u64) -> Result<Self> {
        let (p, e) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        Self::new(p, e, None)
    }

    fn build_tables(&self) -> Tables {
        let q = self.q as usize;
        let order = q as u64 - 1;
        let factors = prime_factors(order);
        let generator = (1..self.q)
            .map(FieldElement)
            .find(|&g| factors.iter().all(|&f| self.pow_slow(g, order / f) != FieldElement::ONE))
            .expect("multiplicative group is cyclic");
        let mut exp = vec![0u32; 2 * (q - 1)];
        let mut log = vec![0u32; q];
        let mut x = FieldElement::ONE;
        for i in 0..q - 1 {
            exp[i] = x.0;
            exp[i + q - 1] = x.0;
            log[x.index()] = i as u32;
            x = self.mul_slow(x, generator);
        }
        let mut sqrt = vec![u32::MAX; q];
        let mut eta = vec![-1i8; q];
        // Visiting x in increasing order records the smaller root first.
        for x in 0..q {
            let s = if x == 0 { 0 } else { exp[(2 * log[x] as usize) % (q - 1)] as usize };
            if sqrt[s] == u32::MAX {
                sqrt[s] = x as u32;
            }
            eta[s] = 1;
        }
        eta[0] = 0;
        Tables { exp, log, eta, sqrt }
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p as u64
    }

    #[inline]
    pub fn e(&self) -> u32 {
        self.e
    }

    #[inline]
    pub fn q(&self) -> u64 {
        self.q as u64
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.q as usize
    }

    pub fn modulus(&self) -> Option<&[u32]> {
        self.modulus.as_deref()
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor { p: self.p(), e: self.e, modulus: self.modulus.clone().unwrap_or_default() }
    }

    /// Rebuilds a field from its descriptor, re-verifying the modulus.
    pub fn from_descriptor(d: &FieldDescriptor) -> Result<Self> {
        let modulus = (d.e > 1).then(|| d.modulus.clone());
        Self::new(d.p, d.e, modulus)
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(FieldElement)
    }

    pub fn element(&self, index: u64) -> Result<FieldElement> {
        if index < self.q() {
            Ok(FieldElement(index as u32))
        } else {
            Err(Error::InvalidElement(index))
        }
    }

    /// Embeds an integer through the prime field.
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.p as i64) as u32)
    }

    pub fn coeffs(&self, x: FieldElement) -> Vec<u32> {
        let mut v = x.0;
        (0..self.e)
            .map(|_| {
                let c = v % self.p;
                v /= self.p;
                c
            })
            .collect()
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() != self.e as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::InvalidArgument(format!("bad coefficient vector {coeffs:?}")));
        }
        Ok(FieldElement(coeffs.iter().zip(&self.pow_p).map(|(c, w)| c * w).sum()))
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if self.e == 1 {
            let s = a.0 as u64 + b.0 as u64;
            return FieldElement((s % self.p as u64) as u32);
        }
        let (mut x, mut y, mut out) = (a.0, b.0, 0);
        for &w in &self.pow_p {
            let d = (x % self.p + y % self.p) % self.p;
            out += d * w;
            x /= self.p;
            y /= self.p;
        }
        FieldElement(out)
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        if self.e == 1 {
            return FieldElement(if a.0 == 0 { 0 } else { self.p - a.0 });
        }
        let (mut x, mut out) = (a.0, 0);
        for &w in &self.pow_p {
            let d = x % self.p;
            out += ((self.p - d) % self.p) * w;
            x /= self.p;
        }
        FieldElement(out)
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        match &self.tables {
            Some(t) => FieldElement(t.exp[(t.log[a.index()] + t.log[b.index()]) as usize]),
            None => self.mul_slow(a, b),
        }
    }

    fn mul_slow(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        match &self.modulus {
            None => FieldElement(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32),
            Some(m) => {
                let prod = poly::mul_mod(&self.coeffs(a), &self.coeffs(b), m, self.p);
                let mut c = prod;
                c.resize(self.e as usize, 0);
                self.from_coeffs(&c).expect("reduced product has e coefficients")
            }
        }
    }

    fn pow_slow(&self, a: FieldElement, mut n: u64) -> FieldElement {
        let (mut base, mut acc) = (a, FieldElement::ONE);
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul_slow(acc, base);
            }
            base = self.mul_slow(base, base);
            n >>= 1;
        }
        acc
    }

    pub fn pow(&self, a: FieldElement, n: u64) -> FieldElement {
        if n == 0 {
            return FieldElement::ONE;
        }
        if a.is_zero() {
            return FieldElement::ZERO;
        }
        match &self.tables {
            Some(t) => {
                let l = (t.log[a.index()] as u64 * (n % (self.q as u64 - 1))) % (self.q as u64 - 1);
                FieldElement(t.exp[l as usize])
            }
            None => self.pow_slow(a, n),
        }
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.tables {
            Some(t) => FieldElement(t.exp[(self.q - 1 - t.log[a.index()]) as usize % (self.q as usize - 1)]),
            None => self.pow_slow(a, self.q as u64 - 2),
        })
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Quadratic character: `+1` on non-zero squares, `-1` on non-squares,
    /// `0` at zero.
    #[inline]
    pub fn eta(&self, x: FieldElement) -> i8 {
        match &self.tables {
            Some(t) => t.eta[x.index()],
            None => self.eta_by_power(x),
        }
    }

    /// `x^{(q-1)/2}` mapped to `{-1, 0, 1}`, computed without tables.
    pub fn eta_by_power(&self, x: FieldElement) -> i8 {
        if x.is_zero() {
            return 0;
        }
        if self.pow_slow(x, (self.q as u64 - 1) / 2) == FieldElement::ONE {
            1
        } else {
            -1
        }
    }

    #[inline]
    pub fn is_square(&self, x: FieldElement) -> bool {
        self.eta(x) == 1
    }

    /// The canonically smaller of the two square roots of `x`.
    pub fn sqrt(&self, x: FieldElement) -> Result<FieldElement> {
        if x.is_zero() {
            return Ok(FieldElement::ZERO);
        }
        if let Some(t) = &self.tables {
            return match t.sqrt[x.index()] {
                u32::MAX => Err(Error::NonResidue),
                r => Ok(FieldElement(r)),
            };
        }
        if self.eta(x) != 1 {
            return Err(Error::NonResidue);
        }
        let r = self.tonelli_shanks(x);
        Ok(r.min(self.neg(r)))
    }

    // Tonelli-Shanks in the cyclic group F_q^*; x must be a non-zero square.
    fn tonelli_shanks(&self, x: FieldElement) -> FieldElement {
        let mut odd = self.q as u64 - 1;
        let mut s = 0;
        while odd.is_multiple_of(2) {
            odd /= 2;
            s += 1;
        }
        let mut c = self.pow(self.nonsquare, odd);
        let mut t = self.pow(x, odd);
        let mut r = self.pow(x, odd.div_ceil(2));
        let mut m = s;
        while t != FieldElement::ONE {
            let mut i = 0;
            let mut t2 = t;
            while t2 != FieldElement::ONE {
                t2 = self.mul(t2, t2);
                i += 1;
            }
            let b = self.pow(c, 1u64 << (m - i - 1));
            r = self.mul(r, b);
            c = self.mul(b, b);
            t = self.mul(t, c);
            m = i;
        }
        debug_assert_eq!(self.mul(r, r), x);
        r
    }

    /// The canonically smallest non-square.
    pub fn smallest_nonsquare(&self) -> FieldElement {
        self.nonsquare
    }

    /// `true` when `q = 1 (mod 4)`, i.e. `-1` is a square.
    pub fn minus_one_is_square(&self) -> bool {
        self.q % 4 == 1
    }
}

/// Polynomials over `F_p` as coefficient vectors, low degree first.
mod poly {
    fn trim(a: &mut Vec<u64>) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    fn inv_mod(a: u64, p: u64) -> u64 {
        let (mut base, mut n, mut acc) = (a % p, p - 2, 1u64);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            n >>= 1;
        }
        acc
    }

    fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut r = a.to_vec();
        trim(&mut r);
        let dm = m.len() - 1;
        let lead_inv = inv_mod(m[dm], p);
        while r.len() > dm {
            let top = r.len() - 1;
            let f = r[top] * lead_inv % p;
            if f != 0 {
                for (i, &c) in m.iter().enumerate() {
                    let idx = top - dm + i;
                    r[idx] = (r[idx] + p - f * c % p) % p;
                }
            }
            trim(&mut r);
        }
        r
    }

    fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        trim(&mut out);
        out
    }

    fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let (mut a, mut b) = (a.to_vec(), b.to_vec());
        trim(&mut a);
        trim(&mut b);
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    pub(super) fn mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let p = p as u64;
        let a: Vec<u64> = a.iter().map(|&c| c as u64).collect();
        let b: Vec<u64> = b.iter().map(|&c| c as u64).collect();
        let m: Vec<u64> = m.iter().map(|&c| c as u64).collect();
        rem(&mul(&a, &b, p), &m, p).into_iter().map(|c| c as u32).collect()
    }

    fn pow_mod(base: &[u64], mut n: u64, m: &[u64], p: u64) -> Vec<u64> {
        let mut acc = vec![1u64];
        let mut b = rem(base, m, p);
        while n > 0 {
            if n & 1 == 1 {
                acc = rem(&mul(&acc, &b, p), m, p);
            }
            b = rem(&mul(&b, &b, p), m, p);
            n >>= 1;
        }
        acc
    }

    /// Ben-Or test: monic `f` of degree `d` is irreducible iff
    /// `gcd(f, x^{p^i} - x) = 1` for every `1 <= i <= d/2`.
    pub(super) fn is_irreducible(f: &[u32], p: u32) -> bool {
        let p = p as u64;
        let f: Vec<u64> = f.iter().map(|&c| c as u64).collect();
        let d = f.len() - 1;
        if d == 1 {
            return true;
        }
        if f[0] == 0 {
            return false;
        }
        let x = vec![0u64, 1];
        let mut xp = x.clone();
        for _ in 0..d / 2 {
            xp = pow_mod(&xp, p, &f, p);
            let mut diff = xp.clone();
            diff.resize(diff.len().max(2), 0);
            diff[1] = (diff[1] + p - 1) % p;
            trim(&mut diff);
            let g = gcd(&f, &diff, p);
            if g.len() != 1 {
                return false;
            }
        }
        true
    }

}

#[cfg(test)]
mod tests {
    use super::*;

    fn f13() -> FiniteField {
        FiniteField::prime(13).unwrap()
    }

    #[test]
    fn squares_of_f13() {
        let f = f13();
        let squares: Vec<u32> = f.elements().filter(|&x| f.eta(x) == 1).map(|x| x.0).collect();
        // Oracle: x^2 mod 13 for x = 1..12.
        let mut brute: Vec<u32> = (1..13u32).map(|x| x * x % 13).collect();
        brute.sort();
        brute.dedup();
        assert_eq!(squares, brute);
        assert_eq!(squares, vec![1, 3, 4, 9, 10, 12]);
    }

    #[test]
    fn f9_from_explicit_modulus() {
        let f = FiniteField::new(3, 2, Some(vec![1, 0, 1])).unwrap();
        assert_eq!(f.q(), 9);
        assert_eq!(f.q() % 8, 1);
        assert_eq!(f.descriptor().modulus, vec![1, 0, 1]);
    }

    #[test]
    fn construction_errors() {
        assert_eq!(FiniteField::new(2, 3, None).unwrap_err().kind(), "EvenCharacteristic");
        assert_eq!(FiniteField::new(9, 1, None).unwrap_err().kind(), "NotPrime");
        assert_eq!(FiniteField::new(5, 2, Some(vec![1, 0, 1])).unwrap_err().kind(), "ReduciblePolynomial");
        assert_eq!(FiniteField::new(3, 5, None).unwrap_err().kind(), "NoBuiltinPolynomial");
        assert_eq!(FiniteField::with_order(12).unwrap_err().kind(), "NotPrimePower");
        assert_eq!(FiniteField::with_order(8).unwrap_err().kind(), "EvenCharacteristic");
    }

    #[test]
    fn builtin_moduli_are_irreducible() {
        for q in [9, 25, 27, 49, 81, 121, 125, 169] {
            let f = FiniteField::with_order(q).unwrap();
            assert_eq!(f.q(), q);
        }
    }

    #[test]
    fn f13_arithmetic() {
        let f = f13();
        let e = |n| FieldElement(n);
        assert_eq!(f.mul(e(5), e(8)), e(1));
        assert_eq!(f.inv(e(5)).unwrap(), e(8));
        assert_eq!(f.pow(e(2), 6), e(12));
        assert_eq!(f.add(e(7), FieldElement::ZERO), e(7));
        assert_eq!(f.inv(FieldElement::ZERO), Err(Error::DivisionByZero));
    }

    #[test]
    fn f13_character_and_roots() {
        let f = f13();
        assert_eq!(f.eta(FieldElement(1)), 1);
        assert_eq!(f.eta(FieldElement(2)), -1);
        assert_eq!(f.eta(FieldElement(3)), 1);
        assert_eq!(f.eta(FieldElement(0)), 0);
        assert_eq!(f.sqrt(FieldElement(4)).unwrap(), FieldElement(2));
        assert_eq!(f.sqrt(FieldElement(2)), Err(Error::NonResidue));
        assert_eq!(f.sqrt(FieldElement::ZERO).unwrap(), FieldElement::ZERO);
    }

    #[test]
    fn canonical_order_prime_subfield_first() {
        let f = FiniteField::with_order(25).unwrap();
        for i in 0..5 {
            assert_eq!(f.coeffs(FieldElement(i)), vec![i, 0]);
        }
        assert_eq!(f.coeffs(FieldElement(7)), vec![2, 1]);
        assert_eq!(f.from_coeffs(&[2, 1]).unwrap(), FieldElement(7));
    }

    #[test]
    fn character_laws_exhaustive() {
        for q in [3u64, 5, 7, 9, 11, 13, 25, 27, 49, 81, 121, 125, 169] {
            let f = FiniteField::with_order(q).unwrap();
            let minus_one = f.neg(FieldElement::ONE);
            assert_eq!(f.eta(minus_one) == 1, q % 4 == 1, "q = {q}");
            let squares = f.elements().filter(|&x| f.eta(x) == 1).count();
            assert_eq!(squares as u64, (q - 1) / 2);
            for x in f.elements().skip(1) {
                assert_eq!(f.eta(x), f.eta_by_power(x));
                assert_eq!(f.inv(f.inv(x).unwrap()).unwrap(), x);
                assert_eq!(f.mul(x, f.inv(x).unwrap()), FieldElement::ONE);
                if let Ok(r) = f.sqrt(x) {
                    assert_eq!(f.mul(r, r), x);
                    assert!(r <= f.neg(r));
                }
                for y in f.elements().skip(1) {
                    assert_eq!(f.eta(f.mul(x, y)), f.eta(x) * f.eta(y));
                }
            }
        }
    }

    #[test]
    fn extension_arithmetic_matches_polynomial_multiplication() {
        // x^2 + 1 over F_3: (1 + x)(1 + x) = 1 + 2x + x^2 = 2x.
        let f = FiniteField::new(3, 2, Some(vec![1, 0, 1])).unwrap();
        let a = f.from_coeffs(&[1, 1]).unwrap();
        assert_eq!(f.coeffs(f.mul(a, a)), vec![0, 2]);
        assert_eq!(f.mul(a, a), f.mul_slow(a, a));
    }

    #[test]
    fn large_prime_without_tables() {
        // 2^20 + 7 is prime.
        let p = (1u64 << 20) + 7;
        let f = FiniteField::prime(p).unwrap();
        assert!(f.tables.is_none());
        for n in [2u32, 3, 5, 1000, 123_457] {
            let x = FieldElement(n);
            let sq = f.mul(x, x);
            let r = f.sqrt(sq).unwrap();
            assert_eq!(f.mul(r, r), sq);
            assert!(r == x || r == f.neg(x));
            assert_eq!(f.eta(sq), 1);
        }
        let ns = f.smallest_nonsquare();
        assert_eq!(f.sqrt(ns), Err(Error::NonResidue));
    }

    #[test]
    fn prime_power_factoring() {
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(13), Some((13, 1)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
        assert_eq!(prime_power(10009), Some((10009, 1)));
    }
}
