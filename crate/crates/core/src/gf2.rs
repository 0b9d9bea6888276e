//! Dense linear algebra over GF(2) with word-packed rows.

use std::fmt;

use crate::error::{Error, Result};

#[inline]
pub(crate) fn words_for(bits: usize) -> usize {
    bits.div_ceil(64)
}

/// A fixed-length binary vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        BitVector { len, words: vec![0; words_for(len)] }
    }

    pub fn ones(len: usize) -> Self {
        let mut v = Self::zeros(len);
        for i in 0..len {
            v.set(i, true);
        }
        v
    }

    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in indices {
            v.set(i, true);
        }
        v
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        Self::from_indices(bits.len(), bits.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i))
    }

    pub(crate) fn from_words(len: usize, words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len(), words_for(len));
        BitVector { len, words }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit index {i} out of range {}", self.len);
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len);
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn xor_assign(&mut self, other: &BitVector) {
        assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    /// Inner product over GF(2).
    pub fn dot(&self, other: &BitVector) -> bool {
        assert_eq!(self.len, other.len);
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones()).sum::<u32>() & 1 == 1
    }

    /// Indices of the set bits in increasing order.
    pub fn ones_iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }

    /// The first `n` bits as a new vector.
    pub fn truncated(&self, n: usize) -> BitVector {
        assert!(n <= self.len);
        BitVector::from_indices(n, self.ones_iter().take_while(|&i| i < n))
    }
}

impl fmt::Debug for BitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Row-major dense binary matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Gf2Matrix {
    rows: usize,
    cols: usize,
    stride: usize,
    bits: Vec<u64>,
}

impl Gf2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        Gf2Matrix { rows, cols, stride, bits: vec![0; rows * stride] }
    }

    pub(crate) fn from_words(rows: usize, cols: usize, bits: Vec<u64>) -> Self {
        let stride = words_for(cols);
        assert_eq!(bits.len(), rows * stride);
        Gf2Matrix { rows, cols, stride, bits }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                if f(r, c) {
                    m.set(r, c, true);
                }
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Number of `u64` words per row.
    #[inline]
    pub fn stride(&self) -> usize {
        self.stride
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        debug_assert!(r < self.rows && c < self.cols);
        (self.bits[r * self.stride + c / 64] >> (c % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.rows && c < self.cols, "({r}, {c}) outside {}x{}", self.rows, self.cols);
        let w = &mut self.bits[r * self.stride + c / 64];
        let mask = 1u64 << (c % 64);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    #[inline]
    pub fn row_words(&self, r: usize) -> &[u64] {
        &self.bits[r * self.stride..(r + 1) * self.stride]
    }

    pub fn row(&self, r: usize) -> BitVector {
        BitVector::from_words(self.cols, self.row_words(r).to_vec())
    }

    pub fn row_weight(&self, r: usize) -> usize {
        self.row_words(r).iter().map(|w| w.count_ones() as usize).sum()
    }

    fn xor_row_into(&mut self, src: usize, dst: usize) {
        let s = self.stride;
        let (a, b) = if src < dst {
            let (lo, hi) = self.bits.split_at_mut(dst * s);
            (&lo[src * s..(src + 1) * s], &mut hi[..s])
        } else {
            let (lo, hi) = self.bits.split_at_mut(src * s);
            (&hi[..s], &mut lo[dst * s..(dst + 1) * s])
        };
        for (d, x) in b.iter_mut().zip(a) {
            *d ^= x;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let s = self.stride;
        for i in 0..s {
            self.bits.swap(a * s + i, b * s + i);
        }
    }

    pub fn transpose(&self) -> Gf2Matrix {
        Gf2Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r))
    }

    /// Entrywise sum (XOR).
    pub fn add(&self, other: &Gf2Matrix) -> Gf2Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (a, b) in out.bits.iter_mut().zip(&other.bits) {
            *a ^= b;
        }
        out
    }

    pub fn mul_vec(&self, x: &BitVector) -> BitVector {
        assert_eq!(x.len(), self.cols);
        let mut out = BitVector::zeros(self.rows);
        for r in 0..self.rows {
            let parity = self.row_words(r).iter().zip(x.words()).map(|(a, b)| (a & b).count_ones()).sum::<u32>();
            if parity & 1 == 1 {
                out.set(r, true);
            }
        }
        out
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols && (0..self.rows).all(|r| (0..r).all(|c| self.get(r, c) == self.get(c, r)))
    }

    /// Gauss-Jordan elimination, pivoting on the first set bit from the left.
    pub fn echelon(&self) -> Echelon {
        self.eliminate(None).0
    }

    fn eliminate(&self, rhs: Option<&BitVector>) -> (Echelon, Option<BitVector>) {
        let mut m = self.clone();
        let mut b = rhs.cloned();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(pr) = (row..m.rows).find(|&r| m.get(r, col)) else {
                continue;
            };
            m.swap_rows(pr, row);
            if let Some(b) = b.as_mut() {
                let (x, y) = (b.get(pr), b.get(row));
                b.set(pr, y);
                b.set(row, x);
            }
            for r in 0..m.rows {
                if r != row && m.get(r, col) {
                    m.xor_row_into(row, r);
                    if let Some(b) = b.as_mut() {
                        if b.get(row) {
                            b.flip(r);
                        }
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (Echelon { reduced: m, pivots }, b)
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Solves `M x = b`: a particular solution (free coordinates zero) plus
    /// the kernel basis read off the reduced echelon form.
    pub fn solve_affine(&self, b: &BitVector) -> AffineSolutionSpace {
        assert_eq!(b.len(), self.rows, "right-hand side length must equal the row count");
        let (ech, reduced_b) = self.eliminate(Some(b));
        let reduced_b = reduced_b.expect("rhs was supplied");
        let rank = ech.pivots.len();
        let consistent = (rank..self.rows).all(|r| !reduced_b.get(r));
        let particular = consistent.then(|| {
            let mut x = BitVector::zeros(self.cols);
            for (i, &c) in ech.pivots.iter().enumerate() {
                if reduced_b.get(i) {
                    x.set(c, true);
                }
            }
            x
        });
        AffineSolutionSpace { particular, kernel_basis: ech.kernel_basis(), cols: self.cols }
    }

    pub fn kernel_basis(&self) -> Vec<BitVector> {
        self.echelon().kernel_basis()
    }
}

impl fmt::Debug for Gf2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Gf2Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub reduced: Gf2Matrix,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// One basis vector per free column `f`: `x_f = 1`, the pivot coordinates
    /// read from column `f`, every other free coordinate zero.
    pub fn kernel_basis(&self) -> Vec<BitVector> {
        let cols = self.reduced.cols;
        let mut is_pivot = vec![false; cols];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        (0..cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = BitVector::zeros(cols);
                v.set(f, true);
                for (i, &c) in self.pivots.iter().enumerate() {
                    if self.reduced.get(i, f) {
                        v.set(c, true);
                    }
                }
                v
            })
            .collect()
    }
}

/// Solution set of `M x = b`: `particular + span(kernel_basis)`, or empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSolutionSpace {
    pub particular: Option<BitVector>,
    pub kernel_basis: Vec<BitVector>,
    cols: usize,
}

impl AffineSolutionSpace {
    pub fn new(particular: Option<BitVector>, kernel_basis: Vec<BitVector>, cols: usize) -> Self {
        AffineSolutionSpace { particular, kernel_basis, cols }
    }

    pub fn dimension(&self) -> usize {
        self.kernel_basis.len()
    }

    pub fn is_consistent(&self) -> bool {
        self.particular.is_some()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Number of solutions as a power of two exponent; `None` if inconsistent.
    pub fn log2_size(&self) -> Option<usize> {
        self.particular.as_ref().map(|_| self.dimension())
    }

    /// Every solution in Gray-code order over the kernel coordinates.
    pub fn iter(&self) -> Result<SolutionIter<'_>> {
        let start = self.particular.clone().ok_or(Error::NoParticularSolution)?;
        Ok(SolutionIter { space: self, current: start, step: 0 })
    }

    /// The first `min(2^dimension, cap)` solutions and whether `cap` bound.
    pub fn enumerate(&self, cap: usize) -> Result<(Vec<BitVector>, bool)> {
        let dim = self.dimension();
        let truncated = dim >= usize::BITS as usize || (1usize << dim) > cap;
        Ok((self.iter()?.take(cap).collect(), truncated))
    }
}

pub struct SolutionIter<'a> {
    space: &'a AffineSolutionSpace,
    current: BitVector,
    step: u128,
}

impl Iterator for SolutionIter<'_> {
    type Item = BitVector;

    fn next(&mut self) -> Option<BitVector> {
        let dim = self.space.dimension();
        if dim < 128 && self.step >> dim != 0 {
            return None;
        }
        if self.step > 0 {
            let flip = self.step.trailing_zeros() as usize;
            self.current.xor_assign(&self.space.kernel_basis[flip]);
        }
        self.step += 1;
        Some(self.current.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_matrix(max: usize) -> impl Strategy<Value = Gf2Matrix> {
        (1..=max, 1..=max).prop_flat_map(|(r, c)| {
            proptest::collection::vec(any::<bool>(), r * c)
                .prop_map(move |bits| Gf2Matrix::from_fn(r, c, |i, j| bits[i * c + j]))
        })
    }

    #[test]
    fn rank_of_identity_and_zero() {
        assert_eq!(Gf2Matrix::identity(70).rank(), 70);
        assert_eq!(Gf2Matrix::zeros(5, 9).rank(), 0);
    }

    #[test]
    fn identity_system_has_unique_solution() {
        let b = BitVector::from_indices(6, [0, 3, 5]);
        let space = Gf2Matrix::identity(6).solve_affine(&b);
        assert_eq!(space.dimension(), 0);
        assert_eq!(space.particular.as_ref(), Some(&b));
        let (all, truncated) = space.enumerate(10).unwrap();
        assert_eq!(all, vec![b]);
        assert!(!truncated);
    }

    #[test]
    fn zero_row_with_one_is_inconsistent() {
        let space = Gf2Matrix::zeros(1, 3).solve_affine(&BitVector::ones(1));
        assert!(space.particular.is_none());
        assert_eq!(space.enumerate(4).unwrap_err(), Error::NoParticularSolution);
    }

    #[test]
    fn small_kernel_enumerates_fully() {
        let m = Gf2Matrix::zeros(2, 3);
        let space = m.solve_affine(&BitVector::zeros(2));
        assert_eq!(space.dimension(), 3);
        let (sols, truncated) = space.enumerate(100).unwrap();
        assert!(!truncated);
        assert_eq!(sols.len(), 8);
        let mut sorted = sols.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), 8);
    }

    #[test]
    fn large_kernel_is_truncated() {
        let m = Gf2Matrix::zeros(1, 40);
        let space = m.solve_affine(&BitVector::zeros(1));
        assert_eq!(space.dimension(), 40);
        let (sols, truncated) = space.enumerate(1024).unwrap();
        assert_eq!(sols.len(), 1024);
        assert!(truncated);
    }

    proptest! {
        #[test]
        fn rank_is_transpose_invariant(m in arb_matrix(20)) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn solutions_satisfy_the_system(m in arb_matrix(12), seed in any::<u64>()) {
            let b = BitVector::from_indices(m.rows(), (0..m.rows()).filter(|i| (seed >> (i % 64)) & 1 == 1));
            let space = m.solve_affine(&b);
            prop_assert_eq!(space.dimension() + m.rank(), m.cols());
            for v in &space.kernel_basis {
                prop_assert_eq!(m.mul_vec(v), BitVector::zeros(m.rows()));
            }
            if space.is_consistent() {
                let (sols, _) = space.enumerate(256).unwrap();
                let mut seen = sols.clone();
                seen.sort();
                seen.dedup();
                prop_assert_eq!(seen.len(), sols.len());
                for x in &sols {
                    prop_assert_eq!(&m.mul_vec(x), &b);
                }
            } else {
                // Brute force confirms there is no solution at all.
                if m.cols() <= 12 {
                    for mask in 0u64..(1 << m.cols()) {
                        let x = BitVector::from_indices(m.cols(), (0..m.cols()).filter(|i| mask >> i & 1 == 1));
                        prop_assert_ne!(&m.mul_vec(&x), &b);
                    }
                }
            }
        }

        #[test]
        fn deleting_a_row_never_raises_rank(m in arb_matrix(16)) {
            prop_assume!(m.rows() > 1);
            let smaller = Gf2Matrix::from_fn(m.rows() - 1, m.cols(), |r, c| m.get(r, c));
            prop_assert!(smaller.rank() <= m.rank());
            prop_assert!(m.rank() <= smaller.rank() + 1);
        }
    }
}
