//! Dense square matrices over `{-1, 0, 1}` and over the integers.
//!
//! [`TernaryMatrix`] carries every weighing matrix, signed permutation,
//! Hadamard matrix and 0/1 relation matrix in the crate. Products land in
//! [`IntMatrix`], whose entries are arbitrary-precision integers.
//!
//! Indices are 0-based throughout. A circulant with first row `v` has entry
//! `(r, c) = v[(c - r) mod n]`, i.e. row `r` is `v` cyclically shifted right
//! by `r` places.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TernaryMatrix {
    order: usize,
    data: Vec<i8>,
}

impl TernaryMatrix {
    /// Builds a matrix from row-major entries, rejecting anything outside `{-1, 0, 1}`.
    pub fn new(order: usize, data: Vec<i8>) -> Result<Self> {
        if order == 0 || data.len() != order * order {
            return Err(Error::ShapeMismatch(format!(
                "{} entries cannot form a square matrix of order {order}",
                data.len()
            )));
        }
        if let Some(pos) = data.iter().position(|v| !(-1..=1).contains(v)) {
            return Err(Error::InvalidEntry {
                row: pos / order,
                col: pos % order,
                value: data[pos] as i64,
            });
        }
        Ok(Self { order, data })
    }

    pub fn from_rows<T: Copy + Into<i64>>(rows: &[Vec<T>]) -> Result<Self> {
        let order = rows.len();
        let mut data = Vec::with_capacity(order * order);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != order {
                return Err(Error::ShapeMismatch(format!(
                    "row {r} has length {}, expected {order}",
                    row.len()
                )));
            }
            for (c, &v) in row.iter().enumerate() {
                let v: i64 = v.into();
                if !(-1..=1).contains(&v) {
                    return Err(Error::InvalidEntry { row: r, col: c, value: v });
                }
                data.push(v as i8);
            }
        }
        Self::new(order, data)
    }

    pub(crate) fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> i8) -> Self {
        let mut data = Vec::with_capacity(order * order);
        for r in 0..order {
            for c in 0..order {
                let v = f(r, c);
                debug_assert!((-1..=1).contains(&v));
                data.push(v);
            }
        }
        Self { order, data }
    }

    pub fn zeros(order: usize) -> Self {
        Self::from_fn(order, |_, _| 0)
    }

    pub fn identity(order: usize) -> Self {
        Self::from_fn(order, |r, c| (r == c) as i8)
    }

    /// The all-ones matrix `J`.
    pub fn ones(order: usize) -> Self {
        Self::from_fn(order, |_, _| 1)
    }

    /// `J - I`.
    pub fn complete(order: usize) -> Self {
        Self::from_fn(order, |r, c| (r != c) as i8)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> i8 {
        self.data[row * self.order + col]
    }

    pub fn row(&self, row: usize) -> &[i8] {
        &self.data[row * self.order..(row + 1) * self.order]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[i8]> {
        self.data.chunks(self.order)
    }

    pub fn as_slice(&self) -> &[i8] {
        &self.data
    }

    pub fn nonzero_count(&self) -> usize {
        self.data.iter().filter(|&&v| v != 0).count()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.order, |r, c| self.get(c, r))
    }

    pub fn negate(&self) -> Self {
        Self { order: self.order, data: self.data.iter().map(|v| -v).collect() }
    }

    /// `|X|`: replaces every `-1` by `1`.
    pub fn abs(&self) -> Self {
        Self { order: self.order, data: self.data.iter().map(|v| v.abs()).collect() }
    }

    /// 0/1 matrix marking the `+1` entries.
    pub fn positive_part(&self) -> Self {
        Self { order: self.order, data: self.data.iter().map(|&v| (v == 1) as i8).collect() }
    }

    /// 0/1 matrix marking the `-1` entries.
    pub fn negative_part(&self) -> Self {
        Self { order: self.order, data: self.data.iter().map(|&v| (v == -1) as i8).collect() }
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.order).all(|r| (r + 1..self.order).all(|c| self.get(r, c) == self.get(c, r)))
    }

    pub fn is_skew(&self) -> bool {
        (0..self.order).all(|r| (r..self.order).all(|c| self.get(r, c) == -self.get(c, r)))
    }

    /// Entrywise sum, failing if any entry leaves `{-1, 0, 1}`.
    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.try_zip(rhs, |a, b| a + b)
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.try_zip(rhs, |a, b| a - b)
    }

    fn try_zip(&self, rhs: &Self, f: impl Fn(i8, i8) -> i8) -> Result<Self> {
        self.same_order(rhs)?;
        let data: Vec<i8> = self.data.iter().zip(&rhs.data).map(|(&a, &b)| f(a, b)).collect();
        Self::new(self.order, data)
    }

    fn same_order(&self, rhs: &Self) -> Result<()> {
        if self.order != rhs.order {
            return Err(Error::ShapeMismatch(format!(
                "orders {} and {} differ",
                self.order, rhs.order
            )));
        }
        Ok(())
    }

    /// Exact product. Entries of a product of two ternary matrices are bounded
    /// by the order, so accumulation runs in `i64` before promotion.
    pub fn mul(&self, rhs: &Self) -> Result<IntMatrix> {
        self.same_order(rhs)?;
        let acc = self.mul_i64(rhs);
        Ok(IntMatrix { order: self.order, data: acc.into_iter().map(BigInt::from).collect() })
    }

    pub(crate) fn mul_i64(&self, rhs: &Self) -> Vec<i64> {
        let n = self.order;
        let mut out = vec![0i64; n * n];
        for r in 0..n {
            let out_row = &mut out[r * n..(r + 1) * n];
            for (k, &a) in self.row(r).iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let a = a as i64;
                for (o, &b) in out_row.iter_mut().zip(rhs.row(k)) {
                    *o += a * b as i64;
                }
            }
        }
        out
    }

    /// `X X^T` computed directly from row inner products.
    pub fn gram(&self) -> IntMatrix {
        self.mul(&self.transpose()).expect("square")
    }

    pub fn kronecker(&self, rhs: &Self) -> Self {
        let (p, q) = (self.order, rhs.order);
        Self::from_fn(p * q, |r, c| self.get(r / q, c / q) * rhs.get(r % q, c % q))
    }

    pub fn to_int(&self) -> IntMatrix {
        IntMatrix::from(self)
    }

    /// Renders the matrix as rows of `+`, `-` and `0`.
    pub fn to_sign_rows(&self) -> Vec<String> {
        self.rows()
            .map(|row| {
                row.iter()
                    .map(|&v| match v {
                        1 => '+',
                        -1 => '-',
                        _ => '0',
                    })
                    .collect()
            })
            .collect()
    }
}

impl fmt::Debug for TernaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "TernaryMatrix(order {})", self.order)?;
        for row in self.to_sign_rows() {
            writeln!(f, "  {row}")?;
        }
        Ok(())
    }
}

impl fmt::Display for TernaryMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.to_sign_rows() {
            writeln!(f, "{row}")?;
        }
        Ok(())
    }
}

/// Circulant matrix whose row `r` is `first_row` shifted right by `r`.
pub fn circulant(first_row: &[i64]) -> Result<TernaryMatrix> {
    let n = first_row.len();
    if n == 0 {
        return Err(Error::ShapeMismatch("empty first row".into()));
    }
    if let Some(pos) = first_row.iter().position(|v| !(-1..=1).contains(v)) {
        return Err(Error::InvalidEntry { row: 0, col: pos, value: first_row[pos] });
    }
    Ok(TernaryMatrix::from_fn(n, |r, c| first_row[(c + n - r) % n] as i8))
}

/// The back-identity (anti-diagonal permutation) matrix.
pub fn back_identity(order: usize) -> TernaryMatrix {
    TernaryMatrix::from_fn(order, |r, c| (r + c + 1 == order) as i8)
}

/// Block back-circulant: block `(r, c)` is `blocks[(r + c) mod m]`.
pub fn back_circulant(blocks: &[TernaryMatrix]) -> Result<TernaryMatrix> {
    let first = blocks
        .first()
        .ok_or_else(|| Error::ShapeMismatch("back-circulant needs at least one block".into()))?;
    let b = first.order();
    if let Some(bad) = blocks.iter().position(|x| x.order() != b) {
        return Err(Error::ShapeMismatch(format!(
            "block {bad} has order {}, expected {b}",
            blocks[bad].order()
        )));
    }
    let m = blocks.len();
    Ok(TernaryMatrix::from_fn(m * b, |r, c| blocks[(r / b + c / b) % m].get(r % b, c % b)))
}

/// Square matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    order: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(order * order);
        for r in 0..order {
            for c in 0..order {
                data.push(f(r, c));
            }
        }
        Self { order, data }
    }

    pub fn zeros(order: usize) -> Self {
        Self::from_fn(order, |_, _| BigInt::zero())
    }

    pub fn identity(order: usize) -> Self {
        Self::scaled_identity(order, 1)
    }

    pub fn scaled_identity(order: usize, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        Self::from_fn(order, |r, col| if r == col { c.clone() } else { BigInt::zero() })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, row: usize, col: usize) -> &BigInt {
        &self.data[row * self.order + col]
    }

    /// Entry as `i64`; every product formed in this crate fits.
    pub fn get_i64(&self, row: usize, col: usize) -> i64 {
        self.get(row, col).to_i64().expect("entry fits in i64")
    }

    fn same_order(&self, rhs: &Self) -> Result<()> {
        if self.order != rhs.order {
            return Err(Error::ShapeMismatch(format!(
                "orders {} and {} differ",
                self.order, rhs.order
            )));
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.same_order(rhs)?;
        Ok(Self { order: self.order, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.same_order(rhs)?;
        Ok(Self { order: self.order, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() })
    }

    pub fn scale(&self, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        Self { order: self.order, data: self.data.iter().map(|a| a * &c).collect() }
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        self.same_order(rhs)?;
        let n = self.order;
        let mut out = vec![BigInt::zero(); n * n];
        for r in 0..n {
            for k in 0..n {
                let a = &self.data[r * n + k];
                if a.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let b = &rhs.data[k * n + c];
                    if !b.is_zero() {
                        out[r * n + c] += a * b;
                    }
                }
            }
        }
        Ok(Self { order: n, data: out })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.order, |r, c| self.get(c, r).clone())
    }

    pub fn kronecker(&self, rhs: &Self) -> Self {
        let q = rhs.order;
        Self::from_fn(self.order * q, |r, c| self.get(r / q, c / q) * rhs.get(r % q, c % q))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Lexicographically first position where `self` and `rhs` differ.
    pub fn first_difference(&self, rhs: &Self) -> Option<(usize, usize)> {
        if self.order != rhs.order {
            return Some((0, 0));
        }
        self.data
            .iter()
            .zip(&rhs.data)
            .position(|(a, b)| a != b)
            .map(|p| (p / self.order, p % self.order))
    }

    /// Converts back to a ternary matrix when every entry is in `{-1, 0, 1}`.
    pub fn to_ternary(&self) -> Result<TernaryMatrix> {
        let mut data = Vec::with_capacity(self.data.len());
        for (p, v) in self.data.iter().enumerate() {
            if v.abs() > BigInt::one() {
                return Err(Error::InvalidEntry {
                    row: p / self.order,
                    col: p % self.order,
                    value: v.to_i64().unwrap_or(i64::MAX),
                });
            }
            data.push(v.to_i8().expect("bounded"));
        }
        TernaryMatrix::new(self.order, data)
    }
}

impl From<&TernaryMatrix> for IntMatrix {
    fn from(m: &TernaryMatrix) -> Self {
        Self { order: m.order, data: m.data.iter().map(|&v| BigInt::from(v)).collect() }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix(order {})", self.order)?;
        for r in 0..self.order {
            let row: Vec<String> = (0..self.order).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tm(rows: &[&[i64]]) -> TernaryMatrix {
        TernaryMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn circulant_shift_structure() {
        let c = circulant(&[0, 1, 0]).unwrap();
        assert_eq!(c, tm(&[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]));
        assert_eq!(circulant(&[1, 0, 0]).unwrap(), TernaryMatrix::identity(3));
    }

    #[test]
    fn circulant_of_skew_seed_is_skew() {
        let a = circulant(&[0, 1, 0, 0, 0, 0, -1]).unwrap();
        assert!(a.is_skew());
        assert_eq!(a.transpose(), a.negate());
    }

    #[test]
    fn circulant_rejects_non_ternary() {
        assert!(matches!(circulant(&[0, 2, 0]), Err(Error::InvalidEntry { col: 1, value: 2, .. })));
    }

    #[test]
    fn back_identity_small_cases() {
        assert_eq!(back_identity(1), TernaryMatrix::identity(1));
        assert_eq!(back_identity(2), TernaryMatrix::complete(2));
        let r3 = back_identity(3);
        assert_eq!(r3.mul(&r3).unwrap(), IntMatrix::identity(3));
    }

    #[test]
    fn back_circulant_layouts() {
        let x = tm(&[&[1, 0], &[0, -1]]);
        assert_eq!(back_circulant(std::slice::from_ref(&x)).unwrap(), x);

        let y = tm(&[&[0, 1], &[1, 0]]);
        let b = back_circulant(&[x.clone(), y.clone()]).unwrap();
        for r in 0..2 {
            for c in 0..2 {
                assert_eq!(b.get(r, c), x.get(r, c));
                assert_eq!(b.get(r, c + 2), y.get(r, c));
                assert_eq!(b.get(r + 2, c), y.get(r, c));
                assert_eq!(b.get(r + 2, c + 2), x.get(r, c));
            }
        }
    }

    #[test]
    fn back_circulant_rejects_mixed_orders() {
        let err = back_circulant(&[TernaryMatrix::identity(2), TernaryMatrix::identity(3)]);
        assert!(matches!(err, Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn kronecker_identities() {
        let i6 = TernaryMatrix::identity(2).kronecker(&TernaryMatrix::identity(3));
        assert_eq!(i6, TernaryMatrix::identity(6));

        let h = tm(&[&[1, 1], &[1, -1]]);
        let h4 = h.kronecker(&h);
        assert!(h4.is_symmetric());
        assert_eq!(h4.gram(), IntMatrix::scaled_identity(4, 4));
    }

    #[test]
    fn abs_and_products() {
        assert_eq!(tm(&[&[0, -1], &[1, 0]]).abs(), tm(&[&[0, 1], &[1, 0]]));
        let j3 = TernaryMatrix::ones(3);
        assert_eq!(j3.mul(&j3).unwrap(), j3.to_int().scale(3));
    }

    #[test]
    fn arithmetic_shape_errors() {
        let a = TernaryMatrix::identity(2);
        let b = TernaryMatrix::identity(3);
        assert!(matches!(a.mul(&b), Err(Error::ShapeMismatch(_))));
        assert!(matches!(a.try_add(&b), Err(Error::ShapeMismatch(_))));
        assert!(matches!(a.to_int().add(&b.to_int()), Err(Error::ShapeMismatch(_))));
        assert!(matches!(a.try_add(&a), Err(Error::InvalidEntry { .. })));
    }

    #[test]
    fn from_rows_validation() {
        assert!(matches!(
            TernaryMatrix::from_rows(&[vec![0i64, 1], vec![1]]),
            Err(Error::ShapeMismatch(_))
        ));
        assert!(matches!(
            TernaryMatrix::from_rows(&[vec![0i64, 3], vec![1, 0]]),
            Err(Error::InvalidEntry { row: 0, col: 1, value: 3 })
        ));
    }
}
