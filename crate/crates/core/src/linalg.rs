//! Exact integer linear algebra: determinants, Smith and Hermite normal
//! forms, and matrices acting on finite quotients `Z^2 / diag[d1, d2] Z^2`.
//!
//! Everything here works over arbitrary-precision integers. The hot loops of
//! the Hecke computations use the machine-word variants in `small`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{HeckeError, Result};
use crate::json::DecInt;

/// A square matrix of arbitrary-precision integers, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    dim: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let dim = rows.len();
        if dim == 0 {
            return Err(HeckeError::invalid("matrix must have at least one row"));
        }
        if rows.iter().any(|r| r.len() != dim) {
            return Err(HeckeError::invalid("matrix must be square"));
        }
        Ok(IntMatrix { dim, entries: rows.into_iter().flatten().collect() })
    }

    /// Builds a matrix from machine integers; panics if `rows` is ragged.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let rows = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        Self::from_rows(rows).expect("square matrix")
    }

    pub fn new_2x2(a: BigInt, b: BigInt, c: BigInt, d: BigInt) -> Self {
        IntMatrix { dim: 2, entries: vec![a, b, c, d] }
    }

    pub fn identity(dim: usize) -> Self {
        Self::diag(&vec![BigInt::one(); dim])
    }

    pub fn diag(d: &[BigInt]) -> Self {
        let dim = d.len();
        let mut entries = vec![BigInt::zero(); dim * dim];
        for (i, x) in d.iter().enumerate() {
            entries[i * dim + i] = x.clone();
        }
        IntMatrix { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.dim + c]
    }

    fn get_mut(&mut self, r: usize, c: usize) -> &mut BigInt {
        &mut self.entries[r * self.dim + c]
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        self.entries.chunks(self.dim).map(|r| r.to_vec()).collect()
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let n = self.dim;
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    entries[i * n + j] += a * other.get(k, j);
                }
            }
        }
        IntMatrix { dim: n, entries }
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.dim, v.len(), "dimension mismatch");
        (0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j) * &v[j]).sum())
            .collect()
    }

    pub fn is_unimodular(&self) -> bool {
        det(self).abs().is_one()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.dim {
                self.entries.swap(a * self.dim + j, b * self.dim + j);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.dim {
                self.entries.swap(i * self.dim + a, i * self.dim + b);
            }
        }
    }

    /// row[dst] += f * row[src]
    fn add_row(&mut self, dst: usize, src: usize, f: &BigInt) {
        for j in 0..self.dim {
            let t = f * self.get(src, j);
            *self.get_mut(dst, j) += t;
        }
    }

    /// col[dst] += f * col[src]
    fn add_col(&mut self, dst: usize, src: usize, f: &BigInt) {
        for i in 0..self.dim {
            let t = f * self.get(i, src);
            *self.get_mut(i, dst) += t;
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.dim {
            let t = -self.get(r, j);
            *self.get_mut(r, j) = t;
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.entries.chunks(self.dim).enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> =
            self.entries.chunks(self.dim).map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows: Vec<Vec<DecInt>> = Vec::deserialize(d)?;
        let rows = rows.into_iter().map(|r| r.into_iter().map(|x| x.0).collect()).collect();
        IntMatrix::from_rows(rows).map_err(serde::de::Error::custom)
    }
}

fn dec_list<S: Serializer>(v: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|x| x.to_string()))
}

/// Exact determinant by fraction-free (Bareiss) elimination.
pub fn det(m: &IntMatrix) -> BigInt {
    let n = m.dim;
    if n == 1 {
        return m.entries[0].clone();
    }
    if n == 2 {
        return m.get(0, 0) * m.get(1, 1) - m.get(0, 1) * m.get(1, 0);
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a.get(k, k).is_zero() {
            match (k + 1..n).find(|&r| !a.get(r, k).is_zero()) {
                Some(r) => {
                    a.swap_rows(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                *a.get_mut(i, j) = v;
            }
        }
        prev = a.get(k, k).clone();
    }
    sign * a.get(n - 1, n - 1)
}

/// Unimodular factorization `u * m * v = diag(d)` with `d[i] | d[i+1]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SnfDecomposition {
    pub u: IntMatrix,
    #[serde(serialize_with = "dec_list")]
    pub d: Vec<BigInt>,
    pub v: IntMatrix,
}

impl SnfDecomposition {
    pub fn diag_matrix(&self) -> IntMatrix {
        IntMatrix::diag(&self.d)
    }
}

/// Smith normal form by repeated gcd pivoting, with the row and column
/// transforms accumulated alongside.
pub fn snf(m: &IntMatrix) -> Result<SnfDecomposition> {
    if det(m).is_zero() {
        return Err(HeckeError::SingularMatrix);
    }
    let n = m.dim;
    let mut a = m.clone();
    let mut u = IntMatrix::identity(n);
    let mut v = IntMatrix::identity(n);

    for t in 0..n {
        loop {
            // Smallest nonzero entry of the trailing block becomes the pivot.
            let (pr, pc) = (t..n)
                .flat_map(|i| (t..n).map(move |j| (i, j)))
                .filter(|&(i, j)| !a.get(i, j).is_zero())
                .min_by(|&(i, j), &(k, l)| a.get(i, j).abs().cmp(&a.get(k, l).abs()))
                .expect("nonsingular matrix has a nonzero entry in every trailing block");
            a.swap_rows(t, pr);
            u.swap_rows(t, pr);
            a.swap_cols(t, pc);
            v.swap_cols(t, pc);

            let mut clean = true;
            for i in t + 1..n {
                let q = -a.get(i, t).div_floor(a.get(t, t));
                if !q.is_zero() {
                    a.add_row(i, t, &q);
                    u.add_row(i, t, &q);
                }
                if !a.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..n {
                let q = -a.get(t, j).div_floor(a.get(t, t));
                if !q.is_zero() {
                    a.add_col(j, t, &q);
                    v.add_col(j, t, &q);
                }
                if !a.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Pivot must divide the whole trailing block.
            let bad = (t + 1..n)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !a.get(i, j).is_multiple_of(a.get(t, t)));
            match bad {
                Some((i, _)) => {
                    let one = BigInt::one();
                    a.add_row(t, i, &one);
                    u.add_row(t, i, &one);
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            a.negate_row(t);
            u.negate_row(t);
        }
    }
    let d = (0..n).map(|i| a.get(i, i).clone()).collect();
    Ok(SnfDecomposition { u, d, v })
}

/// The canonical representative of the left coset `GL_2(Z) * m`: upper
/// triangular, positive diagonal, `0 <= H[0][1] < H[1][1]`.
pub fn hnf_left(m: &IntMatrix) -> Result<IntMatrix> {
    hnf_left_with_transform(m).map(|(h, _)| h)
}

/// Like [`hnf_left`], also returning the unimodular `x` with `x * m = h`.
pub fn hnf_left_with_transform(m: &IntMatrix) -> Result<(IntMatrix, IntMatrix)> {
    if m.dim != 2 {
        return Err(HeckeError::invalid("hnf_left is implemented for 2x2 matrices only"));
    }
    if det(m).is_zero() {
        return Err(HeckeError::SingularMatrix);
    }
    let (a, c) = (m.get(0, 0), m.get(1, 0));
    let eg = a.extended_gcd(c);
    let g = eg.gcd.clone();
    let mut x = IntMatrix::new_2x2(eg.x, eg.y, -(c / &g), a / &g);
    let mut h = x.mul(m);
    if h.get(1, 1).is_negative() {
        h.negate_row(1);
        x.negate_row(1);
    }
    let q = -h.get(0, 1).div_floor(h.get(1, 1));
    if !q.is_zero() {
        h.add_row(0, 1, &q);
        x.add_row(0, 1, &q);
    }
    debug_assert!(h.get(1, 0).is_zero() && h.get(0, 0).is_positive());
    Ok((h, x))
}

/// An element of `Z^2 / diag[d1, d2] Z^2` with `d1 | d2`, stored reduced.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuotientVector {
    modulus: [BigInt; 2],
    coords: [BigInt; 2],
}

impl QuotientVector {
    pub fn new(d1: BigInt, d2: BigInt, v1: BigInt, v2: BigInt) -> Result<Self> {
        if !d1.is_positive() || !d2.is_positive() || !d2.is_multiple_of(&d1) {
            return Err(HeckeError::invalid(format!("modulus ({d1}, {d2}) is not a divisor chain")));
        }
        let coords = [v1.mod_floor(&d1), v2.mod_floor(&d2)];
        Ok(QuotientVector { modulus: [d1, d2], coords })
    }

    pub fn from_u64(d: (u64, u64), v: (i64, i64)) -> Result<Self> {
        Self::new(d.0.into(), d.1.into(), v.0.into(), v.1.into())
    }

    pub fn modulus(&self) -> &[BigInt; 2] {
        &self.modulus
    }

    pub fn coords(&self) -> &[BigInt; 2] {
        &self.coords
    }
}

/// `m * v` on the quotient, row 1 reduced mod `d1` and row 2 mod `d2`.
pub fn act_on_quotient(m: &IntMatrix, v: &QuotientVector) -> Result<QuotientVector> {
    if m.dim != 2 {
        return Err(HeckeError::invalid("act_on_quotient needs a 2x2 matrix"));
    }
    let [d1, d2] = &v.modulus;
    if !m.get(1, 0).is_multiple_of(&(d2 / d1)) {
        return Err(HeckeError::IllDefinedAction { d1: d1.to_string(), d2: d2.to_string() });
    }
    let w = m.mul_vec(&v.coords);
    let [w1, w2]: [BigInt; 2] = w.try_into().expect("length 2");
    QuotientVector::new(d1.clone(), d2.clone(), w1, w2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_i64(rows)
    }

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn det_examples() {
        assert_eq!(det(&IntMatrix::identity(2)), BigInt::from(1));
        assert_eq!(det(&m(&[&[2, 0], &[0, 6]])), BigInt::from(12));
        assert_eq!(det(&m(&[&[1, 2], &[3, 4]])), BigInt::from(-2));
        assert_eq!(det(&m(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 2]])), BigInt::from(6));
        assert_eq!(det(&m(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 5]])), BigInt::from(-5));
    }

    #[test]
    fn snf_examples() {
        for (rows, want) in [
            (m(&[&[2, 0], &[0, 3]]), [1, 6]),
            (IntMatrix::identity(2), [1, 1]),
            (m(&[&[1, 2], &[3, 4]]), [1, 2]),
        ] {
            let s = snf(&rows).unwrap();
            assert_eq!(s.d, big(&want));
            assert_eq!(s.u.mul(&rows).mul(&s.v), s.diag_matrix());
            assert!(s.u.is_unimodular() && s.v.is_unimodular());
        }
    }

    #[test]
    fn snf_rank_three() {
        let a = m(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let s = snf(&a).unwrap();
        assert_eq!(s.d, big(&[2, 6, 12]));
        assert_eq!(s.u.mul(&a).mul(&s.v), s.diag_matrix());
    }

    #[test]
    fn snf_singular() {
        assert_eq!(snf(&m(&[&[1, 2], &[2, 4]])), Err(HeckeError::SingularMatrix));
        assert_eq!(hnf_left(&m(&[&[0, 0], &[0, 4]])), Err(HeckeError::SingularMatrix));
    }

    #[test]
    fn hnf_examples() {
        assert_eq!(hnf_left(&m(&[&[1, 0], &[0, 5]])).unwrap(), m(&[&[1, 0], &[0, 5]]));
        assert_eq!(hnf_left(&m(&[&[0, 1], &[3, 0]])).unwrap(), m(&[&[3, 0], &[0, 1]]));
        assert_eq!(hnf_left(&m(&[&[1, 7], &[0, 5]])).unwrap(), m(&[&[1, 2], &[0, 5]]));
    }

    /// Brute force: the left-coset representatives of [[0,1],[3,0]] among
    /// small unimodular multiples, filtered to the frozen normalization.
    #[test]
    fn hnf_row_swap_against_search() {
        let src = m(&[&[0, 1], &[3, 0]]);
        let mut found = Vec::new();
        for a in -3i64..=3 {
            for b in -3i64..=3 {
                for c in -3i64..=3 {
                    for d in -3i64..=3 {
                        if (a * d - b * c).abs() != 1 {
                            continue;
                        }
                        let h = m(&[&[a, b], &[c, d]]).mul(&src);
                        let e = |i, j| h.get(i, j).clone();
                        let canonical = e(1, 0).is_zero()
                            && e(0, 0).is_positive()
                            && e(1, 1).is_positive()
                            && !e(0, 1).is_negative()
                            && e(0, 1) < e(1, 1);
                        if canonical && !found.contains(&h) {
                            found.push(h);
                        }
                    }
                }
            }
        }
        assert_eq!(found, vec![m(&[&[3, 0], &[0, 1]])]);
        assert_eq!(hnf_left(&src).unwrap(), found[0]);
    }

    #[test]
    fn hnf_transform_is_unimodular() {
        let a = m(&[&[-4, 9], &[6, 15]]);
        let (h, x) = hnf_left_with_transform(&a).unwrap();
        assert!(x.is_unimodular());
        assert_eq!(x.mul(&a), h);
    }

    #[test]
    fn quotient_action_examples() {
        let v = QuotientVector::from_u64((4, 8), (1, 2)).unwrap();
        assert_eq!(act_on_quotient(&IntMatrix::identity(2), &v).unwrap(), v);
        assert_eq!(
            act_on_quotient(&m(&[&[1, 1], &[0, 1]]), &v).unwrap(),
            QuotientVector::from_u64((4, 8), (3, 2)).unwrap()
        );
        let e1 = QuotientVector::from_u64((4, 8), (1, 0)).unwrap();
        assert_eq!(
            act_on_quotient(&m(&[&[1, 0], &[4, 1]]), &e1).unwrap(),
            QuotientVector::from_u64((4, 8), (1, 4)).unwrap()
        );
    }

    #[test]
    fn quotient_action_rejects_bad_lower_entry() {
        let v = QuotientVector::from_u64((4, 8), (1, 0)).unwrap();
        assert!(matches!(
            act_on_quotient(&m(&[&[1, 0], &[1, 1]]), &v),
            Err(HeckeError::IllDefinedAction { .. })
        ));
    }

    #[test]
    fn quotient_vector_rejects_non_chain() {
        assert!(QuotientVector::from_u64((3, 8), (0, 0)).is_err());
        assert!(QuotientVector::from_u64((0, 8), (0, 0)).is_err());
    }

    #[test]
    fn matrix_json_is_decimal_strings() {
        let a = m(&[&[1, -2], &[3, 4]]);
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(s, r#"[["1","-2"],["3","4"]]"#);
        let back: IntMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, a);
        let bare: IntMatrix = serde_json::from_str("[[1,-2],[3,4]]").unwrap();
        assert_eq!(bare, a);
        assert!(serde_json::from_str::<IntMatrix>("[[1,2],[3]]").is_err());
    }
}
