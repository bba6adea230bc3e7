//! Dense square matrices over exact rings, with two-fold tensor-leg operations.
//!
//! Index convention: row `(i_a, i_b)` of `A ⊗ B` is `i_a * dim(B) + i_b`
//! (zero-based). Leg operations need the factor dimensions, which `kron`
//! records.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::scalar::{PolyH, Ring, ScalarError, ScalarQH};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TensorError {
    #[error("index ({row}, {col}) out of range for dimension {dim}")]
    IndexOutOfRange { dim: usize, row: usize, col: usize },
    #[error("matrix has no (equal) tensor factor dimensions")]
    MissingFactorDims,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

#[derive(Clone, Debug)]
pub struct Matrix<T> {
    dim: usize,
    factors: Option<(usize, usize)>,
    entries: Vec<T>,
}

/// Equality is entrywise; recorded factor dimensions are bookkeeping only.
impl<T: PartialEq> PartialEq for Matrix<T> {
    fn eq(&self, o: &Self) -> bool {
        self.dim == o.dim && self.entries == o.entries
    }
}

/// Matrix over `Q(s, h)(sqrt2)`.
pub type RingMatrix = Matrix<ScalarQH>;
/// Matrix over `Q[h](sqrt2)`.
pub type PolyMatrix = Matrix<PolyH>;

impl<T: Ring> Matrix<T> {
    pub fn zeros(dim: usize) -> Self {
        Matrix {
            dim,
            factors: None,
            entries: vec![T::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = T::one();
        }
        m
    }

    pub fn from_fn(dim: usize, f: impl Fn(usize, usize) -> T) -> Self {
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                entries.push(f(i, j));
            }
        }
        Matrix {
            dim,
            factors: None,
            entries,
        }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let dim = rows.len();
        assert!(rows.iter().all(|r| r.len() == dim), "rows must form a square");
        Matrix {
            dim,
            factors: None,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    /// `e_{ij}` with one-based indices.
    pub fn basis(dim: usize, i: usize, j: usize) -> Result<Self, TensorError> {
        if i == 0 || j == 0 || i > dim || j > dim {
            return Err(TensorError::IndexOutOfRange {
                dim,
                row: i,
                col: j,
            });
        }
        let mut m = Self::zeros(dim);
        m.entries[(i - 1) * dim + (j - 1)] = T::one();
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn factors(&self) -> Option<(usize, usize)> {
        self.factors
    }

    pub fn with_factors(mut self, a: usize, b: usize) -> Self {
        assert_eq!(a * b, self.dim, "factor dimensions must multiply to dim");
        self.factors = Some((a, b));
        self
    }

    /// Zero-based entry access.
    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.entries[i * self.dim + j] = v;
    }

    pub fn entries(&self) -> &[T] {
        &self.entries
    }

    pub fn rows(&self) -> impl Iterator<Item = &[T]> {
        self.entries.chunks(self.dim.max(1))
    }

    pub fn map<U: Ring>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            dim: self.dim,
            factors: self.factors,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn try_map<U: Ring, E>(&self, f: impl Fn(&T) -> Result<U, E>) -> Result<Matrix<U>, E> {
        Ok(Matrix {
            dim: self.dim,
            factors: self.factors,
            entries: self.entries.iter().map(f).collect::<Result<_, _>>()?,
        })
    }

    pub fn is_identity(&self) -> bool {
        self.first_difference(&Self::identity(self.dim)).is_none()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(T::is_zero)
    }

    /// First `(row, col)` where the two matrices differ, zero-based.
    pub fn first_difference(&self, other: &Self) -> Option<(usize, usize)> {
        if self.dim != other.dim {
            return Some((0, 0));
        }
        self.entries
            .iter()
            .zip(&other.entries)
            .position(|(a, b)| a != b)
            .map(|k| (k / self.dim, k % self.dim))
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.dim, o.dim);
        Matrix {
            dim: self.dim,
            factors: self.factors.or(o.factors),
            entries: self
                .entries
                .iter()
                .zip(&o.entries)
                .map(|(a, b)| a.add_ref(b))
                .collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!(self.dim, o.dim);
        Matrix {
            dim: self.dim,
            factors: self.factors.or(o.factors),
            entries: self
                .entries
                .iter()
                .zip(&o.entries)
                .map(|(a, b)| a.sub_ref(b))
                .collect(),
        }
    }

    pub fn scale(&self, k: &T) -> Self {
        self.map(|x| k.mul_ref(x))
    }

    /// Matrix product; zero entries of the left factor are skipped, which
    /// makes the very sparse R-matrices cheap.
    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.dim, o.dim, "dimension mismatch in product");
        let n = self.dim;
        let mut out = vec![T::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &o.entries[k * n + j];
                    if b.is_zero() {
                        continue;
                    }
                    let t = a.mul_ref(b);
                    let slot = &mut out[i * n + j];
                    *slot = slot.add_ref(&t);
                }
            }
        }
        Matrix {
            dim: n,
            factors: self.factors.or(o.factors),
            entries: out,
        }
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::from_fn(self.dim, |i, j| self.get(j, i).clone());
        m.factors = self.factors;
        m
    }

    pub fn kron(&self, o: &Self) -> Self {
        let (da, db) = (self.dim, o.dim);
        let mut m = Self::from_fn(da * db, |r, c| {
            let a = self.get(r / db, c / db);
            if a.is_zero() {
                return T::zero();
            }
            a.mul_ref(o.get(r % db, c % db))
        });
        m.factors = Some((da, db));
        m
    }

    fn equal_factors(&self) -> Result<usize, TensorError> {
        match self.factors {
            Some((a, b)) if a == b => Ok(a),
            _ => Err(TensorError::MissingFactorDims),
        }
    }

    /// Transposes tensor leg 1 or 2.
    pub fn partial_transpose(&self, leg: u8) -> Result<Self, TensorError> {
        let (da, db) = self.factors.ok_or(TensorError::MissingFactorDims)?;
        let mut m = Self::from_fn(self.dim, |r, c| {
            let (i, k) = (r / db, r % db);
            let (j, l) = (c / db, c % db);
            match leg {
                1 => self.get(j * db + k, i * db + l).clone(),
                _ => self.get(i * db + l, j * db + k).clone(),
            }
        });
        debug_assert!(leg == 1 || leg == 2);
        m.factors = Some((da, db));
        Ok(m)
    }

    /// Flip operator `P` on `V ⊗ V`.
    pub fn flip(n: usize) -> Self {
        let mut m = Self::zeros(n * n);
        for i in 0..n {
            for k in 0..n {
                m.set(i * n + k, k * n + i, T::one());
            }
        }
        m.factors = Some((n, n));
        m
    }

    /// `M_21 = P M P`.
    pub fn swap_legs(&self) -> Result<Self, TensorError> {
        let n = self.equal_factors()?;
        let mut m = Self::from_fn(self.dim, |r, c| {
            let (i, k) = (r / n, r % n);
            let (j, l) = (c / n, c % n);
            self.get(k * n + i, l * n + j).clone()
        });
        m.factors = Some((n, n));
        Ok(m)
    }

    /// Places an operator on `V ⊗ V` onto legs `12`, `13` or `23` of `V ⊗ V ⊗ V`.
    pub fn embed_three(&self, slot: Slot) -> Result<Self, TensorError> {
        let n = self.equal_factors()?;
        let split = |x: usize| (x / (n * n), (x / n) % n, x % n);
        let m = Self::from_fn(n * n * n, |r, c| {
            let (r1, r2, r3) = split(r);
            let (c1, c2, c3) = split(c);
            let (pair_r, pair_c, spect_r, spect_c) = match slot {
                Slot::S12 => ((r1, r2), (c1, c2), r3, c3),
                Slot::S13 => ((r1, r3), (c1, c3), r2, c2),
                Slot::S23 => ((r2, r3), (c2, c3), r1, c1),
            };
            if spect_r != spect_c {
                return T::zero();
            }
            self.get(pair_r.0 * n + pair_r.1, pair_c.0 * n + pair_c.1)
                .clone()
        });
        Ok(m)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    S12,
    S13,
    S23,
}

impl Matrix<ScalarQH> {
    /// Gauss-Jordan inverse over the field, verified by multiplication.
    pub fn invert(&self) -> Result<Self, TensorError> {
        let n = self.dim;
        let mut a = self.entries.clone();
        let mut inv = Self::identity(n).entries;
        for col in 0..n {
            // simplest nonzero pivot keeps intermediate expressions small
            let pivot = (col..n)
                .filter(|&r| !a[r * n + col].is_zero())
                .min_by_key(|&r| a[r * n + col].complexity())
                .ok_or(TensorError::SingularMatrix)?;
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
                    inv.swap(pivot * n + j, col * n + j);
                }
            }
            let p = a[col * n + col].recip()?;
            if !p.is_one() {
                for j in 0..n {
                    a[col * n + j] = a[col * n + j].mul(&p);
                    inv[col * n + j] = inv[col * n + j].mul(&p);
                }
            }
            for r in 0..n {
                if r == col || a[r * n + col].is_zero() {
                    continue;
                }
                let f = a[r * n + col].clone();
                for j in 0..n {
                    if !a[col * n + j].is_zero() {
                        a[r * n + j] = a[r * n + j].sub(&f.mul(&a[col * n + j]));
                    }
                    if !inv[col * n + j].is_zero() {
                        inv[r * n + j] = inv[r * n + j].sub(&f.mul(&inv[col * n + j]));
                    }
                }
            }
        }
        let out = Matrix {
            dim: n,
            factors: self.factors,
            entries: inv,
        };
        debug_assert!(self.mul(&out).is_identity());
        if !self.mul(&out).is_identity() {
            return Err(TensorError::SingularMatrix);
        }
        Ok(out)
    }

    /// Entrywise `q -> 1` limit. Errors carry the failing entry.
    pub fn limit_q_to_1(&self) -> Result<PolyMatrix, (usize, usize, ScalarError)> {
        let n = self.dim;
        let mut entries = Vec::with_capacity(n * n);
        for (k, x) in self.entries.iter().enumerate() {
            entries.push(x.limit_q_to_1().map_err(|e| (k / n, k % n, e))?);
        }
        Ok(Matrix {
            dim: n,
            factors: self.factors,
            entries,
        })
    }

    pub fn at_h_zero(&self) -> Result<Self, TensorError> {
        Ok(self.try_map(|x| x.at_h_zero())?)
    }
}

/// Basis of `{x : A x = 0}` for a rectangular `A` given by rows. Free
/// columns get coefficient 1 in their own basis vector.
pub fn nullspace(rows: &[Vec<ScalarQH>], ncols: usize) -> Result<Vec<Vec<ScalarQH>>, ScalarError> {
    let mut a: Vec<Vec<ScalarQH>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..a.len())
            .filter(|&k| !a[k][col].is_zero())
            .min_by_key(|&k| a[k][col].complexity())
        else {
            continue;
        };
        a.swap(r, p);
        let inv = a[r][col].recip()?;
        a[r] = a[r].iter().map(|x| x.mul(&inv)).collect();
        for k in 0..a.len() {
            if k != r && !a[k][col].is_zero() {
                let f = a[k][col].clone();
                a[k] = a[k].iter().zip(&a[r]).map(|(x, y)| x.sub(&f.mul(y))).collect();
            }
        }
        pivots.push(col);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![ScalarQH::zero(); ncols];
        v[free] = ScalarQH::one();
        for (k, &pc) in pivots.iter().enumerate() {
            v[pc] = a[k][free].neg();
        }
        basis.push(v);
    }
    Ok(basis)
}

impl Matrix<PolyH> {
    pub fn to_scalar(&self) -> RingMatrix {
        self.map(ScalarQH::from_polyh)
    }

    pub fn at_h_zero(&self) -> Self {
        self.map(PolyH::at_h_zero)
    }

    pub fn max_h_degree(&self) -> usize {
        self.entries
            .iter()
            .filter_map(PolyH::degree)
            .max()
            .unwrap_or(0)
    }
}

impl RingMatrix {
    /// Converts to a polynomial-in-`h` matrix when every entry allows it.
    pub fn to_poly(&self) -> Option<PolyMatrix> {
        let entries = self
            .entries
            .iter()
            .map(ScalarQH::to_polyh)
            .collect::<Option<Vec<_>>>()?;
        Some(Matrix {
            dim: self.dim,
            factors: self.factors,
            entries,
        })
    }
}

/// JSON wire form: entries rendered with the canonical scalar strings.
#[derive(Debug, Clone, Serialize)]
pub struct MatrixJson {
    pub dim: usize,
    pub factors: Option<[usize; 2]>,
    pub entries: Vec<Vec<String>>,
}

impl<T: Ring> Matrix<T> {
    pub fn to_json(&self) -> MatrixJson {
        MatrixJson {
            dim: self.dim,
            factors: self.factors.map(|(a, b)| [a, b]),
            entries: self
                .rows()
                .map(|r| r.iter().map(|x| x.to_string()).collect())
                .collect(),
        }
    }

    /// LaTeX `pmatrix` rendering.
    pub fn to_latex(&self) -> String {
        let mut out = String::from("\\begin{pmatrix}\n");
        for (i, row) in self.rows().enumerate() {
            let cells: Vec<String> = row.iter().map(|x| latex_scalar(&x.to_string())).collect();
            out.push_str("  ");
            out.push_str(&cells.join(" & "));
            if i + 1 < self.dim {
                out.push_str(" \\\\");
            }
            out.push('\n');
        }
        out.push_str("\\end{pmatrix}\n");
        out
    }
}

fn latex_scalar(s: &str) -> String {
    s.replace("sqrt2", "\\sqrt{2}").replace('*', " ")
}

impl<T: Ring> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type M = RingMatrix;

    fn e(n: usize, i: usize, j: usize) -> M {
        M::basis(n, i, j).unwrap()
    }

    fn int_matrix(rows: &[&[i64]]) -> M {
        M::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| ScalarQH::int(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn basis_matrices() {
        assert_eq!(e(2, 1, 2), int_matrix(&[&[0, 1], &[0, 0]]));
        assert_eq!(e(1, 1, 1), M::identity(1));
        let m = e(3, 3, 1);
        assert_eq!(*m.get(2, 0), ScalarQH::one());
        assert_eq!(m.entries().iter().filter(|x| !x.is_zero()).count(), 1);
        assert!(matches!(
            M::basis(2, 3, 1),
            Err(TensorError::IndexOutOfRange { .. })
        ));
        assert!(M::basis(2, 0, 1).is_err());
    }

    /// Position of `e_ij ⊗ e_kl` by the one-based formula `(i-1)N + k`.
    fn kron_position(n: usize, i: usize, j: usize, k: usize, l: usize) -> (usize, usize) {
        ((i - 1) * n + k, (j - 1) * n + l)
    }

    #[test]
    fn kron_examples() {
        let a = e(2, 1, 1).kron(&e(2, 2, 2));
        assert_eq!(*a.get(1, 1), ScalarQH::one());
        assert_eq!(a.factors(), Some((2, 2)));
        assert!(M::identity(2).kron(&M::identity(2)).is_identity());
        let b = e(2, 1, 2).kron(&e(2, 2, 1));
        let (r, c) = kron_position(2, 1, 2, 2, 1);
        assert_eq!((r, c), (2, 3));
        assert_eq!(*b.get(r - 1, c - 1), ScalarQH::one());
        assert_eq!(b.entries().iter().filter(|x| !x.is_zero()).count(), 1);
    }

    #[test]
    fn partial_transpose_examples() {
        let m = e(2, 1, 2).kron(&e(2, 1, 1));
        assert_eq!(m.partial_transpose(1).unwrap(), e(2, 2, 1).kron(&e(2, 1, 1)));
        let a = int_matrix(&[&[1, 2], &[3, 4]]);
        let b = int_matrix(&[&[5, 6], &[7, 8]]);
        assert_eq!(
            a.kron(&b).partial_transpose(2).unwrap(),
            a.kron(&b.transpose())
        );
        assert_eq!(
            int_matrix(&[&[1, 2], &[3, 4]]).partial_transpose(1),
            Err(TensorError::MissingFactorDims)
        );
    }

    #[test]
    fn inversion_examples() {
        assert!(M::identity(4).invert().unwrap().is_identity());
        let mut g = M::identity(2);
        g.set(0, 1, ScalarQH::eta());
        let mut g_inv = M::identity(2);
        g_inv.set(0, 1, ScalarQH::eta().neg());
        assert_eq!(g.invert().unwrap(), g_inv);
        let q = ScalarQH::q();
        let d = M::from_fn(4, |i, j| match (i, j) {
            (0, 0) | (3, 3) => q.clone(),
            _ if i == j => ScalarQH::one(),
            _ => ScalarQH::zero(),
        });
        let di = M::from_fn(4, |i, j| match (i, j) {
            (0, 0) | (3, 3) => ScalarQH::q_inv(),
            _ if i == j => ScalarQH::one(),
            _ => ScalarQH::zero(),
        });
        assert_eq!(d.invert().unwrap(), di);
        assert_eq!(
            int_matrix(&[&[1, 2], &[2, 4]]).invert(),
            Err(TensorError::SingularMatrix)
        );
    }

    #[test]
    fn swap_legs_examples() {
        let a = int_matrix(&[&[1, 2], &[3, 4]]);
        let b = int_matrix(&[&[5, 6], &[7, 8]]);
        assert_eq!(a.kron(&b).swap_legs().unwrap(), b.kron(&a));
        let p = M::flip(2);
        assert_eq!(p.swap_legs().unwrap(), p);
        let pm = p.mul(&a.kron(&b)).mul(&p);
        assert_eq!(pm.first_difference(&b.kron(&a)), None);
    }

    #[test]
    fn embed_three_examples() {
        let i4 = M::identity(4).with_factors(2, 2);
        assert!(i4.embed_three(Slot::S12).unwrap().is_identity());
        let x = e(2, 1, 1).kron(&e(2, 2, 2));
        assert_eq!(
            x.embed_three(Slot::S13).unwrap(),
            e(2, 1, 1)
                .kron(&M::identity(2))
                .kron(&e(2, 2, 2))
        );
        assert_eq!(
            M::flip(2).embed_three(Slot::S23).unwrap(),
            M::identity(2).kron(&M::flip(2))
        );
    }

    fn arb_int_matrix(n: usize) -> impl Strategy<Value = M> {
        prop::collection::vec(-4i64..=4, n * n).prop_map(move |v| {
            M::from_fn(n, |i, j| ScalarQH::int(v[i * n + j]))
        })
    }

    #[test]
    fn nullspace_of_singlet_constraint() {
        let h = ScalarQH::h();
        // c21 = c12 + h c22 as one row over (c11, c12, c21, c22)
        let rows = vec![vec![ScalarQH::zero(), ScalarQH::one(), ScalarQH::int(-1), h.clone()]];
        let basis = nullspace(&rows, 4).unwrap();
        assert_eq!(basis.len(), 3);
        for v in &basis {
            let dot = rows[0].iter().zip(v).fold(ScalarQH::zero(), |acc, (a, b)| acc.add(&a.mul(b)));
            assert!(dot.is_zero());
        }
        let full = vec![
            vec![ScalarQH::one(), ScalarQH::zero()],
            vec![h.clone(), ScalarQH::one()],
        ];
        assert!(nullspace(&full, 2).unwrap().is_empty());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn leg_transposes_compose_to_full_transpose(m in arb_int_matrix(9)) {
            let m = m.with_factors(3, 3);
            let t1 = m.partial_transpose(1).unwrap();
            prop_assert_eq!(t1.partial_transpose(1).unwrap(), m.clone());
            prop_assert_eq!(t1.partial_transpose(2).unwrap(), m.transpose());
        }

        #[test]
        fn swap_of_kron(a in arb_int_matrix(2), b in arb_int_matrix(2)) {
            prop_assert_eq!(a.kron(&b).swap_legs().unwrap(), b.kron(&a));
        }

        #[test]
        fn kron_is_associative(a in arb_int_matrix(2), b in arb_int_matrix(2), c in arb_int_matrix(2)) {
            let l = a.kron(&b).kron(&c);
            let r = a.kron(&b.kron(&c));
            prop_assert_eq!(l.first_difference(&r), None);
        }

        #[test]
        fn inverse_is_two_sided(m in arb_int_matrix(3)) {
            if let Ok(inv) = m.invert() {
                prop_assert!(inv.mul(&m).is_identity());
                prop_assert!(m.mul(&inv).is_identity());
            }
        }
    }
}
