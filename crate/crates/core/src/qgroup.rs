//! Standard and Jordanian R-matrices, the singular `q -> 1` contraction that
//! relates them, metrics, twisted `R̃`, and structural verifiers.
//!
//! The contraction conjugates by `g = I + eta e_{1N}` with `eta = h / (q - 1)`
//! and takes the entrywise limit. Every constructor that has a closed form is
//! checked against the limit path rather than trusted.

use serde::Serialize;
use thiserror::Error;

use crate::scalar::{ScalarError, ScalarQH};
use crate::tensor::{PolyMatrix, RingMatrix, Slot, TensorError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QGroupError {
    #[error("no contraction limit at entry ({row}, {col}): {source}")]
    Pole {
        row: usize,
        col: usize,
        source: ScalarError,
    },
    #[error("no contraction limit: n must be even (got n = {0})")]
    OddMetric(usize),
    #[error("the two defining expressions of the twisted R-matrix differ at ({0}, {1})")]
    ExpressionMismatch(usize, usize),
    #[error("limit path and closed form differ at ({0}, {1})")]
    ClosedFormMismatch(usize, usize),
    #[error("dimension {0} not supported here")]
    InvalidDimension(usize),
    #[error(transparent)]
    Tensor(#[from] TensorError),
}

fn e(n: usize, i: usize, j: usize) -> RingMatrix {
    RingMatrix::basis(n, i, j).expect("index within range")
}

fn pole((row, col, source): (usize, usize, ScalarError)) -> QGroupError {
    QGroupError::Pole { row, col, source }
}

/// Standard `GL_q(N)` R-matrix:
/// `q Σ e_ii⊗e_ii + Σ_{i≠j} e_ii⊗e_jj + (q - q⁻¹) Σ_{i<j} e_ij⊗e_ji`.
pub fn r_standard(n: usize) -> RingMatrix {
    let q = ScalarQH::q();
    let dq = &q - &ScalarQH::q_inv();
    let mut r = RingMatrix::zeros(n * n).with_factors(n, n);
    for i in 0..n {
        for j in 0..n {
            let diag = i * n + j;
            r.set(diag, diag, if i == j { q.clone() } else { ScalarQH::one() });
            if i < j {
                // e_ij ⊗ e_ji sits at row (i, j), column (j, i)
                r.set(i * n + j, j * n + i, dq.clone());
            }
        }
    }
    r
}

/// Jordanian `GL_h(N)` R-matrix in closed form.
pub fn r_jordanian(n: usize) -> RingMatrix {
    assert!(n >= 2, "the Jordanian R-matrix needs N >= 2");
    let h = ScalarQH::h();
    let id = RingMatrix::identity(n);
    let k = |a: &RingMatrix, b: &RingMatrix| a.kron(b);
    let mut lin = k(&e(n, 1, 1), &e(n, 1, n))
        .sub(&k(&e(n, 1, n), &e(n, 1, 1)))
        .add(&k(&e(n, 1, n), &e(n, n, n)))
        .sub(&k(&e(n, n, n), &e(n, 1, n)));
    for i in 2..n {
        let two = ScalarQH::int(2);
        let t = k(&e(n, 1, i), &e(n, i, n)).sub(&k(&e(n, i, n), &e(n, 1, i)));
        lin = lin.add(&t.scale(&two));
    }
    k(&id, &id)
        .add(&lin.scale(&h))
        .add(&k(&e(n, 1, n), &e(n, 1, n)).scale(&h.pow(2)))
        .with_factors(n, n)
}

/// `g = I + eta e_{1N}`. For `N = 1` the corner is the diagonal, giving `[1 + eta]`.
pub fn g_matrix(n: usize) -> RingMatrix {
    let mut g = RingMatrix::identity(n);
    let corner = g.get(0, n - 1).add(&ScalarQH::eta());
    g.set(0, n - 1, corner);
    g
}

/// `(g⁻¹ ⊗ g⁻¹) M (g ⊗ g)`.
pub fn conjugate_by_g(m: &RingMatrix, n: usize) -> Result<RingMatrix, QGroupError> {
    let g = g_matrix(n);
    let gi = g.invert()?;
    let n2 = n;
    Ok(gi.kron(&gi).mul(m).mul(&g.kron(&g)).with_factors(n2, n2))
}

#[derive(Debug, Clone, Serialize)]
pub struct ContractionReport {
    pub n: usize,
    #[serde(serialize_with = "ser_matrix")]
    pub path_a: PolyMatrix,
    #[serde(serialize_with = "ser_matrix")]
    pub path_b: PolyMatrix,
    pub agree: bool,
    /// Entries (zero-based) of the transformed matrix whose limit required
    /// cancelling a pole at `q = 1`.
    pub pole_locations: Vec<(usize, usize)>,
}

fn ser_matrix<S: serde::Serializer>(m: &PolyMatrix, s: S) -> Result<S::Ok, S::Error> {
    m.to_json().serialize(s)
}

/// Entries that depend on `h`. Since `h` only enters through `eta`, each
/// such entry had a pole at `q = 1` in its individual terms that cancelled.
fn cancelled_entries(m: &RingMatrix) -> Vec<(usize, usize)> {
    let n = m.dim();
    m.entries()
        .iter()
        .enumerate()
        .filter(|(_, x)| {
            let h_dep = |f: &crate::scalar::Frac| !f.num().is_h_free() || !f.den().is_h_free();
            h_dep(x.rational_part()) || x.radical_part().is_some_and(h_dep)
        })
        .map(|(k, _)| (k / n, k % n))
        .collect()
}

/// Runs both routes to `R_h`: the limit of the `g`-conjugated standard
/// R-matrix, and the closed form.
pub fn contract_r(n: usize) -> Result<ContractionReport, QGroupError> {
    if n < 2 {
        return Err(QGroupError::InvalidDimension(n));
    }
    let transformed = conjugate_by_g(&r_standard(n), n)?;
    let path_a = transformed.limit_q_to_1().map_err(pole)?;
    let path_b = r_jordanian(n)
        .to_poly()
        .expect("closed form is polynomial in h");
    Ok(ContractionReport {
        n,
        agree: path_a == path_b,
        pole_locations: cancelled_entries(&transformed),
        path_a,
        path_b,
    })
}

/// Contracts both `R'_12` and `R'^{-1}_21` and checks that each limit is
/// `R_h` once triangularity (`R_12^{-1} = R_21`) is used.
pub fn limit_equivalence(n: usize) -> Result<bool, QGroupError> {
    if n < 2 {
        return Err(QGroupError::InvalidDimension(n));
    }
    let rq = r_standard(n);
    let rh = r_jordanian(n).to_poly().expect("polynomial");
    let first = conjugate_by_g(&rq, n)?.limit_q_to_1().map_err(pole)?;
    let second_q = rq.invert()?.swap_legs()?;
    let second = conjugate_by_g(&second_q, n)?
        .limit_q_to_1()
        .map_err(pole)?;
    // second is the contraction of R'^{-1}_21, i.e. (R_h)^{-1}_21 = R_h
    let rh21_inv = r_jordanian(n).swap_legs()?.invert()?.to_poly().expect("polynomial");
    Ok(first == rh && second == rh21_inv && rh21_inv == rh)
}

/// `C' = Σ_i (-1)^{N-i} q^{-(N-2i+1)/2} e_{i i'}` with `i' = N - i + 1`.
/// The `script` flag selects the second-copy labelling and does not change
/// the matrix.
pub fn c_metric_q(n: usize, script: bool) -> RingMatrix {
    let _ = script;
    let mut c = RingMatrix::zeros(n);
    for i in 1..=n {
        let sign = if (n - i) % 2 == 0 { 1 } else { -1 };
        let exp = -(n as i32 - 2 * i as i32 + 1);
        let v = ScalarQH::s_pow(exp);
        c.set(i - 1, n - i, if sign > 0 { v } else { v.neg() });
    }
    c
}

/// Closed form `Σ_i (-1)^i e_{ii'} + (N-1) h e_{NN}` for even `N`; `[1]` for `N = 1`.
pub fn c_metric_closed(n: usize) -> RingMatrix {
    if n == 1 {
        return RingMatrix::identity(1);
    }
    let mut c = RingMatrix::zeros(n);
    for i in 1..=n {
        c.set(i - 1, n - i, ScalarQH::int(if i % 2 == 0 { 1 } else { -1 }));
    }
    let corner = c
        .get(n - 1, n - 1)
        .add(&ScalarQH::h().mul(&ScalarQH::int(n as i64 - 1)));
    c.set(n - 1, n - 1, corner);
    c
}

/// Contracted metric `lim gᵗ C' g`, cross-checked against the closed form.
///
/// Odd `N >= 3` has no limit and fails with [`QGroupError::OddMetric`]. For
/// `N = 1` the group is abelian and no conjugation is applied: the metric is
/// `C'(1) = [1]`.
pub fn c_metric_contract(n: usize) -> Result<RingMatrix, QGroupError> {
    if n == 0 {
        return Err(QGroupError::InvalidDimension(n));
    }
    if n == 1 {
        return Ok(c_metric_q(1, false));
    }
    let g = g_matrix(n);
    let transformed = g.transpose().mul(&c_metric_q(n, false)).mul(&g);
    let limit = match transformed.limit_q_to_1() {
        Ok(m) => m,
        Err((_, _, ScalarError::Pole { .. })) => return Err(QGroupError::OddMetric(n)),
        Err(other) => return Err(pole(other)),
    };
    let closed = c_metric_closed(n);
    if let Some((r, c)) = limit.to_scalar().first_difference(&closed) {
        return Err(QGroupError::ClosedFormMismatch(r, c));
    }
    Ok(closed)
}

/// Which side of the contraction the twisted R-matrix is built on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TildeSide {
    /// `q C_1 (R⁻¹)^{t1} C_1⁻¹ = q C_2 (R^{t2})⁻¹ C_2⁻¹`
    Q,
    /// `C_1⁻¹ (R⁻¹)^{t1} C_1 = C_2⁻¹ (R^{t2})⁻¹ C_2`
    H,
}

/// Twisted R-matrix. Both defining expressions are computed and must agree.
pub fn r_tilde(r: &RingMatrix, c: &RingMatrix, side: TildeSide) -> Result<RingMatrix, QGroupError> {
    let n = c.dim();
    let r = r.clone().with_factors(n, n);
    let id = RingMatrix::identity(n);
    let ci = c.invert()?;
    let (left, right) = match side {
        TildeSide::Q => (c.clone(), ci.clone()),
        TildeSide::H => (ci.clone(), c.clone()),
    };
    let leg1 = left
        .kron(&id)
        .mul(&r.invert()?.partial_transpose(1)?)
        .mul(&right.kron(&id));
    let leg2 = id
        .kron(&left)
        .mul(&r.partial_transpose(2)?.invert()?)
        .mul(&id.kron(&right));
    let (leg1, leg2) = match side {
        TildeSide::Q => (leg1.scale(&ScalarQH::q()), leg2.scale(&ScalarQH::q())),
        TildeSide::H => (leg1, leg2),
    };
    if let Some((i, j)) = leg1.first_difference(&leg2) {
        return Err(QGroupError::ExpressionMismatch(i, j));
    }
    Ok(leg1.with_factors(n, n))
}

/// `lim (g⁻¹⊗g⁻¹) R̃' (g⊗g)` for the standard data of dimension `n`.
pub fn r_tilde_contracted(n: usize) -> Result<PolyMatrix, QGroupError> {
    let rt = r_tilde(&r_standard(n), &c_metric_q(n, false), TildeSide::Q)?;
    conjugate_by_g(&rt, n)?.limit_q_to_1().map_err(pole)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StructureCheck {
    Ybe,
    Triangular,
    Hecke,
    Unital,
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckOutcome {
    pub check: StructureCheck,
    pub pass: bool,
    /// First failing entry `(row, col, value)`, zero-based.
    pub witness: Option<(usize, usize, String)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct StructureReport {
    pub outcomes: Vec<CheckOutcome>,
}

impl StructureReport {
    pub fn passed(&self, check: StructureCheck) -> Option<bool> {
        self.outcomes.iter().find(|o| o.check == check).map(|o| o.pass)
    }

    pub fn all_pass(&self) -> bool {
        self.outcomes.iter().all(|o| o.pass)
    }
}

fn compare(check: StructureCheck, lhs: &RingMatrix, rhs: &RingMatrix) -> CheckOutcome {
    let witness = lhs.first_difference(rhs).map(|(i, j)| {
        let diff = lhs.get(i, j).sub(rhs.get(i, j));
        (i, j, diff.to_string())
    });
    CheckOutcome {
        check,
        pass: witness.is_none(),
        witness,
    }
}

fn failed(check: StructureCheck, why: String) -> CheckOutcome {
    CheckOutcome {
        check,
        pass: false,
        witness: Some((0, 0, why)),
    }
}

/// Runs the requested structural checks on an R-matrix acting on `V ⊗ V`.
pub fn verify_structure(r: &RingMatrix, checks: &[StructureCheck]) -> StructureReport {
    let n = (r.dim() as f64).sqrt().round() as usize;
    let r = r.clone().with_factors(n, n);
    let outcomes = checks
        .iter()
        .map(|&check| match check {
            StructureCheck::Ybe => {
                let r12 = r.embed_three(Slot::S12).expect("factors set");
                let r13 = r.embed_three(Slot::S13).expect("factors set");
                let r23 = r.embed_three(Slot::S23).expect("factors set");
                let lhs = r12.mul(&r13).mul(&r23);
                let rhs = r23.mul(&r13).mul(&r12);
                compare(check, &lhs, &rhs)
            }
            StructureCheck::Triangular => match r.invert() {
                Ok(inv) => compare(check, &inv, &r.swap_legs().expect("factors set")),
                Err(e) => failed(check, e.to_string()),
            },
            StructureCheck::Hecke => {
                let pr = RingMatrix::flip(n).mul(&r);
                let id = RingMatrix::identity(n * n);
                let a = pr.sub(&id.scale(&ScalarQH::q()));
                let b = pr.add(&id.scale(&ScalarQH::q_inv()));
                compare(check, &a.mul(&b), &RingMatrix::zeros(n * n))
            }
            StructureCheck::Unital => match r.limit_q_to_1() {
                Ok(lim) => compare(check, &lim.at_h_zero().to_scalar(), &RingMatrix::identity(n * n)),
                Err((i, j, e)) => failed(check, format!("({i}, {j}): {e}")),
            },
        })
        .collect();
    StructureReport { outcomes }
}

/// The rank-one metric/R data `[1]` used for a one-dimensional second copy.
pub fn trivial_one() -> RingMatrix {
    RingMatrix::identity(1).with_factors(1, 1)
}

/// Contracted R-matrix for dimension `n`, with `[1]` for `n = 1`.
pub fn r_h_or_trivial(n: usize) -> RingMatrix {
    if n == 1 {
        trivial_one()
    } else {
        r_jordanian(n)
    }
}

/// Maximum `h`-degree over entries of a polynomial matrix.
pub fn h_degree_bound(m: &PolyMatrix) -> usize {
    m.max_h_degree()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{PolyH, Ring};

    fn polyh_entry(m: &RingMatrix, i: usize, j: usize) -> PolyH {
        m.get(i, j).to_polyh().expect("entry is polynomial in h")
    }
    use num_traits::Zero;

    fn hm(rows: &[&[&[i64]]]) -> RingMatrix {
        RingMatrix::from_rows(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|c| ScalarQH::from_polyh(&PolyH::from(crate::scalar::UniPoly::from_i64(c))))
                        .collect()
                })
                .collect(),
        )
    }

    /// 4x4 Jordanian matrix; coefficient lists are ascending in h.
    fn r_h2_expected() -> RingMatrix {
        hm(&[
            &[&[1], &[0, 1], &[0, -1], &[0, 0, 1]],
            &[&[], &[1], &[], &[0, 1]],
            &[&[], &[], &[1], &[0, -1]],
            &[&[], &[], &[], &[1]],
        ])
    }

    #[test]
    fn standard_small_cases() {
        assert_eq!(r_standard(1), RingMatrix::from_rows(vec![vec![ScalarQH::q()]]));
        let r = r_standard(2);
        assert_eq!(*r.get(0, 0), ScalarQH::q());
        assert_eq!(*r.get(3, 3), ScalarQH::q());
        assert!(r.get(1, 1).is_one() && r.get(2, 2).is_one());
        assert_eq!(*r.get(1, 2), &ScalarQH::q() - &ScalarQH::q_inv());
        let nonzero = r.entries().iter().filter(|x| !x.is_zero()).count();
        assert_eq!(nonzero, 5);
        for n in 1..=4 {
            assert!(r_standard(n).limit_q_to_1().unwrap().to_scalar().is_identity());
        }
    }

    #[test]
    fn g_matrix_cases() {
        let g = g_matrix(2);
        assert_eq!(*g.get(0, 1), ScalarQH::eta());
        assert_eq!(g_matrix(1), RingMatrix::from_rows(vec![vec![&ScalarQH::one() + &ScalarQH::eta()]]));
        let mut expect = RingMatrix::identity(3);
        expect.set(0, 2, ScalarQH::eta().neg());
        assert_eq!(g_matrix(3).invert().unwrap(), expect);
    }

    #[test]
    fn jordanian_closed_form() {
        assert_eq!(r_jordanian(2), r_h2_expected());
        // h^2 only on e_12 ⊗ e_12 = row 1, col 4
        let r = r_jordanian(2);
        let h2: Vec<_> = (0..4)
            .flat_map(|i| (0..4).map(move |j| (i, j)))
            .filter(|&(i, j)| !polyh_entry(&r, i, j).rat.coeff(2).is_zero())
            .collect();
        assert_eq!(h2, vec![(0, 3)]);
        for n in 2..=5 {
            assert!(r_jordanian(n).at_h_zero().unwrap().is_identity());
        }
    }

    #[test]
    fn contraction_n2_reproduces_closed_form() {
        let rep = contract_r(2).unwrap();
        assert!(rep.agree);
        assert_eq!(rep.path_a.to_scalar(), r_h2_expected());
        assert!(!rep.pole_locations.is_empty());
        assert!(rep.path_b.at_h_zero().to_scalar().is_identity());
    }

    #[test]
    fn contraction_n3_has_doubled_middle_terms() {
        let rep = contract_r(3).unwrap();
        assert!(rep.agree, "limit:\n{}\nclosed:\n{}", rep.path_a, rep.path_b);
        // e_12 ⊗ e_23 at row (0,1)=1, col (1,2)=5 carries 2h
        assert_eq!(rep.path_a.get(1, 5), &PolyH::h().mul(&PolyH::int(2)));
        assert_eq!(rep.path_a.get(3, 7), &PolyH::h().mul(&PolyH::int(-2)));
    }

    #[test]
    fn contraction_rejects_n1() {
        assert!(matches!(contract_r(1), Err(QGroupError::InvalidDimension(1))));
    }

    #[test]
    fn metric_q_cases() {
        let c2 = c_metric_q(2, false);
        assert_eq!(*c2.get(0, 1), ScalarQH::s_pow(-1).neg());
        assert_eq!(*c2.get(1, 0), ScalarQH::s());
        assert!(c2.get(0, 0).is_zero() && c2.get(1, 1).is_zero());
        assert!(c_metric_q(1, true).is_identity());
        let classical = c2.limit_q_to_1().unwrap().to_scalar();
        assert_eq!(classical, hm(&[&[&[], &[-1]], &[&[1], &[]]]));
    }

    #[test]
    fn metric_contraction_parity() {
        assert_eq!(
            c_metric_contract(2).unwrap(),
            hm(&[&[&[], &[-1]], &[&[1], &[0, 1]]])
        );
        assert_eq!(c_metric_contract(3), Err(QGroupError::OddMetric(3)));
        assert_eq!(c_metric_contract(5), Err(QGroupError::OddMetric(5)));
        let c4 = c_metric_contract(4).unwrap();
        let expect = hm(&[
            &[&[], &[], &[], &[-1]],
            &[&[], &[], &[1], &[]],
            &[&[], &[-1], &[], &[]],
            &[&[1], &[], &[], &[0, 3]],
        ]);
        assert_eq!(c4, expect);
        assert!(c_metric_contract(6).is_ok());
        assert!(c_metric_contract(1).unwrap().is_identity());
    }

    #[test]
    fn r_tilde_cases() {
        let eps = hm(&[&[&[], &[-1]], &[&[1], &[]]]);
        let id = RingMatrix::identity(4);
        assert!(r_tilde(&id, &eps, TildeSide::H).unwrap().is_identity());
        let rt = r_tilde(&r_jordanian(2), &c_metric_contract(2).unwrap(), TildeSide::H).unwrap();
        assert_eq!(r_tilde_contracted(2).unwrap().to_scalar(), rt);
    }

    #[test]
    fn structure_examples() {
        use StructureCheck::*;
        let rep = verify_structure(&r_jordanian(2), &[Ybe, Triangular, Unital]);
        assert!(rep.all_pass());
        let rep = verify_structure(&r_standard(2), &[Ybe, Hecke, Triangular]);
        assert_eq!(rep.passed(Ybe), Some(true));
        assert_eq!(rep.passed(Hecke), Some(true));
        assert_eq!(rep.passed(Triangular), Some(false));
        assert!(rep.outcomes[2].witness.is_some());
        let rep = verify_structure(&RingMatrix::identity(4), &[Ybe, Triangular, Unital]);
        assert!(rep.all_pass());
    }

    #[test]
    fn swap_legs_of_jordanian_flips_h_signs() {
        let r21 = r_jordanian(2).swap_legs().unwrap();
        let expect = hm(&[
            &[&[1], &[0, -1], &[0, 1], &[0, 0, 1]],
            &[&[], &[1], &[], &[0, -1]],
            &[&[], &[], &[1], &[0, 1]],
            &[&[], &[], &[], &[1]],
        ]);
        assert_eq!(r21, expect);
    }

    #[test]
    fn equivalence_of_rtt_forms() {
        for n in 2..=3 {
            assert!(limit_equivalence(n).unwrap());
        }
    }

    #[test]
    fn ring_trait_zero() {
        assert!(<ScalarQH as Ring>::zero().is_zero());
    }
}
