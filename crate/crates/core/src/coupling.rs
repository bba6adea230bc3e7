//! Coupled products and coupled commutators of rank-1/2 operator families,
//! with a 1/2 ⊗ 1/2 coupling table obtained by solving linear constraints in
//! the deformed boson algebra.
//!
//! Component index 1 carries `m = +1/2`, index 2 carries `m = -1/2`.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::freealg::{FreeAlgError, FreeElement, RewriteSystem, Word};
use crate::oscillator::{FockRep, OscillatorError};
use crate::scalar::{PolyH, ScalarError, ScalarQH};
use crate::tensor::{nullspace, PolyMatrix};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CouplingError {
    #[error("invalid coupling labels j = {j}, m = {m}")]
    InvalidLabels { j: u8, m: i8 },
    #[error("{which} solution space has dimension {found}, expected {expected}")]
    SolveDimension {
        which: &'static str,
        found: usize,
        expected: usize,
    },
    #[error("coupling coefficient is not polynomial in h: {0}")]
    NonPolynomial(String),
    #[error("classical limit of the table differs at {0}")]
    ClassicalLimit(String),
    #[error(transparent)]
    FreeAlg(#[from] FreeAlgError),
    #[error(transparent)]
    Oscillator(#[from] OscillatorError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// What a coupled product needs from operators.
pub trait Operator: Clone {
    fn zero_like(&self) -> Self;
    fn plus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn scaled(&self, k: &PolyH) -> Self;
}

impl Operator for FreeElement {
    fn zero_like(&self) -> Self {
        FreeElement::zero()
    }
    fn plus(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn times(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn scaled(&self, k: &PolyH) -> Self {
        self.scale(k)
    }
}

impl Operator for PolyMatrix {
    fn zero_like(&self) -> Self {
        PolyMatrix::zeros(self.dim())
    }
    fn plus(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn times(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn scaled(&self, k: &PolyH) -> Self {
        self.scale(k)
    }
}

/// Components of a spinor (2) or double spinor (4, index `2 i + s`).
#[derive(Clone, Debug)]
pub struct Spinor<T> {
    pub components: Vec<T>,
}

impl<T: Operator> Spinor<T> {
    pub fn new(components: Vec<T>) -> Self {
        assert!(
            components.len() == 2 || components.len() == 4,
            "a spinor has 2 or 4 components"
        );
        Spinor { components }
    }
}

/// Twice the weight of component index `a` (0-based).
fn weight2(a: usize) -> i8 {
    if a == 0 {
        1
    } else {
        -1
    }
}

fn check_labels(j: u8, m: i8) -> Result<(), CouplingError> {
    if j > 1 || m.unsigned_abs() > j {
        return Err(CouplingError::InvalidLabels { j, m });
    }
    Ok(())
}

/// Order of the four coefficients of a column.
pub const PAIRS: [(usize, usize); 4] = [(0, 0), (0, 1), (1, 0), (1, 1)];

#[derive(Clone, Debug, PartialEq)]
pub struct CouplingTable {
    columns: BTreeMap<(u8, i8), [PolyH; 4]>,
    /// Singlet constraint solution scaled to `c12 = 1`, order `c11, c12, c21, c22`.
    pub singlet_raw: [PolyH; 4],
    pub singlet_dim: usize,
    pub triplet_dim: usize,
    pub weight_violations: Vec<String>,
    pub convention_note: String,
}

fn half_label(a: usize) -> &'static str {
    if a == 0 {
        "1/2"
    } else {
        "-1/2"
    }
}

impl CouplingTable {
    /// The su(2) coefficients.
    pub fn classical() -> Self {
        let z = PolyH::zero;
        let r = PolyH::inv_sqrt2;
        let mut columns = BTreeMap::new();
        columns.insert((0, 0), [z(), r(), r().neg(), z()]);
        columns.insert((1, 1), [PolyH::one(), z(), z(), z()]);
        columns.insert((1, 0), [z(), r(), r(), z()]);
        columns.insert((1, -1), [z(), z(), z(), PolyH::one()]);
        CouplingTable {
            columns,
            singlet_raw: [z(), PolyH::one(), PolyH::int(-1), z()],
            singlet_dim: 1,
            triplet_dim: 3,
            weight_violations: Vec::new(),
            convention_note: "classical su(2) coefficients".to_string(),
        }
    }

    /// `<1/2 m1, 1/2 m2 | j m>` by 0-based component indices.
    pub fn get(&self, a: usize, b: usize, j: u8, m: i8) -> Result<&PolyH, CouplingError> {
        check_labels(j, m)?;
        let k = PAIRS.iter().position(|&p| p == (a, b)).expect("component index 0 or 1");
        Ok(&self.columns[&(j, m)][k])
    }

    pub fn column(&self, j: u8, m: i8) -> Result<&[PolyH; 4], CouplingError> {
        check_labels(j, m)?;
        Ok(&self.columns[&(j, m)])
    }

    pub fn columns(&self) -> impl Iterator<Item = (&(u8, i8), &[PolyH; 4])> {
        self.columns.iter()
    }

    pub fn at_h_zero(&self) -> Self {
        let mut out = self.clone();
        for col in out.columns.values_mut() {
            for x in col.iter_mut() {
                *x = x.at_h_zero();
            }
        }
        out.singlet_raw = self.singlet_raw.clone().map(|x| x.at_h_zero());
        out
    }

    /// Entries whose weights violate `m1 + m2 = m`.
    pub fn find_weight_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (&(j, m), col) in &self.columns {
            for (k, &(a, b)) in PAIRS.iter().enumerate() {
                if weight2(a) + weight2(b) != 2 * m && !col[k].is_zero() {
                    out.push(format!(
                        "<1/2 {}, 1/2 {} | {j} {m}> = {}",
                        half_label(a),
                        half_label(b),
                        col[k]
                    ));
                }
            }
        }
        out
    }

    /// First entry differing from the su(2) table after `h -> 0`.
    pub fn classical_mismatch(&self) -> Option<String> {
        let lim = self.at_h_zero();
        let cl = Self::classical();
        for (key, col) in &cl.columns {
            for (k, &(a, b)) in PAIRS.iter().enumerate() {
                if lim.columns[key][k] != col[k] {
                    return Some(format!(
                        "<1/2 {}, 1/2 {} | {} {}>",
                        half_label(a),
                        half_label(b),
                        key.0,
                        key.1
                    ));
                }
            }
        }
        None
    }

    pub fn to_json(&self) -> TableJson {
        let mut entries = Vec::new();
        for (&(j, m), col) in &self.columns {
            for (k, &(a, b)) in PAIRS.iter().enumerate() {
                entries.push(TableEntry {
                    m1: half_label(a).to_string(),
                    m2: half_label(b).to_string(),
                    j,
                    m,
                    value: col[k].to_string(),
                });
            }
        }
        TableJson {
            entries,
            singlet_unnormalized: self.singlet_raw.iter().map(ToString::to_string).collect(),
            singlet_dim: self.singlet_dim,
            triplet_dim: self.triplet_dim,
            weight_violations: self.weight_violations.clone(),
            convention_note: self.convention_note.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TableEntry {
    pub m1: String,
    pub m2: String,
    pub j: u8,
    pub m: i8,
    pub value: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct TableJson {
    pub entries: Vec<TableEntry>,
    pub singlet_unnormalized: Vec<String>,
    pub singlet_dim: usize,
    pub triplet_dim: usize,
    pub weight_violations: Vec<String>,
    pub convention_note: String,
}

/// Spinors `(A+1, A+2)` and `(At1, At2)` as generators of `rs`.
pub fn abstract_spinors(rs: &RewriteSystem) -> (Spinor<FreeElement>, Spinor<FreeElement>) {
    let g = |n: &str| rs.el(n);
    (
        Spinor::new(vec![g("A+1"), g("A+2")]),
        Spinor::new(vec![g("At1"), g("At2")]),
    )
}

/// Double spinors `A+is`, `Atis` with component index `2 (i - 1) + (s - 1)`.
pub fn abstract_double_spinors(rs: &RewriteSystem) -> (Spinor<FreeElement>, Spinor<FreeElement>) {
    let fam = |f: &str| {
        Spinor::new(
            [(1, 1), (1, 2), (2, 1), (2, 2)]
                .iter()
                .map(|(i, s)| rs.el(&format!("{f}{i}{s}")))
                .collect(),
        )
    };
    (fam("A+"), fam("At"))
}

pub fn fock_spinors(rep: &FockRep) -> Result<(Spinor<PolyMatrix>, Spinor<PolyMatrix>), CouplingError> {
    let g = |n: &str| rep.op(n).cloned();
    Ok((
        Spinor::new(vec![g("A+1")?, g("A+2")?]),
        Spinor::new(vec![g("At1")?, g("At2")?]),
    ))
}

/// `[U x V]^j_m = Σ <1/2 m1, 1/2 m2 | j m> U_m1 V_m2`.
pub fn coupled_product<T: Operator>(
    u: &Spinor<T>,
    v: &Spinor<T>,
    table: &CouplingTable,
    j: u8,
    m: i8,
) -> Result<T, CouplingError> {
    let col = table.column(j, m)?;
    let mut out = u.components[0].zero_like();
    for (k, &(a, b)) in PAIRS.iter().enumerate() {
        if !col[k].is_zero() {
            out = out.plus(&u.components[a].times(&v.components[b]).scaled(&col[k]));
        }
    }
    Ok(out)
}

fn parity_sign(eps: u8) -> PolyH {
    if eps % 2 == 0 {
        PolyH::one()
    } else {
        PolyH::int(-1)
    }
}

/// `[U, V]^j_m = [U x V]^j_m - (-1)^ε [V x U]^j_m` with `ε = 1 - j`.
pub fn coupled_commutator<T: Operator>(
    u: &Spinor<T>,
    v: &Spinor<T>,
    table: &CouplingTable,
    j: u8,
    m: i8,
) -> Result<T, CouplingError> {
    let uv = coupled_product(u, v, table, j, m)?;
    let vu = coupled_product(v, u, table, j, m)?;
    Ok(uv.plus(&vu.scaled(&parity_sign(1 - j).neg())))
}

/// Coupled product of double spinors, one coefficient per factor.
pub fn coupled_product_double<T: Operator>(
    u: &Spinor<T>,
    v: &Spinor<T>,
    table: &CouplingTable,
    (j, jp): (u8, u8),
    (m, mp): (i8, i8),
) -> Result<T, CouplingError> {
    let col = table.column(j, m)?;
    let colp = table.column(jp, mp)?;
    let mut out = u.components[0].zero_like();
    for (k, &(a, b)) in PAIRS.iter().enumerate() {
        if col[k].is_zero() {
            continue;
        }
        for (kp, &(ap, bp)) in PAIRS.iter().enumerate() {
            if colp[kp].is_zero() {
                continue;
            }
            let term = u.components[2 * a + ap].times(&v.components[2 * b + bp]);
            out = out.plus(&term.scaled(&col[k].mul(&colp[kp])));
        }
    }
    Ok(out)
}

/// Double coupled commutator with sign `(-1)^(ε + ε')`.
pub fn coupled_commutator_double<T: Operator>(
    u: &Spinor<T>,
    v: &Spinor<T>,
    table: &CouplingTable,
    js: (u8, u8),
    ms: (i8, i8),
) -> Result<T, CouplingError> {
    let uv = coupled_product_double(u, v, table, js, ms)?;
    let vu = coupled_product_double(v, u, table, js, ms)?;
    Ok(uv.plus(&vu.scaled(&parity_sign((1 - js.0) + (1 - js.1)).neg())))
}

/// Solutions `c` of `reduce(Σ c_ab X_ab) = 0`, `X` listed in [`PAIRS`] order.
fn kernel(rs: &RewriteSystem, xs: &[FreeElement; 4]) -> Result<Vec<Vec<ScalarQH>>, CouplingError> {
    let forms: Vec<FreeElement> = xs.iter().map(|x| rs.reduce(x)).collect::<Result<_, _>>()?;
    let mut words: Vec<Word> = forms.iter().flat_map(|f| f.terms().map(|(w, _)| w.clone())).collect();
    words.sort();
    words.dedup();
    let rows: Vec<Vec<ScalarQH>> = words
        .iter()
        .map(|w| forms.iter().map(|f| ScalarQH::from_polyh(&f.coeff(w))).collect())
        .collect();
    Ok(nullspace(&rows, 4)?)
}

fn to_poly_vec(v: &[ScalarQH]) -> Result<[PolyH; 4], CouplingError> {
    let mut out: [PolyH; 4] = Default::default();
    for (k, x) in v.iter().enumerate() {
        out[k] = x
            .to_polyh()
            .ok_or_else(|| CouplingError::NonPolynomial(x.to_string()))?;
    }
    Ok(out)
}

fn dot(a: &[ScalarQH], b: &[ScalarQH]) -> ScalarQH {
    a.iter().zip(b).fold(ScalarQH::zero(), |acc, (x, y)| acc.add(&x.mul(y)))
}

/// Derives the table from the `n = 2, m = 1` tilde rewrite system.
///
/// Singlet: the kernel of `c -> Σ c_ab A+_a A+_b`, scaled to `c12 = 1` and
/// then by `1/√2`. Triplet: the kernel of `c -> Σ c_ab (At_a A+_b - A+_a At_b)`;
/// each su(2) triplet column is moved into it along the classical singlet
/// direction `(0, 1, -1, 0)`.
pub fn derive_table(rs: &RewriteSystem) -> Result<CouplingTable, CouplingError> {
    let (cre, til) = abstract_spinors(rs);
    let pair = |x: &Spinor<FreeElement>, y: &Spinor<FreeElement>| -> [FreeElement; 4] {
        PAIRS.map(|(a, b)| x.components[a].mul(&y.components[b]))
    };
    let singlet = kernel(rs, &pair(&cre, &cre))?;
    if singlet.len() != 1 {
        return Err(CouplingError::SolveDimension {
            which: "singlet",
            found: singlet.len(),
            expected: 1,
        });
    }
    let v = &singlet[0];
    if v[1].is_zero() {
        return Err(CouplingError::NonPolynomial("singlet has no (1/2, -1/2) entry".into()));
    }
    let k = v[1].recip()?;
    let raw: Vec<ScalarQH> = v.iter().map(|x| x.mul(&k)).collect();
    let singlet_raw = to_poly_vec(&raw)?;
    let singlet_col = singlet_raw.clone().map(|x| x.mul(&PolyH::inv_sqrt2()));

    let ta = pair(&til, &cre);
    let at = pair(&cre, &til);
    let mixed: [FreeElement; 4] = std::array::from_fn(|k| ta[k].sub(&at[k]));
    let triplet = kernel(rs, &mixed)?;
    if triplet.len() != 3 {
        return Err(CouplingError::SolveDimension {
            which: "triplet",
            found: triplet.len(),
            expected: 3,
        });
    }
    let normal = nullspace(&triplet, 4)?;
    let normal = &normal[0];
    let s0: Vec<ScalarQH> = [0, 1, -1, 0].iter().map(|&x| ScalarQH::int(x)).collect();
    let ns0 = dot(normal, &s0);
    let cl = CouplingTable::classical();
    let mut columns = BTreeMap::new();
    columns.insert((0u8, 0i8), singlet_col);
    for m in [1i8, 0, -1] {
        let target: Vec<ScalarQH> = cl.columns[&(1, m)].iter().map(ScalarQH::from_polyh).collect();
        let lambda = dot(normal, &target).neg().div(&ns0)?;
        let col: Vec<ScalarQH> = target.iter().zip(&s0).map(|(t, s)| t.add(&lambda.mul(s))).collect();
        columns.insert((1u8, m), to_poly_vec(&col)?);
    }
    let mut table = CouplingTable {
        columns,
        singlet_raw,
        singlet_dim: 1,
        triplet_dim: 3,
        weight_violations: Vec::new(),
        convention_note: String::new(),
    };
    if let Some(at) = table.classical_mismatch() {
        return Err(CouplingError::ClassicalLimit(at));
    }
    table.weight_violations = table.find_weight_violations();
    table.convention_note = format!(
        "component 1 is m = +1/2, component 2 is m = -1/2; columns list c11, c12, c21, c22; \
         singlet = kernel vector scaled to c12 = 1, times 1/sqrt2; \
         triplet columns = su(2) columns shifted along (0, 1, -1, 0) into the kernel \
         (triplet m labels from the h = 0 weights); weight rule violations: {}",
        if table.weight_violations.is_empty() {
            "none".to_string()
        } else {
            table.weight_violations.join("; ")
        }
    );
    Ok(table)
}

#[derive(Clone, Debug, Serialize)]
pub struct CoupledCheck {
    pub identity: String,
    pub abstract_pass: bool,
    pub fock_pass: Option<bool>,
    pub witness: Option<String>,
}

impl CoupledCheck {
    pub fn pass(&self) -> bool {
        self.abstract_pass && self.fock_pass.unwrap_or(true)
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CoupledReport {
    pub checks: Vec<CoupledCheck>,
}

impl CoupledReport {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(CoupledCheck::pass)
    }
}

type Builder<'a, T> = Box<dyn Fn(&Spinor<T>, &Spinor<T>) -> Result<T, CouplingError> + 'a>;

struct Identity<'a, T> {
    name: String,
    lhs: Builder<'a, T>,
    /// multiple of the unit on the right-hand side
    rhs: PolyH,
}

fn n2m1_identities<'a, T: Operator + 'a>(table: &'a CouplingTable) -> Vec<Identity<'a, T>> {
    let mut out: Vec<Identity<'a, T>> = vec![
        Identity {
            name: "[A+, A+]^0_0 = 0".into(),
            lhs: Box::new(move |c, _| coupled_commutator(c, c, table, 0, 0)),
            rhs: PolyH::zero(),
        },
        Identity {
            name: "[At, At]^0_0 = 0".into(),
            lhs: Box::new(move |_, t| coupled_commutator(t, t, table, 0, 0)),
            rhs: PolyH::zero(),
        },
    ];
    for m in [1i8, 0, -1] {
        out.push(Identity {
            name: format!("[At, A+]^1_{m} = 0"),
            lhs: Box::new(move |c, t| coupled_commutator(t, c, table, 1, m)),
            rhs: PolyH::zero(),
        });
    }
    out.push(Identity {
        name: "[At, A+]^0_0 = sqrt2 I".into(),
        lhs: Box::new(move |c, t| coupled_commutator(t, c, table, 0, 0)),
        rhs: PolyH::sqrt2(),
    });
    out
}

/// The coupled identities for `n = 2, m = 1`, by reduction in `rs` and,
/// when `rep` is given, as matrices on its safe columns.
pub fn verify_coupled_n2m1(
    table: &CouplingTable,
    rs: &RewriteSystem,
    rep: Option<&FockRep>,
) -> Result<CoupledReport, CouplingError> {
    let (cre, til) = abstract_spinors(rs);
    let fock = rep.map(fock_spinors).transpose()?;
    let mut checks = Vec::new();
    let abs_ids = n2m1_identities::<FreeElement>(table);
    let mat_ids = n2m1_identities::<PolyMatrix>(table);
    for (ia, im) in abs_ids.iter().zip(&mat_ids) {
        let lhs = (ia.lhs)(&cre, &til)?;
        let diff = rs.reduce(&lhs.sub(&FreeElement::scalar(ia.rhs.clone())))?;
        let abstract_pass = diff.is_zero();
        let mut witness = (!abstract_pass).then(|| format!("normal form of lhs - rhs: {}", diff.display(rs.alphabet())));
        let mut fock_pass = None;
        if let (Some(rep), Some((fc, ft))) = (rep, fock.as_ref()) {
            let m = (im.lhs)(fc, ft)?;
            let d = m.sub(&PolyMatrix::identity(rep.dim()).scale(&im.rhs));
            let f = rep.first_nonzero(&d, rep.safe_degree());
            if let (Some(f), None) = (&f, &witness) {
                witness = Some(format!("Fock entry ({}, {}) = {}", f.row, f.col, f.value));
            }
            fock_pass = Some(f.is_none());
        }
        checks.push(CoupledCheck {
            identity: ia.name.clone(),
            abstract_pass,
            fock_pass,
            witness,
        });
    }
    Ok(CoupledReport { checks })
}

const LABELS: [(u8, i8); 4] = [(0, 0), (1, 1), (1, 0), (1, -1)];

/// The coupled identities for double spinors (`n = m = 2`) by reduction in
/// the double-spinor rewrite system.
pub fn verify_coupled_n2m2(table: &CouplingTable, rs: &RewriteSystem) -> Result<CoupledReport, CouplingError> {
    let (cre, til) = abstract_double_spinors(rs);
    let mut checks = Vec::new();
    let mut push = |name: String, lhs: FreeElement, rhs: PolyH| -> Result<(), CouplingError> {
        let diff = rs.reduce(&lhs.sub(&FreeElement::scalar(rhs)))?;
        let pass = diff.is_zero();
        checks.push(CoupledCheck {
            identity: name,
            abstract_pass: pass,
            fock_pass: None,
            witness: (!pass).then(|| format!("normal form of lhs - rhs: {}", diff.display(rs.alphabet()))),
        });
        Ok(())
    };
    for (fam, x) in [("A+", &cre), ("At", &til)] {
        for m in [1i8, 0, -1] {
            push(
                format!("[{fam}, {fam}]^(1,0)_({m},0) = 0"),
                coupled_commutator_double(x, x, table, (1, 0), (m, 0))?,
                PolyH::zero(),
            )?;
            push(
                format!("[{fam}, {fam}]^(0,1)_(0,{m}) = 0"),
                coupled_commutator_double(x, x, table, (0, 1), (0, m))?,
                PolyH::zero(),
            )?;
        }
    }
    for (j, m) in LABELS {
        for (jp, mp) in LABELS {
            let rhs = if j == 0 && jp == 0 {
                PolyH::int(2)
            } else {
                PolyH::zero()
            };
            push(
                format!("[At, A+]^({j},{jp})_({m},{mp}) = {}", if rhs.is_zero() { "0" } else { "2 I" }),
                coupled_commutator_double(&til, &cre, table, (j, jp), (m, mp))?,
                rhs,
            )?;
        }
    }
    Ok(CoupledReport { checks })
}
