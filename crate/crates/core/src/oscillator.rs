//! Truncated polynomial (Bargmann-type) representation of the two-mode Weyl
//! algebra and the h-deformed spinor operators built from it.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;
use thiserror::Error;

use crate::freealg::{
    boson_relation_set, row_reduce, BosonForm, FreeAlgError, FreeElement, RewriteSystem, Word,
};
use crate::qgroup::{r_jordanian, trivial_one};
use crate::scalar::{PolyH, ScalarQH};
use crate::tensor::{PolyMatrix, RingMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OscillatorError {
    #[error("truncation degree must be at least 2 (got {0})")]
    TruncationTooSmall(usize),
    #[error("spinor operators need exactly two modes (got {0})")]
    NotTwoModes(usize),
    #[error("no operator named {0}")]
    UnknownOperator(String),
    #[error("coefficient is not polynomial in h: {0}")]
    NonPolynomial(String),
    #[error(transparent)]
    FreeAlg(#[from] FreeAlgError),
}

/// Exact operators on polynomials of total degree `<= max_degree`.
#[derive(Clone, Debug)]
pub struct FockRep {
    modes: usize,
    max_degree: usize,
    basis: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
    degrees: Vec<usize>,
    ops: BTreeMap<String, PolyMatrix>,
}

/// Exponent tuples with total degree `<= d`, by degree and then with higher
/// powers of earlier variables first.
fn monomials(modes: usize, d: usize) -> Vec<Vec<usize>> {
    fn fill(prefix: &mut Vec<usize>, left: usize, modes: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() + 1 == modes {
            prefix.push(left);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for k in (0..=left).rev() {
            prefix.push(k);
            fill(prefix, left - k, modes, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    for total in 0..=d {
        if modes == 0 {
            if total == 0 {
                out.push(Vec::new());
            }
            continue;
        }
        fill(&mut Vec::new(), total, modes, &mut out);
    }
    out
}

pub fn creator_name(i: usize) -> String {
    format!("a+{i}")
}

pub fn annihilator_name(i: usize) -> String {
    format!("a{i}")
}

impl FockRep {
    /// Ladder operators `a+_i = x_i *` (terms past the bound dropped) and
    /// `a_i = d/dx_i`.
    pub fn build_weyl(modes: usize, max_degree: usize) -> Result<Self, OscillatorError> {
        if max_degree < 2 {
            return Err(OscillatorError::TruncationTooSmall(max_degree));
        }
        let basis = monomials(modes, max_degree);
        let index: HashMap<Vec<usize>, usize> =
            basis.iter().enumerate().map(|(k, m)| (m.clone(), k)).collect();
        let degrees = basis.iter().map(|m| m.iter().sum()).collect();
        let dim = basis.len();
        let mut ops = BTreeMap::new();
        for i in 0..modes {
            let mut up = PolyMatrix::zeros(dim);
            let mut down = PolyMatrix::zeros(dim);
            for (col, m) in basis.iter().enumerate() {
                let mut raised = m.clone();
                raised[i] += 1;
                if let Some(&row) = index.get(&raised) {
                    up.set(row, col, PolyH::one());
                }
                if m[i] > 0 {
                    let mut lowered = m.clone();
                    lowered[i] -= 1;
                    down.set(index[&lowered], col, PolyH::int(m[i] as i64));
                }
            }
            ops.insert(creator_name(i + 1), up);
            ops.insert(annihilator_name(i + 1), down);
        }
        Ok(FockRep {
            modes,
            max_degree,
            basis,
            index,
            degrees,
            ops,
        })
    }

    /// Weyl operators plus `J+`, `J0`, the inverse `Ninv` of `N = 1 - (h/2) J+`,
    /// the spinors `A+1, A+2, At1, At2` and `A1, A2` obtained from
    /// `(A1, A2) = (At1, At2) C^-1`, `C = [[0, -1], [1, h]]`.
    pub fn build_h_spinors(modes: usize, max_degree: usize) -> Result<Self, OscillatorError> {
        if modes != 2 {
            return Err(OscillatorError::NotTwoModes(modes));
        }
        let mut rep = Self::build_weyl(modes, max_degree)?;
        let dim = rep.dim();
        let ap1 = rep.op("a+1")?.clone();
        let ap2 = rep.op("a+2")?.clone();
        let a1 = rep.op("a1")?.clone();
        let a2 = rep.op("a2")?.clone();
        let half = PolyH::ratio(1, 2);
        let half_h = PolyH::h().mul(&half);

        let jp = ap1.mul(&a2);
        let j0 = ap1.mul(&a1).sub(&ap2.mul(&a2)).scale(&half);
        let id = PolyMatrix::identity(dim);
        let n = id.sub(&jp.scale(&half_h));
        let mut ninv = PolyMatrix::zeros(dim);
        let mut power = id.clone();
        let mut coeff = PolyH::one();
        for _ in 0..=max_degree {
            ninv = ninv.add(&power.scale(&coeff));
            power = power.mul(&jp);
            coeff = coeff.mul(&half_h);
        }

        let two = PolyH::int(2);
        let cre1 = ninv.mul(&ap1);
        let cre2 = n
            .mul(&ap2)
            .add(&cre1.sub(&ap1.mul(&j0).scale(&two)).scale(&half_h));
        let til1 = ninv.mul(&a2);
        let til2 = n
            .mul(&a1)
            .scale(&PolyH::int(-1))
            .add(&til1.sub(&a2.mul(&j0).scale(&two)).scale(&half_h));
        // C^-1 = [[h, 1], [-1, 0]]
        let ann1 = til1.scale(&PolyH::h()).sub(&til2);
        let ann2 = til1.clone();

        for (name, m) in [
            ("J+", jp),
            ("J0", j0),
            ("N", n),
            ("Ninv", ninv),
            ("A+1", cre1),
            ("A+2", cre2),
            ("At1", til1),
            ("At2", til2),
            ("A1", ann1),
            ("A2", ann2),
        ] {
            rep.ops.insert(name.to_string(), m);
        }
        Ok(rep)
    }

    pub fn modes(&self) -> usize {
        self.modes
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// Largest column degree on which quadratic identities are exact.
    pub fn safe_degree(&self) -> usize {
        self.max_degree - 2
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<usize>] {
        &self.basis
    }

    pub fn degree_of(&self, k: usize) -> usize {
        self.degrees[k]
    }

    pub fn basis_index(&self, exps: &[usize]) -> Option<usize> {
        self.index.get(exps).copied()
    }

    pub fn op(&self, name: &str) -> Result<&PolyMatrix, OscillatorError> {
        self.ops
            .get(name)
            .ok_or_else(|| OscillatorError::UnknownOperator(name.to_string()))
    }

    pub fn op_names(&self) -> impl Iterator<Item = &str> {
        self.ops.keys().map(String::as_str)
    }

    /// Every operator evaluated at `h = 0`.
    pub fn at_h_zero(&self) -> Self {
        let mut out = self.clone();
        for m in out.ops.values_mut() {
            *m = m.at_h_zero();
        }
        out
    }

    /// Evaluates a word by generator names.
    pub fn eval_word(&self, names: &[&str]) -> Result<PolyMatrix, OscillatorError> {
        let mut acc = PolyMatrix::identity(self.dim());
        for n in names {
            acc = acc.mul(self.op(n)?);
        }
        Ok(acc)
    }

    /// Evaluates a free-algebra element, naming generators through `names`.
    pub fn eval(
        &self,
        e: &FreeElement,
        names: &crate::freealg::Alphabet,
    ) -> Result<PolyMatrix, OscillatorError> {
        let mut cache = HashMap::new();
        self.eval_cached(e, names, &mut cache)
    }

    fn eval_cached(
        &self,
        e: &FreeElement,
        names: &crate::freealg::Alphabet,
        cache: &mut HashMap<Word, PolyMatrix>,
    ) -> Result<PolyMatrix, OscillatorError> {
        let mut out = PolyMatrix::zeros(self.dim());
        for (w, c) in e.terms() {
            let m = self.word_matrix(w, names, cache)?;
            out = out.add(&m.scale(c));
        }
        Ok(out)
    }

    fn word_matrix(
        &self,
        w: &Word,
        names: &crate::freealg::Alphabet,
        cache: &mut HashMap<Word, PolyMatrix>,
    ) -> Result<PolyMatrix, OscillatorError> {
        if let Some(m) = cache.get(w) {
            return Ok(m.clone());
        }
        let m = match w.0.split_last() {
            None => PolyMatrix::identity(self.dim()),
            Some((&last, rest)) => {
                let head = self.word_matrix(&Word(rest.to_vec()), names, cache)?;
                head.mul(self.op(names.name(last))?)
            }
        };
        cache.insert(w.clone(), m.clone());
        Ok(m)
    }

    /// First nonzero entry among columns of degree `<= max_col_degree`.
    pub fn first_nonzero(&self, m: &PolyMatrix, max_col_degree: usize) -> Option<Failure> {
        for col in 0..self.dim() {
            if self.degrees[col] > max_col_degree {
                break;
            }
            for row in 0..self.dim() {
                let v = m.get(row, col);
                if !v.is_zero() {
                    return Some(Failure {
                        row,
                        col,
                        value: v.to_string(),
                    });
                }
            }
        }
        None
    }

    /// Checks `e = 0` on columns of degree `<= max_degree - deg(e)`.
    pub fn check_zero(
        &self,
        e: &FreeElement,
        names: &crate::freealg::Alphabet,
    ) -> Result<IdentityResult, OscillatorError> {
        let m = self.eval(e, names)?;
        let bound = self.max_degree.saturating_sub(e.degree());
        Ok(IdentityResult::from_failure(self.first_nonzero(&m, bound)))
    }

    /// Which operators change the total degree by exactly `shift`.
    pub fn shifts_degree_by(&self, name: &str, shift: isize) -> Result<bool, OscillatorError> {
        let m = self.op(name)?;
        for row in 0..self.dim() {
            for col in 0..self.dim() {
                if !m.get(row, col).is_zero()
                    && self.degrees[row] as isize - self.degrees[col] as isize != shift
                {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Compares every operator with the one built at a smaller truncation on
    /// that truncation's safe columns.
    pub fn truncation_leaks(&self, smaller: &FockRep) -> Vec<String> {
        let bound = smaller.safe_degree();
        let mut out = Vec::new();
        for (name, small) in &smaller.ops {
            let Some(big) = self.ops.get(name) else {
                out.push(name.clone());
                continue;
            };
            'cols: for col in 0..smaller.dim() {
                if smaller.degrees[col] > bound {
                    break;
                }
                for row in 0..self.dim() {
                    let want = if row < smaller.dim() {
                        small.get(row, col).clone()
                    } else {
                        PolyH::zero()
                    };
                    if big.get(row, col) != &want {
                        out.push(name.clone());
                        break 'cols;
                    }
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Failure {
    pub row: usize,
    pub col: usize,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdentityResult {
    pub pass: bool,
    pub first_failure: Option<Failure>,
}

impl IdentityResult {
    pub fn from_failure(f: Option<Failure>) -> Self {
        IdentityResult {
            pass: f.is_none(),
            first_failure: f,
        }
    }
}

/// Per-identity outcomes keyed by identity name.
#[derive(Clone, Debug, Default, Serialize)]
#[serde(transparent)]
pub struct FockReport(pub BTreeMap<String, IdentityResult>);

impl FockReport {
    pub fn all_pass(&self) -> bool {
        self.0.values().all(|r| r.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = (&String, &IdentityResult)> {
        self.0.iter().filter(|(_, r)| !r.pass)
    }

    pub fn merge(&mut self, other: FockReport) {
        self.0.extend(other.0);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RelationGroup {
    CreationPair,
    AnnihilationPair,
    MixedTilde,
    MixedPlain,
}

impl RelationGroup {
    pub const ALL: [RelationGroup; 4] = [
        RelationGroup::CreationPair,
        RelationGroup::AnnihilationPair,
        RelationGroup::MixedTilde,
        RelationGroup::MixedPlain,
    ];
}

/// A named relation `lhs = rhs`, stored as `lhs - rhs`.
#[derive(Clone, Debug)]
pub struct NamedRelation {
    pub name: String,
    pub group: RelationGroup,
    pub form: BosonForm,
    pub element: FreeElement,
}

fn named(
    name: &str,
    group: RelationGroup,
    form: BosonForm,
    lhs: FreeElement,
    rhs: FreeElement,
) -> NamedRelation {
    NamedRelation {
        name: name.to_string(),
        group,
        form,
        element: lhs.sub(&rhs),
    }
}

/// The commutation relations of the `n = 2, m = 1` algebras written out by
/// hand, over the generators of [`crate::freealg::boson_alphabet`].
pub fn expected_relations(form: BosonForm) -> (crate::freealg::Alphabet, Vec<NamedRelation>) {
    use RelationGroup::*;
    let alphabet = crate::freealg::boson_alphabet(2, 1, form);
    let g = |n: &str| FreeElement::gen(alphabet.gen(n));
    let h = FreeElement::scalar(PolyH::h());
    let one = FreeElement::one();
    let (p1, p2) = (g("A+1"), g("A+2"));
    let mut out = vec![named(
        "[A+1, A+2] = h A+1^2",
        CreationPair,
        form,
        p1.commutator(&p2),
        h.mul(&p1).mul(&p1),
    )];
    match form {
        BosonForm::Plain => {
            let (a1, a2) = (g("A1"), g("A2"));
            let p1a2 = p1.mul(&a2);
            out.push(named(
                "[A1, A2] = h A2^2",
                AnnihilationPair,
                form,
                a1.commutator(&a2),
                h.mul(&a2).mul(&a2),
            ));
            out.push(named(
                "[A2, A+1] = 0",
                MixedPlain,
                form,
                a2.commutator(&p1),
                FreeElement::zero(),
            ));
            out.push(named(
                "[A1, A+2] = h (-A+1 A1 - A+2 A2 + h A+1 A2)",
                MixedPlain,
                form,
                a1.commutator(&p2),
                h.mul(&p1.mul(&a1).neg().sub(&p2.mul(&a2)).add(&h.mul(&p1a2))),
            ));
            out.push(named(
                "[A1, A+1] = I + h A+1 A2",
                MixedPlain,
                form,
                a1.commutator(&p1),
                one.add(&h.mul(&p1a2)),
            ));
            out.push(named(
                "[A2, A+2] = I + h A+1 A2",
                MixedPlain,
                form,
                a2.commutator(&p2),
                one.add(&h.mul(&p1a2)),
            ));
        }
        BosonForm::Tilde => {
            let (t1, t2) = (g("At1"), g("At2"));
            let p1t1 = p1.mul(&t1);
            out.push(named(
                "[At1, At2] = h At1^2",
                AnnihilationPair,
                form,
                t1.commutator(&t2),
                h.mul(&t1).mul(&t1),
            ));
            out.push(named(
                "[At1, A+1] = 0",
                MixedTilde,
                form,
                t1.commutator(&p1),
                FreeElement::zero(),
            ));
            out.push(named(
                "[At2, A+2] = h (I - A+1 At2 + A+2 At1 + h A+1 At1)",
                MixedTilde,
                form,
                t2.commutator(&p2),
                h.mul(&one.sub(&p1.mul(&t2)).add(&p2.mul(&t1)).add(&h.mul(&p1t1))),
            ));
            out.push(named(
                "[At1, A+2] = I + h A+1 At1",
                MixedTilde,
                form,
                t1.commutator(&p2),
                one.add(&h.mul(&p1t1)),
            ));
            out.push(named(
                "[At2, A+1] = -(I + h A+1 At1)",
                MixedTilde,
                form,
                t2.commutator(&p1),
                one.add(&h.mul(&p1t1)).neg(),
            ));
        }
    }
    (alphabet, out)
}

/// Evaluates the hand-written relations of the selected groups on `rep`.
pub fn verify_relations(rep: &FockRep, groups: &[RelationGroup]) -> Result<FockReport, OscillatorError> {
    verify_relations_with(rep, groups, |e| e.clone())
}

/// The hand-written relations at `h = 0` (canonical boson relations).
pub fn verify_relations_classical(
    rep: &FockRep,
    groups: &[RelationGroup],
) -> Result<FockReport, OscillatorError> {
    verify_relations_with(rep, groups, FreeElement::at_h_zero)
}

fn verify_relations_with(
    rep: &FockRep,
    groups: &[RelationGroup],
    adjust: impl Fn(&FreeElement) -> FreeElement,
) -> Result<FockReport, OscillatorError> {
    let mut report = FockReport::default();
    for form in [BosonForm::Tilde, BosonForm::Plain] {
        let (alphabet, rels) = expected_relations(form);
        for rel in rels {
            if !groups.contains(&rel.group) {
                continue;
            }
            if report.0.contains_key(&rel.name) {
                continue;
            }
            report
                .0
                .insert(rel.name.clone(), rep.check_zero(&adjust(&rel.element), &alphabet)?);
        }
    }
    Ok(report)
}

/// Evaluates relations generated from arbitrary `R, C` (n = 2, m = 1) on `rep`.
pub fn verify_generated_relations(
    rep: &FockRep,
    r: &RingMatrix,
    c: &RingMatrix,
) -> Result<FockReport, OscillatorError> {
    let one = trivial_one();
    let mut report = FockReport::default();
    for form in [BosonForm::Tilde, BosonForm::Plain] {
        let (alphabet, rels) = boson_relation_set(r, &one, c, &one, form)?;
        for (k, rel) in rels.iter().enumerate() {
            let e = to_poly_element(rel)?;
            if e.is_zero() {
                continue;
            }
            let name = format!("{form:?} relation {k}: {}", e.display(&alphabet));
            report.0.insert(name, rep.check_zero(&e, &alphabet)?);
        }
    }
    Ok(report)
}

fn to_poly_element(e: &FreeElement<ScalarQH>) -> Result<FreeElement, OscillatorError> {
    let mut out = FreeElement::zero();
    for (w, c) in e.terms() {
        let p = c
            .to_polyh()
            .ok_or_else(|| OscillatorError::NonPolynomial(c.to_string()))?;
        out.add_term(w.clone(), p);
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct RformMatch {
    /// Per hand-written relation: lies in the span of the generated ones.
    pub identities: BTreeMap<String, bool>,
    /// Generated and hand-written sets have equal rank.
    pub rank_plain: (usize, usize),
    pub rank_tilde: (usize, usize),
}

impl RformMatch {
    pub fn pass(&self) -> bool {
        self.identities.values().all(|&b| b)
            && self.rank_plain.0 == self.rank_plain.1
            && self.rank_tilde.0 == self.rank_tilde.1
    }
}

/// Expands the matrix-form relations with the contracted `n = 2` data and
/// compares the result with the hand-written commutation relations: every
/// hand-written relation must lie in the generated span and the ranks must
/// agree, so the two sets are equivalent after row reduction.
pub fn verify_rform_match() -> Result<RformMatch, OscillatorError> {
    verify_rform_match_with(&r_jordanian(2), &crate::qgroup::c_metric_closed(2))
}

pub fn verify_rform_match_with(r: &RingMatrix, c: &RingMatrix) -> Result<RformMatch, OscillatorError> {
    rform_compare(r, c, |e| e.clone())
}

/// Same comparison against the hand-written relations at `h = 0`.
pub fn verify_rform_match_classical() -> Result<RformMatch, OscillatorError> {
    let r = r_jordanian(2).at_h_zero().map_err(FreeAlgError::from)?;
    let c = crate::qgroup::c_metric_closed(2)
        .at_h_zero()
        .map_err(FreeAlgError::from)?;
    rform_compare(&r, &c, FreeElement::at_h_zero)
}

fn rform_compare(
    r: &RingMatrix,
    c: &RingMatrix,
    adjust: impl Fn(&FreeElement) -> FreeElement,
) -> Result<RformMatch, OscillatorError> {
    let one = trivial_one();
    let mut identities = BTreeMap::new();
    let mut ranks = Vec::new();
    for form in [BosonForm::Plain, BosonForm::Tilde] {
        let (_, generated) = boson_relation_set(r, &one, c, &one, form)?;
        let gen_rows = row_reduce(&generated).map_err(FreeAlgError::from)?;
        let (_, expected) = expected_relations(form);
        let exp_scalar: Vec<FreeElement<ScalarQH>> =
            expected.iter().map(|r| adjust(&r.element).to_scalar()).collect();
        let exp_rows = row_reduce(&exp_scalar).map_err(FreeAlgError::from)?;
        for (rel, e) in expected.iter().zip(&exp_scalar) {
            identities.insert(rel.name.clone(), reduce_by_rows(e, &gen_rows).is_zero());
        }
        ranks.push((gen_rows.len(), exp_rows.len()));
    }
    Ok(RformMatch {
        identities,
        rank_plain: ranks[0],
        rank_tilde: ranks[1],
    })
}

fn reduce_by_rows(e: &FreeElement<ScalarQH>, rows: &[FreeElement<ScalarQH>]) -> FreeElement<ScalarQH> {
    let mut r = e.clone();
    for row in rows {
        let (pw, _) = row.leading().expect("nonzero row");
        let c = r.coeff(pw);
        if !c.is_zero() {
            r = r.sub(&row.scale(&c));
        }
    }
    r
}

#[derive(Clone, Debug, Serialize)]
pub struct SoundnessReport {
    pub words_checked: usize,
    pub failures: Vec<String>,
}

impl SoundnessReport {
    pub fn pass(&self) -> bool {
        self.failures.is_empty()
    }
}

/// For every word up to `max_len`, the normal form evaluated on `rep` must
/// equal the word evaluated directly, on columns of degree
/// `<= max_degree - len`.
pub fn soundness_check(
    rs: &RewriteSystem,
    rep: &FockRep,
    max_len: usize,
) -> Result<SoundnessReport, OscillatorError> {
    let alphabet = rs.alphabet();
    let k = alphabet.len() as u16;
    let mut cache = HashMap::new();
    let mut frontier = vec![Word::empty()];
    let mut checked = 0;
    let mut failures = Vec::new();
    for len in 0..=max_len {
        for w in &frontier {
            let direct = rep.word_matrix(w, alphabet, &mut cache)?;
            let nf = rs.reduce(&FreeElement::term(w.clone(), PolyH::one()))?;
            let via = rep.eval_cached(&nf, alphabet, &mut cache)?;
            let bound = rep.max_degree().saturating_sub(len);
            checked += 1;
            if let Some(f) = rep.first_nonzero(&direct.sub(&via), bound) {
                failures.push(format!(
                    "{}: entry ({}, {}) differs by {}",
                    alphabet.render_word(w),
                    f.row,
                    f.col,
                    f.value
                ));
            }
        }
        if len == max_len {
            break;
        }
        frontier = frontier
            .iter()
            .flat_map(|w| {
                (0..k).map(move |g| {
                    let mut v = w.0.clone();
                    v.push(g);
                    Word(v)
                })
            })
            .collect();
    }
    Ok(SoundnessReport {
        words_checked: checked,
        failures,
    })
}
