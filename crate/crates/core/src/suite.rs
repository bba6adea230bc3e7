//! Named verification suites producing machine-readable reports.

use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::coupling::{derive_table, verify_coupled_n2m1, verify_coupled_n2m2, CoupledReport};
use crate::freealg::{
    boson_relations, classical_boson_system, contracted_boson_system, contracted_data,
    covariance_check, max_degree_from_env, rtt_relations, rtt_system, relation_rank, BosonForm,
    FreeAlgError, RewriteSystem,
};
use crate::oscillator::{
    expected_relations, soundness_check, verify_generated_relations, verify_relations,
    verify_relations_classical, verify_rform_match, verify_rform_match_classical, FockRep,
    FockReport, OscillatorError, RelationGroup,
};
use crate::qgroup::{
    c_metric_closed, c_metric_contract, contract_r, limit_equivalence, r_jordanian, r_standard,
    r_tilde, r_tilde_contracted, trivial_one, verify_structure, QGroupError, StructureCheck,
    TildeSide,
};
use crate::scalar::ScalarQH;
use crate::tensor::RingMatrix;

#[derive(Debug, Clone, Error)]
pub enum SuiteError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("{0}")]
    Pole(String),
}

impl From<QGroupError> for SuiteError {
    fn from(e: QGroupError) -> Self {
        match e {
            QGroupError::OddMetric(_) | QGroupError::Pole { .. } => SuiteError::Pole(e.to_string()),
            other => SuiteError::Usage(other.to_string()),
        }
    }
}

impl From<FreeAlgError> for SuiteError {
    fn from(e: FreeAlgError) -> Self {
        match e {
            FreeAlgError::QGroup(q) => q.into(),
            other => SuiteError::Usage(other.to_string()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Ybe,
    Triangular,
    Hecke,
    LimitEquivalence,
    CParity,
    BosonFock,
    BosonAbstract,
    Confluence,
    Covariance,
    Coupled,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 11] = [
        "ybe",
        "triangular",
        "hecke",
        "limit-equivalence",
        "c-parity",
        "boson-fock",
        "boson-abstract",
        "confluence",
        "covariance",
        "coupled",
        "all",
    ];

    const EACH: [Suite; 10] = [
        Suite::Ybe,
        Suite::Triangular,
        Suite::Hecke,
        Suite::LimitEquivalence,
        Suite::CParity,
        Suite::BosonFock,
        Suite::BosonAbstract,
        Suite::Confluence,
        Suite::Covariance,
        Suite::Coupled,
    ];

    pub fn parse(s: &str) -> Option<Suite> {
        let k = Self::NAMES.iter().position(|&n| n == s)?;
        Some(if k == 10 { Suite::All } else { Self::EACH[k] })
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            s => Self::NAMES[Self::EACH.iter().position(|&e| e == s).expect("listed")],
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Parameters {
    pub n: usize,
    pub m: usize,
    pub trunc: usize,
    pub max_degree: usize,
    /// One-based entry of the primary R-matrix perturbed by `+h`.
    pub perturb: Option<(usize, usize)>,
    pub checks: Vec<String>,
}

impl Parameters {
    pub fn new(n: usize, m: usize, trunc: usize) -> Self {
        Parameters {
            n,
            m,
            trunc,
            max_degree: max_degree_from_env(),
            perturb: None,
            checks: Vec::new(),
        }
    }
}

impl Default for Parameters {
    fn default() -> Self {
        Parameters::new(2, 1, 6)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityResult {
    pub identity: String,
    pub pass: bool,
    pub witness: Option<String>,
}

impl IdentityResult {
    fn ok(identity: impl Into<String>) -> Self {
        IdentityResult {
            identity: identity.into(),
            pass: true,
            witness: None,
        }
    }

    fn fail(identity: impl Into<String>, witness: impl Into<String>) -> Self {
        IdentityResult {
            identity: identity.into(),
            pass: false,
            witness: Some(witness.into()),
        }
    }

    fn from_option(identity: impl Into<String>, witness: Option<String>) -> Self {
        match witness {
            None => Self::ok(identity),
            Some(w) => Self::fail(identity, w),
        }
    }

    /// A mutated input that must be rejected: passes iff `witness` is present.
    fn control(identity: impl Into<String>, witness: Option<String>) -> Self {
        let identity = format!("negative control: {}", identity.into());
        match witness {
            Some(w) => Self::ok(format!("{identity} (rejected: {w})")),
            None => Self::fail(identity, "mutated input was accepted"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    pub parameters: Parameters,
    pub results: Vec<IdentityResult>,
    /// Seconds.
    pub elapsed: f64,
    pub overall: bool,
}

impl VerificationReport {
    pub fn failures(&self) -> impl Iterator<Item = &IdentityResult> {
        self.results.iter().filter(|r| !r.pass)
    }
}

/// Runs `suite`; usage errors and unexpected poles are returned as errors.
pub fn run_suite(suite: Suite, params: &Parameters) -> Result<VerificationReport, SuiteError> {
    let start = Instant::now();
    let mut results = Vec::new();
    match suite {
        Suite::All => {
            for s in Suite::EACH {
                if s == Suite::BosonFock && params.m != 1 {
                    continue;
                }
                for mut r in run_one(s, params)? {
                    r.identity = format!("{}: {}", s.name(), r.identity);
                    results.push(r);
                }
            }
            if params.perturb.is_none() {
                for mut r in perturbation_results(params.trunc)? {
                    r.identity = format!("perturbation: {}", r.identity);
                    results.push(r);
                }
            }
        }
        s => results = run_one(s, params)?,
    }
    let mut parameters = params.clone();
    parameters.checks = results.iter().map(|r| r.identity.clone()).collect();
    Ok(VerificationReport {
        suite: suite.name().to_string(),
        parameters,
        overall: results.iter().all(|r| r.pass),
        results,
        elapsed: start.elapsed().as_secs_f64(),
    })
}

fn require(cond: bool, msg: impl Into<String>) -> Result<(), SuiteError> {
    if cond {
        Ok(())
    } else {
        Err(SuiteError::Usage(msg.into()))
    }
}

/// Adds `h` to the one-based entry `(i, j)`.
pub fn perturb(r: &RingMatrix, (i, j): (usize, usize)) -> Result<RingMatrix, SuiteError> {
    require(
        (1..=r.dim()).contains(&i) && (1..=r.dim()).contains(&j),
        format!("perturbed entry ({i}, {j}) outside a {0}x{0} matrix", r.dim()),
    )?;
    let mut out = r.clone();
    out.set(i - 1, j - 1, r.get(i - 1, j - 1).add(&ScalarQH::h()));
    Ok(out)
}

fn primary(r: RingMatrix, params: &Parameters) -> Result<RingMatrix, SuiteError> {
    match params.perturb {
        Some(p) => perturb(&r, p),
        None => Ok(r),
    }
}

fn structure(name: &str, r: &RingMatrix, check: StructureCheck) -> IdentityResult {
    let rep = verify_structure(r, &[check]);
    let o = &rep.outcomes[0];
    IdentityResult::from_option(
        name,
        o.witness
            .as_ref()
            .map(|(i, j, v)| format!("entry ({i}, {j}) of lhs - rhs = {v}")),
    )
}

fn structure_control(name: &str, r: &RingMatrix, check: StructureCheck) -> IdentityResult {
    let rep = verify_structure(r, &[check]);
    let o = &rep.outcomes[0];
    IdentityResult::control(
        name,
        o.witness
            .as_ref()
            .map(|(i, j, v)| format!("entry ({i}, {j}) = {v}")),
    )
}

fn fock_results(prefix: &str, rep: &FockReport) -> Vec<IdentityResult> {
    rep.0
        .iter()
        .map(|(name, r)| {
            IdentityResult::from_option(
                format!("{prefix}{name}"),
                r.first_failure
                    .as_ref()
                    .map(|f| format!("entry ({}, {}) = {}", f.row, f.col, f.value)),
            )
        })
        .collect()
}

fn osc(e: OscillatorError) -> SuiteError {
    match e {
        OscillatorError::FreeAlg(f) => f.into(),
        other => SuiteError::Usage(other.to_string()),
    }
}

fn run_one(suite: Suite, p: &Parameters) -> Result<Vec<IdentityResult>, SuiteError> {
    let n = p.n;
    let mut out = Vec::new();
    match suite {
        Suite::Ybe | Suite::Triangular => {
            require((2..=5).contains(&n), "R-matrix suites need 2 <= n <= 5")?;
            let check = if suite == Suite::Ybe {
                StructureCheck::Ybe
            } else {
                StructureCheck::Triangular
            };
            let label = if suite == Suite::Ybe {
                "Yang-Baxter equation"
            } else {
                "R12^-1 = R21"
            };
            let rh = primary(r_jordanian(n), p)?;
            out.push(structure(&format!("R_h({n}) {label}"), &rh, check));
            if suite == Suite::Ybe && p.perturb.is_none() && n <= 4 {
                out.push(structure(&format!("R_q({n}) {label}"), &r_standard(n), check));
            }
            if suite == Suite::Triangular {
                out.push(IdentityResult::control(
                    format!("R_q({n}) is not triangular"),
                    verify_structure(&r_standard(n), &[check]).outcomes[0]
                        .witness
                        .as_ref()
                        .map(|w| w.2.clone()),
                ));
            }
            let bad = perturb(&r_jordanian(n), (1, n * n - 1))?;
            out.push(structure_control(
                &format!("R_h({n}) with entry (1, {}) + h", n * n - 1),
                &bad,
                check,
            ));
        }
        Suite::Hecke => {
            require((2..=4).contains(&n), "hecke needs 2 <= n <= 4")?;
            let rq = primary(r_standard(n), p)?;
            out.push(structure(
                &format!("R_q({n}) (PR - q)(PR + q^-1) = 0"),
                &rq,
                StructureCheck::Hecke,
            ));
            let bad = perturb(&r_standard(n), (1, 2))?;
            out.push(structure_control(
                &format!("R_q({n}) with entry (1, 2) + h"),
                &bad,
                StructureCheck::Hecke,
            ));
        }
        Suite::LimitEquivalence => {
            require((2..=5).contains(&n), "limit-equivalence needs 2 <= n <= 5")?;
            let c = contract_r(n)?;
            out.push(IdentityResult::from_option(
                format!("lim (g^-1 x g^-1) R'_q (g x g) = R_h({n}) closed form"),
                c.path_a
                    .first_difference(&c.path_b)
                    .map(|(i, j)| format!("entry ({i}, {j}): {} vs {}", c.path_a.get(i, j), c.path_b.get(i, j))),
            ));
            let eq = limit_equivalence(n)?;
            out.push(IdentityResult::from_option(
                format!("R'_12 and R'^-1_21 contract to the same R_h({n})"),
                (!eq).then(|| "limits differ".to_string()),
            ));
            if n == 2 {
                out.push(r_tilde_coherence()?);
            }
        }
        Suite::CParity => {
            for k in 1..=6.max(n) {
                let res = c_metric_contract(k);
                let (name, witness) = match (k % 2 == 0 || k == 1, res) {
                    (true, Ok(c)) => (
                        format!("C_h({k}) exists and equals the closed form"),
                        c.first_difference(&c_metric_closed(k))
                            .map(|(i, j)| format!("entry ({i}, {j})")),
                    ),
                    (true, Err(e)) => (format!("C_h({k}) exists"), Some(e.to_string())),
                    (false, Err(QGroupError::OddMetric(_))) => {
                        (format!("C_h({k}) has no limit"), None)
                    }
                    (false, Err(e)) => (format!("C_h({k}) has no limit"), Some(format!("unexpected error: {e}"))),
                    (false, Ok(_)) => (format!("C_h({k}) has no limit"), Some("limit exists".into())),
                };
                out.push(IdentityResult::from_option(name, witness));
            }
            let c2 = c_metric_contract(2)?;
            let want = RingMatrix::from_rows(vec![
                vec![ScalarQH::zero(), ScalarQH::int(-1)],
                vec![ScalarQH::one(), ScalarQH::h()],
            ]);
            out.push(IdentityResult::from_option(
                "C_h(2) = [[0, -1], [1, h]]",
                c2.first_difference(&want).map(|(i, j)| format!("entry ({i}, {j})")),
            ));
        }
        Suite::BosonFock => {
            require(n == 2 && p.m == 1, "boson-fock is defined for n = 2, m = 1")?;
            require(p.trunc >= 4, "boson-fock needs --trunc >= 4")?;
            let rep = FockRep::build_h_spinors(2, p.trunc).map_err(osc)?;
            out.extend(fock_results("", &verify_relations(&rep, &RelationGroup::ALL).map_err(osc)?));
            let classical = rep.at_h_zero();
            out.extend(fock_results(
                "h = 0: ",
                &verify_relations_classical(&classical, &RelationGroup::ALL).map_err(osc)?,
            ));
            let r = primary(r_jordanian(2), p)?;
            match verify_generated_relations(&rep, &r, &c_metric_closed(2)) {
                Ok(gen) => out.extend(fock_results("expanded from R, C: ", &gen)),
                Err(e) => out.push(IdentityResult::fail("expanded from R, C", e.to_string())),
            }
            let neumann = rep.op("N").map_err(osc)?.mul(rep.op("Ninv").map_err(osc)?);
            out.push(IdentityResult::from_option(
                "(1 - h/2 J+) sum (h/2)^k J+^k = I",
                (!neumann.is_identity()).then(|| "product differs from identity".into()),
            ));
            let bigger = FockRep::build_h_spinors(2, p.trunc + 1).map_err(osc)?;
            let leaks = bigger.truncation_leaks(&rep);
            out.push(IdentityResult::from_option(
                format!("truncation {} agrees with {} on safe columns", p.trunc + 1, p.trunc),
                (!leaks.is_empty()).then(|| leaks.join(", ")),
            ));
            for (name, shift) in [("A+1", 1), ("A+2", 1), ("At1", -1), ("At2", -1)] {
                let ok = rep.shifts_degree_by(name, shift).map_err(osc)?;
                out.push(IdentityResult::from_option(
                    format!("{name} shifts degree by {shift}"),
                    (!ok).then(|| "entry outside the degree block".into()),
                ));
            }
        }
        Suite::BosonAbstract => {
            require(n == 2 && (1..=2).contains(&p.m), "boson-abstract needs n = 2, m in {1, 2}")?;
            for form in [BosonForm::Tilde, BosonForm::Plain] {
                let rs = boson_system(p, form)?;
                if p.m == 1 {
                    let (alphabet, rels) = expected_relations(form);
                    for rel in rels {
                        let nf = rs.reduce(&rs.import(&rel.element, &alphabet))?;
                        out.push(IdentityResult::from_option(
                            format!("reduces to 0: {}", rel.name),
                            (!nf.is_zero()).then(|| nf.display(rs.alphabet()).to_string()),
                        ));
                    }
                } else {
                    out.push(IdentityResult::ok(format!(
                        "{form:?} double-spinor system built with {} rules",
                        rs.rules().len()
                    )));
                }
            }
            if p.m == 1 && p.perturb.is_none() {
                let m = verify_rform_match().map_err(osc)?;
                for (name, ok) in &m.identities {
                    out.push(IdentityResult::from_option(
                        format!("matrix form expands to {name}"),
                        (!ok).then(|| "not in the span of the expanded relations".into()),
                    ));
                }
                out.push(IdentityResult::from_option(
                    "expanded and hand-written relation sets have equal rank",
                    (m.rank_plain.0 != m.rank_plain.1 || m.rank_tilde.0 != m.rank_tilde.1)
                        .then(|| format!("plain {:?}, tilde {:?}", m.rank_plain, m.rank_tilde)),
                ));
                let cm = verify_rform_match_classical().map_err(osc)?;
                out.push(IdentityResult::from_option(
                    "h = 0 expansion gives canonical relations",
                    (!cm.pass()).then(|| format!("{:?}", cm.identities)),
                ));
                let rs = boson_system(p, BosonForm::Tilde)?;
                let rep = FockRep::build_h_spinors(2, p.trunc).map_err(osc)?;
                let s = soundness_check(&rs, &rep, 3).map_err(osc)?;
                out.push(IdentityResult::from_option(
                    format!("normal forms of {} words agree on the Fock representation", s.words_checked),
                    s.failures.first().cloned(),
                ));
            }
        }
        Suite::Confluence => {
            require(n == 2 && (1..=2).contains(&p.m), "confluence needs n = 2, m in {1, 2}")?;
            for form in [BosonForm::Tilde, BosonForm::Plain] {
                let rs = boson_system(p, form)?;
                let rep = rs.check_confluence(3);
                out.push(IdentityResult::from_option(
                    format!("{form:?} system, n = {n}, m = {}, confluent at degree 3", p.m),
                    rep.failures.first().map(|f| format!("{}: {} vs {}", f.word, f.first, f.second)),
                ));
                let cl = classical_boson_system(n, p.m, form)?.check_confluence(3);
                out.push(IdentityResult::from_option(
                    format!("{form:?} system at h = 0 confluent at degree 3"),
                    cl.failures.first().map(|f| f.word.clone()),
                ));
            }
            let r = primary(r_jordanian(n), p)?;
            let rank = relation_rank(&rtt_relations(&r, n)).map_err(FreeAlgError::from)?;
            out.push(IdentityResult::from_option(
                "GL_h(2) RTT relations have rank 6",
                (rank != 6).then(|| format!("rank {rank}")),
            ));
            out.push(match rtt_system(&r, n, "T") {
                Ok(_) => IdentityResult::ok("GL_h(2) RTT system confluent at degree 3"),
                Err(e) => IdentityResult::fail("GL_h(2) RTT system confluent at degree 3", e.to_string()),
            });
        }
        Suite::Covariance => {
            require(n == 2 && (1..=2).contains(&p.m), "covariance needs n = 2, m in {1, 2}")?;
            let rep = covariance_check(n, p.m)?;
            out.push(IdentityResult::from_option(
                format!(
                    "A+ -> A+ T S maps all {} creation relations to 0 (n = {n}, m = {})",
                    rep.relations_checked, p.m
                ),
                rep.nonzero_images.first().cloned(),
            ));
        }
        Suite::Coupled => {
            require(n == 2 && (1..=2).contains(&p.m), "coupled needs n = 2, m in {1, 2}")?;
            out.extend(coupled_results(p)?);
        }
        Suite::All => unreachable!("handled by run_suite"),
    }
    Ok(out)
}

fn boson_system(p: &Parameters, form: BosonForm) -> Result<RewriteSystem, SuiteError> {
    match p.perturb {
        None => Ok(contracted_boson_system(p.n, p.m, form)?),
        Some(at) => {
            let [r, calr, c, calc] = contracted_data(p.n, p.m)?;
            Ok(boson_relations(&perturb(&r, at)?, &calr, &c, &calc, form)?)
        }
    }
}

fn r_tilde_coherence() -> Result<IdentityResult, SuiteError> {
    let name = "R~ leg-1 and leg-2 forms agree and the q-side limit equals the h-side";
    let h_side = match r_tilde(&r_jordanian(2), &c_metric_closed(2), TildeSide::H) {
        Ok(m) => m,
        Err(e) => return Ok(IdentityResult::fail(name, e.to_string())),
    };
    let q_side = r_tilde_contracted(2)?.to_scalar();
    Ok(IdentityResult::from_option(
        name,
        q_side
            .first_difference(&h_side)
            .map(|(i, j)| format!("entry ({i}, {j})")),
    ))
}

fn coupled_to_results(rep: &CoupledReport, prefix: &str) -> Vec<IdentityResult> {
    rep.checks
        .iter()
        .map(|c| IdentityResult {
            identity: format!("{prefix}{}", c.identity),
            pass: c.pass(),
            witness: c.witness.clone(),
        })
        .collect()
}

fn coupled_results(p: &Parameters) -> Result<Vec<IdentityResult>, SuiteError> {
    let mut out = Vec::new();
    let rs = match boson_system(&Parameters { m: 1, ..p.clone() }, BosonForm::Tilde) {
        Ok(rs) => rs,
        Err(e) => return Ok(vec![IdentityResult::fail("tilde system for n = 2, m = 1", e.to_string())]),
    };
    let table = match derive_table(&rs) {
        Ok(t) => t,
        Err(e) => return Ok(vec![IdentityResult::fail("coupling table exists", e.to_string())]),
    };
    out.push(IdentityResult::ok(format!(
        "coupling table: singlet space dim {}, triplet space dim {}",
        table.singlet_dim, table.triplet_dim
    )));
    out.push(IdentityResult::from_option(
        "coupling table reduces to su(2) at h = 0",
        table.classical_mismatch(),
    ));
    if p.m == 1 {
        let rep = FockRep::build_h_spinors(2, p.trunc).map_err(osc)?;
        let r = verify_coupled_n2m1(&table, &rs, Some(&rep)).map_err(|e| SuiteError::Usage(e.to_string()))?;
        out.extend(coupled_to_results(&r, ""));
    } else {
        let rs22 = match boson_system(p, BosonForm::Tilde) {
            Ok(rs) => rs,
            Err(e) => return Ok(vec![IdentityResult::fail("double-spinor system", e.to_string())]),
        };
        let r = verify_coupled_n2m2(&table, &rs22).map_err(|e| SuiteError::Usage(e.to_string()))?;
        out.extend(coupled_to_results(&r, ""));
    }
    Ok(out)
}

/// Outcome of perturbing one entry of `R_h(2)` by `+h`.
#[derive(Clone, Debug, Serialize)]
pub struct PerturbationOutcome {
    /// One-based entry.
    pub entry: (usize, usize),
    /// Checks that rejected the perturbed matrix, with their witnesses.
    pub detected_by: Vec<(String, String)>,
}

/// Perturbs every entry of `R_h(2)` in turn and records which of the
/// structure, Fock and coupled checks reject it.
pub fn perturbation_sweep(trunc: usize) -> Result<Vec<PerturbationOutcome>, SuiteError> {
    let rep = FockRep::build_h_spinors(2, trunc).map_err(osc)?;
    let c = c_metric_closed(2);
    let one = trivial_one();
    let mut out = Vec::new();
    for i in 1..=4 {
        for j in 1..=4 {
            let r = perturb(&r_jordanian(2), (i, j))?;
            let mut detected = Vec::new();
            for o in verify_structure(&r, &[StructureCheck::Triangular, StructureCheck::Ybe]).outcomes {
                if let Some((a, b, v)) = o.witness {
                    detected.push((format!("{:?}", o.check), format!("entry ({a}, {b}) = {v}")));
                }
            }
            match verify_generated_relations(&rep, &r, &c) {
                Ok(gen) => {
                    if let Some((name, res)) = gen.failures().next() {
                        let f = res.first_failure.as_ref().expect("failure recorded");
                        detected.push((
                            format!("Fock: {name}"),
                            format!("entry ({}, {}) = {}", f.row, f.col, f.value),
                        ));
                    }
                }
                Err(e) => detected.push(("Fock".into(), e.to_string())),
            }
            let coupled = boson_relations(&r, &one, &c, &one, BosonForm::Tilde)
                .map_err(|e| e.to_string())
                .and_then(|rs| {
                    let t = derive_table(&rs).map_err(|e| e.to_string())?;
                    verify_coupled_n2m1(&t, &rs, None).map_err(|e| e.to_string())
                });
            match coupled {
                Ok(r) => {
                    if let Some(f) = r.checks.iter().find(|c| !c.pass()) {
                        detected.push((
                            format!("coupled: {}", f.identity),
                            f.witness.clone().unwrap_or_default(),
                        ));
                    }
                }
                Err(e) => detected.push(("coupled".into(), e)),
            }
            out.push(PerturbationOutcome {
                entry: (i, j),
                detected_by: detected,
            });
        }
    }
    Ok(out)
}

fn perturbation_results(trunc: usize) -> Result<Vec<IdentityResult>, SuiteError> {
    Ok(perturbation_sweep(trunc)?
        .into_iter()
        .map(|o| {
            let name = format!("R_h(2) entry {:?} + h is rejected", o.entry);
            match o.detected_by.first() {
                Some(_) => IdentityResult::ok(name),
                None => IdentityResult::fail(name, "no check failed"),
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for name in Suite::NAMES {
            assert_eq!(Suite::parse(name).unwrap().name(), name);
        }
        assert!(Suite::parse("nope").is_none());
    }

    #[test]
    fn ybe_suite_passes_and_perturbed_fails() {
        let p = Parameters::default();
        let rep = run_suite(Suite::Ybe, &p).unwrap();
        assert!(rep.overall, "{:?}", rep.results);
        let bad = Parameters {
            perturb: Some((1, 4)),
            ..Parameters::default()
        };
        let rep = run_suite(Suite::Ybe, &bad).unwrap();
        assert!(!rep.overall);
        assert!(rep.failures().all(|r| r.witness.is_some()));
    }

    #[test]
    fn c_parity_suite() {
        let rep = run_suite(Suite::CParity, &Parameters::default()).unwrap();
        assert!(rep.overall, "{:?}", rep.results);
    }

    #[test]
    fn out_of_range_parameters_are_usage_errors() {
        let p = Parameters::new(3, 1, 6);
        assert!(matches!(run_suite(Suite::Hecke, &Parameters::new(7, 1, 6)), Err(SuiteError::Usage(_))));
        assert!(matches!(run_suite(Suite::BosonFock, &p), Err(SuiteError::Usage(_))));
    }

    #[test]
    fn witness_present_iff_fail() {
        let rep = run_suite(Suite::Triangular, &Parameters::default()).unwrap();
        for r in &rep.results {
            assert_eq!(r.pass, r.witness.is_none(), "{r:?}");
        }
        assert!(rep.overall);
    }

    #[test]
    fn all_suite_passes_with_defaults() {
        let rep = run_suite(Suite::All, &Parameters::default()).unwrap();
        let bad: Vec<_> = rep.failures().collect();
        assert!(bad.is_empty(), "{bad:?}");
        assert!(rep.results.iter().any(|r| r.identity.starts_with("perturbation:")));
    }
}
