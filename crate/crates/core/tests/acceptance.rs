//! Acceptance criteria 1 to 11. Each criterion prints one PASS/FAIL line
//! with its runtime and budget; the process exits non-zero if any fails.

use std::time::{Duration, Instant};

use qgc_core::coupling::{derive_table, verify_coupled_n2m1, verify_coupled_n2m2};
use qgc_core::freealg::{contracted_boson_system, covariance_check, BosonForm};
use qgc_core::oscillator::{
    soundness_check, verify_relations, verify_relations_classical, verify_rform_match, RelationGroup,
};
use qgc_core::qgroup::{
    c_metric_closed, c_metric_contract, contract_r, limit_equivalence, r_jordanian, r_standard, r_tilde,
    r_tilde_contracted, verify_structure, StructureCheck, TildeSide,
};
use qgc_core::scalar::ScalarQH;
use qgc_core::suite::perturbation_sweep;
use qgc_core::{FockRep, PolyH, QGroupError, RingMatrix};

type Outcome = Result<(), String>;

fn ensure(ok: bool, witness: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(witness())
    }
}

fn h_matrix(rows: &[&[&[i64]]]) -> RingMatrix {
    RingMatrix::from_rows(
        rows.iter()
            .map(|r| {
                r.iter()
                    .map(|c| {
                        c.iter().rev().fold(ScalarQH::zero(), |acc, &k| {
                            acc.mul(&ScalarQH::h()).add(&ScalarQH::int(k))
                        })
                    })
                    .collect()
            })
            .collect(),
    )
}

fn contraction() -> Outcome {
    let expected = h_matrix(&[
        &[&[1], &[0, 1], &[0, -1], &[0, 0, 1]],
        &[&[0], &[1], &[0], &[0, 1]],
        &[&[0], &[0], &[1], &[0, -1]],
        &[&[0], &[0], &[0], &[1]],
    ]);
    let rep = contract_r(2).map_err(|e| e.to_string())?;
    if let Some((i, j)) = rep.path_a.to_scalar().first_difference(&expected) {
        return Err(format!("n = 2: entry ({i}, {j}) = {}", rep.path_a.get(i, j)));
    }
    for n in 3..=5 {
        let rep = contract_r(n).map_err(|e| e.to_string())?;
        if let Some((i, j)) = rep.path_a.to_scalar().first_difference(&r_jordanian(n)) {
            return Err(format!("n = {n}: entry ({i}, {j}) differs from the closed form"));
        }
    }
    Ok(())
}

fn triangular_and_ybe() -> Outcome {
    for n in 2..=5 {
        let rep = verify_structure(&r_jordanian(n), &[StructureCheck::Triangular, StructureCheck::Ybe]);
        if let Some(o) = rep.outcomes.iter().find(|o| !o.pass) {
            return Err(format!("R_h({n}) {:?}: {:?}", o.check, o.witness));
        }
    }
    for n in 2..=4 {
        let rep = verify_structure(&r_standard(n), &[StructureCheck::Ybe, StructureCheck::Hecke]);
        if let Some(o) = rep.outcomes.iter().find(|o| !o.pass) {
            return Err(format!("R_q({n}) {:?}: {:?}", o.check, o.witness));
        }
    }
    Ok(())
}

fn limit_equivalent() -> Outcome {
    for n in 2..=4 {
        ensure(limit_equivalence(n).map_err(|e| e.to_string())?, || {
            format!("n = {n}: the two RTT orientations contract differently")
        })?;
    }
    Ok(())
}

fn metric_parity() -> Outcome {
    for n in [2, 4] {
        let c = c_metric_contract(n).map_err(|e| format!("n = {n}: {e}"))?;
        if let Some((i, j)) = c.first_difference(&c_metric_closed(n)) {
            return Err(format!("n = {n}: entry ({i}, {j})"));
        }
    }
    let c2 = h_matrix(&[&[&[0], &[-1]], &[&[1], &[0, 1]]]);
    ensure(c_metric_contract(2).unwrap() == c2, || "C_h(2) != [[0, -1], [1, h]]".into())?;
    for n in [3, 5] {
        match c_metric_contract(n) {
            Err(QGroupError::OddMetric(_)) => {}
            other => return Err(format!("n = {n}: expected a pole, got {other:?}")),
        }
    }
    Ok(())
}

fn r_tilde_coherent() -> Outcome {
    let h_side = r_tilde(&r_jordanian(2), &c_metric_closed(2), TildeSide::H).map_err(|e| e.to_string())?;
    let q_side = r_tilde_contracted(2).map_err(|e| e.to_string())?.to_scalar();
    match q_side.first_difference(&h_side) {
        None => Ok(()),
        Some((i, j)) => Err(format!("entry ({i}, {j})")),
    }
}

fn fock_realization() -> Outcome {
    let rep = FockRep::build_h_spinors(2, 6).map_err(|e| e.to_string())?;
    ensure(rep.safe_degree() == 4, || format!("safe degree {}", rep.safe_degree()))?;
    let report = verify_relations(&rep, &RelationGroup::ALL).map_err(|e| e.to_string())?;
    ensure(report.0.len() == 11, || format!("{} identities checked", report.0.len()))?;
    if let Some((name, r)) = report.failures().next() {
        return Err(format!("{name}: {:?}", r.first_failure));
    }
    let classical = verify_relations_classical(&rep.at_h_zero(), &RelationGroup::ALL).map_err(|e| e.to_string())?;
    if let Some((name, r)) = classical.failures().next() {
        return Err(format!("h = 0, {name}: {:?}", r.first_failure));
    }
    Ok(())
}

fn componentwise_expansion() -> Outcome {
    let m = verify_rform_match().map_err(|e| e.to_string())?;
    if let Some((name, _)) = m.identities.iter().find(|(_, ok)| !**ok) {
        return Err(format!("{name} is not regenerated"));
    }
    ensure(m.rank_plain.0 == m.rank_plain.1 && m.rank_tilde.0 == m.rank_tilde.1, || {
        format!("ranks plain {:?}, tilde {:?}", m.rank_plain, m.rank_tilde)
    })
}

fn soundness() -> Outcome {
    let rs = contracted_boson_system(2, 1, BosonForm::Tilde).map_err(|e| e.to_string())?;
    let rep = FockRep::build_h_spinors(2, 6).map_err(|e| e.to_string())?;
    let s = soundness_check(&rs, &rep, 3).map_err(|e| e.to_string())?;
    ensure(s.words_checked == 85, || format!("{} words checked", s.words_checked))?;
    match s.failures.first() {
        None => Ok(()),
        Some(f) => Err(f.clone()),
    }
}

fn covariance() -> Outcome {
    for m in [1, 2] {
        let rep = covariance_check(2, m).map_err(|e| e.to_string())?;
        ensure(rep.relations_checked > 0, || format!("m = {m}: no relations"))?;
        if let Some(w) = rep.nonzero_images.first() {
            return Err(format!("m = {m}: {w}"));
        }
    }
    Ok(())
}

fn coupled_identities() -> Outcome {
    let rs = contracted_boson_system(2, 1, BosonForm::Tilde).map_err(|e| e.to_string())?;
    let table = derive_table(&rs).map_err(|e| e.to_string())?;
    ensure(table.singlet_dim == 1 && table.triplet_dim == 3, || {
        format!("solution spaces {} and {}", table.singlet_dim, table.triplet_dim)
    })?;
    if let Some(m) = table.classical_mismatch() {
        return Err(format!("classical limit: {m}"));
    }
    let want = [PolyH::h().neg(), PolyH::one(), PolyH::int(-1), PolyH::zero()];
    let raw = &table.singlet_raw;
    let (k, pivot) = raw.iter().enumerate().find(|(_, x)| !x.is_zero()).ok_or("zero singlet")?;
    let proportional = (0..4).all(|i| raw[i].mul(&want[k]) == want[i].mul(pivot));
    ensure(proportional, || format!("singlet {raw:?}"))?;

    let rep = FockRep::build_h_spinors(2, 6).map_err(|e| e.to_string())?;
    let r = verify_coupled_n2m1(&table, &rs, Some(&rep)).map_err(|e| e.to_string())?;
    ensure(r.checks.iter().any(|c| c.identity.contains("sqrt2 I")), || "singlet identity missing".into())?;
    for c in &r.checks {
        ensure(c.abstract_pass && c.fock_pass == Some(true), || {
            format!("{}: {:?}", c.identity, c.witness)
        })?;
    }
    let rs22 = contracted_boson_system(2, 2, BosonForm::Tilde).map_err(|e| e.to_string())?;
    let r = verify_coupled_n2m2(&table, &rs22).map_err(|e| e.to_string())?;
    ensure(r.checks.len() == 28, || format!("{} double-spinor identities", r.checks.len()))?;
    match r.checks.iter().find(|c| !c.pass()) {
        None => Ok(()),
        Some(c) => Err(format!("{}: {:?}", c.identity, c.witness)),
    }
}

fn negative_controls() -> Outcome {
    let sweep = perturbation_sweep(6).map_err(|e| e.to_string())?;
    ensure(sweep.len() == 16, || format!("{} entries swept", sweep.len()))?;
    for o in &sweep {
        let (by, witness) = o.detected_by.first().ok_or(format!("entry {:?} undetected", o.entry))?;
        ensure(!witness.is_empty(), || format!("entry {:?} detected by {by} without witness", o.entry))?;
    }
    Ok(())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, u64); 11] = [
        ("contraction reproduces R_h", contraction, 1),
        ("triangularity, Yang-Baxter and Hecke", triangular_and_ybe, 5),
        ("RTT orientations share the contraction limit", limit_equivalent, 2),
        ("metric parity", metric_parity, 1),
        ("R~ coherence", r_tilde_coherent, 1),
        ("Fock realization at D = 6", fock_realization, 2),
        ("componentwise expansion", componentwise_expansion, 1),
        ("abstract/concrete soundness", soundness, 5),
        ("covariance of the creation sector", covariance, 10),
        ("coupled identities", coupled_identities, 10),
        ("negative controls", negative_controls, 5),
    ];
    let mut failed = Vec::new();
    for (k, (name, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| {
            ensure(elapsed <= Duration::from_secs(*budget), || {
                format!("over budget: {:.2}s > {budget}s", elapsed.as_secs_f64())
            })
        });
        let id = k + 1;
        match &outcome {
            Ok(()) => println!("criterion {id:>2} PASS {name} ({:.3}s, budget {budget}s)", elapsed.as_secs_f64()),
            Err(w) => {
                println!("criterion {id:>2} FAIL {name} ({:.3}s): {w}", elapsed.as_secs_f64());
                failed.push(id);
            }
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
    println!("acceptance: 11 of 11 criteria passed");
}
