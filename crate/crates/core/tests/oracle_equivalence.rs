mod common;

use common::alpha_two::ALPHA_TWO_ORACLE;
use common::{oracle_arguments, oracle_survey, solution_h_sets, zero_delta_sets, Verdict};
use fracwave::fox_h::MellinBarnesPlan;
use fracwave::solutions::{u_delta, FracParams};
use std::f64::consts::PI;

#[test]
fn residue_series_never_silently_wrong() {
    for set in oracle_survey() {
        let agree = set.count(|v| *v == Verdict::Agree);
        eprintln!("{:20} agree {agree:2}/{}", set.name, set.verdicts.len());
        for (z, v) in &set.verdicts {
            assert!(!matches!(v, Verdict::Miss(_)), "{} at z = {z}: {v:?}", set.name);
            if let Verdict::Flagged(why) = v {
                eprintln!("    z = {z:.4}: {why}");
            }
        }
        // double poles are the only excuse for agreeing nowhere
        assert!(agree > 0 || set.coincident, "{} agrees nowhere", set.name);
    }
}

#[test]
fn generic_points_have_simple_poles() {
    for set in oracle_survey().iter().filter(|s| s.name.contains("1.7321") || s.name.contains("1.6180")) {
        assert!(!set.coincident, "{}", set.name);
    }
}

#[test]
fn alpha_two_quadrature_matches_reference() {
    let sets = solution_h_sets();
    let zs = oracle_arguments();
    for (name, table) in ALPHA_TWO_ORACLE {
        let (_, p, _) = sets.iter().find(|(n, _, _)| n == name).expect("set in the corpus");
        let plan = MellinBarnesPlan::new(p).unwrap();
        let mut evaluated = 0;
        for (&z, &(zt, h)) in zs.iter().zip(table.iter()) {
            assert_eq!(z, zt, "reference table out of step with the shared draws");
            match plan.evaluate(z) {
                Ok(o) => {
                    evaluated += 1;
                    assert!((o.value - h).abs() <= 1e-9 * h.abs().max(1e-3), "{name} at z = {z}: {} vs {h}", o.value);
                    assert!(o.error <= 1e-8 * h.abs().max(1e-3), "{name} at z = {z}: error bound {}", o.error);
                }
                Err(e) => eprintln!("{name} at z = {z}: {e}"),
            }
        }
        assert!(evaluated >= table.len() - 2, "{name}: only {evaluated} of {} evaluated", table.len());
    }
}

#[test]
fn zero_delta_forms_match_quadrature() {
    let zs = oracle_arguments();
    for (name, p) in zero_delta_sets() {
        let plan = MellinBarnesPlan::new(&p).unwrap();
        for &z in &zs {
            let q = plan.value(z).unwrap();
            let closed = if name == "vertex D" {
                1.0 / (PI * (1.0 + z * z))
            } else {
                // μ/(βT) H with T = 1 at t = v = μ = 1
                let b: f64 = name[10..name.len() - 1].parse().unwrap();
                let fp = FracParams::new(b, b, 1.0, 1.0).unwrap();
                b * u_delta(&fp, z, 1.0).unwrap().value
            };
            assert!((closed - q).abs() <= 1e-6 * closed.abs(), "{name} at z = {z}: {closed} vs {q}");
        }
    }
}
