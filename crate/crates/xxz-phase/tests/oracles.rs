//! Cross-module checks against independent oracles: ED spectra, free-fermion
//! sums, full-line analytic solutions and frozen closed-form values.

use std::f64::consts::{FRAC_PI_2, PI};
use xxz_phase::bethe_finite::{
    ground_state, measure_interaction_energy, particle_hole_from_rapidities, particle_hole_state, particle_hole_window,
    scan_interaction, two_hole_state, two_hole_window, ScaledExcitation,
};
use xxz_phase::dispersion::{velocity, Kind};
use xxz_phase::ed_oracle::{match_energy, sector_spectrum, SpinSector};
use xxz_phase::edge_analysis::{
    edge_energy_from_factorization, nystrom_backflow, wiener_hopf_factorize, NystromSpec, Region, RhsKind,
};
use xxz_phase::interaction::{fermi_point_hole_energy, ph_interaction, Edge};
use xxz_phase::scattering::{backflow_full_line, hh_phase, ph_phase, resolvent_primitive};
use xxz_phase::{Exec, ModelParams, QuadratureSpec};

fn q() -> QuadratureSpec {
    QuadratureSpec::default()
}

fn p3() -> ModelParams {
    ModelParams::new(PI / 3.0).unwrap()
}

#[test]
fn frozen_phase_values() {
    let p = p3();
    assert!((ph_phase(25.0, &p, &q()).unwrap() + PI / 4.0).abs() < 1e-6);
    assert!((hh_phase(25.0, &p, &q()).unwrap() + PI / 4.0).abs() < 1e-6);
    assert!((resolvent_primitive(25.0, &p, &q()).unwrap() - 0.125).abs() < 1e-8);
    assert!((ph_phase(1e-12, &p, &q()).unwrap() + PI).abs() < 1e-9);
    let f = ModelParams::new(FRAC_PI_2).unwrap();
    for t in [-3.0, 0.2, 7.0] {
        assert_eq!(ph_phase(t, &f, &q()).unwrap(), 0.0);
        assert_eq!(hh_phase(t, &f, &q()).unwrap(), 0.0);
    }
}

#[test]
fn ground_state_matches_ed_lowest_level() {
    for (l, delta) in [(8, 0.5), (10, 0.2), (12, 0.5), (12, (0.45 * PI).cos())] {
        let p = ModelParams::from_delta(delta).unwrap();
        let e = ground_state(l, &p).unwrap().energy;
        let ed = sector_spectrum(l, l / 2, delta, 1).unwrap()[0];
        assert!((e - ed).abs() < 1e-8, "L={l} delta={delta}: {e} vs {ed}");
    }
}

#[test]
fn every_label_choice_at_l8_is_an_eigenstate() {
    let delta = 0.5;
    let p = ModelParams::from_delta(delta).unwrap();
    let spec = sector_spectrum(8, 4, delta, SpinSector::new(8, 4).unwrap().dimension).unwrap();
    let w = particle_hole_window(8);
    let mut found = 0;
    for a in 0..w.len() {
        for b in 0..w.len() {
            if a == b {
                continue;
            }
            if let Ok(s) = particle_hole_state(8, &p, w[a], w[b]) {
                let r = match_energy(&spec, s.energy, 1e-8);
                assert!(r.success, "labels ({}, {}): gap {:.2e}", w[a], w[b], r.gap);
                found += 1;
            }
        }
    }
    assert!(found >= 10, "only {found} particle-hole states converged");
    let lower = sector_spectrum(10, 4, delta, SpinSector::new(10, 4).unwrap().dimension).unwrap();
    let w = two_hole_window(10);
    for a in 0..w.len() {
        for b in a + 1..w.len() {
            let s = two_hole_state(10, &p, (w[a], w[b])).unwrap();
            assert!(match_energy(&lower, s.energy, 1e-8).success);
        }
    }
}

#[test]
fn free_fermion_gaps_up_to_64() {
    let f = ModelParams::new(FRAC_PI_2).unwrap();
    for l in [16, 32, 64] {
        let m = l / 2;
        let shift = if m % 2 == 0 { 0.5 } else { 0.0 };
        let mut levels: Vec<f64> = (0..l).map(|n| (2.0 * PI * (n as f64 + shift) / l as f64).cos()).collect();
        levels.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let (occ, free) = levels.split_at(m);
        let g = ground_state(l, &f).unwrap();
        assert!((g.energy - occ.iter().sum::<f64>()).abs() < 1e-10);
        let w = particle_hole_window(l);
        for (a, b) in [(3, w.len() - 5), (0, w.len() - 1), (w.len() - 2, 4)] {
            let gap = particle_hole_state(l, &f, w[a], w[b]).unwrap().energy - g.energy;
            // one fermion lifted from an occupied level to an empty one
            let best = occ
                .iter()
                .flat_map(|h| free.iter().map(move |p| (p - h - gap).abs()))
                .fold(f64::INFINITY, f64::min);
            assert!(best < 1e-10, "L={l}: gap {gap} has no single-fermion partner ({best:.1e})");
        }
    }
}

#[test]
fn particle_hole_prediction_example() {
    let p = p3();
    let r = ph_interaction(0.5, -0.5, &p, &q()).unwrap();
    let expect = (velocity(0.5, Kind::Particle, &p) - velocity(-0.5, Kind::Hole, &p)) * ph_phase(1.0, &p, &q()).unwrap();
    assert!((r.coefficient - expect).abs() < 1e-14);
    assert!((r.at(256) - expect / 256.0).abs() < 1e-16);
}

#[test]
fn targeted_measurement_uses_exact_rapidities() {
    let p = p3();
    for l in [64, 128] {
        let s = particle_hole_from_rapidities(l, &p, 0.5, -0.5).unwrap();
        let r = measure_interaction_energy(l, &p, s, &q()).unwrap();
        let pred = ph_interaction(r.rapidities.0, r.rapidities.1, &p, &q()).unwrap().at(l);
        assert_eq!(r.predicted, pred);
        assert!((r.rapidities.0 - 0.5).abs() < 0.1 && (r.rapidities.1 + 0.5).abs() < 0.1);
    }
}

#[test]
fn scaled_sequences_are_cauchy() {
    let p = p3();
    let ls = [64, 128, 256, 512];
    let ph = scan_interaction(&ls, &p, ScaledExcitation::ParticleHole { hole_frac: 0.375, particle_frac: 0.25 }, &q(), Exec::default()).unwrap();
    let hh = scan_interaction(&ls, &p, ScaledExcitation::TwoHole { f1: 0.375, f2: 0.75 }, &q(), Exec::default()).unwrap();
    for s in [&ph, &hh] {
        let x: Vec<f64> = s.rows.iter().map(|r| r.scaled_measured()).collect();
        assert!(x.iter().all(|v| v.abs() < 10.0));
        // L·measured may tend to zero, so the step is compared on an absolute scale
        let step = (x[3] - x[2]).abs();
        assert!(step <= 0.02 * x[2].abs().max(1.0), "{x:?}");
    }
}

#[test]
fn nystrom_matches_full_line_backflow() {
    let p = p3();
    let region = Region::interval(-20.0, 20.0).unwrap();
    let spec = NystromSpec { nodes_per_unit: 32, panel_width: 0.5 };
    let sol = nystrom_backflow(&region, RhsKind::HoleReal { t0: 0.0, delta_n0: 1.0 }, &p, &q(), &spec).unwrap();
    for t in [-5.0, -1.0, 0.3, 2.0, 6.0] {
        let exact = backflow_full_line(t, 0.0, &p, &q()).unwrap();
        assert!((sol.eval(t) - exact).abs() < 1e-6, "t={t}: {} vs {exact}", sol.eval(t));
    }
}

#[test]
fn edge_energy_two_paths() {
    let p = p3();
    let f = wiener_hopf_factorize(&p, &q()).unwrap();
    for l in [64.0, 256.0] {
        let n0 = 1.0 / l;
        let a = edge_energy_from_factorization(&f, n0, &p);
        assert!((a * l + 1.36034).abs() < 1e-4);
        assert!((a - fermi_point_hole_energy(n0, Edge::Right, &p)).abs() < 1e-6);
    }
}
