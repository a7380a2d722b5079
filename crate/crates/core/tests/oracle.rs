use std::f64::consts::PI;

use cylwave_core::modes::{eval_mode, Mode, PhysicalParams};
use cylwave_core::oracle::{
    axial_width, axis_slope, gaussian_comparator, gaussian_packet, observed_order, overlap, propagate, propagate_axial,
    propagate_with_summary, schrodinger_residual, AxialBoundary, PropagatorConfig,
};
use cylwave_core::packets::{direct_cylinder_norm, Packet, SpectralWeights, UniformGrid};
use cylwave_core::{Complex64, Error, Field};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn unit() -> PhysicalParams {
    PhysicalParams::natural()
}

#[test]
fn zero_field_residual() {
    let report =
        schrodinger_residual(&unit(), |_, _, _| Ok(c(0.0, 0.0)), &[(0.0, 0.0), (2.0, 1.0)], 0.0, (1e-3, 1e-3, 1e-3))
            .unwrap();
    assert_eq!(report.max_abs, 0.0);
}

#[test]
fn plane_wave_residual_is_at_round_off() {
    let p = unit();
    let plane = Mode::plane_wave();
    let probes: Vec<(f64, f64)> =
        (0..20).map(|i| (-3.0 + 0.3 * i as f64, if i % 4 == 0 { 0.0 } else { 0.1 * i as f64 })).collect();
    let report =
        schrodinger_residual(&p, |z, r, t| eval_mode(&p, &plane, z, r, t), &probes, 1.0, (1e-3, 1e-3, 1e-3)).unwrap();
    assert!(report.max_rel() < 1e-8, "{report:?}");
    assert!(report.rms_rel() <= report.max_rel());
}

#[test]
fn geometry_error_near_the_axis() {
    let p = unit();
    let plane = Mode::plane_wave();
    let err =
        schrodinger_residual(&p, |z, r, t| eval_mode(&p, &plane, z, r, t), &[(0.0, 0.015)], 0.0, (0.01, 0.01, 0.01))
            .unwrap_err();
    assert!(matches!(err, Error::Geometry(_)));
}

/// The packet is itself an exact solution, so only finite-difference
/// truncation remains and it falls at fourth order.
#[test]
fn packet_residual_converges_at_fourth_order() {
    let p = unit();
    let packet = Packet::new(&p, &SpectralWeights::default_preset(), 128).unwrap();
    let probes = [(0.0, 0.0), (1.0, 0.0), (-2.0, 1.5), (3.0, 4.0), (0.5, 8.0)];
    let sample = |z: f64, r: f64, t: f64| Ok(packet.eval(z, r, t));
    let coarse = schrodinger_residual(&p, sample, &probes, 0.2, (0.2, 0.2, 0.2)).unwrap();
    let fine = schrodinger_residual(&p, sample, &probes, 0.2, (0.1, 0.1, 0.1)).unwrap();
    let order = observed_order(&coarse, &fine);
    assert!((3.5..=4.5).contains(&order), "order {order}: {coarse:?} {fine:?}");
    let tight = schrodinger_residual(&p, sample, &probes, 0.2, (1e-3, 1e-3, 1e-3)).unwrap();
    assert!(tight.max_rel() < 1e-6, "{tight:?}");
}

fn line_field() -> Field {
    let zg = UniformGrid::new(-6.0, 6.0, 49).unwrap();
    let rg = UniformGrid::new(0.0, 6.0, 25).unwrap();
    Field::from_fn(zg, rg, 0.0, unit(), |z, r| c(0.0, 1.0) * (-(z * z + 0.5 * r * r)).exp()).unwrap()
}

#[test]
fn zero_field_propagates_to_zero() {
    let f = line_field();
    let zero = Field::zeros(*f.z_grid(), *f.r_grid(), 0.0, unit()).unwrap();
    let out = propagate(&zero, &PropagatorConfig::new(0.05, 10, 0.3).unwrap()).unwrap();
    assert!(out.values().iter().all(|v| v.norm() == 0.0));
}

#[test]
fn configuration_invariant_is_enforced() {
    let f = line_field();
    // travel 1.0 ≥ 0.2 · 12 / 2 = 1.2 fails only past 24 steps of 0.05
    assert!(propagate(&f, &PropagatorConfig::new(0.05, 20, 0.2).unwrap()).is_ok());
    let err = propagate(&f, &PropagatorConfig::new(0.05, 30, 0.2).unwrap()).unwrap_err();
    assert!(matches!(err, Error::Configuration(_)));
    assert!(matches!(PropagatorConfig::new(0.05, 10, 0.19), Err(Error::Configuration(_))));
    assert!(matches!(PropagatorConfig::new(-0.05, 10, 0.3), Err(Error::Configuration(_))));
}

#[test]
fn norm_drift_per_thousand_steps() {
    let f = line_field();
    let config = PropagatorConfig::new(2e-4, 1000, 0.3).unwrap();
    let (_, summary) = propagate_with_summary(&f, &config).unwrap();
    assert!(summary.relative_drift < 1e-6, "{summary:?}");
    assert_eq!(summary.steps, 1000);
    assert!((summary.final_time - 0.2).abs() < 1e-15);
}

/// `e^{2iz}` on one period of `[0, π)`, evolved under the z-part alone:
/// momentum `2mv`, energy `2mv²`, so the phase turns by `e^{−2it}`.
#[test]
fn periodic_plane_wave_phase() {
    let p = unit();
    let n = 4096;
    let zg = UniformGrid::new(0.0, PI * (n - 1) as f64 / n as f64, n).unwrap();
    let start: Vec<Complex64> = zg.points().map(|z| Complex64::from_polar(1.0, 2.0 * z)).collect();
    let steps = 4000;
    let end = propagate_axial(&start, &zg, &p, 1.0 / steps as f64, steps, AxialBoundary::Periodic).unwrap();
    let expected = Complex64::from_polar(1.0, -2.0);
    for (a, b) in start.iter().zip(&end) {
        assert!((b - a * expected).norm() < 1e-6, "{b} vs {}", a * expected);
    }
}

#[test]
fn gaussian_width_matches_the_comparator() {
    let p = unit();
    let zg = UniformGrid::new(-40.0, 40.0, 1601).unwrap();
    let start: Vec<Complex64> = zg.points().map(|z| gaussian_packet(z, 1.0, 0.0, 0.0)).collect();
    assert!((axial_width(&start, &zg).unwrap() - 1.0).abs() < 1e-10);
    let end = propagate_axial(&start, &zg, &p, 2.0 / 800.0, 800, AxialBoundary::Dirichlet).unwrap();
    let measured = axial_width(&end, &zg).unwrap();
    let predicted = gaussian_comparator(1.0, &p, 2.0).unwrap();
    assert!((predicted - 2f64.sqrt()).abs() < 1e-15);
    assert!(((measured - predicted) / predicted).abs() < 0.01, "{measured} vs {predicted}");
}

#[test]
fn moving_gaussian_also_spreads() {
    let p = unit();
    let zg = UniformGrid::new(-30.0, 50.0, 1601).unwrap();
    let start: Vec<Complex64> = zg.points().map(|z| gaussian_packet(z, 1.0, 0.0, 2.0)).collect();
    let end = propagate_axial(&start, &zg, &p, 2.0 / 800.0, 800, AxialBoundary::Dirichlet).unwrap();
    let measured = axial_width(&end, &zg).unwrap();
    assert!(((measured - 2f64.sqrt()) / 2f64.sqrt()).abs() < 0.01, "{measured}");
}

#[test]
fn overlap_properties() {
    let f = line_field();
    assert!((overlap(&f, &f).unwrap() - c(1.0, 0.0)).norm() < 1e-12);
    let neg =
        Field::from_fn(*f.z_grid(), *f.r_grid(), 0.0, unit(), |z, r| c(0.0, -1.0) * (-(z * z + 0.5 * r * r)).exp())
            .unwrap();
    assert!((overlap(&f, &neg).unwrap() + c(1.0, 0.0)).norm() < 1e-12);
    let shifted = Field::from_fn(*f.z_grid(), *f.r_grid(), 0.0, unit(), |z, r| {
        c(0.0, 1.0) * (-((z - 0.5).powi(2) + 0.5 * r * r)).exp()
    })
    .unwrap();
    let o = overlap(&f, &shifted).unwrap().norm();
    assert!(o > 0.0 && o < 1.0);
}

/// The preset packet on `z ∈ [−40, 40]`, `r ∈ [0, 40]`, `Δ = 0.05`, evolved
/// to `t = 1`. `v t` is twenty cells, so a window that follows the packet
/// can be compared exactly with the initial one.
#[test]
fn propagated_packet_matches_translation() {
    let p = unit();
    let packet = Packet::new(&p, &SpectralWeights::default_preset(), 128).unwrap();
    let zg = UniformGrid::new(-40.0, 40.0, 1601).unwrap();
    let rg = UniformGrid::new(0.0, 40.0, 801).unwrap();
    let initial = packet.eval_grid(&zg, &rg, 0.0).unwrap();
    let config = PropagatorConfig::for_duration(&initial, 1.0, 0.4).unwrap();
    assert_eq!(config.steps, 400);
    let (evolved, summary) = propagate_with_summary(&initial, &config).unwrap();
    assert!((evolved.time() - 1.0).abs() < 1e-14);
    let exact = packet.eval_grid(&zg, &rg, 1.0).unwrap();

    let o = overlap(&config.interior(&evolved).unwrap(), &config.interior(&exact).unwrap()).unwrap();
    assert!(o.norm() >= 0.999, "overlap {o}");

    let before = direct_cylinder_norm(&config.interior(&initial).unwrap()).unwrap();
    let after = direct_cylinder_norm(&config.interior_shifted(&evolved, 20).unwrap()).unwrap();
    assert!(((after - before) / before).abs() < 1e-6, "{before} → {after}");
    assert!(summary.relative_drift < 1e-6, "{summary:?}");

    let scale = evolved.values().iter().map(|v| v.norm()).fold(0.0, f64::max);
    let slope = axis_slope(&config.interior(&evolved).unwrap()).unwrap();
    assert!(slope < 1e-6 * scale, "axis slope {slope} vs scale {scale}");
}
