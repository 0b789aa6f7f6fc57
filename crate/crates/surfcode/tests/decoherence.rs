use approx::assert_relative_eq;
use proptest::prelude::*;
use surfcode::decoherence::*;

fn params(t: f64) -> ThermalParams {
    ThermalParams {
        g: 1.0,
        t,
        hx: 0.1,
        hy: 0.0,
        lp: 10.0,
    }
}

#[test]
fn effective_mass_values() {
    assert_eq!(effective_mass(0.5), 1.0);
    assert_relative_eq!(effective_mass(0.05), 10.0, max_relative = 1e-12);
    assert!(effective_mass(0.0).is_infinite());
}

#[test]
fn decoherence_time_example() {
    let t = decoherence_time(&params(0.5));
    assert_relative_eq!(t, 10.0 / 0.1f64.sqrt() * 8.0f64.exp(), max_relative = 1e-12);
    assert!((t - 9.4266e4).abs() < 5.0);
    assert_relative_eq!(ln_decoherence_time(&params(0.5)), t.ln(), max_relative = 1e-12);
    assert!(decoherence_time(&params(0.0)).is_infinite());
    assert!(decoherence_time(&params(1e-4)).is_infinite());
    assert!(ln_decoherence_time(&params(1e-4)).is_finite());
    assert_relative_eq!(thermal_rate(&params(0.5)), 1.0 / t, max_relative = 1e-12);
}

#[test]
fn doubling_g_squares_the_arrhenius_factor() {
    let p = params(0.5);
    let q = ThermalParams { g: 2.0, ..p };
    let prefactor = p.lp / (p.t * 2.0 * p.hx).sqrt();
    let fp = decoherence_time(&p) / prefactor;
    let fq = decoherence_time(&q) / prefactor;
    assert_relative_eq!(fq, fp * fp, max_relative = 1e-10);
}

#[test]
fn tunneling_exponent_values() {
    let b = tunneling_exponent(1.0, 0.01, 0.0, 10.0).unwrap();
    assert!((b - 59.915).abs() < 1e-3);
    assert_relative_eq!(b, 10.0 * 400.0f64.ln(), max_relative = 1e-14);
    // equal fields: the y branch wins
    let both = tunneling_exponent(1.0, 0.1, 0.1, 10.0).unwrap();
    assert_relative_eq!(both, 10.0 * 80.0f64.ln(), max_relative = 1e-14);
    assert_eq!(tunneling_exponent(1.0, 4.0, 0.0, 10.0).unwrap(), 0.0);
    assert_eq!(tunneling_exponent(1.0, 0.0, 0.0, 10.0), Err(DecoherenceError::NoDrive));
}

#[test]
fn crossover_values() {
    let b = tunneling_exponent(1.0, 0.01, 0.0, 10.0).unwrap();
    let t_star = crossover_temperature(1.0, b).unwrap();
    assert!((t_star - 0.0668).abs() < 1e-4);
    assert_relative_eq!(crossover_temperature(2.0, b).unwrap(), 2.0 * t_star);
    assert!(crossover_temperature(1.0, 1e12).unwrap() < 1e-11);
    assert!(crossover_temperature(1.0, 0.0).is_err());
}

#[test]
fn safety_threshold() {
    let cold = ThermalParams {
        g: 1.0,
        t: 0.0,
        hx: 0.01,
        hy: 0.0,
        lp: 10.0,
    };
    let r = safe_to_operate(&cold, DEFAULT_SAFETY_FACTOR).unwrap();
    assert!(r.safe);
    let hot = ThermalParams { t: r.t_star, ..cold };
    assert!(!safe_to_operate(&hot, DEFAULT_SAFETY_FACTOR).unwrap().safe);
    let edge = ThermalParams { t: r.t_star / 10.0, ..cold };
    assert!(safe_to_operate(&edge, DEFAULT_SAFETY_FACTOR).unwrap().safe);
    let bad = ThermalParams { lp: 0.5, ..cold };
    assert!(matches!(
        safe_to_operate(&bad, 10.0),
        Err(DecoherenceError::Invalid { name: "Lp", .. })
    ));
}

#[test]
fn sweep_shape() {
    let base = params(0.0);
    let pts = sweep_hx(&base, 0.005, 0.2, 40).unwrap();
    assert_eq!(pts.len(), 40);
    assert!(pts.windows(2).all(|w| w[1].t_star > w[0].t_star));
    assert!(pts.windows(2).all(|w| w[1].b < w[0].b));
    let long = sweep_hx(&ThermalParams { lp: 20.0, ..base }, 0.005, 0.2, 40).unwrap();
    assert!(long.iter().zip(&pts).all(|(l, s)| l.t_star < s.t_star));
}

proptest! {
    #[test]
    fn t_star_homogeneous_in_g(g in 0.1f64..10.0, b in 0.1f64..100.0, c in 0.1f64..10.0) {
        let a = crossover_temperature(c * g, b).unwrap();
        prop_assert!((a - c * crossover_temperature(g, b).unwrap()).abs() <= 1e-12 * a);
    }

    #[test]
    fn t_star_decreases_with_path_length(hx in 0.001f64..0.5, lp in 1.0f64..50.0) {
        let b1 = tunneling_exponent(1.0, hx, 0.0, lp).unwrap();
        let b2 = tunneling_exponent(1.0, hx, 0.0, lp + 1.0).unwrap();
        prop_assert!(crossover_temperature(1.0, b2).unwrap() < crossover_temperature(1.0, b1).unwrap());
    }

    #[test]
    fn decoherence_time_decreases_with_temperature(t in 0.05f64..3.9, hx in 0.01f64..0.5) {
        // derivative of ln t_de in T is -1/(2T) - 4g/T², always negative
        let p = ThermalParams { g: 1.0, t, hx, hy: 0.0, lp: 10.0 };
        let q = ThermalParams { t: t * (1.0 + 1e-6), ..p };
        prop_assert!(ln_decoherence_time(&q) < ln_decoherence_time(&p));
    }

    #[test]
    fn exponent_decreases_in_hx(hx in 0.001f64..3.9, dh in 0.001f64..0.05) {
        let a = tunneling_exponent(1.0, hx, 0.0, 10.0).unwrap();
        let b = tunneling_exponent(1.0, hx + dh, 0.0, 10.0).unwrap();
        prop_assert!(b < a);
    }
}
