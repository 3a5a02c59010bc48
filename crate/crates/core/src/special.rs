//! Special functions shared by the fractional-derivative and symbol code.

use statrs::function::gamma::gamma as statrs_gamma;

/// Euler gamma function.
pub fn gamma(x: f64) -> f64 {
    statrs_gamma(x)
}

/// `1 / Gamma(x)`, which is entire: zero at the poles `x = 0, -1, -2, ...`.
pub fn recip_gamma(x: f64) -> f64 {
    if x <= 0.0 && x == x.round() {
        0.0
    } else {
        1.0 / statrs_gamma(x)
    }
}

/// Binomial coefficient `C(n, k)` as a float.
pub fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `sin(x) / x` with the removable singularity filled in.
pub fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let x2 = x * x;
        1.0 - x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sin() / x
    }
}

/// Even-index Bernoulli numbers B_2, B_4, ..., B_26.
const BERNOULLI_EVEN: [f64; 13] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
    8553103.0 / 6.0,
];

const EM_TERMS: usize = 12;

/// Hurwitz zeta `sum_{k>=0} (a + k)^{-s}` for `s > 1`, `a > 0`.
///
/// Returns the value together with a bound on the Euler–Maclaurin remainder
/// (the magnitude of the first omitted correction term).
pub fn hurwitz_zeta(s: f64, a: f64) -> (f64, f64) {
    assert!(s > 1.0 && a > 0.0, "hurwitz_zeta needs s > 1, a > 0");
    let shift_to = s + 2.0 * EM_TERMS as f64 + 4.0;
    let mut sum = 0.0;
    let mut w = a;
    while w < shift_to {
        sum += w.powf(-s);
        w += 1.0;
    }
    let ws = w.powf(-s);
    sum += w * ws / (s - 1.0) + 0.5 * ws;

    // rising factorial (s)_{2j-1} and (2j)! are updated incrementally
    let mut rising = s;
    let mut fact = 2.0;
    let mut wpow = ws / w;
    let mut last = 0.0;
    for (j, b) in BERNOULLI_EVEN.iter().enumerate() {
        let term = b / fact * rising * wpow;
        if j == EM_TERMS {
            last = term.abs();
            break;
        }
        sum += term;
        let m = (2 * j + 1) as f64;
        rising *= (s + m) * (s + m + 1.0);
        fact *= (m + 2.0) * (m + 3.0);
        wpow /= w * w;
    }
    (sum, last)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn zeta_two_is_pi_squared_over_six() {
        let (v, bound) = hurwitz_zeta(2.0, 1.0);
        assert_relative_eq!(v, std::f64::consts::PI.powi(2) / 6.0, max_relative = 1e-15);
        assert!(bound < 1e-20);
    }

    #[test]
    fn zeta_matches_brute_force_for_fast_decay() {
        let (s, a) = (7.3, 0.37);
        let brute: f64 = (0..20000).map(|k| (a + k as f64).powf(-s)).sum();
        let (v, _) = hurwitz_zeta(s, a);
        assert_relative_eq!(v, brute, max_relative = 1e-14);
    }

    #[test]
    fn zeta_shift_identity() {
        let (s, a) = (1.7, 2.25);
        let (z0, _) = hurwitz_zeta(s, a);
        let (z1, _) = hurwitz_zeta(s, a + 1.0);
        assert_relative_eq!(z0 - z1, a.powf(-s), max_relative = 1e-13);
    }

    #[test]
    fn recip_gamma_vanishes_at_poles() {
        assert_eq!(recip_gamma(0.0), 0.0);
        assert_eq!(recip_gamma(-1.0), 0.0);
        assert_relative_eq!(
            recip_gamma(0.5),
            1.0 / std::f64::consts::PI.sqrt(),
            max_relative = 1e-14
        );
        assert_relative_eq!(
            gamma(-0.5),
            -2.0 * std::f64::consts::PI.sqrt(),
            max_relative = 1e-13
        );
    }

    #[test]
    fn binomial_small() {
        assert_eq!(binomial(5, 2), 10.0);
        assert_eq!(binomial(6, 0), 1.0);
        assert_eq!(binomial(3, 4), 0.0);
    }
}
