//! Closed-form hyperbolic trigonometry for pants and collars, plus the
//! independent numerical oracles (adaptive quadrature, discrete variational
//! minimization) used to cross-check the closed forms.
//!
//! All lengths are hyperbolic lengths. The accepted input range is
//! `(0, 1e4]`; the formulas hold for every positive length but the
//! floating-point contract is only stated on that range. Quantities that
//! decay like `exp(-length/4)` underflow to `+0.0` once the true value drops
//! below the smallest positive `f64` (around `length > 2980` for the
//! cuff-to-cuff distance); they never become negative, NaN or infinite.

use std::f64::consts::{LN_2, PI};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Upper end of the accepted length range.
pub const LENGTH_MAX: f64 = 1.0e4;

/// Area of a hyperbolic pair of pants (Gauss-Bonnet, genus 0 with 3 cuffs).
pub const PANTS_AREA: f64 = 2.0 * PI;

fn check_length(x: f64, what: &str) -> Result<()> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::Domain(format!(
            "{what} must be positive and finite, got {x}"
        )));
    }
    if x > LENGTH_MAX {
        return Err(Error::Domain(format!(
            "{what} {x} exceeds the supported range (0, {LENGTH_MAX}]"
        )));
    }
    Ok(())
}

/// `arcsinh(x)` for `x >= 0`, accurate from subnormals up to `f64::MAX`.
///
/// `ln(x + sqrt(x^2+1))` loses all precision for tiny x and overflows for
/// huge x; this uses a `ln_1p` form below and `ln(2x)` above.
fn asinh_pos(x: f64) -> f64 {
    debug_assert!(x >= 0.0);
    if x > 1.0e17 {
        // relative error ~ 1/(4 x^2), far below f64 epsilon here
        x.ln() + LN_2
    } else {
        (x + x * x / (1.0 + (x * x + 1.0).sqrt())).ln_1p()
    }
}

/// `1/sinh(x)` for `x > 0` without overflow: `2 e^{-x} / (1 - e^{-2x})`.
fn inv_sinh(x: f64) -> f64 {
    debug_assert!(x > 0.0);
    2.0 * (-x).exp() / (-(-2.0 * x).exp_m1())
}

/// Cuff-to-cuff distance `d` on the pair of pants with all cuffs of length
/// `epsilon`: `d = 2 arcsinh(1 / (2 sinh(eps/4)))`.
pub fn compute_d(epsilon: f64) -> Result<f64> {
    check_length(epsilon, "cuff length")?;
    let q = epsilon / 4.0;
    if q > 700.0 {
        // d ~ 4 e^{-q}; evaluate in log form so subnormal results survive
        let ln_d = (4.0f64).ln() - q - (-(-2.0 * q).exp()).ln_1p();
        return Ok(ln_d.exp());
    }
    Ok(2.0 * asinh_pos(0.5 * inv_sinh(q)))
}

/// Half of the shortest returning arc: the right-angled hexagon altitude
/// `h = arcsinh(cosh(eps/2) / sinh(eps/4))`.
pub fn compute_h(epsilon: f64) -> Result<f64> {
    check_length(epsilon, "cuff length")?;
    let q = epsilon / 4.0;
    if q > 350.0 {
        // cosh(2q)/sinh(q) = e^q (1+e^{-4q})/(1-e^{-2q}); arcsinh(r) = ln(2r)
        let ln_ratio = q + (-4.0 * q).exp().ln_1p() - (-(-2.0 * q).exp()).ln_1p();
        return Ok(LN_2 + ln_ratio);
    }
    Ok(asinh_pos((2.0 * q).cosh() / q.sinh()))
}

/// Shortest returning arc length `tau = 2 h`. Bit-identical to
/// `2 * compute_h(epsilon)` by construction.
pub fn compute_tau(epsilon: f64) -> Result<f64> {
    Ok(2.0 * compute_h(epsilon)?)
}

/// Collar half width `w = arcsinh(1 / sinh(length/2))` of the closed
/// geodesic of the given length. Strictly decreasing in the length.
pub fn collar_half_width(length: f64) -> Result<f64> {
    check_length(length, "geodesic length")?;
    let q = length / 2.0;
    if q > 700.0 {
        let ln_w = (2.0f64).ln() - q - (-(-2.0 * q).exp()).ln_1p();
        return Ok(ln_w.exp());
    }
    Ok(asinh_pos(inv_sinh(q)))
}

/// Area of the full collar around a geodesic of the given length:
/// `2 length / sinh(length/2)`. Always strictly less than 4.
pub fn collar_area(length: f64) -> Result<f64> {
    check_length(length, "geodesic length")?;
    if length > 1400.0 {
        // 4 l e^{-l/2} / (1 - e^{-l}) in log form
        let ln_area = (4.0 * length).ln() - 0.5 * length - (-(-length).exp()).ln_1p();
        return Ok(ln_area.exp());
    }
    Ok(2.0 * length * inv_sinh(0.5 * length))
}

/// All closed-form lengths and areas attached to the pair of pants with
/// three cuffs of length `epsilon`, plus the collar data of a cuff.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PantsGeometry {
    /// Cuff length.
    pub epsilon: f64,
    /// Distance between two different cuffs.
    pub d: f64,
    /// Shortest returning arc length; equals `2 h` exactly.
    pub tau: f64,
    /// Right-angled hexagon altitude.
    pub h: f64,
    /// Collar half width `w(epsilon)` of a cuff.
    pub half_width: f64,
    /// Area of the full collar of a cuff.
    pub collar_area: f64,
    /// Area of the pair of pants (`2 pi`).
    pub pants_area: f64,
}

impl PantsGeometry {
    pub fn new(epsilon: f64) -> Result<Self> {
        let h = compute_h(epsilon)?;
        Ok(PantsGeometry {
            epsilon,
            d: compute_d(epsilon)?,
            tau: 2.0 * h,
            h,
            half_width: collar_half_width(epsilon)?,
            collar_area: collar_area(epsilon)?,
            pants_area: PANTS_AREA,
        })
    }
}

/// A collar with prescribed constant boundary values: central geodesic
/// length, half width, and the values `a` at `rho = -w`, `b` at `rho = +w`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CollarProfile {
    pub length: f64,
    pub half_width: f64,
    pub a: f64,
    pub b: f64,
}

impl CollarProfile {
    pub fn new(length: f64, half_width: f64, a: f64, b: f64) -> Result<Self> {
        check_length(length, "collar length")?;
        check_length(half_width, "collar half width")?;
        if !a.is_finite() || !b.is_finite() {
            return Err(Error::Domain(format!(
                "boundary values must be finite, got a={a}, b={b}"
            )));
        }
        Ok(CollarProfile { length, half_width, a, b })
    }

    /// Collar of a geodesic of the given length, with the standard half
    /// width `w(length)`.
    pub fn standard(length: f64, a: f64, b: f64) -> Result<Self> {
        Self::new(length, collar_half_width(length)?, a, b)
    }
}

/// Minimum Dirichlet energy over all functions on the collar with the given
/// constant boundary values: `(a-b)^2 l / (4 arctan(tanh(w/2)))`.
pub fn collar_energy_min(profile: &CollarProfile) -> f64 {
    let diff = profile.a - profile.b;
    diff * diff * profile.length / (4.0 * (0.5 * profile.half_width).tanh().atan())
}

/// The per-collar conductance: energy of a unit jump across the collar,
/// `l / (4 arctan(tanh(w/2)))`.
pub fn collar_conductance(length: f64, half_width: f64) -> f64 {
    length / (4.0 * (0.5 * half_width).tanh().atan())
}

/// Value of the energy minimizer at coordinate `rho`:
/// `(a+b)/2 + (b-a)/(2 arctan(tanh(w/2))) * arctan(tanh(rho/2))`.
///
/// Rotationally invariant, monotone in `rho`, with `f(-w) = a`, `f(w) = b`.
pub fn harmonic_profile(profile: &CollarProfile, rho: f64) -> Result<f64> {
    let w = profile.half_width;
    if !rho.is_finite() || rho < -w || rho > w {
        return Err(Error::Domain(format!(
            "rho = {rho} outside the collar [-{w}, {w}]"
        )));
    }
    let mid = 0.5 * (profile.a + profile.b);
    let slope = (profile.b - profile.a) / (2.0 * (0.5 * w).tanh().atan());
    Ok(mid + slope * (0.5 * rho).tanh().atan())
}

/// Adaptive Simpson quadrature of the collar volume element
/// `int_0^1 int_{-w}^{w} l cosh(rho) drho dt`; independent oracle for
/// [`collar_area`]. `tol` is a relative tolerance.
pub fn collar_area_quadrature(length: f64, tol: f64) -> Result<f64> {
    check_length(length, "geodesic length")?;
    if !tol.is_finite() || tol <= 0.0 {
        return Err(Error::Domain(format!("tolerance must be positive, got {tol}")));
    }
    let w = collar_half_width(length)?;
    let f = |rho: f64| length * rho.cosh();
    // the t integral over [0, 1] contributes a factor of one
    let coarse = simpson(&f, -w, w);
    let result = adaptive_simpson(&f, -w, w, coarse, 0.1 * tol * coarse.abs(), 60)?;
    Ok(result)
}

fn simpson(f: &impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let m = 0.5 * (a + b);
    (b - a) / 6.0 * (f(a) + 4.0 * f(m) + f(b))
}

fn adaptive_simpson(
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> Result<f64> {
    let m = 0.5 * (a + b);
    let left = simpson(f, a, m);
    let right = simpson(f, m, b);
    let err = left + right - whole;
    if err.abs() <= 15.0 * tol {
        return Ok(left + right + err / 15.0);
    }
    if depth == 0 {
        return Err(Error::Numerical(format!(
            "quadrature failed to converge on [{a}, {b}] (residual {err:e})"
        )));
    }
    Ok(adaptive_simpson(f, a, m, left, 0.5 * tol, depth - 1)?
        + adaptive_simpson(f, m, b, right, 0.5 * tol, depth - 1)?)
}

/// Independent oracle for [`collar_energy_min`]: discretize `rho` on a
/// uniform grid of `grid_size` cells, minimize the rotationally invariant
/// discrete energy with fixed endpoint values by solving the tridiagonal
/// normal equations, and return the discrete minimum. Converges to the
/// closed form at rate `O(grid_size^-2)` (midpoint cosh weights).
pub fn collar_energy_bruteforce(profile: &CollarProfile, grid_size: usize) -> Result<f64> {
    if grid_size < 16 {
        return Err(Error::Domain(format!(
            "grid_size must be at least 16, got {grid_size}"
        )));
    }
    let n = grid_size;
    let w = profile.half_width;
    let dr = 2.0 * w / n as f64;
    // midpoint weights c_{i+1/2} = cosh(rho at cell center), i = 0..n
    let weight = |i: usize| (-w + (i as f64 + 0.5) * dr).cosh();

    // Unknowns f_1..f_{n-1}; f_0 = a, f_n = b.
    // Row i: (c_{i-1/2} + c_{i+1/2}) f_i - c_{i-1/2} f_{i-1} - c_{i+1/2} f_{i+1} = 0.
    let unknowns = n - 1;
    let mut diag = vec![0.0; unknowns];
    let mut rhs = vec![0.0; unknowns];
    let mut sub = vec![0.0; unknowns]; // sub[i] couples f_i with f_{i-1}
    for i in 1..n {
        let cl = weight(i - 1);
        let cr = weight(i);
        diag[i - 1] = cl + cr;
        if i == 1 {
            rhs[i - 1] += cl * profile.a;
        } else {
            sub[i - 1] = -cl;
        }
        if i == n - 1 {
            rhs[i - 1] += cr * profile.b;
        }
    }

    // Thomas algorithm; the system is symmetric positive definite.
    let mut c_prime = vec![0.0; unknowns];
    let mut d_prime = vec![0.0; unknowns];
    let mut pivot = diag[0];
    if pivot == 0.0 {
        return Err(Error::Numerical("singular tridiagonal system".into()));
    }
    c_prime[0] = -weight(1) / pivot;
    d_prime[0] = rhs[0] / pivot;
    for i in 1..unknowns {
        let lower = sub[i];
        pivot = diag[i] + lower * c_prime[i - 1];
        if pivot == 0.0 {
            return Err(Error::Numerical("singular tridiagonal system".into()));
        }
        let upper = if i + 1 < unknowns { -weight(i + 1) } else { 0.0 };
        c_prime[i] = upper / pivot;
        d_prime[i] = (rhs[i] - lower * d_prime[i - 1]) / pivot;
    }
    let mut f = vec![0.0; n + 1];
    f[0] = profile.a;
    f[n] = profile.b;
    f[unknowns] = d_prime[unknowns - 1];
    for i in (0..unknowns - 1).rev() {
        f[i + 1] = d_prime[i] - c_prime[i] * f[i + 2];
    }

    Ok(discrete_collar_energy(profile, &f))
}

/// The discrete energy functional used by the brute-force oracle:
/// `sum_i l * cosh(rho_{i+1/2}) * ((f_{i+1}-f_i)/dr)^2 * dr` over the cells
/// of a uniform grid carrying the node values `f` (` f.len() - 1` cells).
pub fn discrete_collar_energy(profile: &CollarProfile, node_values: &[f64]) -> f64 {
    let n = node_values.len() - 1;
    let w = profile.half_width;
    let dr = 2.0 * w / n as f64;
    let mut energy = 0.0;
    for i in 0..n {
        let c = (-w + (i as f64 + 0.5) * dr).cosh();
        let slope = (node_values[i + 1] - node_values[i]) / dr;
        energy += profile.length * c * slope * slope * dr;
    }
    energy
}

/// Area and boundary length of the hyperbolic disk of radius `r`:
/// `(2 pi (cosh r - 1), 2 pi sinh r)`. The area never exceeds the
/// perimeter, the model-domain witness of the disk isoperimetric bound.
pub fn disk_isoperimetric(r: f64) -> Result<(f64, f64)> {
    check_length(r, "radius")?;
    Ok((2.0 * PI * (r.cosh() - 1.0), 2.0 * PI * r.sinh()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel_err(x: f64, reference: f64) -> f64 {
        ((x - reference) / reference).abs()
    }

    // Independently computed with 50-digit arithmetic.
    const D_AT_1: f64 = 2.868_695_141_619_821_9;
    const TAU_AT_2: f64 = 3.612_225_999_682_252;
    const W_AT_10: f64 = 0.013_476_097_938_606_626;
    const EMIN_1101: f64 = 0.577_520_933_319_374_3;
    const TWO_LN_1_SQRT2: f64 = 1.762_747_174_039_086;

    #[test]
    fn d_forced_value() {
        // sinh(eps/4) = 1/2 forces d = 2 arcsinh(1) = 2 ln(1+sqrt(2))
        let eps = 4.0 * 0.5f64.asinh();
        let d = compute_d(eps).unwrap();
        assert!(rel_err(d, TWO_LN_1_SQRT2) < 1e-14);
    }

    #[test]
    fn d_regression_at_1() {
        assert!(rel_err(compute_d(1.0).unwrap(), D_AT_1) < 1e-14);
    }

    #[test]
    fn d_large_eps_asymptotic() {
        // d / (2 e^{-eps/4}) -> 1; at eps = 40 the gap is ~1.7e-9
        let d = compute_d(40.0).unwrap();
        let ratio = d / (2.0 * (-10.0f64).exp());
        assert!((ratio - 1.0).abs() <= 1e-6, "ratio - 1 = {:e}", ratio - 1.0);
    }

    #[test]
    fn d_strictly_decreasing_and_positive() {
        let mut prev = f64::INFINITY;
        for j in 0..1000 {
            let eps = 1e-3 + j as f64 * (1400.0 - 1e-3) / 999.0;
            let d = compute_d(eps).unwrap();
            assert!(d > 0.0 && d < prev, "eps={eps} d={d} prev={prev}");
            prev = d;
        }
    }

    #[test]
    fn d_extreme_range_finite() {
        // beyond eps ~ 2980 the true value drops below the smallest f64
        for eps in [2000.0, 3000.0, 1.0e4] {
            let d = compute_d(eps).unwrap();
            assert!(d.is_finite() && d >= 0.0);
        }
        assert!(compute_d(2000.0).unwrap() > 0.0);
    }

    #[test]
    fn d_domain_errors() {
        assert!(compute_d(0.0).is_err());
        assert!(compute_d(-1.0).is_err());
        assert!(compute_d(f64::NAN).is_err());
        assert!(compute_d(f64::INFINITY).is_err());
        assert!(compute_d(1.0001e4).is_err());
    }

    #[test]
    fn tau_is_twice_h_bitwise() {
        for eps in [0.01, 0.5, 1.0, 2.0, 17.0, 300.0, 1.0e4] {
            let tau = compute_tau(eps).unwrap();
            let h = compute_h(eps).unwrap();
            assert_eq!(tau.to_bits(), (2.0 * h).to_bits());
        }
    }

    #[test]
    fn tau_regression_at_2() {
        assert!(rel_err(compute_tau(2.0).unwrap(), TAU_AT_2) < 1e-14);
    }

    #[test]
    fn tau_exceeds_half_eps_on_grid() {
        for j in 0..1000 {
            let eps = 0.01 + j as f64 * (50.0 - 0.01) / 999.0;
            let tau = compute_tau(eps).unwrap();
            assert!(tau > 0.5 * eps, "eps={eps} tau={tau}");
        }
    }

    #[test]
    fn tau_blows_up_monotonically_as_eps_vanishes() {
        let mut prev = compute_tau(0.5).unwrap();
        for j in 1..=20 {
            let eps = 0.5f64.powi(j);
            let tau = compute_tau(eps).unwrap();
            assert!(tau > prev, "tau({eps}) = {tau} not above {prev}");
            prev = tau;
        }
        assert!(prev > 55.0); // tau(2^-20) ~ 2 ln(8/eps)
    }

    #[test]
    fn tau_stable_at_extreme_eps() {
        let tau = compute_tau(1.0e4).unwrap();
        // tau ~ eps/2 + 2 ln 2 for large eps
        assert!(rel_err(tau, 5000.0 + 4.0 * LN_2 / 2.0) < 1e-10);
        assert!(tau > 5000.0);
    }

    #[test]
    fn half_width_forced_value() {
        // sinh(l/2) = 1 forces w = arcsinh(1) = ln(1+sqrt(2))
        let w = collar_half_width(2.0 * 1.0f64.asinh()).unwrap();
        assert!(rel_err(w, 1.0f64.asinh()) < 1e-14);
    }

    #[test]
    fn half_width_regression_at_10() {
        assert!(rel_err(collar_half_width(10.0).unwrap(), W_AT_10) < 1e-13);
    }

    #[test]
    fn half_width_diverges_for_short_geodesics() {
        let w = collar_half_width(1e-9).unwrap();
        assert!(w > 20.0 && w.is_finite());
    }

    #[test]
    fn half_width_strictly_decreasing() {
        let mut prev = f64::INFINITY;
        for j in 0..500 {
            let l = 0.01 + j as f64 * 2.0;
            let w = collar_half_width(l).unwrap();
            assert!(w < prev);
            prev = w;
        }
    }

    #[test]
    fn collar_area_forced_value() {
        // sinh(l/2) = 1 gives area = 2l
        let l = TWO_LN_1_SQRT2;
        let area = collar_area(l).unwrap();
        assert!(rel_err(area, 2.0 * l) < 1e-14);
        assert!(rel_err(area, 3.525_494_348_078_172) < 1e-14);
    }

    #[test]
    fn collar_area_below_four_and_limit() {
        for j in 0..1000 {
            let l = 1e-4 + j as f64 * (100.0 - 1e-4) / 999.0;
            let area = collar_area(l).unwrap();
            assert!(area < 4.0, "area({l}) = {area}");
        }
        assert!((collar_area(1e-8).unwrap() - 4.0).abs() < 1e-14);
    }

    #[test]
    fn quadrature_matches_closed_form() {
        for l in [0.1, 1.0, TWO_LN_1_SQRT2, 5.0, 10.0] {
            let exact = collar_area(l).unwrap();
            let quad = collar_area_quadrature(l, 1e-10).unwrap();
            assert!(
                rel_err(quad, exact) <= 1e-10,
                "l={l}: quad={quad:.15e} exact={exact:.15e}"
            );
        }
    }

    #[test]
    fn quadrature_rejects_bad_tolerance() {
        assert!(collar_area_quadrature(1.0, 0.0).is_err());
        assert!(collar_area_quadrature(1.0, -1e-3).is_err());
    }

    #[test]
    fn energy_min_constant_profile_is_zero() {
        let p = CollarProfile::new(1.0, 1.0, 7.0, 7.0).unwrap();
        assert_eq!(collar_energy_min(&p), 0.0);
    }

    #[test]
    fn energy_min_regression() {
        let p = CollarProfile::new(1.0, 1.0, 0.0, 1.0).unwrap();
        assert!(rel_err(collar_energy_min(&p), EMIN_1101) < 1e-14);
    }

    #[test]
    fn energy_min_quadratic_in_jump() {
        let p1 = CollarProfile::new(0.7, 1.3, 0.0, 1.0).unwrap();
        let p2 = CollarProfile::new(0.7, 1.3, 0.0, 2.0).unwrap();
        assert!(rel_err(collar_energy_min(&p2), 4.0 * collar_energy_min(&p1)) < 1e-14);
    }

    #[test]
    fn harmonic_profile_boundary_and_midpoint() {
        let p = CollarProfile::new(1.0, 0.8, 2.0, 5.0).unwrap();
        assert!((harmonic_profile(&p, 0.0).unwrap() - 3.5).abs() < 1e-14);
        assert!((harmonic_profile(&p, -0.8).unwrap() - 2.0).abs() < 1e-12);
        assert!((harmonic_profile(&p, 0.8).unwrap() - 5.0).abs() < 1e-12);
    }

    #[test]
    fn harmonic_profile_odd_symmetry_and_monotone() {
        let p = CollarProfile::new(2.0, 1.1, -1.0, 3.0).unwrap();
        let mut prev = f64::NEG_INFINITY;
        for j in 0..=50 {
            let rho = -1.1 + j as f64 * 2.2 / 50.0;
            let v = harmonic_profile(&p, rho).unwrap();
            let v_mirror = harmonic_profile(&p, -rho).unwrap();
            assert!((v + v_mirror - (p.a + p.b)).abs() < 1e-12);
            assert!(v >= prev);
            prev = v;
        }
    }

    #[test]
    fn harmonic_profile_rejects_out_of_range() {
        let p = CollarProfile::new(1.0, 1.0, 0.0, 1.0).unwrap();
        assert!(harmonic_profile(&p, 1.0001).is_err());
        assert!(harmonic_profile(&p, -2.0).is_err());
        assert!(harmonic_profile(&p, f64::NAN).is_err());
    }

    #[test]
    fn bruteforce_constant_profile_zero_any_grid() {
        let p = CollarProfile::new(1.0, 1.0, 3.0, 3.0).unwrap();
        for n in [16, 33, 1024] {
            assert_eq!(collar_energy_bruteforce(&p, n).unwrap(), 0.0);
        }
    }

    #[test]
    fn bruteforce_matches_closed_form_at_4096() {
        let p = CollarProfile::new(1.0, 1.0, 0.0, 1.0).unwrap();
        let exact = collar_energy_min(&p);
        let approx = collar_energy_bruteforce(&p, 4096).unwrap();
        assert!(rel_err(approx, exact) < 1e-5, "rel err {:e}", rel_err(approx, exact));
    }

    #[test]
    fn bruteforce_second_order_convergence() {
        let p = CollarProfile::new(1.0, 1.0, 0.0, 1.0).unwrap();
        let exact = collar_energy_min(&p);
        let e256 = (collar_energy_bruteforce(&p, 256).unwrap() - exact).abs();
        let e1024 = (collar_energy_bruteforce(&p, 1024).unwrap() - exact).abs();
        let e4096 = (collar_energy_bruteforce(&p, 4096).unwrap() - exact).abs();
        let order1 = (e256 / e1024).ln() / 4.0f64.ln();
        let order2 = (e1024 / e4096).ln() / 4.0f64.ln();
        assert!(order1 >= 1.9, "order {order1}");
        assert!(order2 >= 1.9, "order {order2}");
    }

    #[test]
    fn bruteforce_rejects_tiny_grid() {
        let p = CollarProfile::new(1.0, 1.0, 0.0, 1.0).unwrap();
        assert!(collar_energy_bruteforce(&p, 15).is_err());
    }

    #[test]
    fn sampled_minimizer_is_discretely_near_optimal() {
        // plugging the continuum minimizer into the discrete functional
        // stays within O(n^-2) of the closed form
        let p = CollarProfile::new(1.0, 1.0, 0.0, 1.0).unwrap();
        let exact = collar_energy_min(&p);
        let mut errs = Vec::new();
        for n in [256usize, 1024] {
            let values: Vec<f64> = (0..=n)
                .map(|i| {
                    let rho = -p.half_width + 2.0 * p.half_width * i as f64 / n as f64;
                    harmonic_profile(&p, rho.clamp(-p.half_width, p.half_width)).unwrap()
                })
                .collect();
            errs.push((discrete_collar_energy(&p, &values) - exact).abs());
        }
        let order = (errs[0] / errs[1]).ln() / 4.0f64.ln();
        assert!(order >= 1.9, "order {order}");
        assert!(errs[1] / exact < 1e-5);
    }

    #[test]
    fn disk_area_below_perimeter() {
        let (a1, p1) = disk_isoperimetric(1.0).unwrap();
        assert!(a1 < p1);
        let (a_small, p_small) = disk_isoperimetric(1e-6).unwrap();
        assert!(a_small / p_small < 1e-6);
        let (a10, p10) = disk_isoperimetric(10.0).unwrap();
        let ratio = a10 / p10;
        assert!(ratio < 1.0);
        assert!(rel_err(ratio, 0.999_909_204_262_595_1) < 1e-12);
    }

    #[test]
    fn pants_geometry_fields_consistent() {
        let p = PantsGeometry::new(1.0).unwrap();
        assert_eq!(p.tau.to_bits(), (2.0 * p.h).to_bits());
        assert!(p.tau > 0.5 * p.epsilon);
        assert!(p.collar_area < 4.0);
        assert!(p.d > 0.0 && p.h > 0.0 && p.half_width > 0.0);
        assert_eq!(p.pants_area, 2.0 * PI);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn pants_invariants_mid_range(eps in 1e-4f64..1400.0) {
                let p = PantsGeometry::new(eps).unwrap();
                prop_assert!(p.d > 0.0);
                prop_assert!(p.h > 0.0);
                prop_assert!(p.tau > 0.5 * eps);
                prop_assert!(p.collar_area > 0.0 && p.collar_area < 4.0);
                prop_assert!(p.half_width > 0.0);
            }

            #[test]
            fn pants_fields_finite_full_range(eps in 1e-6f64..1.0e4) {
                let p = PantsGeometry::new(eps).unwrap();
                for v in [p.d, p.tau, p.h, p.half_width, p.collar_area] {
                    prop_assert!(v.is_finite() && v >= 0.0);
                }
                prop_assert!(p.tau > 0.0 && p.h > 0.0);
            }

            #[test]
            fn d_monotone_pairs(eps in 1e-3f64..1400.0, bump in 1e-3f64..10.0) {
                let d1 = compute_d(eps).unwrap();
                let d2 = compute_d(eps + bump).unwrap();
                prop_assert!(d2 < d1);
            }

            #[test]
            fn quadrature_tracks_closed_form(l in 0.05f64..30.0) {
                let exact = collar_area(l).unwrap();
                let quad = collar_area_quadrature(l, 1e-9).unwrap();
                prop_assert!(((quad - exact) / exact).abs() < 1e-9);
            }
        }
    }
}
