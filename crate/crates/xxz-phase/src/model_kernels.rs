//! Model parameters, bare kernels and their Fourier transforms.
//!
//! Fourier convention: f(ω) = ∫ e^{iωt} f(t) dt.

use crate::error::{Error, Result};
use crate::quad::{composite, GaussLegendre};
use std::f64::consts::{FRAC_PI_2, PI};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub eta: f64,
    pub delta: f64,
    pub xi: f64,
    pub fermi_velocity: f64,
}

impl ModelParams {
    pub fn new(eta: f64) -> Result<Self> {
        if !(eta.is_finite() && eta > 0.0 && eta < PI) {
            return Err(Error::Domain(format!("eta = {eta} is outside (0, pi)")));
        }
        Ok(ModelParams {
            eta,
            delta: eta.cos(),
            xi: 2.0 * (PI - eta) / PI,
            fermi_velocity: FRAC_PI_2 * eta.sin() / eta,
        })
    }

    pub fn from_delta(delta: f64) -> Result<Self> {
        if !(delta.is_finite() && delta > -1.0 && delta < 1.0) {
            return Err(Error::Domain(format!("delta = {delta} is outside (-1, 1)")));
        }
        // acos(0) is π/2 to the last bit, so Δ = 0 lands exactly on the free point.
        Self::new(delta.acos())
    }

    /// η past π/2 is accepted but outside the tested window.
    pub fn experimental(&self) -> bool {
        self.eta > FRAC_PI_2
    }

    pub fn is_free_fermion(&self) -> bool {
        (self.eta - FRAC_PI_2).abs() < 1e-15
    }

    /// 1 − 1/ξ, the recurring asymptotic constant.
    pub fn one_minus_inv_xi(&self) -> f64 {
        1.0 - 1.0 / self.xi
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSpec {
    pub omega_cutoff: f64,
    pub omega_step: f64,
    pub t_cutoff: f64,
    pub abs_tol: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            omega_cutoff: 40.0,
            omega_step: 0.005,
            t_cutoff: 30.0,
            abs_tol: 1e-10,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        let ok = self.omega_cutoff > 0.0 && self.omega_step > 0.0 && self.t_cutoff > 0.0;
        if !ok {
            return Err(Error::Domain("quadrature sizes must be positive".into()));
        }
        let ratio = self.omega_cutoff / self.omega_step;
        if (ratio - ratio.round()).abs() > 1e-6 * ratio || ratio.round() < 1e3 {
            return Err(Error::Domain(format!(
                "omega_cutoff/omega_step = {ratio} must be an integer >= 1000"
            )));
        }
        if !(self.abs_tol >= 1e-12) {
            return Err(Error::Domain(format!("abs_tol = {} below 1e-12", self.abs_tol)));
        }
        Ok(())
    }

    /// Frequency cutoff for an integrand decaying like e^{-rate·ω}; never
    /// below `omega_cutoff`.
    pub fn omega_limit(&self, rate: f64) -> f64 {
        let need = ((1.0 / self.abs_tol).ln() + 3.0) / rate.max(1e-3);
        self.omega_cutoff.max(need).min(OMEGA_CAP)
    }
}

pub(crate) const OMEGA_CAP: f64 = 5000.0;

/// sh(aω)/sh(bω) for b > 0, in exponent-difference form for large |ω|.
pub fn sinh_ratio(a: f64, b: f64, omega: f64) -> f64 {
    let x = omega.abs();
    if x * b < 1e-8 {
        return a / b;
    }
    if x * b < 20.0 {
        return (a * x).sinh() / (b * x).sinh();
    }
    let aa = a.abs();
    a.signum() * ((aa - b) * x).exp() * (-(-2.0 * aa * x).exp_m1()) / (-(-2.0 * b * x).exp_m1())
}

/// φ(t) = 2 arctan(cot(η/2) tanh t).
pub fn bare_phase(t: f64, p: &ModelParams) -> f64 {
    2.0 * (t.tanh() / (0.5 * p.eta).tan()).atan()
}

/// φ₂(t) = 2 arctan(cot η tanh t); identically zero at η = π/2.
pub fn two_particle_phase(t: f64, p: &ModelParams) -> f64 {
    if p.is_free_fermion() {
        return 0.0;
    }
    2.0 * (t.tanh() / p.eta.tan()).atan()
}

/// C(t) = φ′(t).
pub fn bare_energy_density(t: f64, p: &ModelParams) -> f64 {
    let c = (2.0 * t).cosh();
    if !c.is_finite() {
        return 0.0;
    }
    2.0 * p.eta.sin() / (c - p.eta.cos())
}

/// φ₂′(t).
pub fn two_particle_phase_prime(t: f64, p: &ModelParams) -> f64 {
    if p.is_free_fermion() {
        return 0.0;
    }
    let c = (2.0 * t).cosh();
    if !c.is_finite() {
        return 0.0;
    }
    2.0 * (2.0 * p.eta).sin() / (c - (2.0 * p.eta).cos())
}

/// Smooth part of a kernel evaluated on the line Im t = π/2:
/// −2 arctan(tan(a) tanh t). With a = η/2 this is the shifted bare phase,
/// with a = η the shifted two-particle phase.
pub fn shifted_reg(t: f64, a: f64) -> f64 {
    if (a - FRAC_PI_2).abs() < 1e-15 {
        return if t == 0.0 { 0.0 } else { -PI * t.signum() };
    }
    -2.0 * (a.tan() * t.tanh()).atan()
}

/// d/dt of [`shifted_reg`].
pub fn shifted_reg_prime(t: f64, a: f64) -> f64 {
    let c = (2.0 * t).cosh();
    if !c.is_finite() {
        return 0.0;
    }
    -2.0 * (2.0 * a).sin() / (c + (2.0 * a).cos())
}

/// Regularized φ₂(t + iπ/2). The full shifted phase is this plus π·sign(t).
pub fn shifted_two_particle_phase_reg(t: f64, p: &ModelParams) -> f64 {
    shifted_reg(t, p.eta)
}

/// Full principal-branch value of φ₂(t + iπ/2), carrying the 2π jump at 0.
pub fn shifted_two_particle_phase(t: f64, p: &ModelParams) -> f64 {
    let s = if t == 0.0 { 0.0 } else { PI * t.signum() };
    s + shifted_reg(t, p.eta)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelKind {
    Phi2Prime,
    Phi2PrimeShiftedReg,
    RootDensity,
}

/// Closed-form Fourier transforms.
pub fn kernel_fourier(omega: f64, which: KernelKind, p: &ModelParams) -> f64 {
    match which {
        KernelKind::Phi2Prime => 2.0 * PI * sinh_ratio(FRAC_PI_2 - p.eta, FRAC_PI_2, omega),
        KernelKind::Phi2PrimeShiftedReg => -2.0 * PI * sinh_ratio(p.eta, FRAC_PI_2, omega),
        KernelKind::RootDensity => {
            let x = 0.5 * omega.abs() * p.eta;
            if x > 700.0 {
                0.0
            } else {
                0.5 / x.cosh()
            }
        }
    }
}

/// R₀(t) = 1/(2η ch(πt/η)).
pub fn root_density_r0(t: f64, p: &ModelParams) -> f64 {
    let c = (PI * t / p.eta).cosh();
    if !c.is_finite() {
        return 0.0;
    }
    0.5 / (p.eta * c)
}

/// R₀′(t).
pub fn root_density_r0_prime(t: f64, p: &ModelParams) -> f64 {
    let x = PI * t / p.eta;
    -root_density_r0(t, p) * (PI / p.eta) * x.tanh()
}

/// ∫ cos(ωt) f(t) dt over ℝ for an even f, truncated at `t_cutoff`.
/// `pole_distance` is the distance of f's nearest complex singularity from
/// the real axis; panels are sized against it.
pub fn cosine_transform_even<F: Fn(f64) -> f64>(f: F, omega: f64, t_cutoff: f64, pole_distance: f64) -> f64 {
    let width = 0.25_f64
        .min(0.5 * pole_distance)
        .min(if omega.abs() > 0.0 { 1.0 / omega.abs() } else { 1.0 });
    2.0 * composite(0.0, t_cutoff, width, GaussLegendre::g20(), |t| (omega * t).cos() * f(t))
}

/// Nearest imaginary-axis singularity of φ₂′.
pub fn phi2_prime_pole_distance(p: &ModelParams) -> f64 {
    p.eta.min(PI - p.eta)
}

/// Nearest imaginary-axis singularity of the shifted regularized φ₂′.
pub fn shifted_reg_pole_distance(p: &ModelParams) -> f64 {
    (FRAC_PI_2 - p.eta).abs().max(1e-6)
}
