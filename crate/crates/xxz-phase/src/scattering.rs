//! Dressed forward-scattering phase shifts.
//!
//! Δθ′(ω) = −2π(1 − r₂)/(1 + r₁) with r₁ = sh(ω(π/2−η))/sh(ωπ/2) and
//! r₂ = sh(ωη)/sh(ωπ/2). The constant −2π becomes the step −π·sign(t), the
//! slowly decaying 2π·r₂ piece is the transform of −φ̃₂,reg′ and is summed in
//! closed form, and only the remainder 2π·r₁(1−r₂)/(1+r₁) ~ e^{−ηω} is
//! integrated numerically.

use crate::error::{Error, Result};
use crate::model_kernels::{shifted_reg, shifted_reg_prime, sinh_ratio, ModelParams, QuadratureSpec, OMEGA_CAP};
use crate::par::Exec;
use crate::quad::{composite, GaussLegendre};
use std::f64::consts::{FRAC_PI_2, PI};

fn r1(omega: f64, p: &ModelParams) -> f64 {
    sinh_ratio(FRAC_PI_2 - p.eta, FRAC_PI_2, omega)
}

fn r2(omega: f64, p: &ModelParams) -> f64 {
    sinh_ratio(p.eta, FRAC_PI_2, omega)
}

/// F(ω) = φ₂′(ω)/(2π + φ₂′(ω)).
pub fn resolvent_fourier(omega: f64, p: &ModelParams) -> f64 {
    let r = r1(omega, p);
    r / (1.0 + r)
}

/// F(ω) written as sh(ω(π/2−η)) / (2 sh(ω(π−η)/2) ch(ωη/2)).
pub fn resolvent_fourier_hyperbolic(omega: f64, p: &ModelParams) -> f64 {
    let x = omega.abs();
    let half = 0.5 * (PI - p.eta);
    let ratio = sinh_ratio(FRAC_PI_2 - p.eta, half, x);
    let y = 0.5 * x * p.eta;
    if y > 700.0 {
        return 0.0;
    }
    ratio / (2.0 * y.cosh())
}

fn decay_rate(p: &ModelParams) -> f64 {
    p.eta.min(PI - p.eta)
}

fn sin_over_omega(w: f64, t: f64) -> f64 {
    if (w * t).abs() < 1e-8 {
        t
    } else {
        (w * t).sin() / w
    }
}

/// (1/π)∫₀^Ω g(ω) sin(ωt)/ω dω, the odd primitive of the inverse transform of an even g.
fn sine_primitive<G: Fn(f64) -> f64>(g: G, t: f64, omega_max: f64) -> f64 {
    if t == 0.0 {
        return 0.0;
    }
    let width = 0.5_f64.min(1.5 / t.abs());
    composite(0.0, omega_max, width, GaussLegendre::g20(), |w| g(w) * sin_over_omega(w, t)) / PI
}

fn check_tail<G: Fn(f64) -> f64>(g: G, omega_max: f64, rate: f64, q: &QuadratureSpec, what: &str) -> Result<()> {
    let tail = g(omega_max).abs() / (PI * rate * omega_max);
    if tail > q.abs_tol || (omega_max >= OMEGA_CAP && tail > q.abs_tol) {
        return Err(Error::Convergence(format!(
            "{what}: truncation at omega={omega_max:.1} leaves {tail:.2e} > {:.1e}",
            q.abs_tol
        )));
    }
    Ok(())
}

/// F̃(t) = ∫₀ᵗ F, the smooth odd primitive with F̃(±∞) = ±(1−1/ξ)/2.
pub fn resolvent_primitive(t: f64, p: &ModelParams, q: &QuadratureSpec) -> Result<f64> {
    if p.is_free_fermion() {
        return Ok(0.0);
    }
    let rate = decay_rate(p);
    let om = q.omega_limit(rate);
    let g = |w: f64| resolvent_fourier(w, p);
    check_tail(g, om, rate, q, "resolvent primitive")?;
    Ok(sine_primitive(g, t, om))
}

/// Δθ′(ω) = −π(sh(ωπ/2) − sh(ωη)) / (sh(ω(π−η)/2) ch(ωη/2)).
pub fn ph_phase_derivative_fourier(omega: f64, p: &ModelParams) -> f64 {
    -2.0 * PI * (1.0 - r2(omega, p)) / (1.0 + r1(omega, p))
}

/// Remainder integrated numerically: Δθ′(ω) + 2π − 2π·r₂(ω).
fn ph_remainder(omega: f64, p: &ModelParams) -> f64 {
    let a = r1(omega, p);
    2.0 * PI * a * (1.0 - r2(omega, p)) / (1.0 + a)
}

fn require_ph_window(p: &ModelParams) -> Result<()> {
    if p.eta > FRAC_PI_2 {
        return Err(Error::Domain(format!(
            "particle-hole phase needs eta <= pi/2 (got {}); the transform grows above it",
            p.eta
        )));
    }
    Ok(())
}

/// Continuous part Δθ(t) + π·sign(t); zero at t = 0.
pub fn ph_phase_smooth(t: f64, p: &ModelParams, q: &QuadratureSpec) -> Result<f64> {
    require_ph_window(p)?;
    if p.is_free_fermion() {
        // −sreg(t, π/2) = π sign(t) exactly cancels the step
        return Ok(if t == 0.0 { 0.0 } else { PI * t.signum() });
    }
    let rate = p.eta;
    let om = q.omega_limit(rate);
    let g = |w: f64| ph_remainder(w, p);
    check_tail(g, om, rate, q, "phase shift")?;
    Ok(-shifted_reg(t, p.eta) + sine_primitive(g, t, om))
}

/// Particle-hole phase shift Δθ(t), t = t′₁ − t₀ ≠ 0.
pub fn ph_phase(t: f64, p: &ModelParams, q: &QuadratureSpec) -> Result<f64> {
    if t == 0.0 {
        return Err(Error::Domain("ph_phase is discontinuous at t = 0; use ph_phase_one_sided".into()));
    }
    Ok(ph_phase_smooth(t, p, q)? - PI * t.signum())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Minus,
    Plus,
}

/// Δθ(0∓) = ±π.
pub fn ph_phase_one_sided(side: Side) -> f64 {
    match side {
        Side::Minus => PI,
        Side::Plus => -PI,
    }
}

/// ∓π(1 − 1/ξ) at t → ±∞.
pub fn ph_phase_asymptote(p: &ModelParams) -> f64 {
    PI * p.one_minus_inv_xi()
}

/// Slope Δθ′(0⁺) of the continuous part; no closed form is claimed.
pub fn ph_phase_slope_at_origin(p: &ModelParams, q: &QuadratureSpec) -> Result<f64> {
    require_ph_window(p)?;
    if p.is_free_fermion() {
        return Ok(0.0);
    }
    let om = q.omega_limit(p.eta);
    let tail = composite(0.0, om, 0.5, GaussLegendre::g20(), |w| ph_remainder(w, p)) / PI;
    Ok(-shifted_reg_prime(0.0, p.eta) + tail)
}

/// Hole-hole phase shift Δθ_hh(t) = −2π F̃(t).
pub fn hh_phase(t: f64, p: &ModelParams, q: &QuadratureSpec) -> Result<f64> {
    Ok(-2.0 * PI * resolvent_primitive(t, p, q)?)
}

/// Particle-particle phase, mirrored from the hole-hole one. Experimental.
pub fn pp_phase(t: f64, p: &ModelParams, q: &QuadratureSpec) -> Result<f64> {
    hh_phase(t, p, q)
}

/// Backflow RW(t) = −F̃(t − t₀) on the full line for the source −φ₂(t − t₀).
pub fn backflow_full_line(t: f64, t0: f64, p: &ModelParams, q: &QuadratureSpec) -> Result<f64> {
    Ok(-resolvent_primitive(t - t0, p, q)?)
}

/// Full-line backflow for the shifted-root source φ₂(t − t′₁ − iπ/2):
/// RW(t) = −Δθ(t − t′₁)/(2π).
pub fn backflow_shifted_source(t: f64, t1_prime: f64, p: &ModelParams, q: &QuadratureSpec) -> Result<f64> {
    let d = t - t1_prime;
    if d == 0.0 {
        return Ok(0.0);
    }
    Ok(-ph_phase(d, p, q)? / (2.0 * PI))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PhaseKind {
    ParticleHole,
    HoleHole,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PhaseShiftTable {
    pub kind: PhaseKind,
    pub grid: Vec<f64>,
    pub smooth_values: Vec<f64>,
    pub jump_magnitude: f64,
    pub asymptote: f64,
    pub params: ModelParams,
}

impl PhaseShiftTable {
    pub fn build(kind: PhaseKind, p: &ModelParams, q: &QuadratureSpec, t_max: f64, exec: Exec) -> Result<Self> {
        q.validate()?;
        if !(t_max > 0.0) {
            return Err(Error::Domain(format!("t_max = {t_max} must be positive")));
        }
        let grid = table_grid(t_max.min(q.t_cutoff));
        let vals: Vec<Result<f64>> = exec.map(&grid, |&t| match kind {
            PhaseKind::ParticleHole => ph_phase_smooth(t, p, q),
            PhaseKind::HoleHole => hh_phase(t, p, q),
        });
        let smooth_values = vals.into_iter().collect::<Result<Vec<_>>>()?;
        Ok(PhaseShiftTable {
            kind,
            grid,
            smooth_values,
            jump_magnitude: match kind {
                PhaseKind::ParticleHole => -2.0 * PI,
                PhaseKind::HoleHole => 0.0,
            },
            asymptote: PI * p.one_minus_inv_xi(),
            params: *p,
        })
    }

    pub fn total(&self, i: usize) -> f64 {
        self.smooth_values[i] + 0.5 * self.jump_magnitude * self.grid[i].signum()
    }

    pub fn totals(&self) -> Vec<f64> {
        (0..self.grid.len()).map(|i| self.total(i)).collect()
    }

    /// Largest |Δθ(t) + Δθ(−t)| over mirrored grid pairs.
    pub fn oddness_defect(&self) -> f64 {
        let n = self.grid.len();
        (0..n / 2)
            .map(|i| (self.total(i) + self.total(n - 1 - i)).abs())
            .fold(0.0, f64::max)
    }
}

/// Symmetric grid without t = 0: steps 1e-3 growing geometrically to |t| = 1,
/// then uniform 0.05.
pub fn table_grid(t_max: f64) -> Vec<f64> {
    let mut pos = Vec::new();
    let mut t = 1e-3;
    while t < 1.0 && t <= t_max {
        pos.push(t);
        t += (0.1 * t).max(1e-3);
    }
    let mut u = 1.0;
    while u <= t_max + 1e-12 {
        pos.push(u);
        u += 0.05;
    }
    let mut grid: Vec<f64> = pos.iter().rev().map(|x| -x).collect();
    grid.extend(pos);
    grid
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EffectiveCoupling {
    pub delta_phase: f64,
    pub velocity_gap: f64,
    pub coupling: f64,
}

/// Contact coupling U reproducing the phase δ = 2 arctan(U/(2Δv)).
pub fn effective_coupling(delta_phase: f64, velocity_gap: f64) -> Result<EffectiveCoupling> {
    if !(delta_phase.abs() < PI) {
        return Err(Error::Domain(format!("|delta| = {} must be below pi", delta_phase.abs())));
    }
    if velocity_gap == 0.0 || !velocity_gap.is_finite() {
        return Err(Error::Domain("velocity gap must be finite and nonzero".into()));
    }
    Ok(EffectiveCoupling {
        delta_phase,
        velocity_gap,
        coupling: 2.0 * velocity_gap * (0.5 * delta_phase).tan(),
    })
}

impl EffectiveCoupling {
    pub fn phase_from_coupling(&self) -> f64 {
        2.0 * (self.coupling / (2.0 * self.velocity_gap)).atan()
    }
}
