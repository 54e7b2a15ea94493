//! Closed-form O(1/L) interaction energies.
//!
//! Values are carried as coefficients of 1/L; [`InteractionEnergyPrediction::at`]
//! substitutes a concrete chain length.

use crate::dispersion::{velocity, Kind};
use crate::error::Result;
use crate::model_kernels::{ModelParams, QuadratureSpec};
use crate::scattering::{hh_phase, ph_phase, ph_phase_asymptote};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PredictionKind {
    ParticleHole,
    HoleHole,
    ParticleParticle,
    FermiPointHole,
    FermiPointParticleShift,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Edge {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InteractionEnergyPrediction {
    pub kind: PredictionKind,
    pub rapidities: (f64, f64),
    pub edge: Option<Edge>,
    /// Coefficient of 1/L (or of n₀ for the Fermi-point kinds).
    pub coefficient: f64,
    pub components: Option<(f64, f64)>,
    pub warnings: Vec<String>,
}

impl InteractionEnergyPrediction {
    pub fn at(&self, l: usize) -> f64 {
        self.coefficient / l as f64
    }
}

/// ΔE = (v₁ − v₀)Δθ(t′₁ − t₀)/L with ΔE₁ = −v₀Δθ/L and ΔE₂ = v₁Δθ/L.
pub fn ph_interaction(t1_prime: f64, t0: f64, p: &ModelParams, q: &QuadratureSpec) -> Result<InteractionEnergyPrediction> {
    let v1 = velocity(t1_prime, Kind::Particle, p);
    let v0 = velocity(t0, Kind::Hole, p);
    let d = t1_prime - t0;
    let theta = if d == 0.0 {
        // both velocities vanish only at the origin; elsewhere the mean of
        // the one-sided limits is the natural value of the jump
        0.0
    } else {
        ph_phase(d, p, q)?
    };
    let e1 = -v0 * theta;
    let e2 = v1 * theta;
    Ok(InteractionEnergyPrediction {
        kind: PredictionKind::ParticleHole,
        rapidities: (t1_prime, t0),
        edge: None,
        coefficient: e1 + e2,
        components: Some((e1, e2)),
        warnings: Vec::new(),
    })
}

/// As [`ph_interaction`] with a warning when |t₀| exceeds ln L, where the
/// bulk formula crosses over to the Fermi-point regime.
pub fn ph_interaction_at(t1_prime: f64, t0: f64, l: usize, p: &ModelParams, q: &QuadratureSpec) -> Result<InteractionEnergyPrediction> {
    let mut r = ph_interaction(t1_prime, t0, p, q)?;
    if t0.abs() > (l as f64).ln() {
        r.warnings.push(format!("|t0| = {:.3} > ln L = {:.3}: edge crossover not modelled", t0.abs(), (l as f64).ln()));
    }
    Ok(r)
}

/// ΔE_hh = −(v₀₁ − v₀₂)Δθ_hh(t₀₁ − t₀₂)/L.
pub fn hh_interaction(t01: f64, t02: f64, p: &ModelParams, q: &QuadratureSpec) -> Result<InteractionEnergyPrediction> {
    let v01 = velocity(t01, Kind::Hole, p);
    let v02 = velocity(t02, Kind::Hole, p);
    let c = -(v01 - v02) * hh_phase(t01 - t02, p, q)?;
    Ok(InteractionEnergyPrediction {
        kind: PredictionKind::HoleHole,
        rapidities: (t01, t02),
        edge: None,
        coefficient: c,
        components: None,
        warnings: Vec::new(),
    })
}

/// Particle-particle mirror of [`hh_interaction`] with particle velocities. Experimental.
pub fn pp_interaction(t11: f64, t12: f64, p: &ModelParams, q: &QuadratureSpec) -> Result<InteractionEnergyPrediction> {
    let v11 = velocity(t11, Kind::Particle, p);
    let v12 = velocity(t12, Kind::Particle, p);
    let c = -(v11 - v12) * hh_phase(t11 - t12, p, q)?;
    Ok(InteractionEnergyPrediction {
        kind: PredictionKind::ParticleParticle,
        rapidities: (t11, t12),
        edge: None,
        coefficient: c,
        components: None,
        warnings: vec!["particle-particle phase mirrored from hole-hole; experimental".into()],
    })
}

/// Hole energy at a Fermi point: −v π ξ (1 − 1/ξ) n₀, either edge.
pub fn fermi_point_hole_energy(n0: f64, _edge: Edge, p: &ModelParams) -> f64 {
    -p.fermi_velocity * PI * p.xi * p.one_minus_inv_xi() * n0
}

/// Particle root-shift energy with holes at a Fermi point: ±v₁ π (1 − 1/ξ) n₀.
pub fn fermi_point_particle_shift_energy(t1_prime: f64, n0: f64, edge: Edge, p: &ModelParams) -> f64 {
    let s = match edge {
        Edge::Right => 1.0,
        Edge::Left => -1.0,
    };
    s * velocity(t1_prime, Kind::Particle, p) * ph_phase_asymptote(p) * n0
}

/// ΔE₁ from the density-shift route: −(sin η/2)·2π(R₀′(t₀)/R₀(t₀))F̃(t₁ − t₀)·n₀.
/// With t₁ on the shifted line, F̃ continued there is −Δθ/(2π). At t₀ → ±∞
/// this tends to the bulk value −vπ(1 − 1/ξ)n₀ that the Fermi-point result
/// exceeds by ξ.
pub fn density_route_hole_energy(t1_prime: f64, t0: f64, n0: f64, p: &ModelParams, q: &QuadratureSpec) -> Result<f64> {
    let d = t1_prime - t0;
    if d == 0.0 {
        return Ok(0.0);
    }
    // R₀′/R₀ in closed form, safe where R₀ itself underflows
    let ratio = -(PI / p.eta) * (PI * t0 / p.eta).tanh();
    let f_tilde = -ph_phase(d, p, q)? / (2.0 * PI);
    Ok(-0.5 * p.eta.sin() * 2.0 * PI * ratio * f_tilde * n0)
}

/// Bulk formula and Fermi-point formula for ΔE₁ side by side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeComparison {
    pub bulk_limit: f64,
    pub fermi_point: f64,
    pub ratio: f64,
}

pub fn edge_vs_bulk_hole_energy(n0: f64, edge: Edge, p: &ModelParams, q: &QuadratureSpec) -> Result<EdgeComparison> {
    let far = match edge {
        Edge::Right => q.t_cutoff,
        Edge::Left => -q.t_cutoff,
    };
    let bulk = density_route_hole_energy(0.0, far, n0, p, q)?;
    let fp = fermi_point_hole_energy(n0, edge, p);
    Ok(EdgeComparison {
        bulk_limit: bulk,
        fermi_point: fp,
        ratio: if bulk != 0.0 { fp / bulk } else { f64::NAN },
    })
}
