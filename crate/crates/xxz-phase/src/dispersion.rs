//! Dressed energy, momentum and velocity of the hole and of the shifted particle.

use crate::error::{Error, Result};
use crate::model_kernels::{root_density_r0, ModelParams};
use crate::scattering::Side;
use std::f64::consts::{FRAC_PI_2, PI};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Hole,
    Particle,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DispersionPoint {
    pub rapidity: f64,
    pub kind: Kind,
    pub momentum: f64,
    pub energy: f64,
    pub velocity: f64,
}

fn scaled(t: f64, p: &ModelParams) -> f64 {
    PI * t / p.eta
}

/// Total hole momentum p₀ = 2 arctan(e^{πt/η}) − π/2.
pub fn hole_momentum(t0: f64, p: &ModelParams) -> f64 {
    // 2 arctan(e^x) − π/2 = gd(x) = arctan(sinh x)
    scaled(t0, p).sinh().atan()
}

/// Hole momentum measured from the left Fermi point, in (0, π).
pub fn hole_momentum_fermi_relative(t0: f64, p: &ModelParams) -> f64 {
    hole_momentum(t0, p) + FRAC_PI_2
}

/// Total particle momentum: 3π/2 − 2 arctan(e^{πt/η}) for t > 0 and the odd
/// image for t < 0; jumps by 2π across t = 0.
pub fn particle_momentum(t1_prime: f64, p: &ModelParams) -> Result<f64> {
    if t1_prime == 0.0 {
        return Err(Error::Domain("particle momentum jumps at t = 0; use particle_momentum_one_sided".into()));
    }
    let x = scaled(t1_prime.abs(), p);
    // 3π/2 − 2 arctan(e^x) = π − gd(x)
    Ok(t1_prime.signum() * (PI - x.sinh().atan()))
}

pub fn particle_momentum_one_sided(side: Side) -> f64 {
    match side {
        Side::Minus => -PI,
        Side::Plus => PI,
    }
}

/// ε(t) = (sin η/2)·2π R₀(t) = v sech(πt/η), same for hole and particle.
pub fn dressed_energy_rapidity(t: f64, _kind: Kind, p: &ModelParams) -> f64 {
    p.eta.sin() * PI * root_density_r0(t, p)
}

/// ε(p) = v sin p for p ∈ (0, π) measured from the Fermi point.
pub fn dressed_energy_momentum(momentum: f64, p: &ModelParams) -> Result<f64> {
    if !(momentum > 0.0 && momentum < PI) {
        return Err(Error::Domain(format!("momentum {momentum} outside (0, pi)")));
    }
    Ok(p.fermi_velocity * momentum.sin())
}

/// dε/dp along the parametric curve: hole −v tanh(πt/η), particle +v tanh(πt/η).
pub fn velocity(t: f64, kind: Kind, p: &ModelParams) -> f64 {
    let v = p.fermi_velocity * scaled(t, p).tanh();
    match kind {
        Kind::Hole => -v,
        Kind::Particle => v,
    }
}

pub fn dispersion_point(t: f64, kind: Kind, p: &ModelParams) -> Result<DispersionPoint> {
    let momentum = match kind {
        Kind::Hole => hole_momentum(t, p),
        Kind::Particle => particle_momentum(t, p)?,
    };
    Ok(DispersionPoint {
        rapidity: t,
        kind,
        momentum,
        energy: dressed_energy_rapidity(t, kind, p),
        velocity: velocity(t, kind, p),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p3() -> ModelParams {
        ModelParams::new(PI / 3.0).unwrap()
    }

    #[test]
    fn hole_momentum_examples() {
        let p = p3();
        assert_eq!(hole_momentum(0.0, &p), 0.0);
        assert!((hole_momentum(40.0, &p) - FRAC_PI_2).abs() < 1e-15);
        let x: f64 = 0.37;
        let closed = 2.0 * (PI * x / p.eta).exp().atan() - FRAC_PI_2;
        assert!((hole_momentum(x, &p) - closed).abs() < 1e-15);
        let h = 1e-5;
        for t in [-1.2, 0.0, 0.8] {
            let d = (hole_momentum(t + h, &p) - hole_momentum(t - h, &p)) / (2.0 * h);
            assert!((d - 2.0 * PI * root_density_r0(t, &p)).abs() < 1e-8);
        }
    }

    #[test]
    fn particle_momentum_examples() {
        let p = p3();
        assert!((particle_momentum(1e-14, &p).unwrap() - PI).abs() < 1e-12);
        assert!((particle_momentum(40.0, &p).unwrap() - FRAC_PI_2).abs() < 1e-15);
        let x: f64 = 0.37;
        let closed = 1.5 * PI - 2.0 * (PI * x / p.eta).exp().atan();
        assert!((particle_momentum(x, &p).unwrap() - closed).abs() < 1e-14);
        let jump = particle_momentum_one_sided(Side::Plus) - particle_momentum_one_sided(Side::Minus);
        assert_eq!(jump, 2.0 * PI);
        assert!((particle_momentum(-1e-14, &p).unwrap() + PI).abs() < 1e-12);
        assert!(particle_momentum(0.0, &p).is_err());
        // defining relation tan(−p₁/2 + π/4 + (π/2)sign t) = e^{πt/η}
        for t in [-2.0, -0.4, 0.3, 1.9] {
            let p1 = particle_momentum(t, &p).unwrap();
            let lhs = (-0.5 * p1 + 0.25 * PI + FRAC_PI_2 * f64::signum(t)).tan();
            assert!((lhs - (PI * t / p.eta).exp()).abs() < 1e-10 * lhs.abs());
        }
    }

    #[test]
    fn energy_examples() {
        let p = p3();
        let e0 = dressed_energy_rapidity(0.0, Kind::Hole, &p);
        assert!((e0 - 1.299_038_105_676_658).abs() < 1e-12);
        assert!((e0 - p.fermi_velocity).abs() < 1e-15);
        assert_eq!(dressed_energy_rapidity(8.0, Kind::Particle, &p), dressed_energy_rapidity(-8.0, Kind::Particle, &p));
        assert!(dressed_energy_rapidity(400.0, Kind::Hole, &p) < 1e-300);
        assert!((dressed_energy_momentum(FRAC_PI_2, &p).unwrap() - 1.299_038_105_676_658).abs() < 1e-12);
        assert!(dressed_energy_momentum(1e-12, &p).unwrap() < 1e-11);
        assert!(dressed_energy_momentum(0.0, &p).is_err());
        assert!(dressed_energy_momentum(PI, &p).is_err());
    }

    #[test]
    fn velocity_examples() {
        let p = p3();
        assert_eq!(velocity(0.0, Kind::Hole, &p), 0.0);
        assert_eq!(velocity(0.0, Kind::Particle, &p), 0.0);
        assert!((velocity(-40.0, Kind::Hole, &p) - 1.299_038_105_676_658).abs() < 1e-12);
        let h = 1e-5;
        for t in [-1.5, -0.2, 0.6, 2.0] {
            let dh = (dressed_energy_rapidity(t + h, Kind::Hole, &p) - dressed_energy_rapidity(t - h, Kind::Hole, &p))
                / (hole_momentum(t + h, &p) - hole_momentum(t - h, &p));
            assert!((dh - velocity(t, Kind::Hole, &p)).abs() < 1e-8);
            let dp = (dressed_energy_rapidity(t + h, Kind::Particle, &p) - dressed_energy_rapidity(t - h, Kind::Particle, &p))
                / (particle_momentum(t + h, &p).unwrap() - particle_momentum(t - h, &p).unwrap());
            assert!((dp - velocity(t, Kind::Particle, &p)).abs() < 1e-8);
        }
    }

    #[test]
    fn free_fermion_band() {
        let p = ModelParams::new(FRAC_PI_2).unwrap();
        assert!((p.fermi_velocity - 1.0).abs() < 1e-15);
        for t in [-3.0, -0.5, 0.0, 0.25, 2.0] {
            let k = hole_momentum_fermi_relative(t, &p);
            let e = dressed_energy_rapidity(t, Kind::Hole, &p);
            assert!((e - k.sin()).abs() < 1e-12);
        }
    }
}
