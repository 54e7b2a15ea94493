//! Finite-L Bethe equations for the ground state, the particle–hole state
//! and the two-hole state, and the harness that extracts the O(1/L)
//! interaction energy from them.
//!
//! Real roots obey Lφ(t_α) − Σ_{γ≠α}φ₂(t_α − t_γ) − σ(t_α − t′₁) = 2πJ_α where
//! σ is the regularized shifted kernel (absent without a shifted root). The
//! root t₁ = t′₁ + iπ/2 obeys L·σ_{η/2}(t′₁) − Σ_γ σ(t′₁ − t_γ) = 2πJ₁; the
//! branch jumps of the principal logarithms are absorbed into the J labels.
//!
//! With M = L/2 magnons the particle–hole state has M − 1 real roots whose
//! labels fill the window {−M/2, …, M/2} except for two vacancies. One is the
//! hole; the other carries the particle, whose dressed energy is read off the
//! counting function at that vacancy.

use crate::dispersion::{dressed_energy_rapidity, Kind};
use crate::error::{Error, Result};
use crate::interaction::{hh_interaction, ph_interaction};
use crate::model_kernels::{
    bare_energy_density, bare_phase, shifted_reg, shifted_reg_prime, two_particle_phase, two_particle_phase_prime,
    ModelParams, QuadratureSpec,
};
use crate::par::Exec;
use nalgebra::{DMatrix, DVector};
use std::f64::consts::{FRAC_PI_2, PI};

pub const DEFAULT_TOL: f64 = 1e-10;
pub const MAX_DENSE_L: usize = 4096;
const MAX_NEWTON: usize = 100;
const SHIFTED_LABELS: [f64; 5] = [0.0, -1.0, 1.0, -2.0, 2.0];

#[derive(Debug, Clone, PartialEq)]
pub struct RootConfiguration {
    pub length: usize,
    /// Real roots plus the shifted root, if any.
    pub magnon_count: usize,
    /// Labels of the real roots, ascending.
    pub quantum_numbers: Vec<f64>,
    pub real_roots: Vec<f64>,
    /// t′₁ of the root t′₁ + iπ/2 and its label J₁.
    pub shifted_root: Option<(f64, f64)>,
    /// Unoccupied labels of the window.
    pub vacancies: Vec<f64>,
    pub residual: f64,
    pub energy: f64,
    pub params: ModelParams,
}

fn gd_inv(z: f64) -> f64 {
    z.tan().asinh()
}

/// Rapidity with asymptotic counting value z: inverts gd(πt/η) = z.
fn p0_inverse(z: f64, p: &ModelParams) -> f64 {
    let lim = FRAC_PI_2 - 1e-12;
    p.eta / PI * gd_inv(z.clamp(-lim, lim))
}

/// E = LΔ/4 − (sin η/2)[Σ C(t_α) + σ′_{η/2}(t′₁)].
pub fn bethe_energy(l: usize, real: &[f64], shifted: Option<f64>, p: &ModelParams) -> f64 {
    let c: f64 = real.iter().map(|&t| bare_energy_density(t, p)).sum();
    let s = shifted.map_or(0.0, |t| shifted_reg_prime(t, 0.5 * p.eta));
    l as f64 * p.delta / 4.0 - 0.5 * p.eta.sin() * (c + s)
}

/// Window {lo, lo+1, …, lo+count−1} with lo = −(count−1)/2.
fn window(count: usize) -> Vec<f64> {
    let lo = -0.5 * (count as f64 - 1.0);
    (0..count).map(|i| lo + i as f64).collect()
}

fn on_window(j: f64, w: &[f64]) -> bool {
    w.iter().any(|&x| (x - j).abs() < 1e-9)
}

struct System<'a> {
    l: f64,
    labels: &'a [f64],
    shifted_label: Option<f64>,
    p: &'a ModelParams,
}

impl System<'_> {
    fn n(&self) -> usize {
        self.labels.len() + usize::from(self.shifted_label.is_some())
    }

    fn eval(&self, x: &[f64]) -> (DVector<f64>, DMatrix<f64>) {
        let p = self.p;
        let nr = self.labels.len();
        let n = self.n();
        let mut f = DVector::zeros(n);
        let mut jac = DMatrix::zeros(n, n);
        let ts = self.shifted_label.map(|_| x[nr]);
        for a in 0..nr {
            let ta = x[a];
            let mut fa = self.l * bare_phase(ta, p) - 2.0 * PI * self.labels[a];
            let mut da = self.l * bare_energy_density(ta, p);
            for b in 0..nr {
                if b != a {
                    let d = ta - x[b];
                    fa -= two_particle_phase(d, p);
                    let k = two_particle_phase_prime(d, p);
                    da -= k;
                    jac[(a, b)] = k;
                }
            }
            if let Some(t1) = ts {
                let d = ta - t1;
                fa -= shifted_reg(d, p.eta);
                let k = shifted_reg_prime(d, p.eta);
                da -= k;
                jac[(a, nr)] = k;
            }
            f[a] = fa;
            jac[(a, a)] = da;
        }
        if let (Some(t1), Some(j1)) = (ts, self.shifted_label) {
            let mut fs = self.l * shifted_reg(t1, 0.5 * p.eta) - 2.0 * PI * j1;
            let mut ds = self.l * shifted_reg_prime(t1, 0.5 * p.eta);
            for b in 0..nr {
                let d = t1 - x[b];
                fs -= shifted_reg(d, p.eta);
                let k = shifted_reg_prime(d, p.eta);
                ds -= k;
                jac[(nr, b)] = k;
            }
            f[nr] = fs;
            jac[(nr, nr)] = ds;
        }
        (f, jac)
    }
}

fn max_abs(v: &DVector<f64>) -> f64 {
    v.iter().fold(0.0, |m, x| m.max(x.abs()))
}

/// Damped Newton from `guess`; returns roots and the final defect.
fn newton(sys: &System, guess: Vec<f64>, tol: f64) -> Result<(Vec<f64>, f64)> {
    let mut x = DVector::from_vec(guess);
    let (mut f, mut jac) = sys.eval(x.as_slice());
    for _ in 0..MAX_NEWTON {
        let r = max_abs(&f);
        if r < tol {
            return Ok((x.iter().copied().collect(), r));
        }
        let step = jac
            .clone()
            .lu()
            .solve(&(-&f))
            .ok_or_else(|| Error::Singular("Bethe Jacobian is singular".into()))?;
        let n0 = f.norm();
        let mut lam = 1.0;
        loop {
            let trial = &x + &step * lam;
            let (ft, jt) = sys.eval(trial.as_slice());
            if ft.iter().all(|v| v.is_finite()) && ft.norm() < (1.0 - 1e-4 * lam) * n0 {
                x = trial;
                f = ft;
                jac = jt;
                break;
            }
            lam *= 0.5;
            if lam < 1e-6 {
                return Err(Error::Convergence(format!("line search stalled at defect {r:.3e}")));
            }
        }
    }
    let r = max_abs(&f);
    if r < tol {
        Ok((x.iter().copied().collect(), r))
    } else {
        Err(Error::Convergence(format!("no convergence after {MAX_NEWTON} Newton steps, defect {r:.3e}")))
    }
}

fn check_order(roots: &[f64]) -> Result<()> {
    for i in 1..roots.len() {
        if !(roots[i] > roots[i - 1]) {
            return Err(Error::Collision(i - 1, i));
        }
    }
    Ok(())
}

fn check_length(l: usize) -> Result<()> {
    if l < 4 || l % 2 == 1 || l > MAX_DENSE_L {
        return Err(Error::Domain(format!("L must be even and in [4, {MAX_DENSE_L}], got {l}")));
    }
    Ok(())
}

/// Real-root state with the given labels.
pub fn real_state(l: usize, labels: &[f64], vacancies: Vec<f64>, p: &ModelParams, tol: f64) -> Result<RootConfiguration> {
    let lf = l as f64;
    let guess: Vec<f64> = labels.iter().map(|&j| p0_inverse(2.0 * PI * j / (lf + 2.0), p)).collect();
    let sys = System { l: lf, labels, shifted_label: None, p };
    let (roots, residual) = newton(&sys, guess, tol)?;
    check_order(&roots)?;
    Ok(RootConfiguration {
        length: l,
        magnon_count: roots.len(),
        quantum_numbers: labels.to_vec(),
        energy: bethe_energy(l, &roots, None, p),
        real_roots: roots,
        shifted_root: None,
        vacancies,
        residual,
        params: *p,
    })
}

/// M = L/2, labels −(M−1)/2, …, (M−1)/2.
pub fn ground_state(l: usize, p: &ModelParams) -> Result<RootConfiguration> {
    check_length(l)?;
    real_state(l, &window(l / 2), Vec::new(), p, DEFAULT_TOL)
}

/// Window of the particle–hole labels: M + 1 slots.
pub fn particle_hole_window(l: usize) -> Vec<f64> {
    window(l / 2 + 1)
}

/// Window of the two-hole labels: M′ + 2 = L/2 + 1 slots.
pub fn two_hole_window(l: usize) -> Vec<f64> {
    window(l / 2 + 1)
}

/// Particle–hole state with the hole at label `j_hole` and the particle
/// carried by the vacancy `j_particle`.
pub fn particle_hole_state(l: usize, p: &ModelParams, j_hole: f64, j_particle: f64) -> Result<RootConfiguration> {
    check_length(l)?;
    let w = particle_hole_window(l);
    for j in [j_hole, j_particle] {
        if !on_window(j, &w) {
            return Err(Error::Domain(format!("label {j} not in the window {}..{}", w[0], w[w.len() - 1])));
        }
    }
    if (j_hole - j_particle).abs() < 1e-9 {
        return Err(Error::Domain("hole and particle labels coincide".into()));
    }
    let labels: Vec<f64> = w.iter().copied().filter(|&j| (j - j_hole).abs() > 1e-9 && (j - j_particle).abs() > 1e-9).collect();
    let vac = vec![j_hole, j_particle];
    if p.is_free_fermion() {
        return free_particle_hole(l, p, labels, j_hole, j_particle);
    }
    let lf = l as f64;
    let base: Vec<f64> = labels.iter().map(|&j| p0_inverse(2.0 * PI * j / (lf + 2.0), p)).collect();
    let mid = 0.5 * (p0_inverse(2.0 * PI * j_hole / (lf + 2.0), p) + p0_inverse(2.0 * PI * j_particle / (lf + 2.0), p));
    let mut last = None;
    for &j1 in &SHIFTED_LABELS {
        for g in [0.0, mid] {
            let sys = System { l: lf, labels: &labels, shifted_label: Some(j1), p };
            let mut guess = base.clone();
            guess.push(g);
            match newton(&sys, guess, DEFAULT_TOL) {
                Ok((mut x, residual)) => {
                    let t1 = x.pop().unwrap();
                    check_order(&x)?;
                    return Ok(RootConfiguration {
                        length: l,
                        magnon_count: x.len() + 1,
                        quantum_numbers: labels,
                        energy: bethe_energy(l, &x, Some(t1), p),
                        real_roots: x,
                        shifted_root: Some((t1, j1)),
                        vacancies: vac,
                        residual,
                        params: *p,
                    });
                }
                Err(e) => last = Some(e),
            }
        }
    }
    Err(last.unwrap_or_else(|| Error::Convergence("no shifted-root label converged".into())))
}

/// At Δ = 0 the principal-branch equations decouple: real roots sit at
/// Lφ(t) = 2π(J ∓ 1/2) on either side of the particle vacancy and the
/// shifted root lands on the real rapidity next to it.
fn free_particle_hole(l: usize, p: &ModelParams, labels: Vec<f64>, j_hole: f64, j_particle: f64) -> Result<RootConfiguration> {
    let lf = l as f64;
    let inv = |y: f64| ((0.5 * p.eta).tan() * (0.5 * y).tan()).atanh();
    let roots: Vec<f64> = labels
        .iter()
        .map(|&j| {
            let n = if j < j_particle { j + 0.5 } else { j - 0.5 };
            inv(2.0 * PI * n / lf)
        })
        .collect();
    check_order(&roots)?;
    let below = labels.iter().filter(|&&j| j < j_particle).count() as f64;
    let t1 = inv(PI * (2.0 * below - labels.len() as f64) / lf);
    // principal-form defects
    let mut residual: f64 = 0.0;
    for (&t, &j) in roots.iter().zip(&labels) {
        let n = if j < j_particle { j + 0.5 } else { j - 0.5 };
        residual = residual.max((lf * bare_phase(t, p) - 2.0 * PI * n).abs());
    }
    Ok(RootConfiguration {
        length: l,
        magnon_count: roots.len() + 1,
        quantum_numbers: labels,
        energy: bethe_energy(l, &roots, Some(t1), p),
        real_roots: roots,
        shifted_root: Some((t1, 0.0)),
        vacancies: vec![j_hole, j_particle],
        residual,
        params: *p,
    })
}

/// M′ = L/2 − 1 real roots with vacancies at the two labels.
pub fn two_hole_state(l: usize, p: &ModelParams, holes: (f64, f64)) -> Result<RootConfiguration> {
    check_length(l)?;
    let w = two_hole_window(l);
    for j in [holes.0, holes.1] {
        if !on_window(j, &w) {
            return Err(Error::Domain(format!("label {j} not in the window {}..{}", w[0], w[w.len() - 1])));
        }
    }
    if (holes.0 - holes.1).abs() < 1e-9 {
        return Err(Error::Domain("hole labels coincide".into()));
    }
    let labels: Vec<f64> = w.iter().copied().filter(|&j| (j - holes.0).abs() > 1e-9 && (j - holes.1).abs() > 1e-9).collect();
    real_state(l, &labels, vec![holes.0, holes.1], p, DEFAULT_TOL)
}

impl RootConfiguration {
    /// ẑ(x) = Lφ(x) − Σ_γ φ₂(x − t_γ) − σ(x − t′₁), equal to 2πJ at every root.
    pub fn counting(&self, x: f64) -> f64 {
        let p = &self.params;
        let mut z = self.length as f64 * bare_phase(x, p);
        for &t in &self.real_roots {
            z -= two_particle_phase(x - t, p);
        }
        if let Some((t1, _)) = self.shifted_root {
            z -= shifted_reg(x - t1, p.eta);
        }
        z
    }

    /// Largest defect of the equations at the stored roots.
    pub fn bethe_residual(&self) -> f64 {
        if self.params.is_free_fermion() && self.shifted_root.is_some() {
            return self.residual;
        }
        let labels = &self.quantum_numbers;
        let sys = System {
            l: self.length as f64,
            labels,
            shifted_label: self.shifted_root.map(|s| s.1),
            p: &self.params,
        };
        let mut x = self.real_roots.clone();
        if let Some((t1, _)) = self.shifted_root {
            x.push(t1);
        }
        max_abs(&sys.eval(&x).0)
    }

    /// Total momentum πN_real − 2π(ΣJ + J₁)/L, in [0, 2π).
    pub fn momentum_from_labels(&self) -> f64 {
        let s: f64 = self.quantum_numbers.iter().sum::<f64>() + self.shifted_root.map_or(0.0, |s| s.1);
        (PI * self.real_roots.len() as f64 - 2.0 * PI * s / self.length as f64).rem_euclid(2.0 * PI)
    }

    /// Σ(π − φ(t_α)) − σ_{η/2}(t′₁), in [0, 2π).
    pub fn momentum_from_roots(&self) -> f64 {
        let p = &self.params;
        let mut s: f64 = self.real_roots.iter().map(|&t| PI - bare_phase(t, p)).sum();
        if let Some((t1, _)) = self.shifted_root {
            s -= shifted_reg(t1, 0.5 * p.eta);
        }
        s.rem_euclid(2.0 * PI)
    }
}

/// Solves ẑ(t) = 2πJ on a bracket after checking that ẑ is monotone there.
fn invert_counting<F: Fn(f64) -> f64>(z: F, target: f64) -> Result<f64> {
    let mut b = 1.0;
    while z(-b) > target || z(b) < target {
        b *= 2.0;
        if b > 64.0 {
            return Err(Error::Bracket(format!("no bracket for counting value {target:.6}")));
        }
    }
    let samples: Vec<f64> = (0..=64).map(|i| z(-b + 2.0 * b * i as f64 / 64.0)).collect();
    if samples.windows(2).any(|w| w[1] < w[0] - 1e-12 * w[0].abs().max(1.0)) {
        return Err(Error::Bracket("counting function not monotone on the bracket".into()));
    }
    let (mut lo, mut hi) = (-b, b);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        if z(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Rapidity of the vacancy `j` from the state's own counting function.
pub fn hole_rapidity(config: &RootConfiguration, j: f64) -> Result<f64> {
    invert_counting(|x| config.counting(x), 2.0 * PI * j)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExcitationSpec {
    /// Labels in the particle–hole window.
    ParticleHole { j_hole: f64, j_particle: f64 },
    /// Labels in the two-hole window.
    TwoHole { j1: f64, j2: f64 },
}

fn snap(index: f64, w: &[f64]) -> f64 {
    let i = index.round().clamp(0.0, (w.len() - 1) as f64) as usize;
    w[i]
}

/// Hole at J = −M/2 + f_h·M, particle vacancy at J = M/2 − f_p·M, both
/// rounded onto the window.
pub fn particle_hole_from_fractions(l: usize, hole_frac: f64, particle_frac: f64) -> Result<ExcitationSpec> {
    check_fraction(hole_frac)?;
    check_fraction(particle_frac)?;
    let w = particle_hole_window(l);
    let m = (l / 2) as f64;
    let j_hole = snap(hole_frac * m, &w);
    let j_particle = snap(m - particle_frac * m, &w);
    if j_hole == j_particle {
        return Err(Error::Domain(format!("fractions put hole and particle on the same label at L={l}")));
    }
    Ok(ExcitationSpec::ParticleHole { j_hole, j_particle })
}

/// J = −I_max + f·2I_max for both holes, I_max = L/4.
pub fn two_hole_from_fractions(l: usize, f1: f64, f2: f64) -> Result<ExcitationSpec> {
    check_fraction(f1)?;
    check_fraction(f2)?;
    let w = two_hole_window(l);
    let span = (w.len() - 1) as f64;
    let (j1, j2) = (snap(f1 * span, &w), snap(f2 * span, &w));
    if j1 == j2 {
        return Err(Error::Domain(format!("fractions put both holes on the same label at L={l}")));
    }
    Ok(ExcitationSpec::TwoHole { j1, j2 })
}

fn check_fraction(f: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&f) {
        return Err(Error::Domain(format!("fraction {f} outside [0, 1]")));
    }
    Ok(())
}

/// Labels whose ground-state counting values sit nearest to the requested
/// particle and hole rapidities.
pub fn particle_hole_from_rapidities(l: usize, p: &ModelParams, t1_target: f64, t0_target: f64) -> Result<ExcitationSpec> {
    let g = ground_state(l, p)?;
    let w = particle_hole_window(l);
    let pick = |t: f64| {
        let z = g.counting(t) / (2.0 * PI);
        snap(z - w[0], &w)
    };
    let j_hole = pick(t0_target);
    let mut j_particle = pick(t1_target);
    if j_particle == j_hole {
        j_particle = if j_hole < w[w.len() - 1] { j_hole + 1.0 } else { j_hole - 1.0 };
    }
    Ok(ExcitationSpec::ParticleHole { j_hole, j_particle })
}

#[derive(Debug, Clone, PartialEq)]
pub struct InteractionEnergyReport {
    pub length: usize,
    pub params: ModelParams,
    pub spec: ExcitationSpec,
    pub e_full: f64,
    pub e_ground: f64,
    /// (particle, hole) for the particle–hole state, (hole 1, hole 2) otherwise.
    pub rapidities: (f64, f64),
    pub shifted_root: Option<f64>,
    pub dressed_sum: f64,
    pub measured: f64,
    pub predicted: f64,
    pub relative_deviation: f64,
    /// L·Σ[ε(t_ref) − ε(t)] with t_ref read off the ground-state counting
    /// function at the same labels: the energy carried by the rapidity shifts.
    pub backflow_shift: f64,
    pub residual: f64,
}

impl InteractionEnergyReport {
    pub fn scaled_measured(&self) -> f64 {
        self.length as f64 * self.measured
    }
    pub fn scaled_predicted(&self) -> f64 {
        self.length as f64 * self.predicted
    }
}

pub fn measure_interaction_energy(l: usize, p: &ModelParams, spec: ExcitationSpec, q: &QuadratureSpec) -> Result<InteractionEnergyReport> {
    let ground = ground_state(l, p)?;
    measure_against(&ground, p, spec, q)
}

fn measure_against(ground: &RootConfiguration, p: &ModelParams, spec: ExcitationSpec, q: &QuadratureSpec) -> Result<InteractionEnergyReport> {
    let l = ground.length;
    let eps = |t: f64| dressed_energy_rapidity(t, Kind::Hole, p);
    let (state, ja, jb) = match spec {
        ExcitationSpec::ParticleHole { j_hole, j_particle } => (particle_hole_state(l, p, j_hole, j_particle)?, j_particle, j_hole),
        ExcitationSpec::TwoHole { j1, j2 } => (two_hole_state(l, p, (j1, j2))?, j1, j2),
    };
    let ta = hole_rapidity(&state, ja)?;
    let tb = hole_rapidity(&state, jb)?;
    let dressed_sum = eps(ta) + eps(tb);
    let measured = state.energy - ground.energy - dressed_sum;
    let coefficient = match spec {
        ExcitationSpec::ParticleHole { .. } => ph_interaction(ta, tb, p, q)?.coefficient,
        ExcitationSpec::TwoHole { .. } => hh_interaction(ta, tb, p, q)?.coefficient,
    };
    let predicted = coefficient / l as f64;
    let ra = hole_rapidity(ground, ja)?;
    let rb = hole_rapidity(ground, jb)?;
    let backflow_shift = l as f64 * (eps(ra) - eps(ta) + eps(rb) - eps(tb));
    let relative_deviation = if predicted != 0.0 { (measured - predicted) / predicted.abs() } else { measured - predicted };
    Ok(InteractionEnergyReport {
        length: l,
        params: *p,
        spec,
        e_full: state.energy,
        e_ground: ground.energy,
        rapidities: (ta, tb),
        shifted_root: state.shifted_root.map(|s| s.0),
        dressed_sum,
        measured,
        predicted,
        relative_deviation,
        backflow_shift,
        residual: state.residual,
    })
}

/// Excitation placement that scales with L.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScaledExcitation {
    ParticleHole { hole_frac: f64, particle_frac: f64 },
    TwoHole { f1: f64, f2: f64 },
}

impl ScaledExcitation {
    pub fn at(&self, l: usize) -> Result<ExcitationSpec> {
        match *self {
            ScaledExcitation::ParticleHole { hole_frac, particle_frac } => particle_hole_from_fractions(l, hole_frac, particle_frac),
            ScaledExcitation::TwoHole { f1, f2 } => two_hole_from_fractions(l, f1, f2),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScanReport {
    pub rows: Vec<InteractionEnergyReport>,
    /// 2x(L_max) − x(L_max/2) applied to L·measured and L·predicted.
    pub extrapolated_measured: f64,
    pub extrapolated_predicted: f64,
    pub deviation: f64,
}

/// Richardson step 2x(2L) − x(L) for a 1/L correction.
pub fn richardson(x_l: f64, x_2l: f64) -> f64 {
    2.0 * x_2l - x_l
}

/// Runs the harness over `lengths` (ascending, last two a doubling pair).
pub fn scan_interaction(lengths: &[usize], p: &ModelParams, exc: ScaledExcitation, q: &QuadratureSpec, exec: Exec) -> Result<ScanReport> {
    if lengths.is_empty() {
        return Err(Error::Domain("no lengths to scan".into()));
    }
    let results = exec.map(lengths, |&l| exc.at(l).and_then(|s| measure_interaction_energy(l, p, s, q)));
    let rows = results.into_iter().collect::<Result<Vec<_>>>()?;
    let n = rows.len();
    let (em, ep) = if n >= 2 && rows[n - 1].length == 2 * rows[n - 2].length {
        (
            richardson(rows[n - 2].scaled_measured(), rows[n - 1].scaled_measured()),
            richardson(rows[n - 2].scaled_predicted(), rows[n - 1].scaled_predicted()),
        )
    } else {
        (rows[n - 1].scaled_measured(), rows[n - 1].scaled_predicted())
    };
    let deviation = if ep != 0.0 { (em - ep).abs() / ep.abs() } else { (em - ep).abs() };
    Ok(ScanReport { rows, extrapolated_measured: em, extrapolated_predicted: ep, deviation })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ed_oracle::{free_fermion_spectrum, match_energy, momentum_sector_spectrum, sector_spectrum, SpinSector};

    fn p(eta: f64) -> ModelParams {
        ModelParams::new(eta).unwrap()
    }

    fn free_sum(levels: &[f64]) -> f64 {
        levels.iter().map(|k| k.cos()).sum()
    }

    #[test]
    fn ground_state_examples() {
        let f = p(FRAC_PI_2);
        let g = ground_state(8, &f).unwrap();
        assert!((g.energy + 2.0 * (PI / 8.0).cos() + 2.0 * (3.0 * PI / 8.0).cos()).abs() < 1e-10);
        assert!((g.energy + 2.613_125_9).abs() < 1e-7);
        let g = ground_state(4, &f).unwrap();
        assert!((g.energy + 2f64.sqrt()).abs() < 1e-10);
        assert_eq!(g.quantum_numbers, vec![-0.5, 0.5]);
        let pp = ModelParams::from_delta(0.5).unwrap();
        let g = ground_state(12, &pp).unwrap();
        let ed = sector_spectrum(12, 6, 0.5, 1).unwrap()[0];
        assert!((g.energy - ed).abs() < 1e-8, "{} {ed}", g.energy);
        assert!(g.residual < 1e-10 && g.bethe_residual() < 1e-10);
        assert!(ground_state(7, &pp).is_err());
    }

    #[test]
    fn free_fermion_sums_up_to_64() {
        let f = p(FRAC_PI_2);
        for l in [6, 10, 16, 32, 64] {
            let g = ground_state(l, &f).unwrap();
            let m = l / 2;
            let shift = if m % 2 == 0 { 0.5 } else { 0.0 };
            let mut levels: Vec<f64> = (0..l).map(|n| 2.0 * PI * (n as f64 + shift) / l as f64).collect();
            levels.sort_by(|a, b| a.cos().partial_cmp(&b.cos()).unwrap());
            assert!((g.energy - free_sum(&levels[..m])).abs() < 1e-10, "L={l}");
        }
    }

    #[test]
    fn free_fermion_particle_hole_gap() {
        let f = p(FRAC_PI_2);
        for l in [8, 12, 32] {
            let g = ground_state(l, &f).unwrap();
            let spec = free_fermion_spectrum_or_levels(l);
            let w = particle_hole_window(l);
            for (a, b) in [(0, 2), (1, w.len() - 1), (w.len() - 2, 1)] {
                let s = particle_hole_state(l, &f, w[a], w[b]).unwrap();
                assert!(s.energy > g.energy);
                if let Some(levels) = &spec {
                    assert!(levels.iter().any(|e| (e - s.energy).abs() < 1e-10), "L={l} E={}", s.energy);
                }
            }
        }
    }

    fn free_fermion_spectrum_or_levels(l: usize) -> Option<Vec<f64>> {
        (l <= 12).then(|| free_fermion_spectrum(l, l / 2))
    }

    #[test]
    fn free_fermion_two_hole() {
        let f = p(FRAC_PI_2);
        for l in [8, 10, 12] {
            let m = l / 2 - 1;
            let levels = free_fermion_spectrum(l, m);
            let w = two_hole_window(l);
            let s = two_hole_state(l, &f, (w[1], w[w.len() - 2])).unwrap();
            assert!(levels.iter().any(|e| (e - s.energy).abs() < 1e-10));
        }
    }

    #[test]
    fn ed_agreement() {
        for l in [8, 10] {
            for delta in [0.2, 0.5, (0.45 * PI).cos()] {
                let pp = ModelParams::from_delta(delta).unwrap();
                let m = l / 2;
                let all = sector_spectrum(l, m, delta, SpinSector::new(l, m).unwrap().dimension).unwrap();
                let w = particle_hole_window(l);
                for (a, b) in [(1, w.len() - 2), (2, 0), (0, 3)] {
                    let s = particle_hole_state(l, &pp, w[a], w[b]).unwrap();
                    let r = match_energy(&all, s.energy, 1e-8);
                    assert!(r.success, "L={l} delta={delta} labels ({}, {}) gap {:.2e}", w[a], w[b], r.gap);
                    // the state also sits in its own momentum sector
                    let k = (s.momentum_from_labels() * l as f64 / (2.0 * PI)).round() as usize % l;
                    let ks = momentum_sector_spectrum(l, m, delta, k).unwrap();
                    assert!(match_energy(&ks, s.energy, 1e-8).success);
                    assert!(s.bethe_residual() < 1e-10);
                }
                let d1 = sector_spectrum(l, m - 1, delta, SpinSector::new(l, m - 1).unwrap().dimension).unwrap();
                let w = two_hole_window(l);
                let s = two_hole_state(l, &pp, (w[1], w[3])).unwrap();
                assert!(match_energy(&d1, s.energy, 1e-8).success);
            }
        }
    }

    #[test]
    fn momentum_identities() {
        let pp = ModelParams::from_delta(0.5).unwrap();
        let w = particle_hole_window(16);
        let s = particle_hole_state(16, &pp, w[2], w[6]).unwrap();
        let d = (s.momentum_from_labels() - s.momentum_from_roots()).abs();
        assert!(d.min(2.0 * PI - d) < 1e-8);
        let w = two_hole_window(16);
        let s = two_hole_state(16, &pp, (w[1], w[w.len() - 2])).unwrap();
        assert!((s.momentum_from_labels() - PI).abs() < 1e-12);
        assert!((s.momentum_from_roots() - PI).abs() < 1e-8);
    }

    #[test]
    fn hole_rapidity_examples() {
        let pp = p(PI / 3.0);
        // L = 16: M′ = 7, window −4..4; symmetric vacancies leave a root at 0
        let s = two_hole_state(16, &pp, (-3.0, 3.0)).unwrap();
        assert!(hole_rapidity(&s, 0.0).unwrap().abs() < 1e-10);
        let f = p(FRAC_PI_2);
        let s = two_hole_state(20, &f, (-2.0, 1.0)).unwrap();
        let t0 = hole_rapidity(&s, 1.0).unwrap();
        // free counting Lφ(t) = 2πJ with φ = gd(2t)
        assert!((20.0 * (2.0 * t0).sinh().atan() - 2.0 * PI).abs() < 1e-8);
        assert!(hole_rapidity(&s, 1e4).is_err());
        // O(1/L) drift at fixed fraction
        let a = {
            let ExcitationSpec::TwoHole { j1, j2 } = two_hole_from_fractions(64, 0.375, 0.75).unwrap() else { unreachable!() };
            hole_rapidity(&two_hole_state(64, &pp, (j1, j2)).unwrap(), j1).unwrap()
        };
        let b = {
            let ExcitationSpec::TwoHole { j1, j2 } = two_hole_from_fractions(128, 0.375, 0.75).unwrap() else { unreachable!() };
            hole_rapidity(&two_hole_state(128, &pp, (j1, j2)).unwrap(), j1).unwrap()
        };
        assert!((a - b).abs() < 5.0 / 64.0);
    }

    #[test]
    fn fraction_mapping() {
        assert_eq!(
            particle_hole_from_fractions(64, 0.375, 0.25).unwrap(),
            ExcitationSpec::ParticleHole { j_hole: -4.0, j_particle: 8.0 }
        );
        assert_eq!(two_hole_from_fractions(64, 0.375, 0.75).unwrap(), ExcitationSpec::TwoHole { j1: -4.0, j2: 8.0 });
        assert!(particle_hole_from_fractions(8, 0.5, 0.5).is_err());
        assert!(two_hole_from_fractions(8, -0.1, 0.5).is_err());
        let ExcitationSpec::ParticleHole { j_hole, .. } = particle_hole_from_fractions(10, 0.3, 0.2).unwrap() else { unreachable!() };
        assert_eq!(j_hole.fract().abs(), 0.5);
    }

    #[test]
    fn free_fermion_measurement_is_null() {
        let f = p(FRAC_PI_2);
        let q = QuadratureSpec::default();
        for l in [8, 64, 256] {
            for (hf, pf) in [(0.25, 0.25), (0.375, 0.25), (0.1, 0.6)] {
                let r = measure_interaction_energy(l, &f, particle_hole_from_fractions(l, hf, pf).unwrap(), &q).unwrap();
                assert!(r.measured.abs() < 1e-10, "L={l}: {}", r.measured);
                assert_eq!(r.predicted, 0.0);
            }
        }
    }

    #[test]
    fn rapidity_targeting_lands_nearby() {
        let pp = p(PI / 3.0);
        let s = particle_hole_from_rapidities(128, &pp, 0.4, -0.3).unwrap();
        let r = measure_interaction_energy(128, &pp, s, &QuadratureSpec::default()).unwrap();
        assert!((r.rapidities.0 - 0.4).abs() < 0.05 && (r.rapidities.1 + 0.3).abs() < 0.05, "{:?}", r.rapidities);
    }

    #[test]
    fn richardson_removes_a_pure_inverse_length() {
        assert!((richardson(3.0 + 1.0 / 64.0, 3.0 + 1.0 / 128.0) - 3.0).abs() < 1e-15);
    }
}
