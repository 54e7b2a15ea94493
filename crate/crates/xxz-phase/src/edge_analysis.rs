//! Backflow integral equations on finite regions and the Wiener–Hopf
//! treatment of holes sitting at a Fermi point.
//!
//! The backflow RW solves 2πRW(t) + ∫_Λ φ₂′(t−t′)RW(t′)dt′ = rhs(t) and is
//! discretized by Nyström collocation on Gauss–Legendre panels. The half-line
//! problem at an edge is governed by K(ω) = 1 + φ₂′(ω)/2π = G⁺(ω)G⁻(ω).

use crate::error::{Error, Result};
use crate::model_kernels::{
    bare_energy_density, root_density_r0, root_density_r0_prime, shifted_two_particle_phase, sinh_ratio,
    two_particle_phase, two_particle_phase_prime, ModelParams, QuadratureSpec,
};
use crate::par::Exec;
use crate::quad::{breakpoints, composite, GaussLegendre};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, PI};

/// Finite union of bounded, disjoint intervals.
#[derive(Debug, Clone, PartialEq)]
pub struct Region {
    pub intervals: Vec<(f64, f64)>,
}

impl Region {
    pub fn new(mut intervals: Vec<(f64, f64)>) -> Result<Self> {
        if intervals.is_empty() {
            return Err(Error::Domain("empty region".into()));
        }
        for &(a, b) in &intervals {
            if !(a.is_finite() && b.is_finite() && a < b) {
                return Err(Error::Domain(format!("bad interval ({a}, {b})")));
            }
        }
        intervals.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
        if intervals.windows(2).any(|w| w[1].0 < w[0].1) {
            return Err(Error::Domain("region intervals overlap".into()));
        }
        Ok(Region { intervals })
    }

    pub fn interval(a: f64, b: f64) -> Result<Self> {
        Self::new(vec![(a, b)])
    }

    /// [a, b] with the window (c − w/2, c + w/2) removed.
    pub fn with_gap(a: f64, b: f64, c: f64, w: f64) -> Result<Self> {
        Self::new(vec![(a, c - 0.5 * w), (c + 0.5 * w, b)])
    }

    pub fn contains(&self, t: f64) -> bool {
        self.intervals.iter().any(|&(a, b)| t >= a && t <= b)
    }

    pub fn measure(&self) -> f64 {
        self.intervals.iter().map(|(a, b)| b - a).sum()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum RhsKind {
    /// φ₂(t − t′₁ − iπ/2), the shifted particle as source.
    ParticleShifted { t1_prime: f64 },
    /// −ΔN₀ φ₂(t − t₀), a real hole as source.
    HoleReal { t0: f64, delta_n0: f64 },
    /// −∫_O φ₂(t − t′)R₀(t′)dt′ for holes filling O.
    EdgeDensity { holes: Region },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NystromSpec {
    pub nodes_per_unit: usize,
    pub panel_width: f64,
}

impl Default for NystromSpec {
    fn default() -> Self {
        NystromSpec { nodes_per_unit: 64, panel_width: 0.5 }
    }
}

impl NystromSpec {
    fn rule(&self) -> GaussLegendre {
        let n = ((self.nodes_per_unit as f64 * self.panel_width).round() as usize).max(4);
        GaussLegendre::new(n)
    }
}

#[derive(Debug, Clone)]
pub struct BackflowSolution {
    pub region: Region,
    pub grid: Vec<f64>,
    pub weights: Vec<f64>,
    pub values: Vec<f64>,
    pub rhs_kind: RhsKind,
    /// Largest defect of the equation at panel points that are not nodes.
    pub residual: f64,
    pub params: ModelParams,
}

impl BackflowSolution {
    /// Nyström extension (rhs(t) − Σ wⱼ φ₂′(t − tⱼ) RWⱼ)/2π, valid on and off Λ.
    pub fn eval(&self, t: f64) -> f64 {
        let rhs = rhs_value(&self.rhs_kind, t, &self.params);
        nystrom_extend(t, rhs, &self.grid, &self.weights, &self.values, &self.params)
    }
}

fn nystrom_extend(t: f64, rhs: f64, grid: &[f64], w: &[f64], v: &[f64], p: &ModelParams) -> f64 {
    let s: f64 = grid
        .iter()
        .zip(w)
        .zip(v)
        .map(|((&tj, &wj), &vj)| wj * two_particle_phase_prime(t - tj, p) * vj)
        .sum();
    (rhs - s) / (2.0 * PI)
}

/// Upper limit used when a hole region runs off to infinity.
fn hole_tail(p: &ModelParams) -> f64 {
    // R₀ ~ e^{−πt/η}; 40 e-folds
    40.0 * p.eta / PI
}

/// O = (Λ₁, Λ₁ + tail) for holes beyond the right Fermi point.
pub fn right_edge_holes(lambda1: f64, p: &ModelParams) -> Result<Region> {
    Region::interval(lambda1, lambda1 + hole_tail(p))
}

/// O on both sides of Λ = (−Λ₂, Λ₁).
pub fn both_edge_holes(lambda1: f64, lambda2: f64, p: &ModelParams) -> Result<Region> {
    let t = hole_tail(p);
    Region::new(vec![(-lambda2 - t, -lambda2), (lambda1, lambda1 + t)])
}

fn integrate_region<F: Fn(f64) -> f64>(r: &Region, f: F) -> f64 {
    r.intervals
        .iter()
        .map(|&(a, b)| composite(a, b, 0.25, GaussLegendre::g20(), &f))
        .sum()
}

fn rhs_value(kind: &RhsKind, t: f64, p: &ModelParams) -> f64 {
    match kind {
        RhsKind::ParticleShifted { t1_prime } => shifted_two_particle_phase(t - t1_prime, p),
        RhsKind::HoleReal { t0, delta_n0 } => -delta_n0 * two_particle_phase(t - t0, p),
        RhsKind::EdgeDensity { holes } => {
            -integrate_region(holes, |s| two_particle_phase(t - s, p) * root_density_r0(s, p))
        }
    }
}

fn rhs_cuts(kind: &RhsKind) -> Vec<f64> {
    match kind {
        RhsKind::ParticleShifted { t1_prime } => vec![*t1_prime],
        RhsKind::HoleReal { t0, .. } => vec![*t0],
        RhsKind::EdgeDensity { .. } => Vec::new(),
    }
}

/// Panels of `region` with the given interior cut points and the rule on each.
fn panels(region: &Region, cuts: &[f64], spec: &NystromSpec) -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    for &(a, b) in &region.intervals {
        let e = breakpoints(a, b, spec.panel_width, cuts);
        out.extend(e.windows(2).map(|w| (w[0], w[1])));
    }
    out
}

/// Barycentric weights for Gauss–Legendre nodes.
fn barycentric(rule: &GaussLegendre) -> Vec<f64> {
    rule.nodes
        .iter()
        .zip(&rule.weights)
        .enumerate()
        .map(|(j, (x, w))| {
            let s = ((1.0 - x * x) * w).sqrt();
            if j % 2 == 0 {
                s
            } else {
                -s
            }
        })
        .collect()
}

fn interpolate(x: f64, nodes: &[f64], bw: &[f64], values: &[f64]) -> f64 {
    let mut num = 0.0;
    let mut den = 0.0;
    for ((&xj, &wj), &fj) in nodes.iter().zip(bw).zip(values) {
        let d = x - xj;
        if d == 0.0 {
            return fj;
        }
        num += wj * fj / d;
        den += wj / d;
    }
    num / den
}

/// Raw solve for an arbitrary right-hand side; returns nodes, weights,
/// values and the off-node residual.
pub fn nystrom_solve<F>(
    region: &Region,
    cuts: &[f64],
    rhs: F,
    p: &ModelParams,
    spec: &NystromSpec,
    exec: Exec,
) -> Result<(Vec<f64>, Vec<f64>, Vec<f64>, f64)>
where
    F: Fn(f64) -> f64 + Sync + Send,
{
    let rule = spec.rule();
    let pan = panels(region, cuts, spec);
    let mut grid = Vec::new();
    let mut weights = Vec::new();
    for &(a, b) in &pan {
        for (x, w) in rule.mapped(a, b) {
            grid.push(x);
            weights.push(w);
        }
    }
    let n = grid.len();
    let rows = exec.map_range(n, |i| {
        let mut row: Vec<f64> = (0..n).map(|j| weights[j] * two_particle_phase_prime(grid[i] - grid[j], p)).collect();
        row[i] += 2.0 * PI;
        (row, rhs(grid[i]))
    });
    let mut a = DMatrix::<f64>::zeros(n, n);
    let mut b = DVector::<f64>::zeros(n);
    for (i, (row, r)) in rows.into_iter().enumerate() {
        for (j, v) in row.into_iter().enumerate() {
            a[(i, j)] = v;
        }
        b[i] = r;
    }
    let lu = a.lu();
    let x = match lu.solve(&b) {
        Some(x) if x.iter().all(|v| v.is_finite()) => x,
        _ => {
            let u = lu.u();
            let d: Vec<f64> = (0..n).map(|i| u[(i, i)].abs()).collect();
            let hi = d.iter().cloned().fold(0.0, f64::max);
            let lo = d.iter().cloned().fold(f64::INFINITY, f64::min);
            return Err(Error::Singular(format!("Nystrom matrix singular, pivot ratio {:.2e}", hi / lo)));
        }
    };
    let values: Vec<f64> = x.iter().copied().collect();

    // equation defect between nodes: panel interpolant against the Nyström extension
    let bw = barycentric(&rule);
    let k = rule.nodes.len();
    let probes: Vec<(f64, f64)> = pan
        .iter()
        .enumerate()
        .flat_map(|(pi, &(a, b))| {
            let vals = &values[pi * k..(pi + 1) * k];
            let h = 0.5 * (b - a);
            let c = 0.5 * (a + b);
            let bw = &bw;
            let rule = &rule;
            (0..k - 1).step_by(3).map(move |j| {
                let x = 0.5 * (rule.nodes[j] + rule.nodes[j + 1]);
                (c + h * x, interpolate(x, &rule.nodes, bw, vals))
            })
        })
        .collect();
    let defects = exec.map(&probes, |&(t, poly)| {
        (2.0 * PI * (nystrom_extend(t, rhs(t), &grid, &weights, &values, p) - poly)).abs()
    });
    let residual = defects.into_iter().fold(0.0, f64::max);
    Ok((grid, weights, values, residual))
}

/// Solves the backflow equation on Λ for one of the three sources.
pub fn nystrom_backflow(
    region: &Region,
    rhs_kind: RhsKind,
    p: &ModelParams,
    q: &QuadratureSpec,
    spec: &NystromSpec,
) -> Result<BackflowSolution> {
    nystrom_backflow_with(region, rhs_kind, p, q, spec, Exec::default())
}

pub fn nystrom_backflow_with(
    region: &Region,
    rhs_kind: RhsKind,
    p: &ModelParams,
    q: &QuadratureSpec,
    spec: &NystromSpec,
    exec: Exec,
) -> Result<BackflowSolution> {
    if p.is_free_fermion() && !matches!(rhs_kind, RhsKind::ParticleShifted { .. }) {
        // φ₂ ≡ 0 kills both the kernel and these sources
        let grid = panels(region, &[], spec).iter().map(|&(a, b)| 0.5 * (a + b)).collect::<Vec<_>>();
        let n = grid.len();
        return Ok(BackflowSolution {
            region: region.clone(),
            weights: vec![0.0; n],
            values: vec![0.0; n],
            grid,
            rhs_kind,
            residual: 0.0,
            params: *p,
        });
    }
    let cuts = rhs_cuts(&rhs_kind);
    let (grid, weights, values, residual) =
        nystrom_solve(region, &cuts, |t| rhs_value(&rhs_kind, t, p), p, spec, exec)?;
    if residual > q.abs_tol.max(1e-10) {
        return Err(Error::Convergence(format!(
            "Nystrom residual {residual:.2e} exceeds {:.1e}; refine the panels",
            q.abs_tol
        )));
    }
    Ok(BackflowSolution { region: region.clone(), grid, weights, values, rhs_kind, residual, params: *p })
}

/// ΔC₁ = −2π∫_O R₀′(t)RW(t)dt.
pub fn c1_assembly(sol: &BackflowSolution, holes: &Region) -> f64 {
    let p = sol.params;
    -2.0 * PI * integrate_region(holes, |t| root_density_r0_prime(t, &p) * sol.eval(t))
}

/// ΔC₁ to first order in n₀ for a narrow hole at t₀:
/// 2π(R₀′/R₀)(t₀)·F̃(t′₁ + iπ/2 − t₀)·n₀ with F̃ = −Δθ/2π on the shifted line.
pub fn res1_closed_form(t1_prime: f64, t0: f64, n0: f64, p: &ModelParams, q: &QuadratureSpec) -> Result<f64> {
    Ok(crate::interaction::density_route_hole_energy(t1_prime, t0, n0, p, q)? / (-0.5 * p.eta.sin()))
}

/// Edge energies from finite-interval solves on Λ = (−Λ₂, Λ₁).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EdgeNystrom {
    /// ∫ over both hole regions of the extended root density.
    pub hole_weight: f64,
    /// ∫_O R₀, the hole weight of the unperturbed density.
    pub bare_weight: f64,
    /// Root-number deficit 1/2 − ∫_Λ R per site.
    pub n0: f64,
    pub delta_e1: f64,
    pub delta_e2: f64,
}

/// ΔE₁ through ΔC₁ = −2π∫_O R₀′RW with the particle source, ΔE₂ through the
/// particle root shift LR₀(t′₁)(t″₁ − t′₁) = −RW(t′₁) with the edge-density source,
/// and n₀ from the root density solved on the same Λ.
pub fn edge_energies_nystrom(
    lambda1: f64,
    lambda2: f64,
    t1_prime: f64,
    p: &ModelParams,
    q: &QuadratureSpec,
    spec: &NystromSpec,
) -> Result<EdgeNystrom> {
    let lam = Region::interval(-lambda2, lambda1)?;
    let holes = both_edge_holes(lambda1, lambda2, p)?;
    let exec = Exec::default();

    let (grid, w, r, _) = nystrom_solve(&lam, &[], |t| bare_energy_density(t, p), p, spec, exec)?;
    let n0 = 0.5 - w.iter().zip(&r).map(|(a, b)| a * b).sum::<f64>();
    let hole_weight = integrate_region(&holes, |t| nystrom_extend(t, bare_energy_density(t, p), &grid, &w, &r, p));
    let bare_weight = integrate_region(&holes, |t| root_density_r0(t, p));

    let particle = nystrom_backflow_with(&lam, RhsKind::ParticleShifted { t1_prime }, p, q, spec, exec)?;
    let delta_e1 = -0.5 * p.eta.sin() * c1_assembly(&particle, &holes);

    let density = nystrom_backflow_with(&lam, RhsKind::EdgeDensity { holes }, p, q, spec, exec)?;
    let ratio = -(PI / p.eta) * (PI * t1_prime / p.eta).tanh();
    let delta_c2 = 2.0 * PI * ratio * density.eval(t1_prime);
    let delta_e2 = -0.5 * p.eta.sin() * delta_c2;
    Ok(EdgeNystrom { hole_weight, bare_weight, n0, delta_e1, delta_e2 })
}

const WH_GRID_HALF_WIDTH: f64 = 20.0;
const WH_GRID_STEP: f64 = 0.05;
const CAUCHY_OFFSET: f64 = 1e-6;

#[derive(Debug, Clone)]
pub struct WienerHopfFactorization {
    pub omega_grid: Vec<f64>,
    pub g_plus: Vec<Complex64>,
    pub g_minus: Vec<Complex64>,
    /// max |G⁺G⁻ − K| over the grid together with |G⁺(0)G⁻(0) − ξ|.
    pub residual: f64,
    pub params: ModelParams,
    omega_limit: f64,
}

/// K(ω) = (2π + φ₂′(ω))/2π = 2 sh(ω(π−η)/2) ch(ωη/2)/sh(ωπ/2).
pub fn wh_kernel(omega: f64, p: &ModelParams) -> f64 {
    1.0 + sinh_ratio(FRAC_PI_2 - p.eta, FRAC_PI_2, omega)
}

fn log_kernel(omega: f64, p: &ModelParams) -> f64 {
    sinh_ratio(FRAC_PI_2 - p.eta, FRAC_PI_2, omega).ln_1p()
}

impl WienerHopfFactorization {
    fn cauchy(&self, omega: f64, delta: f64) -> Complex64 {
        // (1/2πi)∫ g(ω′)/(ω′ − ω − iδ) dω′ with g(ω) subtracted
        let p = &self.params;
        let w = self.omega_limit;
        let g0 = log_kernel(omega, p);
        let z = Complex64::new(omega, delta);
        let smooth = |x: f64| {
            let d = Complex64::new(x, 0.0) - z;
            (log_kernel(x, p) - g0) / d
        };
        let mut s = Complex64::new(0.0, 0.0);
        let e = breakpoints(-w, w, 0.5, &[omega]);
        for win in e.windows(2) {
            for (x, wt) in GaussLegendre::g20().mapped(win[0], win[1]) {
                s += smooth(x) * wt;
            }
        }
        let log_term = ((Complex64::new(w, 0.0) - z) / (Complex64::new(-w, 0.0) - z)).ln();
        (s + log_term * g0) / Complex64::new(0.0, 2.0 * PI)
    }

    fn log_plus_real(&self, omega: f64) -> Complex64 {
        if self.params.is_free_fermion() {
            return Complex64::new(0.0, 0.0);
        }
        // ω′ − ω − i0, Richardson in the offset
        2.0 * self.cauchy(omega, 0.5 * CAUCHY_OFFSET) - self.cauchy(omega, CAUCHY_OFFSET)
    }

    /// G⁺ on the real axis.
    pub fn g_plus_at(&self, omega: f64) -> Complex64 {
        self.log_plus_real(omega).exp()
    }

    /// G⁻ on the real axis.
    pub fn g_minus_at(&self, omega: f64) -> Complex64 {
        let lk = log_kernel(omega, &self.params);
        (Complex64::new(lk, 0.0) - self.log_plus_real(omega)).exp()
    }

    /// G⁺(iy), y > 0, real by symmetry.
    pub fn g_plus_imag(&self, y: f64) -> f64 {
        if self.params.is_free_fermion() {
            return 1.0;
        }
        let p = &self.params;
        let s = composite(0.0, self.omega_limit, 0.5_f64.min(y), GaussLegendre::g20(), |w| {
            log_kernel(w, p) * y / (w * w + y * y)
        });
        (s / PI).exp()
    }

    /// G⁺(z) anywhere in the closed upper half-plane.
    pub fn g_plus_upper(&self, z: Complex64) -> Complex64 {
        if z.im <= 0.0 {
            return self.g_plus_at(z.re);
        }
        if z.re == 0.0 {
            return Complex64::new(self.g_plus_imag(z.im), 0.0);
        }
        self.cauchy_at(z).exp()
    }

    fn cauchy_at(&self, z: Complex64) -> Complex64 {
        let p = &self.params;
        let w = self.omega_limit;
        let g0 = log_kernel(z.re, p);
        let mut s = Complex64::new(0.0, 0.0);
        let width = 0.5_f64.min(z.im.max(1e-3));
        let e = breakpoints(-w, w, width, &[z.re]);
        for win in e.windows(2) {
            for (x, wt) in GaussLegendre::g20().mapped(win[0], win[1]) {
                s += (log_kernel(x, p) - g0) / (Complex64::new(x, 0.0) - z) * wt;
            }
        }
        let log_term = ((Complex64::new(w, 0.0) - z) / (Complex64::new(-w, 0.0) - z)).ln();
        (s + log_term * g0) / Complex64::new(0.0, 2.0 * PI)
    }

    /// G⁺(0)G⁻(0), which is ξ.
    pub fn product_at_zero(&self) -> f64 {
        (self.g_plus_at(0.0) * self.g_minus_at(0.0)).re
    }
}

/// Splits K = G⁺G⁻ with G± → 1 at infinity and G⁺(0) = G⁻(0).
pub fn wiener_hopf_factorize(p: &ModelParams, q: &QuadratureSpec) -> Result<WienerHopfFactorization> {
    wiener_hopf_factorize_with(p, q, Exec::default())
}

pub fn wiener_hopf_factorize_with(p: &ModelParams, q: &QuadratureSpec, exec: Exec) -> Result<WienerHopfFactorization> {
    let rate = p.eta.min(PI - p.eta);
    let omega_limit = q.omega_limit(rate);
    let tail = log_kernel(omega_limit, p).abs() / (PI * rate * omega_limit);
    if tail > q.abs_tol {
        return Err(Error::Convergence(format!(
            "log K not integrable to tolerance: tail {tail:.2e} at omega={omega_limit:.0}"
        )));
    }
    let n = (2.0 * WH_GRID_HALF_WIDTH / WH_GRID_STEP).round() as usize;
    let omega_grid: Vec<f64> = (0..=n).map(|i| -WH_GRID_HALF_WIDTH + i as f64 * WH_GRID_STEP).collect();
    let mut f = WienerHopfFactorization {
        omega_grid,
        g_plus: Vec::new(),
        g_minus: Vec::new(),
        residual: 0.0,
        params: *p,
        omega_limit,
    };
    let pairs = exec.map(&f.omega_grid, |&w| (f.g_plus_at(w), f.g_minus_at(w)));
    let (gp, gm): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
    let defect = f
        .omega_grid
        .iter()
        .zip(gp.iter().zip(&gm))
        .map(|(&w, (a, b))| (a * b - wh_kernel(w, p)).norm())
        .fold(0.0, f64::max);
    f.g_plus = gp;
    f.g_minus = gm;
    f.residual = defect.max((f.product_at_zero() - p.xi).abs());
    Ok(f)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeRhs {
    /// Backflow of the particle seen from the edge; f(t) = F̃(t + Λ₁ − t′₁).
    Energy,
    /// Root density near the edge; f(t) = R₀(t + Λ₁).
    Density,
}

/// Leading-residue half-line solution χ⁺(ω) at the right Fermi point Λ₁.
#[derive(Debug, Clone)]
pub struct EdgeChi<'a> {
    pub factorization: &'a WienerHopfFactorization,
    pub kind: EdgeRhs,
    pub lambda1: f64,
    /// A = G⁺(iπ/η)e^{−πΛ₁/η}.
    pub a: f64,
    /// (i/2)(1 − 1/ξ)G⁻(0) for the energy problem, (i/η)A for the density one.
    pub prefactor: Complex64,
    pub warnings: Vec<String>,
}

impl<'a> EdgeChi<'a> {
    /// χ⁺(z) for z in the closed upper half-plane.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let g = self.factorization.g_plus_upper(z);
        let eta = self.factorization.params.eta;
        match self.kind {
            EdgeRhs::Energy => g / z * self.prefactor,
            EdgeRhs::Density => g / (z + Complex64::new(0.0, PI / eta)) * self.prefactor,
        }
    }

    /// χ⁺(0) = ∫_{Λ₁}^∞ R for the density problem; the energy problem has a pole there.
    pub fn at_zero(&self) -> Result<f64> {
        match self.kind {
            EdgeRhs::Density => Ok(self.eval(Complex64::new(0.0, 0.0)).re),
            EdgeRhs::Energy => Err(Error::Domain("energy chi+ has a pole at omega = 0".into())),
        }
    }
}

pub fn edge_chi_plus<'a>(f: &'a WienerHopfFactorization, kind: EdgeRhs, lambda1: f64, p: &ModelParams) -> EdgeChi<'a> {
    let y = PI / p.eta;
    let gi = f.g_plus_imag(y);
    let a = gi * (-y * lambda1).exp();
    let mut warnings = Vec::new();
    // next pole of R₀(t + Λ₁) sits at ω = −3iπ/η
    let sub = (-2.0 * y * lambda1).exp() * f.g_plus_imag(3.0 * y) / gi;
    if sub > 0.01 {
        warnings.push(format!("subleading edge term {sub:.2e} exceeds 1% of the leading one; increase Lambda1"));
    }
    let prefactor = match kind {
        EdgeRhs::Energy => {
            let g0 = f.g_minus_at(0.0).re;
            let one_minus = 1.0 - 1.0 / f.product_at_zero();
            Complex64::new(0.0, 0.5 * one_minus * g0)
        }
        EdgeRhs::Density => Complex64::new(0.0, a / p.eta),
    };
    EdgeChi { factorization: f, kind, lambda1, a, prefactor, warnings }
}

/// ΔC₁ = (2π²/η²)e^{−πΛ₁/η}χ⁺(iπ/η) from the energy solution.
pub fn edge_delta_c1(energy: &EdgeChi, a: f64, p: &ModelParams) -> f64 {
    let y = PI / p.eta;
    let gi = energy.factorization.g_plus_imag(y);
    (2.0 * PI * PI / (p.eta * p.eta)) * (a / gi) * energy.eval(Complex64::new(0.0, y)).re
}

/// ΔE₁ for a root-number deficit n₀ at one Fermi point.
///
/// The density solution gives ∫_{Λ₁}^∞R = χ⁺(0) = G⁺(0)A/π. Integrating the
/// density equation over the line shows that these holes remove
/// χ⁺(0)/(G⁺(0)G⁻(0)) roots, so n₀ fixes A = πG⁻(0)n₀.
pub fn edge_energy_from_factorization(f: &WienerHopfFactorization, n0: f64, p: &ModelParams) -> f64 {
    if p.is_free_fermion() {
        return 0.0;
    }
    let a = PI * f.g_minus_at(0.0).re * n0;
    let y = PI / p.eta;
    let lambda1 = -(a / f.g_plus_imag(y)).ln() / y;
    let energy = edge_chi_plus(f, EdgeRhs::Energy, lambda1, p);
    -0.5 * p.eta.sin() * edge_delta_c1(&energy, a, p)
}
