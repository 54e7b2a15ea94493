//! Exact diagonalization of H = Σ (SˣSˣ + SʸSʸ + Δ SᶻSᶻ) on a periodic ring.

use crate::error::{Error, Result};
use crate::par::Exec;
use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use std::f64::consts::PI;

pub const MAX_SITES: usize = 14;

#[derive(Debug, Clone, PartialEq)]
pub struct SpinSector {
    pub l: usize,
    /// Number of down spins.
    pub m: usize,
    /// Twice the magnetization, L − 2M.
    pub s_z: i64,
    pub basis: Vec<u32>,
    pub dimension: usize,
}

impl SpinSector {
    pub fn new(l: usize, m: usize) -> Result<Self> {
        if !(3..=MAX_SITES).contains(&l) {
            return Err(Error::Domain(format!("ED supports 3 <= L <= {MAX_SITES}, got {l}")));
        }
        if m > l {
            return Err(Error::Domain(format!("M = {m} exceeds L = {l}")));
        }
        let basis: Vec<u32> = (0u32..(1u32 << l)).filter(|s| s.count_ones() as usize == m).collect();
        let dimension = basis.len();
        Ok(SpinSector { l, m, s_z: l as i64 - 2 * m as i64, basis, dimension })
    }

    pub fn index(&self, state: u32) -> Option<usize> {
        self.basis.binary_search(&state).ok()
    }

    fn rotate(&self, s: u32) -> u32 {
        let mask = (1u32 << self.l) - 1;
        ((s << 1) | (s >> (self.l - 1))) & mask
    }

    /// Smallest rotation image, the number of forward rotations reaching it,
    /// and the orbit period.
    fn representative(&self, s: u32) -> (u32, usize, usize) {
        let mut best = s;
        let mut shift = 0;
        let mut cur = s;
        let mut period = self.l;
        for j in 1..=self.l {
            cur = self.rotate(cur);
            if cur == s {
                period = j;
                break;
            }
            if cur < best {
                best = cur;
                shift = j;
            }
        }
        (best, shift, period)
    }
}

/// Off-diagonal hops and the diagonal of H acting on one basis state.
fn apply(state: u32, l: usize, delta: f64) -> (f64, Vec<(u32, f64)>) {
    let mut diag = 0.0;
    let mut hops = Vec::new();
    for i in 0..l {
        let j = (i + 1) % l;
        let bi = (state >> i) & 1;
        let bj = (state >> j) & 1;
        if bi == bj {
            diag += 0.25 * delta;
        } else {
            diag -= 0.25 * delta;
            hops.push((state ^ ((1 << i) | (1 << j)), 0.5));
        }
    }
    (diag, hops)
}

/// Dense sector Hamiltonian, rows assembled independently.
pub fn sector_matrix(sector: &SpinSector, delta: f64, exec: Exec) -> DMatrix<f64> {
    let n = sector.dimension;
    let rows = exec.map(&sector.basis, |&s| {
        let (d, hops) = apply(s, sector.l, delta);
        let mut row: Vec<(usize, f64)> = hops
            .into_iter()
            .map(|(t, h)| (sector.index(t).expect("hop leaves sector"), h))
            .collect();
        row.push((sector.index(s).unwrap(), d));
        row
    });
    let mut h = DMatrix::<f64>::zeros(n, n);
    for (i, row) in rows.into_iter().enumerate() {
        for (j, v) in row {
            h[(i, j)] += v;
        }
    }
    h
}

fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(|a, b| a.partial_cmp(b).unwrap());
    v
}

/// Lowest `count` eigenvalues of the (L, M) sector at anisotropy Δ.
pub fn sector_spectrum(l: usize, m: usize, delta: f64, count: usize) -> Result<Vec<f64>> {
    sector_spectrum_with(l, m, delta, count, Exec::default())
}

pub fn sector_spectrum_with(l: usize, m: usize, delta: f64, count: usize, exec: Exec) -> Result<Vec<f64>> {
    let sector = SpinSector::new(l, m)?;
    if count > sector.dimension {
        return Err(Error::Domain(format!("count {count} exceeds dimension {}", sector.dimension)));
    }
    let h = sector_matrix(&sector, delta, exec);
    let ev = sorted(SymmetricEigen::new(h).eigenvalues.iter().copied().collect());
    Ok(ev.into_iter().take(count).collect())
}

/// Full spectrum of the sector restricted to momentum 2π·k_index/L.
pub fn momentum_sector_spectrum(l: usize, m: usize, delta: f64, k_index: usize) -> Result<Vec<f64>> {
    let sector = SpinSector::new(l, m)?;
    let k = 2.0 * PI * k_index as f64 / l as f64;
    let allowed = |period: usize| (k_index * period).is_multiple_of(l);
    let mut reps: Vec<(u32, usize)> = Vec::new();
    for &s in &sector.basis {
        let (r, _, period) = sector.representative(s);
        if r == s && allowed(period) {
            reps.push((s, period));
        }
    }
    let n = reps.len();
    if n == 0 {
        return Ok(Vec::new());
    }
    let pos = |s: u32| reps.binary_search_by(|(r, _)| r.cmp(&s)).ok();
    let mut h = DMatrix::<Complex64>::zeros(n, n);
    for (col, &(r, pr)) in reps.iter().enumerate() {
        let (d, hops) = apply(r, l, delta);
        h[(col, col)] += Complex64::new(d, 0.0);
        for (s, amp) in hops {
            let (rep, shift, ps) = sector.representative(s);
            if let Some(row) = pos(rep) {
                let phase = Complex64::from_polar(1.0, -k * shift as f64);
                h[(row, col)] += phase * amp * (pr as f64 / ps as f64).sqrt();
            }
        }
    }
    Ok(sorted(SymmetricEigen::new(h).eigenvalues.iter().copied().collect()))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MatchReport {
    pub target: f64,
    pub nearest: f64,
    pub gap: f64,
    pub success: bool,
}

/// Nearest eigenvalue to `target`; success iff the gap is within `tol`.
pub fn match_energy(spectrum: &[f64], target: f64, tol: f64) -> MatchReport {
    let nearest = spectrum
        .iter()
        .copied()
        .min_by(|a, b| (a - target).abs().partial_cmp(&(b - target).abs()).unwrap())
        .unwrap_or(f64::NAN);
    let gap = (nearest - target).abs();
    MatchReport { target, nearest, gap, success: gap <= tol }
}

/// All M-fermion fillings of the Jordan-Wigner cosine band at Δ = 0.
pub fn free_fermion_spectrum(l: usize, m: usize) -> Vec<f64> {
    let shift = if m.is_multiple_of(2) { 0.5 } else { 0.0 };
    let levels: Vec<f64> = (0..l).map(|n| (2.0 * PI * (n as f64 + shift) / l as f64).cos()).collect();
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << l) {
        if mask.count_ones() as usize == m {
            out.push((0..l).filter(|i| mask >> i & 1 == 1).map(|i| levels[i]).sum());
        }
    }
    sorted(out)
}
