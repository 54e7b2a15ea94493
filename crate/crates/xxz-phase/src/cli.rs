//! Command-line front end: argument parsing, table assembly and emitters.
//!
//! Every table starts with the full run configuration. CSV writes it as a
//! `# key=value ...` line, JSON as the `meta` object; [`RunConfig::from_meta`]
//! reads either back. Keys other than the configuration keys carry derived
//! constants and results and are ignored on the way back.

use crate::bethe_finite::{
    particle_hole_from_rapidities, scan_interaction, InteractionEnergyReport, ScaledExcitation, ScanReport,
};
use crate::dispersion::{hole_momentum, particle_momentum, velocity, dressed_energy_rapidity, Kind};
use crate::ed_oracle::momentum_sector_spectrum;
use crate::edge_analysis::{edge_energy_from_factorization, wiener_hopf_factorize, wh_kernel};
use crate::error::{Error, Result};
use crate::interaction::{
    edge_vs_bulk_hole_energy, fermi_point_hole_energy, fermi_point_particle_shift_energy, hh_interaction,
    ph_interaction, Edge,
};
use crate::model_kernels::{ModelParams, QuadratureSpec};
use crate::par::Exec;
use crate::scattering::{table_grid, PhaseKind, PhaseShiftTable};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_CONVERGENCE: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "xxz-phase", version, about = "Phase shifts and finite-size interaction energies of the XXZ chain")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Particle–hole (or hole–hole) phase shift on a rapidity grid.
    PhaseShift(RunArgs),
    /// Momentum, energy and velocity of holes and particles.
    Dispersion(RunArgs),
    /// Closed-form interaction energy at --t1/--t0.
    Interaction(RunArgs),
    /// Finite-L Bethe measurement of the interaction energy.
    Bethe(RunArgs),
    /// Bethe scan with Richardson extrapolation; exit 3 beyond --tol.
    Verify(RunArgs),
    /// Wiener–Hopf factors of 1 + r₁ on |ω| ≤ --omega-max.
    Factorize(RunArgs),
    /// Fermi-point energies from the factorization and the closed forms.
    Edge(RunArgs),
    /// Exact spectrum of a small ring, by momentum sector.
    Ed(RunArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EdgeArg {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum StateArg {
    /// Particle–hole.
    Ph,
    /// Two holes.
    Hh,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    #[arg(long, conflicts_with = "delta", allow_negative_numbers = true)]
    pub eta: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub delta: Option<f64>,
    /// Chain lengths, comma separated.
    #[arg(long = "L", value_delimiter = ',')]
    pub lengths: Vec<usize>,
    #[arg(long, allow_negative_numbers = true)]
    pub t0: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub t1: Option<f64>,
    #[arg(long = "t-max")]
    pub t_max: Option<f64>,
    #[arg(long = "omega-max")]
    pub omega_max: Option<f64>,
    /// Validation threshold for verify, factorize and edge.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, value_enum, default_value = "csv")]
    pub format: Format,
    #[arg(long)]
    pub output: Option<PathBuf>,
    #[arg(long = "hole-frac")]
    pub hole_frac: Option<f64>,
    /// Particle position; for --state hh the second hole.
    #[arg(long = "particle-frac")]
    pub particle_frac: Option<f64>,
    #[arg(long, value_enum)]
    pub edge: Option<EdgeArg>,
    #[arg(long, value_enum)]
    pub state: Option<StateArg>,
    /// Down-spin count for ed (default L/2).
    #[arg(long)]
    pub magnons: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Coupling {
    Eta(f64),
    Delta(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    PhaseShift,
    Dispersion,
    Interaction,
    Bethe,
    Verify,
    Factorize,
    Edge,
    Ed,
}

impl CommandKind {
    const ALL: [CommandKind; 8] = [
        CommandKind::PhaseShift,
        CommandKind::Dispersion,
        CommandKind::Interaction,
        CommandKind::Bethe,
        CommandKind::Verify,
        CommandKind::Factorize,
        CommandKind::Edge,
        CommandKind::Ed,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CommandKind::PhaseShift => "phase-shift",
            CommandKind::Dispersion => "dispersion",
            CommandKind::Interaction => "interaction",
            CommandKind::Bethe => "bethe",
            CommandKind::Verify => "verify",
            CommandKind::Factorize => "factorize",
            CommandKind::Edge => "edge",
            CommandKind::Ed => "ed",
        }
    }
}

/// Resolved run configuration: every default is filled in.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: CommandKind,
    pub coupling: Coupling,
    pub lengths: Vec<usize>,
    pub t0: Option<f64>,
    pub t1: Option<f64>,
    pub t_max: f64,
    pub omega_max: Option<f64>,
    pub tol: Option<f64>,
    pub hole_frac: f64,
    pub particle_frac: f64,
    pub edge: EdgeArg,
    pub state: StateArg,
    pub magnons: Option<usize>,
    pub format: Format,
    pub output: Option<PathBuf>,
}

impl RunConfig {
    pub fn from_args(command: CommandKind, a: RunArgs) -> Result<Self> {
        let coupling = match (a.eta, a.delta) {
            (Some(e), None) => Coupling::Eta(e),
            (None, Some(d)) => Coupling::Delta(d),
            _ => return Err(Error::Domain("exactly one of --eta and --delta is required".into())),
        };
        let state = a.state.unwrap_or(StateArg::Ph);
        let lengths = if a.lengths.is_empty() {
            match command {
                CommandKind::Ed => vec![8],
                _ => vec![64, 128, 256, 512],
            }
        } else {
            a.lengths
        };
        let (hf, pf) = match state {
            StateArg::Ph => (0.375, 0.25),
            StateArg::Hh => (0.375, 0.75),
        };
        let cfg = RunConfig {
            command,
            coupling,
            lengths,
            t0: a.t0,
            t1: a.t1,
            t_max: a.t_max.unwrap_or(20.0),
            omega_max: a.omega_max,
            tol: a.tol,
            hole_frac: a.hole_frac.unwrap_or(hf),
            particle_frac: a.particle_frac.unwrap_or(pf),
            edge: a.edge.unwrap_or(EdgeArg::Right),
            state,
            magnons: a.magnons,
            format: a.format,
            output: a.output,
        };
        cfg.params()?;
        cfg.quadrature()?;
        Ok(cfg)
    }

    pub fn params(&self) -> Result<ModelParams> {
        match self.coupling {
            Coupling::Eta(e) => ModelParams::new(e),
            Coupling::Delta(d) => ModelParams::from_delta(d),
        }
    }

    pub fn quadrature(&self) -> Result<QuadratureSpec> {
        let mut q = QuadratureSpec::default();
        if let Some(w) = self.omega_max {
            let n = (q.omega_cutoff / q.omega_step).round();
            q.omega_cutoff = w;
            q.omega_step = w / n;
        }
        q.validate()?;
        Ok(q)
    }

    /// Configuration keys in emission order.
    pub fn to_meta(&self) -> Vec<(String, String)> {
        let mut m = vec![("command".to_string(), self.command.name().to_string())];
        match self.coupling {
            Coupling::Eta(e) => m.push(("eta".into(), num(e))),
            Coupling::Delta(d) => m.push(("delta".into(), num(d))),
        }
        let ls: Vec<String> = self.lengths.iter().map(|l| l.to_string()).collect();
        m.push(("L".into(), ls.join(",")));
        if let Some(t) = self.t0 {
            m.push(("t0".into(), num(t)));
        }
        if let Some(t) = self.t1 {
            m.push(("t1".into(), num(t)));
        }
        m.push(("t-max".into(), num(self.t_max)));
        if let Some(w) = self.omega_max {
            m.push(("omega-max".into(), num(w)));
        }
        if let Some(t) = self.tol {
            m.push(("tol".into(), num(t)));
        }
        m.push(("hole-frac".into(), num(self.hole_frac)));
        m.push(("particle-frac".into(), num(self.particle_frac)));
        m.push(("edge".into(), match self.edge { EdgeArg::Left => "left", EdgeArg::Right => "right" }.into()));
        m.push(("state".into(), match self.state { StateArg::Ph => "ph", StateArg::Hh => "hh" }.into()));
        if let Some(n) = self.magnons {
            m.push(("magnons".into(), n.to_string()));
        }
        m.push(("format".into(), match self.format { Format::Csv => "csv", Format::Json => "json" }.into()));
        if let Some(o) = &self.output {
            m.push(("output".into(), o.to_string_lossy().into_owned()));
        }
        m
    }

    pub fn from_meta(meta: &[(String, String)]) -> Result<Self> {
        let get = |k: &str| meta.iter().find(|(a, _)| a == k).map(|(_, v)| v.as_str());
        let bad = |k: &str| Error::Domain(format!("metadata key {k} is malformed"));
        let f = |k: &str| -> Result<Option<f64>> { get(k).map(|v| v.parse::<f64>().map_err(|_| bad(k))).transpose() };
        let name = get("command").ok_or_else(|| bad("command"))?;
        let command = CommandKind::ALL.into_iter().find(|c| c.name() == name).ok_or_else(|| bad("command"))?;
        let coupling = match (f("eta")?, f("delta")?) {
            (Some(e), None) => Coupling::Eta(e),
            (None, Some(d)) => Coupling::Delta(d),
            _ => return Err(bad("eta")),
        };
        let lengths = get("L")
            .ok_or_else(|| bad("L"))?
            .split(',')
            .map(|s| s.parse::<usize>().map_err(|_| bad("L")))
            .collect::<Result<Vec<_>>>()?;
        let edge = match get("edge") {
            Some("left") => EdgeArg::Left,
            Some("right") => EdgeArg::Right,
            _ => return Err(bad("edge")),
        };
        let state = match get("state") {
            Some("ph") => StateArg::Ph,
            Some("hh") => StateArg::Hh,
            _ => return Err(bad("state")),
        };
        let format = match get("format") {
            Some("csv") => Format::Csv,
            Some("json") => Format::Json,
            _ => return Err(bad("format")),
        };
        Ok(RunConfig {
            command,
            coupling,
            lengths,
            t0: f("t0")?,
            t1: f("t1")?,
            t_max: f("t-max")?.ok_or_else(|| bad("t-max"))?,
            omega_max: f("omega-max")?,
            tol: f("tol")?,
            hole_frac: f("hole-frac")?.ok_or_else(|| bad("hole-frac"))?,
            particle_frac: f("particle-frac")?.ok_or_else(|| bad("particle-frac"))?,
            edge,
            state,
            magnons: get("magnons").map(|v| v.parse().map_err(|_| bad("magnons"))).transpose()?,
            format,
            output: get("output").map(PathBuf::from),
        })
    }
}

/// Shortest decimal that parses back to the same f64.
fn num(x: f64) -> String {
    format!("{x:?}")
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub meta: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    fn new(cfg: &RunConfig, p: &ModelParams, columns: &[&str]) -> Self {
        let mut meta = cfg.to_meta();
        meta.push(("derived.eta".into(), num(p.eta)));
        meta.push(("derived.delta".into(), num(p.delta)));
        meta.push(("derived.xi".into(), num(p.xi)));
        meta.push(("derived.v".into(), num(p.fermi_velocity)));
        Table { meta, columns: columns.iter().map(|s| s.to_string()).collect(), rows: Vec::new() }
    }

    fn note(&mut self, key: &str, value: f64) {
        self.meta.push((format!("result.{key}"), num(value)));
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("#");
        for (k, v) in &self.meta {
            let _ = write!(s, " {}={}", k, escape(v));
        }
        s.push('\n');
        s.push_str(&self.columns.join(","));
        s.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|c| match c {
                    Cell::Int(i) => i.to_string(),
                    Cell::Float(x) => format!("{x:.16e}"),
                })
                .collect();
            s.push_str(&cells.join(","));
            s.push('\n');
        }
        s
    }

    pub fn to_json(&self) -> String {
        use serde_json::{Map, Value};
        let mut meta = Map::new();
        for (k, v) in &self.meta {
            meta.insert(k.clone(), Value::String(v.clone()));
        }
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                Value::Array(
                    r.iter()
                        .map(|c| match *c {
                            Cell::Int(i) => Value::from(i),
                            Cell::Float(x) => serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number),
                        })
                        .collect(),
                )
            })
            .collect();
        let mut obj = Map::new();
        obj.insert("meta".into(), Value::Object(meta));
        obj.insert("columns".into(), Value::from(self.columns.clone()));
        obj.insert("rows".into(), Value::Array(rows));
        let mut s = serde_json::to_string_pretty(&Value::Object(obj)).expect("serializable");
        s.push('\n');
        s
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }
}

fn escape(v: &str) -> String {
    v.replace('%', "%25").replace(' ', "%20")
}

fn unescape(v: &str) -> String {
    v.replace("%20", " ").replace("%25", "%")
}

/// Metadata pairs from the first line of a CSV emission.
pub fn parse_csv_meta(text: &str) -> Result<Vec<(String, String)>> {
    let line = text.lines().next().unwrap_or("");
    let body = line.strip_prefix('#').ok_or_else(|| Error::Domain("missing metadata line".into()))?;
    body.split_whitespace()
        .map(|kv| {
            kv.split_once('=')
                .map(|(k, v)| (k.to_string(), unescape(v)))
                .ok_or_else(|| Error::Domain(format!("bad metadata field {kv}")))
        })
        .collect()
}

/// Metadata pairs from a JSON emission.
pub fn parse_json_meta(text: &str) -> Result<Vec<(String, String)>> {
    let v: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::Domain(e.to_string()))?;
    let meta = v.get("meta").and_then(|m| m.as_object()).ok_or_else(|| Error::Domain("missing meta object".into()))?;
    Ok(meta.iter().map(|(k, v)| (k.clone(), v.as_str().unwrap_or_default().to_string())).collect())
}

/// Table plus an optional validation failure message.
pub struct Outcome {
    pub table: Table,
    pub failure: Option<String>,
}

fn f(x: f64) -> Cell {
    Cell::Float(x)
}

pub fn execute(cfg: &RunConfig) -> Result<Outcome> {
    let p = cfg.params()?;
    let q = cfg.quadrature()?;
    let exec = Exec::default();
    let mut failure = None;
    let table = match cfg.command {
        CommandKind::PhaseShift => {
            let kind = match cfg.state {
                StateArg::Ph => PhaseKind::ParticleHole,
                StateArg::Hh => PhaseKind::HoleHole,
            };
            let tab = PhaseShiftTable::build(kind, &p, &q, cfg.t_max, exec)?;
            let mut t = Table::new(cfg, &p, &["t", "delta_theta", "smooth_part"]);
            t.note("asymptote", tab.asymptote);
            t.note("jump", tab.jump_magnitude);
            for i in 0..tab.grid.len() {
                t.rows.push(vec![f(tab.grid[i]), f(tab.total(i)), f(tab.smooth_values[i])]);
            }
            t
        }
        CommandKind::Dispersion => {
            let mut t = Table::new(cfg, &p, &["t", "p_hole", "p_particle", "energy", "v_hole", "v_particle"]);
            for &x in &table_grid(cfg.t_max) {
                t.rows.push(vec![
                    f(x),
                    f(hole_momentum(x, &p)),
                    f(particle_momentum(x, &p)?),
                    f(dressed_energy_rapidity(x, Kind::Hole, &p)),
                    f(velocity(x, Kind::Hole, &p)),
                    f(velocity(x, Kind::Particle, &p)),
                ]);
            }
            t
        }
        CommandKind::Interaction => {
            let (t1, t0) = match (cfg.t1, cfg.t0) {
                (Some(a), Some(b)) => (a, b),
                _ => return Err(Error::Domain("interaction needs --t1 and --t0".into())),
            };
            let mut t = Table::new(cfg, &p, &["L", "delta_e1", "delta_e2", "delta_e"]);
            let r = match cfg.state {
                StateArg::Ph => ph_interaction(t1, t0, &p, &q)?,
                StateArg::Hh => hh_interaction(t1, t0, &p, &q)?,
            };
            let (e1, e2) = r.components.unwrap_or((f64::NAN, f64::NAN));
            t.note("coefficient", r.coefficient);
            for w in &r.warnings {
                eprintln!("warning: {w}");
            }
            for &l in &cfg.lengths {
                let lf = l as f64;
                t.rows.push(vec![Cell::Int(l as i64), f(e1 / lf), f(e2 / lf), f(r.coefficient / lf)]);
            }
            t
        }
        CommandKind::Bethe | CommandKind::Verify => {
            let scan = bethe_scan(cfg, &p, &q, exec)?;
            let mut t = Table::new(
                cfg,
                &p,
                &[
                    "L", "E_full", "E_ground", "t1", "t0", "measured_L", "predicted_L", "deviation", "shifted_root",
                    "backflow_shift", "residual",
                ],
            );
            for r in &scan.rows {
                t.rows.push(report_row(r));
            }
            t.note("extrapolated_measured_L", scan.extrapolated_measured);
            t.note("extrapolated_predicted_L", scan.extrapolated_predicted);
            t.note("extrapolated_deviation", scan.deviation);
            if cfg.command == CommandKind::Verify {
                let threshold = cfg.tol.unwrap_or(0.01);
                t.note("threshold", threshold);
                if !(scan.deviation <= threshold) {
                    failure = Some(format!(
                        "extrapolated deviation {:.4e} exceeds threshold {threshold:.1e} (measured {:.6}, predicted {:.6})",
                        scan.deviation, scan.extrapolated_measured, scan.extrapolated_predicted
                    ));
                }
            }
            t
        }
        CommandKind::Factorize => {
            let fac = wiener_hopf_factorize(&p, &q)?;
            let mut t = Table::new(cfg, &p, &["omega", "g_plus_re", "g_plus_im", "g_minus_re", "g_minus_im", "kernel"]);
            let w_max = cfg.omega_max.unwrap_or(20.0);
            let n = (w_max / 0.05).round() as i64;
            for i in -n..=n {
                let w = i as f64 * 0.05;
                let (a, b) = (fac.g_plus_at(w), fac.g_minus_at(w));
                t.rows.push(vec![f(w), f(a.re), f(a.im), f(b.re), f(b.im), f(wh_kernel(w, &p))]);
            }
            let g0 = fac.g_plus_at(0.0).re;
            t.note("g_plus_0", g0);
            t.note("residual", fac.residual);
            let tol = cfg.tol.unwrap_or(1e-6);
            if !((g0 - p.xi.sqrt()).abs() <= tol && fac.residual <= tol) {
                failure = Some(format!("G+(0) = {g0} vs sqrt(xi) = {}, residual {:.2e}", p.xi.sqrt(), fac.residual));
            }
            t
        }
        CommandKind::Edge => {
            let edge = match cfg.edge {
                EdgeArg::Left => Edge::Left,
                EdgeArg::Right => Edge::Right,
            };
            let t1 = cfg.t1.unwrap_or(0.5);
            let fac = wiener_hopf_factorize(&p, &q)?;
            let e1_fp = fermi_point_hole_energy(1.0, edge, &p);
            let e1_wh = edge_energy_from_factorization(&fac, 1.0, &p);
            let cmp = edge_vs_bulk_hole_energy(1.0, edge, &p, &q)?;
            let e2_fp = fermi_point_particle_shift_energy(t1, 1.0, edge, &p);
            let far = match edge {
                Edge::Right => q.t_cutoff,
                Edge::Left => -q.t_cutoff,
            };
            let e2_bulk = ph_interaction(t1, far, &p, &q)?.components.map_or(f64::NAN, |c| c.1);
            let mut t = Table::new(
                cfg,
                &p,
                &["t1", "e1_fermi_point", "e1_factorized", "e1_bulk_limit", "bulk_ratio", "e2_fermi_point", "e2_bulk_limit"],
            );
            t.rows.push(vec![f(t1), f(e1_fp), f(e1_wh), f(cmp.bulk_limit), f(cmp.ratio), f(e2_fp), f(e2_bulk)]);
            let tol = cfg.tol.unwrap_or(1e-6);
            let mut bad = Vec::new();
            if !((e1_wh - e1_fp).abs() <= tol) {
                bad.push(format!("factorized {e1_wh} vs closed form {e1_fp}"));
            }
            if !p.is_free_fermion() && !((cmp.ratio - p.xi).abs() <= 1e-4) {
                bad.push(format!("bulk ratio {} vs xi {}", cmp.ratio, p.xi));
            }
            if !bad.is_empty() {
                failure = Some(bad.join("; "));
            }
            t
        }
        CommandKind::Ed => {
            let l = cfg.lengths[0];
            let m = cfg.magnons.unwrap_or(l / 2);
            let blocks = exec.map_range(l, |k| momentum_sector_spectrum(l, m, p.delta, k));
            let mut t = Table::new(cfg, &p, &["k", "momentum", "energy"]);
            for (k, b) in blocks.into_iter().enumerate() {
                for e in b? {
                    t.rows.push(vec![Cell::Int(k as i64), f(2.0 * std::f64::consts::PI * k as f64 / l as f64), f(e)]);
                }
            }
            t
        }
    };
    Ok(Outcome { table, failure })
}

fn bethe_scan(cfg: &RunConfig, p: &ModelParams, q: &QuadratureSpec, exec: Exec) -> Result<ScanReport> {
    if let (Some(t1), Some(t0), StateArg::Ph) = (cfg.t1, cfg.t0, cfg.state) {
        // rapidity targeting: labels picked per L, rows assembled directly
        let mut rows = Vec::new();
        for &l in &cfg.lengths {
            let spec = particle_hole_from_rapidities(l, p, t1, t0)?;
            rows.push(crate::bethe_finite::measure_interaction_energy(l, p, spec, q)?);
        }
        let n = rows.len();
        let (em, ep) = if n >= 2 && rows[n - 1].length == 2 * rows[n - 2].length {
            (
                crate::bethe_finite::richardson(rows[n - 2].scaled_measured(), rows[n - 1].scaled_measured()),
                crate::bethe_finite::richardson(rows[n - 2].scaled_predicted(), rows[n - 1].scaled_predicted()),
            )
        } else {
            (rows[n - 1].scaled_measured(), rows[n - 1].scaled_predicted())
        };
        let deviation = if ep != 0.0 { (em - ep).abs() / ep.abs() } else { (em - ep).abs() };
        return Ok(ScanReport { rows, extrapolated_measured: em, extrapolated_predicted: ep, deviation });
    }
    let exc = match cfg.state {
        StateArg::Ph => ScaledExcitation::ParticleHole { hole_frac: cfg.hole_frac, particle_frac: cfg.particle_frac },
        StateArg::Hh => ScaledExcitation::TwoHole { f1: cfg.hole_frac, f2: cfg.particle_frac },
    };
    scan_interaction(&cfg.lengths, p, exc, q, exec)
}

fn report_row(r: &InteractionEnergyReport) -> Vec<Cell> {
    vec![
        Cell::Int(r.length as i64),
        f(r.e_full),
        f(r.e_ground),
        f(r.rapidities.0),
        f(r.rapidities.1),
        f(r.scaled_measured()),
        f(r.scaled_predicted()),
        f(r.relative_deviation),
        f(r.shifted_root.unwrap_or(f64::NAN)),
        f(r.backflow_shift),
        f(r.residual),
    ]
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Domain(_) => EXIT_USAGE,
        Error::Convergence(_) | Error::Singular(_) | Error::Collision(..) | Error::Bracket(_) => EXIT_CONVERGENCE,
        Error::Validation(_) => EXIT_VALIDATION,
    }
}

/// Parses `argv`, runs the command, writes the table; returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let (kind, args) = match cli.command {
        Command::PhaseShift(a) => (CommandKind::PhaseShift, a),
        Command::Dispersion(a) => (CommandKind::Dispersion, a),
        Command::Interaction(a) => (CommandKind::Interaction, a),
        Command::Bethe(a) => (CommandKind::Bethe, a),
        Command::Verify(a) => (CommandKind::Verify, a),
        Command::Factorize(a) => (CommandKind::Factorize, a),
        Command::Edge(a) => (CommandKind::Edge, a),
        Command::Ed(a) => (CommandKind::Ed, a),
    };
    let cfg = match RunConfig::from_args(kind, args) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    let outcome = match execute(&cfg) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    let text = outcome.table.render(cfg.format);
    let written = match &cfg.output {
        Some(path) => std::fs::write(path, text.as_bytes()),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write output: {e}");
        return EXIT_USAGE;
    }
    match outcome.failure {
        Some(msg) => {
            eprintln!("validation failed: {msg}");
            EXIT_VALIDATION
        }
        None => EXIT_OK,
    }
}
