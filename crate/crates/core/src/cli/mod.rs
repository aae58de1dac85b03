//! `rz` command-line harness: CSV/JSON/SVG artifacts for each model, and the
//! on-disk zero cache.

mod svg;

use std::ffi::OsString;
use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};

use crate::counting::{classical_period, launch_momentum, classical_trajectory, n_average, ModelScales};
use crate::dirac::{
    eigenfunction_xp, find_dirac_zeros, n_polya_smooth, polya_envelope, polya_xi_star, riemann_xi, xi_h, DiracTarget,
    SpectralFunctionKind,
};
use crate::landau::{landau_levels, n_landau, psi_plus_grid, LandauGeometry};
use crate::mertens::{m_z_direct, m_z_partials, m_z_perron, mertens, mertens_residue, ResidueExpansionConfig, AT_ZERO_TOL};
use crate::mirror::{
    interferometer_layout, moebius_mirrors, normalizability_diagnostic, phase_sequence, propagate_exact, tuned_theta,
    DirichletCharacter,
};
use crate::zeta::{ingest_zeros, persist_zeros, ZeroDatabase};
use crate::{Error, Result};

use svg::{line_plot, Series};

/// First nontrivial zero ordinate, the default energy of the mirror command.
const T1: f64 = 14.134_725_141_734_694;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Command {
    /// Zero ordinates on the critical line, with the counting staircase
    Zeros,
    /// xi_H, the Polya xi* and Riemann xi on a t grid; xp eigenfunction and orbit
    Xih,
    /// Polya xi* against its envelope
    Polya,
    /// Landau levels in a box and |psi+| on a square grid
    Landau,
    /// Moebius-mirror normalizability diagnostic
    Mirror,
    /// Perron residue expansion of M_z(n) against the direct sum
    Perron,
    /// Mertens function from the zero expansion
    Mertens,
    /// Interferometer mirror layout as JSON
    Interferometer,
}

#[derive(Debug, Clone, Default, clap::Args)]
pub struct Flags {
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub t_min: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub t_max: Option<f64>,
    /// energy E for mirror, perron and the landau grid
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub energy: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub epsilon: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub vartheta: Option<f64>,
    #[arg(long, global = true)]
    pub n_max: Option<u64>,
    #[arg(long, global = true)]
    pub n_zeros: Option<usize>,
    #[arg(long, global = true)]
    pub n_trivial: Option<u32>,
    #[arg(long, global = true)]
    pub l_over_ell: Option<f64>,
    #[arg(long, global = true)]
    pub character_modulus: Option<u64>,
    /// comma-separated real values chi(0), ..., chi(q-1)
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    pub character_values: Option<Vec<f64>>,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// zero cache file (JSON); defaults to $RZ_CACHE_DIR/zeros.json
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
    /// reference zero table (text or JSON) used instead of the cache
    #[arg(long, global = true)]
    pub zero_table: Option<PathBuf>,
    /// JSON file with defaults for any of the flags above
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Parser)]
#[command(name = "rz", version, about = "Spectral models of the Riemann zeros")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    t_min: Option<f64>,
    t_max: Option<f64>,
    energy: Option<f64>,
    epsilon: Option<f64>,
    vartheta: Option<f64>,
    n_max: Option<u64>,
    n_zeros: Option<usize>,
    n_trivial: Option<u32>,
    l_over_ell: Option<f64>,
    character_modulus: Option<u64>,
    character_values: Option<Vec<f64>>,
    out: Option<PathBuf>,
    cache: Option<PathBuf>,
    zero_table: Option<PathBuf>,
}

/// Fully resolved parameters of one run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub command: Command,
    pub t_min: f64,
    pub t_max: f64,
    pub energy: f64,
    pub epsilon: f64,
    /// None selects the tuned phase (mirror) or 0
    pub vartheta: Option<f64>,
    pub n_max: u64,
    pub n_zeros: usize,
    pub n_trivial: u32,
    pub l_over_ell: f64,
    pub character_modulus: Option<u64>,
    pub character_values: Option<Vec<f64>>,
    pub output_dir: PathBuf,
    pub zero_cache: Option<PathBuf>,
    pub zero_table: Option<PathBuf>,
}

impl RunConfig {
    /// Defaults of a command before flags and config are applied.
    pub fn defaults(command: Command) -> Self {
        let (t_min, t_max, energy, n_max, n_zeros) = match command {
            Command::Zeros => (0.0, 50.0, 0.0, 0, 0),
            Command::Xih | Command::Polya => (0.0, 100.0, 0.0, 0, 0),
            Command::Landau => (0.0, 20.0, 10.0, 0, 0),
            Command::Mirror => (0.0, 0.0, T1, 100_000, 0),
            Command::Perron => (0.0, 0.0, 20.0, 50, 100),
            Command::Mertens => (0.0, 0.0, 0.0, 100, 100),
            Command::Interferometer => (0.0, 0.0, 0.0, 10, 0),
        };
        RunConfig {
            command,
            t_min,
            t_max,
            energy,
            epsilon: 0.1,
            vartheta: None,
            n_max,
            n_zeros,
            n_trivial: 20,
            l_over_ell: 100.0,
            character_modulus: None,
            character_values: None,
            output_dir: PathBuf::from("."),
            zero_cache: None,
            zero_table: None,
        }
    }

    /// Flags over config file over defaults; `cache_dir` is `RZ_CACHE_DIR`.
    pub fn resolve(cli: &Cli, cache_dir: Option<PathBuf>) -> Result<Self> {
        let f = &cli.flags;
        let file: FileConfig = match &f.config {
            Some(p) => serde_json::from_str(&fs::read_to_string(p)?)
                .map_err(|e| Error::Format(format!("config {}: {e}", p.display())))?,
            None => FileConfig::default(),
        };
        let d = Self::defaults(cli.command);
        let cfg = RunConfig {
            command: cli.command,
            t_min: f.t_min.or(file.t_min).unwrap_or(d.t_min),
            t_max: f.t_max.or(file.t_max).unwrap_or(d.t_max),
            energy: f.energy.or(file.energy).unwrap_or(d.energy),
            epsilon: f.epsilon.or(file.epsilon).unwrap_or(d.epsilon),
            vartheta: f.vartheta.or(file.vartheta),
            n_max: f.n_max.or(file.n_max).unwrap_or(d.n_max),
            n_zeros: f.n_zeros.or(file.n_zeros).unwrap_or(d.n_zeros),
            n_trivial: f.n_trivial.or(file.n_trivial).unwrap_or(d.n_trivial),
            l_over_ell: f.l_over_ell.or(file.l_over_ell).unwrap_or(d.l_over_ell),
            character_modulus: f.character_modulus.or(file.character_modulus),
            character_values: f.character_values.clone().or(file.character_values),
            output_dir: f.out.clone().or(file.out).unwrap_or(d.output_dir),
            zero_cache: f.cache.clone().or(file.cache).or_else(|| cache_dir.map(|d| d.join("zeros.json"))),
            zero_table: f.zero_table.clone().or(file.zero_table),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Domain(m));
        match self.command {
            Command::Zeros | Command::Xih | Command::Polya if !(0.0 <= self.t_min && self.t_min < self.t_max) => {
                bad(format!("need 0 <= t_min < t_max, got {} and {}", self.t_min, self.t_max))
            }
            Command::Zeros if self.t_max > 500.0 && self.zero_table.is_none() => bad("t_max above 500 needs --zero-table".into()),
            Command::Xih if self.t_max > 200.0 => bad("xih t_max must be <= 200".into()),
            Command::Mirror if !(self.epsilon > 0.0) => bad("epsilon must be positive".into()),
            Command::Mirror if !(2..=1_000_000).contains(&self.n_max) => bad("mirror n_max must lie in [2, 1e6]".into()),
            Command::Perron if self.n_max < 10 || self.n_max > 100_000 => bad("perron n_max must lie in [10, 1e5]".into()),
            Command::Mertens if self.n_max < 2 || self.n_max > 10_000_000 => bad("mertens n_max must lie in [2, 1e7]".into()),
            Command::Interferometer if self.n_max < 2 || self.n_max > 10_000_000 => {
                bad("interferometer n_max must lie in [2, 1e7]".into())
            }
            _ => Ok(()),
        }
    }
}

fn num(x: f64) -> String {
    format!("{x:.16e}")
}

fn write_csv(path: &Path, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
    let mut s = header.join(",");
    s.push('\n');
    for r in rows {
        s.push_str(&r.join(","));
        s.push('\n');
    }
    fs::write(path, s)?;
    Ok(())
}

struct Artifacts {
    dir: PathBuf,
    files: Vec<PathBuf>,
}

impl Artifacts {
    fn csv(&mut self, name: &str, header: &[&str], rows: &[Vec<String>]) -> Result<()> {
        let p = self.dir.join(name);
        write_csv(&p, header, rows)?;
        self.files.push(p);
        Ok(())
    }

    fn text(&mut self, name: &str, body: &str) -> Result<()> {
        let p = self.dir.join(name);
        fs::write(&p, body)?;
        self.files.push(p);
        Ok(())
    }
}

fn grid(a: f64, b: f64, step: f64) -> Vec<f64> {
    let n = ((b - a) / step + 1e-9).floor() as usize;
    (0..=n).map(|k| a + k as f64 * step).collect()
}

/// Removes the lock file on drop.
struct CacheLock(PathBuf);

impl Drop for CacheLock {
    fn drop(&mut self) {
        let _ = fs::remove_file(&self.0);
    }
}

fn lock_cache(path: &Path) -> Result<CacheLock> {
    let lock = path.with_extension("lock");
    match OpenOptions::new().write(true).create_new(true).open(&lock) {
        Ok(mut f) => {
            let _ = writeln!(f, "{}", std::process::id());
            Ok(CacheLock(lock))
        }
        Err(e) if e.kind() == std::io::ErrorKind::AlreadyExists => {
            Err(Error::Io(format!("zero cache {} is locked by another process", path.display())))
        }
        Err(e) => Err(e.into()),
    }
}

enum Need {
    UpTo(f64),
    Count(usize),
}

fn satisfied(db: &ZeroDatabase, need: &Need) -> bool {
    match *need {
        Need::UpTo(t) => db.t_max_verified >= t,
        Need::Count(n) => db.len() >= n,
    }
}

fn grow(db: &mut ZeroDatabase, need: &Need) -> Result<()> {
    while !satisfied(db, need) {
        let target = match *need {
            Need::UpTo(t) => t,
            Need::Count(_) => db.t_max_verified + 50.0,
        };
        if target > 500.0 {
            return Err(Error::Domain(format!(
                "zeros beyond t = 500 must come from --zero-table (have {} zeros up to {})",
                db.len(),
                db.t_max_verified
            )));
        }
        db.extend_to(target)?;
    }
    Ok(())
}

/// Zero database from the reference table, else the cache (extended and
/// rewritten under an exclusive lock), else computed in memory.
fn zero_database(cfg: &RunConfig, need: Need) -> Result<ZeroDatabase> {
    if let Some(p) = &cfg.zero_table {
        let db = ingest_zeros(p)?;
        if !satisfied(&db, &need) {
            return Err(Error::Domain(format!("zero table {} is too short for this run", p.display())));
        }
        return Ok(db);
    }
    let Some(cache) = &cfg.zero_cache else {
        let mut db = ZeroDatabase::empty();
        grow(&mut db, &need)?;
        return Ok(db);
    };
    let mut db = if cache.exists() { ingest_zeros(cache)? } else { ZeroDatabase::empty() };
    if satisfied(&db, &need) {
        return Ok(db);
    }
    if let Some(dir) = cache.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir)?;
    }
    let _lock = lock_cache(cache)?;
    grow(&mut db, &need)?;
    let tmp = cache.with_extension("tmp");
    persist_zeros(&db, &tmp)?;
    fs::rename(&tmp, cache)?;
    Ok(db)
}

fn run_zeros(cfg: &RunConfig, out: &mut Artifacts) -> Result<()> {
    let db = zero_database(cfg, Need::UpTo(cfg.t_max))?;
    let rows: Vec<Vec<String>> = db
        .records
        .iter()
        .filter(|r| r.t >= cfg.t_min && r.t <= cfg.t_max)
        .map(|r| {
            let zp = r.zeta_prime_at_rho();
            vec![r.index.to_string(), num(r.t), num(r.z_prime()), num(zp.re), num(zp.im)]
        })
        .collect();
    out.csv("zeros.csv", &["index", "t", "z_prime", "zeta_prime_re", "zeta_prime_im"], &rows)?;
    let ts = db.ordinates();
    let mut stair = Vec::new();
    let mut rows = Vec::new();
    for t in grid(cfg.t_min.max(1.0), cfg.t_max, 0.05) {
        let count = ts.partition_point(|&z| z < t) as f64;
        let avg = n_average(t)?;
        stair.push((t, count));
        rows.push(vec![num(t), num(count), num(avg)]);
    }
    out.csv("counting.csv", &["t", "n_count", "n_average"], &rows)?;
    let avg: Vec<(f64, f64)> = rows.iter().zip(&stair).map(|(r, s)| (s.0, r[2].parse().unwrap_or(f64::NAN))).collect();
    out.text(
        "counting.svg",
        &line_plot(
            "zero counting",
            "t",
            &[Series { label: "N(t)", points: stair }, Series { label: "<N(t)>", points: avg }],
            false,
        ),
    )
}

fn run_xih(cfg: &RunConfig, out: &mut Artifacts) -> Result<()> {
    let ts = grid(cfg.t_min, cfg.t_max, 0.1);
    let mut rows = Vec::with_capacity(ts.len());
    let (mut a, mut b, mut c) = (Vec::new(), Vec::new(), Vec::new());
    for &t in &ts {
        let (h, s, x) = (xi_h(t)?, polya_xi_star(t)?, riemann_xi(t)?);
        rows.push(vec![num(t), num(h), num(s), num(x)]);
        a.push((t, h));
        b.push((t, s));
        c.push((t, x));
    }
    out.csv("xih.csv", &["t", "xi_h", "xi_star", "xi"], &rows)?;
    out.text(
        "xi.svg",
        &line_plot(
            "xi_H, xi*, xi",
            "t",
            &[Series { label: "xi_H", points: a }, Series { label: "xi*", points: b }, Series { label: "xi", points: c }],
            true,
        ),
    )?;

    // eigenfunction and classical orbit at the first xi_H level
    let s = ModelScales::new((2.0 * std::f64::consts::PI).sqrt(), (2.0 * std::f64::consts::PI).sqrt())?;
    let hi = cfg.t_max.min(crate::dirac::DIRAC_SCAN_BUDGET);
    let e = find_dirac_zeros(DiracTarget::Kind(SpectralFunctionKind::XiDiracH), 0.0, hi)?
        .first()
        .copied()
        .ok_or_else(|| Error::Domain(format!("no xi_H level below t = {hi}")))?;
    let mut rows = Vec::new();
    let mut pts = Vec::new();
    for k in 1..=400 {
        let x = s.l_x * k as f64 / 400.0;
        let psi = eigenfunction_xp(e, x, &s)?;
        rows.push(vec![num(x), num(psi.re), num(psi.im), num(psi.norm_sqr())]);
        pts.push((x, psi.norm_sqr()));
    }
    out.csv("psi2.csv", &["x", "psi_re", "psi_im", "psi_abs2"], &rows)?;
    out.text("psi2.svg", &line_plot(&format!("|psi|^2 at E = {e:.6}"), "x", &[Series { label: "|psi|^2", points: pts }], false))?;
    let period = classical_period(e, &s)?;
    let p0 = launch_momentum(e, &s)?;
    let mut rows = Vec::new();
    let mut pts = Vec::new();
    for k in 0..=400 {
        let t = period * k as f64 / 400.0;
        let (x, p) = classical_trajectory(e, t, p0, &s)?;
        rows.push(vec![num(t), num(x), num(p)]);
        pts.push((x, p));
    }
    out.csv("tray.csv", &["time", "x", "p"], &rows)?;
    out.text("tray.svg", &line_plot(&format!("orbit at E = {e:.6}"), "x", &[Series { label: "p(x)", points: pts }], false))
}

fn run_polya(cfg: &RunConfig, out: &mut Artifacts) -> Result<()> {
    let mut rows = Vec::new();
    let (mut a, mut b) = (Vec::new(), Vec::new());
    for t in grid(cfg.t_min, cfg.t_max, 0.1) {
        let (v, env) = (polya_xi_star(t)?, polya_envelope(t));
        rows.push(vec![num(t), num(v), num(env), num(v / env), num(n_polya_smooth(t))]);
        a.push((t, v));
        b.push((t, env));
    }
    out.csv("polya.csv", &["t", "xi_star", "envelope", "ratio", "n_smooth"], &rows)?;
    out.text(
        "polya.svg",
        &line_plot("Polya xi* and envelope", "t", &[Series { label: "|xi*|", points: a }, Series { label: "envelope", points: b }], true),
    )
}

fn run_landau(cfg: &RunConfig, out: &mut Artifacts) -> Result<()> {
    let g = LandauGeometry::new(1.0, cfg.l_over_ell)?;
    let levels = landau_levels(cfg.t_max, &g)?;
    let mut rows = Vec::new();
    for (k, &e) in levels.iter().enumerate() {
        rows.push(vec![(k + 1).to_string(), num(e), num(n_landau(e, &g)?)]);
    }
    out.csv("landau_levels.csv", &["index", "energy", "n_landau"], &rows)?;
    let (mut stair, mut smooth) = (Vec::new(), Vec::new());
    for e in grid(0.05, cfg.t_max, 0.05) {
        stair.push((e, levels.partition_point(|&l| l < e) as f64));
        smooth.push((e, n_landau(e, &g)?));
    }
    out.text(
        "landau_levels.svg",
        &line_plot(
            &format!("Landau levels, L/l = {}", cfg.l_over_ell),
            "E",
            &[Series { label: "count", points: stair }, Series { label: "n_landau", points: smooth }],
            false,
        ),
    )?;
    let grid = psi_plus_grid(cfg.energy, &g, 8.0, 200)?;
    let rows: Vec<Vec<String>> = grid.iter().map(|&(x, y, v)| vec![num(x), num(y), num(v)]).collect();
    out.csv("psi_landau.csv", &["x", "y", "abs_psi"], &rows)
}

fn log_checkpoints(n: usize) -> Vec<usize> {
    let mut v: Vec<usize> = (0..=120).map(|k| (10f64.powf(k as f64 / 20.0)).round() as usize).filter(|&k| k <= n).collect();
    v.push(n);
    v.dedup();
    v
}

fn run_mirror(cfg: &RunConfig, out: &mut Artifacts) -> Result<()> {
    let e = cfg.energy;
    let vartheta = match cfg.vartheta {
        Some(v) => v,
        None => tuned_theta(e).unwrap_or(0.0),
    };
    let n = cfg.n_max as usize;
    let report = normalizability_diagnostic(e, cfg.epsilon, n, vartheta);
    out.text("mirror.json", &(serde_json::to_string_pretty(&report).expect("report serializes") + "\n"))?;
    let rows: Vec<Vec<String>> = (0..report.checkpoints.len())
        .map(|k| {
            vec![
                report.checkpoints[k].to_string(),
                num(report.partials[k]),
                num(report.harmonic_reference[k]),
                num(report.divergent_weight[k]),
            ]
        })
        .collect();
    out.csv("mirror_partials.csv", &["n", "norm_partial", "harmonic_reference", "divergent_weight"], &rows)?;

    let partials = m_z_partials(n, e);
    let phases = phase_sequence(&partials);
    let cps = log_checkpoints(n);
    let mut rows = Vec::new();
    let mut pts = Vec::new();
    for &k in &cps {
        let m = partials[k - 1];
        rows.push(vec![k.to_string(), num(m.re), num(m.im), num(m.norm()), num(phases[k - 1])]);
        pts.push(((k as f64).ln(), m.norm()));
    }
    out.csv("mz.csv", &["n", "mz_re", "mz_im", "mz_abs", "phi"], &rows)?;
    out.text("mz.svg", &line_plot(&format!("|M_z(n)| at E = {e}"), "log n", &[Series { label: "|M_z|", points: pts }], false))?;

    let n_exact = n.min(10_000);
    let arr = moebius_mirrors(n_exact, cfg.epsilon)?.with_boundary_phase(vartheta.rem_euclid(2.0 * std::f64::consts::PI))?;
    let seq = propagate_exact(&arr, e, n_exact)?;
    let rows: Vec<Vec<String>> = log_checkpoints(n_exact)
        .into_iter()
        .map(|k| {
            let a = seq.amplitudes[k - 1];
            vec![k.to_string(), num(a[0].re), num(a[0].im), num(a[1].re), num(a[1].im), num(seq.compact_norm_partials[k - 1])]
        })
        .collect();
    out.csv("amplitudes.csv", &["n", "a_minus_re", "a_minus_im", "a_plus_re", "a_plus_im", "compact_norm"], &rows)
}

fn run_perron(cfg: &RunConfig, out: &mut Artifacts) -> Result<()> {
    let db = zero_database(cfg, Need::Count(cfg.n_zeros))?;
    let e = cfg.energy;
    let at_zero = db.find_near(e, AT_ZERO_TOL).is_some();
    let rc = ResidueExpansionConfig::new(&db, cfg.n_zeros, cfg.n_trivial, at_zero)?;
    let mut rows = Vec::new();
    let (mut a, mut b) = (Vec::new(), Vec::new());
    for n in 10..=cfg.n_max {
        let x = n as f64;
        let d = m_z_direct(x, e, true)?;
        let p = m_z_perron(x, e, &rc)?;
        rows.push(vec![n.to_string(), num(d.re), num(d.im), num(p.re), num(p.im), num(d.norm()), num(p.norm())]);
        a.push((x, d.norm()));
        b.push((x, p.norm()));
    }
    out.csv("perron.csv", &["n_or_x", "direct_re", "direct_im", "perron_re", "perron_im", "abs_direct", "abs_perron"], &rows)?;
    out.text(
        "perron.svg",
        &line_plot(
            &format!("|M_z| at E = {e}, {} zeros", cfg.n_zeros),
            "n",
            &[Series { label: "direct", points: a }, Series { label: "residues", points: b }],
            false,
        ),
    )
}

fn run_mertens(cfg: &RunConfig, out: &mut Artifacts) -> Result<()> {
    let db = zero_database(cfg, Need::Count(cfg.n_zeros))?;
    let rc = ResidueExpansionConfig::new(&db, cfg.n_zeros, cfg.n_trivial, false)?;
    let mut rows = Vec::new();
    let (mut a, mut b) = (Vec::new(), Vec::new());
    for k in 1..cfg.n_max {
        let x = k as f64 + 0.5;
        let m = mertens(x)?;
        let r = mertens_residue(x, &rc)?;
        rows.push(vec![num(x), m.to_string(), num(r.value), num(r.imaginary_residue)]);
        a.push((x, m as f64));
        b.push((x, r.value));
    }
    out.csv("mertens.csv", &["x", "mertens", "residue", "imaginary_residue"], &rows)?;
    out.text(
        "mertens.svg",
        &line_plot(
            &format!("M(x) from {} zeros", cfg.n_zeros),
            "x",
            &[Series { label: "M(x)", points: a }, Series { label: "residues", points: b }],
            false,
        ),
    )
}

fn run_interferometer(cfg: &RunConfig, out: &mut Artifacts) -> Result<()> {
    let chi = match (cfg.character_modulus, &cfg.character_values) {
        (Some(q), Some(v)) => Some(DirichletCharacter::from_real(q, v)?),
        (Some(q), None) => Some(DirichletCharacter::principal(q)?),
        (None, Some(_)) => return Err(Error::BadCharacter("character values given without a modulus".into())),
        (None, None) => None,
    };
    let layout = interferometer_layout(cfg.n_max, chi.as_ref())?.with_boundary_phase(cfg.vartheta.unwrap_or(0.0));
    out.text("interferometer.json", &(layout.to_json() + "\n"))
}

/// Runs one command and returns the artifact paths.
pub fn run(cfg: &RunConfig) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(&cfg.output_dir)?;
    let mut out = Artifacts { dir: cfg.output_dir.clone(), files: Vec::new() };
    match cfg.command {
        Command::Zeros => run_zeros(cfg, &mut out)?,
        Command::Xih => run_xih(cfg, &mut out)?,
        Command::Polya => run_polya(cfg, &mut out)?,
        Command::Landau => run_landau(cfg, &mut out)?,
        Command::Mirror => run_mirror(cfg, &mut out)?,
        Command::Perron => run_perron(cfg, &mut out)?,
        Command::Mertens => run_mertens(cfg, &mut out)?,
        Command::Interferometer => run_interferometer(cfg, &mut out)?,
    }
    Ok(out.files)
}

fn error_json(kind: &str, message: &str) -> String {
    serde_json::json!({ "error": { "kind": kind, "message": message } }).to_string()
}

/// Entry point of the `rz` binary; returns the process exit code.
pub fn main_from_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand) {
                let _ = e.print();
                return 0;
            }
            println!("{}", error_json("UsageError", &e.to_string()));
            return 2;
        }
    };
    let cache_dir = std::env::var_os("RZ_CACHE_DIR").map(PathBuf::from);
    match RunConfig::resolve(&cli, cache_dir).and_then(|cfg| run(&cfg)) {
        Ok(files) => {
            let files: Vec<String> = files.iter().map(|p| p.display().to_string()).collect();
            println!("{}", serde_json::json!({ "command": cli.command, "artifacts": files }));
            0
        }
        Err(e) => {
            println!("{}", error_json(e.kind(), &e.to_string()));
            1
        }
    }
}
