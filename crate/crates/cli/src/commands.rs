//! One function per subcommand. Each resolves its inputs, calls into the
//! library and lays the results out as a [`Table`].

use std::path::PathBuf;
use std::str::FromStr;

use gravflight::exec::ExecMode;
use gravflight::model::{
    builtin_catalog, cst, dimensionless, Particle, ParticleCatalog, Scenario, HBAR, STANDARD_GRAVITY,
};
use gravflight::report::{sweep, table_one, table_two, Figure, SweepSpec, DEFAULT_MASS_FACTORS};
use gravflight::stationary::{
    dwell_time_with, fall_time, penetrate_time, qst_total, rise_time, withdraw_time, zero_flight_time, Method,
    QuadOptions,
};
use gravflight::verify::{self, VerifyOptions};
use gravflight::wavepacket::{crossover_width_closed, return_time_numeric, ReturnCondition, WavepacketParams};
use serde_json::json;

use crate::config::ConfigFile;
use crate::output::{Cell, Format, Table};
use crate::{CliError, GlobalArgs};

pub const DEFAULT_PARTICLE: &str = "neutron";
pub const DEFAULT_VI: f64 = 1.0;
pub const DEFAULT_WIDTH: f64 = 1e-4;
pub const DEFAULT_BETA_MAX: f64 = 400.0;
pub const DEFAULT_POINTS: usize = 201;

/// Comma-separated positive mass multiples.
#[derive(Debug, Clone, PartialEq)]
pub struct MassFactors(pub Vec<f64>);

impl FromStr for MassFactors {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.split(',')
            .map(|t| t.trim().parse::<f64>().map_err(|_| format!("bad mass factor `{}`", t.trim())))
            .collect::<Result<Vec<_>, _>>()
            .map(MassFactors)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReturnArg(pub ReturnCondition);

impl FromStr for ReturnArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "value" | "launch-value" => Ok(ReturnArg(ReturnCondition::LaunchValue)),
            "height" | "launch-height" => Ok(ReturnArg(ReturnCondition::LaunchHeight)),
            other => Err(format!("unknown return condition `{other}` (value|height)")),
        }
    }
}

/// Global settings after merging flags, the settings file and defaults.
#[derive(Debug, Clone)]
pub struct Settings {
    pub particle: Particle,
    pub g: f64,
    pub z_i: f64,
    pub z_cap: Option<f64>,
    pub v_i: Option<f64>,
    pub width_d: f64,
    pub beta_min: f64,
    pub beta_max: f64,
    pub points: usize,
    pub tol: Option<f64>,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub config: ConfigFile,
}

impl Settings {
    pub fn resolve(args: &GlobalArgs) -> Result<Self, CliError> {
        let config = match &args.config {
            Some(path) => ConfigFile::load(path)?,
            None => ConfigFile::default(),
        };
        let catalog = match config.pick(args.catalog.clone(), "catalog")? {
            Some(path) => {
                let path: PathBuf = path;
                let text =
                    std::fs::read_to_string(&path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
                ParticleCatalog::from_json(&text)?
            }
            None => builtin_catalog(),
        };
        let name: String = config.pick_or(args.particle.clone(), "particle", DEFAULT_PARTICLE.to_string())?;
        let particle = match config.pick::<f64>(args.mass_kg, "mass-kg")? {
            Some(m) => {
                let label =
                    if args.particle.is_some() || config.raw("particle").is_some() { name } else { "custom".into() };
                Particle::new(label, m)?
            }
            None => catalog.particle(&name)?,
        };
        let tol = config.pick(args.tol, "tol")?;
        if let Some(t) = tol {
            if !(t > 0.0 && t < 1.0) {
                return Err(CliError::Invalid(format!("--tol must lie in (0, 1), got {t}")));
            }
        }
        let s = Self {
            particle,
            g: config.pick_or(args.g, "g", STANDARD_GRAVITY)?,
            z_i: config.pick_or(args.zi, "zi", 0.0)?,
            z_cap: config.pick(args.zcap, "zcap")?,
            v_i: config.pick(args.vi, "vi")?,
            width_d: config.pick_or(args.width_d, "width-d", DEFAULT_WIDTH)?,
            beta_min: config.pick_or(args.beta_min, "beta-min", 0.0)?,
            beta_max: config.pick_or(args.beta_max, "beta-max", DEFAULT_BETA_MAX)?,
            points: config.pick_or(args.points, "points", DEFAULT_POINTS)?,
            tol,
            format: config.pick_or(args.format, "format", Format::Csv)?,
            out: config.pick(args.out.clone(), "out")?,
            config,
        };
        if s.z_cap.is_some() && s.v_i.is_some() {
            return Err(CliError::Invalid("give either --zcap or --vi, not both".into()));
        }
        Ok(s)
    }

    pub fn scenario(&self) -> Result<Scenario, CliError> {
        Ok(match self.z_cap {
            Some(z_cap) => Scenario::new(self.particle.clone(), self.g, self.z_i, z_cap)?,
            None => {
                Scenario::from_launch_speed(self.particle.clone(), self.g, self.z_i, self.v_i.unwrap_or(DEFAULT_VI))?
            }
        })
    }

    pub fn packet(&self) -> Result<WavepacketParams, CliError> {
        let v_i = match self.v_i {
            Some(v) => v,
            None => self.scenario()?.launch_speed(),
        };
        Ok(WavepacketParams::for_particle(&self.particle, self.g, self.width_d, self.z_i, v_i)?)
    }

    fn table(&self, command: &str, columns: Vec<&'static str>) -> Table {
        let mut t = Table::new(columns);
        t.meta.insert("tool".into(), json!("gravflight"));
        t.meta.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
        t.meta.insert("command".into(), json!(command));
        t.meta.insert("hbar_J_s".into(), json!(HBAR));
        t.meta.insert("g_m_per_s2".into(), json!(self.g));
        t.meta.insert("particle".into(), json!(self.particle.name));
        t.meta.insert("mass_kg".into(), json!(self.particle.mass));
        t
    }
}

pub fn cmd_cst(s: &Settings) -> Result<Table, CliError> {
    let sc = s.scenario()?;
    let scales = sc.scales();
    let d = dimensionless(&sc);
    let t_cl = cst(&sc);
    let mut t = s.table(
        "cst",
        vec![
            "particle",
            "mass_kg",
            "z_i_m",
            "z_cap_m",
            "v_i_m_per_s",
            "cst_s",
            "T_q_s",
            "L_q_m",
            "cst_over_Tq",
            "beta_q",
            "alpha_q",
        ],
    );
    t.push(vec![
        sc.particle.name.as_str().into(),
        sc.particle.mass.into(),
        sc.z_i.into(),
        sc.z_cap.into(),
        sc.launch_speed().into(),
        t_cl.into(),
        scales.time.into(),
        scales.length.into(),
        (t_cl / scales.time).into(),
        d.beta_q.into(),
        d.alpha_q.into(),
    ]);
    Ok(t)
}

pub fn cmd_qst_stationary(s: &Settings, quadrature: bool, dwell: bool) -> Result<Table, CliError> {
    let sc = s.scenario()?;
    let b = qst_total(&sc);
    let mut columns = vec![
        "particle",
        "beta_q",
        "T_q_s",
        "rise_s",
        "penetrate_s",
        "withdraw_s",
        "fall_s",
        "total_s",
        "cst_s",
        "qst_over_cst",
        "zero_flight_s",
    ];
    let mut row: Vec<Cell> = vec![
        sc.particle.name.as_str().into(),
        b.beta_q.into(),
        b.t_q.into(),
        b.rise.into(),
        b.penetrate.into(),
        b.withdraw.into(),
        b.fall.into(),
        b.total.into(),
        b.cst.into(),
        b.ratio.into(),
        zero_flight_time(&sc.particle, sc.g)?.into(),
    ];
    let opts = QuadOptions { rel_tol: s.tol.unwrap_or(QuadOptions::default().rel_tol), ..QuadOptions::default() };
    if quadrature {
        let m = Method::Quadrature(opts);
        columns.extend(["rise_quad_s", "penetrate_quad_s", "withdraw_quad_s", "fall_quad_s"]);
        row.extend([
            rise_time(&sc, m)?.into(),
            penetrate_time(&sc, m)?.into(),
            withdraw_time(&sc, m)?.into(),
            fall_time(&sc, m)?.into(),
        ]);
    }
    if dwell {
        columns.push("dwell_s");
        row.push(dwell_time_with(&sc, opts)?.into());
    }
    let mut t = s.table("qst-stationary", columns);
    t.push(row);
    Ok(t)
}

pub fn cmd_qst_wavepacket(s: &Settings, cond: ReturnCondition, command: &str) -> Result<Table, CliError> {
    let p = s.packet()?;
    let r = table_one(&p);
    let numeric = return_time_numeric(&p, cond).ok();
    let mut t = s.table(
        command,
        vec![
            "mass_kg",
            "width_d_m",
            "v_i_m_per_s",
            "cst_s",
            "bohmian_qst_s",
            "copenhagen_qst_s",
            "bohmian_over_cst",
            "copenhagen_over_cst",
            "bohmian_deviation",
            "copenhagen_deviation",
            "numeric_return_s",
            "width_ratio",
            "width_valid",
            "crossover_width_m",
        ],
    );
    t.meta.insert(
        "return_condition".into(),
        json!(match cond {
            ReturnCondition::LaunchValue => "launch-value",
            ReturnCondition::LaunchHeight => "launch-height",
        }),
    );
    t.push(vec![
        p.m.into(),
        p.d.into(),
        p.v_i.into(),
        r.cst.into(),
        r.bohmian_qst.into(),
        r.copenhagen_qst.into(),
        r.bohmian_ratio.into(),
        r.copenhagen_ratio.into(),
        r.bohmian_deviation.into(),
        r.copenhagen_deviation.into(),
        numeric.into(),
        r.width_ratio.into(),
        r.width_valid.into(),
        crossover_width_closed(&p).into(),
    ]);
    Ok(t)
}

pub fn cmd_table_two(s: &Settings) -> Result<Table, CliError> {
    let catalog = builtin_catalog();
    let particles = [catalog.particle("electron")?, catalog.particle("neutron")?];
    let rows = table_two(&particles, s.g)?;
    let mut t = s.table(
        "table II",
        vec![
            "particle",
            "mass_kg",
            "T_q_s",
            "collision_s",
            "collision_over_Tq",
            "published_T_q_s",
            "published_collision_s",
            "published_ratio",
            "T_q_factor",
            "ratio_rel_diff",
        ],
    );
    t.meta.insert(
        "note".into(),
        json!("T_q_factor is computed T_q over the published T_q; the absolute published values are not reproduced by SI evaluation"),
    );
    for r in rows {
        t.push(vec![
            r.particle.into(),
            r.mass_kg.into(),
            r.t_q.into(),
            r.collision.into(),
            r.collision_over_tq.into(),
            r.published.map(|p| p.t_q).into(),
            r.published.map(|p| p.collision).into(),
            r.published_ratio.into(),
            r.t_q_factor.into(),
            r.ratio_rel_diff.into(),
        ]);
    }
    Ok(t)
}

pub fn cmd_sweep(s: &Settings, figure: u8, factors: Option<MassFactors>, mode: ExecMode) -> Result<Table, CliError> {
    let figure = match figure {
        2 => Figure::Two,
        3 => Figure::Three,
        other => return Err(CliError::Invalid(format!("--figure must be 2 or 3, got {other}"))),
    };
    let mut spec = SweepSpec::new(figure, s.beta_min, s.beta_max, s.points);
    spec.mass_factors = factors.map_or_else(|| DEFAULT_MASS_FACTORS.to_vec(), |f| f.0);
    let rows = sweep(&spec, mode)?;
    let value_col = match figure {
        Figure::Two => "qst_over_Tq",
        Figure::Three => "qst_over_cst",
    };
    let mut t = s.table("sweep", vec!["mass_factor", "cst_over_Tq", value_col, "beta_q"]);
    t.meta.insert("figure".into(), json!(if figure == Figure::Two { 2 } else { 3 }));
    t.meta.insert("mass_factors".into(), json!(spec.mass_factors));
    for r in rows {
        t.push(vec![r.mass_factor.into(), r.cst_over_tq.into(), r.value.into(), r.beta_q.into()]);
    }
    Ok(t)
}

pub fn cmd_verify(s: &Settings, mode: ExecMode) -> Result<(Table, bool), CliError> {
    let mut opts = VerifyOptions::default();
    if let Some(tol) = s.tol {
        opts.time_rel_tol = tol;
    }
    let report = verify::run(&opts, mode);
    let mut t = s.table("verify", vec!["check", "measured", "allowed", "passed"]);
    t.meta.insert("passed".into(), json!(report.passed()));
    t.meta.insert("seed".into(), json!(opts.seed));
    for c in &report.checks {
        t.push(vec![c.name.as_str().into(), c.measured.into(), c.allowed.into(), c.passed.into()]);
    }
    Ok((t, report.passed()))
}
