//! TOML run configuration.
//!
//! ```toml
//! scenario = "simulate"          # simulate | sweep | robustness | darkstate | check
//!
//! [geometry]                     # required: z0, d, v1, lambda, waist_cavity, waist_laser
//! z0 = "5.5 um"
//! d = "6 um"
//! v1 = "2 m/s"
//! tau = "-9 us"
//! lambda = "780 nm"
//! waist_cavity = "40 um"
//! waist_laser = "20 um"
//!
//! [physics]                      # required: omega0, g0
//! omega0 = "2 MHz"
//! g0 = "6.5 MHz"
//! ```
//!
//! Scalars are plain numbers in SI units (rad/s for rates) or strings with a
//! unit suffix. Unknown keys are rejected. Other sections: `[integrator]`,
//! `[initial]`, `[sweep]`, `[robustness]`, `[darkstate]`, `[analysis]`,
//! `[output]`; see [`RunConfig`] for fields and defaults.

use std::f64::consts::{FRAC_PI_2, PI};
use std::path::PathBuf;

use toml::{Table, Value};

use crate::dynamics::{IntegratorOptions, StateVector, StepControl};
use crate::error::ConfigError;
use crate::model::{
    Basis, GeometryParams, PhysicalParams, PulseSchedule, StateLabel, G1G2_0, G2G2_0,
};
use crate::sweep::{Axis, Metric, RobustParameter, DEFAULT_OBJECTIVE_WEIGHT};
use crate::units::{parse_quantity, Dimension, SPEED_OF_LIGHT};
use crate::C64;

/// Largest accepted `| |α|² + |β|² − 1 |`.
pub const SUPERPOSITION_NORM_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scenario {
    Simulate,
    Sweep,
    Robustness,
    DarkState,
    Check,
}

impl Scenario {
    pub const ALL: [Scenario; 5] = [
        Scenario::Simulate,
        Scenario::Sweep,
        Scenario::Robustness,
        Scenario::DarkState,
        Scenario::Check,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Scenario::Simulate => "simulate",
            Scenario::Sweep => "sweep",
            Scenario::Robustness => "robustness",
            Scenario::DarkState => "darkstate",
            Scenario::Check => "check",
        }
    }

    pub fn parse(text: &str) -> Option<Scenario> {
        Scenario::ALL.into_iter().find(|s| s.name() == text)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InitialState {
    Label(StateLabel),
    /// `α|g1,g2,0⟩ + β|g2,g2,0⟩`.
    Superposition { alpha: C64, beta: C64 },
}

impl InitialState {
    /// True when the state has weight outside the five-state subspace.
    pub fn needs_full_model(&self) -> bool {
        match self {
            InitialState::Label(l) => Basis::Subspace.index_of(*l).is_none(),
            InitialState::Superposition { beta, .. } => *beta != C64::new(0.0, 0.0),
        }
    }

    pub fn basis(&self) -> Basis {
        if self.needs_full_model() {
            Basis::Full
        } else {
            Basis::Subspace
        }
    }

    pub fn vector(&self) -> StateVector {
        let basis = self.basis();
        let terms = match *self {
            InitialState::Label(l) => vec![(l, C64::new(1.0, 0.0))],
            InitialState::Superposition { alpha, beta } if basis == Basis::Full => {
                vec![(G1G2_0, alpha), (G2G2_0, beta)]
            }
            InitialState::Superposition { alpha, .. } => vec![(G1G2_0, alpha)],
        };
        let mut amps = nalgebra::DVector::zeros(basis.dim());
        for (l, c) in terms {
            amps[basis.index_of(l).expect("label in basis")] = c;
        }
        StateVector::from_raw(basis, amps)
    }
}

/// Integrator settings; the window defaults to one covering every pulse.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorConfig {
    pub window: Option<(f64, f64)>,
    pub step: StepControl,
    pub convergence_tol: f64,
    pub max_refinements: u32,
    pub samples: usize,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        IntegratorConfig {
            window: None,
            step: StepControl::Auto,
            convergence_tol: IntegratorOptions::DEFAULT_TOL,
            max_refinements: IntegratorOptions::DEFAULT_MAX_REFINEMENTS,
            samples: IntegratorOptions::DEFAULT_SAMPLES,
        }
    }
}

impl IntegratorConfig {
    pub fn resolve(&self, g: &GeometryParams, p: &PhysicalParams) -> IntegratorOptions {
        let (t_start, t_end) =
            self.window.unwrap_or_else(|| PulseSchedule::new(g, p).default_window());
        IntegratorOptions {
            t_start,
            t_end,
            step: self.step,
            convergence_tol: self.convergence_tol,
            max_refinements: self.max_refinements,
            samples: self.samples,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepConfig {
    pub z0: Axis,
    pub d: Axis,
    pub metric: Metric,
    pub objective_weight: f64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            z0: Axis::default_z0(),
            d: Axis::default_d(),
            metric: Metric::Deviation,
            objective_weight: DEFAULT_OBJECTIVE_WEIGHT,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RobustnessConfig {
    pub parameter: RobustParameter,
    pub relative_range: f64,
    pub steps: usize,
}

impl Default for RobustnessConfig {
    fn default() -> Self {
        RobustnessConfig { parameter: RobustParameter::V, relative_range: 0.2, steps: 21 }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutputConfig {
    pub dir: PathBuf,
    pub prefix: String,
}

impl Default for OutputConfig {
    fn default() -> Self {
        OutputConfig { dir: PathBuf::from("."), prefix: "run".into() }
    }
}

/// Fully resolved run description.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub scenario: Scenario,
    pub geometry: GeometryParams,
    pub physics: PhysicalParams,
    pub integrator: IntegratorConfig,
    pub initial: InitialState,
    pub sweep: SweepConfig,
    pub robustness: RobustnessConfig,
    /// Pulse-clock time for the dark-state report.
    pub darkstate_time: f64,
    /// Target angle for fidelity; `None` uses the computed mixing angle.
    pub target_angle: Option<f64>,
    pub output: OutputConfig,
}

impl RunConfig {
    pub fn integrator_options(&self) -> IntegratorOptions {
        self.integrator.resolve(&self.geometry, &self.physics)
    }

    /// Serializes every field, defaults included, in plain SI units.
    pub fn to_toml(&self) -> String {
        let mut root = Table::new();
        root.insert("scenario".into(), self.scenario.name().into());

        let g = &self.geometry;
        root.insert(
            "geometry".into(),
            table([
                ("x0", g.x0.into()),
                ("y0", g.y0.into()),
                ("z0", g.z0.into()),
                ("d", g.d.into()),
                ("v1", g.v1.into()),
                ("v2", g.v2.into()),
                ("theta1", g.theta1.into()),
                ("theta2", g.theta2.into()),
                ("tau", g.tau.into()),
                ("lambda", g.lambda.into()),
                ("waist_cavity", g.waist_cavity.into()),
                ("waist_laser", g.waist_laser.into()),
            ]),
        );

        let p = &self.physics;
        root.insert(
            "physics".into(),
            table([
                ("omega0", p.omega0.into()),
                ("g0", p.g0.into()),
                ("omega", p.omega.into()),
                ("kappa", p.kappa.into()),
                ("gamma", p.gamma.into()),
            ]),
        );

        let i = &self.integrator;
        let mut integ = table([
            (
                "step",
                match i.step {
                    StepControl::Auto => "auto".into(),
                    StepControl::Fixed(h) => h.into(),
                },
            ),
            ("convergence_tol", i.convergence_tol.into()),
            ("max_refinements", Value::Integer(i.max_refinements as i64)),
            ("samples", Value::Integer(i.samples as i64)),
        ]);
        if let Some((a, b)) = i.window {
            let t = integ.as_table_mut().expect("table");
            t.insert("t_start".into(), a.into());
            t.insert("t_end".into(), b.into());
        }
        root.insert("integrator".into(), integ);

        let initial = match self.initial {
            InitialState::Label(l) => table([("state", l.tag().into())]),
            InitialState::Superposition { alpha, beta } => {
                table([("alpha", complex_value(alpha)), ("beta", complex_value(beta))])
            }
        };
        root.insert("initial".into(), initial);

        let s = &self.sweep;
        root.insert(
            "sweep".into(),
            table([
                ("z0_min", s.z0.start.into()),
                ("z0_max", s.z0.end.into()),
                ("z0_points", Value::Integer(s.z0.points as i64)),
                ("d_min", s.d.start.into()),
                ("d_max", s.d.end.into()),
                ("d_points", Value::Integer(s.d.points as i64)),
                ("metric", s.metric.name().into()),
                ("objective_weight", s.objective_weight.into()),
            ]),
        );

        let r = &self.robustness;
        root.insert(
            "robustness".into(),
            table([
                ("parameter", r.parameter.name().into()),
                ("relative_range", r.relative_range.into()),
                ("steps", Value::Integer(r.steps as i64)),
            ]),
        );

        root.insert("darkstate".into(), table([("time", self.darkstate_time.into())]));
        if let Some(a) = self.target_angle {
            root.insert("analysis".into(), table([("target_angle", a.into())]));
        }
        root.insert(
            "output".into(),
            table([
                ("dir", self.output.dir.to_string_lossy().into_owned().into()),
                ("prefix", self.output.prefix.clone().into()),
            ]),
        );
        toml::to_string(&root).expect("plain table serializes")
    }
}

fn table<const N: usize>(entries: [(&str, Value); N]) -> Value {
    Value::Table(entries.into_iter().map(|(k, v)| (k.to_string(), v)).collect())
}

fn complex_value(c: C64) -> Value {
    if c.im == 0.0 {
        c.re.into()
    } else {
        Value::Array(vec![c.re.into(), c.im.into()])
    }
}

/// Parses and validates a configuration document.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    parse_config_with_overrides(text, &[])
}

/// Like [`parse_config`], with `section.key = value` overrides applied to the
/// document before validation. Override values are read as TOML literals,
/// falling back to a bare string.
pub fn parse_config_with_overrides(
    text: &str,
    overrides: &[(String, String)],
) -> Result<RunConfig, ConfigError> {
    let mut root: Table = text.parse().map_err(|e: toml::de::Error| {
        ConfigError::Syntax(e.message().trim().to_string())
    })?;
    for (key, value) in overrides {
        apply_override(&mut root, key, value)?;
    }
    from_table(root)
}

fn apply_override(root: &mut Table, key: &str, value: &str) -> Result<(), ConfigError> {
    let parsed = format!("v = {value}")
        .parse::<Table>()
        .ok()
        .and_then(|mut t| t.remove("v"))
        .unwrap_or_else(|| Value::String(value.to_string()));
    match key.split_once('.') {
        None => {
            root.insert(key.to_string(), parsed);
        }
        Some((section, field)) => {
            let entry = root
                .entry(section.to_string())
                .or_insert_with(|| Value::Table(Table::new()));
            let Value::Table(t) = entry else {
                return Err(ConfigError::invalid(section, "must be a table"));
            };
            t.insert(field.to_string(), parsed);
        }
    }
    Ok(())
}

/// Removes known keys from one section and reports any left over.
struct Section {
    name: &'static str,
    table: Table,
}

impl Section {
    fn take(root: &mut Table, name: &'static str) -> Result<Self, ConfigError> {
        let table = match root.remove(name) {
            None => Table::new(),
            Some(Value::Table(t)) => t,
            Some(_) => return Err(ConfigError::invalid(name, "must be a table")),
        };
        Ok(Section { name, table })
    }

    fn key(&self, k: &str) -> String {
        format!("{}.{}", self.name, k)
    }

    fn raw(&mut self, k: &str) -> Option<Value> {
        self.table.remove(k)
    }

    fn quantity(&mut self, k: &str, dim: Dimension) -> Result<Option<f64>, ConfigError> {
        let key = self.key(k);
        self.raw(k).map(|v| quantity(&v, &key, dim)).transpose()
    }

    fn required(&mut self, k: &str, dim: Dimension) -> Result<f64, ConfigError> {
        self.quantity(k, dim)?.ok_or_else(|| ConfigError::MissingKey(self.key(k)))
    }

    fn count(&mut self, k: &str) -> Result<Option<u64>, ConfigError> {
        let key = self.key(k);
        match self.raw(k) {
            None => Ok(None),
            Some(Value::Integer(i)) if i >= 0 => Ok(Some(i as u64)),
            Some(_) => Err(ConfigError::invalid(key, "must be a non-negative integer")),
        }
    }

    fn string(&mut self, k: &str) -> Result<Option<String>, ConfigError> {
        let key = self.key(k);
        match self.raw(k) {
            None => Ok(None),
            Some(Value::String(s)) => Ok(Some(s)),
            Some(_) => Err(ConfigError::invalid(key, "must be a string")),
        }
    }

    fn finish(self) -> Result<(), ConfigError> {
        match self.table.keys().next() {
            Some(k) => Err(ConfigError::UnknownKey(format!("{}.{}", self.name, k))),
            None => Ok(()),
        }
    }
}

fn quantity(v: &Value, key: &str, dim: Dimension) -> Result<f64, ConfigError> {
    let x = match v {
        Value::Integer(i) => *i as f64,
        Value::Float(f) => *f,
        Value::String(s) => parse_quantity(s, dim).map_err(|e| ConfigError::invalid(key, e))?,
        _ => return Err(ConfigError::invalid(key, "must be a number or a unit-suffixed string")),
    };
    if x.is_finite() {
        Ok(x)
    } else {
        Err(ConfigError::invalid(key, "must be finite"))
    }
}

fn complex(v: &Value, key: &str) -> Result<C64, ConfigError> {
    match v {
        Value::Array(parts) if parts.len() == 2 => Ok(C64::new(
            quantity(&parts[0], key, Dimension::Dimensionless)?,
            quantity(&parts[1], key, Dimension::Dimensionless)?,
        )),
        Value::Array(_) => Err(ConfigError::invalid(key, "complex values are [re, im]")),
        other => Ok(C64::new(quantity(other, key, Dimension::Dimensionless)?, 0.0)),
    }
}

fn from_table(mut root: Table) -> Result<RunConfig, ConfigError> {
    let scenario = match root.remove("scenario") {
        None => Scenario::Simulate,
        Some(Value::String(s)) => Scenario::parse(&s).ok_or_else(|| {
            ConfigError::invalid("scenario", "must be one of simulate, sweep, robustness, darkstate, check")
        })?,
        Some(_) => return Err(ConfigError::invalid("scenario", "must be a string")),
    };

    let geometry = parse_geometry(Section::take(&mut root, "geometry")?)?;
    let physics = parse_physics(Section::take(&mut root, "physics")?, &geometry)?;
    let integrator = parse_integrator(Section::take(&mut root, "integrator")?)?;
    let initial = parse_initial(Section::take(&mut root, "initial")?)?;
    let sweep = parse_sweep(Section::take(&mut root, "sweep")?)?;
    let robustness = parse_robustness(Section::take(&mut root, "robustness")?)?;

    let mut dark = Section::take(&mut root, "darkstate")?;
    let darkstate_time = dark.quantity("time", Dimension::Time)?.unwrap_or(0.0);
    dark.finish()?;

    let mut analysis = Section::take(&mut root, "analysis")?;
    let target_angle = analysis.quantity("target_angle", Dimension::Angle)?;
    if let Some(a) = target_angle {
        if !(0.0..=FRAC_PI_2).contains(&a) {
            return Err(ConfigError::invalid("analysis.target_angle", "must lie in [0, pi/2]"));
        }
    }
    analysis.finish()?;

    let mut out = Section::take(&mut root, "output")?;
    let defaults = OutputConfig::default();
    let output = OutputConfig {
        dir: out.string("dir")?.map(PathBuf::from).unwrap_or(defaults.dir),
        prefix: out.string("prefix")?.unwrap_or(defaults.prefix),
    };
    out.finish()?;
    if output.prefix.is_empty() || output.prefix.contains(['/', '\\']) {
        return Err(ConfigError::invalid("output.prefix", "must be a non-empty file-name prefix"));
    }

    if let Some(k) = root.keys().next() {
        return Err(ConfigError::UnknownKey(k.clone()));
    }

    Ok(RunConfig {
        scenario,
        geometry,
        physics,
        integrator,
        initial,
        sweep,
        robustness,
        darkstate_time,
        target_angle,
        output,
    })
}

fn parse_geometry(mut s: Section) -> Result<GeometryParams, ConfigError> {
    use Dimension::*;
    let z0 = s.required("z0", Length)?;
    let d = s.required("d", Length)?;
    let v1 = s.required("v1", Speed)?;
    let lambda = s.required("lambda", Length)?;
    let waist_cavity = s.required("waist_cavity", Length)?;
    let waist_laser = s.required("waist_laser", Length)?;
    let g = GeometryParams {
        x0: s.quantity("x0", Length)?.unwrap_or(5.0 * waist_cavity),
        y0: s.quantity("y0", Length)?.unwrap_or(0.0),
        z0,
        d,
        v1,
        v2: s.quantity("v2", Speed)?.unwrap_or(v1),
        theta1: s.quantity("theta1", Angle)?.unwrap_or(0.0),
        theta2: s.quantity("theta2", Angle)?.unwrap_or(PI),
        tau: s.quantity("tau", Time)?.unwrap_or(0.0),
        lambda,
        waist_cavity,
        waist_laser,
    };
    s.finish()?;
    g.validate()
        .map_err(|e| ConfigError::invalid(format!("geometry.{}", e.field), e.constraint))?;
    Ok(g)
}

fn parse_physics(mut s: Section, g: &GeometryParams) -> Result<PhysicalParams, ConfigError> {
    use Dimension::Rate;
    let p = PhysicalParams {
        omega0: s.required("omega0", Rate)?,
        g0: s.required("g0", Rate)?,
        omega: s
            .quantity("omega", Rate)?
            .unwrap_or(2.0 * PI * SPEED_OF_LIGHT / g.lambda),
        kappa: s.quantity("kappa", Rate)?.unwrap_or(0.0),
        gamma: s.quantity("gamma", Rate)?.unwrap_or(0.0),
    };
    s.finish()?;
    p.validate()
        .map_err(|e| ConfigError::invalid(format!("physics.{}", e.field), e.constraint))?;
    Ok(p)
}

fn parse_integrator(mut s: Section) -> Result<IntegratorConfig, ConfigError> {
    let d = IntegratorConfig::default();
    let window = match (s.quantity("t_start", Dimension::Time)?, s.quantity("t_end", Dimension::Time)?) {
        (None, None) => None,
        (Some(a), Some(b)) if b > a => Some((a, b)),
        (Some(_), Some(_)) => {
            return Err(ConfigError::invalid("integrator.t_end", "must be greater than t_start"))
        }
        (Some(_), None) => return Err(ConfigError::MissingKey("integrator.t_end".into())),
        (None, Some(_)) => return Err(ConfigError::MissingKey("integrator.t_start".into())),
    };
    let step = match s.raw("step") {
        None => d.step,
        Some(Value::String(t)) if t == "auto" => StepControl::Auto,
        Some(v) => {
            let h = quantity(&v, "integrator.step", Dimension::Time)?;
            if h <= 0.0 {
                return Err(ConfigError::invalid("integrator.step", "must be \"auto\" or > 0"));
            }
            StepControl::Fixed(h)
        }
    };
    let convergence_tol = s
        .quantity("convergence_tol", Dimension::Dimensionless)?
        .unwrap_or(d.convergence_tol);
    if convergence_tol <= 0.0 {
        return Err(ConfigError::invalid("integrator.convergence_tol", "must be > 0"));
    }
    let max_refinements = match s.count("max_refinements")? {
        None => d.max_refinements,
        Some(n) if n <= 30 => n as u32,
        Some(_) => return Err(ConfigError::invalid("integrator.max_refinements", "must be <= 30")),
    };
    let samples = match s.count("samples")? {
        None => d.samples,
        Some(n) if n >= 2 => n as usize,
        Some(_) => return Err(ConfigError::invalid("integrator.samples", "must be >= 2")),
    };
    s.finish()?;
    Ok(IntegratorConfig { window, step, convergence_tol, max_refinements, samples })
}

fn parse_initial(mut s: Section) -> Result<InitialState, ConfigError> {
    let state = s.string("state")?;
    let alpha = s.raw("alpha").map(|v| complex(&v, "initial.alpha")).transpose()?;
    let beta = s.raw("beta").map(|v| complex(&v, "initial.beta")).transpose()?;
    s.finish()?;
    match (state, alpha, beta) {
        (Some(_), Some(_), _) | (Some(_), _, Some(_)) => Err(ConfigError::invalid(
            "initial.state",
            "cannot be combined with alpha/beta",
        )),
        (Some(tag), None, None) => StateLabel::from_tag(&tag)
            .map(InitialState::Label)
            .ok_or_else(|| ConfigError::invalid("initial.state", format!("unknown state `{tag}`"))),
        (None, None, None) => Ok(InitialState::Label(G1G2_0)),
        (None, alpha, beta) => {
            let alpha = alpha.unwrap_or(C64::new(0.0, 0.0));
            let beta = beta.unwrap_or(C64::new(0.0, 0.0));
            let norm = alpha.norm_sqr() + beta.norm_sqr();
            if (norm - 1.0).abs() > SUPERPOSITION_NORM_TOL {
                return Err(ConfigError::invalid(
                    "initial.alpha",
                    format!("|alpha|^2 + |beta|^2 = {norm} must equal 1 within 1e-9"),
                ));
            }
            Ok(InitialState::Superposition { alpha, beta })
        }
    }
}

fn parse_sweep(mut s: Section) -> Result<SweepConfig, ConfigError> {
    let d = SweepConfig::default();
    let mut axis = |prefix: &str, default: Axis| -> Result<Axis, ConfigError> {
        let a = Axis::new(
            s.quantity(&format!("{prefix}_min"), Dimension::Length)?.unwrap_or(default.start),
            s.quantity(&format!("{prefix}_max"), Dimension::Length)?.unwrap_or(default.end),
            s.count(&format!("{prefix}_points"))?.map_or(default.points, |n| n as usize),
        );
        a.validate(prefix)
            .map_err(|e| ConfigError::invalid(format!("sweep.{prefix}"), e.to_string()))?;
        Ok(a)
    };
    let z0 = axis("z0", d.z0)?;
    let d_axis = axis("d", d.d)?;
    let metric = match s.string("metric")? {
        None => d.metric,
        Some(m) => Metric::parse(&m).ok_or_else(|| {
            ConfigError::invalid(
                "sweep.metric",
                "must be one of deviation, intermediate_sum, fidelity, concurrence",
            )
        })?,
    };
    let objective_weight = s
        .quantity("objective_weight", Dimension::Dimensionless)?
        .unwrap_or(d.objective_weight);
    if objective_weight < 0.0 {
        return Err(ConfigError::invalid("sweep.objective_weight", "must be >= 0"));
    }
    s.finish()?;
    Ok(SweepConfig { z0, d: d_axis, metric, objective_weight })
}

fn parse_robustness(mut s: Section) -> Result<RobustnessConfig, ConfigError> {
    let d = RobustnessConfig::default();
    let parameter = match s.string("parameter")? {
        None => d.parameter,
        Some(p) => RobustParameter::parse(&p).ok_or_else(|| {
            ConfigError::invalid("robustness.parameter", "must be one of v, omega0, g0, d, z0")
        })?,
    };
    let relative_range = s
        .quantity("relative_range", Dimension::Dimensionless)?
        .unwrap_or(d.relative_range);
    if !(0.0..=1.0).contains(&relative_range) {
        return Err(ConfigError::invalid("robustness.relative_range", "must lie in [0, 1]"));
    }
    let steps = match s.count("steps")? {
        None => d.steps,
        Some(0) => return Err(ConfigError::invalid("robustness.steps", "must be >= 1")),
        Some(n) => n as usize,
    };
    s.finish()?;
    Ok(RobustnessConfig { parameter, relative_range, steps })
}
