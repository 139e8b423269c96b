use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::cheb::LayoutSpec;
use crate::nls::ScalingParam;
use crate::{Error, Result};

/// The nine experiments of the catalog.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ScenarioId {
    LinGauss,
    LinProp,
    NlGaussT0,
    NlGaussTm1,
    NlSigma11T0,
    NlSigma09T0,
    NlSigma11Tm1,
    NlSigma09Tm1,
    Semiclassical,
}

impl ScenarioId {
    pub const ALL: [Self; 9] = [
        Self::LinGauss,
        Self::LinProp,
        Self::NlGaussT0,
        Self::NlGaussTm1,
        Self::NlSigma11T0,
        Self::NlSigma09T0,
        Self::NlSigma11Tm1,
        Self::NlSigma09Tm1,
        Self::Semiclassical,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::LinGauss => "lin-gauss",
            Self::LinProp => "lin-prop",
            Self::NlGaussT0 => "nl-gauss-t0",
            Self::NlGaussTm1 => "nl-gauss-tm1",
            Self::NlSigma11T0 => "nl-sigma11-t0",
            Self::NlSigma09T0 => "nl-sigma09-t0",
            Self::NlSigma11Tm1 => "nl-sigma11-tm1",
            Self::NlSigma09Tm1 => "nl-sigma09-tm1",
            Self::Semiclassical => "semiclassical",
        }
    }

    /// Figure numbers the experiment reproduces.
    pub fn figures(self) -> &'static str {
        match self {
            Self::LinGauss => "Fig. 1",
            Self::LinProp => "Fig. 2",
            Self::NlGaussT0 => "Figs. 3-5",
            Self::NlGaussTm1 => "Figs. 6-7",
            Self::NlSigma11T0 => "Figs. 8-10",
            Self::NlSigma09T0 => "Figs. 11-13",
            Self::NlSigma11Tm1 => "Figs. 14-15",
            Self::NlSigma09Tm1 => "Figs. 16-17",
            Self::Semiclassical => "Fig. 18",
        }
    }

    /// Initial data in formula form.
    pub fn initial_data(self) -> &'static str {
        match self {
            Self::LinGauss => "v(x,0)=0.1e^{-x^2}",
            Self::LinProp => "v(x,0)=0.1u_{Per}(x,0)",
            Self::NlGaussT0 => "u(x,0)=u_{Per}(x,0)+0.1e^{-x^2}",
            Self::NlGaussTm1 => "u(x,-1)=u_{Per}(x,-1)+0.1e^{-x^2}",
            Self::NlSigma11T0 => "u(x,0)=1.1u_{Per}(x,0)",
            Self::NlSigma09T0 => "u(x,0)=0.9u_{Per}(x,0)",
            Self::NlSigma11Tm1 => "u(x,-1)=1.1u_{Per}(x,-1)",
            Self::NlSigma09Tm1 => "u(x,-1)=0.9u_{Per}(x,-1)",
            Self::Semiclassical => "u(x,0)=e^{-x^2}, epsilon=0.1",
        }
    }

    pub fn default_solver(self) -> SolverKind {
        match self {
            Self::LinGauss | Self::Semiclassical => SolverKind::Fourier,
            _ => SolverKind::Chebyshev,
        }
    }

    /// Which equation the experiment integrates.
    pub fn equation(self) -> Equation {
        match self {
            Self::LinGauss | Self::LinProp => Equation::Linearized,
            Self::Semiclassical => Equation::Semiclassical,
            _ => Equation::FullNls,
        }
    }

    fn default_t0(self) -> f64 {
        match self {
            Self::NlGaussTm1 | Self::NlSigma11Tm1 | Self::NlSigma09Tm1 => -1.0,
            _ => 0.0,
        }
    }

    fn default_sigma(self) -> Option<f64> {
        match self {
            Self::NlSigma11T0 | Self::NlSigma11Tm1 => Some(1.1),
            Self::NlSigma09T0 | Self::NlSigma09Tm1 => Some(0.9),
            _ => None,
        }
    }

    fn default_amplitude(self) -> Option<f64> {
        match self {
            Self::LinGauss | Self::LinProp | Self::NlGaussT0 | Self::NlGaussTm1 => Some(0.1),
            Self::Semiclassical => Some(1.0),
            _ => None,
        }
    }
}

impl fmt::Display for ScenarioId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ScenarioId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|id| id.as_str() == s)
            .ok_or_else(|| Error::Config(format!("unknown scenario id '{s}' (try `list`)")))
    }
}

impl serde::Serialize for ScenarioId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SolverKind {
    Fourier,
    Chebyshev,
}

impl FromStr for SolverKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fourier" => Ok(Self::Fourier),
            "chebyshev" => Ok(Self::Chebyshev),
            _ => Err(Error::Config(format!("solver must be fourier or chebyshev, got '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Equation {
    FullNls,
    Linearized,
    Semiclassical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Preset {
    Paper,
    Desk,
    /// Any resolution key was set explicitly.
    Custom,
}

impl FromStr for Preset {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(Self::Paper),
            "desk" => Ok(Self::Desk),
            "custom" => Ok(Self::Custom),
            _ => Err(Error::Config(format!("preset must be paper, desk or custom, got '{s}'"))),
        }
    }
}

/// Periodic-grid resolution.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct FourierResolution {
    pub half_length: f64,
    pub n: usize,
}

/// A fully resolved experiment.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct Scenario {
    pub id: ScenarioId,
    pub solver: SolverKind,
    pub preset: Preset,
    pub t0: f64,
    pub t_end: f64,
    /// Gaussian amplitude, or the factor of `u_Per` for `lin-prop`.
    pub amplitude: Option<f64>,
    pub sigma: Option<f64>,
    pub epsilon: Option<f64>,
    /// Asymptotic modulus squared in the modified energy.
    pub kappa: Option<f64>,
    pub fourier: FourierResolution,
    pub layout: LayoutSpec,
    pub steps: usize,
    pub snapshot_every: usize,
    pub newton_tol: f64,
    pub newton_max_iter: usize,
    pub out: PathBuf,
}

/// Keys accepted in configuration text, in documentation order.
pub const CONFIG_KEYS: [&str; 21] = [
    "scenario",
    "preset",
    "solver",
    "t0",
    "t_end",
    "amplitude",
    "sigma",
    "epsilon",
    "kappa",
    "half_length",
    "n",
    "steps",
    "dt",
    "n_i",
    "n_ii",
    "n_iii",
    "n_iv",
    "snapshot_every",
    "newton_tol",
    "newton_max_iter",
    "out",
];

const RESOLUTION_KEYS: [&str; 8] = ["half_length", "n", "steps", "dt", "n_i", "n_ii", "n_iii", "n_iv"];

/// Splits configuration text into `(key, value)` pairs. Pairs are separated
/// by newlines or commas; `#` starts a comment.
pub fn parse_pairs(text: &str) -> Result<Vec<(String, String)>> {
    let mut pairs = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("");
        for item in line.split(',') {
            let item = item.trim();
            if item.is_empty() {
                continue;
            }
            let (k, v) = item
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value, got '{item}'", lineno + 1)))?;
            let (k, v) = (k.trim(), v.trim());
            if k.is_empty() || v.is_empty() {
                return Err(Error::Config(format!("line {}: empty key or value in '{item}'", lineno + 1)));
            }
            if !CONFIG_KEYS.contains(&k) {
                return Err(Error::Config(format!("unknown key '{k}'")));
            }
            pairs.push((k.to_string(), v.to_string()));
        }
    }
    Ok(pairs)
}

/// Parses configuration text; every key may appear at most once.
pub fn parse_config(text: &str) -> Result<Scenario> {
    let pairs = parse_pairs(text)?;
    for (i, (k, _)) in pairs.iter().enumerate() {
        if pairs[..i].iter().any(|(p, _)| p == k) {
            return Err(Error::Config(format!("key '{k}' given more than once")));
        }
    }
    Scenario::from_pairs(&pairs)
}

fn num<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value.parse().map_err(|_| Error::Config(format!("{key}: cannot parse '{value}'")))
}

impl Scenario {
    /// Defaults of `id` at `preset`; `custom` starts from the desk values.
    pub fn new(id: ScenarioId, preset: Preset) -> Self {
        Self::with_solver(id, preset, id.default_solver())
    }

    fn with_solver(id: ScenarioId, preset: Preset, solver: SolverKind) -> Self {
        let paper = preset == Preset::Paper;
        let t0 = id.default_t0();
        let t_end = 1.0;
        let (fourier, h) = match (solver, id.equation()) {
            (SolverKind::Fourier, Equation::Semiclassical) => {
                (FourierResolution { half_length: 8.0, n: if paper { 1 << 13 } else { 1 << 12 } }, if paper { 1e-4 } else { 5e-4 })
            }
            (SolverKind::Fourier, _) => {
                (FourierResolution { half_length: 50.0, n: if paper { 1 << 14 } else { 1 << 12 } }, if paper { 1e-4 } else { 5e-4 })
            }
            (SolverKind::Chebyshev, _) => {
                (FourierResolution { half_length: 50.0, n: 1 << 12 }, if paper { 1e-3 } else { 2e-3 })
            }
        };
        let steps = ((t_end - t0) / h).round() as usize;
        let snapshot_every = match solver {
            SolverKind::Fourier => (steps / 20).max(1),
            SolverKind::Chebyshev => 10,
        };
        let sigma = id.default_sigma();
        Self {
            id,
            solver,
            preset,
            t0,
            t_end,
            amplitude: id.default_amplitude(),
            sigma,
            epsilon: (id == ScenarioId::Semiclassical).then_some(0.1),
            kappa: (id.equation() == Equation::FullNls).then(|| sigma.map_or(1.0, |s| s * s)),
            fourier,
            layout: if paper { LayoutSpec::paper() } else { LayoutSpec::desk() },
            steps,
            snapshot_every,
            newton_tol: 1e-12,
            newton_max_iter: 50,
            out: PathBuf::from(format!("runs/{}", id.as_str())),
        }
    }

    /// Builds a scenario from pairs; later pairs override earlier ones.
    /// `scenario` is required, `preset` defaults to `paper`.
    pub fn from_pairs(pairs: &[(String, String)]) -> Result<Self> {
        let last = |key: &str| pairs.iter().rev().find(|(k, _)| k == key).map(|(_, v)| v.as_str());
        let id: ScenarioId = last("scenario").ok_or_else(|| Error::Config("missing key 'scenario'".into()))?.parse()?;
        let mut preset: Preset = last("preset").map(str::parse).transpose()?.unwrap_or(Preset::Paper);
        let solver = last("solver").map(str::parse).transpose()?.unwrap_or(id.default_solver());
        if pairs.iter().any(|(k, _)| RESOLUTION_KEYS.contains(&k.as_str())) {
            preset = Preset::Custom;
        }
        let mut s = Self::with_solver(id, preset, solver);

        // Applied in a fixed order so that `dt` sees the final time window.
        let mut steps_set = false;
        let mut dt = None;
        let mut cadence_set = false;
        for (k, v) in pairs {
            match k.as_str() {
                "scenario" | "preset" | "solver" => {}
                "t0" => s.t0 = num(k, v)?,
                "t_end" => s.t_end = num(k, v)?,
                "amplitude" => s.amplitude = Some(s.require(k, s.amplitude, num(k, v)?)?),
                "sigma" => {
                    s.sigma = Some(s.require(k, s.sigma, num(k, v)?)?);
                }
                "epsilon" => s.epsilon = Some(s.require(k, s.epsilon, num(k, v)?)?),
                "kappa" => s.kappa = Some(s.require(k, s.kappa, num(k, v)?)?),
                "half_length" => s.fourier.half_length = num(k, v)?,
                "n" => s.fourier.n = num(k, v)?,
                "steps" => {
                    s.steps = num(k, v)?;
                    steps_set = true;
                    dt = None;
                }
                "dt" => {
                    dt = Some(num::<f64>(k, v)?);
                    steps_set = false;
                }
                "n_i" => s.layout.finite_n[0] = num(k, v)?,
                "n_ii" => s.layout.finite_n[1] = num(k, v)?,
                "n_iii" => s.layout.finite_n[2] = num(k, v)?,
                "n_iv" => s.layout.compact_n = num(k, v)?,
                "snapshot_every" => {
                    s.snapshot_every = num(k, v)?;
                    cadence_set = true;
                }
                "newton_tol" => s.newton_tol = num(k, v)?,
                "newton_max_iter" => s.newton_max_iter = num(k, v)?,
                "out" => s.out = PathBuf::from(v),
                _ => return Err(Error::Config(format!("unknown key '{k}'"))),
            }
        }
        // A sigma override without kappa keeps the energy consistent with
        // the new background.
        if last("sigma").is_some() && last("kappa").is_none() {
            s.kappa = s.sigma.map(|x| x * x);
        }
        let default_h = {
            let d = Self::with_solver(id, preset, solver);
            (d.t_end - d.t0) / d.steps as f64
        };
        if let Some(dt) = dt {
            if !(dt > 0.0) {
                return Err(Error::Config(format!("dt must be positive, got {dt}")));
            }
            s.steps = ((s.t_end - s.t0) / dt).round().max(1.0) as usize;
        } else if !steps_set {
            s.steps = ((s.t_end - s.t0) / default_h).round().max(1.0) as usize;
        }
        if !cadence_set && solver == SolverKind::Fourier {
            s.snapshot_every = (s.steps / 20).max(1);
        }
        s.validate()?;
        Ok(s)
    }

    fn require(&self, key: &str, current: Option<f64>, value: f64) -> Result<f64> {
        if current.is_none() {
            return Err(Error::Config(format!("key '{key}' does not apply to scenario {}", self.id)));
        }
        Ok(value)
    }

    pub fn step_size(&self) -> f64 {
        (self.t_end - self.t0) / self.steps as f64
    }

    /// Configuration text that parses back to this scenario, with the
    /// preset reported as `custom` since every resolution key is written.
    pub fn to_config_text(&self) -> String {
        let solver = match self.solver {
            SolverKind::Fourier => "fourier",
            SolverKind::Chebyshev => "chebyshev",
        };
        let mut lines = vec![
            format!("scenario = {}", self.id),
            format!("solver = {solver}"),
            format!("t0 = {}", self.t0),
            format!("t_end = {}", self.t_end),
        ];
        for (key, value) in
            [("amplitude", self.amplitude), ("sigma", self.sigma), ("epsilon", self.epsilon), ("kappa", self.kappa)]
        {
            if let Some(v) = value {
                lines.push(format!("{key} = {v}"));
            }
        }
        match self.solver {
            SolverKind::Fourier => {
                lines.push(format!("half_length = {}", self.fourier.half_length));
                lines.push(format!("n = {}", self.fourier.n));
            }
            SolverKind::Chebyshev => {
                for (key, n) in ["n_i", "n_ii", "n_iii"].iter().zip(&self.layout.finite_n) {
                    lines.push(format!("{key} = {n}"));
                }
                lines.push(format!("n_iv = {}", self.layout.compact_n));
            }
        }
        lines.push(format!("steps = {}", self.steps));
        lines.push(format!("snapshot_every = {}", self.snapshot_every));
        lines.push(format!("newton_tol = {}", self.newton_tol));
        lines.push(format!("newton_max_iter = {}", self.newton_max_iter));
        lines.push(format!("out = {}", self.out.display()));
        lines.join("\n") + "\n"
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Config(m));
        if !(self.t_end > self.t0) || !self.t0.is_finite() || !self.t_end.is_finite() {
            return bad(format!("t_end = {} must exceed t0 = {}", self.t_end, self.t0));
        }
        if let Some(a) = self.amplitude {
            if !(a >= 0.0) || !a.is_finite() {
                return bad(format!("amplitude must be >= 0, got {a}"));
            }
        }
        if let Some(s) = self.sigma {
            ScalingParam::new(s).map_err(|e| Error::Config(e.to_string()))?;
        }
        if let Some(e) = self.epsilon {
            if !(e > 0.0 && e <= 1.0) {
                return bad(format!("epsilon must lie in (0, 1], got {e}"));
            }
        }
        if let Some(k) = self.kappa {
            if !(k > 0.0) || !k.is_finite() {
                return bad(format!("kappa must be positive, got {k}"));
            }
        }
        if self.steps == 0 || self.snapshot_every == 0 || self.newton_max_iter == 0 {
            return bad("steps, snapshot_every and newton_max_iter must be positive".into());
        }
        if !(self.newton_tol > 0.0) {
            return bad(format!("newton_tol must be positive, got {}", self.newton_tol));
        }
        match self.solver {
            SolverKind::Fourier => {
                if self.id.equation() == Equation::FullNls || self.id == ScenarioId::LinProp {
                    return bad(format!(
                        "scenario {} has a nonvanishing background and cannot run on the periodic grid",
                        self.id
                    ));
                }
                crate::fourier::FourierGrid::new(self.fourier.half_length, self.fourier.n)
                    .map_err(|e| Error::Config(e.to_string()))?;
            }
            SolverKind::Chebyshev => {
                if self.id == ScenarioId::Semiclassical {
                    return bad("the semiclassical scenario runs on the Fourier solver only".into());
                }
                self.layout.validate().map_err(|e| Error::Config(e.to_string()))?;
            }
        }
        Ok(())
    }
}
