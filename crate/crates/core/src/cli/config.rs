use std::fmt;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use crate::classical::MapGrid;
use crate::quantum::matched::DEFAULT_QUARTIC_K_OVER_J;
use crate::quantum::AlphaPolicy;
use crate::{Error, ModelParams, Result};

/// Fallback output directory when neither a flag, a config file nor
/// `SPINLYAP_OUT` names one.
pub const DEFAULT_OUT: &str = "spinlyap-out";
pub const OUT_ENV: &str = "SPINLYAP_OUT";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum CommandKind {
    PhaseMap,
    Potential,
    FixedPoints,
    Lyapunov,
    Gain,
    Infidelity,
    Husimi,
    Covariance,
    MatchedLambda,
    FitMaxline,
    Figure,
}

impl CommandKind {
    pub fn name(&self) -> &'static str {
        match self {
            CommandKind::PhaseMap => "phase-map",
            CommandKind::Potential => "potential",
            CommandKind::FixedPoints => "fixed-points",
            CommandKind::Lyapunov => "lyapunov",
            CommandKind::Gain => "gain",
            CommandKind::Infidelity => "infidelity",
            CommandKind::Husimi => "husimi",
            CommandKind::Covariance => "covariance",
            CommandKind::MatchedLambda => "matched-lambda",
            CommandKind::FitMaxline => "fit-maxline",
            CommandKind::Figure => "figure",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
pub enum FigureId {
    #[serde(rename = "fig1")]
    #[value(name = "fig1")]
    Fig1,
    #[serde(rename = "fig2b")]
    #[value(name = "fig2b")]
    Fig2b,
    #[serde(rename = "fig2c")]
    #[value(name = "fig2c")]
    Fig2c,
    #[serde(rename = "fig3")]
    #[value(name = "fig3")]
    Fig3,
    #[serde(rename = "figS2")]
    #[value(name = "figS2")]
    FigS2,
    #[serde(rename = "figS3")]
    #[value(name = "figS3")]
    FigS3,
}

impl fmt::Display for FigureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FigureId::Fig1 => "fig1",
            FigureId::Fig2b => "fig2b",
            FigureId::Fig2c => "fig2c",
            FigureId::Fig3 => "fig3",
            FigureId::FigS2 => "figS2",
            FigureId::FigS3 => "figS3",
        })
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn extension(&self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

/// Uniform time grid `[0, t_max]` in units of `1/J`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TimeGrid {
    pub t_max: f64,
    pub t_steps: usize,
}

impl Default for TimeGrid {
    fn default() -> Self {
        Self {
            t_max: 1.5,
            t_steps: 151,
        }
    }
}

impl TimeGrid {
    pub fn values(&self) -> Vec<f64> {
        crate::numerics::linspace(0.0, self.t_max, self.t_steps)
    }
}

/// Sampling of the effective potential over `Q ∈ [−2, 2]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PotentialGrid {
    pub q_steps: usize,
}

impl Default for PotentialGrid {
    fn default() -> Self {
        Self { q_steps: 401 }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EchoSettings {
    /// Time of the echo, `Jt`.
    pub t: f64,
    pub delta_phi_min: f64,
    pub delta_phi_max: f64,
    /// Log-uniform samples between the two bounds.
    pub delta_phi_count: usize,
}

impl Default for EchoSettings {
    fn default() -> Self {
        Self {
            t: 0.25,
            delta_phi_min: 1e-5,
            delta_phi_max: 1e-1,
            delta_phi_count: 50,
        }
    }
}

impl EchoSettings {
    pub fn delta_phis(&self) -> Vec<f64> {
        crate::numerics::logspace(self.delta_phi_min, self.delta_phi_max, self.delta_phi_count)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HusimiSettings {
    pub times: Vec<f64>,
    pub q_steps: usize,
    pub p_steps: usize,
    /// Marching-squares resolution of the separatrix overlay.
    pub separatrix_resolution: usize,
}

impl Default for HusimiSettings {
    fn default() -> Self {
        Self {
            times: vec![0.0, 0.25, 0.5],
            q_steps: 201,
            p_steps: 201,
            separatrix_resolution: 401,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatchedSettings {
    pub lambda: f64,
    pub k_over_j: f64,
}

impl Default for MatchedSettings {
    fn default() -> Self {
        Self {
            lambda: 2.0,
            k_over_j: DEFAULT_QUARTIC_K_OVER_J,
        }
    }
}

/// Fully resolved configuration of one run. This is what the manifest
/// records; feeding a manifest back through `--config` reproduces the run.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: CommandKind,
    pub figure: Option<FigureId>,
    pub params: Vec<ModelParams>,
    pub time: TimeGrid,
    pub map: MapGrid,
    pub potential: PotentialGrid,
    pub echo: EchoSettings,
    pub alpha: AlphaPolicy,
    pub husimi: HusimiSettings,
    pub matched: MatchedSettings,
    pub output: PathBuf,
    pub format: Format,
    /// Worker threads; 0 uses one per core.
    pub workers: usize,
}

/// Both caption parameter sets: LMG `h/J = 1` and quartic
/// `h/J = 3.265, K/J = 1.5`, at `N = 500`.
pub fn caption_params(n: usize) -> Vec<ModelParams> {
    vec![
        ModelParams {
            h: 1.0,
            j: 1.0,
            k: 0.0,
            n,
        },
        ModelParams {
            h: 3.265,
            j: 1.0,
            k: 1.5,
            n,
        },
    ]
}

/// Partial configuration as read from a TOML or JSON file. Every field is
/// optional; a manifest's `config` object is accepted too.
#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub command: Option<CommandKind>,
    pub figure: Option<FigureId>,
    pub params: Option<Vec<ModelParams>>,
    pub time: Option<TimeGrid>,
    pub map: Option<MapGrid>,
    pub potential: Option<PotentialGrid>,
    pub echo: Option<EchoSettings>,
    pub alpha: Option<AlphaPolicy>,
    pub husimi: Option<HusimiSettings>,
    pub matched: Option<MatchedSettings>,
    pub output: Option<PathBuf>,
    pub format: Option<Format>,
    pub workers: Option<usize>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let is_json = path.extension().is_some_and(|e| e.eq_ignore_ascii_case("json"))
            || text.trim_start().starts_with('{');
        let value: serde_json::Value = if is_json {
            serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?
        } else {
            toml::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?
        };
        // a manifest wraps the resolved config
        let value = match value {
            serde_json::Value::Object(mut map) if map.contains_key("manifest_version") => {
                map.remove("config").unwrap_or_default()
            }
            other => other,
        };
        serde_json::from_value(value).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
    }
}

/// Command-line overrides; `None` leaves the file or default value alone.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub h: Vec<f64>,
    pub j: Vec<f64>,
    pub k: Vec<f64>,
    pub n: Vec<usize>,
    pub t_max: Option<f64>,
    pub t_steps: Option<usize>,
    pub alpha: Option<f64>,
    pub out: Option<PathBuf>,
    pub format: Option<Format>,
    pub workers: Option<usize>,
}

fn broadcast<T: Copy>(field: &'static str, values: &[T], len: usize, fallback: T) -> Result<Vec<T>> {
    match values.len() {
        0 => Ok(vec![fallback; len]),
        1 => Ok(vec![values[0]; len]),
        l if l == len => Ok(values.to_vec()),
        l => Err(Error::Config(format!(
            "--{field} has {l} values but the parameter list has {len} entries"
        ))),
    }
}

/// Parameter list after flags. `--h`/`--K` rebuild the list (comma lists are
/// zipped, single values broadcast); `--J`/`--N` alone rescale every entry.
fn resolve_params(base: Vec<ModelParams>, o: &Overrides) -> Result<Vec<ModelParams>> {
    let first = base[0];
    let sets = if !o.h.is_empty() || !o.k.is_empty() {
        let len = [o.h.len(), o.k.len(), o.j.len(), o.n.len()]
            .into_iter()
            .max()
            .unwrap_or(1);
        let h = broadcast("h", &o.h, len, first.h)?;
        let k = broadcast(
            "K",
            &o.k,
            len,
            if o.k.is_empty() && !o.h.is_empty() {
                0.0
            } else {
                first.k
            },
        )?;
        let j = broadcast("J", &o.j, len, first.j)?;
        let n = broadcast("N", &o.n, len, first.n)?;
        (0..len)
            .map(|i| ModelParams {
                h: h[i],
                j: j[i],
                k: k[i],
                n: n[i],
            })
            .collect()
    } else {
        let len = base.len();
        let j: Vec<f64> = broadcast("J", &o.j, len, f64::NAN)?;
        let n: Vec<usize> = broadcast("N", &o.n, len, 0)?;
        base.into_iter()
            .enumerate()
            .map(|(i, p)| ModelParams {
                j: if o.j.is_empty() { p.j } else { j[i] },
                n: if o.n.is_empty() { p.n } else { n[i] },
                ..p
            })
            .collect()
    };
    Ok(sets)
}

impl RunConfig {
    /// Defaults, then the config file, then flags.
    pub fn resolve(
        command: CommandKind,
        figure: Option<FigureId>,
        file: ConfigFile,
        o: &Overrides,
    ) -> Result<Self> {
        if command == CommandKind::Figure && figure.is_none() {
            return Err(Error::Config("`figure` needs a figure id".into()));
        }
        let map_default = if command == CommandKind::FitMaxline || figure == Some(FigureId::FigS2) {
            MapGrid::ridge_fit()
        } else {
            MapGrid::default()
        };
        let base = file
            .params
            .filter(|p| !p.is_empty())
            .unwrap_or_else(|| caption_params(500));
        let params = resolve_params(base, o)?;
        let mut time = file.time.unwrap_or_default();
        if let Some(t) = o.t_max {
            time.t_max = t;
        }
        if let Some(s) = o.t_steps {
            time.t_steps = s;
        }
        let alpha = match o.alpha {
            Some(a) => AlphaPolicy::Fixed(a),
            None => file.alpha.unwrap_or(AlphaPolicy::Optimal),
        };
        let output = o
            .out
            .clone()
            .or(file.output)
            .or_else(|| {
                std::env::var_os(OUT_ENV)
                    .filter(|v| !v.is_empty())
                    .map(PathBuf::from)
            })
            .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT));
        let config = RunConfig {
            command,
            figure: if command == CommandKind::Figure {
                figure
            } else {
                None
            },
            params,
            time,
            map: file.map.unwrap_or(map_default),
            potential: file.potential.unwrap_or_default(),
            echo: file.echo.unwrap_or_default(),
            alpha,
            husimi: file.husimi.unwrap_or_default(),
            matched: file.matched.unwrap_or_default(),
            output,
            format: o.format.or(file.format).unwrap_or_default(),
            workers: o.workers.or(file.workers).unwrap_or(0),
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |field: &str, reason: String| Err(Error::Config(format!("`{field}` {reason}")));
        for (i, p) in self.params.iter().enumerate() {
            p.validate()
                .map_err(|e| Error::Config(format!("`params[{i}]`: {e}")))?;
            if !(p.j > 0.0) {
                return bad(
                    &format!("params[{i}].J"),
                    format!("must be positive, got {}", p.j),
                );
            }
        }
        if !(self.time.t_max >= 0.0 && self.time.t_max.is_finite()) {
            return bad(
                "time.t_max",
                format!("must be finite and non-negative, got {}", self.time.t_max),
            );
        }
        if self.time.t_steps < 2 {
            return bad(
                "time.t_steps",
                format!("must be at least 2, got {}", self.time.t_steps),
            );
        }
        self.map.validate()?;
        if self.potential.q_steps < 2 {
            return bad(
                "potential.q_steps",
                format!("must be at least 2, got {}", self.potential.q_steps),
            );
        }
        let e = &self.echo;
        if !(e.t >= 0.0 && e.t.is_finite()) {
            return bad("echo.t", format!("must be finite and non-negative, got {}", e.t));
        }
        if !(e.delta_phi_min > 0.0 && e.delta_phi_max > e.delta_phi_min && e.delta_phi_max.is_finite()) {
            return bad(
                "echo.delta_phi_min",
                format!(
                    "and `echo.delta_phi_max` need 0 < min < max, got [{}, {}]",
                    e.delta_phi_min, e.delta_phi_max
                ),
            );
        }
        if e.delta_phi_count < 2 {
            return bad(
                "echo.delta_phi_count",
                format!("must be at least 2, got {}", e.delta_phi_count),
            );
        }
        if let AlphaPolicy::Fixed(a) = self.alpha {
            if !a.is_finite() {
                return bad("alpha", format!("must be finite, got {a}"));
            }
        }
        let hu = &self.husimi;
        if hu.q_steps < 2 || hu.p_steps < 2 {
            return bad(
                "husimi.q_steps",
                format!(
                    "and `husimi.p_steps` must be at least 2, got {}×{}",
                    hu.q_steps, hu.p_steps
                ),
            );
        }
        if hu.separatrix_resolution < 3 {
            return bad(
                "husimi.separatrix_resolution",
                format!("must be at least 3, got {}", hu.separatrix_resolution),
            );
        }
        if let Some(t) = hu.times.iter().find(|t| !(**t >= 0.0 && t.is_finite())) {
            return bad(
                "husimi.times",
                format!("must be finite and non-negative, got {t}"),
            );
        }
        if !(self.matched.lambda > 0.0 && self.matched.lambda.is_finite()) {
            return bad(
                "matched.lambda",
                format!("must be positive, got {}", self.matched.lambda),
            );
        }
        if !(self.matched.k_over_j > 0.0 && self.matched.k_over_j.is_finite()) {
            return bad(
                "matched.k_over_j",
                format!("must be positive, got {}", self.matched.k_over_j),
            );
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn resolve(o: Overrides) -> Result<RunConfig> {
        RunConfig::resolve(CommandKind::Gain, None, ConfigFile::default(), &o)
    }

    #[test]
    fn defaults_are_caption_sets() {
        let c = resolve(Overrides::default()).unwrap();
        assert_eq!(c.params, caption_params(500));
        assert_eq!(c.echo.delta_phis().len(), 50);
        assert_eq!(c.alpha, AlphaPolicy::Optimal);
    }

    #[test]
    fn flags_rebuild_or_rescale_params() {
        let c = resolve(Overrides {
            h: vec![0.5, 1.0],
            ..Default::default()
        })
        .unwrap();
        assert_eq!(c.params.len(), 2);
        assert!(c.params.iter().all(|p| p.k == 0.0 && p.n == 500));
        let c = resolve(Overrides {
            n: vec![20],
            ..Default::default()
        })
        .unwrap();
        assert_eq!(c.params, caption_params(20));
        let err = resolve(Overrides {
            h: vec![1.0, 2.0],
            k: vec![0.0, 1.0, 2.0],
            ..Default::default()
        });
        assert!(matches!(err, Err(Error::Config(_))));
    }

    #[test]
    fn validation_names_the_field() {
        let err = resolve(Overrides {
            t_steps: Some(1),
            ..Default::default()
        })
        .unwrap_err();
        assert!(err.to_string().contains("time.t_steps"), "{err}");
        let err = resolve(Overrides {
            k: vec![-1.0],
            ..Default::default()
        })
        .unwrap_err();
        assert!(err.to_string().contains("params[0]"), "{err}");
    }

    #[test]
    fn toml_file_is_partial() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.toml");
        std::fs::write(
            &path,
            "params = [{ h = 2.5, J = 1.0, K = 1.0, N = 40 }]\n[time]\nt_max = 0.5\nt_steps = 11\n",
        )
        .unwrap();
        let file = ConfigFile::load(&path).unwrap();
        let c = RunConfig::resolve(
            CommandKind::Gain,
            None,
            file,
            &Overrides {
                t_max: Some(0.7),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(c.params[0].n, 40);
        assert_eq!((c.time.t_max, c.time.t_steps), (0.7, 11));
        std::fs::write(&path, "bogus = 1\n").unwrap();
        assert!(matches!(ConfigFile::load(&path), Err(Error::Config(_))));
    }
}
