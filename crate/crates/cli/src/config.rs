//! Parameter resolution: built-in defaults, then an optional flat key-value
//! config file, then command-line flags. Dimensionless and raw parameter
//! sources are mutually exclusive.

use alleemap::{Parameters, RawParameters};
use std::collections::BTreeMap;
use std::path::Path;

pub const CONFIG_ENV_VAR: &str = "ALLEEMAP_CONFIG";

/// Reference parameter set used when nothing else is specified.
pub const DEFAULT_PARAMETERS: [f64; 5] = [0.0125, 0.125, 8.4, 1.3, 0.13];

const DIMENSIONLESS_KEYS: [&str; 5] = ["s", "w", "alpha", "beta", "theta"];
const RAW_KEYS: [&str; 8] = ["r", "k", "p", "q", "a", "h", "b", "c"];

#[derive(Debug)]
pub enum ConfigError {
    /// Malformed file or flags: reported as a usage error.
    Usage(String),
    /// Structurally valid input with out-of-domain values.
    Domain(alleemap::Error),
}

/// How the resolved parameters were specified, for the provenance echo.
#[derive(Debug, Clone, PartialEq)]
pub enum ParameterSource {
    Defaults,
    Dimensionless,
    Raw(RawParameters),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResolvedParameters {
    pub parameters: Parameters,
    pub source: ParameterSource,
}

fn parse_config_file(path: &Path) -> Result<BTreeMap<String, f64>, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        ConfigError::Usage(format!("cannot read config file {}: {e}", path.display()))
    })?;
    let mut map = BTreeMap::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            ConfigError::Usage(format!(
                "{}:{}: expected `key = value`, got {line:?}",
                path.display(),
                lineno + 1
            ))
        })?;
        let key = key.trim().to_ascii_lowercase();
        if !DIMENSIONLESS_KEYS.contains(&key.as_str()) && !RAW_KEYS.contains(&key.as_str()) {
            return Err(ConfigError::Usage(format!(
                "{}:{}: unknown key {key:?}",
                path.display(),
                lineno + 1
            )));
        }
        let value: f64 = value.trim().parse().map_err(|_| {
            ConfigError::Usage(format!(
                "{}:{}: cannot parse {:?} as a number",
                path.display(),
                lineno + 1,
                value.trim()
            ))
        })?;
        if map.insert(key.clone(), value).is_some() {
            return Err(ConfigError::Usage(format!(
                "{}: key {key:?} given twice",
                path.display()
            )));
        }
    }
    Ok(map)
}

/// Flag-level parameter overrides, filled in by clap.
#[derive(Debug, Clone, Default)]
pub struct ParameterFlags {
    pub s: Option<f64>,
    pub w: Option<f64>,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub theta: Option<f64>,
    /// r,K,p,q,a,h,b,c as one comma-separated list.
    pub raw: Option<Vec<f64>>,
}

impl ParameterFlags {
    fn any_dimensionless(&self) -> bool {
        self.s.is_some()
            || self.w.is_some()
            || self.alpha.is_some()
            || self.beta.is_some()
            || self.theta.is_some()
    }
}

/// Resolves the model parameters from (in increasing precedence) defaults,
/// the config file, and flags.
pub fn resolve_parameters(
    config_path: Option<&Path>,
    flags: &ParameterFlags,
) -> Result<ResolvedParameters, ConfigError> {
    let file_map = match config_path {
        Some(path) => parse_config_file(path)?,
        None => BTreeMap::new(),
    };
    let file_has_raw = RAW_KEYS.iter().any(|k| file_map.contains_key(*k));
    let file_has_dimensionless = DIMENSIONLESS_KEYS.iter().any(|k| file_map.contains_key(*k));
    if file_has_raw && file_has_dimensionless {
        return Err(ConfigError::Usage(
            "config file mixes raw (r, k, p, q, a, h, b, c) and dimensionless \
             (s, w, alpha, beta, theta) parameters; use exactly one family"
                .into(),
        ));
    }
    if flags.raw.is_some() && flags.any_dimensionless() {
        return Err(ConfigError::Usage(
            "--raw conflicts with --s/--w/--alpha/--beta/--theta; use exactly one family".into(),
        ));
    }

    // Raw source: --raw flag, else a raw-parameter config file.
    let raw = if let Some(values) = &flags.raw {
        if values.len() != 8 {
            return Err(ConfigError::Usage(format!(
                "--raw needs 8 comma-separated values r,K,p,q,a,h,b,c, got {}",
                values.len()
            )));
        }
        Some(RawParameters {
            r: values[0],
            k: values[1],
            p: values[2],
            q: values[3],
            a: values[4],
            h: values[5],
            b: values[6],
            c: values[7],
        })
    } else if file_has_raw {
        if flags.any_dimensionless() {
            return Err(ConfigError::Usage(
                "config file supplies raw parameters; dimensionless flag overrides \
                 are ambiguous (pass --raw instead)"
                    .into(),
            ));
        }
        let get = |k: &str| -> Result<f64, ConfigError> {
            file_map
                .get(k)
                .copied()
                .ok_or_else(|| ConfigError::Usage(format!("raw parameter set is missing {k:?}")))
        };
        Some(RawParameters {
            r: get("r")?,
            k: get("k")?,
            p: get("p")?,
            q: get("q")?,
            a: get("a")?,
            h: get("h")?,
            b: get("b")?,
            c: get("c")?,
        })
    } else {
        None
    };

    if let Some(raw) = raw {
        let parameters = raw.nondimensionalize().map_err(ConfigError::Domain)?;
        return Ok(ResolvedParameters {
            parameters,
            source: ParameterSource::Raw(raw),
        });
    }

    let [mut s, mut w, mut alpha, mut beta, mut theta] = DEFAULT_PARAMETERS;
    let mut touched = false;
    for (key, slot) in DIMENSIONLESS_KEYS
        .iter()
        .zip([&mut s, &mut w, &mut alpha, &mut beta, &mut theta])
    {
        if let Some(value) = file_map.get(*key) {
            *slot = *value;
            touched = true;
        }
    }
    for (flag, slot) in [
        (flags.s, &mut s),
        (flags.w, &mut w),
        (flags.alpha, &mut alpha),
        (flags.beta, &mut beta),
        (flags.theta, &mut theta),
    ] {
        if let Some(value) = flag {
            *slot = value;
            touched = true;
        }
    }
    let parameters = Parameters::new(s, w, alpha, beta, theta).map_err(ConfigError::Domain)?;
    let source = if touched {
        ParameterSource::Dimensionless
    } else {
        ParameterSource::Defaults
    };
    Ok(ResolvedParameters { parameters, source })
}
