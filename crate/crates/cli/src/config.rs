//! Flat `key = value` run configuration.
//!
//! Entries are separated by newlines or `;`, `#` starts a comment, and keys
//! outside [`KEYS`] are rejected. Command-line flags are merged on top.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;

use qsync::channel::{ChannelModel, ShiftDistribution};
use qsync::cyclic::CyclicCodePair;
use qsync::family::{CodeSpec, Family};
use qsync::gf2::{BinaryPolynomial, BitVector};

pub const KEYS: [&str; 18] = [
    "n", "p", "q", "family", "al", "ar", "y", "b", "c", "px", "pz", "shift", "adversarial", "trials", "seed", "out",
    "format", "distance",
];

/// A configuration problem; maps to exit code 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ConfigError {}

fn err<T>(msg: impl Into<String>) -> Result<T, ConfigError> {
    Err(ConfigError(msg.into()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
    Csv,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RawConfig {
    values: BTreeMap<String, String>,
}

impl RawConfig {
    pub fn parse(text: &str) -> Result<Self, ConfigError> {
        let mut values = BTreeMap::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("");
            for entry in line.split(';') {
                let entry = entry.trim();
                if entry.is_empty() {
                    continue;
                }
                let Some((k, v)) = entry.split_once('=') else {
                    return err(format!("line {}: expected key=value, got {entry:?}", lineno + 1));
                };
                let key = k.trim().to_ascii_lowercase();
                if !KEYS.contains(&key.as_str()) {
                    return err(format!("line {}: unknown key {key:?} (known: {})", lineno + 1, KEYS.join(", ")));
                }
                if values.insert(key.clone(), v.trim().to_string()).is_some() {
                    return err(format!("line {}: duplicate key {key:?}", lineno + 1));
                }
            }
        }
        Ok(RawConfig { values })
    }

    /// Later values win.
    pub fn set(&mut self, key: &str, value: Option<String>) {
        debug_assert!(KEYS.contains(&key));
        if let Some(v) = value {
            self.values.insert(key.to_string(), v);
        }
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    fn require(&self, key: &str) -> Result<&str, ConfigError> {
        self.get(key).ok_or_else(|| ConfigError(format!("missing required key {key:?} (flag --{key})")))
    }

    fn number<T: std::str::FromStr>(&self, key: &str) -> Result<Option<T>, ConfigError>
    where
        T::Err: fmt::Display,
    {
        match self.get(key) {
            None => Ok(None),
            Some(v) => v.parse().map(Some).map_err(|e| ConfigError(format!("{key} = {v:?}: {e}"))),
        }
    }

    fn flag(&self, key: &str) -> Result<bool, ConfigError> {
        match self.get(key).map(str::to_ascii_lowercase).as_deref() {
            None | Some("false") | Some("0") | Some("no") => Ok(false),
            Some("true") | Some("1") | Some("yes") => Ok(true),
            Some(v) => err(format!("{key} = {v:?}: expected true or false")),
        }
    }

    pub fn n(&self) -> Result<usize, ConfigError> {
        self.number("n")?.ok_or_else(|| ConfigError("missing required key \"n\" (flag --n)".into()))
    }

    pub fn has_pair(&self) -> bool {
        self.get("p").is_some() || self.get("q").is_some()
    }

    pub fn pair(&self) -> Result<CyclicCodePair, ConfigError> {
        let n = self.n()?;
        let poly = |key: &str| {
            BinaryPolynomial::parse(self.require(key)?).map_err(|e| ConfigError(format!("{key}: {e}")))
        };
        let (p, q) = (poly("p")?, poly("q")?);
        CyclicCodePair::from_polys(n, p, q).map_err(|e| ConfigError(e.to_string()))
    }

    pub fn spec(&self) -> Result<CodeSpec, ConfigError> {
        let family: Family = self.require("family")?.parse().map_err(|e: qsync::Error| ConfigError(e.to_string()))?;
        let bits = |key: &str| -> Result<Option<BitVector>, ConfigError> {
            self.get(key)
                .map(|v| BitVector::parse(v).map_err(|e| ConfigError(format!("{key}: {e}"))))
                .transpose()
        };
        Ok(CodeSpec {
            family,
            a_l: self.number("al")?.unwrap_or(0),
            a_r: self.number("ar")?.unwrap_or(0),
            y: self.number("y")?.unwrap_or(0),
            message_b: bits("b")?,
            message_c: bits("c")?,
        })
    }

    pub fn channel(&self, spec: &CodeSpec) -> Result<ChannelModel, ConfigError> {
        let p_x = self.number("px")?.unwrap_or(0.0);
        let p_z = self.number("pz")?.unwrap_or(0.0);
        let shift = match self.get("shift").map(str::trim) {
            None | Some("0") => ShiftDistribution::Fixed(0),
            Some("window") => ShiftDistribution::Uniform { min: -(spec.a_l as i32), max: spec.a_r as i32 },
            Some(v) => match v.split_once("..") {
                Some((lo, hi)) => {
                    let parse = |s: &str| s.trim().parse::<i32>().map_err(|e| ConfigError(format!("shift = {v:?}: {e}")));
                    ShiftDistribution::Uniform { min: parse(lo)?, max: parse(hi)? }
                }
                None => ShiftDistribution::Fixed(v.parse().map_err(|e| ConfigError(format!("shift = {v:?}: {e}")))?),
            },
        };
        Ok(ChannelModel { p_x, p_z, shift, adversarial: self.flag("adversarial")? })
    }

    pub fn trials(&self) -> Result<u64, ConfigError> {
        Ok(self.number("trials")?.unwrap_or(1000))
    }

    pub fn seed(&self) -> Result<u64, ConfigError> {
        Ok(self.number("seed")?.unwrap_or(0))
    }

    pub fn distance(&self) -> Result<bool, ConfigError> {
        self.flag("distance")
    }

    /// Output directory: `out`, then `QSYNC_OUT_DIR`, then the working directory.
    pub fn out_dir(&self) -> PathBuf {
        self.get("out")
            .map(PathBuf::from)
            .or_else(|| std::env::var_os(crate::OUT_DIR_ENV).map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from("."))
    }

    pub fn format(&self, default: Format) -> Result<Format, ConfigError> {
        match self.get("format").map(str::to_ascii_lowercase).as_deref() {
            None => Ok(default),
            Some("json") => Ok(Format::Json),
            Some("text") => Ok(Format::Text),
            Some("csv") => Ok(Format::Csv),
            Some(v) => err(format!("format = {v:?}: expected json, text or csv")),
        }
    }
}
