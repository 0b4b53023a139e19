//! Resource limits for the expansion and the factorizer.

use std::fmt;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CapKind {
    Depth,
    Ramification,
    Tower,
    FactorDegree,
}

impl fmt::Display for CapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CapKind::Depth => "depth",
            CapKind::Ramification => "ramification",
            CapKind::Tower => "tower",
            CapKind::FactorDegree => "factor-degree",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Caps {
    /// Maximum number of Newton steps along one branch.
    pub depth: usize,
    /// Maximum product of exponent denominators along one branch.
    pub ramification: u64,
    /// Maximum degree of the extension tower along one branch.
    pub tower: usize,
    /// Maximum degree handed to the univariate factorizer.
    pub factor_degree: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps { depth: 32, ramification: 64, tower: 16, factor_degree: 8 }
    }
}

impl Caps {
    /// Overrides fields from text such as `depth=32,ram=64,tower=16`.
    pub fn with_overrides(mut self, text: &str) -> Result<Caps, String> {
        for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| format!("expected key=value, got `{part}`"))?;
            let v: u64 = value
                .trim()
                .parse()
                .map_err(|_| format!("not a non-negative integer: `{value}`"))?;
            match key.trim() {
                "depth" => self.depth = v as usize,
                "ram" | "ramification" => self.ramification = v,
                "tower" => self.tower = v as usize,
                "factor" => self.factor_degree = v as usize,
                other => return Err(format!("unknown cap `{other}`")),
            }
        }
        Ok(self)
    }

    /// Defaults overridden by `PBOUND_CAPS` when set.
    pub fn from_env() -> Result<Caps, String> {
        match std::env::var("PBOUND_CAPS") {
            Ok(s) => Caps::default().with_overrides(&s),
            Err(_) => Ok(Caps::default()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides() {
        let c = Caps::default().with_overrides("depth=5, ram=8").unwrap();
        assert_eq!((c.depth, c.ramification, c.tower), (5, 8, 16));
        assert!(Caps::default().with_overrides("speed=3").is_err());
        assert!(Caps::default().with_overrides("depth").is_err());
    }
}
