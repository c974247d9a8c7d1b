//! The bundled test data.

use crate::config::{parse_datum, ConfigError, LoadedDatum};

pub const NAMES: [&str; 4] = ["super", "even", "mixed", "orthogonal"];

const SOURCES: [&str; 4] = [
    include_str!("../data/super.toml"),
    include_str!("../data/even.toml"),
    include_str!("../data/mixed.toml"),
    include_str!("../data/orthogonal.toml"),
];

/// Raw TOML of a bundled datum.
pub fn source(name: &str) -> Option<&'static str> {
    NAMES.iter().position(|&n| n == name).map(|k| SOURCES[k])
}

pub fn bundled(name: &str) -> Result<LoadedDatum, ConfigError> {
    let text = source(name).ok_or_else(|| ConfigError::UnknownBundled(name.to_string()))?;
    parse_datum(text)
}

/// Every bundled datum, in [`NAMES`] order.
pub fn all() -> Vec<LoadedDatum> {
    NAMES.iter().map(|n| bundled(n).expect("bundled data parse")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_data_validate() {
        for d in all() {
            assert!(d.hecke.validate().is_ok(), "{}", d.name);
            assert!(NAMES.contains(&d.name.as_str()));
        }
        assert!(bundled("nope").is_err());
    }
}
