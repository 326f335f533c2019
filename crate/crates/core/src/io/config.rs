use std::path::Path;

use crate::error::{Error, Result};
use crate::solver::SimConfig;

use super::json::to_json_string;

/// Parses and validates a configuration document.
pub fn parse_config_str(text: &str) -> Result<SimConfig> {
    let config: SimConfig = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
    config.validate()?;
    Ok(config)
}

pub fn parse_config(path: impl AsRef<Path>) -> Result<SimConfig> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_config_str(&text)
}

/// The effective configuration with every default filled in.
pub fn emit_config(config: &SimConfig) -> Result<String> {
    to_json_string(config)
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"{"grid": {"n": 64}, "alpha": 1.0, "eta": 1.0, "lambda": 1.0,
                               "dt": 0.001, "t_end": 0.5}"#;

    #[test]
    fn defaults_filled() {
        let c = parse_config_str(MINIMAL).unwrap();
        assert_eq!(c.snapshot_stride, 1);
        assert_eq!(c.seed, 0);
        assert_eq!(c.grid.dim, 2);
        assert_eq!(c.delta, 1.0);
    }

    #[test]
    fn range_error_names_key() {
        let text = MINIMAL.replace("\"dt\"", "\"delta\": 1.5, \"dt\"");
        let err = parse_config_str(&text).unwrap_err();
        assert!(matches!(&err, Error::InvalidKey { key, .. } if key == "delta"), "{err}");
    }

    #[test]
    fn unknown_and_missing_keys_rejected() {
        let text = MINIMAL.replace("\"dt\"", "\"viscosity\": 2.0, \"dt\"");
        assert!(parse_config_str(&text).unwrap_err().to_string().contains("viscosity"));
        let text = MINIMAL.replace("\"alpha\": 1.0,", "");
        assert!(parse_config_str(&text).unwrap_err().to_string().contains("alpha"));
    }

    #[test]
    fn emit_then_parse_is_identity() {
        let mut c = parse_config_str(MINIMAL).unwrap();
        c.epsilon = 1.0 / 3.0;
        c.stress_amplitude = 0.1;
        let back = parse_config_str(&emit_config(&c).unwrap()).unwrap();
        assert_eq!(c, back);
    }
}
