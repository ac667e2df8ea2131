use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::signal::{check_channel, ChannelSpec, Role};

/// Channel declarations for an event log.
#[derive(Clone, Debug, PartialEq)]
pub struct Manifest {
    pub channels: Vec<ChannelSpec>,
    /// Free-text label, carried along but not interpreted.
    pub time_unit: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawManifest {
    channels: Vec<RawChannel>,
    #[serde(default)]
    time_unit: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawChannel {
    id: String,
    role: String,
    unit_cost: f64,
}

impl Manifest {
    pub fn new(channels: Vec<ChannelSpec>) -> Result<Self> {
        for (i, c) in channels.iter().enumerate() {
            check_channel(c)?;
            if channels[..i].iter().any(|d| d.id == c.id) {
                return Err(Error::Validation {
                    channel: c.id.clone(),
                    message: "duplicate channel id".into(),
                });
            }
        }
        Ok(Manifest {
            channels,
            time_unit: None,
        })
    }

    pub fn channel(&self, id: &str) -> Option<&ChannelSpec> {
        self.channels.iter().find(|c| c.id == id)
    }

    pub fn to_json(&self) -> String {
        let channels: Vec<serde_json::Value> = self
            .channels
            .iter()
            .map(|c| serde_json::json!({ "id": c.id, "role": c.role, "unit_cost": c.unit_cost }))
            .collect();
        let mut doc = serde_json::json!({ "channels": channels });
        if let Some(unit) = &self.time_unit {
            doc["time_unit"] = serde_json::Value::String(unit.clone());
        }
        serde_json::to_string_pretty(&doc).expect("manifest serializes") + "\n"
    }
}

pub fn parse_manifest(text: &str) -> Result<Manifest> {
    let raw: RawManifest = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: Some(e.line() as u64),
        message: e.to_string(),
    })?;
    let channels = raw
        .channels
        .into_iter()
        .map(|c| {
            let role = match c.role.as_str() {
                "input" => Role::Input,
                "output" => Role::Output,
                other => {
                    return Err(Error::Validation {
                        channel: c.id,
                        message: format!("role must be \"input\" or \"output\", got {other:?}"),
                    })
                }
            };
            Ok(ChannelSpec::new(c.id, role, c.unit_cost))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut manifest = Manifest::new(channels)?;
    manifest.time_unit = raw.time_unit;
    Ok(manifest)
}

pub fn load_manifest(path: impl AsRef<Path>) -> Result<Manifest> {
    parse_manifest(&super::read_file(path.as_ref())?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_two_channels() {
        let m = parse_manifest(
            r#"{"channels":[{"id":"in","role":"input","unit_cost":1.0},{"id":"out","role":"output","unit_cost":1.0}]}"#,
        )
        .unwrap();
        assert_eq!(
            m.channels,
            vec![ChannelSpec::input("in", 1.0), ChannelSpec::output("out", 1.0)]
        );
        assert_eq!(m.time_unit, None);
        assert_eq!(parse_manifest(&m.to_json()).unwrap(), m);
    }

    #[test]
    fn rejects_duplicates_roles_and_negative_costs() {
        let dup = r#"{"channels":[{"id":"in","role":"input","unit_cost":1},{"id":"in","role":"output","unit_cost":1}]}"#;
        let err = parse_manifest(dup).unwrap_err();
        assert!(matches!(err, Error::Validation { ref channel, .. } if channel == "in"));

        let role = r#"{"channels":[{"id":"x","role":"sideways","unit_cost":1}]}"#;
        let err = parse_manifest(role).unwrap_err();
        assert!(matches!(err, Error::Validation { ref channel, .. } if channel == "x"));

        let neg = r#"{"channels":[{"id":"in","role":"input","unit_cost":-1}]}"#;
        let err = parse_manifest(neg).unwrap_err();
        assert_eq!(err.name(), "ValidationError");
        assert!(err.to_string().contains("`in`"));
    }

    #[test]
    fn malformed_document_is_a_parse_error() {
        assert_eq!(parse_manifest("{\"channels\": [").unwrap_err().name(), "ParseError");
        assert_eq!(parse_manifest("[]").unwrap_err().name(), "ParseError");
    }

    #[test]
    fn keeps_time_unit() {
        let m = parse_manifest(r#"{"channels":[],"time_unit":"h"}"#).unwrap();
        assert_eq!(m.time_unit.as_deref(), Some("h"));
    }
}
