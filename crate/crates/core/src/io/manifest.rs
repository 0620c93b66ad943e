use std::collections::BTreeMap;
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::constants::PhysicalConstants;
use crate::error::Result;

/// A number with its unit and, where one exists, the reference
/// value it should reproduce.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scalar {
    pub value: f64,
    pub unit: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reference: Option<Reference>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Reference {
    pub value: f64,
    pub rel_tol: f64,
}

impl Scalar {
    pub fn new(value: f64, unit: &str) -> Self {
        Scalar {
            value,
            unit: unit.to_owned(),
            reference: None,
        }
    }

    pub fn with_reference(mut self, value: f64, rel_tol: f64) -> Self {
        self.reference = Some(Reference { value, rel_tol });
        self
    }

    pub fn within_reference(&self) -> Option<bool> {
        self.reference
            .as_ref()
            .map(|r| (self.value / r.value - 1.0).abs() <= r.rel_tol)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Provenance {
    pub constants: PhysicalConstants,
    pub code_version: String,
    /// Taken from SOURCE_DATE_EPOCH when set; null otherwise so repeated
    /// runs stay byte-identical.
    pub timestamp: Option<String>,
}

impl Provenance {
    pub fn current(constants: PhysicalConstants) -> Self {
        Provenance {
            constants,
            code_version: format!("wavespin-core {}", env!("CARGO_PKG_VERSION")),
            timestamp: std::env::var("SOURCE_DATE_EPOCH").ok(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObservablesManifest {
    pub command: String,
    pub config: BTreeMap<String, Value>,
    pub scalars: BTreeMap<String, Scalar>,
    /// Verification results; null when verification was skipped.
    pub residuals: Option<BTreeMap<String, Value>>,
    pub provenance: Provenance,
}

impl ObservablesManifest {
    pub fn new(command: &str, constants: PhysicalConstants) -> Self {
        ObservablesManifest {
            command: command.to_owned(),
            config: BTreeMap::new(),
            scalars: BTreeMap::new(),
            residuals: None,
            provenance: Provenance::current(constants),
        }
    }

    pub fn config(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.config.insert(key.to_owned(), value.into());
        self
    }

    pub fn scalar(&mut self, key: &str, scalar: Scalar) -> &mut Self {
        self.scalars.insert(key.to_owned(), scalar);
        self
    }

    pub fn residual(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.residuals
            .get_or_insert_with(BTreeMap::new)
            .insert(key.to_owned(), value.into());
        self
    }

    /// Canonical text: pretty JSON with sorted keys and a trailing newline.
    pub fn to_canonical_string(&self) -> Result<String> {
        // going through Value sorts every object's keys
        let value = serde_json::to_value(self)?;
        let mut s = serde_json::to_string_pretty(&value)?;
        s.push('\n');
        Ok(s)
    }
}

pub fn write_manifest(manifest: &ObservablesManifest, mut out: impl Write) -> Result<()> {
    out.write_all(manifest.to_canonical_string()?.as_bytes())?;
    out.flush()?;
    Ok(())
}

pub fn read_manifest(input: impl Read) -> Result<ObservablesManifest> {
    Ok(serde_json::from_reader(input)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> ObservablesManifest {
        let mut m = ObservablesManifest::new("well", PhysicalConstants::TABLE);
        m.provenance.timestamp = None;
        m.config("L", 1e-8).config("grid", 201);
        m.scalar(
            "eta",
            Scalar::new(3.0312947047568936e-5, "1").with_reference(3.033e-5, 1e-3),
        );
        m.scalar("E", Scalar::new(8.187172873691946e-14, "J"));
        m
    }

    #[test]
    fn skipped_verification_is_null() {
        let s = sample().to_canonical_string().unwrap();
        assert!(s.contains("\"residuals\": null"));
    }

    #[test]
    fn keys_sorted_and_reserialization_identical() {
        let mut m = sample();
        m.residual("zeta", 1.0).residual("alpha", 2.0);
        let s = m.to_canonical_string().unwrap();
        let a = s.find("\"alpha\"").unwrap();
        let z = s.find("\"zeta\"").unwrap();
        assert!(a < z);
        assert!(s.find("\"E\"").unwrap() < s.find("\"eta\"").unwrap());
        let back = read_manifest(s.as_bytes()).unwrap();
        assert_eq!(back, m);
        assert_eq!(back.to_canonical_string().unwrap(), s);
    }

    #[test]
    fn eta_reference_present() {
        let m = sample();
        let s = m.to_canonical_string().unwrap();
        let v: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(
            v["scalars"]["eta"]["value"].as_f64(),
            Some(3.0312947047568936e-5)
        );
        assert_eq!(
            v["scalars"]["eta"]["reference"]["value"].as_f64(),
            Some(3.033e-5)
        );
        assert_eq!(m.scalars["eta"].within_reference(), Some(true));
    }
}
