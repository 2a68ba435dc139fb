//! The JSON report written by every analysis command.

use monotypy::criteria::{Condition, MonotypyClass, Verdict};
use monotypy::format::InstanceFile;
use monotypy::polytope::SummandReport;
use monotypy::witness::{verify_witness, WitnessReport};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status")]
pub enum WitnessOutcome {
    Found(Box<WitnessReport>),
    NotApplicable { class: MonotypyClass },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportFile {
    pub tool: String,
    pub version: String,
    pub command: String,
    /// SHA-256 of the input files, in argument order.
    pub input_digest: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub class: Option<MonotypyClass>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub verdicts: Vec<Verdict>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessOutcome>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub summand: Option<SummandReport>,
    /// Seconds since the Unix epoch; present only when requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generated_at: Option<u64>,
}

pub fn digest(inputs: &[&[u8]]) -> String {
    let mut h = Sha256::new();
    for bytes in inputs {
        h.update((bytes.len() as u64).to_le_bytes());
        h.update(bytes);
    }
    hex::encode(h.finalize())
}

impl ReportFile {
    pub fn new(command: &str, inputs: &[&[u8]]) -> Self {
        ReportFile {
            tool: "monotypy".into(),
            version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            input_digest: digest(inputs),
            class: None,
            verdicts: Vec::new(),
            witness: None,
            summand: None,
            generated_at: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes") + "\n"
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::input("report", e))
    }

    fn verdict(&self, c: Condition) -> Option<&Verdict> {
        self.verdicts.iter().find(|v| v.condition == c)
    }

    /// Re-checks every certificate against the instance the report was
    /// produced from; returns the first problem found.
    pub fn validate(&self, instance: &[u8]) -> Result<(), String> {
        if digest(&[instance]) != self.input_digest {
            return Err("input digest does not match".into());
        }
        let file = InstanceFile::parse(std::str::from_utf8(instance).map_err(|e| e.to_string())?)
            .map_err(|e| e.to_string())?;
        let n = file.normal_set().map_err(|e| e.to_string())?;
        if let Some(bad) = self.verdicts.iter().find(|v| !v.validate(&n)) {
            return Err(format!(
                "certificate for condition {} does not validate",
                bad.condition
            ));
        }
        if let (Some(class), Some(d), Some(dd)) = (
            self.class,
            self.verdict(Condition::D),
            self.verdict(Condition::DD),
        ) {
            let expected = match (d.holds, dd.holds) {
                (_, true) => MonotypyClass::StronglyMonotypic,
                (true, false) => MonotypyClass::MonotypicNotStrong,
                (false, false) => MonotypyClass::NotMonotypic,
            };
            if class != expected {
                return Err(format!("class {class} disagrees with the verdicts"));
            }
        }
        if let Some(WitnessOutcome::Found(w)) = &self.witness {
            let p = file.polytope().map_err(|e| e.to_string())?;
            match verify_witness(&p, &w.t) {
                Ok(true) => {}
                Ok(false) => return Err("the translate does not witness a non-summand".into()),
                Err(e) => return Err(e.to_string()),
            }
        }
        Ok(())
    }
}
