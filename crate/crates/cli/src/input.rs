use serde::{Deserialize, Serialize};
use toric_harrison::cone::{primitive, Cone};
use toric_harrison::FieldSpec;

use crate::CliError;

#[derive(Clone, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(untagged)]
pub enum FieldInput {
    Name(String),
    Prime {
        #[serde(rename = "mod")]
        modulus: u64,
    },
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct ConeInput {
    pub rank: usize,
    pub rays: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldInput>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl ConeInput {
    pub fn parse(text: &str) -> Result<ConeInput, CliError> {
        let input: ConeInput = serde_json::from_str(text).map_err(|e| CliError::parse(format!("invalid input: {e}")))?;
        if input.rank == 0 {
            return Err(CliError::parse("rank must be positive"));
        }
        if input.rays.is_empty() {
            return Err(CliError::parse("no rays given"));
        }
        for (i, r) in input.rays.iter().enumerate() {
            if r.len() != input.rank {
                return Err(CliError::parse(format!("ray {i} has {} coordinates, expected {}", r.len(), input.rank)));
            }
        }
        if let Some(labels) = &input.labels {
            if labels.len() != input.rays.len() {
                return Err(CliError::parse(format!("{} labels for {} rays", labels.len(), input.rays.len())));
            }
        }
        Ok(input)
    }

    pub fn field(&self) -> Result<FieldSpec, CliError> {
        match &self.field {
            None => Ok(FieldSpec::Rationals),
            Some(FieldInput::Name(n)) if matches!(n.as_str(), "Q" | "QQ" | "rationals") => Ok(FieldSpec::Rationals),
            Some(FieldInput::Name(n)) => Err(CliError::parse(format!("unknown field {n:?}, use \"Q\" or {{\"mod\": p}}"))),
            Some(FieldInput::Prime { modulus }) => {
                toric_harrison::PrimeField::new(*modulus).map_err(|e| CliError::parse(e.to_string()))?;
                Ok(FieldSpec::Prime(*modulus))
            }
        }
    }

    /// Rays as given, or divided by their content with `primitivize`.
    /// Non-primitive rays are rejected otherwise.
    pub fn rays(&self, primitivize: bool) -> Result<Vec<Vec<i64>>, CliError> {
        let mut out = Vec::with_capacity(self.rays.len());
        for (i, r) in self.rays.iter().enumerate() {
            if r.iter().all(|&x| x == 0) {
                return Err(CliError::geometry(format!("ray {i} is zero")));
            }
            let p = primitive(r);
            if p != *r && !primitivize {
                return Err(CliError::parse(format!(
                    "ray {i} {r:?} is not primitive; its primitive generator is {p:?} (pass --primitivize to use it)"
                )));
            }
            out.push(p);
        }
        Ok(out)
    }

    pub fn cone(&self, primitivize: bool) -> Result<Cone, CliError> {
        Cone::new(self.rank, self.rays(primitivize)?).map_err(CliError::from)
    }
}
