//! JSON function-specification files.
//!
//! ```json
//! {
//!   "matrix":  { "preamble": [], "period": [["1/3", "1/3", "1/3"]] },
//!   "epsilon": { "preamble": [], "period": ["0"] }
//! }
//! ```
//!
//! Rationals are strings `"p/q"` or integer literals (quoted or bare).

use qstar_core::{
    parse_rational, ColumnSchedule, EpsilonSchedule, FunctionSpec, MatrixColumn, Rational,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum SpecError {
    #[error("line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{field}: {message}")]
    Field { field: String, message: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalLit {
    Text(String),
    Integer(i64),
}

impl RationalLit {
    fn parse(&self, field: impl Fn() -> String) -> Result<Rational, SpecError> {
        match self {
            RationalLit::Integer(n) => Ok(Rational::from_integer((*n).into())),
            RationalLit::Text(s) => {
                let valid = s.split('/').count() <= 2 && !s.contains('.');
                parse_rational(s)
                    .ok()
                    .filter(|_| valid)
                    .ok_or_else(|| SpecError::Field {
                        field: field(),
                        message: format!("{s:?} is not a rational of the form p/q"),
                    })
            }
        }
    }

    fn from_rational(r: &Rational) -> Self {
        RationalLit::Text(r.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScheduleFile<T> {
    #[serde(default = "Vec::new")]
    pub preamble: Vec<T>,
    pub period: Vec<T>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpecFile {
    pub matrix: ScheduleFile<[RationalLit; 3]>,
    pub epsilon: ScheduleFile<RationalLit>,
}

fn field_err(field: String, e: impl ToString) -> SpecError {
    SpecError::Field {
        field,
        message: e.to_string(),
    }
}

impl SpecFile {
    pub fn to_function_spec(&self) -> Result<FunctionSpec, SpecError> {
        let columns = |part: &str, list: &[[RationalLit; 3]]| {
            list.iter()
                .enumerate()
                .map(|(i, triple)| {
                    let name = || format!("matrix.{part}[{i}]");
                    let [a, b, c] = triple;
                    let q = |j: usize, lit: &RationalLit| lit.parse(|| format!("{}[{j}]", name()));
                    MatrixColumn::new(q(0, a)?, q(1, b)?, q(2, c)?)
                        .map_err(|e| field_err(name(), e))
                })
                .collect::<Result<Vec<_>, _>>()
        };
        let matrix = ColumnSchedule::new(
            columns("preamble", &self.matrix.preamble)?,
            columns("period", &self.matrix.period)?,
        )
        .map_err(|e| field_err("matrix.period".into(), e))?;

        let values = |part: &str, list: &[RationalLit]| {
            list.iter()
                .enumerate()
                .map(|(i, lit)| {
                    let name = format!("epsilon.{part}[{i}]");
                    let value = lit.parse(|| name.clone())?;
                    // validate one entry at a time to name the offending field
                    EpsilonSchedule::constant(value.clone()).map_err(|e| field_err(name, e))?;
                    Ok(value)
                })
                .collect::<Result<Vec<_>, SpecError>>()
        };
        let eps = EpsilonSchedule::new(
            values("preamble", &self.epsilon.preamble)?,
            values("period", &self.epsilon.period)?,
        )
        .map_err(|e| field_err("epsilon.period".into(), e))?;
        Ok(FunctionSpec::new(matrix, eps))
    }

    pub fn from_function_spec(f: &FunctionSpec) -> Self {
        let column = |c: &MatrixColumn| {
            c.probabilities()
                .clone()
                .map(|q| RationalLit::from_rational(&q))
        };
        let eps = f.eps.schedule();
        SpecFile {
            matrix: ScheduleFile {
                preamble: f.x_schedule.preamble().iter().map(column).collect(),
                period: f.x_schedule.period().iter().map(column).collect(),
            },
            epsilon: ScheduleFile {
                preamble: eps
                    .preamble()
                    .iter()
                    .map(RationalLit::from_rational)
                    .collect(),
                period: eps
                    .period()
                    .iter()
                    .map(RationalLit::from_rational)
                    .collect(),
            },
        }
    }
}

/// Parses and validates a JSON specification.
pub fn parse_spec_file(text: &str) -> Result<FunctionSpec, SpecError> {
    let file: SpecFile = serde_json::from_str(text).map_err(|e| SpecError::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    file.to_function_spec()
}

pub fn to_spec_json(f: &FunctionSpec) -> String {
    serde_json::to_string_pretty(&SpecFile::from_function_spec(f)).expect("spec files serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use qstar_core::{int, ratio};

    const IDENTITY: &str = r#"{"matrix":{"preamble":[],"period":[["1/3","1/3","1/3"]]},"epsilon":{"preamble":[],"period":["0"]}}"#;

    #[test]
    fn identity_spec() {
        let f = parse_spec_file(IDENTITY).unwrap();
        assert_eq!(f, FunctionSpec::uniform(int(0)).unwrap());
    }

    #[test]
    fn bare_integers_and_missing_preamble() {
        let f = parse_spec_file(
            r#"{"matrix":{"period":[["1/2","1/4","1/4"]]},"epsilon":{"period":[1]}}"#,
        )
        .unwrap();
        assert_eq!(f.eps.epsilon_at(3), &int(1));
        assert_eq!(f.x_schedule.column_at(1).q(0), &ratio(1, 2));
    }

    #[test]
    fn non_stochastic_column() {
        let err = parse_spec_file(
            r#"{"matrix":{"preamble":[],"period":[["1/2","1/2","1/2"]]},"epsilon":{"preamble":[],"period":["0"]}}"#,
        )
        .unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("column does not sum to 1"), "{msg}");
        assert!(msg.starts_with("matrix.period[0]"), "{msg}");
    }

    #[test]
    fn epsilon_out_of_range() {
        let err = parse_spec_file(
            r#"{"matrix":{"preamble":[],"period":[["1/3","1/3","1/3"]]},"epsilon":{"preamble":["0"],"period":["3/2"]}}"#,
        )
        .unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("epsilon out of [0,1]"), "{msg}");
        assert!(msg.starts_with("epsilon.period[0]"), "{msg}");
    }

    #[test]
    fn malformed_documents() {
        let err = parse_spec_file("{\n  \"matrix\": [\n").unwrap_err();
        assert!(matches!(err, SpecError::Json { line: 3, .. }), "{err}");
        let err = parse_spec_file(
            r#"{"matrix":{"period":[["1/3","x","1/3"]]},"epsilon":{"period":["0"]}}"#,
        )
        .unwrap_err();
        assert!(err.to_string().starts_with("matrix.period[0][1]"), "{err}");
        let err =
            parse_spec_file(r#"{"matrix":{"period":[]},"epsilon":{"period":["0"]}}"#).unwrap_err();
        assert!(err.to_string().contains("at least one entry"), "{err}");
        assert!(parse_spec_file(
            r#"{"matrix":{"period":[["1","0.0","0"]]},"epsilon":{"period":["0"]}}"#
        )
        .is_err());
    }

    #[test]
    fn round_trip() {
        let text = r#"{"matrix":{"preamble":[["1/4","1/4","1/2"]],"period":[["1/2","1/4","1/4"],["1/5","2/5","2/5"]]},"epsilon":{"preamble":["1/2"],"period":["1/4","3/4"]}}"#;
        let f = parse_spec_file(text).unwrap();
        let again = parse_spec_file(&to_spec_json(&f)).unwrap();
        assert_eq!(f, again);
    }
}
