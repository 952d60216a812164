//! Output records and their CSV/JSON encodings.
//!
//! CSV: comma separated, header row, `.` decimal point, LF line endings,
//! floats rounded to 6 significant digits. JSON: an array of objects keyed
//! by the same field names, floats at full precision. An infinite or zero
//! optimal smoothing level is written as `"inf"` or `0`, never as an IEEE
//! infinity; the `case` column names the efficiency case.

use std::fmt;
use std::io::{Read, Write};

use serde::de::{self, DeserializeOwned, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;
use smoothq::SmoothingOptimum;

use crate::error::CliError;

/// Optimal smoothing level as written to files.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HStar {
    Zero,
    Finite(f64),
    Infinite,
}

impl From<SmoothingOptimum> for HStar {
    fn from(o: SmoothingOptimum) -> Self {
        match o {
            SmoothingOptimum::Zero => HStar::Zero,
            SmoothingOptimum::Finite(h) => HStar::Finite(h),
            SmoothingOptimum::Infinite => HStar::Infinite,
        }
    }
}

impl Serialize for HStar {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            HStar::Zero => s.serialize_u64(0),
            HStar::Finite(h) => s.serialize_f64(*h),
            HStar::Infinite => s.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for HStar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct HStarVisitor;

        impl Visitor<'_> for HStarVisitor {
            type Value = HStar;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a nonnegative number or \"inf\"")
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<HStar, E> {
                self.visit_f64(v as f64)
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<HStar, E> {
                self.visit_f64(v as f64)
            }

            fn visit_f64<E: de::Error>(self, v: f64) -> Result<HStar, E> {
                if v == 0.0 {
                    Ok(HStar::Zero)
                } else if v == f64::INFINITY {
                    Ok(HStar::Infinite)
                } else if v.is_finite() && v > 0.0 {
                    Ok(HStar::Finite(v))
                } else {
                    Err(E::custom(format!("invalid smoothing level {v}")))
                }
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<HStar, E> {
                match v {
                    "inf" => Ok(HStar::Infinite),
                    other => other
                        .parse::<f64>()
                        .map_err(|_| E::custom(format!("invalid smoothing level {other:?}")))
                        .and_then(|x| self.visit_f64(x)),
                }
            }
        }

        d.deserialize_any(HStarVisitor)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimateRow {
    pub q_hat: f64,
    pub z: f64,
    pub h: f64,
    pub n: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub distribution: String,
    pub tau: f64,
    pub q_tau: f64,
    pub h_star: HStar,
    pub v0: f64,
    pub v_opt: f64,
    pub ratio: f64,
    pub case: String,
    /// `v_opt` is the limit `Var(Y)`, approached but not attained.
    pub limit: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub distribution: String,
    pub tau: f64,
    pub ratio: f64,
    pub h_star: HStar,
    pub case: String,
    pub limit: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimRow {
    pub distribution: String,
    pub tau: Option<f64>,
    pub z: f64,
    pub h: f64,
    pub n: usize,
    pub reps: usize,
    pub seed: u64,
    pub target_q: f64,
    pub est_mean: f64,
    pub est_bias: f64,
    pub scaled_variance: f64,
    pub scaled_variance_se: f64,
    pub predicted_variance: f64,
    pub relative_error: f64,
    pub std_q05: f64,
    pub std_q25: f64,
    pub std_q50: f64,
    pub std_q75: f64,
    pub std_q95: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PopulationRow {
    pub distribution: String,
    pub z: f64,
    pub h: f64,
    /// `F(q)`, the quantile level of the target.
    pub tau: f64,
    pub q: f64,
    pub sigma2: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VarianceRow {
    pub distribution: String,
    pub tau: f64,
    pub h: f64,
    pub z: f64,
    pub v: f64,
    pub dv_dh: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub case: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

/// Formats with 6 significant digits, trailing zeros trimmed.
pub fn format_sig6(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{x:.5e}");
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if (-5..=15).contains(&exp) {
        let rounded: f64 = sci.parse().expect("round trip");
        let decimals = (5 - exp).max(0) as usize;
        trim_zeros(format!("{rounded:.decimals$}"))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

fn csv_field(value: &Value) -> String {
    match value {
        Value::Null => String::new(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => match (n.as_u64(), n.as_i64(), n.as_f64()) {
            (Some(u), _, _) => u.to_string(),
            (_, Some(i), _) => i.to_string(),
            (_, _, Some(f)) => format_sig6(f),
            _ => n.to_string(),
        },
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn write_csv<T: Serialize, W: Write>(rows: &[T], out: W) -> Result<(), CliError> {
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    let mut header_written = false;
    for row in rows {
        let Value::Object(map) = serde_json::to_value(row)? else {
            return Err(CliError::Usage("record is not a struct".into()));
        };
        if !header_written {
            writer.write_record(map.keys())?;
            header_written = true;
        }
        writer.write_record(map.values().map(csv_field))?;
    }
    writer.flush()?;
    Ok(())
}

pub fn write_json<T: Serialize, W: Write>(rows: &[T], mut out: W) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut out, rows)?;
    out.write_all(b"\n")?;
    Ok(())
}

pub fn write_rows<T: Serialize, W: Write>(rows: &[T], format: Format, out: W) -> Result<(), CliError> {
    match format {
        Format::Csv => write_csv(rows, out),
        Format::Json => write_json(rows, out),
    }
}

pub fn read_csv<T: DeserializeOwned, R: Read>(input: R) -> Result<Vec<T>, CliError> {
    csv::Reader::from_reader(input)
        .deserialize()
        .collect::<Result<Vec<T>, _>>()
        .map_err(CliError::from)
}
