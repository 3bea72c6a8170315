use std::fmt::Write as _;

use serde_json::{Map, Number, Value};

/// Significant digits for every real field.
pub const SIG_DIGITS: usize = 12;

#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    Int(i64),
    Real(f64),
    Text(String),
    Missing,
}

impl From<f64> for Field {
    fn from(x: f64) -> Self {
        Field::Real(x)
    }
}

impl From<usize> for Field {
    fn from(x: usize) -> Self {
        Field::Int(x as i64)
    }
}

impl From<bool> for Field {
    fn from(x: bool) -> Self {
        Field::Int(x as i64)
    }
}

impl From<&str> for Field {
    fn from(x: &str) -> Self {
        Field::Text(x.to_string())
    }
}

impl<T: Into<Field>> From<Option<T>> for Field {
    fn from(x: Option<T>) -> Self {
        x.map_or(Field::Missing, Into::into)
    }
}

/// One output row: ordered named columns.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct OutputRecord {
    fields: Vec<(&'static str, Field)>,
}

impl OutputRecord {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, name: &'static str, value: impl Into<Field>) -> Self {
        self.fields.push((name, value.into()));
        self
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.fields.iter().map(|(n, _)| *n).collect()
    }

    pub fn get(&self, name: &str) -> Option<&Field> {
        self.fields.iter().find(|(n, _)| *n == name).map(|(_, v)| v)
    }

    pub fn real(&self, name: &str) -> Option<f64> {
        match self.get(name)? {
            Field::Real(x) => Some(*x),
            Field::Int(i) => Some(*i as f64),
            _ => None,
        }
    }

    /// First non-finite real column, if any.
    pub fn non_finite(&self) -> Option<&'static str> {
        self.fields.iter().find(|(_, v)| matches!(v, Field::Real(x) if !x.is_finite())).map(|(n, _)| *n)
    }
}

/// `%.12g`-style rendering; `-0` prints as `0`.
pub fn format_real(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let sci = format!("{:.*e}", SIG_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if (-4..SIG_DIGITS as i32).contains(&exp) {
        let decimals = (SIG_DIGITS as i32 - 1 - exp).max(0) as usize;
        trim_zeros(format!("{:.*}", decimals, x))
    } else {
        format!("{}e{}", trim_zeros(mantissa.to_string()), exp)
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

fn render(field: &Field) -> String {
    match field {
        Field::Int(i) => i.to_string(),
        Field::Real(x) => format_real(*x),
        Field::Text(s) => s.clone(),
        Field::Missing => String::new(),
    }
}

pub fn to_csv(records: &[OutputRecord]) -> String {
    let mut out = String::new();
    let Some(first) = records.first() else {
        return out;
    };
    out.push_str(&first.names().join(","));
    out.push('\n');
    for r in records {
        let row: Vec<String> = r.fields.iter().map(|(_, v)| render(v)).collect();
        let _ = writeln!(out, "{}", row.join(","));
    }
    out
}

pub fn to_json(records: &[OutputRecord]) -> String {
    let rows: Vec<Value> = records
        .iter()
        .map(|r| {
            let mut m = Map::new();
            for (name, v) in &r.fields {
                let value = match v {
                    Field::Int(i) => Value::from(*i),
                    // round through the CSV text so both formats carry the same digits
                    Field::Real(x) => format_real(*x)
                        .parse::<f64>()
                        .ok()
                        .and_then(Number::from_f64)
                        .map_or(Value::Null, Value::Number),
                    Field::Text(s) => Value::from(s.clone()),
                    Field::Missing => Value::Null,
                };
                m.insert((*name).to_string(), value);
            }
            Value::Object(m)
        })
        .collect();
    let mut s = serde_json::to_string_pretty(&Value::Array(rows)).expect("json serialization");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(format_real(0.468_995_593_589_281_2), "0.468995593589");
        assert_eq!(format_real(1.0), "1");
        assert_eq!(format_real(-0.0), "0");
        assert_eq!(format_real(1.589_533_236_240_79e-8), "1.58953323624e-8");
        assert_eq!(format_real(123_456.789), "123456.789");
        assert_eq!(format_real(-2.5e15), "-2.5e15");
        assert_eq!(format_real(1e-5), "1e-5");
        assert_eq!(format_real(1e-4), "0.0001");
    }

    #[test]
    fn csv_and_json_share_columns() {
        let rows = vec![
            OutputRecord::new()
                .with("kappa", 0.5)
                .with("index", 1usize)
                .with("path", "abstract")
                .with("beta", None::<f64>),
            OutputRecord::new()
                .with("kappa", 0.25)
                .with("index", 2usize)
                .with("path", "abstract")
                .with("beta", Some(0.6)),
        ];
        assert_eq!(to_csv(&rows), "kappa,index,path,beta\n0.5,1,abstract,\n0.25,2,abstract,0.6\n");
        let v: Value = serde_json::from_str(&to_json(&rows)).unwrap();
        assert_eq!(v[0]["kappa"], Value::from(0.5));
        assert_eq!(v[0]["beta"], Value::Null);
        assert_eq!(v[1]["index"], Value::from(2));
        let keys: Vec<_> = v[1].as_object().unwrap().keys().cloned().collect();
        assert_eq!(keys, vec!["kappa", "index", "path", "beta"]);
    }

    #[test]
    fn flags_non_finite() {
        let r = OutputRecord::new().with("a", 1.0).with("b", f64::NAN);
        assert_eq!(r.non_finite(), Some("b"));
    }
}
