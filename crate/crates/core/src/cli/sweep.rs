use std::fmt;
use std::str::FromStr;

/// A parameter bound to one value or swept over an inclusive linear range.
#[derive(Debug, Clone, PartialEq)]
pub enum SweepSpec {
    Single(f64),
    Range { min: f64, max: f64, steps: usize },
}

impl SweepSpec {
    pub fn values(&self) -> Vec<f64> {
        match *self {
            SweepSpec::Single(v) => vec![v],
            SweepSpec::Range { min, max, steps } => {
                let step = (max - min) / (steps - 1) as f64;
                (0..steps).map(|k| if k + 1 == steps { max } else { min + step * k as f64 }).collect()
            }
        }
    }
}

impl FromStr for SweepSpec {
    type Err = String;

    /// `VALUE` or `MIN:MAX:STEPS`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |t: &str| -> Result<f64, String> {
            let v: f64 = t.trim().parse().map_err(|_| format!("'{t}' is not a number"))?;
            if v.is_finite() {
                Ok(v)
            } else {
                Err(format!("'{t}' is not finite"))
            }
        };
        match parts.as_slice() {
            [v] => Ok(SweepSpec::Single(num(v)?)),
            [a, b, n] => {
                let (min, max) = (num(a)?, num(b)?);
                let steps: usize = n.trim().parse().map_err(|_| format!("'{n}' is not a step count"))?;
                if min >= max {
                    return Err(format!("sweep needs min < max, got {min}:{max}"));
                }
                if steps < 2 {
                    return Err(format!("sweep needs at least 2 steps, got {steps}"));
                }
                Ok(SweepSpec::Range { min, max, steps })
            }
            _ => Err(format!("expected VALUE or MIN:MAX:STEPS, got '{s}'")),
        }
    }
}

impl fmt::Display for SweepSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SweepSpec::Single(v) => write!(f, "{v}"),
            SweepSpec::Range { min, max, steps } => write!(f, "{min}:{max}:{steps}"),
        }
    }
}

/// Inclusive integer range `M` or `LO:HI`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IntRange {
    pub lo: usize,
    pub hi: usize,
}

impl IntRange {
    pub fn values(&self) -> Vec<usize> {
        (self.lo..=self.hi).collect()
    }
}

impl FromStr for IntRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let int = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("'{t}' is not a non-negative integer"));
        match s.split(':').collect::<Vec<_>>().as_slice() {
            [v] => {
                let v = int(v)?;
                Ok(IntRange { lo: v, hi: v })
            }
            [a, b] => {
                let (lo, hi) = (int(a)?, int(b)?);
                if lo >= hi {
                    return Err(format!("range needs LO < HI, got {lo}:{hi}"));
                }
                Ok(IntRange { lo, hi })
            }
            _ => Err(format!("expected M or LO:HI, got '{s}'")),
        }
    }
}
