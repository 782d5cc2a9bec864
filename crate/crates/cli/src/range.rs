use std::fmt;
use std::str::FromStr;

/// `steps` evenly spaced values from `min` to `max`, both included. A single
/// value is a one-point range.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Range {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl Range {
    pub const fn new(min: f64, max: f64, steps: usize) -> Self {
        Self { min, max, steps }
    }

    pub const fn fixed(value: f64) -> Self {
        Self::new(value, value, 1)
    }

    pub fn value(&self, i: usize) -> f64 {
        if i == 0 {
            return self.min;
        }
        if i + 1 == self.steps {
            return self.max;
        }
        let last = (self.steps - 1) as f64;
        (self.min * (last - i as f64) + self.max * i as f64) / last
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.steps).map(|i| self.value(i)).collect()
    }
}

impl fmt::Display for Range {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.steps == 1 {
            write!(f, "{}", self.min)
        } else {
            write!(f, "{}:{}:{}", self.min, self.max, self.steps)
        }
    }
}

/// A decimal number or a fraction `p/q`.
pub fn parse_number(s: &str) -> Result<f64, String> {
    let s = s.trim();
    let value = match s.split_once('/') {
        Some((p, q)) => {
            let p: f64 = p.trim().parse().map_err(|_| format!("bad number `{s}`"))?;
            let q: f64 = q.trim().parse().map_err(|_| format!("bad number `{s}`"))?;
            p / q
        }
        None => s.parse().map_err(|_| format!("bad number `{s}`"))?,
    };
    if value.is_finite() {
        Ok(value)
    } else {
        Err(format!("`{s}` is not a finite number"))
    }
}

impl FromStr for Range {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        match parts.as_slice() {
            [v] => Ok(Range::fixed(parse_number(v)?)),
            [lo, hi, n] => {
                let min = parse_number(lo)?;
                let max = parse_number(hi)?;
                let steps: usize = n
                    .trim()
                    .parse()
                    .map_err(|_| format!("bad step count `{n}`"))?;
                if steps < 2 {
                    return Err(format!("a range needs at least 2 steps, got {steps}"));
                }
                if min >= max {
                    return Err(format!("range minimum {min} is not below maximum {max}"));
                }
                Ok(Range::new(min, max, steps))
            }
            _ => Err(format!("expected VALUE or MIN:MAX:STEPS, got `{s}`")),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoints_are_exact() {
        let r: Range = "-0.99:0.99:199".parse().unwrap();
        assert_eq!(r.value(0), -0.99);
        assert_eq!(r.value(198), 0.99);
        assert_eq!(r.value(99), 0.0);
    }

    #[test]
    fn fractions() {
        let r: Range = "-1/3:1:4".parse().unwrap();
        assert_eq!(r.min, -1.0 / 3.0);
        assert_eq!(r.values().len(), 4);
    }

    #[test]
    fn rejects_bad_ranges() {
        for s in ["1:0:5", "0:1:1", "0:1", "a:1:3", "0:1:x", "inf"] {
            assert!(s.parse::<Range>().is_err(), "{s}");
        }
    }

    #[test]
    fn single_value() {
        let r: Range = "0.25".parse().unwrap();
        assert_eq!(r.values(), vec![0.25]);
    }
}
