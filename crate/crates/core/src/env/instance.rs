use std::path::Path;

use crate::{Error, Result};

/// Ground-truth Bernoulli means in the fixed arm order.
#[derive(Debug, Clone, PartialEq)]
pub struct BanditInstance {
    means: Vec<f64>,
}

impl BanditInstance {
    pub fn new(means: Vec<f64>) -> Result<Self> {
        if means.is_empty() {
            return Err(Error::NoArms);
        }
        if let Some((arm, &value)) = means.iter().enumerate().find(|(_, m)| !(0.0..=1.0).contains(*m)) {
            return Err(Error::InvalidMean { arm, value });
        }
        Ok(Self { means })
    }

    pub fn n(&self) -> usize {
        self.means.len()
    }

    pub fn means(&self) -> &[f64] {
        &self.means
    }

    pub fn mean(&self, arm: usize) -> f64 {
        self.means[arm]
    }

    /// Index of the strictly largest mean.
    pub fn best_arm(&self) -> Result<usize> {
        let mut best = 0;
        for (i, &m) in self.means.iter().enumerate().skip(1) {
            if m > self.means[best] {
                best = i;
            }
        }
        if let Some(other) = (0..self.n()).find(|&i| i != best && self.means[i] == self.means[best]) {
            let (first, second) = if other < best { (other, best) } else { (best, other) };
            return Err(Error::NoUniqueBest {
                mean: self.means[best],
                first,
                second,
            });
        }
        Ok(best)
    }
}

/// Parses the means text format: one decimal literal per line, line `k` is
/// the mean of arm `k`; blank lines and `#` comments are skipped.
pub fn parse_means(text: &str) -> Result<BanditInstance> {
    let mut means = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let value: f64 = line.parse().map_err(|_| Error::MeansFormat {
            line: idx + 1,
            message: format!("cannot parse {line:?} as a number"),
        })?;
        if !(0.0..=1.0).contains(&value) {
            return Err(Error::MeansFormat {
                line: idx + 1,
                message: format!("mean {value} is outside [0, 1]"),
            });
        }
        means.push(value);
    }
    BanditInstance::new(means)
}

pub fn read_means_file(path: &Path) -> Result<BanditInstance> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_means(&text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_means() {
        assert_eq!(BanditInstance::new(vec![]), Err(Error::NoArms));
        assert!(matches!(
            BanditInstance::new(vec![0.2, 1.5]),
            Err(Error::InvalidMean { arm: 1, .. })
        ));
        assert!(BanditInstance::new(vec![f64::NAN]).is_err());
    }

    #[test]
    fn duplicate_maximum_is_allowed_but_has_no_best_arm() {
        let inst = BanditInstance::new(vec![0.3, 0.3, 0.1]).unwrap();
        assert!(matches!(
            inst.best_arm(),
            Err(Error::NoUniqueBest {
                first: 0,
                second: 1,
                ..
            })
        ));
        let inst = BanditInstance::new(vec![0.1, 0.7, 0.3]).unwrap();
        assert_eq!(inst.best_arm(), Ok(1));
    }

    #[test]
    fn means_file_skips_comments_and_blanks() {
        let inst = parse_means("# scenario\n0.25\n\n  0.5 \n# tail\n1\n").unwrap();
        assert_eq!(inst.means(), &[0.25, 0.5, 1.0]);
    }

    #[test]
    fn means_file_reports_line_numbers() {
        let err = parse_means("0.1\n\nabc\n").unwrap_err();
        assert!(matches!(err, Error::MeansFormat { line: 3, .. }));
        let err = parse_means("0.1\n-0.2\n").unwrap_err();
        assert!(matches!(err, Error::MeansFormat { line: 2, .. }));
        assert_eq!(parse_means("# nothing\n"), Err(Error::NoArms));
    }
}
