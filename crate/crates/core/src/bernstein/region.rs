use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{as_string, Rational};

/// Closed interval `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Interval {
    #[serde(with = "as_string")]
    pub lo: Rational,
    #[serde(with = "as_string")]
    pub hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidRegion(format!("empty interval [{lo}, {hi}]")));
        }
        Ok(Interval { lo, hi })
    }

    pub fn unit() -> Self {
        Interval {
            lo: Rational::zero(),
            hi: Rational::one(),
        }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }
}

/// Axis-aligned box: one closed interval per variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Region {
    intervals: Vec<Interval>,
}

impl Region {
    pub fn new(intervals: Vec<Interval>) -> Self {
        Region { intervals }
    }

    pub fn from_bounds(bounds: Vec<(Rational, Rational)>) -> Result<Self> {
        let intervals = bounds
            .into_iter()
            .map(|(lo, hi)| Interval::new(lo, hi))
            .collect::<Result<_>>()?;
        Ok(Region { intervals })
    }

    pub fn unit(dim: usize) -> Self {
        Region {
            intervals: vec![Interval::unit(); dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.intervals.len()
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn interval(&self, k: usize) -> &Interval {
        &self.intervals[k]
    }

    /// Re-checks `lo <= hi` (deserialized regions bypass the constructor).
    pub fn validate(&self) -> Result<()> {
        for iv in &self.intervals {
            Interval::new(iv.lo.clone(), iv.hi.clone())?;
        }
        Ok(())
    }

    /// Corner selected per axis by `upper[k]`.
    pub fn corner(&self, upper: &[bool]) -> Vec<Rational> {
        self.intervals
            .iter()
            .zip(upper)
            .map(|(iv, &u)| if u { iv.hi.clone() } else { iv.lo.clone() })
            .collect()
    }

    pub fn contains_point(&self, pt: &[Rational]) -> bool {
        pt.len() == self.dim() && self.intervals.iter().zip(pt).all(|(iv, x)| iv.contains(x))
    }

    pub fn contains(&self, other: &Region) -> bool {
        other.dim() == self.dim()
            && self
                .intervals
                .iter()
                .zip(&other.intervals)
                .all(|(a, b)| a.lo <= b.lo && b.hi <= a.hi)
    }

    /// Product of widths over the axes where `mask` is set.
    pub fn measure(&self, mask: &[bool]) -> Rational {
        self.intervals
            .iter()
            .zip(mask)
            .filter(|(_, &m)| m)
            .map(|(iv, _)| iv.width())
            .fold(Rational::one(), |acc, w| acc * w)
    }

    /// Axes of positive width.
    pub fn nondegenerate_mask(&self) -> Vec<bool> {
        self.intervals.iter().map(|iv| !iv.is_degenerate()).collect()
    }

    /// True if the two boxes overlap in a set of positive measure with respect
    /// to the axes in `mask`.
    pub fn interiors_overlap(&self, other: &Region, mask: &[bool]) -> bool {
        self.intervals
            .iter()
            .zip(&other.intervals)
            .zip(mask)
            .all(|((a, b), &m)| {
                let lo = if a.lo > b.lo { &a.lo } else { &b.lo };
                let hi = if a.hi < b.hi { &a.hi } else { &b.hi };
                if m {
                    lo < hi
                } else {
                    lo <= hi
                }
            })
    }

    /// Uniform grid split; children are listed row-major (last axis fastest).
    pub fn split(&self, counts: &[usize]) -> Result<Vec<Region>> {
        if counts.len() != self.dim() {
            return Err(Error::Arity {
                expected: self.dim(),
                got: counts.len(),
            });
        }
        if counts.contains(&0) {
            return Err(Error::InvalidParameter("split counts must be at least 1".into()));
        }
        let pieces: Vec<Vec<Interval>> = self
            .intervals
            .iter()
            .zip(counts)
            .map(|(iv, &n)| {
                let step = iv.width() / Rational::from_integer(n.into());
                (0..n)
                    .map(|i| Interval {
                        lo: &iv.lo + &step * Rational::from_integer(i.into()),
                        hi: if i + 1 == n {
                            iv.hi.clone()
                        } else {
                            &iv.lo + &step * Rational::from_integer((i + 1).into())
                        },
                    })
                    .collect()
            })
            .collect();
        let total: usize = counts.iter().product();
        let mut out = Vec::with_capacity(total);
        for mut lin in 0..total {
            let mut ivs = vec![Interval::unit(); self.dim()];
            for k in (0..self.dim()).rev() {
                ivs[k] = pieces[k][lin % counts[k]].clone();
                lin /= counts[k];
            }
            out.push(Region { intervals: ivs });
        }
        Ok(out)
    }

    /// Cuts axis `var` at `point`, which must lie strictly inside the interval.
    pub fn split_at(&self, var: usize, point: &Rational) -> Result<[Region; 2]> {
        let iv = self
            .intervals
            .get(var)
            .ok_or_else(|| Error::InvalidParameter(format!("axis {var} out of range")))?;
        if !(&iv.lo < point && point < &iv.hi) {
            return Err(Error::InvalidRegion(format!(
                "cut point {point} not inside [{}, {}]",
                iv.lo, iv.hi
            )));
        }
        let mut left = self.clone();
        let mut right = self.clone();
        left.intervals[var].hi = point.clone();
        right.intervals[var].lo = point.clone();
        Ok([left, right])
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .intervals
            .iter()
            .map(|iv| format!("[{}, {}]", iv.lo, iv.hi))
            .collect();
        write!(f, "{}", parts.join(" x "))
    }
}
