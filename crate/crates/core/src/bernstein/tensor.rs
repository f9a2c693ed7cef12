use num_traits::Zero;

use super::region::Region;
use crate::binomial::Binomials;
use crate::error::{Error, Result};
use crate::parallel::{map_indexed, Execution};
use crate::poly::MultiPoly;
use crate::rational::Rational;

/// Bernstein coefficients of a polynomial on a box, row-major like [`MultiPoly`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BernsteinTensor {
    degrees: Vec<usize>,
    region: Region,
    beta: Vec<Rational>,
}

impl BernsteinTensor {
    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn region(&self) -> &Region {
        &self.region
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.beta
    }

    fn offset(&self, idx: &[usize]) -> usize {
        idx.iter()
            .zip(&self.degrees)
            .fold(0, |acc, (i, n)| acc * (n + 1) + i)
    }

    fn decode(&self, mut lin: usize) -> Vec<usize> {
        let mut idx = vec![0; self.degrees.len()];
        for k in (0..self.degrees.len()).rev() {
            idx[k] = lin % (self.degrees[k] + 1);
            lin /= self.degrees[k] + 1;
        }
        idx
    }

    pub fn get(&self, idx: &[usize]) -> &Rational {
        &self.beta[self.offset(idx)]
    }

    /// Largest coefficient and its first multi-index in row-major order.
    pub fn max(&self) -> (&Rational, Vec<usize>) {
        let mut best = 0;
        for (i, b) in self.beta.iter().enumerate() {
            if b > &self.beta[best] {
                best = i;
            }
        }
        (&self.beta[best], self.decode(best))
    }

    pub fn min(&self) -> (&Rational, Vec<usize>) {
        let mut best = 0;
        for (i, b) in self.beta.iter().enumerate() {
            if b < &self.beta[best] {
                best = i;
            }
        }
        (&self.beta[best], self.decode(best))
    }

    /// For a three-variable tensor, the matrix `[i][j] = beta[i][j][k]`.
    pub fn layer(&self, k: usize) -> Vec<Vec<Rational>> {
        assert_eq!(self.degrees.len(), 3, "layers are defined for three variables");
        (0..=self.degrees[0])
            .map(|i| {
                (0..=self.degrees[1])
                    .map(|j| self.get(&[i, j, k]).clone())
                    .collect()
            })
            .collect()
    }

    /// Per-axis spread: the largest coefficient range along any fiber in that axis.
    pub fn spread(&self, axis: usize) -> Rational {
        let n = self.degrees[axis];
        let stride: usize = self.degrees[axis + 1..].iter().map(|d| d + 1).product();
        let mut best = Rational::zero();
        for lin in 0..self.beta.len() {
            if !(lin / stride).is_multiple_of(n + 1) {
                continue;
            }
            let fiber = (0..=n).map(|e| &self.beta[lin + e * stride]);
            let (lo, hi) = crate::rational::min_max(fiber).expect("non-empty fiber");
            let s = hi - lo;
            if s > best {
                best = s;
            }
        }
        best
    }
}

/// `(min beta, max beta)`: an enclosure of the range of the polynomial on the box.
pub fn enclosure_bounds(bt: &BernsteinTensor) -> (Rational, Rational) {
    (bt.min().0.clone(), bt.max().0.clone())
}

/// Converts `p` to Bernstein form of multi-degree `degrees` on `region`.
pub fn to_bernstein(p: &MultiPoly, degrees: &[usize], region: &Region) -> Result<BernsteinTensor> {
    let maxd = degrees.iter().copied().max().unwrap_or(0);
    to_bernstein_with(p, degrees, region, &Binomials::up_to(maxd))
}

/// As [`to_bernstein`] with a caller-supplied binomial table.
pub fn to_bernstein_with(
    p: &MultiPoly,
    degrees: &[usize],
    region: &Region,
    binom: &Binomials,
) -> Result<BernsteinTensor> {
    if region.dim() != p.nvars() {
        return Err(Error::Arity {
            expected: p.nvars(),
            got: region.dim(),
        });
    }
    let mut q = p.reshaped(degrees)?;
    for (k, iv) in region.intervals().iter().enumerate() {
        let var = q.vars()[k].clone();
        q = q.substitute_affine(&var, &iv.width(), &iv.lo)?;
    }
    let mut beta = q.coefficients().to_vec();
    let mut stride = 1usize;
    for k in (0..degrees.len()).rev() {
        let n = degrees[k];
        let weights: Vec<Vec<Rational>> = (0..=n)
            .map(|i| {
                (0..=i)
                    .map(|r| Rational::new(binom.get(i, r), binom.get(n, r)))
                    .collect()
            })
            .collect();
        let mut next = beta.clone();
        for lin in 0..beta.len() {
            if !(lin / stride).is_multiple_of(n + 1) {
                continue;
            }
            for (i, w) in weights.iter().enumerate() {
                let mut acc = Rational::zero();
                for (r, wr) in w.iter().enumerate() {
                    let a = &beta[lin + r * stride];
                    if !a.is_zero() {
                        acc += a * wr;
                    }
                }
                next[lin + i * stride] = acc;
            }
        }
        beta = next;
        stride *= n + 1;
    }
    Ok(BernsteinTensor {
        degrees: degrees.to_vec(),
        region: region.clone(),
        beta,
    })
}

/// Uniform subdivision of `region`; one tensor per subbox in row-major box order.
pub fn subdivide(
    p: &MultiPoly,
    degrees: &[usize],
    region: &Region,
    splits: &[usize],
    exec: Execution,
) -> Result<Vec<(Region, BernsteinTensor)>> {
    let boxes = region.split(splits)?;
    convert_all(p, degrees, boxes, exec)
}

/// Subdivision at explicit cut points per axis (each list strictly increasing
/// and interior to the axis interval).
pub fn subdivide_at(
    p: &MultiPoly,
    degrees: &[usize],
    region: &Region,
    cuts: &[Vec<Rational>],
    exec: Execution,
) -> Result<Vec<(Region, BernsteinTensor)>> {
    if cuts.len() != region.dim() {
        return Err(Error::Arity {
            expected: region.dim(),
            got: cuts.len(),
        });
    }
    let mut boxes = vec![region.clone()];
    for (axis, points) in cuts.iter().enumerate() {
        let mut next = Vec::new();
        for b in boxes {
            let mut rest = b;
            let mut row = Vec::new();
            for pt in points {
                let [l, r] = rest.split_at(axis, pt)?;
                row.push(l);
                rest = r;
            }
            row.push(rest);
            next.extend(row);
        }
        boxes = next;
    }
    // Cutting axis by axis yields axis-0-major order, matching `Region::split`.
    convert_all(p, degrees, boxes, exec)
}

fn convert_all(
    p: &MultiPoly,
    degrees: &[usize],
    boxes: Vec<Region>,
    exec: Execution,
) -> Result<Vec<(Region, BernsteinTensor)>> {
    let binom = Binomials::up_to(degrees.iter().copied().max().unwrap_or(0));
    let tensors = map_indexed(exec, &boxes, |_, b| to_bernstein_with(p, degrees, b, &binom));
    boxes
        .into_iter()
        .zip(tensors)
        .map(|(b, t)| Ok((b, t?)))
        .collect()
}
