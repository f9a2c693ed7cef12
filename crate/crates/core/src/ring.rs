//! The arithmetic shared by Gaussian rationals and polynomials, so coefficient
//! formulas can be written once and run both numerically and symbolically.

use crate::poly::MultiPoly;
use crate::rational::{GaussianRational, Rational};

pub trait Coeff: Clone {
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn rscale(&self, r: &Rational) -> Self;
    /// The constant `r` in the same ring as `self`.
    fn constant(&self, r: Rational) -> Self;

    fn int(&self, n: i64) -> Self {
        self.constant(Rational::from_integer(n.into()))
    }

    fn sq(&self) -> Self {
        self.mul(self)
    }

    fn pow(&self, e: u32) -> Self {
        let mut acc = self.int(1);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }
}

impl Coeff for GaussianRational {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn rscale(&self, r: &Rational) -> Self {
        GaussianRational::new(&self.re * r, &self.im * r)
    }
    fn constant(&self, r: Rational) -> Self {
        crate::rational::real(r)
    }
}

impl Coeff for MultiPoly {
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn rscale(&self, r: &Rational) -> Self {
        MultiPoly::scale(self, r)
    }
    fn constant(&self, r: Rational) -> Self {
        MultiPoly::constant(self.vars(), r)
    }
}

/// Sums a slice of ring elements; `zero` supplies the ring for the empty case.
pub fn sum<T: Coeff>(zero: &T, items: &[T]) -> T {
    items.iter().fold(zero.int(0), |acc, x| acc.add(x))
}
