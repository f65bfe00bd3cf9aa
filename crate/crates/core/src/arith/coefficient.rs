//! Coefficient rings shared by q-expansions and cusp divisors.

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::arith::{CyclotomicRational, LambdaSeries, PadicScalar};
use crate::error::Result;

/// Coefficient rings for q-expansions and divisors.
pub trait Coefficient: Clone {
    const DOMAIN: &'static str;
    fn add(&self, o: &Self) -> Result<Self>;
    fn mul(&self, o: &Self) -> Result<Self>;
    fn scale_int(&self, a: i64) -> Self;
    fn zero_like(&self) -> Self;
    fn is_zero(&self) -> bool;
}

impl Coefficient for LambdaSeries {
    const DOMAIN: &'static str = "lambda";
    fn add(&self, o: &Self) -> Result<Self> {
        LambdaSeries::add(self, o)
    }
    fn mul(&self, o: &Self) -> Result<Self> {
        LambdaSeries::mul(self, o)
    }
    fn scale_int(&self, a: i64) -> Self {
        self.scale(&PadicScalar::from_i64(self.ring(), a, self.ring().cap() as i32))
    }
    fn zero_like(&self) -> Self {
        LambdaSeries::zero(self.ring(), self.ring().cap() as i32, self.len())
    }
    fn is_zero(&self) -> bool {
        self.coeffs().iter().all(|c| c.is_zero())
    }
}

impl Coefficient for CyclotomicRational {
    const DOMAIN: &'static str = "exact-cyclotomic";
    fn add(&self, o: &Self) -> Result<Self> {
        Ok(CyclotomicRational::add(self, o))
    }
    fn mul(&self, o: &Self) -> Result<Self> {
        Ok(CyclotomicRational::mul(self, o))
    }
    fn scale_int(&self, a: i64) -> Self {
        self.scale(&BigRational::from_integer(BigInt::from(a)))
    }
    fn zero_like(&self) -> Self {
        CyclotomicRational::zero(1)
    }
    fn is_zero(&self) -> bool {
        CyclotomicRational::is_zero(self)
    }
}

impl Coefficient for PadicScalar {
    const DOMAIN: &'static str = "padic-scalar";
    fn add(&self, o: &Self) -> Result<Self> {
        Ok(PadicScalar::add(self, o))
    }
    fn mul(&self, o: &Self) -> Result<Self> {
        Ok(PadicScalar::mul(self, o))
    }
    fn scale_int(&self, a: i64) -> Self {
        self.scale_i64(a)
    }
    fn zero_like(&self) -> Self {
        PadicScalar::zero(self.ring(), self.ring().cap() as i32)
    }
    fn is_zero(&self) -> bool {
        PadicScalar::is_zero(self)
    }
}

