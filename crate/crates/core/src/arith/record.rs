//! Serializable forms of ring elements, series and the embedding datum.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::padic::PadicScalar;
use super::ring::OkRing;
use super::series::{LambdaSeries, Pole};
use crate::error::{Error, Result};

/// The fixed embedding: `O_K = Z_p[t]/H(t)` with `zeta_m` given in the basis
/// `1, t, ..., t^{f-1}` modulo `p^cap`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingRecord {
    pub p: u64,
    pub m: u64,
    pub degree: usize,
    pub cap: u32,
    /// Monic modulus, constant term first.
    pub modulus: Vec<u64>,
    pub zeta_m: Vec<u64>,
}

/// `p^shift * digits + O(p^prec)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScalarRecord {
    pub shift: i32,
    pub digits: Vec<u64>,
    pub prec: i32,
    pub display: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesRecord {
    pub pole: Pole,
    pub coeffs: Vec<ScalarRecord>,
}

impl OkRing {
    pub fn record(&self) -> EmbeddingRecord {
        EmbeddingRecord {
            p: self.p(),
            m: self.m(),
            degree: self.degree(),
            cap: self.cap(),
            modulus: self.modpoly().to_vec(),
            zeta_m: self.root_of_unity(self.m(), 1),
        }
    }

    /// The cached ring for `(p, m)`, refusing records from a different embedding.
    pub fn from_record(r: &EmbeddingRecord) -> Result<Arc<OkRing>> {
        if r.p < 2 || r.m % (r.p - 1) != 0 || r.m % r.p == 0 {
            return Err(Error::Domain(format!("no ring for p = {}, m = {}", r.p, r.m)));
        }
        let ring = OkRing::get(r.p, r.m);
        if ring.record() != *r {
            return Err(Error::Domain("embedding datum differs from this build".into()));
        }
        Ok(ring)
    }
}

impl PadicScalar {
    pub fn record(&self) -> ScalarRecord {
        ScalarRecord { shift: self.shift(), digits: self.digits().to_vec(), prec: self.prec(), display: self.to_string() }
    }

    pub fn from_record(ring: &Arc<OkRing>, r: &ScalarRecord) -> Result<Self> {
        if r.digits.len() != ring.degree() {
            return Err(Error::Domain(format!("expected {} digits, got {}", ring.degree(), r.digits.len())));
        }
        Ok(PadicScalar::from_parts(ring, r.shift, r.digits.clone(), r.prec))
    }
}

impl LambdaSeries {
    pub fn record(&self) -> SeriesRecord {
        SeriesRecord { pole: self.pole(), coeffs: self.coeffs().iter().map(|c| c.record()).collect() }
    }

    pub fn from_record(ring: &Arc<OkRing>, r: &SeriesRecord) -> Result<Self> {
        if r.coeffs.is_empty() {
            return Err(Error::Domain("series needs at least one coefficient".into()));
        }
        let cs = r.coeffs.iter().map(|c| PadicScalar::from_record(ring, c)).collect::<Result<Vec<_>>>()?;
        Ok(LambdaSeries::from_coeffs(ring, cs, r.pole))
    }
}
