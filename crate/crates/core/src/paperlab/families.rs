//! Named ring families selectable at runtime.

use crate::error::{Error, Result};
use crate::gf::make_field;
use crate::linalg::prime_power;
use crate::registry::Registry;
use crate::ring::{matrix_algebra, RingPresentation};

use super::rnq::{build_null_ring, build_rnq};

/// Parameters a family may read; unused ones are ignored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FamilyParams {
    pub n: Option<usize>,
    pub q: Option<u64>,
    pub p: Option<u64>,
    pub r: Option<usize>,
}

impl FamilyParams {
    fn need<T: Copy>(value: Option<T>, name: &str, family: &str) -> Result<T> {
        value.ok_or_else(|| Error::InvalidParameter(format!("family `{family}` needs --{name}")))
    }

    fn field(&self, family: &str) -> Result<crate::gf::FieldSpec> {
        let q = Self::need(self.q, "q", family)?;
        let (p, k) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        make_field(p, k as usize)
    }
}

pub trait RingFamily: Send + Sync {
    fn description(&self) -> &'static str;
    fn build(&self, params: &FamilyParams) -> Result<RingPresentation>;
}

pub struct Rnq;
pub struct RnqOpposite;
pub struct Null;
pub struct Matrix;

impl RingFamily for Rnq {
    fn description(&self) -> &'static str {
        "n x (n+1) matrices (A|v) over F_q with (A|v)(B|w) = (AB|Aw); needs n, q"
    }

    fn build(&self, params: &FamilyParams) -> Result<RingPresentation> {
        build_rnq(
            FamilyParams::need(params.n, "n", "Rnq")?,
            &params.field("Rnq")?,
        )
    }
}

impl RingFamily for RnqOpposite {
    fn description(&self) -> &'static str {
        "opposite ring of Rnq; needs n, q"
    }

    fn build(&self, params: &FamilyParams) -> Result<RingPresentation> {
        Ok(Rnq.build(params)?.opposite())
    }
}

impl RingFamily for Null {
    fn description(&self) -> &'static str {
        "zero multiplication on F_p^r; needs p, r (default 2)"
    }

    fn build(&self, params: &FamilyParams) -> Result<RingPresentation> {
        build_null_ring(
            FamilyParams::need(params.p, "p", "null")?,
            params.r.unwrap_or(2),
        )
    }
}

impl RingFamily for Matrix {
    fn description(&self) -> &'static str {
        "full matrix ring M_n(F_q); needs n, q"
    }

    fn build(&self, params: &FamilyParams) -> Result<RingPresentation> {
        matrix_algebra(
            FamilyParams::need(params.n, "n", "matrix")?,
            &params.field("matrix")?,
        )
    }
}

pub fn ring_families() -> Registry<dyn RingFamily> {
    let mut reg: Registry<dyn RingFamily> = Registry::new("ring family");
    reg.register("Rnq", Box::new(Rnq))
        .register("Rnq-opposite", Box::new(RnqOpposite))
        .register("null", Box::new(Null))
        .register("matrix", Box::new(Matrix));
    reg
}
