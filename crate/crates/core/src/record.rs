//! One row of verification output, shared by the command line and the
//! figure scripts.

use serde::{Deserialize, Serialize};

pub const CSV_HEADER: &str =
    "suite,D,N,s_re,s_im,lhs,rhs_or_main,residual_or_remainder,h,LD,runtime_ms";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Classgroup,
    Heegner,
    Eval,
    Hecke,
    Kronecker,
    Average,
    Identities,
    Moment,
    Twisted,
    Remainder,
    TwistedScaling,
    Weyl,
    Integral,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VerificationRecord {
    pub suite: Suite,
    #[serde(rename = "D")]
    pub d: i64,
    #[serde(rename = "N")]
    pub n: i64,
    pub s_re: f64,
    pub s_im: f64,
    pub lhs: f64,
    pub rhs_or_main: f64,
    pub residual_or_remainder: f64,
    pub h: usize,
    #[serde(rename = "LD")]
    pub ld: f64,
    pub runtime_ms: u64,
}

impl VerificationRecord {
    pub fn new(suite: Suite, d: i64) -> Self {
        VerificationRecord {
            suite,
            d,
            n: 0,
            s_re: f64::NAN,
            s_im: f64::NAN,
            lhs: f64::NAN,
            rhs_or_main: f64::NAN,
            residual_or_remainder: 0.0,
            h: 0,
            ld: f64::NAN,
            runtime_ms: 0,
        }
    }

    pub fn residual_finite(&self) -> bool {
        self.residual_or_remainder.is_finite()
    }
}
