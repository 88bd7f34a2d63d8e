//! Machine-readable reports for verdicts, certificates and verification
//! batches. All reports carry `schema: 1` and serialize deterministically.

use serde::Serialize;

use crate::atlas::VerifyReport;
use crate::forms::{ProjTransform, TernaryForm};
use crate::stability::{
    Certificate, CubicLinePair, StabilityVerdict, Status, WCuspCoord, WorstOnePs,
};

pub const SCHEMA_VERSION: u32 = 1;

fn matrix_strings(g: &ProjTransform) -> Vec<Vec<String>> {
    (0..3)
        .map(|r| (0..3).map(|c| g.matrix.at(r, c).to_string()).collect())
        .collect()
}

fn form_string(f: &TernaryForm) -> String {
    f.to_string()
}

#[derive(Serialize, Clone, Debug)]
pub struct PairReport {
    pub cubic: String,
    pub line: String,
}

impl PairReport {
    pub fn new(z: &CubicLinePair) -> PairReport {
        PairReport {
            cubic: form_string(&z.cubic),
            line: form_string(&z.line),
        }
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct CertificateReport {
    pub g: Vec<Vec<String>>,
    pub lambda: [i64; 3],
    pub mu: i64,
}

impl CertificateReport {
    pub fn new(c: &Certificate) -> CertificateReport {
        CertificateReport {
            g: matrix_strings(&c.g),
            lambda: c.lambda.r,
            mu: c.mu,
        }
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct VerdictReport {
    pub schema: u32,
    pub pair: PairReport,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub row: Option<u8>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub curve_class: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certificate: Option<CertificateReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extension_used: Option<String>,
}

pub fn status_label(s: Status) -> &'static str {
    match s {
        Status::Stable => "stable",
        Status::StrictlySemistable => "strictly-semistable",
        Status::Unstable => "unstable",
    }
}

impl VerdictReport {
    pub fn new(z: &CubicLinePair, v: &StabilityVerdict) -> VerdictReport {
        VerdictReport {
            schema: SCHEMA_VERSION,
            pair: PairReport::new(z),
            status: status_label(v.status).to_string(),
            row: v.row,
            reason: v.reason.map(|r| r.label().to_string()),
            curve_class: v.curve_class.label().to_string(),
            certificate: v.certificate.as_ref().map(CertificateReport::new),
            extension_used: v.extension_used.clone(),
        }
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct WorstOnePsReport {
    pub schema: u32,
    pub lambda: [i64; 3],
    pub mu: i64,
    pub value: String,
    pub sign: i32,
}

impl WorstOnePsReport {
    pub fn new(w: &WorstOnePs) -> WorstOnePsReport {
        use num_traits::Zero;
        let sign = if w.value.is_zero() {
            0
        } else if w.value > num_rational::BigRational::zero() {
            1
        } else {
            -1
        };
        WorstOnePsReport {
            schema: SCHEMA_VERSION,
            lambda: w.lambda.r,
            mu: w.mu,
            value: w.value.to_string(),
            sign,
        }
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct NormalFormReport {
    pub schema: u32,
    pub g: Vec<Vec<String>>,
    pub target: PairReport,
}

impl NormalFormReport {
    pub fn new(g: &ProjTransform, target: &CubicLinePair) -> NormalFormReport {
        NormalFormReport {
            schema: SCHEMA_VERSION,
            g: matrix_strings(g),
            target: PairReport::new(target),
        }
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct WCuspReport {
    pub schema: u32,
    pub b1: String,
    pub b2: String,
    pub discriminant: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b_cubed: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c_squared: Option<String>,
    pub row: u8,
}

impl WCuspReport {
    pub fn new(w: &WCuspCoord) -> WCuspReport {
        WCuspReport {
            schema: SCHEMA_VERSION,
            b1: w.b1.to_string(),
            b2: w.b2.to_string(),
            discriminant: w.discriminant.to_string(),
            b_cubed: w.b_cubed.as_ref().map(|s| s.to_string()),
            c_squared: w.c_squared.as_ref().map(|s| s.to_string()),
            row: w.row,
        }
    }
}

#[derive(Serialize, Clone, Debug)]
pub struct BatchVerifyReport {
    pub schema: u32,
    pub label: String,
    pub samples: usize,
    pub passed: bool,
    pub failures: Vec<String>,
}

impl BatchVerifyReport {
    pub fn new(r: &VerifyReport) -> BatchVerifyReport {
        BatchVerifyReport {
            schema: SCHEMA_VERSION,
            label: r.label.clone(),
            samples: r.samples,
            passed: r.passed(),
            failures: r.failures.clone(),
        }
    }
}
