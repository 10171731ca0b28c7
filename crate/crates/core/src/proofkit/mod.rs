//! Certificate model, verification kernel and renderer.
//!
//! A certificate is a self-contained document: verification re-derives every
//! claimed identity from the stored data and never runs a search.

mod bn;
mod commutator;
mod crt;
mod eg;
mod idempotent;
pub(crate) mod json;
mod p2;
mod render;

pub use bn::{bn_certificate, BnMode, BnRecord, Enumeration};
pub use commutator::{CommutatorCertificate, Summand};
pub use crt::{crt_glue_certificate, CrtGlue};
pub use eg::{eg_system, EgMember, EgSystem};
pub use idempotent::{idempotent_certificate, IdempotentDecomposition};
pub use p2::{p2_trace, P2Trace, P2_MAX_P};
pub use render::{render_certificate, Style};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::reduction::{CharacteristicCertificate, CheckResult, ReductionCertificate};

pub const SCHEMA: &str = "ringlock/1";

const KINDS: [&str; 8] =
    ["Characteristic", "Reduction", "CrtGlue", "IdempotentDecomposition", "EgSystem", "Bn", "Commutator", "P2Trace"];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "payload")]
pub enum Payload {
    Characteristic(CharacteristicCertificate),
    Reduction(ReductionCertificate),
    CrtGlue(CrtGlue),
    IdempotentDecomposition(IdempotentDecomposition),
    EgSystem(EgSystem),
    Bn(BnRecord),
    Commutator(CommutatorCertificate),
    P2Trace(P2Trace),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub schema: String,
    #[serde(flatten)]
    pub payload: Payload,
}

macro_rules! from_payload {
    ($($variant:ident($ty:ty)),* $(,)?) => {
        $(impl From<$ty> for Certificate {
            fn from(v: $ty) -> Self {
                Certificate { schema: SCHEMA.to_string(), payload: Payload::$variant(v) }
            }
        })*
    };
}

from_payload!(
    Characteristic(CharacteristicCertificate),
    Reduction(ReductionCertificate),
    CrtGlue(CrtGlue),
    IdempotentDecomposition(IdempotentDecomposition),
    EgSystem(EgSystem),
    Bn(BnRecord),
    Commutator(CommutatorCertificate),
    P2Trace(P2Trace),
);

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match &self.payload {
            Payload::Characteristic(_) => "Characteristic",
            Payload::Reduction(_) => "Reduction",
            Payload::CrtGlue(_) => "CrtGlue",
            Payload::IdempotentDecomposition(_) => "IdempotentDecomposition",
            Payload::EgSystem(_) => "EgSystem",
            Payload::Bn(_) => "Bn",
            Payload::Commutator(_) => "Commutator",
            Payload::P2Trace(_) => "P2Trace",
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates serialize")
    }

    /// Unknown schema or kind gives `UnsupportedCertificate`; a known kind
    /// with malformed payload gives `Parse`.
    pub fn from_json(s: &str) -> Result<Certificate> {
        let v: serde_json::Value = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        let schema = v.get("schema").and_then(|x| x.as_str()).unwrap_or("").to_string();
        if schema != SCHEMA {
            return Err(Error::UnsupportedCertificate(format!("schema `{schema}`")));
        }
        let kind = v.get("kind").and_then(|x| x.as_str()).unwrap_or("").to_string();
        if !KINDS.contains(&kind.as_str()) {
            return Err(Error::UnsupportedCertificate(format!("kind `{kind}`")));
        }
        serde_json::from_value(v).map_err(|e| Error::Parse(format!("{kind} payload: {e}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub kind: String,
    pub verdict: Verdict,
    /// Checks that held, in the order they were run.
    pub checks: Vec<String>,
    /// The first violated invariant, when the verdict is `Fail`.
    pub failure: Option<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    fn from_checks(kind: &str, r: CheckResult) -> Self {
        match r {
            Ok(checks) => VerificationReport { kind: kind.into(), verdict: Verdict::Pass, checks, failure: None },
            Err(f) => VerificationReport { kind: kind.into(), verdict: Verdict::Fail, checks: Vec::new(), failure: Some(f) },
        }
    }
}

pub fn verify_certificate(cert: &Certificate) -> Result<VerificationReport> {
    if cert.schema != SCHEMA {
        return Err(Error::UnsupportedCertificate(format!("schema `{}`", cert.schema)));
    }
    let r = match &cert.payload {
        Payload::Characteristic(c) => c.verify(),
        Payload::Reduction(c) => c.verify(),
        Payload::CrtGlue(c) => c.verify(),
        Payload::IdempotentDecomposition(c) => c.verify(),
        Payload::EgSystem(c) => c.verify(),
        Payload::Bn(c) => c.verify(),
        Payload::Commutator(c) => c.verify(),
        Payload::P2Trace(c) => c.verify(),
    };
    Ok(VerificationReport::from_checks(cert.kind(), r))
}

/// Parses and verifies; parse errors of a known kind count as failures.
pub fn verify_json(s: &str) -> Result<VerificationReport> {
    match Certificate::from_json(s) {
        Ok(c) => verify_certificate(&c),
        Err(Error::Parse(msg)) => {
            let kind = serde_json::from_str::<serde_json::Value>(s)
                .ok()
                .and_then(|v| v.get("kind").and_then(|k| k.as_str()).map(String::from))
                .unwrap_or_default();
            Ok(VerificationReport { kind, verdict: Verdict::Fail, checks: Vec::new(), failure: Some(msg) })
        }
        Err(e) => Err(e),
    }
}
