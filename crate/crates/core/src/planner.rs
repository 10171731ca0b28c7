//! Per-n proof plans: characteristic split, reduction to `p^k`, route
//! selection and the row labels of the results table.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::fppoly::{monic_irreducibles_dividing, reduce_by_symmetry, FpPoly};
use crate::numberlab::{classify_n, get_exponent, is_good, least_coinciding};
use crate::proofkit::{
    bn_certificate, crt_glue_certificate, eg_system, idempotent_certificate, p2_trace, verify_certificate, BnRecord,
    Certificate, CrtGlue, EgSystem, Enumeration, IdempotentDecomposition, P2Trace, P2_MAX_P,
};
use crate::reduction::{characteristic_certificate, reduction_certificate, CharacteristicCertificate, ReductionCertificate};
use crate::wedderlab::{wedderburn_status, Budget, WedderburnStatus};

/// Largest `q = p^k` for which e_g systems and b_n records are emitted.
pub const PLAN_CERT_MAX_Q: u64 = 81;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RouteKind {
    PCase,
    P2Case,
    GcdMain,
    OpenCase,
}

pub fn route_kind(p: u64, k: u64) -> RouteKind {
    match k {
        1 => RouteKind::PCase,
        2 => RouteKind::P2Case,
        _ if is_good(p, k) => RouteKind::GcdMain,
        _ => RouteKind::OpenCase,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "route")]
pub enum Route {
    PCase {
        idempotent: IdempotentDecomposition,
    },
    P2Case {
        trace: Option<P2Trace>,
    },
    /// `statuses` covers every obligation of every b_n record, or the
    /// monomials `T^(p^i)`, `0 < i < k`, when certificates are deferred.
    GcdMain {
        eg: Option<EgSystem>,
        bn: Vec<BnRecord>,
        statuses: Vec<WedderburnStatus>,
        deferred: Option<String>,
    },
    OpenCase {
        eg: Option<EgSystem>,
        bn: Vec<BnRecord>,
        obligations: Vec<WedderburnStatus>,
    },
}

impl Route {
    pub fn kind(&self) -> RouteKind {
        match self {
            Route::PCase { .. } => RouteKind::PCase,
            Route::P2Case { .. } => RouteKind::P2Case,
            Route::GcdMain { .. } => RouteKind::GcdMain,
            Route::OpenCase { .. } => RouteKind::OpenCase,
        }
    }

    /// Every Wedderburn obligation carried by the route is proven.
    pub fn is_complete(&self) -> bool {
        match self {
            Route::PCase { .. } | Route::P2Case { .. } => true,
            Route::GcdMain { statuses, .. } => statuses.iter().all(WedderburnStatus::is_proven),
            Route::OpenCase { .. } => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeRoute {
    pub p: u64,
    pub k: u64,
    pub target: u64,
    pub reduction: ReductionCertificate,
    pub route: Route,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PlanStatus {
    Complete,
    Open,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofPlan {
    pub n: u64,
    pub characteristic: CharacteristicCertificate,
    pub primes: Vec<PrimeRoute>,
    pub glue: CrtGlue,
    /// Least `m < n` with the same prime powers `q`, `q - 1 | . - 1`.
    pub coinciding: Option<u64>,
    pub status: PlanStatus,
}

fn monomial_statuses(p: u64, k: u64, saturation: Option<&Budget>) -> Result<Vec<WedderburnStatus>> {
    (1..k)
        .map(|i| wedderburn_status(p, k as u32, &FpPoly::monomial(p, 1, p.pow(i as u32) as usize), saturation))
        .collect()
}

/// e_g system and one monomial b_n record per symmetry class of nonlinear `g`.
fn gcd_certificates(p: u64, k: u64) -> Result<(EgSystem, Vec<BnRecord>)> {
    let eg = eg_system(p, k)?;
    let gs = reduce_by_symmetry(&monic_irreducibles_dividing(p, k as usize)?);
    let bn = gs.par_iter().map(|g| bn_certificate(p, k, g, &Enumeration::Monomial)).collect::<Result<Vec<_>>>()?;
    Ok((eg, bn))
}

fn obligation_statuses(p: u64, k: u64, bn: &[BnRecord], saturation: Option<&Budget>) -> Result<Vec<WedderburnStatus>> {
    let mut fs: Vec<&FpPoly> = bn.iter().flat_map(|r| &r.obligations).collect();
    fs.sort_by(|a, b| (a.degree(), a.coeffs()).cmp(&(b.degree(), b.coeffs())));
    fs.dedup();
    fs.into_iter().map(|f| wedderburn_status(p, k as u32, f, saturation)).collect()
}

fn route_for(p: u64, k: u64, saturation: Option<&Budget>) -> Result<Route> {
    let q = p.checked_pow(k as u32);
    let small = q.is_some_and(|q| q <= PLAN_CERT_MAX_Q);
    Ok(match route_kind(p, k) {
        RouteKind::PCase => Route::PCase { idempotent: idempotent_certificate(p, None)? },
        RouteKind::P2Case => Route::P2Case { trace: if p <= P2_MAX_P { Some(p2_trace(p)?) } else { None } },
        RouteKind::GcdMain if small => {
            let (eg, bn) = gcd_certificates(p, k)?;
            let statuses = obligation_statuses(p, k, &bn, saturation)?;
            Route::GcdMain { eg: Some(eg), bn, statuses, deferred: None }
        }
        RouteKind::GcdMain => Route::GcdMain {
            eg: None,
            bn: Vec::new(),
            statuses: monomial_statuses(p, k, saturation)?,
            deferred: Some(format!("e_g and b_n certificates are emitted for q <= {PLAN_CERT_MAX_Q}")),
        },
        RouteKind::OpenCase => {
            let (eg, bn) = if small { gcd_certificates(p, k).map(|(e, b)| (Some(e), b))? } else { (None, Vec::new()) };
            let mut obligations =
                if small { obligation_statuses(p, k, &bn, saturation)? } else { monomial_statuses(p, k, saturation)? };
            obligations.retain(|s| !s.is_proven());
            Route::OpenCase { eg, bn, obligations }
        }
    })
}

pub fn proof_plan(n: u64) -> Result<ProofPlan> {
    proof_plan_with(n, None)
}

/// As [`proof_plan`], running saturation on open monomial obligations.
pub fn proof_plan_with(n: u64, saturation: Option<&Budget>) -> Result<ProofPlan> {
    if n <= 1 {
        return invalid(format!("n must exceed 1, got {n}"));
    }
    let characteristic = characteristic_certificate(n)?;
    let primes = characteristic
        .primes
        .par_iter()
        .map(|&p| {
            let k = get_exponent(p, n)?;
            let reduction = reduction_certificate(n, p)?;
            let target = p.checked_pow(k as u32).unwrap_or(u64::MAX);
            Ok(PrimeRoute { p, k, target, reduction, route: route_for(p, k, saturation)? })
        })
        .collect::<Result<Vec<_>>>()?;
    let glue = crt_glue_certificate(&characteristic.primes)?;
    let status = if primes.iter().all(|r| r.route.is_complete()) { PlanStatus::Complete } else { PlanStatus::Open };
    Ok(ProofPlan { n, characteristic, primes, glue, coinciding: least_coinciding(n)?, status })
}

impl ProofPlan {
    /// All certificates in the plan, keyed by a stable file name.
    pub fn bundle(&self) -> Vec<(String, Certificate)> {
        let mut out: Vec<(String, Certificate)> = vec![("characteristic.json".into(), self.characteristic.clone().into())];
        for r in &self.primes {
            let p = r.p;
            out.push((format!("p{p}-reduction.json"), r.reduction.clone().into()));
            match &r.route {
                Route::PCase { idempotent } => out.push((format!("p{p}-idempotent.json"), idempotent.clone().into())),
                Route::P2Case { trace } => {
                    if let Some(t) = trace {
                        out.push((format!("p{p}-p2trace.json"), t.clone().into()));
                    }
                }
                Route::GcdMain { eg, bn, .. } | Route::OpenCase { eg, bn, .. } => {
                    if let Some(e) = eg {
                        out.push((format!("p{p}-eg.json"), e.clone().into()));
                    }
                    for (i, b) in bn.iter().enumerate() {
                        out.push((format!("p{p}-bn{i}.json"), b.clone().into()));
                    }
                }
            }
        }
        out.push(("glue.json".into(), self.glue.clone().into()));
        out
    }

    /// Verifies every certificate in the bundle and re-checks every
    /// Wedderburn status; returns the first failure.
    pub fn verify(&self) -> std::result::Result<(), String> {
        for (name, cert) in self.bundle() {
            let report = verify_certificate(&cert).map_err(|e| format!("{name}: {e}"))?;
            if !report.passed() {
                return Err(format!("{name}: {}", report.failure.unwrap_or_default()));
            }
        }
        for r in &self.primes {
            let statuses = match &r.route {
                Route::GcdMain { statuses, .. } => statuses,
                Route::OpenCase { obligations, .. } => obligations,
                _ => continue,
            };
            for s in statuses {
                s.recheck().map_err(|e| format!("W status at p = {}: {e}", r.p))?;
            }
        }
        Ok(())
    }

    /// Prime powers `p^k`, `k >= 2`, that the plan reduces to.
    pub fn targets(&self) -> Vec<u64> {
        let mut t: Vec<u64> = self.primes.iter().filter(|r| r.k >= 2).map(|r| r.target).collect();
        t.sort_unstable();
        t
    }
}

/// JSON manifest written next to the certificate files of a plan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanManifest {
    pub n: u64,
    pub status: PlanStatus,
    pub coinciding: Option<u64>,
    pub routes: Vec<ManifestRoute>,
    pub files: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifestRoute {
    pub p: u64,
    pub k: u64,
    pub target: u64,
    pub route: RouteKind,
    pub complete: bool,
    pub open_obligations: Vec<String>,
}

impl ProofPlan {
    pub fn manifest(&self) -> PlanManifest {
        let routes = self
            .primes
            .iter()
            .map(|r| ManifestRoute {
                p: r.p,
                k: r.k,
                target: r.target,
                route: r.route.kind(),
                complete: r.route.is_complete(),
                open_obligations: match &r.route {
                    Route::OpenCase { obligations, .. } => obligations.iter().map(|s| s.f.to_string()).collect(),
                    _ => Vec::new(),
                },
            })
            .collect();
        PlanManifest {
            n: self.n,
            status: self.status,
            coinciding: self.coinciding,
            routes,
            files: self.bundle().into_iter().map(|(name, _)| name).collect(),
        }
    }
}

/// One row of the results table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub n: u64,
    pub label: String,
    pub coinciding: Option<u64>,
    /// `p^k` with `k >= 2` over all primes `p` with `p - 1 | n - 1`.
    pub targets: Vec<u64>,
    /// Targets whose own route is open.
    pub open_targets: Vec<u64>,
    pub status: PlanStatus,
}

/// Label of a prime power `p^k`, `k >= 2`, proved directly; `None` when open.
fn own_label(n: u64) -> Option<Option<&'static str>> {
    let (p, k) = crate::arith::prime_power(n)?;
    if k < 2 {
        return None;
    }
    Some(match (n, route_kind(p, k as u64)) {
        (_, RouteKind::P2Case) => Some("p2case"),
        (8, _) => Some("8case"),
        (_, RouteKind::GcdMain) => Some("gcdmain"),
        _ => None,
    })
}

/// Cheap row computation: labels and route kinds only, no certificates.
pub fn table_row(n: u64) -> Result<TableRow> {
    let class = classify_n(n)?;
    let mut targets = Vec::new();
    let mut open_targets = Vec::new();
    for &p in &class.n_primes {
        let k = get_exponent(p, n)?;
        let t = p.checked_pow(k as u32).unwrap_or(u64::MAX);
        if k >= 2 {
            targets.push(t);
        }
        if route_kind(p, k) == RouteKind::OpenCase {
            open_targets.push(t);
        }
    }
    targets.sort_unstable();
    open_targets.sort_unstable();
    let coinciding = least_coinciding(n)?;
    let cites = |m: u64| m == 2 || m == 3 || matches!(own_label(m), Some(Some(_)));
    let label = match (coinciding, own_label(n)) {
        (Some(m), _) if cites(m) => format!("={m}"),
        (_, Some(Some(l))) => l.to_string(),
        (_, Some(None)) => "open".to_string(),
        _ if class.is_simple => "speceq".to_string(),
        _ => format!("red {}", targets.iter().map(u64::to_string).collect::<Vec<_>>().join(",")),
    };
    let status = if open_targets.is_empty() { PlanStatus::Complete } else { PlanStatus::Open };
    Ok(TableRow { n, label, coinciding, targets, open_targets, status })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spot_rows() {
        for (n, label) in [
            (7, "red 4"),
            (10, "=4"),
            (46, "=16"),
            (73, "red 4,9,25"),
            (94, "red 1024"),
            (97, "red 4,9,25,49"),
            (8, "8case"),
            (27, "gcdmain"),
            (4, "p2case"),
            (2, "speceq"),
            (64, "open"),
            (81, "open"),
        ] {
            assert_eq!(table_row(n).unwrap().label, label, "n = {n}");
        }
        assert_eq!(table_row(22).unwrap().open_targets, [64]);
        assert_eq!(table_row(22).unwrap().status, PlanStatus::Open);
    }

    #[test]
    fn plan_for_seven() {
        let plan = proof_plan(7).unwrap();
        let routes: Vec<(u64, u64, RouteKind)> = plan.primes.iter().map(|r| (r.p, r.k, r.route.kind())).collect();
        assert_eq!(routes, [(2, 2, RouteKind::P2Case), (3, 1, RouteKind::PCase), (7, 1, RouteKind::PCase)]);
        assert_eq!(plan.status, PlanStatus::Complete);
        plan.verify().unwrap();
    }

    #[test]
    fn plan_for_seventy_three() {
        let plan = proof_plan(73).unwrap();
        let ks: Vec<(u64, u64)> = plan.primes.iter().map(|r| (r.p, r.k)).collect();
        assert_eq!(ks, [(2, 2), (3, 2), (5, 2), (7, 1), (13, 1), (19, 1), (37, 1), (73, 1)]);
        assert_eq!(plan.targets(), [4, 9, 25]);
        assert_eq!(plan.status, PlanStatus::Complete);
    }

    #[test]
    fn plan_for_sixty_four_is_open() {
        let plan = proof_plan(64).unwrap();
        assert_eq!(plan.status, PlanStatus::Open);
        let two = &plan.primes[0];
        let Route::OpenCase { obligations, .. } = &two.route else { panic!("{:?}", two.route.kind()) };
        assert!(!obligations.is_empty());
        for s in obligations {
            assert!(matches!(s.verdict, crate::wedderlab::WVerdict::Open { d, .. } if d > 1));
        }
        plan.verify().unwrap();
    }
}
