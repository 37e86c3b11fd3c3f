//! Verification suites and their machine-readable reports.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{
    find_weight_order, intermediate_hilbert_check, kernel_equality_check, nu_image_check, sagbi_hilbert_check,
    tau_monomial, Valuation,
};
use crate::config::guard_mb;
use crate::error::{Error, Result};
use crate::json::Int;
use crate::pipedream::tuple_bijection_check;
use crate::polytope::{diagonal_check, mcop, newton_okounkov_body, x_lambda, ExponentVector, Weight};
use crate::poset::{Kind, MarkingSet, Poset};
use crate::rep::{basis_check, weyl_dim};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Check {
    Intpoints,
    Bijection,
    KernelEq,
    WeightOrder,
    Sagbi,
    Intermediate,
    Basis,
    NuImage,
    NoBody,
}

impl Check {
    pub const ALL: [Check; 9] = [
        Check::Intpoints,
        Check::Bijection,
        Check::KernelEq,
        Check::WeightOrder,
        Check::Sagbi,
        Check::Intermediate,
        Check::Basis,
        Check::NuImage,
        Check::NoBody,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Intpoints => "intpoints",
            Check::Bijection => "bijection",
            Check::KernelEq => "kernel-eq",
            Check::WeightOrder => "weight-order",
            Check::Sagbi => "sagbi",
            Check::Intermediate => "intermediate",
            Check::Basis => "basis",
            Check::NuImage => "nu-image",
            Check::NoBody => "no-body",
        }
    }

    pub fn applies_to(self, kind: Kind) -> bool {
        match self {
            Check::Sagbi | Check::Basis => kind == Kind::A,
            Check::Intermediate | Check::NuImage | Check::NoBody => kind == Kind::C,
            _ => true,
        }
    }

    /// Checks run by `verify all` for a given type.
    pub fn suite(kind: Kind) -> Vec<Check> {
        Check::ALL.into_iter().filter(|c| c.applies_to(kind)).collect()
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown check `{s}`")))
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub passed: bool,
    pub details: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub schema: u32,
    pub kind: String,
    pub n: usize,
    pub marking: Vec<[i32; 2]>,
    pub lambda: Weight,
    pub checks: Vec<CheckReport>,
    pub passed: bool,
}

#[derive(Debug, Clone)]
pub struct Options {
    pub max_degree: usize,
    /// Adds wall-clock times to the reports, which makes them
    /// run-dependent.
    pub timing: bool,
}

impl Default for Options {
    fn default() -> Self {
        Options { max_degree: 2, timing: false }
    }
}

fn to_value<T: Serialize>(v: &T) -> Result<Value> {
    serde_json::to_value(v).map_err(|e| Error::InvariantViolation(format!("serialization: {e}")))
}

/// Refuses enumerations whose point sets would not fit in `MCOP_GUARD_MB`.
pub fn memory_guard(poset: &Poset, lambda: &Weight) -> Result<BigInt> {
    let dim = weyl_dim(poset.kind(), poset.n(), lambda)?;
    let bytes = &dim * BigInt::from(poset.len() * 8 + 64);
    let limit = BigInt::from(guard_mb()) * BigInt::from(1u64 << 20);
    if bytes > limit {
        return Err(Error::ResourceGuard(format!(
            "about {dim} points would exceed the {} MB guard (MCOP_GUARD_MB)",
            guard_mb()
        )));
    }
    Ok(dim)
}

pub fn run_check(check: Check, poset: &Poset, o: &MarkingSet, lambda: &Weight, opts: &Options) -> Result<CheckReport> {
    if !check.applies_to(poset.kind()) {
        return Err(Error::Unsupported(format!("{check} does not apply to type {}", poset.kind())));
    }
    lambda.check(poset)?;
    let start = Instant::now();
    let (passed, details) = match check {
        Check::Intpoints => {
            let expected = memory_guard(poset, lambda)?;
            let points = mcop(poset, o, lambda)?.lattice_points();
            let mut diagonal_ok = true;
            for x in &points {
                diagonal_ok &= diagonal_check(poset, lambda, x)?;
            }
            let passed = BigInt::from(points.len()) == expected && diagonal_ok;
            (passed, json!({ "count": points.len(), "expected": Int(expected), "diagonal_ok": diagonal_ok }))
        }
        Check::Bijection => {
            let reports = poset
                .fundamental_range()
                .map(|k| tuple_bijection_check(poset, o, k))
                .collect::<Result<Vec<_>>>()?;
            (reports.iter().all(|r| r.passed), json!({ "strata": to_value(&reports)? }))
        }
        Check::KernelEq => {
            let r = kernel_equality_check(poset, o, opts.max_degree)?;
            (r.passed, to_value(&r)?)
        }
        Check::WeightOrder => {
            let r = find_weight_order(poset, o)?;
            (r.passed, to_value(&r)?)
        }
        Check::Sagbi => {
            let r = sagbi_hilbert_check(poset, o, lambda)?;
            (r.passed, to_value(&r)?)
        }
        Check::Intermediate => {
            let r = intermediate_hilbert_check(poset, lambda)?;
            (r.passed, to_value(&r)?)
        }
        Check::Basis => {
            let r = basis_check(poset, o, lambda)?;
            (r.passed, to_value(&r)?)
        }
        Check::NuImage => {
            let r = nu_image_check(poset, o, lambda)?;
            (r.passed, to_value(&r)?)
        }
        Check::NoBody => {
            memory_guard(poset, lambda)?;
            let r = no_body_check(poset, o, lambda)?;
            (r.passed, to_value(&r)?)
        }
    };
    let elapsed_ms = opts.timing.then(|| start.elapsed().as_millis() as u64);
    Ok(CheckReport { check: check.name().into(), passed, details, elapsed_ms })
}

#[derive(Debug, Clone, Serialize)]
pub struct NoBodyReport {
    pub x_lambda: ExponentVector,
    pub nu_tau: ExponentVector,
    pub points: usize,
    pub vertices: usize,
    pub contains_origin: bool,
    pub points_match: bool,
    pub vertices_match: bool,
    pub passed: bool,
}

/// `Δ + x_λ` against `𝒬_O(λ)` point-for-point and vertex-for-vertex, with
/// `ν(τ) = x_λ` and `0 ∈ Δ`. Type C.
pub fn no_body_check(poset: &Poset, o: &MarkingSet, lambda: &Weight) -> Result<NoBodyReport> {
    let x = x_lambda(poset, o, lambda)?;
    let nu_tau = Valuation::new(poset, o)?.apply(&tau_monomial(lambda), poset.kind(), poset.n())?;
    let q = mcop(poset, o, lambda)?;
    let body = newton_okounkov_body(poset, o, lambda)?;
    let q_points = q.lattice_points();
    let body_points = body.lattice_points();
    let points_match = body_points.iter().map(|p| p.add(&x)).eq(q_points.iter().cloned());
    let q_vertices = q.vertices()?;
    let body_vertices = body.vertices()?;
    let vertices_match = body_vertices.iter().map(|p| p.add(&x)).eq(q_vertices.iter().cloned());
    let contains_origin = body_points.contains(&ExponentVector::zeros(poset.len()));
    let passed = points_match && vertices_match && contains_origin && nu_tau == x;
    Ok(NoBodyReport {
        x_lambda: x,
        nu_tau,
        points: body_points.len(),
        vertices: body_vertices.len(),
        contains_origin,
        points_match,
        vertices_match,
        passed,
    })
}

/// Runs checks in the given order and assembles a report.
pub fn run_suite(
    checks: &[Check],
    poset: &Poset,
    o: &MarkingSet,
    lambda: &Weight,
    opts: &Options,
) -> Result<VerificationReport> {
    let reports = checks
        .iter()
        .map(|&c| run_check(c, poset, o, lambda, opts))
        .collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport {
        schema: SCHEMA,
        kind: poset.kind().to_string(),
        n: poset.n(),
        marking: poset.elements_of(o.members()).iter().map(|e| [e.i, e.j]).collect(),
        lambda: lambda.clone(),
        passed: reports.iter().all(|r| r.passed),
        checks: reports,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for c in Check::ALL {
            assert_eq!(c.name().parse::<Check>().unwrap(), c);
        }
        assert!("everything".parse::<Check>().is_err());
    }

    #[test]
    fn suites() {
        assert_eq!(Check::suite(Kind::A).len(), 6);
        assert_eq!(Check::suite(Kind::C).len(), 7);
    }

    #[test]
    fn c2_suite_passes() {
        let p = Poset::new(Kind::C, 2).unwrap();
        let o = MarkingSet::full(&p);
        let r = run_suite(&Check::suite(Kind::C), &p, &o, &Weight::new(vec![1, 1]), &Options::default()).unwrap();
        assert!(r.passed, "{}", serde_json::to_string_pretty(&r).unwrap());
    }

    #[test]
    fn inapplicable_check() {
        let p = Poset::new(Kind::C, 2).unwrap();
        let o = MarkingSet::full(&p);
        assert!(run_check(Check::Basis, &p, &o, &Weight::new(vec![1, 0]), &Options::default()).is_err());
    }
}
