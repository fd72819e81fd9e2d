//! JSON and Markdown reports. Output is a pure function of the inputs.

use std::fmt::Write as _;

use anyhow::{bail, Result};
use num::Zero;
use serde::Serialize;
use wres_core::boundary::{self, CaseResult, Pairing};
use wres_core::interior::{BraceTerm, InteriorIntegrand, InteriorOp};
use wres_core::poly::Indeterminate;
use wres_core::scalar::Gq;
use wres_core::sphere::SphereValue;

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Md,
}

/// `coeff · π^pi_pow · Ω_omega · h'(0)^hprime_pow`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValueJson {
    pub coeff_re: String,
    pub coeff_im: String,
    pub pi_pow: u32,
    pub omega: usize,
    pub hprime_pow: u32,
}

impl ValueJson {
    pub fn from_sphere(v: &SphereValue, n: usize) -> Result<Self> {
        let omega = if v.omega > 0 { n - 1 } else { 0 };
        let mut out = ValueJson {
            coeff_re: "0".into(),
            coeff_im: "0".into(),
            pi_pow: v.pi_pow,
            omega,
            hprime_pow: 0,
        };
        if v.is_zero() {
            return Ok(out);
        }
        let mut terms = v.coefficient.terms();
        let (m, c) = terms.next().expect("nonzero");
        if terms.next().is_some() || m.degree() != m.exponent(Indeterminate::HPrime) {
            bail!("value {v} is not a multiple of a power of h'(0)");
        }
        out.coeff_re = c.re.to_string();
        out.coeff_im = c.im.to_string();
        out.hprime_pow = m.degree();
        Ok(out)
    }

    pub fn coefficient(&self) -> Gq {
        Gq::parse_parts(&self.coeff_re, &self.coeff_im).expect("rendered by this module")
    }

    pub fn render(&self) -> String {
        let c = self.coefficient();
        if c == Gq::default() {
            return "0".into();
        }
        let mut s = if !c.re.is_zero() && !c.im.is_zero() { format!("({c})") } else { c.to_string() };
        match self.pi_pow {
            0 => {}
            1 => s.push_str(" π"),
            k => write!(s, " π^{k}").unwrap(),
        }
        if self.omega > 0 {
            write!(s, " Ω_{}", self.omega).unwrap();
        }
        match self.hprime_pow {
            0 => {}
            1 => s.push_str(" h'(0)"),
            k => write!(s, " h'(0)^{k}").unwrap(),
        }
        s
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CaseJson {
    pub label: String,
    pub tuple: [i64; 5],
    pub value: ValueJson,
    pub rendered: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct BoundaryReport {
    pub engine_version: &'static str,
    pub n: usize,
    pub pairing: String,
    pub cases: Vec<CaseJson>,
    pub total: ValueJson,
}

impl BoundaryReport {
    pub fn new(n: usize, pairing: Pairing, results: &[CaseResult]) -> Result<Self> {
        let mut cases = Vec::with_capacity(results.len());
        for r in results {
            let (rr, l, k, j, a) = r.spec.tuple();
            let value = ValueJson::from_sphere(&r.value, n)?;
            cases.push(CaseJson {
                label: r.label.name().into(),
                tuple: [rr as i64, l as i64, k as i64, j as i64, a as i64],
                rendered: value.render(),
                value,
            });
        }
        let mut total = ValueJson::from_sphere(&boundary::total(results), n)?;
        if total.coeff_re == "0" && total.coeff_im == "0" {
            total.pi_pow = 1;
            total.omega = n - 1;
        }
        Ok(Self { engine_version: ENGINE_VERSION, n, pairing: pairing.name().into(), cases, total })
    }

    pub fn markdown(&self) -> String {
        let mut s = String::new();
        writeln!(s, "# Boundary term: n = {}, pairing {}", self.n, self.pairing).unwrap();
        writeln!(s).unwrap();
        writeln!(s, "| case | (r, l, k, j, alpha) | value |").unwrap();
        writeln!(s, "|---|---|---|").unwrap();
        for c in &self.cases {
            let t = c.tuple;
            writeln!(s, "| {} | ({}, {}, {}, {}, {}) | {} |", c.label, t[0], t[1], t[2], t[3], t[4], c.rendered).unwrap();
        }
        writeln!(s, "| **total** | | {} |", self.total.render()).unwrap();
        s
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TermJson {
    pub term: &'static str,
    pub coeff: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct InteriorReport {
    pub engine_version: &'static str,
    pub n: usize,
    pub which: String,
    pub prefactor: ValueJson,
    pub coefficients: Vec<TermJson>,
}

impl InteriorReport {
    pub fn new(which: &str, integrand: &InteriorIntegrand) -> Result<Self> {
        let coeffs = integrand.coefficients()?;
        let coefficients = BraceTerm::ALL
            .iter()
            .filter_map(|t| coeffs.get(t).map(|c| TermJson { term: t.name(), coeff: c.to_string() }))
            .collect();
        Ok(Self {
            engine_version: ENGINE_VERSION,
            n: integrand.n,
            which: which.into(),
            prefactor: ValueJson {
                coeff_re: integrand.prefactor.to_string(),
                coeff_im: "0".into(),
                pi_pow: integrand.pi_pow,
                omega: 0,
                hprime_pow: 0,
            },
            coefficients,
        })
    }

    pub fn markdown(&self) -> String {
        let mut s = String::new();
        let op = match self.which.as_str() {
            "dstar-d" | "dstar-d-squared" => "D*D",
            _ => "D^2",
        };
        writeln!(s, "# Interior integrand: n = {}, {} ({op})", self.n, self.which).unwrap();
        writeln!(s).unwrap();
        writeln!(s, "prefactor: {}", self.prefactor.render()).unwrap();
        writeln!(s).unwrap();
        writeln!(s, "| term | coefficient |").unwrap();
        writeln!(s, "|---|---|").unwrap();
        for t in &self.coefficients {
            writeln!(s, "| {} | {} |", t.term, t.coeff).unwrap();
        }
        s
    }
}

/// `dstar-d`/`d2` in dimension 4, `dstar-d-squared`/`d4` in dimension 6.
pub fn interior_op(n: usize, which: &str) -> Result<InteriorOp> {
    match (n, which) {
        (4, "dstar-d") | (6, "dstar-d-squared") => Ok(InteriorOp::DStarD),
        (4, "d2") | (6, "d4") => Ok(InteriorOp::DSquared),
        _ => bail!("interior integrand `{which}` is not defined in dimension {n}"),
    }
}

pub fn to_json<T: Serialize>(report: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(report)?;
    s.push('\n');
    Ok(s)
}
