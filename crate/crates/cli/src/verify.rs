//! Exact comparison of engine output against fixtures.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use anyhow::{anyhow, Context, Result};
use rayon::prelude::*;
use wres_core::boundary::{evaluate_pairing, CaseLabel, CaseResult, Pairing};
use wres_core::interior::{trace_identity_suite, wres_integrand, BraceTerm};
use wres_core::scalar::{parse_rational, Gq};
use wres_core::symbols::BoundaryModel;

use crate::fixtures::Fixtures;
use crate::report::interior_op;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub id: String,
    pub expected: String,
    pub got: String,
}

impl Outcome {
    pub fn passed(&self) -> bool {
        self.expected == self.got
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            write!(f, "ok   {}: {}", self.id, self.got)
        } else {
            write!(f, "FAIL {}\n  expected: {}\n  got:      {}", self.id, self.expected, self.got)
        }
    }
}

/// Cases of every pairing referenced by the fixtures, evaluated once each.
fn boundary_results(fx: &Fixtures) -> Result<HashMap<Pairing, Vec<CaseResult>>> {
    let mut wanted: Vec<Pairing> = Vec::new();
    for b in &fx.boundary {
        let p: Pairing = b.pairing.parse()?;
        if p.dimension() != b.n {
            return Err(anyhow!("{}: pairing {p} is not defined for n = {}", b.id, b.n));
        }
        if !wanted.contains(&p) {
            wanted.push(p);
        }
    }
    wanted
        .into_par_iter()
        .map(|p| {
            let model = BoundaryModel::new(p.dimension())?;
            Ok((p, evaluate_pairing(&model, p, None)?))
        })
        .collect()
}

fn render_terms(m: &BTreeMap<&'static str, Gq>) -> String {
    let parts: Vec<String> = m.iter().map(|(k, v)| format!("{k}: {v}")).collect();
    format!("{{{}}}", parts.join(", "))
}

/// Every comparison implied by `fx`, in fixture order.
pub fn run(fx: &Fixtures) -> Result<Vec<Outcome>> {
    let results = boundary_results(fx)?;
    let mut out = Vec::new();

    for b in &fx.boundary {
        let p: Pairing = b.pairing.parse()?;
        let labels: Vec<CaseLabel> = b.cases.iter().map(|c| c.parse()).collect::<Result<_, _>>()?;
        let mut sum = Gq::default();
        for r in results[&p].iter().filter(|r| labels.contains(&r.label)) {
            let c = r
                .in_units()
                .ok_or_else(|| anyhow!("{}: case {} is not a multiple of π h'(0) Ω", b.id, r.spec))?;
            sum += &c;
        }
        let expected = Gq::parse_parts(&b.re, &b.im).with_context(|| format!("fixture {}", b.id))?;
        let unit = format!(" π h'(0) Ω_{}", b.n - 1);
        out.push(Outcome { id: b.id.clone(), expected: format!("{expected}{unit}"), got: format!("{sum}{unit}") });
    }

    for i in &fx.interior {
        let op = interior_op(i.n, &i.which)?;
        let integrand = wres_integrand(i.n, op)?;
        let got_pref = format!("{} π^{}", integrand.prefactor, integrand.pi_pow);
        let exp_pref = format!("{} π^{}", parse_rational(&i.prefactor)?, i.pi_pow);
        out.push(Outcome { id: format!("{}: prefactor", i.id), expected: exp_pref, got: got_pref });

        let coeffs = integrand.coefficients()?;
        let got: BTreeMap<&'static str, Gq> = coeffs.iter().map(|(t, c)| (t.name(), c.clone())).collect();
        let mut expected = BTreeMap::new();
        for (name, value) in &i.coefficients {
            let term = BraceTerm::ALL
                .into_iter()
                .find(|t| t.name() == name)
                .ok_or_else(|| anyhow!("{}: unknown brace term `{name}`", i.id))?;
            let v = Gq::real(parse_rational(value)?);
            if v != Gq::default() {
                expected.insert(term.name(), v);
            }
        }
        out.push(Outcome { id: format!("{}: brace", i.id), expected: render_terms(&expected), got: render_terms(&got) });
    }

    for &n in &fx.identities {
        for check in trace_identity_suite(n)? {
            out.push(Outcome {
                id: format!("identity n={n}: {}", check.name),
                expected: check.expected.to_string(),
                got: check.got.to_string(),
            });
        }
    }
    Ok(out)
}
