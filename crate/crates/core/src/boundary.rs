//! The boundary term of the residue: enumeration of the admissible
//! `(r, l, k, j, |α|)` tuples and their exact evaluation.

use std::fmt;
use std::str::FromStr;

use num::traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::poly::{Indeterminate, Poly};
use crate::ratfun::RatFun;
use crate::scalar::{rat, Gq};
use crate::sphere::{sphere_integrate, SphereValue};
use crate::symbols::{BoundaryModel, Cube, Dirac, Inverse, Sym};

/// Operator pairs `(left inverse, right inverse)` of the boundary term.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pairing {
    /// `(D̃^{-1}, D̃*^{-1})`, dimension 4.
    DInvDStarInv,
    /// `(D̃^{-1}, (D̃*D̃D̃*)^{-1})`, dimension 6.
    DInvCubeInv,
    /// `(D̃^{-1}, D̃^{-3})`, dimension 6.
    DInvD3,
}

impl Pairing {
    pub const ALL: [Pairing; 3] = [Pairing::DInvDStarInv, Pairing::DInvCubeInv, Pairing::DInvD3];

    pub fn left(self) -> Inverse {
        Inverse::Dirac(Dirac::D)
    }

    pub fn right(self) -> Inverse {
        match self {
            Pairing::DInvDStarInv => Inverse::Dirac(Dirac::DStar),
            Pairing::DInvCubeInv => Inverse::Cube(Cube::DStarDDStar),
            Pairing::DInvD3 => Inverse::Cube(Cube::DCubed),
        }
    }

    pub fn dimension(self) -> usize {
        match self {
            Pairing::DInvDStarInv => 4,
            _ => 6,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Pairing::DInvDStarInv => "d1-dstar1",
            Pairing::DInvCubeInv => "d1-cubeinv",
            Pairing::DInvD3 => "d1-d3",
        }
    }

    fn check(self, n: usize) -> Result<()> {
        if self.dimension() != n {
            return Err(Error::UnsupportedPairing { pairing: self.name().into(), n });
        }
        Ok(())
    }
}

impl fmt::Display for Pairing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Pairing {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = if s == "d1-cube" { "d1-cubeinv" } else { s };
        Pairing::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::UnsupportedPairing { pairing: s.into(), n: 0 })
    }
}

/// Case names: `aI` (`|α| = 1`), `aII` (`j = 1`), `aIII` (`k = 1`) and the
/// two cases `b`, `c` where one symbol drops an order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseLabel {
    AI,
    AII,
    AIII,
    B,
    C,
}

impl CaseLabel {
    pub const ALL: [CaseLabel; 5] = [CaseLabel::AI, CaseLabel::AII, CaseLabel::AIII, CaseLabel::B, CaseLabel::C];

    pub fn name(self) -> &'static str {
        match self {
            CaseLabel::AI => "a1",
            CaseLabel::AII => "a2",
            CaseLabel::AIII => "a3",
            CaseLabel::B => "b",
            CaseLabel::C => "c",
        }
    }

    /// Conventional 1-based position of the term.
    pub fn index(self) -> usize {
        self as usize + 1
    }
}

impl fmt::Display for CaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CaseLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        CaseLabel::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::UnsupportedPairing { pairing: format!("case {s}"), n: 0 })
    }
}

/// One term `(r, l, k, j, |α|)` of the boundary sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CaseSpec {
    pub n: usize,
    pub pairing: Pairing,
    pub r: i32,
    pub l: i32,
    pub k: u32,
    pub j: u32,
    pub alpha: u32,
}

impl CaseSpec {
    pub fn tuple(&self) -> (i32, i32, u32, u32, u32) {
        (self.r, self.l, self.k, self.j, self.alpha)
    }

    pub fn is_admissible(&self) -> bool {
        let lead = self.pairing.right().leading_order();
        self.r <= -1
            && self.l <= -lead
            && self.r + self.l - self.k as i32 - self.j as i32 - self.alpha as i32 == -(self.n as i32 - 1)
    }

    /// `(-i)^{|α|+j+k+1} / (α! (j+k+1)!)`; `α! = 1` for `|α| <= 1`.
    pub fn coefficient(&self) -> Gq {
        let e = self.alpha + self.j + self.k + 1;
        let fact: i64 = (1..=(self.j + self.k + 1) as i64).product();
        let alpha_fact: i64 = (1..=self.alpha as i64).product();
        let minus_i = -Gq::i();
        &minus_i.pow(e as i32).expect("nonzero") * &Gq::real(rat(1, fact * alpha_fact))
    }

    pub fn label(&self) -> CaseLabel {
        let lead = self.pairing.right().leading_order();
        if self.alpha == 1 {
            CaseLabel::AI
        } else if self.j == 1 {
            CaseLabel::AII
        } else if self.k == 1 {
            CaseLabel::AIII
        } else {
            let left_drops = self.r == -2;
            let right_drops = self.l == -lead - 1;
            debug_assert!(left_drops != right_drops);
            // the four-dimensional section names the left drop b, the
            // six-dimensional ones name the right drop b
            match (self.n, left_drops) {
                (4, true) | (6, false) => CaseLabel::B,
                _ => CaseLabel::C,
            }
        }
    }
}

/// All admissible tuples, ordered by label.
pub fn enumerate_cases(n: usize, pairing: Pairing) -> Result<Vec<CaseSpec>> {
    pairing.check(n)?;
    let lead = pairing.right().leading_order();
    let budget = n as i32 - 1;
    let mut out = Vec::new();
    for r in (-budget..=-1).rev() {
        for l in (-budget..=-lead).rev() {
            let rest = budget + r + l;
            if rest < 0 {
                continue;
            }
            for alpha in 0..=rest.min(1) {
                for j in 0..=(rest - alpha) {
                    let k = rest - alpha - j;
                    let spec = CaseSpec {
                        n,
                        pairing,
                        r,
                        l,
                        k: k as u32,
                        j: j as u32,
                        alpha: alpha as u32,
                    };
                    debug_assert!(spec.is_admissible());
                    out.push(spec);
                }
            }
        }
    }
    out.sort_by_key(CaseSpec::label);
    Ok(out)
}

/// Exact value of one boundary term, in units of `dx'`.
#[derive(Clone, Debug, PartialEq)]
pub struct CaseResult {
    pub spec: CaseSpec,
    pub label: CaseLabel,
    /// `coefficient · ∫∫ tr[...] dξ_n σ(ξ')`, carrying `π` and `Ω_{n-1}`.
    pub value: SphereValue,
    /// The `ξ_n`-integral (over `π`) before sphere integration, with the
    /// combinatorial coefficient applied.
    pub line_integral: Poly,
    /// Tangential indices summed for `|α| = 1`; each term is zero at `x_0`.
    pub alpha_terms: Vec<usize>,
}

impl CaseResult {
    /// The value as a multiple of `π h'(0) Ω_{n-1}`, if it has that form.
    pub fn in_units(&self) -> Option<Gq> {
        in_units(&self.value)
    }
}

/// Coefficient of `h'` when `v = c · h' · π Ω`, `0` for a zero value.
pub fn in_units(v: &SphereValue) -> Option<Gq> {
    if v.is_zero() {
        return Some(Gq::zero());
    }
    let c = &v.coefficient;
    if c.len() != 1 || v.pi_pow != 1 || v.omega != 1 {
        return None;
    }
    let (m, coeff) = c.terms().next()?;
    (m.degree() == 1 && m.exponent(Indeterminate::HPrime) == 1).then(|| coeff.clone())
}

/// Evaluates one tuple: derivatives, `π⁺`, Clifford trace, `ξ_n`-integral,
/// sphere integral and coefficient, in that order.
pub fn evaluate_case(model: &BoundaryModel, spec: &CaseSpec) -> Result<CaseResult> {
    if !spec.is_admissible() {
        return Err(Error::InadmissibleTuple(spec.tuple()));
    }
    spec.pairing.check(model.dim())?;
    let ring = model.ring();
    let label = spec.label();
    let right = model.inverse_symbol(spec.pairing.right(), spec.l)?;

    let mut alpha_terms = Vec::new();
    let line_integral = if spec.alpha > 0 {
        // ∂_{x'}^α σ_l vanishes at x_0 for every tangential direction
        for t in 1..model.dim() {
            debug_assert!(right.dxprime_derivative(t).is_zero());
            alpha_terms.push(t);
        }
        Poly::zero()
    } else {
        let left = model.inverse_symbol(spec.pairing.left(), spec.r)?;
        let left_factor = {
            let base = normal_derivative(&left, spec.j)?;
            base.pi_plus()?.derivative_n(spec.k)
        };
        let right_factor = normal_derivative(&right, spec.k)?.derivative_n(spec.j + 1);
        let traced: RatFun<Poly> = left_factor.pair(&right_factor, |a, b| a.trace_product(b));
        let integral = traced.integrate_line()?.unwrap_or_else(Poly::zero);
        ring.normal_form(&integral.scale(&spec.coefficient()))
    };
    let value = sphere_integrate(&ring, &line_integral)?.with_pi(1);
    Ok(CaseResult { spec: *spec, label, value, line_integral, alpha_terms })
}

fn normal_derivative(sym: &crate::symbols::OperatorSymbol, order: u32) -> Result<Sym> {
    match order {
        0 => Ok(sym.value().clone()),
        1 => sym.dxn_derivative(),
        _ => Err(Error::MissingJet(format!("{} (x_n-order {order})", sym.label()))),
    }
}

/// Evaluates the selected cases (all when `only` is `None`) concurrently.
pub fn evaluate_pairing(model: &BoundaryModel, pairing: Pairing, only: Option<CaseLabel>) -> Result<Vec<CaseResult>> {
    let specs: Vec<CaseSpec> = enumerate_cases(model.dim(), pairing)?
        .into_iter()
        .filter(|s| only.is_none_or(|l| s.label() == l))
        .collect();
    specs.par_iter().map(|s| evaluate_case(model, s)).collect()
}

/// Exact sum of case values.
pub fn total(results: &[CaseResult]) -> SphereValue {
    results
        .iter()
        .fold(SphereValue::zero().with_pi(1), |acc, r| acc.add(&r.value))
}

/// The whole boundary term of a pairing.
pub fn total_boundary_term(n: usize, pairing: Pairing) -> Result<SphereValue> {
    let model = BoundaryModel::new(n)?;
    Ok(total(&evaluate_pairing(&model, pairing, None)?))
}

/// `h'` as a one-term polynomial, for building expected values.
pub fn hprime_times(c: Gq) -> SphereValue {
    SphereValue {
        coefficient: Poly::var(Indeterminate::HPrime).scale(&c),
        omega: 1,
        pi_pow: 1,
    }
}

/// Whether a value is free of the perturbation parameters.
pub fn is_perturbation_free(v: &SphereValue) -> bool {
    v.coefficient.indeterminates().iter().all(|x| {
        !matches!(
            x,
            Indeterminate::F1 | Indeterminate::F1Bar | Indeterminate::F2 | Indeterminate::F2Bar | Indeterminate::P(..)
        )
    })
}

impl fmt::Display for CaseSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(r={}, l={}, k={}, j={}, |α|={})", self.r, self.l, self.k, self.j, self.alpha)
    }
}
