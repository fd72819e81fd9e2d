//! Interior integrands: `tr(E)` of the squared operators by explicit matrix
//! evaluation, the residue integrand `tr(s/6 + E)` and the trace identities.

use std::collections::BTreeMap;
use std::fmt;

use num::traits::Zero;

use crate::clifford::{CliffordElement, GammaBasis};
use crate::error::{Error, Result};
use crate::poly::{Indeterminate, Monomial, Poly};
use crate::scalar::{rat, Gq, Rational};
use crate::symbols::{BoundaryModel, Dirac};

use Indeterminate::{F1Bar, F2Bar, F1, F2, S};

/// The Laplace-type operator whose heat coefficient is traced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InteriorOp {
    /// `D̃* D̃`
    DStarD,
    /// `D̃^2`
    DSquared,
}

impl InteriorOp {
    pub fn name(self) -> &'static str {
        match self {
            InteriorOp::DStarD => "dstar-d",
            InteriorOp::DSquared => "d2",
        }
    }
}

fn v(x: Indeterminate) -> Poly {
    Poly::var(x)
}

fn c(n: i64, d: i64) -> Gq {
    Gq::real(rat(n, d))
}

/// `tr(E)` at a point in normal coordinates, derivative terms dropped.
///
/// `E_{D̃*D̃} = -s/4 - (f_1 f̄_2 - f̄_1 f_2) A + f_1 f̄_1 A^2 - f_2 f̄_2 - 1/4 Σ_i [c_i X + Y c_i]^2`,
/// `E_{D̃^2}  = -s/4 - f_1^2 A^2 - 2 f_1 f_2 A - f_2^2 - 1/4 Σ_i [c_i X + X c_i]^2`,
/// with `X = f_1 A + f_2`, `Y = -f̄_1 A + f̄_2`.
pub fn endomorphism(basis: &GammaBasis, op: InteriorOp) -> CliffordElement {
    let a = basis.perturbation_a();
    let x = &a.scale_poly(&v(F1)) + &basis.scalar(v(F2));
    let y = &a.scale_poly(&-v(F1Bar)) + &basis.scalar(v(F2Bar));
    let a2 = &a * &a;
    let s_term = basis.scalar(v(S).scale(&c(-1, 4)));
    let mut e = s_term;
    let square_sum = |right: &CliffordElement| {
        let mut acc = basis.zero();
        for i in 1..=basis.dim() {
            let g = basis.gamma(i);
            let t = &(g * &x) + &(right * g);
            acc = &acc + &(&t * &t);
        }
        acc.scale(&c(-1, 4))
    };
    match op {
        InteriorOp::DStarD => {
            let mixed = &(&v(F1) * &v(F2Bar)) - &(&v(F1Bar) * &v(F2));
            e = &e - &a.scale_poly(&mixed);
            e = &e + &a2.scale_poly(&(&v(F1) * &v(F1Bar)));
            e = &e - &basis.scalar(&v(F2) * &v(F2Bar));
            e = &e + &square_sum(&y);
        }
        InteriorOp::DSquared => {
            e = &e - &a2.scale_poly(&(&v(F1) * &v(F1)));
            e = &e - &a.scale_poly(&(&v(F1) * &v(F2)).scale(&Gq::from(2)));
            e = &e - &basis.scalar(&v(F2) * &v(F2));
            e = &e + &square_sum(&x);
        }
    }
    e
}

pub fn trace_e(n: usize, op: InteriorOp) -> Result<Poly> {
    let basis = GammaBasis::new(n)?;
    Ok(endomorphism(&basis, op).trace())
}

/// Named coefficients of an interior brace. `Σ` is `Σ_{u<v}(p_uv - p_vu)^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BraceTerm {
    S,
    F1F1BarSigma,
    F1SqSigma,
    F1BarSqSigma,
    F2F2Bar,
    F2Sq,
    F2BarSq,
}

impl BraceTerm {
    pub const ALL: [BraceTerm; 7] = [
        BraceTerm::S,
        BraceTerm::F1F1BarSigma,
        BraceTerm::F1SqSigma,
        BraceTerm::F1BarSqSigma,
        BraceTerm::F2F2Bar,
        BraceTerm::F2Sq,
        BraceTerm::F2BarSq,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BraceTerm::S => "s",
            BraceTerm::F1F1BarSigma => "f1*f1bar*P",
            BraceTerm::F1SqSigma => "f1^2*P",
            BraceTerm::F1BarSqSigma => "f1bar^2*P",
            BraceTerm::F2F2Bar => "f2*f2bar",
            BraceTerm::F2Sq => "f2^2",
            BraceTerm::F2BarSq => "f2bar^2",
        }
    }

    /// The parameter monomial, without `Σ`.
    fn factor(self) -> Poly {
        match self {
            BraceTerm::S => v(S),
            BraceTerm::F1F1BarSigma => &v(F1) * &v(F1Bar),
            BraceTerm::F1SqSigma => &v(F1) * &v(F1),
            BraceTerm::F1BarSqSigma => &v(F1Bar) * &v(F1Bar),
            BraceTerm::F2F2Bar => &v(F2) * &v(F2Bar),
            BraceTerm::F2Sq => &v(F2) * &v(F2),
            BraceTerm::F2BarSq => &v(F2Bar) * &v(F2Bar),
        }
    }

    fn has_sigma(self) -> bool {
        matches!(self, BraceTerm::F1F1BarSigma | BraceTerm::F1SqSigma | BraceTerm::F1BarSqSigma)
    }
}

impl fmt::Display for BraceTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub type BraceCoefficients = BTreeMap<BraceTerm, Gq>;

/// Builds the polynomial `Σ_t coeff_t · term_t` in dimension `n`.
pub fn compose_braces(n: usize, coeffs: &BraceCoefficients) -> Result<Poly> {
    let sigma = GammaBasis::new(n)?.pair_norm_sqr();
    let mut acc = Poly::zero();
    for (t, k) in coeffs {
        let mut p = t.factor();
        if t.has_sigma() {
            p = &p * &sigma;
        }
        acc += &p.scale(k);
    }
    Ok(acc)
}

/// Reads off the named coefficients and checks they reproduce `braces`.
pub fn decompose_braces(n: usize, braces: &Poly) -> Result<BraceCoefficients> {
    let p12 = v(Indeterminate::P(1, 2));
    let mut out = BraceCoefficients::new();
    for t in BraceTerm::ALL {
        let mut probe = t.factor();
        if t.has_sigma() {
            probe = &probe * &(&p12 * &p12);
        }
        let m: Monomial = *probe.terms().next().expect("monomial").0;
        let k = braces.coeff(&m);
        if !k.is_zero() {
            out.insert(t, k);
        }
    }
    if compose_braces(n, &out)? != *braces {
        return Err(Error::Unexpressible(braces.to_string()));
    }
    Ok(out)
}

/// The residue integrand `prefactor · ∫_M braces dvol`.
#[derive(Clone, Debug, PartialEq)]
pub struct InteriorIntegrand {
    pub n: usize,
    pub op: InteriorOp,
    /// Rational part of `(n-2)(4π)^{n/2}/((n/2)-1)!`; the `π` power is `pi_pow`.
    pub prefactor: Rational,
    pub pi_pow: u32,
    /// `tr(s/6 + E)`, the `tr(id)` factor included.
    pub braces: Poly,
}

impl InteriorIntegrand {
    pub fn coefficients(&self) -> Result<BraceCoefficients> {
        decompose_braces(self.n, &self.braces)
    }
}

/// `(n-2) 4^{n/2} / ((n/2)-1)!` and the power `n/2` of `π`.
pub fn prefactor(n: usize) -> (Rational, u32) {
    let half = n / 2;
    let fact: i64 = (1..half as i64).product();
    (rat((n as i64 - 2) * 4i64.pow(half as u32), fact), half as u32)
}

fn check_dim(n: usize) -> Result<()> {
    if !n.is_multiple_of(2) || !(4..=6).contains(&n) {
        return Err(Error::UnsupportedDimension(n));
    }
    Ok(())
}

/// Residue of `op^{-(n-2)/2}` by explicit trace evaluation.
pub fn wres_integrand(n: usize, op: InteriorOp) -> Result<InteriorIntegrand> {
    check_dim(n)?;
    let tr_id = Gq::from(1i64 << (n / 2));
    let braces = &v(S).scale(&(&c(1, 6) * &tr_id)) + &trace_e(n, op)?;
    let (prefactor, pi_pow) = prefactor(n);
    Ok(InteriorIntegrand { n, op, prefactor, pi_pow, braces })
}

/// The closed form in `n` of the residue integrand, `tr(id)` folded in:
/// for `D̃*D̃`, `2^{n/2}(-s/12 - 1/4{[(f_1^2+f̄_1^2)(n-4) - 2n f_1 f̄_1]Σ + 2n f_2 f̄_2
/// - n f_2^2 - n f̄_2^2} - f_2 f̄_2 - f_1 f̄_1 Σ)`; for `D̃^2`,
/// `2^{n/2}(-s/12 + (3-n) f_1^2 Σ + (n-1) f_2^2)`.
pub fn closed_form_braces(n: usize, op: InteriorOp) -> Result<BraceCoefficients> {
    check_dim(n)?;
    let nn = n as i64;
    let t = Gq::from(1i64 << (n / 2));
    let q = |a: i64, b: i64| &c(a, b) * &t;
    let mut out = BraceCoefficients::new();
    out.insert(BraceTerm::S, q(-1, 12));
    match op {
        InteriorOp::DStarD => {
            out.insert(BraceTerm::F1SqSigma, q(-(nn - 4), 4));
            out.insert(BraceTerm::F1BarSqSigma, q(-(nn - 4), 4));
            out.insert(BraceTerm::F1F1BarSigma, &q(2 * nn, 4) - &t);
            out.insert(BraceTerm::F2F2Bar, &q(-2 * nn, 4) - &t);
            out.insert(BraceTerm::F2Sq, q(nn, 4));
            out.insert(BraceTerm::F2BarSq, q(nn, 4));
        }
        InteriorOp::DSquared => {
            out.insert(BraceTerm::F1SqSigma, q(3 - nn, 1));
            out.insert(BraceTerm::F2Sq, q(nn - 1, 1));
        }
    }
    out.retain(|_, k| !k.is_zero());
    Ok(out)
}

/// One checked trace identity.
#[derive(Clone, Debug, PartialEq)]
pub struct IdentityCheck {
    pub name: String,
    pub expected: Poly,
    pub got: Poly,
}

impl IdentityCheck {
    pub fn passed(&self) -> bool {
        self.expected == self.got
    }
}

/// The perturbation trace identities and the boundary trace table in dimension `n`.
pub fn trace_identity_suite(n: usize) -> Result<Vec<IdentityCheck>> {
    let model = BoundaryModel::new(n)?;
    let b = model.basis();
    let tr_id = Poly::constant(Gq::from(1i64 << (n / 2)));
    let a = b.perturbation_a();
    let x = model.perturbation(Dirac::D);
    let sigma = b.pair_norm_sqr();
    let mut out = Vec::new();
    let mut check = |name: &str, expected: Poly, got: Poly| {
        out.push(IdentityCheck { name: name.to_string(), expected, got });
    };

    check("tr A", Poly::zero(), a.trace());
    check("tr A^2", -&(&sigma * &tr_id), a.trace_product(&a));
    let mut sq = b.zero();
    for i in 1..=n {
        let t = b.gamma(i) * &x;
        sq = &sq + &(&t * &t);
    }
    let f1sq = &v(F1) * &v(F1);
    let expect = &(&(&f1sq * &sigma).scale(&Gq::from(n as i64 - 4)) - &(&v(F2) * &v(F2)).scale(&Gq::from(n as i64)))
        * &tr_id;
    check("tr sum_i [c_i (f1 A + f2)]^2", expect, sq.trace());
    // ∇(f_1 A + f_2) is again an even element; its pairing with c(e_j) is traceless
    for j in 1..=n {
        check(&format!("tr c_{j} (f1 A + f2)"), Poly::zero(), b.gamma(j).trace_product(&x));
    }

    let cp = b.c_xi_prime();
    let cn = b.c_dxn();
    let dcp = model.c_xi_prime().dxn("c(xi')")?.numerator()[0].clone();
    let h = model.hprime();
    check("tr c(xi') c(dx_n)", Poly::zero(), cp.trace_product(cn));
    check("tr c(dx_n)^2", -&tr_id, cn.trace_product(cn));
    check("tr c(xi')^2 on |xi'|=1", -&tr_id, cp.trace_product(&cp));
    check("tr d_xn c(xi') c(dx_n)", Poly::zero(), dcp.trace_product(cn));
    let half_tr = tr_id.scale(&c(-1, 2));
    check("tr d_xn c(xi') c(xi') on |xi'|=1", &h * &half_tr, dcp.trace_product(&cp));
    check("tr (f1 A + f2) c(dx_n)", Poly::zero(), x.trace_product(cn));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coeffs(pairs: &[(BraceTerm, i64, i64)]) -> BraceCoefficients {
        pairs.iter().map(|&(t, a, b)| (t, c(a, b))).collect()
    }

    #[test]
    fn prefactors() {
        assert_eq!(prefactor(4), (rat(32, 1), 2));
        assert_eq!(prefactor(6), (rat(128, 1), 3));
    }

    #[test]
    fn lichnerowicz_specialisation() {
        let e = trace_e(4, InteriorOp::DStarD).unwrap();
        let zero = Poly::zero();
        let free = [F1, F1Bar, F2, F2Bar].iter().fold(e, |acc, x| acc.substitute(*x, &zero));
        assert_eq!(free, v(S).scale(&Gq::from(-1)));
    }

    #[test]
    fn d_squared_trace_matches_closed_form() {
        for n in [4, 6] {
            let got = wres_integrand(n, InteriorOp::DSquared).unwrap().coefficients().unwrap();
            assert_eq!(got, closed_form_braces(n, InteriorOp::DSquared).unwrap(), "n={n}");
        }
        let six = trace_e(6, InteriorOp::DSquared).unwrap();
        let expect = coeffs(&[(BraceTerm::S, -2, 1), (BraceTerm::F1SqSigma, -24, 1), (BraceTerm::F2Sq, 40, 1)]);
        assert_eq!(decompose_braces(6, &six).unwrap(), expect);
    }

    #[test]
    fn four_dimensional_f1_terms() {
        let got = wres_integrand(4, InteriorOp::DStarD).unwrap().coefficients().unwrap();
        assert_eq!(got.get(&BraceTerm::F1F1BarSigma), Some(&c(4, 1)));
        assert_eq!(got.get(&BraceTerm::F1SqSigma), None);
    }

    #[test]
    fn brace_is_formally_real() {
        for n in [4, 6] {
            let b = wres_integrand(n, InteriorOp::DStarD).unwrap().braces;
            assert_eq!(b.conj(), b);
        }
    }

    #[test]
    fn identity_suite_passes() {
        for n in [4, 6] {
            for check in trace_identity_suite(n).unwrap() {
                assert!(check.passed(), "n={n}: {}: {} vs {}", check.name, check.expected, check.got);
            }
        }
    }

    #[test]
    fn third_identity_in_six_dimensions() {
        let b = GammaBasis::new(6).unwrap();
        let a = b.perturbation_a().scale_poly(&v(F1));
        let mut sq = b.zero();
        for i in 1..=6 {
            let t = b.gamma(i) * &a;
            sq = &sq + &(&t * &t);
        }
        let expect = &(&(&v(F1) * &v(F1)) * &b.pair_norm_sqr()) * &Poly::constant(Gq::from(16));
        assert_eq!(sq.trace(), expect);
    }

    #[test]
    fn unsupported_dimensions() {
        assert!(wres_integrand(5, InteriorOp::DStarD).is_err());
        assert!(closed_form_braces(8, InteriorOp::DSquared).is_err());
        let bad = &v(F1) * &v(F2);
        assert!(decompose_braces(4, &bad).is_err());
    }
}
