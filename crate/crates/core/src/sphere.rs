//! Exact integration of polynomials in `ξ'` over the unit sphere
//! `|ξ'| = 1` in `R^{n-1}`, normalised so that `∫ 1 = Ω_{n-1}`.

use std::fmt;

use num::traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{Indeterminate, Poly, PolyRing};
use crate::scalar::{rat, Gq, Rational};

/// `coefficient · π^pi_pow · Ω_{n-1}^omega`, with a `ξ`-free coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SphereValue {
    pub coefficient: Poly,
    pub omega: u32,
    pub pi_pow: u32,
}

impl SphereValue {
    pub fn zero() -> Self {
        Self { coefficient: Poly::zero(), omega: 1, pi_pow: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.coefficient.is_zero()
    }

    pub fn with_pi(mut self, pi_pow: u32) -> Self {
        self.pi_pow = pi_pow;
        self
    }

    pub fn scale(&self, c: &Gq) -> Self {
        Self { coefficient: self.coefficient.scale(c), ..self.clone() }
    }

    /// Exact sum; zero values adopt the other operand's formal factors.
    pub fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        assert_eq!(
            (self.omega, self.pi_pow),
            (rhs.omega, rhs.pi_pow),
            "adding values with different formal factors"
        );
        Self { coefficient: &self.coefficient + &rhs.coefficient, ..self.clone() }
    }
}

impl fmt::Display for SphereValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.coefficient)?;
        match self.pi_pow {
            0 => {}
            1 => write!(f, "·π")?,
            k => write!(f, "·π^{k}")?,
        }
        if self.omega > 0 {
            write!(f, "·Ω")?;
        }
        Ok(())
    }
}

fn double_factorial_odd(k: u32) -> i64 {
    // (k-1)!! for even k
    (1..k).step_by(2).map(|v| v as i64).product()
}

/// `∫_{S^{d-1}} ξ^α / Ω` for exponents `α` over `d` variables.
pub fn moment(exponents: &[u32], d: usize) -> Rational {
    if exponents.iter().any(|e| e % 2 == 1) {
        return Rational::zero();
    }
    let half: u32 = exponents.iter().sum::<u32>() / 2;
    let num: i64 = exponents.iter().map(|&e| double_factorial_odd(e)).product();
    let den: i64 = (0..half as i64).map(|j| d as i64 + 2 * j).product();
    rat(num, den)
}

/// Integrates `p` over `|ξ'| = 1`. The input must be in sphere normal form.
pub fn sphere_integrate(ring: &PolyRing, p: &Poly) -> Result<SphereValue> {
    ring.check(p)?;
    if !ring.is_normal(p) {
        return Err(Error::NotNormalForm(p.degree_in(Indeterminate::Xi(1))));
    }
    let d = ring.dim() - 1;
    let mut coefficient = Poly::zero();
    for (m, c) in p.terms() {
        let exps: Vec<u32> = ring.xis().map(|x| m.exponent(x)).collect();
        let w = moment(&exps, d);
        if w.is_zero() {
            continue;
        }
        let rest = ring.xis().fold(*m, |acc, x| acc.with_exponent(x, 0));
        coefficient.add_term(rest, &(c * &Gq::real(w)));
    }
    Ok(SphereValue { coefficient, omega: 1, pi_pow: 0 })
}
