//! Sparse multivariate polynomials over `Q(i)` in the engine's fixed set of
//! formal parameters, and their normal form on the unit sphere `|ξ'| = 1`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num::traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Gq;

/// Largest dimension whose indeterminates fit the fixed layout.
pub const MAX_DIM: usize = 6;
const N_SCALAR_VARS: usize = 6;
const N_XI: usize = MAX_DIM - 1;
const N_PAIRS: usize = MAX_DIM * (MAX_DIM - 1) / 2;
pub const N_VARS: usize = N_SCALAR_VARS + N_XI + N_PAIRS;

/// A formal parameter.
///
/// `P(u, v)` (with `u < v`) stands for the antisymmetric combination
/// `p_uv - p_vu`; only that combination enters any formula.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Indeterminate {
    HPrime,
    F1,
    F1Bar,
    F2,
    F2Bar,
    /// Scalar curvature, a pure marker.
    S,
    /// Tangential covector component `ξ_i`, `1 <= i <= n-1`.
    Xi(u8),
    P(u8, u8),
}

impl Indeterminate {
    pub fn index(self) -> usize {
        match self {
            Self::HPrime => 0,
            Self::F1 => 1,
            Self::F1Bar => 2,
            Self::F2 => 3,
            Self::F2Bar => 4,
            Self::S => 5,
            Self::Xi(i) => {
                assert!((1..=N_XI as u8).contains(&i), "xi index {i} out of range");
                N_SCALAR_VARS + i as usize - 1
            }
            Self::P(u, v) => {
                assert!(1 <= u && u < v && v as usize <= MAX_DIM, "bad pair ({u},{v})");
                let (u, v) = (u as usize, v as usize);
                // pairs enumerated (1,2),(1,3),(2,3),(1,4),... so lower dimensions are a prefix
                N_SCALAR_VARS + N_XI + (v - 1) * (v - 2) / 2 + (u - 1)
            }
        }
    }

    pub fn from_index(idx: usize) -> Self {
        match idx {
            0 => Self::HPrime,
            1 => Self::F1,
            2 => Self::F1Bar,
            3 => Self::F2,
            4 => Self::F2Bar,
            5 => Self::S,
            i if i < N_SCALAR_VARS + N_XI => Self::Xi((i - N_SCALAR_VARS + 1) as u8),
            i => {
                let mut k = i - N_SCALAR_VARS - N_XI;
                let mut v = 2;
                while k >= v - 1 {
                    k -= v - 1;
                    v += 1;
                }
                Self::P(k as u8 + 1, v as u8)
            }
        }
    }

    /// Whether this parameter is real, i.e. fixed by conjugation.
    pub fn conjugate(self) -> Self {
        match self {
            Self::F1 => Self::F1Bar,
            Self::F1Bar => Self::F1,
            Self::F2 => Self::F2Bar,
            Self::F2Bar => Self::F2,
            other => other,
        }
    }

    fn name(self) -> String {
        match self {
            Self::HPrime => "h'".into(),
            Self::F1 => "f1".into(),
            Self::F1Bar => "f1bar".into(),
            Self::F2 => "f2".into(),
            Self::F2Bar => "f2bar".into(),
            Self::S => "s".into(),
            Self::Xi(i) => format!("xi{i}"),
            Self::P(u, v) => format!("p{u}{v}"),
        }
    }
}

impl fmt::Display for Indeterminate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Exponent vector over the fixed layout.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Monomial([u8; N_VARS]);

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(v: Indeterminate) -> Self {
        let mut m = Self::default();
        m.0[v.index()] = 1;
        m
    }

    pub fn exponent(&self, v: Indeterminate) -> u32 {
        self.0[v.index()] as u32
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    fn mul(&self, rhs: &Self) -> Self {
        let mut out = *self;
        for (o, r) in out.0.iter_mut().zip(rhs.0.iter()) {
            *o = o.checked_add(*r).expect("exponent overflow");
        }
        out
    }

    pub fn exponents(&self) -> impl Iterator<Item = (Indeterminate, u32)> + '_ {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| (Indeterminate::from_index(i), e as u32))
    }

    pub fn with_exponent(mut self, v: Indeterminate, e: u32) -> Self {
        self.0[v.index()] = u8::try_from(e).expect("exponent overflow");
        self
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (v, e) in self.exponents() {
            if !first {
                f.write_str("*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        if first {
            f.write_str("1")?;
        }
        Ok(())
    }
}

/// A polynomial; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, Gq>,
}

impl Poly {
    pub fn constant(c: Gq) -> Self {
        Self::monomial(Monomial::one(), c)
    }

    pub fn monomial(m: Monomial, c: Gq) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { terms }
    }

    pub fn var(v: Indeterminate) -> Self {
        Self::monomial(Monomial::var(v), Gq::one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Gq)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> Gq {
        self.terms.get(m).cloned().unwrap_or_else(Gq::zero)
    }

    /// The constant term, when the polynomial is constant.
    pub fn as_constant(&self) -> Option<Gq> {
        match self.terms.len() {
            0 => Some(Gq::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: &Gq) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing += c;
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn scale(&self, c: &Gq) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    pub fn mul_i(&self) -> Self {
        Self {
            terms: self.terms.iter().map(|(m, v)| (*m, v.mul_i())).collect(),
        }
    }

    /// Conjugates coefficients and swaps `f ↔ f̄`; real parameters are fixed.
    pub fn conj(&self) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let mut cm = Monomial::one();
            for (v, e) in m.exponents() {
                cm = cm.with_exponent(v.conjugate(), e);
            }
            out.add_term(cm, &c.conj());
        }
        out
    }

    pub fn degree_in(&self, v: Indeterminate) -> u32 {
        self.terms.keys().map(|m| m.exponent(v)).max().unwrap_or(0)
    }

    pub fn contains(&self, v: Indeterminate) -> bool {
        self.degree_in(v) > 0
    }

    pub fn indeterminates(&self) -> Vec<Indeterminate> {
        let mut seen = [false; N_VARS];
        for m in self.terms.keys() {
            for (i, &e) in m.0.iter().enumerate() {
                seen[i] |= e > 0;
            }
        }
        (0..N_VARS)
            .filter(|&i| seen[i])
            .map(Indeterminate::from_index)
            .collect()
    }

    /// Replaces `v` by `value` throughout.
    pub fn substitute(&self, v: Indeterminate, value: &Poly) -> Self {
        let mut out = Self::zero();
        let mut powers: Vec<Poly> = vec![Poly::one()];
        for (m, c) in &self.terms {
            let e = m.exponent(v) as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            let rest = Poly::monomial(m.with_exponent(v, 0), c.clone());
            out += &(&rest * &powers[e]);
        }
        out
    }

    pub fn substitute_scalar(&self, v: Indeterminate, value: &Gq) -> Self {
        self.substitute(v, &Poly::constant(value.clone()))
    }

    /// Partial derivative in `v`.
    pub fn derivative(&self, v: Indeterminate) -> Self {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let e = m.exponent(v);
            if e > 0 {
                out.add_term(m.with_exponent(v, e - 1), &(c * &Gq::from(e as i64)));
            }
        }
        out
    }
}

impl Zero for Poly {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl One for Poly {
    fn one() -> Self {
        Self::constant(Gq::one())
    }
}

impl From<Gq> for Poly {
    fn from(c: Gq) -> Self {
        Self::constant(c)
    }
}

impl From<Indeterminate> for Poly {
    fn from(v: Indeterminate) -> Self {
        Self::var(v)
    }
}

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c);
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, &-c);
        }
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

macro_rules! forward_poly {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_poly!(Add add, Sub sub, Mul mul);

impl std::iter::Sum for Poly {
    fn sum<I: Iterator<Item = Poly>>(iter: I) -> Poly {
        iter.fold(Poly::zero(), |mut acc, p| {
            acc += &p;
            acc
        })
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            let coeff = if c.is_real() || c.re.is_zero() {
                c.to_string()
            } else {
                format!("({c})")
            };
            if *m == Monomial::one() {
                write!(f, "{coeff}")?;
            } else if c.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{coeff}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

/// The polynomial ring of a fixed dimension `n`: which indeterminates are
/// legal, and reduction modulo the sphere relation `ξ_1^2 + … + ξ_{n-1}^2 = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    n: usize,
}

impl PolyRing {
    pub fn new(n: usize) -> Result<Self> {
        if !(2..=MAX_DIM).contains(&n) {
            return Err(Error::UnsupportedDimension(n));
        }
        Ok(Self { n })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn xi(&self, i: usize) -> Indeterminate {
        assert!(i >= 1 && i < self.n, "xi_{i} outside dimension {}", self.n);
        Indeterminate::Xi(i as u8)
    }

    pub fn xis(&self) -> impl Iterator<Item = Indeterminate> {
        (1..self.n).map(|i| Indeterminate::Xi(i as u8))
    }

    /// Pairs `(u, v)`, `1 <= u < v <= n`.
    pub fn pairs(&self) -> Vec<(u8, u8)> {
        let mut out = Vec::new();
        for v in 2..=self.n as u8 {
            for u in 1..v {
                out.push((u, v));
            }
        }
        out
    }

    pub fn owns(&self, v: Indeterminate) -> bool {
        match v {
            Indeterminate::Xi(i) => (i as usize) < self.n,
            Indeterminate::P(_, v) => (v as usize) <= self.n,
            _ => true,
        }
    }

    pub fn check(&self, p: &Poly) -> Result<()> {
        match p.indeterminates().into_iter().find(|v| !self.owns(*v)) {
            Some(v) => Err(Error::ForeignIndeterminate(v.to_string(), self.n)),
            None => Ok(()),
        }
    }

    pub fn try_add(&self, a: &Poly, b: &Poly) -> Result<Poly> {
        self.check(a)?;
        self.check(b)?;
        Ok(a + b)
    }

    pub fn try_mul(&self, a: &Poly, b: &Poly) -> Result<Poly> {
        self.check(a)?;
        self.check(b)?;
        Ok(a * b)
    }

    /// `|ξ'|^2 = ξ_1^2 + … + ξ_{n-1}^2`.
    pub fn xi_norm_sqr(&self) -> Poly {
        self.xis().map(|x| &Poly::var(x) * &Poly::var(x)).sum()
    }

    /// Remainder of `p` on division by `|ξ'|^2 - 1` in graded-lex order with
    /// `ξ_1` greatest: every `ξ_1^2` is rewritten as `1 - ξ_2^2 - … - ξ_{n-1}^2`.
    /// The result has `ξ_1`-degree below 2.
    pub fn normal_form(&self, p: &Poly) -> Poly {
        let x1 = Indeterminate::Xi(1);
        if p.degree_in(x1) < 2 {
            return p.clone();
        }
        // 1 - ξ_2^2 - … ; its powers are cached by exponent
        let mut tail = Poly::one();
        for x in self.xis().skip(1) {
            tail -= &(&Poly::var(x) * &Poly::var(x));
        }
        let mut tail_pows = vec![Poly::one()];
        let mut out = Poly::zero();
        for (m, c) in p.terms() {
            let e = m.exponent(x1);
            let q = (e / 2) as usize;
            while tail_pows.len() <= q {
                let next = tail_pows.last().unwrap() * &tail;
                tail_pows.push(next);
            }
            let rest = Poly::monomial(m.with_exponent(x1, e % 2), c.clone());
            out += &(&rest * &tail_pows[q]);
        }
        out
    }

    pub fn is_normal(&self, p: &Poly) -> bool {
        p.degree_in(Indeterminate::Xi(1)) < 2
    }
}
