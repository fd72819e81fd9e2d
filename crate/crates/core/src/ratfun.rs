//! Rational functions of `ξ_n` whose only poles are `±i`:
//! `N(ξ_n) / ((ξ_n - i)^a (ξ_n + i)^b)` with coefficients in a ring `C`
//! (scalars, polynomials or Clifford elements).

use std::fmt;

use num::traits::{One, Zero};

use crate::clifford::CliffordElement;
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::{rat, Gq};

/// Coefficient ring of a [`RatFun`]; need not be commutative.
pub trait Coeff: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn is_zero(&self) -> bool;
    /// A zero of the same shape as `self`.
    fn zero_like(&self) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn scale(&self, c: &Gq) -> Self;
}

impl Coeff for Gq {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        Gq::zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn scale(&self, c: &Gq) -> Self {
        self * c
    }
}

impl Coeff for Poly {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        Poly::zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn scale(&self, c: &Gq) -> Self {
        Poly::scale(self, c)
    }
}

impl Coeff for CliffordElement {
    fn is_zero(&self) -> bool {
        CliffordElement::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        CliffordElement::zero(self.ring())
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn scale(&self, c: &Gq) -> Self {
        CliffordElement::scale(self, c)
    }
}

/// Which half-plane a pole lies in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pole {
    /// `ξ_n = i`
    Upper,
    /// `ξ_n = -i`
    Lower,
}

impl Pole {
    pub fn location(self) -> Gq {
        match self {
            Pole::Upper => Gq::i(),
            Pole::Lower => -Gq::i(),
        }
    }
}

/// `N(ξ_n) / ((ξ_n - i)^up (ξ_n + i)^down)`, kept in lowest terms.
#[derive(Clone, PartialEq)]
pub struct RatFun<C: Coeff> {
    num: Vec<C>,
    up: u32,
    down: u32,
}

/// `poly + Σ_k upper[k-1]/(ξ_n - i)^k + Σ_k lower[k-1]/(ξ_n + i)^k`.
#[derive(Clone, Debug, PartialEq)]
pub struct PartialFractions<C: Coeff> {
    pub poly: Vec<C>,
    pub upper: Vec<C>,
    pub lower: Vec<C>,
}

fn trim<C: Coeff>(v: &mut Vec<C>) {
    while v.last().is_some_and(Coeff::is_zero) {
        v.pop();
    }
}

fn add_vec<C: Coeff>(a: &[C], b: &[C]) -> Vec<C> {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let mut out = long.to_vec();
    for (o, s) in out.iter_mut().zip(short) {
        *o = o.add(s);
    }
    trim(&mut out);
    out
}

/// `num · (ξ - r)`.
fn mul_linear<C: Coeff>(num: &[C], r: &Gq) -> Vec<C> {
    if num.is_empty() {
        return Vec::new();
    }
    let zero = num[0].zero_like();
    let mut out = Vec::with_capacity(num.len() + 1);
    for k in 0..=num.len() {
        let hi = if k > 0 { num[k - 1].clone() } else { zero.clone() };
        let lo = num.get(k).map(|c| c.scale(r)).unwrap_or_else(|| zero.clone());
        out.push(hi.sub(&lo));
    }
    trim(&mut out);
    out
}

/// Synthetic division by `(ξ - r)`: quotient and remainder `num(r)`.
fn div_linear<C: Coeff>(num: &[C], r: &Gq) -> (Vec<C>, Option<C>) {
    if num.is_empty() {
        return (Vec::new(), None);
    }
    let d = num.len() - 1;
    let mut q = vec![num[d].zero_like(); d];
    let mut acc = num[d].clone();
    for k in (0..d).rev() {
        q[k] = acc.clone();
        acc = num[k].add(&acc.scale(r));
    }
    (q, Some(acc))
}

/// Coefficients of `N(r + t)` in powers of `t`, up to `count` terms.
fn taylor_at<C: Coeff>(num: &[C], r: &Gq, count: usize) -> Vec<C> {
    let mut out = Vec::with_capacity(count);
    let mut cur = num.to_vec();
    while out.len() < count && !cur.is_empty() {
        let (q, rem) = div_linear(&cur, r);
        out.push(rem.expect("nonempty"));
        cur = q;
    }
    out
}

fn binomial(n: u32, k: u32) -> Gq {
    let mut acc = rat(1, 1);
    for j in 0..k {
        acc *= rat((n - j) as i64, (j + 1) as i64);
    }
    Gq::real(acc)
}

/// Power series of `(t + d)^{-e}` in `t`.
fn inverse_power_series(d: &Gq, e: u32, count: usize) -> Vec<Gq> {
    let dinv = d.checked_inv().expect("poles are distinct");
    let mut out = Vec::with_capacity(count);
    for m in 0..count as u32 {
        if e == 0 {
            out.push(if m == 0 { Gq::one() } else { Gq::zero() });
            continue;
        }
        let sign = if m % 2 == 0 { Gq::one() } else { -Gq::one() };
        let p = dinv.pow((e + m) as i32).expect("nonzero");
        out.push(&(&sign * &binomial(e + m - 1, m)) * &p);
    }
    out
}

/// `(ξ - i)^a (ξ + i)^b` as a monic coefficient list.
fn denominator_coeffs(a: u32, b: u32) -> Vec<Gq> {
    let mut d = vec![Gq::one()];
    for _ in 0..a {
        d = mul_linear(&d, &Gq::i());
    }
    for _ in 0..b {
        d = mul_linear(&d, &-Gq::i());
    }
    d
}

impl<C: Coeff> RatFun<C> {
    /// Builds and reduces `num / ((ξ - i)^up (ξ + i)^down)`.
    pub fn new(num: Vec<C>, up: u32, down: u32) -> Self {
        let mut f = Self { num, up, down };
        f.canonicalize();
        f
    }

    pub fn polynomial(num: Vec<C>) -> Self {
        Self::new(num, 0, 0)
    }

    pub fn constant(c: C) -> Self {
        Self::polynomial(vec![c])
    }

    pub fn zero() -> Self {
        Self { num: Vec::new(), up: 0, down: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    pub fn numerator(&self) -> &[C] {
        &self.num
    }

    pub fn pole_up(&self) -> u32 {
        self.up
    }

    pub fn pole_down(&self) -> u32 {
        self.down
    }

    /// Degree of the numerator; `None` for the zero function.
    pub fn degree(&self) -> Option<usize> {
        self.num.len().checked_sub(1)
    }

    /// Total pole order minus numerator degree: the decay exponent at infinity.
    pub fn order_at_infinity(&self) -> Option<i64> {
        self.degree().map(|d| (self.up + self.down) as i64 - d as i64)
    }

    fn canonicalize(&mut self) {
        trim(&mut self.num);
        if self.num.is_empty() {
            self.up = 0;
            self.down = 0;
            return;
        }
        for (pole, r) in [(true, Gq::i()), (false, -Gq::i())] {
            loop {
                let mult = if pole { self.up } else { self.down };
                if mult == 0 {
                    break;
                }
                let (q, rem) = div_linear(&self.num, &r);
                if !rem.is_some_and(|c| c.is_zero()) {
                    break;
                }
                self.num = q;
                trim(&mut self.num);
                if pole {
                    self.up -= 1;
                } else {
                    self.down -= 1;
                }
            }
        }
    }

    /// Numerator raised to the denominator `(ξ - i)^up (ξ + i)^down`.
    fn lifted(&self, up: u32, down: u32) -> Vec<C> {
        debug_assert!(up >= self.up && down >= self.down);
        let mut n = self.num.clone();
        for _ in self.up..up {
            n = mul_linear(&n, &Gq::i());
        }
        for _ in self.down..down {
            n = mul_linear(&n, &-Gq::i());
        }
        n
    }

    pub fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let (up, down) = (self.up.max(rhs.up), self.down.max(rhs.down));
        Self::new(add_vec(&self.lifted(up, down), &rhs.lifted(up, down)), up, down)
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Gq::one())
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn scale(&self, c: &Gq) -> Self {
        Self::new(self.num.iter().map(|x| x.scale(c)).collect(), self.up, self.down)
    }

    /// Applies `f` to every numerator coefficient.
    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> RatFun<D> {
        RatFun::new(self.num.iter().map(f).collect(), self.up, self.down)
    }

    /// `self · rhs` where coefficients are combined by `op` (order preserved).
    pub fn pair<D: Coeff, E: Coeff>(&self, rhs: &RatFun<D>, op: impl Fn(&C, &D) -> E) -> RatFun<E> {
        if self.is_zero() || rhs.is_zero() {
            return RatFun::zero();
        }
        let len = self.num.len() + rhs.num.len() - 1;
        let mut out: Vec<Option<E>> = vec![None; len];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.num.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let term = op(a, b);
                out[i + j] = Some(match out[i + j].take() {
                    Some(acc) => acc.add(&term),
                    None => term,
                });
            }
        }
        let Some(proto) = out.iter().flatten().next().map(Coeff::zero_like) else {
            return RatFun::zero();
        };
        let num = out.into_iter().map(|c| c.unwrap_or_else(|| proto.clone())).collect();
        RatFun::new(num, self.up + rhs.up, self.down + rhs.down)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        self.pair(rhs, C::mul)
    }

    /// `∂_{ξ_n}`.
    pub fn derivative(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        // d/dξ [N / ((ξ-i)^a (ξ+i)^b)]
        //   = [N'(ξ-i)(ξ+i) - a N (ξ+i) - b N (ξ-i)] / ((ξ-i)^{a+1} (ξ+i)^{b+1})
        let (a, b) = (self.up, self.down);
        let dn: Vec<C> = self
            .num
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.scale(&Gq::from(k as i64)))
            .collect();
        let mut dn = dn;
        trim(&mut dn);
        let t1 = mul_linear(&mul_linear(&dn, &Gq::i()), &-Gq::i());
        let t2: Vec<C> = mul_linear(&self.num, &-Gq::i())
            .iter()
            .map(|c| c.scale(&Gq::from(-(a as i64))))
            .collect();
        let t3: Vec<C> = mul_linear(&self.num, &Gq::i())
            .iter()
            .map(|c| c.scale(&Gq::from(-(b as i64))))
            .collect();
        Self::new(add_vec(&add_vec(&t1, &t2), &t3), a + 1, b + 1)
    }

    pub fn derivative_n(&self, order: u32) -> Self {
        (0..order).fold(self.clone(), |f, _| f.derivative())
    }

    /// Polynomial part plus principal parts at `±i`.
    pub fn partial_fractions(&self) -> PartialFractions<C> {
        let principal = |pole: Pole| -> Vec<C> {
            let (mult, other) = match pole {
                Pole::Upper => (self.up, self.down),
                Pole::Lower => (self.down, self.up),
            };
            if mult == 0 || self.is_zero() {
                return Vec::new();
            }
            let r = pole.location();
            let d = &r - &(-&r);
            let count = mult as usize;
            let taylor = taylor_at(&self.num, &r, count);
            let series = inverse_power_series(&d, other, count);
            let zero = self.num[0].zero_like();
            // coefficient of 1/(ξ - r)^{mult - m} is the t^m coefficient of N(r+t)/(t+d)^other
            let mut out = vec![zero.clone(); count];
            for m in 0..count {
                let mut g = zero.clone();
                for (p, np) in taylor.iter().enumerate().take(m + 1) {
                    g = g.add(&np.scale(&series[m - p]));
                }
                out[count - 1 - m] = g;
            }
            out
        };
        PartialFractions {
            poly: self.polynomial_part(),
            upper: principal(Pole::Upper),
            lower: principal(Pole::Lower),
        }
    }

    /// Quotient of the numerator by the (monic) denominator.
    fn polynomial_part(&self) -> Vec<C> {
        let den = denominator_coeffs(self.up, self.down);
        let dd = den.len() - 1;
        if self.num.len() <= dd {
            return Vec::new();
        }
        let mut rem = self.num.clone();
        let mut quot = vec![self.num[0].zero_like(); self.num.len() - dd];
        for k in (0..quot.len()).rev() {
            let lead = rem[k + dd].clone();
            if lead.is_zero() {
                continue;
            }
            for (j, dj) in den.iter().enumerate() {
                rem[k + j] = rem[k + j].sub(&lead.scale(dj));
            }
            quot[k] = lead;
        }
        trim(&mut quot);
        quot
    }

    /// Projection onto the part holomorphic in the lower half-plane, i.e.
    /// the principal part at `+i`. Proper functions only.
    pub fn pi_plus(&self) -> Result<Self> {
        let pf = self.partial_fractions();
        if !pf.poly.is_empty() {
            return Err(Error::PolynomialPart);
        }
        Ok(PartialFractions { poly: Vec::new(), upper: pf.upper, lower: Vec::new() }.assemble())
    }

    /// The principal part at `-i`; `π⁺ + π⁻ = id` on proper functions.
    pub fn pi_minus(&self) -> Result<Self> {
        let pf = self.partial_fractions();
        if !pf.poly.is_empty() {
            return Err(Error::PolynomialPart);
        }
        Ok(PartialFractions { poly: Vec::new(), upper: Vec::new(), lower: pf.lower }.assemble())
    }

    /// `∫_ℝ f dξ_n / π`, i.e. `2i · Res_{ξ_n = i} f`. The integral exists only
    /// when the numerator degree is at most `up + down - 2`.
    pub fn integrate_line(&self) -> Result<Option<C>> {
        let Some(deg) = self.degree() else {
            return Ok(None);
        };
        let total = (self.up + self.down) as usize;
        if deg + 2 > total {
            return Err(Error::NoDecay { numerator: deg, limit: total.saturating_sub(2) });
        }
        let pf = self.partial_fractions();
        Ok(pf.upper.first().map(|res| res.scale(&Gq::from_ints(0, 2))))
    }
}

impl<C: Coeff> PartialFractions<C> {
    /// Recombines into a single reduced rational function.
    pub fn assemble(&self) -> RatFun<C> {
        let mut acc = RatFun::polynomial(self.poly.clone());
        for (k, c) in self.upper.iter().enumerate() {
            acc = acc.add(&RatFun::new(vec![c.clone()], k as u32 + 1, 0));
        }
        for (k, c) in self.lower.iter().enumerate() {
            acc = acc.add(&RatFun::new(vec![c.clone()], 0, k as u32 + 1));
        }
        acc
    }
}

impl<C: Coeff> fmt::Debug for RatFun<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("RatFun")
            .field("num", &self.num)
            .field("up", &self.up)
            .field("down", &self.down)
            .finish()
    }
}

impl fmt::Display for RatFun<Gq> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .num
            .iter()
            .enumerate()
            .filter(|(_, c)| !Zero::is_zero(*c))
            .map(|(k, c)| match k {
                0 => format!("({c})"),
                1 => format!("({c})x"),
                _ => format!("({c})x^{k}"),
            })
            .collect();
        let num = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
        write!(f, "[{num}] / ((x-i)^{} (x+i)^{})", self.up, self.down)
    }
}

/// `1 / |ξ|^{2k} = 1 / ((ξ_n - i)(ξ_n + i))^k` on `|ξ'| = 1`.
pub fn inv_norm_pow<C: Coeff>(one: C, k: u32) -> RatFun<C> {
    RatFun::new(vec![one], k, k)
}

/// `|ξ|^2 = 1 + ξ_n^2` on `|ξ'| = 1`.
pub fn norm_sqr<C: Coeff>(one: C) -> RatFun<C> {
    let zero = one.zero_like();
    RatFun::polynomial(vec![one.clone(), zero, one])
}
