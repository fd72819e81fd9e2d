//! Symbols of the Dirac-Witten operators, their inverses and the cubic
//! operators at the boundary point `x_0`, restricted to `|ξ'| = 1`.
//!
//! Each symbol carries its first normal derivative `∂_{x_n}` at `x_0`
//! (a [`Jet`]); tangential derivatives vanish at `x_0` in normal coordinates.

use num::traits::{One, Zero};

use crate::clifford::{CliffordElement, GammaBasis};
use crate::error::{Error, Result};
use crate::poly::{Indeterminate, Poly, PolyRing};
use crate::ratfun::{inv_norm_pow, norm_sqr, RatFun};
use crate::scalar::Gq;

pub type Sym = RatFun<CliffordElement>;

/// A symbol at `x_0` together with its `x_n`-derivative, when known.
#[derive(Clone, Debug, PartialEq)]
pub struct Jet {
    pub value: Sym,
    pub dxn: Option<Sym>,
}

impl Jet {
    /// A symbol that does not depend on `x_n` near `x_0`.
    pub fn constant(value: Sym) -> Self {
        Self { value, dxn: Some(Sym::zero()) }
    }

    pub fn new(value: Sym, dxn: Sym) -> Self {
        Self { value, dxn: Some(dxn) }
    }

    /// A value whose normal derivative is not tracked.
    pub fn value_only(value: Sym) -> Self {
        Self { value, dxn: None }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self {
            value: self.value.add(&rhs.value),
            dxn: match (&self.dxn, &rhs.dxn) {
                (Some(a), Some(b)) => Some(a.add(b)),
                _ => None,
            },
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.scale(&-Gq::one()))
    }

    pub fn scale(&self, c: &Gq) -> Self {
        Self {
            value: self.value.scale(c),
            dxn: self.dxn.as_ref().map(|d| d.scale(c)),
        }
    }

    /// Product rule for `∂_{x_n}`.
    pub fn mul(&self, rhs: &Self) -> Self {
        let dxn = match (&self.dxn, &rhs.dxn) {
            (Some(a), Some(b)) => Some(a.mul(&rhs.value).add(&self.value.mul(b))),
            _ => None,
        };
        Self { value: self.value.mul(&rhs.value), dxn }
    }

    /// `∂_{ξ_n}^k`, which commutes with `∂_{x_n}`.
    pub fn d_xin(&self, order: u32) -> Self {
        Self {
            value: self.value.derivative_n(order),
            dxn: self.dxn.as_ref().map(|d| d.derivative_n(order)),
        }
    }

    pub fn dxn(&self, what: &str) -> Result<&Sym> {
        self.dxn.as_ref().ok_or_else(|| Error::MissingJet(what.to_string()))
    }

    /// `D_{x_n} = -i ∂_{x_n}`.
    pub fn d_xn_operator(&self, what: &str) -> Result<Sym> {
        Ok(self.dxn(what)?.scale(&-Gq::i()))
    }

    pub fn map(&self, f: impl Fn(&CliffordElement) -> CliffordElement) -> Self {
        Self {
            value: self.value.map(&f),
            dxn: self.dxn.as_ref().map(|d| d.map(&f)),
        }
    }
}

/// First-order Dirac-Witten operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Dirac {
    D,
    DStar,
}

/// Third-order operators of the six-dimensional pairings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Cube {
    /// `D̃* D̃ D̃*`
    DStarDDStar,
    /// `D̃^3`
    DCubed,
}

/// The operators whose inverse symbols enter the boundary term.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Inverse {
    Dirac(Dirac),
    Cube(Cube),
}

impl Inverse {
    /// Order of the inverse's leading symbol, negated (1 or 3).
    pub fn leading_order(self) -> i32 {
        match self {
            Inverse::Dirac(_) => 1,
            Inverse::Cube(_) => 3,
        }
    }
}

/// A homogeneous component `σ_order` of an inverse's symbol.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorSymbol {
    pub operator: Inverse,
    pub order: i32,
    pub jet: Jet,
}

impl OperatorSymbol {
    pub fn value(&self) -> &Sym {
        &self.jet.value
    }

    pub fn label(&self) -> String {
        format!("sigma_{}({:?}^-1)", self.order, self.operator)
    }

    /// `∂_{x_n}` at `x_0`.
    pub fn dxn_derivative(&self) -> Result<Sym> {
        self.jet.dxn(&self.label()).cloned()
    }

    /// `∂_{x_j}` at `x_0` for a tangential `j`: identically zero.
    pub fn dxprime_derivative(&self, j: usize) -> Sym {
        debug_assert!(j >= 1);
        Sym::zero()
    }
}

/// Geometry of the collar metric at the boundary point `x_0`.
#[derive(Clone, Debug)]
pub struct BoundaryModel {
    basis: GammaBasis,
    perturbed: bool,
}

impl BoundaryModel {
    pub fn new(n: usize) -> Result<Self> {
        if n != 4 && n != 6 {
            return Err(Error::UnsupportedDimension(n));
        }
        Ok(Self { basis: GammaBasis::new(n)?, perturbed: true })
    }

    /// The same geometry with `f_1 = f_2 = 0`.
    pub fn unperturbed(n: usize) -> Result<Self> {
        Ok(Self { perturbed: false, ..Self::new(n)? })
    }

    pub fn is_perturbed(&self) -> bool {
        self.perturbed
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn basis(&self) -> &GammaBasis {
        &self.basis
    }

    pub fn ring(&self) -> PolyRing {
        self.basis.ring()
    }

    pub fn hprime(&self) -> Poly {
        Poly::var(Indeterminate::HPrime)
    }

    fn half_h(&self) -> Poly {
        self.hprime().scale(&Gq::ratio(1, 2))
    }

    fn cl(&self, c: CliffordElement) -> Sym {
        Sym::constant(c)
    }

    fn id(&self) -> CliffordElement {
        self.basis.identity()
    }

    /// Levi-Civita connection coefficients `ω_{s,t}(e_i)(x_0)`.
    pub fn omega(&self, s: usize, t: usize, i: usize) -> Poly {
        let n = self.dim();
        if i < n && s == n && t == i {
            self.half_h()
        } else if i < n && s == i && t == n {
            -self.half_h()
        } else {
            Poly::zero()
        }
    }

    /// Christoffel symbols `Γ^k_{st}(x_0)`.
    pub fn christoffel(&self, k: usize, s: usize, t: usize) -> Poly {
        let n = self.dim();
        if k == n && s == t && s < n {
            self.half_h()
        } else if k < n && ((s == n && t == k) || (s == k && t == n)) {
            -self.half_h()
        } else {
            Poly::zero()
        }
    }

    /// `Γ^k = Σ_{ij} g^{ij} Γ^k_{ij}` at `x_0`, where `g = id`.
    pub fn gamma_upper(&self, k: usize) -> Poly {
        (1..=self.dim()).map(|i| self.christoffel(k, i, i)).sum()
    }

    /// `σ^k(x_0)`: `h'/4 c(e_k)c(e_n)` for `k < n`, zero for `k = n`.
    pub fn spin_coeff(&self, k: usize) -> CliffordElement {
        let n = self.dim();
        if k == n {
            return self.basis.zero();
        }
        (self.basis.gamma(k) * self.basis.c_dxn()).scale_poly(&self.hprime().scale(&Gq::ratio(1, 4)))
    }

    /// `Q(x_0) = -1/4 Σ_{i,s,t} ω_{s,t}(e_i) c(e_i)c(e_s)c(e_t)`.
    pub fn q_element(&self) -> CliffordElement {
        let n = self.dim();
        let mut acc = self.basis.zero();
        for i in 1..=n {
            for s in 1..=n {
                for t in 1..=n {
                    let w = self.omega(s, t, i);
                    if w.is_zero() {
                        continue;
                    }
                    let g = &(self.basis.gamma(i) * self.basis.gamma(s)) * self.basis.gamma(t);
                    acc = &acc + &g.scale_poly(&w);
                }
            }
        }
        acc.scale(&Gq::ratio(-1, 4))
    }

    /// `f_1 A + f_2` for `D̃`, `-f̄_1 A + f̄_2` for `D̃*`.
    pub fn perturbation(&self, which: Dirac) -> CliffordElement {
        if !self.perturbed {
            return self.basis.zero();
        }
        let a = self.basis.perturbation_a();
        let (f1, f2) = match which {
            Dirac::D => (Poly::var(Indeterminate::F1), Poly::var(Indeterminate::F2)),
            Dirac::DStar => (-Poly::var(Indeterminate::F1Bar), Poly::var(Indeterminate::F2Bar)),
        };
        &a.scale_poly(&f1) + &self.basis.scalar(f2)
    }

    /// `c(ξ) = c(ξ') + ξ_n c(dx_n)` with `∂_{x_n} c(ξ') = (h'/2) c(ξ')`.
    pub fn c_xi(&self) -> Jet {
        let cp = self.basis.c_xi_prime();
        let value = Sym::polynomial(vec![cp.clone(), self.basis.c_dxn().clone()]);
        Jet::new(value, self.cl(cp.scale_poly(&self.half_h())))
    }

    /// `c(ξ')` alone, with its normal derivative.
    pub fn c_xi_prime(&self) -> Jet {
        let cp = self.basis.c_xi_prime();
        Jet::new(self.cl(cp.clone()), self.cl(cp.scale_poly(&self.half_h())))
    }

    /// `|ξ|^2 = |ξ'|^2 + ξ_n^2`, `∂_{x_n}|ξ|^2 = h'|ξ'|^2`.
    pub fn norm_sqr(&self) -> Jet {
        Jet::new(norm_sqr(self.id()), self.cl(self.basis.scalar(self.hprime())))
    }

    /// `|ξ|^{-2k}`, `∂_{x_n}|ξ|^{-2k} = -k h' |ξ|^{-2k-2}`.
    pub fn inv_norm_pow(&self, k: u32) -> Jet {
        let value = inv_norm_pow(self.id(), k);
        let dxn = inv_norm_pow(self.id(), k + 1)
            .map(|c| c.scale_poly(&self.hprime().scale(&Gq::from(-(k as i64)))));
        Jet::new(value, dxn)
    }

    pub fn constant(&self, c: CliffordElement) -> Jet {
        Jet::constant(self.cl(c))
    }

    /// `σ_1(D̃) = σ_1(D̃*) = i c(ξ)`.
    pub fn sigma_1(&self) -> Jet {
        self.c_xi().map(CliffordElement::mul_i)
    }

    /// `σ_0(D̃) = Q + f_1 A + f_2`, `σ_0(D̃*) = Q - f̄_1 A + f̄_2`.
    pub fn sigma_0(&self, which: Dirac) -> CliffordElement {
        &self.q_element() + &self.perturbation(which)
    }

    /// `σ_{-1}(D̃^{-1}) = σ_{-1}(D̃*^{-1}) = i c(ξ)/|ξ|^2`.
    pub fn sigma_minus1(&self, which: Dirac) -> OperatorSymbol {
        OperatorSymbol {
            operator: Inverse::Dirac(which),
            order: -1,
            jet: self.sigma_1().mul(&self.inv_norm_pow(1)),
        }
    }

    /// `σ_{-2}` of the inverse from `q_{-2} = -q_{-1}[p_0 q_{-1} + ∂_{ξ_n} p_1 D_{x_n} q_{-1}]`.
    pub fn sigma_minus2(&self, which: Dirac) -> Result<OperatorSymbol> {
        let q1 = self.sigma_minus1(which);
        let p0 = self.constant(self.sigma_0(which));
        let value = self.second_term(&self.sigma_1(), &p0, &q1.jet)?;
        Ok(OperatorSymbol {
            operator: Inverse::Dirac(which),
            order: -2,
            jet: Jet::value_only(value),
        })
    }

    /// Next-to-leading term of a parametrix: `-q[p_sub q + Σ_j ∂_{ξ_j} p_lead D_{x_j} q]`.
    /// Tangential `D_{x_j} q` vanish at `x_0`, so only `j = n` contributes.
    pub fn second_term(&self, lead: &Jet, sub: &Jet, q: &Jet) -> Result<Sym> {
        let dq = q.d_xn_operator("leading inverse symbol")?;
        let inner = sub.value.mul(&q.value).add(&lead.value.derivative().mul(&dq));
        Ok(q.value.mul(&inner).neg())
    }

    fn require_six(&self) -> Result<()> {
        if self.dim() != 6 {
            return Err(Error::UnsupportedDimension(self.dim()));
        }
        Ok(())
    }

    /// `σ_3 = i c(ξ)|ξ|^2` for either cubic operator.
    pub fn sigma_3_cube(&self) -> Result<Jet> {
        self.require_six()?;
        Ok(self.sigma_1().mul(&self.norm_sqr()))
    }

    /// `σ_2` of the cubic operators at `x_0`:
    /// `c(dx_n) h'|ξ'|^2 + c(ξ) Σ_k (4σ^k - 2Γ^k) ξ_k + |ξ|^2 Q + B`, where the
    /// perturbation bracket `B` is `2[|ξ|^2 Y - c(ξ) X c(ξ)] + |ξ|^2 Y` for
    /// `D̃*D̃D̃*` and `-2[c(ξ) X c(ξ) - |ξ|^2 X]` for `D̃^3`,
    /// with `X = f_1 A + f_2`, `Y = -f̄_1 A + f̄_2`.
    pub fn sigma_2_cube(&self, which: Cube) -> Result<Sym> {
        self.require_six()?;
        let n = self.dim();
        let b = &self.basis;
        let h = self.hprime();
        let metric = self.cl(b.c_dxn().scale_poly(&h));
        // Σ_k (4σ^k - 2Γ^k) ξ_k with ξ_n as the polynomial variable
        let mut tangential = b.zero();
        for k in 1..n {
            let coeff = &self.spin_coeff(k).scale(&Gq::from(4))
                - &b.scalar(self.gamma_upper(k).scale(&Gq::from(2)));
            tangential = &tangential + &coeff.scale_poly(&Poly::var(b.ring().xi(k)));
        }
        let normal = &self.spin_coeff(n).scale(&Gq::from(4)) - &b.scalar(self.gamma_upper(n).scale(&Gq::from(2)));
        let connection = Sym::polynomial(vec![tangential, normal]);
        let c = self.c_xi().value;
        let nsq = self.norm_sqr().value;
        let geometric = metric
            .add(&c.mul(&connection))
            .add(&nsq.mul(&self.cl(self.q_element())));
        let x = self.cl(self.perturbation(Dirac::D));
        let y = self.cl(self.perturbation(Dirac::DStar));
        let cxc = c.mul(&x).mul(&c);
        let bracket = match which {
            Cube::DStarDDStar => nsq
                .mul(&y)
                .sub(&cxc)
                .scale(&Gq::from(2))
                .add(&nsq.mul(&y)),
            Cube::DCubed => cxc.sub(&nsq.mul(&x)).scale(&Gq::from(-2)),
        };
        Ok(geometric.add(&bracket))
    }

    /// `σ_{-3} = i c(ξ)/|ξ|^4`, shared by both cubic inverses.
    pub fn sigma_minus3(&self, which: Cube) -> Result<OperatorSymbol> {
        self.require_six()?;
        Ok(OperatorSymbol {
            operator: Inverse::Cube(which),
            order: -3,
            jet: self.sigma_1().mul(&self.inv_norm_pow(2)),
        })
    }

    /// `σ_{-4} = -q_{-3}[p_2 q_{-3} + ∂_{ξ_n} p_3 D_{x_n} q_{-3}]`.
    pub fn sigma_minus4(&self, which: Cube) -> Result<OperatorSymbol> {
        let q3 = self.sigma_minus3(which)?;
        let p2 = Jet::value_only(self.sigma_2_cube(which)?);
        let value = self.second_term(&self.sigma_3_cube()?, &p2, &q3.jet)?;
        Ok(OperatorSymbol {
            operator: Inverse::Cube(which),
            order: -4,
            jet: Jet::value_only(value),
        })
    }

    /// The homogeneous component `σ_order` of the given inverse.
    pub fn inverse_symbol(&self, op: Inverse, order: i32) -> Result<OperatorSymbol> {
        match (op, order) {
            (Inverse::Dirac(w), -1) => Ok(self.sigma_minus1(w)),
            (Inverse::Dirac(w), -2) => self.sigma_minus2(w),
            (Inverse::Cube(w), -3) => self.sigma_minus3(w),
            (Inverse::Cube(w), -4) => self.sigma_minus4(w),
            _ => Err(Error::MissingJet(format!("sigma_{order}({op:?}^-1)"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Indeterminate::*;

    fn model(n: usize) -> BoundaryModel {
        BoundaryModel::new(n).unwrap()
    }

    fn gq(re: i64, im: i64) -> Gq {
        Gq::from_ints(re, im)
    }

    /// Sets every perturbation parameter to zero.
    fn unperturbed(s: &Sym) -> Sym {
        let zero = Poly::zero();
        s.map(|c| {
            [F1, F1Bar, F2, F2Bar]
                .iter()
                .fold(c.clone(), |acc, v| acc.substitute(*v, &zero))
        })
    }

    #[test]
    fn q_element_values() {
        let m = model(4);
        let h = m.hprime();
        assert_eq!(m.q_element(), m.basis().c_dxn().scale_poly(&h.scale(&Gq::ratio(-3, 4))));
        let m6 = model(6);
        assert_eq!(m6.q_element(), m6.basis().c_dxn().scale_poly(&h.scale(&Gq::ratio(-5, 4))));
        assert_eq!(m6.gamma_upper(6), h.scale(&Gq::ratio(5, 2)));
        assert!(m6.gamma_upper(2).is_zero());
    }

    #[test]
    fn derivative_trace_identities() {
        for (n, expect) in [(4, -2), (6, -4)] {
            let m = model(n);
            let cp = m.c_xi_prime();
            let d = cp.dxn.clone().unwrap().numerator()[0].clone();
            let c = cp.value.numerator()[0].clone();
            assert_eq!(d.trace_product(&c), m.hprime().scale(&Gq::from(expect)));
            assert!(d.trace_product(m.basis().c_dxn()).is_zero());
        }
    }

    #[test]
    fn sigma_0_variants() {
        let m = model(4);
        let free = |c: &CliffordElement| {
            [F1, F1Bar, F2, F2Bar].iter().fold(c.clone(), |acc, v| acc.substitute(*v, &Poly::zero()))
        };
        assert_eq!(free(&m.sigma_0(Dirac::D)), m.q_element());
        assert_eq!(free(&m.sigma_0(Dirac::DStar)), m.q_element());
        // swapping f1 -> -f̄1, f2 -> f̄2 turns the D̃ version into the D̃* one
        let swapped = m
            .sigma_0(Dirac::D)
            .substitute(F1, &-Poly::var(F1Bar))
            .substitute(F2, &Poly::var(F2Bar));
        assert_eq!(swapped, m.sigma_0(Dirac::DStar));
    }

    #[test]
    fn leading_inverse_times_symbol_is_one() {
        for n in [4, 6] {
            let m = model(n);
            let q1 = m.sigma_minus1(Dirac::D);
            let prod = m.sigma_1().value.mul(q1.value());
            assert_eq!(prod, Sym::constant(m.basis().identity()));
            let at_zero = &q1.value().numerator()[0];
            assert_eq!(*at_zero, m.basis().c_xi_prime().mul_i());
        }
    }

    #[test]
    fn second_order_composition_vanishes() {
        let m = model(4);
        for w in [Dirac::D, Dirac::DStar] {
            let p1 = m.sigma_1();
            let q1 = m.sigma_minus1(w);
            let q2 = m.sigma_minus2(w).unwrap();
            let p0 = m.constant(m.sigma_0(w));
            let dq1 = q1.jet.d_xn_operator("q1").unwrap();
            let order0 = p1
                .value
                .mul(q2.value())
                .add(&p0.value.mul(q1.value()))
                .add(&p1.value.derivative().mul(&dq1));
            assert!(order0.is_zero());
        }
    }

    #[test]
    fn cube_leading_parts() {
        let m = model(6);
        let s3 = m.sigma_3_cube().unwrap();
        let expect = m.c_xi().value.mul(&norm_sqr(m.basis().identity())).map(|c| c.mul_i());
        assert_eq!(s3.value, expect);
        let q3 = m.sigma_minus3(Cube::DStarDDStar).unwrap();
        assert_eq!(s3.value.mul(q3.value()), Sym::constant(m.basis().identity()));
        assert_eq!(q3.jet, m.sigma_minus3(Cube::DCubed).unwrap().jet);
        assert!(model(4).sigma_3_cube().is_err());
        assert!(model(4).sigma_minus4(Cube::DCubed).is_err());
    }

    #[test]
    fn cube_xi_derivatives() {
        let m = model(6);
        let b = m.basis();
        let q3 = m.sigma_minus3(Cube::DCubed).unwrap();
        let cp = b.c_xi_prime();
        let cn = b.c_dxn().clone();
        let zero = b.zero();
        // i[(20x^2-4)c(ξ') + 12(x^3-x)c(dx_n)] / (1+x^2)^4
        let num2 = vec![
            cp.scale(&gq(0, -4)),
            cn.scale(&gq(0, -12)),
            cp.scale(&gq(0, 20)),
            cn.scale(&gq(0, 12)),
        ];
        assert_eq!(q3.value().derivative_n(2), Sym::new(num2, 4, 4));
        // (-4ix c(ξ') + i(1-3x^2) c(dx_n)) / (1+x^2)^3
        let num1 = vec![cn.scale(&gq(0, 1)), cp.scale(&gq(0, -4)), cn.scale(&gq(0, -3))];
        assert_eq!(q3.value().derivative(), Sym::new(num1, 3, 3));
        let _ = zero;
    }

    #[test]
    fn normal_derivative_of_sigma_minus1() {
        let m = model(4);
        let b = m.basis();
        let q1 = m.sigma_minus1(Dirac::D);
        let cp = b.c_xi_prime();
        let dcp = cp.scale_poly(&m.hprime().scale(&Gq::ratio(1, 2)));
        let c = m.c_xi().value;
        let expect = Sym::constant(dcp.mul_i())
            .mul(&inv_norm_pow(b.identity(), 1))
            .sub(&c.map(|x| x.mul_i().scale_poly(&m.hprime())).mul(&inv_norm_pow(b.identity(), 2)));
        assert_eq!(q1.dxn_derivative().unwrap(), expect);
        assert!(q1.dxprime_derivative(1).is_zero());
        assert!(m.sigma_minus2(Dirac::D).unwrap().dxn_derivative().is_err());
    }

    #[test]
    fn cube_variants_agree_without_perturbation() {
        let m = model(6);
        let a = m.sigma_2_cube(Cube::DStarDDStar).unwrap();
        let b = m.sigma_2_cube(Cube::DCubed).unwrap();
        assert_ne!(a, b);
        assert_eq!(unperturbed(&a), unperturbed(&b));
        // the difference is exactly the difference of the brackets
        let c = m.c_xi().value;
        let nsq = m.norm_sqr().value;
        let x = Sym::constant(m.perturbation(Dirac::D));
        let y = Sym::constant(m.perturbation(Dirac::DStar));
        let cxc = c.mul(&x).mul(&c);
        let ba = nsq.mul(&y).sub(&cxc).scale(&Gq::from(2)).add(&nsq.mul(&y));
        let bb = cxc.sub(&nsq.mul(&x)).scale(&Gq::from(-2));
        assert_eq!(a.sub(&b), ba.sub(&bb));
    }
}
