//! Complexified Clifford algebra of an even rank `n`, realised by explicit
//! gamma matrices of size `2^{n/2}` with `c(e_i)c(e_j) + c(e_j)c(e_i) = -2δ_ij`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{Indeterminate, Poly, PolyRing};
use crate::scalar::Gq;

/// A `2^{n/2} × 2^{n/2}` matrix of polynomials, row-major.
///
/// Products reduce entries to sphere normal form, so two elements that agree
/// on `|ξ'| = 1` compare equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CliffordElement {
    ring: PolyRing,
    size: usize,
    entries: Vec<Poly>,
}

impl CliffordElement {
    pub fn zero(ring: PolyRing) -> Self {
        let size = spinor_size(ring.dim());
        Self {
            ring,
            size,
            entries: vec![Poly::zero(); size * size],
        }
    }

    pub fn identity(ring: PolyRing) -> Self {
        Self::scalar(ring, Poly::one())
    }

    /// `p · Identity`.
    pub fn scalar(ring: PolyRing, p: Poly) -> Self {
        let mut out = Self::zero(ring);
        for i in 0..out.size {
            out.entries[i * out.size + i] = p.clone();
        }
        out
    }

    pub fn ring(&self) -> PolyRing {
        self.ring
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn entry(&self, row: usize, col: usize) -> &Poly {
        &self.entries[row * self.size + col]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    fn same_algebra(&self, rhs: &Self) {
        assert_eq!(self.ring, rhs.ring, "Clifford elements of different rank");
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> Self {
        Self {
            ring: self.ring,
            size: self.size,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn scale(&self, c: &Gq) -> Self {
        self.map(|p| p.scale(c))
    }

    pub fn mul_i(&self) -> Self {
        self.map(Poly::mul_i)
    }

    /// `p · self`, reduced on the sphere.
    pub fn scale_poly(&self, p: &Poly) -> Self {
        let ring = self.ring;
        self.map(|e| ring.normal_form(&(e * p)))
    }

    pub fn substitute(&self, v: Indeterminate, value: &Poly) -> Self {
        let ring = self.ring;
        self.map(|e| ring.normal_form(&e.substitute(v, value)))
    }

    /// Matrix trace in sphere normal form. `trace(Identity) = 2^{n/2}`.
    pub fn trace(&self) -> Poly {
        let mut acc = Poly::zero();
        for i in 0..self.size {
            acc += self.entry(i, i);
        }
        self.ring.normal_form(&acc)
    }

    /// `trace(self · rhs)` without forming the product.
    pub fn trace_product(&self, rhs: &Self) -> Poly {
        self.same_algebra(rhs);
        let s = self.size;
        let mut acc = Poly::zero();
        for i in 0..s {
            for j in 0..s {
                let (a, b) = (&self.entries[i * s + j], &rhs.entries[j * s + i]);
                if !a.is_zero() && !b.is_zero() {
                    acc += &(a * b);
                }
            }
        }
        self.ring.normal_form(&acc)
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.check_rank(rhs)?;
        Ok(self + rhs)
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        self.check_rank(rhs)?;
        Ok(self * rhs)
    }

    fn check_rank(&self, rhs: &Self) -> Result<()> {
        if self.ring != rhs.ring {
            return Err(Error::UnsupportedDimension(rhs.ring.dim()));
        }
        Ok(())
    }
}

impl<'a> Add<&'a CliffordElement> for &'a CliffordElement {
    type Output = CliffordElement;
    fn add(self, rhs: &CliffordElement) -> CliffordElement {
        self.same_algebra(rhs);
        CliffordElement {
            ring: self.ring,
            size: self.size,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl<'a> Sub<&'a CliffordElement> for &'a CliffordElement {
    type Output = CliffordElement;
    fn sub(self, rhs: &CliffordElement) -> CliffordElement {
        self.same_algebra(rhs);
        CliffordElement {
            ring: self.ring,
            size: self.size,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl<'a> Mul<&'a CliffordElement> for &'a CliffordElement {
    type Output = CliffordElement;
    fn mul(self, rhs: &CliffordElement) -> CliffordElement {
        self.same_algebra(rhs);
        let s = self.size;
        let mut entries = vec![Poly::zero(); s * s];
        for i in 0..s {
            for k in 0..s {
                let a = &self.entries[i * s + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..s {
                    let b = &rhs.entries[k * s + j];
                    if !b.is_zero() {
                        entries[i * s + j] += &(a * b);
                    }
                }
            }
        }
        let ring = self.ring;
        CliffordElement {
            ring,
            size: s,
            entries: entries.iter().map(|e| ring.normal_form(e)).collect(),
        }
    }
}

impl Neg for &CliffordElement {
    type Output = CliffordElement;
    fn neg(self) -> CliffordElement {
        self.map(|p| -p)
    }
}

impl Neg for CliffordElement {
    type Output = CliffordElement;
    fn neg(self) -> CliffordElement {
        -&self
    }
}

macro_rules! forward_cl {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for CliffordElement {
            type Output = CliffordElement;
            fn $m(self, rhs: CliffordElement) -> CliffordElement {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_cl!(Add add, Sub sub, Mul mul);

impl fmt::Debug for CliffordElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CliffordElement(n={}) [", self.ring.dim())?;
        for i in 0..self.size {
            let row: Vec<String> = (0..self.size).map(|j| self.entry(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

fn spinor_size(n: usize) -> usize {
    1 << (n / 2)
}

/// The generators `c(e_1), …, c(e_n)`; `c(e_n) = c(dx_n)` is the normal direction.
#[derive(Clone, Debug)]
pub struct GammaBasis {
    ring: PolyRing,
    gammas: Vec<CliffordElement>,
}

type CMat = Vec<Vec<Gq>>;

fn kron(a: &CMat, b: &CMat) -> CMat {
    let (ra, rb) = (a.len(), b.len());
    let mut out = vec![vec![Gq::zero(); ra * rb]; ra * rb];
    for i in 0..ra {
        for j in 0..ra {
            for k in 0..rb {
                for l in 0..rb {
                    out[i * rb + k][j * rb + l] = &a[i][j] * &b[k][l];
                }
            }
        }
    }
    out
}

impl GammaBasis {
    /// Iterated Kronecker products of Pauli matrices, each multiplied by `i`
    /// so that the generators square to `-1`.
    pub fn new(n: usize) -> Result<Self> {
        if !n.is_multiple_of(2) || n < 2 {
            return Err(Error::UnsupportedDimension(n));
        }
        let ring = PolyRing::new(n)?;
        let g = |a: i64, b: i64| Gq::from_ints(a, b);
        let id: CMat = vec![vec![g(1, 0), g(0, 0)], vec![g(0, 0), g(1, 0)]];
        let s1: CMat = vec![vec![g(0, 0), g(1, 0)], vec![g(1, 0), g(0, 0)]];
        let s2: CMat = vec![vec![g(0, 0), g(0, -1)], vec![g(0, 1), g(0, 0)]];
        let s3: CMat = vec![vec![g(1, 0), g(0, 0)], vec![g(0, 0), g(-1, 0)]];
        let m = n / 2;
        let mut gammas = Vec::with_capacity(n);
        for k in 0..m {
            for pauli in [&s1, &s2] {
                let mut mat: CMat = vec![vec![g(1, 0)]];
                for slot in 0..m {
                    let factor = match slot.cmp(&k) {
                        std::cmp::Ordering::Less => &s3,
                        std::cmp::Ordering::Equal => pauli,
                        std::cmp::Ordering::Greater => &id,
                    };
                    mat = kron(&mat, factor);
                }
                let mut el = CliffordElement::zero(ring);
                for (r, row) in mat.iter().enumerate() {
                    for (c, v) in row.iter().enumerate() {
                        el.entries[r * el.size + c] = Poly::constant(v.mul_i());
                    }
                }
                gammas.push(el);
            }
        }
        Ok(Self { ring, gammas })
    }

    pub fn dim(&self) -> usize {
        self.ring.dim()
    }

    pub fn ring(&self) -> PolyRing {
        self.ring
    }

    pub fn identity(&self) -> CliffordElement {
        CliffordElement::identity(self.ring)
    }

    pub fn zero(&self) -> CliffordElement {
        CliffordElement::zero(self.ring)
    }

    pub fn scalar(&self, p: Poly) -> CliffordElement {
        CliffordElement::scalar(self.ring, p)
    }

    /// `c(e_i)`, 1-based.
    pub fn gamma(&self, i: usize) -> &CliffordElement {
        &self.gammas[i - 1]
    }

    /// `c(dx_n) = c(e_n)`.
    pub fn c_dxn(&self) -> &CliffordElement {
        self.gamma(self.dim())
    }

    /// `Σ_i coeffs[i] c(e_{i+1})`.
    pub fn clifford_of_covector(&self, coeffs: &[Poly]) -> Result<CliffordElement> {
        if coeffs.len() != self.dim() {
            return Err(Error::UnsupportedDimension(coeffs.len()));
        }
        let mut out = self.zero();
        for (k, c) in coeffs.iter().enumerate() {
            if !c.is_zero() {
                out = &out + &self.gammas[k].map(|e| e * c);
            }
        }
        Ok(out)
    }

    /// `c(ξ') = Σ_{i<n} ξ_i c(e_i)` with symbolic `ξ_i`.
    pub fn c_xi_prime(&self) -> CliffordElement {
        let n = self.dim();
        let mut coeffs: Vec<Poly> = (1..n).map(|i| Poly::var(self.ring.xi(i))).collect();
        coeffs.push(Poly::zero());
        self.clifford_of_covector(&coeffs).expect("length n")
    }

    /// `A = Σ_{u<v} P(u,v) c(e_u) c(e_v)`.
    pub fn perturbation_a(&self) -> CliffordElement {
        let mut out = self.zero();
        for (u, v) in self.ring.pairs() {
            let prod = self.gamma(u as usize) * self.gamma(v as usize);
            out = &out + &prod.map(|e| e * &Poly::var(Indeterminate::P(u, v)));
        }
        out
    }

    /// `Σ_{u<v} P(u,v)^2`.
    pub fn pair_norm_sqr(&self) -> Poly {
        self.ring
            .pairs()
            .into_iter()
            .map(|(u, v)| {
                let p = Poly::var(Indeterminate::P(u, v));
                &p * &p
            })
            .sum()
    }
}
