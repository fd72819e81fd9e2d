//! Floating-point cross-checks of the exact line and sphere integrals.
//! Nothing in the exact pipeline depends on this module.

use num::complex::Complex64;
use num::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use wres_core::ratfun::RatFun;
use wres_core::scalar::Gq;
use wres_core::sphere::moment;

/// Evaluates `f` at a real point.
pub fn eval(f: &RatFun<Gq>, x: f64) -> Complex64 {
    let z = Complex64::new(x, 0.0);
    let num = f.numerator().iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| {
        let (re, im) = c.to_f64_pair();
        acc * z + Complex64::new(re, im)
    });
    let i = Complex64::i();
    num / ((z - i).powu(f.pole_up()) * (z + i).powu(f.pole_down()))
}

/// `∫_R f` by tanh-sinh quadrature after `x = tan θ`.
pub fn quadrature(f: &RatFun<Gq>) -> Complex64 {
    let h = std::f64::consts::FRAC_PI_2;
    let integrand = |theta: f64| {
        let c = theta.cos();
        eval(f, theta.tan()) / (c * c)
    };
    let re = quadrature::integrate(|t| integrand(t).re, -h, h, 1e-14).integral;
    let im = quadrature::integrate(|t| integrand(t).im, -h, h, 1e-14).integral;
    Complex64::new(re, im)
}

/// The exact integral as a complex number (`integrate_line` returns the `π` coefficient).
pub fn exact(f: &RatFun<Gq>) -> Complex64 {
    let c = f.integrate_line().expect("admissible").unwrap_or_default();
    let (re, im) = c.to_f64_pair();
    Complex64::new(re, im) * std::f64::consts::PI
}

/// A random function with poles only at `±i` and decay of order at least 2.
pub fn random_ratfun(rng: &mut impl Rng) -> RatFun<Gq> {
    loop {
        let deg = rng.gen_range(0..5usize);
        let up = rng.gen_range(0..5u32);
        let down = rng.gen_range(0..5u32);
        if (up + down) as usize >= deg + 2 {
            let num = (0..=deg)
                .map(|_| {
                    let re = Gq::ratio(rng.gen_range(-12..13), rng.gen_range(1..7));
                    let im = Gq::ratio(rng.gen_range(-12..13), rng.gen_range(1..7));
                    &re + &im.mul_i()
                })
                .collect();
            let f = RatFun::new(num, up, down);
            if !f.is_zero() {
                return f;
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct LineReport {
    pub trials: usize,
    pub max_deviation: f64,
    pub worst: String,
}

#[derive(Clone, Debug)]
pub struct MomentReport {
    pub d: usize,
    pub exponents: Vec<u32>,
    pub exact: f64,
    pub estimate: f64,
    pub std_err: f64,
}

impl MomentReport {
    pub fn passed(&self) -> bool {
        (self.estimate - self.exact).abs() <= 3.0 * self.std_err + 1e-15
    }
}

/// Relative deviation; absolute when the exact value vanishes.
pub fn deviation(exact: Complex64, numeric: Complex64) -> f64 {
    let scale = exact.norm();
    let err = (exact - numeric).norm();
    if scale == 0.0 {
        err
    } else {
        err / scale
    }
}

pub fn check_line_integrals(seed: u64, trials: usize) -> LineReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = LineReport { trials, max_deviation: 0.0, worst: String::new() };
    for _ in 0..trials {
        let f = random_ratfun(&mut rng);
        let dev = deviation(exact(&f), quadrature(&f));
        if dev >= report.max_deviation {
            report.max_deviation = dev;
            report.worst = f.to_string();
        }
    }
    report
}

const MOMENT_CASES: &[&[u32]] = &[
    &[0, 0, 0],
    &[2, 0, 0],
    &[4, 0, 0],
    &[2, 2, 0],
    &[1, 1, 0],
    &[2, 2, 2],
    &[0, 0, 0, 0, 0],
    &[2, 0, 0, 0, 0],
    &[4, 0, 0, 0, 0],
    &[2, 2, 0, 0, 0],
    &[2, 0, 2, 2, 0],
    &[3, 1, 0, 0, 0],
];

/// Monte Carlo averages of `ξ^α` over uniform points of `S^{d-1}`.
pub fn check_moments(seed: u64, samples: usize) -> Vec<MomentReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    MOMENT_CASES
        .iter()
        .map(|exps| {
            let d = exps.len();
            let (mut sum, mut sum_sq) = (0.0, 0.0);
            for _ in 0..samples {
                let v: Vec<f64> = (0..d).map(|_| rng.sample(StandardNormal)).collect();
                let r = v.iter().map(|x| x * x).sum::<f64>().sqrt();
                let m: f64 = v.iter().zip(exps.iter()).map(|(x, &e)| (x / r).powi(e as i32)).product();
                sum += m;
                sum_sq += m * m;
            }
            let k = samples as f64;
            let mean = sum / k;
            let var = (sum_sq / k - mean * mean).max(0.0);
            MomentReport {
                d,
                exponents: exps.to_vec(),
                exact: moment(exps, d).to_f64().unwrap(),
                estimate: mean,
                std_err: (var / k).sqrt(),
            }
        })
        .collect()
}
