//! One line per acceptance criterion. Exits nonzero if any criterion fails.

use std::collections::BTreeMap;
use std::process::ExitCode;

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use wres_cli::fixtures::{Fixtures, InteriorFixture};
use wres_cli::oracle;
use wres_cli::report::interior_op;
use wres_core::boundary::{evaluate_pairing, total, CaseLabel, CaseResult, Pairing};
use wres_core::clifford::GammaBasis;
use wres_core::interior::{closed_form_braces, trace_identity_suite, wres_integrand, BraceCoefficients, BraceTerm};
use wres_core::poly::{Indeterminate, Poly, PolyRing};
use wres_core::ratfun::RatFun;
use wres_core::scalar::{parse_rational, rat, Gq};
use wres_core::sphere::moment;
use wres_core::symbols::{BoundaryModel, Cube};

struct Criterion {
    failures: Vec<String>,
}

impl Criterion {
    fn new() -> Self {
        Self { failures: Vec::new() }
    }

    fn check<T: PartialEq + std::fmt::Display>(&mut self, what: &str, expected: T, got: T) {
        if expected != got {
            self.failures.push(format!("{what}: expected {expected}, got {got}"));
        }
    }

    fn require(&mut self, what: &str, ok: bool) {
        if !ok {
            self.failures.push(what.to_string());
        }
    }
}

fn gq(re: &str, im: &str) -> Gq {
    Gq::parse_parts(re, im).unwrap()
}

fn case_sum(results: &[CaseResult], labels: &[CaseLabel]) -> Gq {
    let picked: Vec<CaseResult> = results.iter().filter(|r| labels.contains(&r.label)).cloned().collect();
    if picked.is_empty() {
        return Gq::default();
    }
    wres_core::boundary::in_units(&total(&picked)).expect("π h' Ω multiple")
}

fn cases(pairing: Pairing) -> Vec<CaseResult> {
    let model = BoundaryModel::new(pairing.dimension()).unwrap();
    evaluate_pairing(&model, pairing, None).unwrap()
}

fn each_case(c: &mut Criterion, prefix: &str, results: &[CaseResult], expected: &[(&str, &str)]) {
    for (label, (re, im)) in CaseLabel::ALL.iter().zip(expected) {
        c.check(&format!("{prefix}{}", label.index()), gq(re, im), case_sum(results, &[*label]));
    }
}

fn criterion_1() -> Criterion {
    let mut c = Criterion::new();
    let r = cases(Pairing::DInvDStarInv);
    each_case(&mut c, "Phi", &r, &[("0", "0"), ("-3/8", "0"), ("3/8", "0"), ("9/8", "0"), ("-9/8", "0")]);
    c.check("Phi", gq("0", "0"), case_sum(&r, &CaseLabel::ALL));
    c
}

fn fixture_coefficients(f: &InteriorFixture) -> BraceCoefficients {
    f.coefficients
        .iter()
        .map(|(k, v)| {
            let t = BraceTerm::ALL.into_iter().find(|t| t.name() == k).unwrap();
            (t, Gq::real(parse_rational(v).unwrap()))
        })
        .filter(|(_, v)| *v != Gq::default())
        .collect()
}

fn compare_braces(c: &mut Criterion, id: &str, expected: &BraceCoefficients, got: &BraceCoefficients) {
    for t in BraceTerm::ALL {
        let zero = Gq::default();
        c.check(&format!("{id} [{t}]"), expected.get(&t).unwrap_or(&zero), got.get(&t).unwrap_or(&zero));
    }
}

fn interior_against_fixture(c: &mut Criterion, id: &str) {
    let fx = Fixtures::embedded();
    let f = fx.interior.iter().find(|f| f.id == id).unwrap();
    let integrand = wres_integrand(f.n, interior_op(f.n, &f.which).unwrap()).unwrap();
    c.check(&format!("{id} prefactor"), parse_rational(&f.prefactor).unwrap(), integrand.prefactor.clone());
    c.check(&format!("{id} pi power"), f.pi_pow, integrand.pi_pow);
    compare_braces(c, id, &fixture_coefficients(f), &integrand.coefficients().unwrap());
}

fn criterion_2() -> Criterion {
    let mut c = Criterion::new();
    interior_against_fixture(&mut c, "interior-dstar-d-4");
    c
}

const PSI4: (&str, &str) = ("-195/64", "-41/64");
const PSI_TOTAL: (&str, &str) = ("65/64", "-41/64");

fn criterion_3() -> Criterion {
    let mut c = Criterion::new();
    let r = cases(Pairing::DInvCubeInv);
    each_case(&mut c, "Psi", &r, &[("0", "0"), ("-15/16", "0"), ("25/16", "0"), PSI4, ("55/16", "0")]);
    c.check("Psi", gq(PSI_TOTAL.0, PSI_TOTAL.1), case_sum(&r, &CaseLabel::ALL));
    c
}

fn criterion_4() -> Criterion {
    use CaseLabel::*;
    let mut c = Criterion::new();
    let r = cases(Pairing::DInvD3);
    c.check("Psibar1+2+3", gq("5/8", "0"), case_sum(&r, &[AI, AII, AIII]));
    c.check("Psibar4", gq(PSI4.0, PSI4.1), case_sum(&r, &[B]));
    c.check("Psibar5", gq("55/16", "0"), case_sum(&r, &[C]));
    c.check("Psibar", gq(PSI_TOTAL.0, PSI_TOTAL.1), case_sum(&r, &CaseLabel::ALL));
    c
}

fn criterion_5() -> Criterion {
    let mut c = Criterion::new();
    interior_against_fixture(&mut c, "interior-dstar-d-squared-6");
    interior_against_fixture(&mut c, "interior-d4-6");
    c
}

fn criterion_6() -> Criterion {
    let mut c = Criterion::new();
    for n in [4, 6] {
        for check in trace_identity_suite(n).unwrap() {
            c.check(&format!("n={n} {}", check.name), check.expected, check.got);
        }
    }
    c
}

fn criterion_7() -> Criterion {
    let mut c = Criterion::new();
    let fx = Fixtures::embedded();
    for f in &fx.interior {
        let op = interior_op(f.n, &f.which).unwrap();
        let closed = closed_form_braces(f.n, op).unwrap();
        compare_braces(&mut c, &format!("closed form vs {}", f.id), &fixture_coefficients(f), &closed);
    }
    let model = BoundaryModel::new(6).unwrap();
    let a = model.sigma_minus3(Cube::DStarDDStar).unwrap();
    let b = model.sigma_minus3(Cube::DCubed).unwrap();
    c.require("sigma_-3 values agree", a.value() == b.value());
    c.require("sigma_-3 normal derivatives agree", a.dxn_derivative().unwrap() == b.dxn_derivative().unwrap());
    c
}

fn arb_ratfun() -> impl Strategy<Value = RatFun<Gq>> {
    (prop::collection::vec((-9i64..10, -9i64..10, 1i64..5), 0..6), 0u32..4, 0u32..4).prop_map(|(cs, a, b)| {
        let num = cs.into_iter().map(|(re, im, d)| &Gq::ratio(re, d) + &Gq::ratio(im, d).mul_i()).collect();
        RatFun::new(num, a, b)
    })
}

fn decaying(f: RatFun<Gq>) -> RatFun<Gq> {
    let extra = f.degree().unwrap_or(0) as u32 + 2;
    f.mul(&RatFun::new(vec![Gq::from(1)], extra.div_ceil(2), extra / 2 + 1))
}

fn run_property<S: Strategy>(
    c: &mut Criterion,
    name: &str,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) {
    let mut runner = TestRunner::new(Config { cases: 100, failure_persistence: None, ..Config::default() });
    if let Err(e) = runner.run(&strategy, test) {
        c.failures.push(format!("{name}: {e}"));
    }
}

fn criterion_8() -> Criterion {
    let mut c = Criterion::new();
    run_property(&mut c, "pi+ idempotence", arb_ratfun(), |f| {
        let f = decaying(f);
        let p = f.pi_plus().unwrap();
        prop_assert_eq!(p.pi_plus().unwrap(), p.clone());
        prop_assert_eq!(p.add(&f.pi_minus().unwrap()), f);
        Ok(())
    });
    run_property(&mut c, "partial-fraction round trip", arb_ratfun(), |f| {
        prop_assert_eq!(f.partial_fractions().assemble(), f);
        Ok(())
    });
    run_property(&mut c, "Leibniz rule", (arb_ratfun(), arb_ratfun()), |(f, h)| {
        prop_assert_eq!(f.mul(&h).derivative(), f.derivative().mul(&h).add(&f.mul(&h.derivative())));
        Ok(())
    });
    let element = |n: usize| {
        prop::collection::vec((1usize..=n, 1usize..=n, -5i64..6, 0u32..3), 1..5).prop_map(move |terms| {
            let b = GammaBasis::new(n).unwrap();
            let mut out = b.zero();
            for (i, j, k, e) in terms {
                let mut coeff = Poly::constant(Gq::from(k));
                for _ in 0..e {
                    coeff = &coeff * &Poly::var(Indeterminate::Xi(2));
                }
                out = &out + &(b.gamma(i) * b.gamma(j)).scale_poly(&(&coeff + &Poly::var(Indeterminate::F2)));
            }
            out
        })
    };
    run_property(&mut c, "trace cyclicity", (element(6), element(6), element(6)), |(x, y, z)| {
        prop_assert_eq!((&(&x * &y) * &z).trace(), (&(&y * &z) * &x).trace());
        Ok(())
    });
    run_property(&mut c, "odd moments vanish", (prop::collection::vec(0u32..6, 5), 0usize..5), |(mut e, i)| {
        e[i] |= 1;
        prop_assert_eq!(moment(&e, 5), rat(0, 1));
        Ok(())
    });
    run_property(&mut c, "moment(xi_i^2) sums to moment(1)", prop::collection::vec(0u32..4, 3..6), |e| {
        let d = e.len();
        let mut sum = rat(0, 1);
        for i in 0..d {
            let mut f = e.clone();
            f[i] += 2;
            sum += moment(&f, d);
        }
        prop_assert_eq!(sum, moment(&e, d));
        Ok(())
    });
    let full: Vec<_> = Pairing::ALL.iter().map(|&p| cases(p)).collect();
    let bare: Vec<_> = Pairing::ALL
        .iter()
        .map(|&p| evaluate_pairing(&BoundaryModel::unperturbed(p.dimension()).unwrap(), p, None).unwrap())
        .collect();
    let rational = (-30i64..31, 1i64..9).prop_map(|(a, b)| Gq::ratio(a, b));
    run_property(
        &mut c,
        "f1 = f2 = 0 leaves boundary cases invariant",
        (rational.clone(), rational.clone(), prop::collection::vec(rational, 15)),
        |(f1, f2, p)| {
            use Indeterminate::*;
            for (fs, bs) in full.iter().zip(&bare) {
                for (a, b) in fs.iter().zip(bs) {
                    let ring = PolyRing::new(a.spec.n).unwrap();
                    let mut v = a.value.coefficient.clone();
                    for (x, val) in [(F1, &f1), (F1Bar, &f1), (F2, &f2), (F2Bar, &f2)] {
                        v = v.substitute_scalar(x, val);
                    }
                    for ((u, w), val) in ring.pairs().into_iter().zip(&p) {
                        v = v.substitute_scalar(P(u, w), val);
                    }
                    prop_assert_eq!(&v, &b.value.coefficient);
                }
            }
            Ok(())
        },
    );
    c
}

fn criterion_9() -> Criterion {
    let mut c = Criterion::new();
    let line = oracle::check_line_integrals(1, 100);
    c.require(
        &format!("max relative deviation {:.3e} >= 1e-9 (worst {})", line.max_deviation, line.worst),
        line.max_deviation < 1e-9,
    );
    for m in oracle::check_moments(1, 200_000) {
        c.require(
            &format!("moment {:?}: {} vs {} ± 3·{:.2e}", m.exponents, m.exact, m.estimate, m.std_err),
            m.passed(),
        );
    }
    c
}

type Check = (&'static str, fn() -> Criterion);

fn main() -> ExitCode {
    let criteria: [Check; 9] = [
        ("n=4 boundary cases and total", criterion_1),
        ("n=4 interior integrand of D*D", criterion_2),
        ("n=6 boundary, pairing d1-cubeinv", criterion_3),
        ("n=6 boundary, pairing d1-d3", criterion_4),
        ("n=6 interior integrands", criterion_5),
        ("trace identities", criterion_6),
        ("closed forms and sigma_-3 agreement", criterion_7),
        ("property suites, 100 instances each", criterion_8),
        ("numeric oracle", criterion_9),
    ];
    let mut summary = BTreeMap::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let c = run();
        let status = if c.failures.is_empty() { "PASS" } else { "FAIL" };
        println!("{status} criterion {}: {name}", i + 1);
        for f in &c.failures {
            println!("     {f}");
        }
        summary.insert(i + 1, c.failures.is_empty());
    }
    let failed = summary.values().filter(|ok| !**ok).count();
    println!("{} of {} criteria passed", summary.len() - failed, summary.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
