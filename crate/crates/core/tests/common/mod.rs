//! Helpers shared by the integration tests: random coefficients, an
//! expression generator whose trees print and re-parse to themselves, and
//! exact complex-rational evaluation.

#![allow(dead_code)]

use std::f64::consts::FRAC_PI_2;

use lexineq::cli::parse::{Constraint, Expr, Relation, SourceExpr};
use lexineq::{Complex, InequalityProblem};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::rngs::ChaCha8Rng;
use rand::{RngExt, SeedableRng};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn c(re: f64, im: f64) -> Complex {
    Complex::new(re, im)
}

/// `k / den` with `|k| ≤ max_k`.
pub fn dyadic(rng: &mut ChaCha8Rng, max_k: i32, den: f64) -> f64 {
    f64::from(rng.random_range(-max_k..=max_k)) / den
}

pub fn dyadic_complex(rng: &mut ChaCha8Rng, max_k: i32, den: f64) -> Complex {
    c(dyadic(rng, max_k, den), dyadic(rng, max_k, den))
}

pub fn uniform_complex(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> Complex {
    c(rng.random_range(lo..hi), rng.random_range(lo..hi))
}

/// Uniform in the square `[lo, hi)²` but at least `min_abs` from the origin.
pub fn coefficient(rng: &mut ChaCha8Rng, min_abs: f64) -> Complex {
    loop {
        let z = uniform_complex(rng, -3.0, 3.0);
        if z.abs() >= min_abs {
            return z;
        }
    }
}

/// An angle that is either a quarter turn multiple or arbitrary.
pub fn angle(rng: &mut ChaCha8Rng) -> f64 {
    if rng.random_bool(0.3) {
        FRAC_PI_2 * f64::from(rng.random_range(-2..=2))
    } else {
        rng.random_range(-std::f64::consts::PI..std::f64::consts::PI)
    }
}

/// Random admissible coefficients for each solver class.
pub fn random_problem(rng: &mut ChaCha8Rng, class: usize) -> InequalityProblem {
    match class {
        0 => InequalityProblem::Linear { a: coefficient(rng, 0.25), b: coefficient(rng, 0.0) },
        1 => InequalityProblem::LinearSystem {
            a: coefficient(rng, 0.25),
            b: coefficient(rng, 0.0),
            c: coefficient(rng, 0.25),
            d: coefficient(rng, 0.0),
        },
        2 => loop {
            let (a, b, c, d) = (coefficient(rng, 0.0), coefficient(rng, 0.0), coefficient(rng, 0.0), coefficient(rng, 0.0));
            if (b - a * c).abs() >= 0.25 {
                break InequalityProblem::Fractional { a, b, c, d };
            }
        },
        _ => InequalityProblem::Quadratic { a: coefficient(rng, 0.25), b: coefficient(rng, 0.0), c: coefficient(rng, 0.0) },
    }
}

// ---------------------------------------------------------------------------
// Expression generator
// ---------------------------------------------------------------------------

fn bx(e: Expr) -> Box<Expr> {
    Box::new(e)
}

/// A small dyadic literal: real, imaginary or full complex.
pub fn literal(rng: &mut ChaCha8Rng) -> Expr {
    let re = dyadic(rng, 6, 4.0);
    let im = dyadic(rng, 6, 4.0);
    Expr::Literal(match rng.random_range(0..3) {
        0 => c(re, 0.0),
        1 => c(0.0, im),
        _ => c(re, im),
    })
}

/// `±2^k` or `±2^k i`: dividing by these is exact in floating point.
pub fn power_of_two_unit(rng: &mut ChaCha8Rng) -> Complex {
    let mag = f64::from(2_i32.pow(rng.random_range(0..3))) / if rng.random_bool(0.5) { 1.0 } else { 4.0 };
    let mag = if rng.random_bool(0.5) { -mag } else { mag };
    if rng.random_bool(0.5) {
        c(mag, 0.0)
    } else {
        c(0.0, mag)
    }
}

/// Sum or difference that the parser will not fold into one literal.
fn sum(l: Expr, r: Expr, sub: bool) -> Expr {
    if matches!((&l, &r), (Expr::Literal(_), Expr::Literal(_))) {
        return Expr::Mul(bx(l), bx(r));
    }
    if sub {
        Expr::Sub(bx(l), bx(r))
    } else {
        Expr::Add(bx(l), bx(r))
    }
}

/// Polynomial-valued tree of degree at most `deg` in Z. Divisions are only
/// by powers of two so that normalization stays exact.
pub fn poly_expr(rng: &mut ChaCha8Rng, deg: u32, depth: u32) -> Expr {
    if depth == 0 || rng.random_bool(0.25) {
        return if deg >= 1 && rng.random_bool(0.5) { Expr::Var } else { literal(rng) };
    }
    match rng.random_range(0..7) {
        0 | 1 => {
            let (l, r) = (poly_expr(rng, deg, depth - 1), poly_expr(rng, deg, depth - 1));
            sum(l, r, rng.random_bool(0.5))
        }
        2 | 3 => {
            let d1 = rng.random_range(0..=deg);
            Expr::Mul(bx(poly_expr(rng, d1, depth - 1)), bx(poly_expr(rng, deg - d1, depth - 1)))
        }
        4 => match poly_expr(rng, deg, depth - 1) {
            lit @ Expr::Literal(_) => lit,
            e => Expr::Neg(bx(e)),
        },
        5 if deg >= 2 => Expr::Pow(bx(poly_expr(rng, deg / 2, depth - 1)), 2),
        5 => Expr::Pow(bx(poly_expr(rng, deg, depth - 1)), 1),
        _ => Expr::Div(bx(poly_expr(rng, deg, depth - 1)), bx(Expr::Literal(power_of_two_unit(rng)))),
    }
}

/// `(num)/(p*Z + q)` with `p` a power of two, optionally offset or scaled.
pub fn fraction_expr(rng: &mut ChaCha8Rng, depth: u32) -> Expr {
    let num = poly_expr(rng, 1, depth);
    let p = power_of_two_unit(rng);
    let q = Expr::Literal(dyadic_complex(rng, 6, 4.0));
    let den = match rng.random_range(0..3) {
        0 => Expr::Add(bx(Expr::Var), bx(q)),
        1 => Expr::Add(bx(Expr::Mul(bx(Expr::Literal(p)), bx(Expr::Var))), bx(q)),
        _ => Expr::Sub(bx(Expr::Mul(bx(Expr::Var), bx(Expr::Literal(p)))), bx(q)),
    };
    let frac = Expr::Div(bx(num), bx(den));
    match rng.random_range(0..4) {
        0 => Expr::Add(bx(frac), bx(literal(rng))),
        1 => Expr::Sub(bx(literal(rng)), bx(frac)),
        2 => Expr::Mul(bx(Expr::Literal(power_of_two_unit(rng))), bx(frac)),
        _ => frac,
    }
}

fn constraint(lhs: Expr, rhs: Expr, rng: &mut ChaCha8Rng) -> Constraint {
    // Constraints store lhs >= rhs; a written `<=` has its sides swapped.
    let written = if rng.random_bool(0.5) { Relation::Ge } else { Relation::Le };
    Constraint { lhs, rhs, written }
}

/// A random inequality that normalizes into one of the four classes.
pub fn source_expr(rng: &mut ChaCha8Rng) -> SourceExpr {
    let depth = rng.random_range(1..5);
    let constraints = match rng.random_range(0..4) {
        0 => vec![{
            let (l, r) = (poly_expr(rng, 1, depth), poly_expr(rng, 1, depth));
            constraint(l, r, rng)
        }],
        1 => (0..2)
            .map(|_| {
                let (l, r) = (poly_expr(rng, 1, depth), poly_expr(rng, 1, depth));
                constraint(l, r, rng)
            })
            .collect(),
        2 => vec![{
            let (l, r) = (poly_expr(rng, 2, depth), poly_expr(rng, 2, depth));
            constraint(l, r, rng)
        }],
        _ => vec![{
            let f = fraction_expr(rng, depth);
            let k = literal(rng);
            if rng.random_bool(0.5) {
                constraint(f, k, rng)
            } else {
                constraint(k, f, rng)
            }
        }],
    };
    let mut e = SourceExpr { text: String::new(), constraints };
    e.text = written_form(&e);
    e
}

/// Source text honouring each constraint's written relation.
pub fn written_form(e: &SourceExpr) -> String {
    e.constraints
        .iter()
        .map(|c| match c.written {
            Relation::Ge => format!("{} >= {}", c.lhs, c.rhs),
            Relation::Le => format!("{} <= {}", c.rhs, c.lhs),
        })
        .collect::<Vec<_>>()
        .join(" && ")
}

// ---------------------------------------------------------------------------
// Exact complex rationals
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq)]
pub struct Q {
    pub re: BigRational,
    pub im: BigRational,
}

impl Q {
    pub fn from_complex(z: Complex) -> Q {
        Q { re: BigRational::from_float(z.re).unwrap(), im: BigRational::from_float(z.im).unwrap() }
    }

    pub fn int(n: i64) -> Q {
        Q { re: BigRational::from_integer(BigInt::from(n)), im: BigRational::zero() }
    }

    pub fn add(&self, o: &Q) -> Q {
        Q { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    pub fn sub(&self, o: &Q) -> Q {
        Q { re: &self.re - &o.re, im: &self.im - &o.im }
    }

    pub fn neg(&self) -> Q {
        Q { re: -&self.re, im: -&self.im }
    }

    pub fn mul(&self, o: &Q) -> Q {
        Q { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }

    pub fn div(&self, o: &Q) -> Option<Q> {
        let den = &o.re * &o.re + &o.im * &o.im;
        if den.is_zero() {
            return None;
        }
        let re = (&self.re * &o.re + &self.im * &o.im) / &den;
        let im = (&self.im * &o.re - &self.re * &o.im) / &den;
        Some(Q { re, im })
    }

    /// Dictionary order `self >= 0`.
    pub fn lex_nonneg(&self) -> bool {
        self.re.is_positive() || (self.re.is_zero() && !self.im.is_negative())
    }
}

/// Exact value of an expression tree; `None` at a division by zero.
pub fn eval_exact(e: &Expr, z: &Q) -> Option<Q> {
    Some(match e {
        Expr::Literal(v) => Q::from_complex(*v),
        Expr::Var => z.clone(),
        Expr::Neg(x) => eval_exact(x, z)?.neg(),
        Expr::Add(l, r) => eval_exact(l, z)?.add(&eval_exact(r, z)?),
        Expr::Sub(l, r) => eval_exact(l, z)?.sub(&eval_exact(r, z)?),
        Expr::Mul(l, r) => eval_exact(l, z)?.mul(&eval_exact(r, z)?),
        Expr::Div(l, r) => eval_exact(l, z)?.div(&eval_exact(r, z)?)?,
        Expr::Pow(b, n) => {
            let base = eval_exact(b, z)?;
            (0..*n).fold(Q::int(1), |acc, _| acc.mul(&base))
        }
    })
}

/// Exact `lhs − rhs` of each constraint of a classified problem, in the
/// canonical form the solvers consume.
pub fn canonical_residuals(p: &InequalityProblem, z: &Q) -> Vec<Option<Q>> {
    let q = Q::from_complex;
    match *p {
        InequalityProblem::Linear { a, b } => vec![Some(q(a).mul(z).sub(&q(b)))],
        InequalityProblem::LinearSystem { a, b, c, d } => {
            vec![Some(q(a).mul(z).sub(&q(b))), Some(q(c).mul(z).sub(&q(d)))]
        }
        InequalityProblem::Fractional { a, b, c, d } => {
            vec![q(a).mul(z).add(&q(b)).div(&z.add(&q(c))).map(|v| v.sub(&q(d)))]
        }
        InequalityProblem::Quadratic { a, b, c } => {
            vec![Some(q(a).mul(z).mul(z).add(&q(b).mul(z)).add(&q(c)))]
        }
    }
}
