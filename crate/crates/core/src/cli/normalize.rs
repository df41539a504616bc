//! Reduces parsed inequalities to one of the four solvable classes.
//!
//! Each side is normalized to a rational function `N(Z)/D(Z)` with complex
//! polynomial coefficients, then the shape of `lhs − rhs` decides the class.

use serde::{Deserialize, Serialize};

use super::parse::{Expr, SourceExpr};
use crate::lexorder::Complex;
use crate::solver::InequalityProblem;

/// Degrees above this are rejected before any polynomial is expanded.
const MAX_DEGREE: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassifyError {
    #[error("unsupported form: {0}")]
    UnsupportedForm(String),
    #[error("expression divides by an identically zero quantity")]
    DivisionByZero,
}

/// Dense polynomial, lowest degree first, with no trailing zero terms.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Poly(Vec<Complex>);

impl Poly {
    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn constant(c: Complex) -> Self {
        Poly::from_coeffs(vec![c])
    }

    pub fn var() -> Self {
        Poly(vec![Complex::ZERO, Complex::ONE])
    }

    pub fn from_coeffs(mut coeffs: Vec<Complex>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn coeffs(&self) -> &[Complex] {
        &self.0
    }

    /// Coefficient of `Z^k` (zero past the end).
    pub fn coeff(&self, k: usize) -> Complex {
        self.0.get(k).copied().unwrap_or(Complex::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn degree_or_zero(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn eval(&self, z: Complex) -> Complex {
        self.0.iter().rev().fold(Complex::ZERO, |acc, &c| acc * z + c)
    }

    fn zip_with(&self, other: &Poly, f: impl Fn(Complex, Complex) -> Complex) -> Poly {
        let n = self.0.len().max(other.0.len());
        Poly::from_coeffs((0..n).map(|k| f(self.coeff(k), other.coeff(k))).collect())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|&c| -c).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Complex::ZERO; self.0.len() + other.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            for (j, &b) in other.0.iter().enumerate() {
                out[i + j] = out[i + j] + a * b;
            }
        }
        Poly::from_coeffs(out)
    }

    /// Divides every coefficient by a nonzero constant.
    pub fn div_const(&self, c: Complex) -> Poly {
        Poly::from_coeffs(self.0.iter().map(|&a| a.checked_div(c).expect("divisor checked nonzero")).collect())
    }

    fn lowest_nonzero(&self) -> usize {
        self.0.iter().position(|c| !c.is_zero()).unwrap_or(0)
    }

    fn shift_down(&self, k: usize) -> Poly {
        Poly(self.0[k..].to_vec())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Rational {
    pub num: Poly,
    pub den: Poly,
}

impl Rational {
    fn poly(p: Poly) -> Self {
        Rational { num: p, den: Poly::constant(Complex::ONE) }
    }

    fn degree_bound(&self) -> usize {
        self.num.degree_or_zero().max(self.den.degree_or_zero())
    }

    fn add(&self, o: &Rational, sub: bool) -> Rational {
        let combine = |l: &Poly, r: &Poly| if sub { l.sub(r) } else { l.add(r) };
        let out = if self.den == o.den {
            Rational { num: combine(&self.num, &o.num), den: self.den.clone() }
        } else {
            Rational { num: combine(&self.num.mul(&o.den), &o.num.mul(&self.den)), den: self.den.mul(&o.den) }
        };
        out.cancel_monomial()
    }

    fn mul(&self, o: &Rational) -> Rational {
        Rational { num: self.num.mul(&o.num), den: self.den.mul(&o.den) }.cancel_monomial()
    }

    fn div(&self, o: &Rational) -> Result<Rational, ClassifyError> {
        if o.num.is_zero() {
            return Err(ClassifyError::DivisionByZero);
        }
        Ok(Rational { num: self.num.mul(&o.den), den: self.den.mul(&o.num) }.cancel_monomial())
    }

    /// Removes a common factor `Z^k` from numerator and denominator.
    fn cancel_monomial(self) -> Rational {
        if self.num.is_zero() {
            return self;
        }
        let k = self.num.lowest_nonzero().min(self.den.lowest_nonzero());
        if k == 0 {
            return self;
        }
        Rational { num: self.num.shift_down(k), den: self.den.shift_down(k) }
    }

    pub fn is_constant(&self) -> bool {
        self.num.degree_or_zero() == 0 && self.den.degree() == Some(0)
    }

    pub fn eval(&self, z: Complex) -> Option<Complex> {
        self.num.eval(z).checked_div(self.den.eval(z)).ok()
    }
}

/// Converts an expression tree into `N(Z)/D(Z)`.
pub fn to_rational(e: &Expr) -> Result<Rational, ClassifyError> {
    Ok(match e {
        Expr::Literal(c) => Rational::poly(Poly::constant(*c)),
        Expr::Var => Rational::poly(Poly::var()),
        Expr::Neg(x) => {
            let r = to_rational(x)?;
            Rational { num: r.num.neg(), den: r.den }
        }
        Expr::Add(l, r) => to_rational(l)?.add(&to_rational(r)?, false),
        Expr::Sub(l, r) => to_rational(l)?.add(&to_rational(r)?, true),
        Expr::Mul(l, r) => to_rational(l)?.mul(&to_rational(r)?),
        Expr::Div(l, r) => to_rational(l)?.div(&to_rational(r)?)?,
        Expr::Pow(b, n) => {
            let base = to_rational(b)?;
            let n = *n as usize;
            if base.degree_bound().saturating_mul(n) > MAX_DEGREE {
                return Err(ClassifyError::UnsupportedForm(format!("degree exceeds {MAX_DEGREE}")));
            }
            let mut acc = Rational::poly(Poly::constant(Complex::ONE));
            for _ in 0..n {
                acc = acc.mul(&base);
            }
            acc
        }
    })
}

/// A classified problem plus how it was obtained.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Classified {
    pub problem: InequalityProblem,
    /// Per constraint: the leading denominator coefficient divided out to
    /// make the denominator monic (`Z + C`), or the constant denominator of
    /// a polynomial side. `None` when nothing was divided out.
    pub denominator_scale: Vec<Option<Complex>>,
    /// Human-readable normalized shape, e.g. `quadratic: A Z^2 + B Z + C >= 0`.
    pub shape: String,
}

struct Single {
    problem: InequalityProblem,
    scale: Option<Complex>,
}

/// Moves everything to one side, normalizes, and matches one of the four
/// solvable shapes.
pub fn classify_problem(e: &SourceExpr) -> Result<Classified, ClassifyError> {
    let singles = e.constraints.iter().map(|c| classify_one(&c.lhs, &c.rhs)).collect::<Result<Vec<_>, _>>()?;
    match singles.as_slice() {
        [one] => Ok(Classified { problem: one.problem, denominator_scale: vec![one.scale], shape: shape_of(&one.problem) }),
        [first, second] => match (first.problem, second.problem) {
            (InequalityProblem::Linear { a, b }, InequalityProblem::Linear { a: c, b: d }) => {
                let problem = InequalityProblem::LinearSystem { a, b, c, d };
                let denominator_scale = vec![first.scale, second.scale];
                Ok(Classified { problem, denominator_scale, shape: shape_of(&problem) })
            }
            _ => Err(ClassifyError::UnsupportedForm("a system must consist of two linear inequalities".into())),
        },
        _ => Err(ClassifyError::UnsupportedForm(format!(
            "systems are limited to two linear inequalities, got {}",
            singles.len()
        ))),
    }
}

fn shape_of(p: &InequalityProblem) -> String {
    match p {
        InequalityProblem::Linear { .. } => "linear: A*Z - B >= 0".into(),
        InequalityProblem::LinearSystem { .. } => "linear system: A*Z - B >= 0 && C*Z - D >= 0".into(),
        InequalityProblem::Fractional { .. } => "fractional: (A*Z + B)/(Z + C) >= D".into(),
        InequalityProblem::Quadratic { .. } => "quadratic: A*Z^2 + B*Z + C >= 0".into(),
    }
}

fn classify_one(lhs: &Expr, rhs: &Expr) -> Result<Single, ClassifyError> {
    let left = to_rational(lhs)?;
    let right = to_rational(rhs)?;
    let combined = left.add(&right, true);
    match combined.den.degree() {
        Some(0) => polynomial(&combined),
        Some(1) => {
            // Keep a constant right side as D, matching (AZ+B)/(Z+C) >= D.
            if right.is_constant() && left.den.degree() == Some(1) {
                let d = right.num.coeff(0).checked_div(right.den.coeff(0)).expect("nonzero constant denominator");
                fractional(&left, d)
            } else {
                fractional(&combined, Complex::ZERO)
            }
        }
        Some(k) => Err(ClassifyError::UnsupportedForm(format!("denominator of degree {k}"))),
        None => Err(ClassifyError::DivisionByZero),
    }
}

fn polynomial(r: &Rational) -> Result<Single, ClassifyError> {
    let d0 = r.den.coeff(0);
    let (p, scale) = if d0 == Complex::ONE { (r.num.clone(), None) } else { (r.num.div_const(d0), Some(d0)) };
    let problem = match p.degree() {
        None | Some(0) => InequalityProblem::Linear { a: Complex::ZERO, b: -p.coeff(0) },
        Some(1) => InequalityProblem::Linear { a: p.coeff(1), b: -p.coeff(0) },
        Some(2) => InequalityProblem::Quadratic { a: p.coeff(2), b: p.coeff(1), c: p.coeff(0) },
        Some(k) => return Err(ClassifyError::UnsupportedForm(format!("polynomial of degree {k}"))),
    };
    Ok(Single { problem, scale })
}

fn fractional(r: &Rational, d: Complex) -> Result<Single, ClassifyError> {
    if r.num.degree().is_some_and(|k| k >= 2) {
        return Err(ClassifyError::UnsupportedForm(format!(
            "numerator of degree {} over a linear denominator",
            r.num.degree_or_zero()
        )));
    }
    let q1 = r.den.coeff(1);
    let (num, den, scale) = if q1 == Complex::ONE {
        (r.num.clone(), r.den.clone(), None)
    } else {
        (r.num.div_const(q1), r.den.div_const(q1), Some(q1))
    };
    Ok(Single {
        problem: InequalityProblem::Fractional { a: num.coeff(1), b: num.coeff(0), c: den.coeff(0), d },
        scale,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::parse::parse;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    fn classify(text: &str) -> Result<InequalityProblem, ClassifyError> {
        classify_problem(&parse(text).unwrap()).map(|c| c.problem)
    }

    #[test]
    fn quadratic_example() {
        assert_eq!(
            classify("Z^2 + 1 >= 0").unwrap(),
            InequalityProblem::Quadratic { a: Complex::ONE, b: Complex::ZERO, c: Complex::ONE }
        );
    }

    #[test]
    fn reciprocal_example() {
        assert_eq!(
            classify("1/Z >= 1").unwrap(),
            InequalityProblem::Fractional { a: Complex::ZERO, b: Complex::ONE, c: Complex::ZERO, d: Complex::ONE }
        );
    }

    #[test]
    fn cubic_is_unsupported() {
        assert!(matches!(classify("Z^3 >= 0"), Err(ClassifyError::UnsupportedForm(m)) if m.contains("degree 3")));
        assert!(matches!(classify("1/Z^2 >= 0"), Err(ClassifyError::UnsupportedForm(m)) if m.contains("denominator")));
        assert!(matches!(classify("Z^2/(Z+1) >= 0"), Err(ClassifyError::UnsupportedForm(m)) if m.contains("numerator")));
        assert!(matches!(classify("Z^100 >= 0"), Err(ClassifyError::UnsupportedForm(_))));
    }

    #[test]
    fn linear_forms() {
        assert_eq!(classify("Z >= 1+2i").unwrap(), InequalityProblem::Linear { a: Complex::ONE, b: c(1.0, 2.0) });
        assert_eq!(
            classify("(2i)*Z - (1+1i) >= 0").unwrap(),
            InequalityProblem::Linear { a: c(0.0, 2.0), b: c(1.0, 1.0) }
        );
        assert_eq!(classify("3 >= Z").unwrap(), InequalityProblem::Linear { a: c(-1.0, 0.0), b: c(-3.0, 0.0) });
        assert_eq!(classify("Z - Z >= 1").unwrap(), InequalityProblem::Linear { a: Complex::ZERO, b: Complex::ONE });
    }

    #[test]
    fn constant_denominators_are_divided_out() {
        let got = classify_problem(&parse("Z/(2i) >= 1").unwrap()).unwrap();
        assert_eq!(got.problem, InequalityProblem::Linear { a: c(0.0, -0.5), b: Complex::ONE });
        assert_eq!(got.denominator_scale, vec![Some(c(0.0, 2.0))]);
    }

    #[test]
    fn denominators_become_monic() {
        let got = classify_problem(&parse("(Z + 1)/(2*Z - 4) >= i").unwrap()).unwrap();
        assert_eq!(
            got.problem,
            InequalityProblem::Fractional { a: c(0.5, 0.0), b: c(0.5, 0.0), c: c(-2.0, 0.0), d: Complex::I }
        );
        assert_eq!(got.denominator_scale, vec![Some(c(2.0, 0.0))]);
    }

    #[test]
    fn fraction_with_variable_on_both_sides() {
        // 1 >= 1/Z  ->  (Z - 1)/Z >= 0
        assert_eq!(
            classify("1/Z <= 1").unwrap(),
            InequalityProblem::Fractional { a: Complex::ONE, b: c(-1.0, 0.0), c: Complex::ZERO, d: Complex::ZERO }
        );
    }

    #[test]
    fn common_powers_of_z_cancel() {
        assert_eq!(
            classify("Z^2/Z >= 1").unwrap(),
            InequalityProblem::Linear { a: Complex::ONE, b: Complex::ONE }
        );
    }

    #[test]
    fn systems() {
        assert_eq!(
            classify("Z >= 1 && i*Z >= 0").unwrap(),
            InequalityProblem::LinearSystem { a: Complex::ONE, b: Complex::ONE, c: Complex::I, d: Complex::ZERO }
        );
        assert!(classify("Z >= 1 && Z^2 >= 0").is_err());
        assert!(classify("Z >= 1 && Z >= 2 && Z >= 3").is_err());
    }

    #[test]
    fn division_by_zero_polynomial() {
        assert_eq!(classify("1/(Z - Z) >= 0"), Err(ClassifyError::DivisionByZero));
        assert_eq!(classify("Z/0 >= 0"), Err(ClassifyError::DivisionByZero));
    }

    #[test]
    fn poly_arithmetic() {
        let p = Poly::from_coeffs(vec![Complex::ONE, Complex::I]);
        let q = p.mul(&p);
        assert_eq!(q.coeffs(), &[Complex::ONE, c(0.0, 2.0), c(-1.0, 0.0)]);
        assert_eq!(q.eval(Complex::ONE), c(0.0, 2.0));
        assert!(p.sub(&p).is_zero());
        assert_eq!(p.sub(&p).degree(), None);
    }
}
