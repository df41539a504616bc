use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::LexError;

/// A complex number `re + im·i` over binary floating point.
///
/// Values handed to the public API are expected to be finite; [`Complex::try_new`]
/// enforces that at the boundary.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Complex {
    pub re: f64,
    pub im: f64,
}

impl Complex {
    pub const ZERO: Complex = Complex::new(0.0, 0.0);
    pub const ONE: Complex = Complex::new(1.0, 0.0);
    pub const I: Complex = Complex::new(0.0, 1.0);

    pub const fn new(re: f64, im: f64) -> Self {
        Complex { re, im }
    }

    pub const fn real(re: f64) -> Self {
        Complex { re, im: 0.0 }
    }

    /// Builds a complex number, rejecting NaN and infinite coordinates.
    pub fn try_new(re: f64, im: f64) -> Result<Self, LexError> {
        if re.is_finite() && im.is_finite() {
            Ok(Complex { re, im })
        } else {
            Err(LexError::NonFinite)
        }
    }

    pub fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn is_zero(self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }

    pub fn conj(self) -> Self {
        Complex::new(self.re, -self.im)
    }

    pub fn norm_sqr(self) -> f64 {
        self.re * self.re + self.im * self.im
    }

    pub fn abs(self) -> f64 {
        self.re.hypot(self.im)
    }

    pub fn square(self) -> Self {
        self * self
    }

    /// Multiplies both coordinates by a real factor.
    pub fn scale(self, k: f64) -> Self {
        Complex::new(self.re * k, self.im * k)
    }

    /// Divides both coordinates by a real divisor.
    pub fn unscale(self, k: f64) -> Self {
        Complex::new(self.re / k, self.im / k)
    }

    /// Complex division using Smith's scaling, so intermediate products
    /// neither overflow nor lose the exactness of power-of-two divisors.
    pub fn checked_div(self, rhs: Complex) -> Result<Complex, LexError> {
        if rhs.is_zero() {
            return Err(LexError::DivisionByZero);
        }
        let (a, b, c, d) = (self.re, self.im, rhs.re, rhs.im);
        if c.abs() >= d.abs() {
            let t = d / c;
            let den = c + d * t;
            Ok(Complex::new((a + b * t) / den, (b - a * t) / den))
        } else {
            let t = c / d;
            let den = d + c * t;
            Ok(Complex::new((a * t + b) / den, (b * t - a) / den))
        }
    }

    pub fn recip(self) -> Result<Complex, LexError> {
        Complex::ONE.checked_div(self)
    }

    /// `e^{iθ}` with exact values at the quarter turns, where `cos`/`sin`
    /// would otherwise leave a residue of about 6e-17.
    pub fn cis(theta: f64) -> Complex {
        if theta == 0.0 {
            Complex::ONE
        } else if theta == FRAC_PI_2 {
            Complex::I
        } else if theta == -FRAC_PI_2 {
            Complex::new(0.0, -1.0)
        } else if theta == PI || theta == -PI {
            Complex::real(-1.0)
        } else {
            let (s, c) = theta.sin_cos();
            Complex::new(c, s)
        }
    }

    pub fn from_polar(p: Polar) -> Complex {
        Complex::cis(p.theta).scale(p.r)
    }

    /// Modulus and principal argument; see [`Polar`].
    pub fn to_polar(self) -> Polar {
        if self.is_zero() {
            return Polar { r: 0.0, theta: 0.0 };
        }
        Polar {
            r: self.abs(),
            theta: principal_angle(self.im.atan2(self.re)),
        }
    }

    /// Integer power by repeated squaring.
    pub fn powu(self, mut exp: u32) -> Complex {
        let mut base = self;
        let mut acc = Complex::ONE;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            exp >>= 1;
        }
        acc
    }
}

/// Reduces an angle into `(−π, π]`.
pub fn principal_angle(theta: f64) -> f64 {
    if theta > -PI && theta <= PI {
        return theta;
    }
    let tau = 2.0 * PI;
    let mut t = theta % tau;
    if t <= -PI {
        t += tau;
    } else if t > PI {
        t -= tau;
    }
    // atan2(-0.0, x<0) and the modulo above can both land on -π exactly
    if t == -PI {
        PI
    } else {
        t
    }
}

/// Polar form `r·e^{iθ}` with `r ≥ 0` and `θ ∈ (−π, π]`.
///
/// Zero decomposes as `(0, 0)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Polar {
    pub r: f64,
    pub theta: f64,
}

pub fn polar_decompose(a: Complex) -> Polar {
    a.to_polar()
}

impl Add for Complex {
    type Output = Complex;
    fn add(self, rhs: Complex) -> Complex {
        Complex::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for Complex {
    type Output = Complex;
    fn sub(self, rhs: Complex) -> Complex {
        Complex::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Mul for Complex {
    type Output = Complex;
    fn mul(self, rhs: Complex) -> Complex {
        Complex::new(
            self.re * rhs.re - self.im * rhs.im,
            self.re * rhs.im + self.im * rhs.re,
        )
    }
}

impl Neg for Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex::new(-self.re, -self.im)
    }
}

impl From<f64> for Complex {
    fn from(re: f64) -> Self {
        Complex::real(re)
    }
}

impl fmt::Display for Complex {
    /// Prints `a`, `bi` or `a+bi` using shortest round-trip decimals.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re == 0.0, self.im == 0.0) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) => {
                let sign = if self.im.is_sign_negative() { '-' } else { '+' };
                write!(f, "{}{}{}i", self.re, sign, self.im.abs())
            }
        }
    }
}

pub fn complex_add(a: Complex, b: Complex) -> Complex {
    a + b
}

pub fn complex_sub(a: Complex, b: Complex) -> Complex {
    a - b
}

pub fn complex_mul(a: Complex, b: Complex) -> Complex {
    a * b
}

pub fn complex_div(a: Complex, b: Complex) -> Result<Complex, LexError> {
    a.checked_div(b)
}

pub fn complex_square(a: Complex) -> Complex {
    a.square()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_examples() {
        let one_plus_i = Complex::new(1.0, 1.0);
        assert_eq!(complex_mul(one_plus_i, one_plus_i), Complex::new(0.0, 2.0));
        assert_eq!(complex_square(one_plus_i), Complex::new(0.0, 2.0));
        assert_eq!(complex_div(Complex::ONE, Complex::I).unwrap(), Complex::new(0.0, -1.0));
        assert_eq!(complex_sub(Complex::real(2.0), Complex::real(2.0)), Complex::ZERO);
        assert_eq!(complex_add(Complex::I, Complex::ONE), one_plus_i);
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(Complex::ONE.checked_div(Complex::ZERO), Err(LexError::DivisionByZero));
        assert_eq!(Complex::ZERO.recip(), Err(LexError::DivisionByZero));
        assert_eq!(Complex::new(-0.0, -0.0).recip(), Err(LexError::DivisionByZero));
    }

    #[test]
    fn power_of_two_division_is_exact() {
        let z = Complex::new(0.375, -1.625);
        assert_eq!(z.checked_div(Complex::real(4.0)).unwrap(), Complex::new(0.09375, -0.40625));
        assert_eq!(z.checked_div(Complex::new(0.0, 2.0)).unwrap(), Complex::new(-0.8125, -0.1875));
    }

    #[test]
    fn polar_examples() {
        let p = polar_decompose(Complex::I);
        assert_eq!(p, Polar { r: 1.0, theta: FRAC_PI_2 });
        let p = polar_decompose(Complex::real(-2.0));
        assert_eq!(p, Polar { r: 2.0, theta: PI });
        assert_eq!(polar_decompose(Complex::ZERO), Polar { r: 0.0, theta: 0.0 });
    }

    #[test]
    fn negative_zero_imaginary_part_stays_in_principal_range() {
        let p = polar_decompose(Complex::new(-3.0, -0.0));
        assert_eq!(p.theta, PI);
        assert_eq!(polar_decompose(Complex::new(-0.0, -0.0)).theta, 0.0);
    }

    #[test]
    fn principal_angle_reduction() {
        assert_eq!(principal_angle(-PI), PI);
        assert_eq!(principal_angle(PI), PI);
        assert!((principal_angle(3.0 * PI) - PI).abs() < 1e-12);
        assert!((principal_angle(-2.5 * PI) + 0.5 * PI).abs() < 1e-12);
        assert!((principal_angle(7.0) - (7.0 - 2.0 * PI)).abs() < 1e-12);
    }

    #[test]
    fn cis_quarter_turns_are_exact() {
        assert_eq!(Complex::cis(FRAC_PI_2), Complex::I);
        assert_eq!(Complex::cis(-FRAC_PI_2), -Complex::I);
        assert_eq!(Complex::cis(PI), Complex::real(-1.0));
        assert_eq!(Complex::cis(0.0), Complex::ONE);
    }

    #[test]
    fn polar_round_trip() {
        for &(re, im) in &[(3.0, 4.0), (-1.5, 0.25), (0.0, -7.0), (-2.0, -2.0), (1e-3, 5e2)] {
            let z = Complex::new(re, im);
            let back = Complex::from_polar(z.to_polar());
            assert!((back - z).abs() <= 1e-12 * z.abs(), "{z} -> {back}");
        }
    }

    #[test]
    fn try_new_rejects_non_finite() {
        assert!(Complex::try_new(f64::NAN, 0.0).is_err());
        assert!(Complex::try_new(0.0, f64::INFINITY).is_err());
        assert!(Complex::try_new(1.0, -2.0).is_ok());
    }

    #[test]
    fn display_forms() {
        assert_eq!(Complex::new(1.0, 2.0).to_string(), "1+2i");
        assert_eq!(Complex::new(1.5, -2.0).to_string(), "1.5-2i");
        assert_eq!(Complex::new(0.0, -0.25).to_string(), "-0.25i");
        assert_eq!(Complex::real(-3.0).to_string(), "-3");
    }

    #[test]
    fn integer_powers() {
        let z = Complex::new(1.0, 1.0);
        assert_eq!(z.powu(0), Complex::ONE);
        assert_eq!(z.powu(1), z);
        assert_eq!(z.powu(2), Complex::new(0.0, 2.0));
        assert_eq!(z.powu(4), Complex::real(-4.0));
    }
}
