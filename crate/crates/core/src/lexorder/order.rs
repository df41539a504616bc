use std::cmp::Ordering;

use super::Complex;

/// Result of comparing two complex numbers in dictionary order.
pub type LexOrdering = Ordering;

/// Dictionary order: real parts first, imaginary parts break ties.
///
/// Coordinates are compared exactly. `0.0` and `-0.0` compare equal. NaN
/// is outside the domain; if one slips through, `f64::total_cmp` keeps the
/// result total instead of panicking.
pub fn lex_cmp(a: Complex, b: Complex) -> LexOrdering {
    coord_cmp(a.re, b.re).then_with(|| coord_cmp(a.im, b.im))
}

fn coord_cmp(x: f64, y: f64) -> Ordering {
    x.partial_cmp(&y).unwrap_or_else(|| x.total_cmp(&y))
}

pub fn lex_le(a: Complex, b: Complex) -> bool {
    lex_cmp(a, b) != Ordering::Greater
}

pub fn lex_ge(a: Complex, b: Complex) -> bool {
    lex_cmp(a, b) != Ordering::Less
}

/// Wrapper that gives `Complex` a total `Ord` under the dictionary order,
/// for sorting and ordered collections.
#[derive(Clone, Copy, Debug)]
pub struct LexKey(pub Complex);

impl PartialEq for LexKey {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for LexKey {}

impl PartialOrd for LexKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for LexKey {
    fn cmp(&self, other: &Self) -> Ordering {
        lex_cmp(self.0, other.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex {
        Complex::new(re, im)
    }

    #[test]
    fn first_coordinate_decides() {
        assert_eq!(lex_cmp(c(1.0, 5.0), c(2.0, -7.0)), Ordering::Less);
        assert_eq!(lex_cmp(c(2.0, -7.0), c(1.0, 5.0)), Ordering::Greater);
    }

    #[test]
    fn ties_fall_to_imaginary_part() {
        assert_eq!(lex_cmp(c(3.0, 2.0), c(3.0, 2.0)), Ordering::Equal);
        assert_eq!(lex_cmp(c(3.0, 2.0), c(3.0, 5.0)), Ordering::Less);
        assert!(lex_le(c(3.0, 2.0), c(3.0, 2.0)));
        assert!(lex_ge(c(3.0, 2.0), c(3.0, 2.0)));
    }

    #[test]
    fn signed_zeros_are_equal() {
        assert_eq!(lex_cmp(c(-0.0, 0.0), c(0.0, -0.0)), Ordering::Equal);
    }

    #[test]
    fn agrees_with_real_order() {
        for &(x, y) in &[(-1.0, 2.0), (3.5, 3.5), (7.0, -7.0)] {
            assert_eq!(lex_cmp(Complex::real(x), Complex::real(y)), x.partial_cmp(&y).unwrap());
        }
    }

    #[test]
    fn lex_key_sorts() {
        let mut v = vec![LexKey(c(1.0, 1.0)), LexKey(c(0.0, 9.0)), LexKey(c(1.0, -1.0))];
        v.sort();
        let sorted: Vec<_> = v.into_iter().map(|k| k.0).collect();
        assert_eq!(sorted, vec![c(0.0, 9.0), c(1.0, -1.0), c(1.0, 1.0)]);
    }
}
