//! Closed-form solvers for the four inequality classes.
//!
//! Every solver returns the region exactly as its derivation builds it, so
//! the emitted transform chain can be read step by step:
//!
//! * `AZ − B ≥ 0`, `A = re^{iθ}`: `e^{−iθ}𝒟(B/r)`
//! * two linear constraints: the intersection of both half-planes
//! * `(AZ + B)/(Z + C) ≥ D`, `B − AC = re^{iθ}`: `e^{iθ}·1/𝒟((D−A)/r) − C`
//! * `AZ² + BZ + C ≥ 0`, `A = re^{iθ}`: `e^{−iθ/2}·𝒟((B²−4AC)/(4rA))^{1/2} − B/(2A)`
//!
//! Identity steps (a zero rotation angle or a zero offset) are left out of
//! the chain; nothing else is simplified.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::lexorder::{lex_ge, polar_decompose, Complex};
use crate::region::{Membership, MembershipResult, Region, RegionClassification, Transform};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SolveError {
    #[error("degenerate fraction: B - A*C = 0, the expression is the constant {0} wherever defined")]
    DegenerateFraction(Complex),
    #[error("leading coefficient is zero; use the linear solver")]
    ZeroLeadingCoefficient,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InequalityProblem {
    /// `A·Z − B ≥ 0`
    Linear { a: Complex, b: Complex },
    /// `A·Z − B ≥ 0` and `C·Z − D ≥ 0`
    LinearSystem { a: Complex, b: Complex, c: Complex, d: Complex },
    /// `(A·Z + B)/(Z + C) ≥ D`
    Fractional { a: Complex, b: Complex, c: Complex, d: Complex },
    /// `A·Z² + B·Z + C ≥ 0`
    Quadratic { a: Complex, b: Complex, c: Complex },
}

impl InequalityProblem {
    pub fn solve(&self) -> Result<SolutionSet, SolveError> {
        match *self {
            InequalityProblem::Linear { a, b } => Ok(solve_linear(a, b)),
            InequalityProblem::LinearSystem { a, b, c, d } => Ok(solve_linear_system(a, b, c, d)),
            InequalityProblem::Fractional { a, b, c, d } => Ok(solve_fractional(a, b, c, d)),
            InequalityProblem::Quadratic { a, b, c } => solve_quadratic(a, b, c),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SolutionKind {
    Single { region: Region },
    Intersection { regions: Vec<Region> },
    All,
    Empty,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolutionSet {
    #[serde(flatten)]
    pub kind: SolutionKind,
    /// Poles removed from the set; only fractional problems have one.
    pub excluded_points: Vec<Complex>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<String>,
}

impl SolutionSet {
    fn single(region: Region) -> Self {
        SolutionSet { kind: SolutionKind::Single { region }, excluded_points: Vec::new(), note: None }
    }

    fn constant(holds: bool) -> Self {
        SolutionSet {
            kind: if holds { SolutionKind::All } else { SolutionKind::Empty },
            excluded_points: Vec::new(),
            note: None,
        }
    }

    pub fn regions(&self) -> &[Region] {
        match &self.kind {
            SolutionKind::Single { region } => std::slice::from_ref(region),
            SolutionKind::Intersection { regions } => regions,
            SolutionKind::All | SolutionKind::Empty => &[],
        }
    }

    pub fn contains(&self, z: Complex) -> MembershipResult {
        if self.excluded_points.contains(&z) {
            return MembershipResult::Pole;
        }
        match &self.kind {
            SolutionKind::All => MembershipResult::In,
            SolutionKind::Empty => MembershipResult::Out,
            SolutionKind::Single { region } => region.contains(z),
            SolutionKind::Intersection { regions } => {
                let mut acc = MembershipResult::In;
                for r in regions {
                    match r.contains(z) {
                        MembershipResult::Pole => return MembershipResult::Pole,
                        MembershipResult::Out => acc = MembershipResult::Out,
                        MembershipResult::In => {}
                    }
                }
                acc
            }
        }
    }

    pub fn classifications(&self) -> Vec<RegionClassification> {
        self.regions().iter().map(Region::classify).collect()
    }
}

impl Membership for SolutionSet {
    fn membership(&self, z: Complex) -> MembershipResult {
        self.contains(z)
    }
}

// Solver chains only contain validated parameters (finite angles, r > 0),
// so pushing directly cannot violate region invariants.
fn push(region: Region, t: Transform) -> Region {
    region.apply_transform(t).expect("solver transforms are always valid")
}

fn rotate_unless_zero(region: Region, theta: f64) -> Region {
    if theta == 0.0 {
        region
    } else {
        push(region, Transform::Rotate { theta })
    }
}

fn translate_unless_zero(region: Region, offset: Complex) -> Region {
    if offset.is_zero() {
        region
    } else {
        push(region, Transform::Translate(offset))
    }
}

/// Solves `A·Z − B ≥ 0`.
pub fn solve_linear(a: Complex, b: Complex) -> SolutionSet {
    if a.is_zero() {
        // −B ≥ 0
        return SolutionSet::constant(lex_ge(Complex::ZERO, b));
    }
    let p = polar_decompose(a);
    let base = Region::half_plane(b.unscale(p.r));
    SolutionSet::single(rotate_unless_zero(base, -p.theta))
}

/// Solves `A·Z − B ≥ 0` and `C·Z − D ≥ 0`.
pub fn solve_linear_system(a: Complex, b: Complex, c: Complex, d: Complex) -> SolutionSet {
    let first = solve_linear(a, b);
    let second = solve_linear(c, d);
    match (first.kind, second.kind) {
        (SolutionKind::Empty, _) | (_, SolutionKind::Empty) => SolutionSet::constant(false),
        (SolutionKind::All, other) | (other, SolutionKind::All) => {
            SolutionSet { kind: other, excluded_points: Vec::new(), note: None }
        }
        (SolutionKind::Single { region: r1 }, SolutionKind::Single { region: r2 }) => SolutionSet {
            kind: SolutionKind::Intersection { regions: vec![r1, r2] },
            excluded_points: Vec::new(),
            note: None,
        },
        _ => unreachable!("solve_linear yields Single, All or Empty"),
    }
}

/// Solves `(A·Z + B)/(Z + C) ≥ D`.
///
/// When `B − A·C = 0` the left side is the constant `A` away from the pole,
/// and the answer is everything or nothing (minus `−C`) with an explanatory
/// note. [`solve_fractional_strict`] rejects that case instead.
pub fn solve_fractional(a: Complex, b: Complex, c: Complex, d: Complex) -> SolutionSet {
    match solve_fractional_strict(a, b, c, d) {
        Ok(s) => s,
        Err(SolveError::DegenerateFraction(value)) => {
            let mut s = SolutionSet::constant(lex_ge(value, d));
            let pole = Complex::ZERO - c;
            s.excluded_points.push(pole);
            s.note = Some(format!("degenerate fraction: B - A*C = 0, expression equals {value} for Z != {pole}"));
            s
        }
        Err(e) => unreachable!("{e}"),
    }
}

pub fn solve_fractional_strict(a: Complex, b: Complex, c: Complex, d: Complex) -> Result<SolutionSet, SolveError> {
    let k = b - a * c;
    if k.is_zero() {
        return Err(SolveError::DegenerateFraction(a));
    }
    let p = polar_decompose(k);
    let region = Region::half_plane((d - a).unscale(p.r)).invert();
    let region = rotate_unless_zero(region, p.theta);
    // 0 − C rather than −C keeps a zero pole from printing as -0
    let pole = Complex::ZERO - c;
    let region = translate_unless_zero(region, pole);
    let mut s = SolutionSet::single(region);
    s.excluded_points.push(pole);
    Ok(s)
}

/// Which of the two square-root rotations to emit for a quadratic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QuadraticBranch {
    /// Rotate by `−θ/2` with `θ` the principal argument of `A`.
    Principal,
    /// Rotate by `−θ/2 − π`; membership-identical because square-root
    /// regions are symmetric under `W ↦ −W`.
    Opposite,
}

/// Solves `A·Z² + B·Z + C ≥ 0`.
pub fn solve_quadratic(a: Complex, b: Complex, c: Complex) -> Result<SolutionSet, SolveError> {
    solve_quadratic_branch(a, b, c, QuadraticBranch::Principal)
}

pub fn solve_quadratic_branch(
    a: Complex,
    b: Complex,
    c: Complex,
    branch: QuadraticBranch,
) -> Result<SolutionSet, SolveError> {
    if a.is_zero() {
        return Err(SolveError::ZeroLeadingCoefficient);
    }
    let p = polar_decompose(a);
    let discriminant = b.square() - Complex::real(4.0) * a * c;
    let anchor = discriminant
        .checked_div(a.scale(4.0 * p.r))
        .expect("A != 0 so 4rA != 0");
    let shift = b.checked_div(a.scale(2.0)).expect("A != 0");
    let turn = match branch {
        QuadraticBranch::Principal => -p.theta / 2.0,
        QuadraticBranch::Opposite => -p.theta / 2.0 - PI,
    };
    let region = Region::half_plane(anchor).sqrt();
    let region = rotate_unless_zero(region, turn);
    let region = translate_unless_zero(region, -shift);
    Ok(SolutionSet::single(region))
}
