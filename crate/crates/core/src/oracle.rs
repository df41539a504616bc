//! Brute-force ground truth for the solvers.
//!
//! [`eval_direct`] answers membership by evaluating the inequality itself
//! with complex arithmetic and the dictionary order. It deliberately knows
//! nothing about regions or solvers, so any disagreement found by [`verify`]
//! points at the solver.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::lexorder::{lex_ge, Complex};
use crate::region::{Membership, MembershipResult};
use crate::solver::{InequalityProblem, SolutionSet};

pub const DEFAULT_EPS: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OracleError {
    #[error("expression has a pole at {0}")]
    PoleAt(Complex),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
}

/// A rectangular window sampled at `nx × ny` points, endpoints included.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
    pub nx: usize,
    pub ny: usize,
}

impl GridSpec {
    pub fn new(re_min: f64, re_max: f64, im_min: f64, im_max: f64, nx: usize, ny: usize) -> Result<Self, OracleError> {
        let g = GridSpec { re_min, re_max, im_min, im_max, nx, ny };
        g.validate()?;
        Ok(g)
    }

    /// `[−5, 5]²` at 201 × 201, which puts the origin on the grid.
    pub fn default_window() -> Self {
        GridSpec { re_min: -5.0, re_max: 5.0, im_min: -5.0, im_max: 5.0, nx: 201, ny: 201 }
    }

    pub fn validate(&self) -> Result<(), OracleError> {
        let finite = [self.re_min, self.re_max, self.im_min, self.im_max].iter().all(|v| v.is_finite());
        if !finite {
            return Err(OracleError::InvalidGrid("window bounds must be finite".into()));
        }
        if !(self.re_min < self.re_max && self.im_min < self.im_max) {
            return Err(OracleError::InvalidGrid("window must have min < max on both axes".into()));
        }
        if self.nx < 2 || self.ny < 2 {
            return Err(OracleError::InvalidGrid("resolution must be at least 2 per axis".into()));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn dx(&self) -> f64 {
        (self.re_max - self.re_min) / (self.nx - 1) as f64
    }

    pub fn dy(&self) -> f64 {
        (self.im_max - self.im_min) / (self.ny - 1) as f64
    }

    /// Sample `(ix, iy)`, with `iy = 0` at `im_min`.
    pub fn point(&self, ix: usize, iy: usize) -> Complex {
        Complex::new(lerp(self.re_min, self.re_max, ix, self.nx), lerp(self.im_min, self.im_max, iy, self.ny))
    }

    /// Points in grid-index order: `iy` outer, `ix` inner.
    pub fn points(&self) -> impl Iterator<Item = Complex> + '_ {
        (0..self.ny).flat_map(move |iy| (0..self.nx).map(move |ix| self.point(ix, iy)))
    }
}

// (lo·(n−1−i) + hi·i)/(n−1): exact at both endpoints, and exact at every
// point whose numerator is representable (integer bounds give exact zeros).
fn lerp(lo: f64, hi: f64, i: usize, n: usize) -> f64 {
    let last = (n - 1) as f64;
    let i = i as f64;
    (lo * (last - i) + hi * i) / last
}

/// The value whose sign (in dictionary order) decides each constraint.
fn residuals(problem: &InequalityProblem, z: Complex) -> Result<Vec<Complex>, OracleError> {
    Ok(match *problem {
        InequalityProblem::Linear { a, b } => vec![a * z - b],
        InequalityProblem::LinearSystem { a, b, c, d } => vec![a * z - b, c * z - d],
        InequalityProblem::Fractional { a, b, c, d } => {
            let q = fraction_value(a, b, c, z)?;
            vec![q - d]
        }
        InequalityProblem::Quadratic { a, b, c } => vec![a * z.square() + b * z + c],
    })
}

fn fraction_value(a: Complex, b: Complex, c: Complex, z: Complex) -> Result<Complex, OracleError> {
    (a * z + b).checked_div(z + c).map_err(|_| OracleError::PoleAt(z))
}

/// Decides the inequality at `z` by evaluating it.
pub fn eval_direct(problem: &InequalityProblem, z: Complex) -> MembershipResult {
    let holds = match *problem {
        InequalityProblem::Linear { a, b } => lex_ge(a * z - b, Complex::ZERO),
        InequalityProblem::LinearSystem { a, b, c, d } => {
            lex_ge(a * z - b, Complex::ZERO) && lex_ge(c * z - d, Complex::ZERO)
        }
        InequalityProblem::Fractional { a, b, c, d } => match fraction_value(a, b, c, z) {
            Ok(q) => lex_ge(q, d),
            Err(_) => return MembershipResult::Pole,
        },
        InequalityProblem::Quadratic { a, b, c } => lex_ge(a * z.square() + b * z + c, Complex::ZERO),
    };
    if holds {
        MembershipResult::In
    } else {
        MembershipResult::Out
    }
}

impl Membership for InequalityProblem {
    fn membership(&self, z: Complex) -> MembershipResult {
        eval_direct(self, z)
    }
}

/// Distance of the deciding component from its tie, using the default tie
/// tolerance [`DEFAULT_EPS`].
pub fn boundary_margin(problem: &InequalityProblem, z: Complex) -> Result<f64, OracleError> {
    boundary_margin_with(problem, z, DEFAULT_EPS)
}

/// `|Re v|` when it exceeds `tie`, otherwise `|Im v|`, for the residual `v`.
/// Systems report the smaller margin of their two constraints.
pub fn boundary_margin_with(problem: &InequalityProblem, z: Complex, tie: f64) -> Result<f64, OracleError> {
    Ok(residuals(problem, z)?
        .into_iter()
        .map(|v| if v.re.abs() > tie { v.re.abs() } else { v.im.abs() })
        .fold(f64::INFINITY, f64::min))
}

/// Smallest `|Re v|` over the residuals. Near zero, the two sides of the
/// order are decided by rounding of the real part, however large `Im v` is.
pub fn real_tie_margin(problem: &InequalityProblem, z: Complex) -> Result<f64, OracleError> {
    Ok(residuals(problem, z)?.into_iter().map(|v| v.re.abs()).fold(f64::INFINITY, f64::min))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Mismatch {
    pub index: usize,
    pub point: Complex,
    pub oracle: MembershipResult,
    pub region: MembershipResult,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub total: usize,
    pub skipped_boundary: usize,
    /// Points skipped only because `Re v` sits within `eps` of zero. Always
    /// zero unless ties are guarded.
    #[serde(default)]
    pub skipped_tie: usize,
    pub skipped_pole: usize,
    pub mismatches: Vec<Mismatch>,
    pub passed: bool,
}

impl VerificationReport {
    pub fn checked(&self) -> usize {
        self.total - self.skipped_boundary - self.skipped_tie - self.skipped_pole
    }
}

/// Compares the solution set against direct evaluation at every grid point.
///
/// Points where both sides report a pole are skipped; a pole on only one
/// side is a mismatch. Points whose boundary margin is below `eps` are
/// skipped because the two computation paths may round differently there.
pub fn verify(problem: &InequalityProblem, solution: &SolutionSet, grid: &GridSpec, eps: f64) -> VerificationReport {
    verify_with(problem, solution, grid, eps, false)
}

/// [`verify`], optionally also skipping points with [`real_tie_margin`]
/// below `eps`. On a grid that lands exactly on the line `Re v = 0`, the two
/// paths can round the real part to opposite signs while `|Im v|` is large.
pub fn verify_with(
    problem: &InequalityProblem,
    solution: &SolutionSet,
    grid: &GridSpec,
    eps: f64,
    guard_ties: bool,
) -> VerificationReport {
    let mut report = VerificationReport {
        total: 0,
        skipped_boundary: 0,
        skipped_tie: 0,
        skipped_pole: 0,
        mismatches: Vec::new(),
        passed: false,
    };
    for (index, z) in grid.points().enumerate() {
        report.total += 1;
        let oracle = eval_direct(problem, z);
        let region = solution.contains(z);
        if oracle == MembershipResult::Pole && region == MembershipResult::Pole {
            report.skipped_pole += 1;
            continue;
        }
        if oracle != MembershipResult::Pole {
            if boundary_margin_with(problem, z, eps).unwrap_or(f64::INFINITY) < eps {
                report.skipped_boundary += 1;
                continue;
            }
            if guard_ties && real_tie_margin(problem, z).unwrap_or(f64::INFINITY) <= eps {
                report.skipped_tie += 1;
                continue;
            }
        }
        if oracle != region {
            report.mismatches.push(Mismatch { index, point: z, oracle, region });
        }
    }
    report.passed = report.mismatches.is_empty();
    report
}

/// Sampled membership over a grid. Row 0 is the top row (`im_max`), so the
/// layout matches image coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct Bitmap {
    pub grid: GridSpec,
    pub cells: Vec<MembershipResult>,
}

impl Bitmap {
    pub fn get(&self, col: usize, row: usize) -> MembershipResult {
        self.cells[row * self.grid.nx + col]
    }

    /// Complex coordinate of a cell.
    pub fn cell_point(&self, col: usize, row: usize) -> Complex {
        self.grid.point(col, self.grid.ny - 1 - row)
    }

    pub fn count(&self, state: MembershipResult) -> usize {
        self.cells.iter().filter(|&&c| c == state).count()
    }

    /// Plain PGM (`P2`), max value 2: 0 = out, 1 = pole, 2 = in.
    pub fn to_pgm(&self) -> String {
        let mut out = format!("P2\n{} {}\n2\n", self.grid.nx, self.grid.ny);
        for row in self.cells.chunks(self.grid.nx) {
            let line: Vec<&str> = row.iter().map(|c| pgm_level(*c)).collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
        out
    }

    /// CSV with header `re,im,state`, rows in bitmap order.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("re,im,state\n");
        for row in 0..self.grid.ny {
            for col in 0..self.grid.nx {
                let z = self.cell_point(col, row);
                let _ = writeln!(out, "{},{},{}", z.re, z.im, self.get(col, row));
            }
        }
        out
    }
}

fn pgm_level(c: MembershipResult) -> &'static str {
    match c {
        MembershipResult::Out => "0",
        MembershipResult::Pole => "1",
        MembershipResult::In => "2",
    }
}

/// Evaluates membership at every grid point.
pub fn sample_raster<M: Membership + ?Sized>(source: &M, grid: &GridSpec) -> Bitmap {
    let mut cells = Vec::with_capacity(grid.len());
    for row in 0..grid.ny {
        let iy = grid.ny - 1 - row;
        for ix in 0..grid.nx {
            cells.push(source.membership(grid.point(ix, iy)));
        }
    }
    Bitmap { grid: *grid, cells }
}
