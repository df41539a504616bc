//! Regions of the complex plane built from a base half-plane by a chain of
//! rotations, dilations, translations, inversions and square roots.
//!
//! The base set `𝒟(A) = {Z : Z ≥ A}` is the open half-plane `Re Z > Re A`
//! together with the closed half-line `Re Z = Re A, Im Z ≥ Im A`. A region
//! `t_n(…t_1(𝒟(A))…)` is stored as the anchor plus the transform list, and
//! membership is decided by pulling the probe point back through the chain:
//!
//! | transform       | `W ∈ T(ℬ)` iff            |
//! |-----------------|---------------------------|
//! | `Rotate(θ)`     | `W·e^{−iθ} ∈ ℬ`           |
//! | `Scale(r)`      | `W/r ∈ ℬ`                 |
//! | `Translate(A)`  | `W − A ∈ ℬ`               |
//! | `Invert`        | `1/W ∈ ℬ` (pole at 0)     |
//! | `Sqrt`          | `W² ∈ ℬ`                  |

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::lexorder::{lex_ge, principal_angle, Complex};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RegionError {
    #[error("scale factor must be positive, got {0}")]
    NonPositiveScale(f64),
    #[error("transform parameter is not finite")]
    NonFinite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MembershipResult {
    In,
    Out,
    Pole,
}

impl MembershipResult {
    pub fn is_in(self) -> bool {
        self == MembershipResult::In
    }

    pub fn as_str(self) -> &'static str {
        match self {
            MembershipResult::In => "in",
            MembershipResult::Out => "out",
            MembershipResult::Pole => "pole",
        }
    }

    fn from_bool(b: bool) -> Self {
        if b {
            MembershipResult::In
        } else {
            MembershipResult::Out
        }
    }
}

impl fmt::Display for MembershipResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Anything that can answer pointwise membership.
pub trait Membership {
    fn membership(&self, z: Complex) -> MembershipResult;
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Transform {
    Rotate { theta: f64 },
    Scale { r: f64 },
    Translate(Complex),
    Invert,
    Sqrt,
}

impl Transform {
    /// Checks parameters and reduces rotation angles into `(−π, π]`.
    pub fn validated(self) -> Result<Transform, RegionError> {
        match self {
            Transform::Rotate { theta } if !theta.is_finite() => Err(RegionError::NonFinite),
            Transform::Rotate { theta } => Ok(Transform::Rotate { theta: principal_angle(theta) }),
            Transform::Scale { r } if r.is_nan() || r <= 0.0 => Err(RegionError::NonPositiveScale(r)),
            Transform::Scale { r } if !r.is_finite() => Err(RegionError::NonFinite),
            Transform::Translate(a) if !a.is_finite() => Err(RegionError::NonFinite),
            t => Ok(t),
        }
    }

    /// Maps a point of the image set back to the set the transform was
    /// applied to. `None` marks a pole.
    pub fn pull_back(self, w: Complex) -> Option<Complex> {
        match self {
            Transform::Rotate { theta } => Some(w * Complex::cis(-theta)),
            Transform::Scale { r } => Some(w.unscale(r)),
            Transform::Translate(a) => Some(w - a),
            Transform::Invert => w.recip().ok(),
            Transform::Sqrt => Some(w.square()),
        }
    }

    fn is_identity(self) -> bool {
        match self {
            Transform::Rotate { theta } => theta == 0.0,
            Transform::Scale { r } => r == 1.0,
            Transform::Translate(a) => a.is_zero(),
            Transform::Invert | Transform::Sqrt => false,
        }
    }
}

/// A base half-plane `𝒟(anchor)` followed by transforms, innermost first.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawRegion")]
pub struct Region {
    base: Complex,
    transforms: Vec<Transform>,
}

#[derive(Deserialize)]
struct RawRegion {
    base: Complex,
    #[serde(default)]
    transforms: Vec<Transform>,
}

impl TryFrom<RawRegion> for Region {
    type Error = RegionError;

    fn try_from(raw: RawRegion) -> Result<Self, Self::Error> {
        if !raw.base.is_finite() {
            return Err(RegionError::NonFinite);
        }
        raw.transforms
            .into_iter()
            .try_fold(Region::half_plane(raw.base), |r, t| r.apply_transform(t))
    }
}

impl Region {
    /// `𝒟(anchor) = {Z : Z ≥ anchor}`.
    pub fn half_plane(anchor: Complex) -> Self {
        Region { base: anchor, transforms: Vec::new() }
    }

    pub fn base(&self) -> Complex {
        self.base
    }

    pub fn transforms(&self) -> &[Transform] {
        &self.transforms
    }

    /// Appends `t` as the new outermost transform.
    pub fn apply_transform(mut self, t: Transform) -> Result<Region, RegionError> {
        self.transforms.push(t.validated()?);
        Ok(self)
    }

    pub fn rotate(self, theta: f64) -> Result<Region, RegionError> {
        self.apply_transform(Transform::Rotate { theta })
    }

    pub fn scale(self, r: f64) -> Result<Region, RegionError> {
        self.apply_transform(Transform::Scale { r })
    }

    pub fn translate(self, offset: Complex) -> Result<Region, RegionError> {
        self.apply_transform(Transform::Translate(offset))
    }

    pub fn invert(mut self) -> Region {
        self.transforms.push(Transform::Invert);
        self
    }

    pub fn sqrt(mut self) -> Region {
        self.transforms.push(Transform::Sqrt);
        self
    }

    pub fn contains(&self, w: Complex) -> MembershipResult {
        let mut z = w;
        for t in self.transforms.iter().rev() {
            match t.pull_back(z) {
                Some(p) => z = p,
                None => return MembershipResult::Pole,
            }
        }
        MembershipResult::from_bool(lex_ge(z, self.base))
    }

    /// Membership-preserving simplification: merges runs of rotations,
    /// dilations and translations and drops identities. Results can differ
    /// from the original chain only through rounding near boundaries.
    pub fn normalized(&self) -> Region {
        let mut out: Vec<Transform> = Vec::with_capacity(self.transforms.len());
        for &t in &self.transforms {
            let merged = match (out.last().copied(), t) {
                (Some(Transform::Rotate { theta: a }), Transform::Rotate { theta: b }) => {
                    Some(Transform::Rotate { theta: principal_angle(a + b) })
                }
                (Some(Transform::Scale { r: a }), Transform::Scale { r: b }) => Some(Transform::Scale { r: a * b }),
                (Some(Transform::Translate(a)), Transform::Translate(b)) => Some(Transform::Translate(a + b)),
                _ => None,
            };
            match merged {
                Some(m) => {
                    out.pop();
                    if !m.is_identity() {
                        out.push(m);
                    }
                }
                None if t.is_identity() => {}
                None => out.push(t),
            }
        }
        Region { base: self.base, transforms: out }
    }

    pub fn classify(&self) -> RegionClassification {
        classify(self)
    }
}

impl Membership for Region {
    fn membership(&self, z: Complex) -> MembershipResult {
        self.contains(z)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum ShapeKind {
    /// `𝒟(A)` itself, bounded by `Re Z = boundary_re`.
    VerticalHalfPlane { boundary_re: f64 },
    /// `e^{iθ}𝒟(A)`: points with `z₁cosθ + z₂sinθ > offset`, plus a half-line.
    ObliqueHalfPlane { normal_angle: f64, offset: f64 },
    Disc { center: Complex, radius: f64 },
    /// `𝒟(A)^{1/2}`, possibly rotated and translated so that its centre of
    /// symmetry sits at `center`. `contains_origin` refers to that centre.
    HyperbolaDomain { a1: f64, connected: bool, contains_origin: bool, center: Complex },
    Generic,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegionClassification {
    #[serde(flatten)]
    pub kind: ShapeKind,
    pub boundary_note: String,
}

/// Names the shape of a region when its chain matches a known pattern.
/// Purely descriptive: membership always goes through [`Region::contains`].
pub fn classify(region: &Region) -> RegionClassification {
    let a = region.base;
    let chain = region.transforms.as_slice();
    let (kind, boundary_note) = match chain {
        [] => (
            ShapeKind::VerticalHalfPlane { boundary_re: a.re },
            format!("open half-plane Re Z > {} plus closed half-line Re Z = {}, Im Z >= {}", a.re, a.re, a.im),
        ),
        [Transform::Rotate { theta }] => (
            ShapeKind::ObliqueHalfPlane { normal_angle: *theta, offset: a.re },
            format!(
                "open half-plane z1*cos(t) + z2*sin(t) > {} plus boundary half-line where z2*cos(t) - z1*sin(t) >= {}",
                a.re, a.im
            ),
        ),
        [Transform::Invert, rest @ ..] if a.re > 0.0 && rest.iter().all(is_similarity) => {
            let mut center = Complex::real(1.0 / (2.0 * a.re));
            let mut radius = 1.0 / (2.0 * a.re);
            for t in rest {
                match *t {
                    Transform::Rotate { theta } => center = center * Complex::cis(theta),
                    Transform::Scale { r } => {
                        center = center.scale(r);
                        radius *= r;
                    }
                    Transform::Translate(off) => center = center + off,
                    Transform::Invert | Transform::Sqrt => unreachable!(),
                }
            }
            (
                ShapeKind::Disc { center, radius },
                "open disc plus the boundary arc imaged from the base half-line; the image of infinity is excluded"
                    .to_string(),
            )
        }
        [Transform::Sqrt, rest @ ..]
            if rest.iter().all(|t| matches!(t, Transform::Rotate { .. } | Transform::Translate(_))) =>
        {
            let mut center = Complex::ZERO;
            for t in rest {
                match *t {
                    Transform::Rotate { theta } => center = center * Complex::cis(theta),
                    Transform::Translate(off) => center = center + off,
                    _ => unreachable!(),
                }
            }
            (
                ShapeKind::HyperbolaDomain {
                    a1: a.re,
                    connected: a.re <= 0.0,
                    contains_origin: lex_ge(Complex::ZERO, a),
                    center,
                },
                format!(
                    "points with z1^2 - z2^2 > {} plus hyperbola points where 2*z1*z2 >= {} (before rotation/translation)",
                    a.re, a.im
                ),
            )
        }
        _ => (ShapeKind::Generic, "no closed-form description; use pointwise membership".to_string()),
    };
    RegionClassification { kind, boundary_note }
}

fn is_similarity(t: &Transform) -> bool {
    matches!(t, Transform::Rotate { .. } | Transform::Scale { .. } | Transform::Translate(_))
}
