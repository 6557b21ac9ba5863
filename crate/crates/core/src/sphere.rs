//! The stereographic projection between rational points of the unit sphere
//! (minus the south pole) and the rational equatorial hyperplane.
//!
//! Projecting from the south pole `(0, ..., 0, -1)`, a sphere point with
//! coordinates `x` maps to `y_s = x_s / (1 + x_n)`; the inverse sends `y` to
//! `x_n = (1 - |y|^2) / (1 + |y|^2)` and `x_s = 2 y_s / (1 + |y|^2)`. Both
//! directions are exact over the rationals, which is what makes the whole
//! construction work. The south pole itself has no finite image and is
//! represented by [`ExtParam::Infinity`].

use num_traits::{One, Zero};
use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SphereError {
    #[error("point is the south pole; it has no finite stereographic image")]
    SouthPole,
    #[error("coordinates have squared norm {0}, expected exactly 1")]
    NotUnitNorm(Rational),
    #[error("need at least {min} coordinates, got {got}")]
    TooFewCoordinates { min: usize, got: usize },
}

/// A rational point on the unit sphere: `n >= 2` coordinates with exact
/// squared norm 1. Validated at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpherePoint {
    coords: Vec<Rational>,
}

impl SpherePoint {
    pub fn new(coords: Vec<Rational>) -> Result<Self, SphereError> {
        if coords.len() < 2 {
            return Err(SphereError::TooFewCoordinates {
                min: 2,
                got: coords.len(),
            });
        }
        let norm_sq: Rational = coords.iter().map(|c| c * c).sum();
        if !norm_sq.is_one() {
            return Err(SphereError::NotUnitNorm(norm_sq));
        }
        Ok(Self { coords })
    }

    /// The point `(0, ..., 0, 1)`.
    pub fn north_pole(dim: usize) -> Self {
        assert!(dim >= 2);
        let mut coords = vec![Rational::zero(); dim];
        coords[dim - 1] = Rational::one();
        Self { coords }
    }

    /// The point `(0, ..., 0, -1)`, the projection's excluded point.
    pub fn south_pole(dim: usize) -> Self {
        assert!(dim >= 2);
        let mut coords = vec![Rational::zero(); dim];
        coords[dim - 1] = -Rational::one();
        Self { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_south_pole(&self) -> bool {
        // On the unit sphere, last coordinate -1 forces all others to zero.
        *self.coords.last().expect("dim >= 2") == -Rational::one()
    }

    /// Stereographic projection from the south pole onto the equatorial
    /// hyperplane: `y_s = x_s / (1 + x_n)`.
    pub fn project(&self) -> Result<StereoCoords, SphereError> {
        if self.is_south_pole() {
            return Err(SphereError::SouthPole);
        }
        let n = self.dim();
        let denom = Rational::one() + &self.coords[n - 1];
        let coords = self.coords[..n - 1]
            .iter()
            .map(|x| x / &denom)
            .collect();
        Ok(StereoCoords { coords })
    }
}

/// Coordinates of a point on the equatorial hyperplane: `n - 1 >= 1` free
/// rationals. Every such point lifts back to the sphere exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StereoCoords {
    coords: Vec<Rational>,
}

impl StereoCoords {
    pub fn new(coords: Vec<Rational>) -> Result<Self, SphereError> {
        if coords.is_empty() {
            return Err(SphereError::TooFewCoordinates { min: 1, got: 0 });
        }
        Ok(Self { coords })
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        false // length >= 1 by construction
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    /// Squared Euclidean norm of the coordinate vector.
    pub fn norm_sq(&self) -> Rational {
        self.coords.iter().map(|c| c * c).sum()
    }

    /// Inverse stereographic projection: lifts the hyperplane point back to
    /// the unit sphere. Always lands exactly on the sphere, never on the
    /// south pole.
    pub fn unproject(&self) -> SpherePoint {
        let norm_sq = self.norm_sq();
        let denom = Rational::one() + &norm_sq;
        let mut coords: Vec<Rational> = self
            .coords
            .iter()
            .map(|y| (y + y) / &denom)
            .collect();
        coords.push((Rational::one() - norm_sq) / denom);
        SpherePoint::new(coords).expect("lifted point is on the unit sphere")
    }
}

/// A stereographic parameter: either a finite coordinate vector or the
/// distinguished point at infinity standing in for the south pole. The
/// infinity variant remembers the coordinate count so dimension checks stay
/// possible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtParam {
    Finite(StereoCoords),
    Infinity { len: usize },
}

impl ExtParam {
    pub fn finite(coords: StereoCoords) -> Self {
        ExtParam::Finite(coords)
    }

    pub fn infinity(len: usize) -> Result<Self, SphereError> {
        if len == 0 {
            return Err(SphereError::TooFewCoordinates { min: 1, got: 0 });
        }
        Ok(ExtParam::Infinity { len })
    }

    /// Number of parameter slots (finite coordinates this value occupies).
    pub fn len(&self) -> usize {
        match self {
            ExtParam::Finite(c) => c.len(),
            ExtParam::Infinity { len } => *len,
        }
    }

    pub fn is_empty(&self) -> bool {
        false // length >= 1 by construction
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, ExtParam::Infinity { .. })
    }

    /// Dimension of the sphere/rotation this parameter describes.
    pub fn ambient_dim(&self) -> usize {
        self.len() + 1
    }
}
