//! The Cayley transform and the rotations it induces.
//!
//! For a skew-symmetric `A` the transform `(1 + A) (1 - A)^{-1}` is a
//! rotation with determinant 1, and it is rational whenever `A` is. This
//! module provides the transform and its inverse, the bordered skew matrix
//! built from stereographic coordinates, the closed-form rotation those
//! coordinates induce (including the point at infinity), and exact
//! elementary plane rotations.
//!
//! The closed form and the transform are two independent routes to the same
//! matrix; `rotation_from_params` is the production path (no elimination),
//! `rotation_via_cayley` the cross-check used in tests and benchmarks.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg::{LinalgError, MatQ};
use crate::rational::Rational;
use crate::sphere::{ExtParam, StereoCoords};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CayleyError {
    #[error("matrix is not skew-symmetric")]
    NotSkewSymmetric,
    #[error("matrix is not special orthogonal")]
    NotSpecialOrthogonal,
    #[error("matrix has eigenvalue -1 (det(O + 1) = 0); no skew-symmetric preimage")]
    CayleyUndefined,
    #[error("plane indices must satisfy i < j < n, got i={i}, j={j}, n={n}")]
    BadPlaneIndices { i: usize, j: usize, n: usize },
    #[error("alpha^2 + beta^2 = {0}, expected exactly 1")]
    NotOnUnitCircle(Rational),
    #[error("internal invariant violated: {0}")]
    InvariantViolation(&'static str),
}

/// A rational point on the unit circle, the exact stand-in for a
/// (cosine, sine) pair. Validated at construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarUnit {
    alpha: Rational,
    beta: Rational,
}

impl PlanarUnit {
    pub fn new(alpha: Rational, beta: Rational) -> Result<Self, CayleyError> {
        let norm_sq = &alpha * &alpha + &beta * &beta;
        if !norm_sq.is_one() {
            return Err(CayleyError::NotOnUnitCircle(norm_sq));
        }
        Ok(Self { alpha, beta })
    }

    /// Rational circle point from a free parameter, via the inverse
    /// stereographic projection of the circle: `t = 0` gives `(1, 0)`.
    pub fn from_circle_param(t: &Rational) -> Self {
        let point = StereoCoords::new(vec![t.clone()])
            .expect("single coordinate")
            .unproject();
        Self {
            alpha: point.coords()[1].clone(),
            beta: point.coords()[0].clone(),
        }
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn beta(&self) -> &Rational {
        &self.beta
    }
}

/// The bordered skew-symmetric matrix with the given coordinates in its last
/// column (negated in the last row) and zeros elsewhere.
pub fn skew_param_matrix(y: &StereoCoords) -> MatQ {
    let n = y.len() + 1;
    MatQ::from_fn(n, n, |i, j| {
        if j == n - 1 && i < n - 1 {
            y.coords()[i].clone()
        } else if i == n - 1 && j < n - 1 {
            -&y.coords()[j]
        } else {
            Rational::zero()
        }
    })
}

fn ensure_skew(a: &MatQ) -> Result<(), CayleyError> {
    if !a.is_square() {
        return Err(CayleyError::NotSkewSymmetric);
    }
    for i in 0..a.rows() {
        for j in i..a.cols() {
            if *a.entry(i, j) != -a.entry(j, i) {
                return Err(CayleyError::NotSkewSymmetric);
            }
        }
    }
    Ok(())
}

/// Cayley transform `(1 + A) (1 - A)^{-1}` of a skew-symmetric matrix.
///
/// The result is always special orthogonal; `1 - A` is nonsingular for every
/// skew-symmetric `A` (its eigenvalues are purely imaginary), so a singular
/// intermediate signals an internal bug, not a caller error.
pub fn cayley_transform(a: &MatQ) -> Result<MatQ, CayleyError> {
    ensure_skew(a)?;
    let id = MatQ::identity(a.rows());
    let plus = id.add(a).expect("same dimensions");
    let minus = id.sub(a).expect("same dimensions");
    let inv = minus.inverse().map_err(|_| {
        CayleyError::InvariantViolation("1 - A is singular for a skew-symmetric A")
    })?;
    Ok(plus.mul(&inv).expect("same dimensions"))
}

/// Inverse Cayley transform `(O - 1) (O + 1)^{-1}`.
///
/// Defined only for special orthogonal `O` without eigenvalue -1; the
/// operational criterion is `det(O + 1) != 0`.
pub fn cayley_inverse(o: &MatQ) -> Result<MatQ, CayleyError> {
    if !o.is_special_orthogonal() {
        return Err(CayleyError::NotSpecialOrthogonal);
    }
    let id = MatQ::identity(o.rows());
    let plus = o.add(&id).expect("same dimensions");
    let inv = match plus.inverse() {
        Ok(inv) => inv,
        Err(LinalgError::Singular) => return Err(CayleyError::CayleyUndefined),
        Err(_) => unreachable!("square by construction"),
    };
    let a = o
        .sub(&id)
        .expect("same dimensions")
        .mul(&inv)
        .expect("same dimensions");
    debug_assert!(ensure_skew(&a).is_ok(), "Cayley preimage must be skew");
    Ok(a)
}

/// The rotation associated with a stereographic parameter, built directly
/// from the closed forms (no elimination).
///
/// For finite coordinates `y` with `D = 1 + |y|^2`, the last column is the
/// lifted sphere point `(2 y_s / D, (1 - |y|^2) / D)` and column `k < n`
/// holds `delta_{sk} - 2 y_k y_s / D` over the first `n - 1` rows and
/// `-2 y_k / D` in the last row. For the infinity parameter the rotation is
/// the identity with its last two diagonal entries negated. Either way the
/// result is special orthogonal, and in the finite case it equals
/// `cayley_transform(skew_param_matrix(y))`.
pub fn rotation_from_params(p: &ExtParam) -> MatQ {
    match p {
        ExtParam::Infinity { len } => infinity_rotation(len + 1),
        ExtParam::Finite(y) => {
            let k = y.len();
            let n = k + 1;
            let denom = Rational::one() + y.norm_sq();
            // t_s = 2 y_s / D; every off-diagonal entry is a product of these.
            let t: Vec<Rational> = y.coords().iter().map(|ys| (ys + ys) / &denom).collect();
            let last_diag = (Rational::one() + Rational::one()) / &denom - Rational::one();
            MatQ::from_fn(n, n, |row, col| {
                if col == n - 1 {
                    if row == n - 1 {
                        last_diag.clone()
                    } else {
                        t[row].clone()
                    }
                } else if row == n - 1 {
                    -&t[col]
                } else if row == col {
                    Rational::one() - &y.coords()[col] * &t[col]
                } else {
                    -(&y.coords()[col] * &t[row])
                }
            })
        }
    }
}

/// Same rotation via the Cayley transform of the bordered skew matrix; the
/// elimination-based route kept independent of `rotation_from_params` for
/// cross-validation and benchmarking. The infinity parameter has no Cayley
/// preimage, so that branch shares the definitional matrix.
pub fn rotation_via_cayley(p: &ExtParam) -> MatQ {
    match p {
        ExtParam::Infinity { len } => infinity_rotation(len + 1),
        ExtParam::Finite(y) => cayley_transform(&skew_param_matrix(y))
            .expect("bordered parameter matrix is skew-symmetric"),
    }
}

fn infinity_rotation(n: usize) -> MatQ {
    debug_assert!(n >= 2);
    MatQ::from_fn(n, n, |i, j| {
        if i != j {
            Rational::zero()
        } else if i >= n - 2 {
            -Rational::one()
        } else {
            Rational::one()
        }
    })
}

/// Elementary rotation in the plane of axes `i < j` (zero-based) inside an
/// `n` x `n` identity: entries `(i,i) = (j,j) = alpha`, `(i,j) = -beta`,
/// `(j,i) = beta`.
pub fn elementary_rotation(
    i: usize,
    j: usize,
    u: &PlanarUnit,
    n: usize,
) -> Result<MatQ, CayleyError> {
    if i >= j || j >= n {
        return Err(CayleyError::BadPlaneIndices { i, j, n });
    }
    Ok(MatQ::from_fn(n, n, |r, c| {
        if (r, c) == (i, i) || (r, c) == (j, j) {
            u.alpha().clone()
        } else if (r, c) == (i, j) {
            -u.beta()
        } else if (r, c) == (j, i) {
            u.beta().clone()
        } else if r == c {
            Rational::one()
        } else {
            Rational::zero()
        }
    }))
}
