//! Factorization of rational rotations into stereographic parameters, and
//! composition back.
//!
//! Every special orthogonal matrix over the rationals is a product of
//! parametrized rotations of shrinking size, one per level: the first factor
//! matches the last column, its transpose peels that column off to leave a
//! block-embedded rotation one dimension down, and the recursion bottoms out
//! at a 1x1 identity. A [`FactorChain`] records the parameters of the
//! levels; `compose` and `decompose` are exact inverses of each other in
//! both directions.

use std::fmt;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::cayley::{rotation_from_params, rotation_via_cayley};
use crate::linalg::MatQ;
use crate::rational::Rational;
use crate::sphere::{ExtParam, SpherePoint, StereoCoords};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FactorError {
    #[error("chain dimension must be at least 2, got {0}")]
    DimensionTooSmall(usize),
    #[error("chain for dimension {dim} must have {expected} levels, got {got}")]
    WrongLevelCount {
        dim: usize,
        expected: usize,
        got: usize,
    },
    #[error("level {index} must have length {expected}, got {got}")]
    WrongLevelLength {
        index: usize,
        expected: usize,
        got: usize,
    },
    #[error("matrix is not special orthogonal")]
    NotSpecialOrthogonal,
    #[error("internal invariant violated: {0}")]
    InvariantViolation(&'static str),
}

/// The parameter chain of a factored rotation: for dimension `n`, exactly
/// `n - 1` levels of lengths `n - 1, n - 2, ..., 1`, each either a finite
/// coordinate vector or the point at infinity. The finite slots number
/// `n (n - 1) / 2` in total.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorChain {
    dim: usize,
    levels: Vec<ExtParam>,
}

impl FactorChain {
    pub fn new(dim: usize, levels: Vec<ExtParam>) -> Result<Self, FactorError> {
        if dim < 2 {
            return Err(FactorError::DimensionTooSmall(dim));
        }
        if levels.len() != dim - 1 {
            return Err(FactorError::WrongLevelCount {
                dim,
                expected: dim - 1,
                got: levels.len(),
            });
        }
        for (index, level) in levels.iter().enumerate() {
            let expected = dim - 1 - index;
            if level.len() != expected {
                return Err(FactorError::WrongLevelLength {
                    index,
                    expected,
                    got: level.len(),
                });
            }
        }
        Ok(Self { dim, levels })
    }

    /// The all-zero chain, which composes to the identity.
    pub fn identity(dim: usize) -> Result<Self, FactorError> {
        if dim < 2 {
            return Err(FactorError::DimensionTooSmall(dim));
        }
        let levels = (1..dim)
            .rev()
            .map(|len| {
                ExtParam::finite(
                    StereoCoords::new(vec![Rational::from_integer(0.into()); len])
                        .expect("len >= 1"),
                )
            })
            .collect();
        Ok(Self { dim, levels })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn levels(&self) -> &[ExtParam] {
        &self.levels
    }

    /// Number of scalar parameter slots: `n (n - 1) / 2`.
    pub fn scalar_slots(&self) -> usize {
        self.levels.iter().map(ExtParam::len).sum()
    }
}

/// Multiplies out the chain: each level's rotation is embedded in the
/// top-left corner of the full dimension and the factors are taken in level
/// order. The result is always special orthogonal.
pub fn compose(chain: &FactorChain) -> MatQ {
    compose_with(chain, rotation_from_params)
}

/// Same product, but each factor is built through the Cayley transform
/// instead of the closed forms; the independent route used by cross-checks
/// and benchmarks.
pub fn compose_via_cayley(chain: &FactorChain) -> MatQ {
    compose_with(chain, rotation_via_cayley)
}

fn compose_with(chain: &FactorChain, build: impl Fn(&ExtParam) -> MatQ) -> MatQ {
    let n = chain.dim();
    let mut acc = MatQ::identity(n);
    for level in chain.levels() {
        let factor = build(level)
            .embed_topleft(n)
            .expect("level rotation fits the chain dimension");
        acc = acc.mul(&factor).expect("same dimensions");
    }
    acc
}

/// Recovers the unique parameter chain with `compose(chain) == o`.
///
/// Each step reads the last column of the working block as a point on the
/// unit sphere: the south pole selects the infinity parameter, anything else
/// its stereographic coordinates. The transposed factor then reduces the
/// block by one dimension. The residual is guaranteed to fix the last axis
/// (both matrices share their last column), so a violation is reported as an
/// internal error rather than a caller error.
pub fn decompose(o: &MatQ) -> Result<FactorChain, FactorError> {
    if !o.is_special_orthogonal() {
        return Err(FactorError::NotSpecialOrthogonal);
    }
    if o.rows() < 2 {
        return Err(FactorError::DimensionTooSmall(o.rows()));
    }
    let n = o.rows();
    let mut levels = Vec::with_capacity(n - 1);
    let mut work = o.clone();
    while work.rows() >= 2 {
        let size = work.rows();
        let point = SpherePoint::new(work.column(size - 1))
            .map_err(|_| FactorError::InvariantViolation("rotation column must be a unit vector"))?;
        let level = if point.is_south_pole() {
            ExtParam::infinity(size - 1).expect("size >= 2")
        } else {
            ExtParam::finite(point.project().expect("not the south pole"))
        };
        let factor = rotation_from_params(&level);
        let residual = factor.transpose().mul(&work).expect("same dimensions");
        if !residual.fixes_last_axis() {
            return Err(FactorError::InvariantViolation(
                "residual factor must fix the last axis",
            ));
        }
        levels.push(level);
        work = residual.top_left(size - 1);
    }
    if !work.is_identity() {
        return Err(FactorError::InvariantViolation(
            "final residual block must be the identity",
        ));
    }
    FactorChain::new(n, levels)
}

/// Diagnostic breakdown of the membership test: which exact conditions hold
/// and which columns or column pairs break them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub dim: usize,
    /// Columns form an orthonormal set (equivalently, the product with the
    /// transpose is the identity).
    pub orthogonal: bool,
    pub det: Rational,
    /// Orthogonal with determinant exactly 1.
    pub special: bool,
    /// Per column: squared norm is exactly 1.
    pub unit_columns: Vec<bool>,
    /// Column pairs (i, j) with a nonzero dot product, and its value.
    pub failing_pairs: Vec<(usize, usize, Rational)>,
    /// Last row and column equal the final standard basis vector.
    pub fixes_last_axis: bool,
}

/// Checks a square matrix and reports every exact condition separately.
pub fn verify_report(o: &MatQ) -> VerifyReport {
    assert!(o.is_square(), "verification requires a square matrix");
    let n = o.rows();
    let columns: Vec<Vec<Rational>> = (0..n).map(|j| o.column(j)).collect();
    let dot = |a: &[Rational], b: &[Rational]| -> Rational {
        a.iter().zip(b).map(|(x, y)| x * y).sum()
    };
    let unit_columns: Vec<bool> = columns.iter().map(|c| dot(c, c).is_one()).collect();
    let mut failing_pairs = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let d = dot(&columns[i], &columns[j]);
            if !d.is_zero() {
                failing_pairs.push((i, j, d));
            }
        }
    }
    let orthogonal = unit_columns.iter().all(|&u| u) && failing_pairs.is_empty();
    let det = o.det().expect("square");
    let special = orthogonal && det.is_one();
    VerifyReport {
        dim: n,
        orthogonal,
        det,
        special,
        unit_columns,
        failing_pairs,
        fixes_last_axis: o.fixes_last_axis(),
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "dimension: {}", self.dim)?;
        writeln!(f, "orthogonal: {}", if self.orthogonal { "yes" } else { "no" })?;
        writeln!(f, "det: {}", self.det)?;
        writeln!(
            f,
            "special orthogonal: {}",
            if self.special { "yes" } else { "no" }
        )?;
        for (j, unit) in self.unit_columns.iter().enumerate() {
            if !unit {
                writeln!(f, "column {j} is not a unit vector")?;
            }
        }
        for (i, j, dot) in &self.failing_pairs {
            writeln!(f, "columns {i} and {j} are not orthogonal (dot = {dot})")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};
    use proptest::prelude::*;

    fn stereo(coords: Vec<Rational>) -> StereoCoords {
        StereoCoords::new(coords).unwrap()
    }

    fn finite_level(coords: Vec<Rational>) -> ExtParam {
        ExtParam::finite(stereo(coords))
    }

    fn thirds_rotation() -> MatQ {
        MatQ::from_rows(vec![
            vec![rat(1, 3), rat(-2, 3), rat(2, 3)],
            vec![rat(-2, 3), rat(1, 3), rat(2, 3)],
            vec![rat(-2, 3), rat(-2, 3), rat(-1, 3)],
        ])
        .unwrap()
    }

    fn worked_chain() -> FactorChain {
        FactorChain::new(
            3,
            vec![
                finite_level(vec![int(1), int(1)]),
                finite_level(vec![int(0)]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn chain_validation() {
        assert_eq!(
            FactorChain::new(1, vec![]),
            Err(FactorError::DimensionTooSmall(1))
        );
        assert_eq!(
            FactorChain::new(3, vec![finite_level(vec![int(1), int(1)])]),
            Err(FactorError::WrongLevelCount {
                dim: 3,
                expected: 2,
                got: 1
            })
        );
        assert_eq!(
            FactorChain::new(
                3,
                vec![finite_level(vec![int(1)]), finite_level(vec![int(0)])]
            ),
            Err(FactorError::WrongLevelLength {
                index: 0,
                expected: 2,
                got: 1
            })
        );
        let with_inf = FactorChain::new(
            3,
            vec![ExtParam::infinity(2).unwrap(), finite_level(vec![int(0)])],
        );
        assert!(with_inf.is_ok());
    }

    #[test]
    fn scalar_slot_counts() {
        for dim in 2..=12 {
            let chain = FactorChain::identity(dim).unwrap();
            assert_eq!(chain.scalar_slots(), dim * (dim - 1) / 2);
            assert_eq!(chain.levels().len(), dim - 1);
        }
    }

    #[test]
    fn compose_identity_chain() {
        assert_eq!(compose(&FactorChain::identity(3).unwrap()), MatQ::identity(3));
        assert_eq!(compose(&FactorChain::identity(6).unwrap()), MatQ::identity(6));
    }

    #[test]
    fn compose_worked_example() {
        assert_eq!(compose(&worked_chain()), thirds_rotation());
    }

    #[test]
    fn compose_infinity_at_dim_two() {
        let chain = FactorChain::new(2, vec![ExtParam::infinity(1).unwrap()]).unwrap();
        assert_eq!(compose(&chain), MatQ::diagonal(&[int(-1), int(-1)]));
    }

    #[test]
    fn compose_all_infinity_telescopes() {
        // Every level at infinity: the -1 blocks overlap and cancel in the
        // interior, leaving -1 only at the two ends of the diagonal.
        for dim in 2..=6 {
            let chain = FactorChain::new(
                dim,
                (1..dim).rev().map(|len| ExtParam::infinity(len).unwrap()).collect(),
            )
            .unwrap();
            let mut diag = vec![int(1); dim];
            diag[0] = int(-1);
            diag[dim - 1] = int(-1);
            assert_eq!(compose(&chain), MatQ::diagonal(&diag));
        }
    }

    #[test]
    fn compose_routes_agree_on_worked_example() {
        assert_eq!(compose(&worked_chain()), compose_via_cayley(&worked_chain()));
    }

    #[test]
    fn decompose_identity_gives_zero_chain() {
        for dim in 2..=5 {
            let chain = decompose(&MatQ::identity(dim)).unwrap();
            assert_eq!(chain, FactorChain::identity(dim).unwrap());
        }
    }

    #[test]
    fn decompose_worked_example() {
        assert_eq!(decompose(&thirds_rotation()).unwrap(), worked_chain());
    }

    #[test]
    fn decompose_south_pole_column() {
        let chain = decompose(&MatQ::diagonal(&[int(-1), int(-1)])).unwrap();
        assert_eq!(
            chain.levels(),
            &[ExtParam::infinity(1).unwrap()]
        );
    }

    #[test]
    fn decompose_rejects_non_members() {
        let reflection = MatQ::diagonal(&[int(1), int(-1)]);
        assert_eq!(decompose(&reflection), Err(FactorError::NotSpecialOrthogonal));
        let shear = MatQ::from_rows(vec![vec![int(1), int(1)], vec![int(0), int(1)]]).unwrap();
        assert_eq!(decompose(&shear), Err(FactorError::NotSpecialOrthogonal));
        let tiny = MatQ::identity(1);
        assert_eq!(decompose(&tiny), Err(FactorError::DimensionTooSmall(1)));
    }

    #[test]
    fn first_factor_shares_last_column() {
        let o = thirds_rotation();
        let chain = decompose(&o).unwrap();
        let factor = rotation_from_params(&chain.levels()[0]);
        assert_eq!(factor.column(2), o.column(2));
    }

    #[test]
    fn embedded_factors_are_members() {
        let chain = worked_chain();
        for level in chain.levels() {
            let f = rotation_from_params(level).embed_topleft(3).unwrap();
            assert!(f.is_special_orthogonal());
        }
    }

    #[test]
    fn report_on_identity() {
        let report = verify_report(&MatQ::identity(3));
        assert!(report.orthogonal);
        assert!(report.special);
        assert_eq!(report.det, int(1));
        assert_eq!(report.unit_columns, vec![true; 3]);
        assert!(report.failing_pairs.is_empty());
        assert!(report.fixes_last_axis);
    }

    #[test]
    fn report_on_reflection() {
        let report = verify_report(&MatQ::diagonal(&[int(1), int(1), int(-1)]));
        assert!(report.orthogonal);
        assert!(!report.special);
        assert_eq!(report.det, int(-1));
    }

    #[test]
    fn report_on_shear() {
        let shear = MatQ::from_rows(vec![vec![int(1), int(1)], vec![int(0), int(1)]]).unwrap();
        let report = verify_report(&shear);
        assert!(!report.orthogonal);
        assert!(!report.special);
        assert_eq!(report.unit_columns, vec![true, false]);
        assert_eq!(report.failing_pairs, vec![(0, 1, int(1))]);
        assert_eq!(report.det, int(1));
    }

    #[test]
    fn report_agrees_with_membership_test() {
        for m in [
            MatQ::identity(4),
            thirds_rotation(),
            MatQ::diagonal(&[int(1), int(-1)]),
            MatQ::from_rows(vec![vec![int(1), int(1)], vec![int(0), int(1)]]).unwrap(),
        ] {
            let report = verify_report(&m);
            assert_eq!(report.orthogonal, m.is_orthogonal());
            assert_eq!(report.special, m.is_special_orthogonal());
        }
    }

    fn arb_level(len: usize) -> impl Strategy<Value = ExtParam> {
        prop_oneof![
            6 => proptest::collection::vec((-12i64..12, 1i64..8), len..=len).prop_map(|cells| {
                ExtParam::finite(stereo(cells.into_iter().map(|(n, d)| rat(n, d)).collect()))
            }),
            1 => Just(ExtParam::infinity(len).unwrap()),
        ]
    }

    fn arb_chain(dim: usize) -> impl Strategy<Value = FactorChain> {
        let levels: Vec<_> = (1..dim).rev().map(arb_level).collect();
        levels.prop_map(move |levels| FactorChain::new(dim, levels).unwrap())
    }

    fn arb_chain_any() -> impl Strategy<Value = FactorChain> {
        (2usize..=5).prop_flat_map(arb_chain)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn compose_is_member_and_chain_round_trips(chain in arb_chain_any()) {
            let o = compose(&chain);
            prop_assert!(o.is_special_orthogonal());
            prop_assert_eq!(decompose(&o).unwrap(), chain);
        }

        #[test]
        fn matrix_round_trips(chain in arb_chain_any()) {
            let o = compose(&chain);
            prop_assert_eq!(compose(&decompose(&o).unwrap()), o);
        }
    }
}
