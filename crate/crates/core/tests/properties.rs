//! Cross-module properties: the two construction routes agree, every
//! generated matrix is a group member, and factorization round-trips from
//! both sides, including through products that were never built from chains.

use sonq::cayley::{
    cayley_inverse, cayley_transform, elementary_rotation, rotation_from_params,
    rotation_via_cayley, PlanarUnit,
};
use sonq::factor::{compose, compose_via_cayley, decompose, FactorChain};
use sonq::generate::{sample_chain, sample_rational, stream, GenConfig};
use sonq::linalg::MatQ;
use sonq::rational::{int, rat, Rational};
use sonq::sphere::{ExtParam, StereoCoords};

use rand_chacha::ChaCha8Rng;

fn scalar_cfg(seed: u64) -> GenConfig {
    GenConfig::new(2, 10, int(0), seed).unwrap()
}

fn random_coords(len: usize, cfg: &GenConfig, rng: &mut ChaCha8Rng) -> StereoCoords {
    StereoCoords::new((0..len).map(|_| sample_rational(cfg, rng)).collect()).unwrap()
}

fn random_skew(n: usize, cfg: &GenConfig, rng: &mut ChaCha8Rng) -> MatQ {
    let mut rows = vec![vec![Rational::from_integer(0.into()); n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let v = sample_rational(cfg, rng);
            rows[i][j] = v.clone();
            rows[j][i] = -v;
        }
    }
    MatQ::from_rows(rows).unwrap()
}

#[test]
fn closed_form_matches_cayley_route_for_every_length() {
    let cfg = scalar_cfg(101);
    let mut rng = stream(cfg.seed());
    for len in 1..=7 {
        for _ in 0..25 {
            let p = ExtParam::finite(random_coords(len, &cfg, &mut rng));
            let direct = rotation_from_params(&p);
            assert_eq!(direct, rotation_via_cayley(&p), "length {len}");
            assert!(direct.is_special_orthogonal());
        }
    }
}

#[test]
fn last_column_is_the_lifted_point() {
    let cfg = scalar_cfg(202);
    let mut rng = stream(cfg.seed());
    for len in 1..=6 {
        let y = random_coords(len, &cfg, &mut rng);
        let o = rotation_from_params(&ExtParam::finite(y.clone()));
        assert_eq!(o.column(len), y.unproject().coords());
    }
}

#[test]
fn cayley_involution_on_general_skew_matrices() {
    let cfg = scalar_cfg(303);
    let mut rng = stream(cfg.seed());
    for n in 2..=6 {
        for _ in 0..10 {
            let a = random_skew(n, &cfg, &mut rng);
            let o = cayley_transform(&a).unwrap();
            assert!(o.is_special_orthogonal());
            assert_eq!(cayley_inverse(&o).unwrap(), a);
        }
    }
}

#[test]
fn random_chains_compose_to_members_and_round_trip() {
    for dim in 2..=8 {
        let cfg = GenConfig::new(dim, 10, rat(1, 8), 404 + dim as u64).unwrap();
        let mut rng = stream(cfg.seed());
        for _ in 0..10 {
            let chain = sample_chain(&cfg, &mut rng);
            let o = compose(&chain);
            assert!(o.is_special_orthogonal());
            assert_eq!(decompose(&o).unwrap(), chain);
            assert_eq!(compose(&decompose(&o).unwrap()), o);
        }
    }
}

#[test]
fn products_of_elementary_rotations_decompose() {
    // These members are built without any reference to parameter chains, so
    // decomposing them exercises genuine exhaustiveness, not a round trip.
    let cfg = scalar_cfg(505);
    let mut rng = stream(cfg.seed());
    for n in 2..=6 {
        let planes: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .collect();
        for trial in 0..8usize {
            let mut o = MatQ::identity(n);
            let factors = 3 + trial % 8;
            for f in 0..factors {
                let (i, j) = planes[(trial + f) % planes.len()];
                let u = PlanarUnit::from_circle_param(&sample_rational(&cfg, &mut rng));
                let e = elementary_rotation(i, j, &u, n).unwrap();
                o = o.mul(&e).unwrap();
            }
            assert!(o.is_special_orthogonal());
            let chain = decompose(&o).unwrap();
            assert_eq!(compose(&chain), o);
        }
    }
}

#[test]
fn cayley_outputs_decompose() {
    // Members born from the transform of a general skew matrix, another
    // family that never saw a parameter chain.
    let cfg = scalar_cfg(707);
    let mut rng = stream(cfg.seed());
    for n in 2..=8 {
        for _ in 0..5 {
            let o = cayley_transform(&random_skew(n, &cfg, &mut rng)).unwrap();
            let chain = decompose(&o).unwrap();
            assert_eq!(compose(&chain), o);
        }
    }
}

#[test]
fn south_pole_at_every_level_round_trips() {
    for dim in 2..=8 {
        let mut diag = vec![int(1); dim];
        diag[0] = int(-1);
        diag[dim - 1] = int(-1);
        let o = MatQ::diagonal(&diag);
        let chain = decompose(&o).unwrap();
        assert!(chain.levels().iter().all(ExtParam::is_infinity));
        assert_eq!(compose(&chain), o);
    }
}

#[test]
fn compose_routes_agree_on_whole_chains() {
    for dim in 2..=6 {
        let cfg = GenConfig::new(dim, 8, rat(1, 6), 606).unwrap();
        let chain = sample_chain(&cfg, &mut stream(cfg.seed()));
        assert_eq!(compose(&chain), compose_via_cayley(&chain));
    }
}

#[test]
fn chain_capacity_matches_triangular_count() {
    for dim in 2..=12 {
        assert_eq!(
            FactorChain::identity(dim).unwrap().scalar_slots(),
            dim * (dim - 1) / 2
        );
    }
}
