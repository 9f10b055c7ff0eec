//! Randomized instance generators and suite bodies shared between the
//! property tests and the acceptance gate.
//!
//! Instances are drawn with fixed generator seeds so failures replay.

use std::collections::BTreeMap;
use std::sync::Arc;

use cluster_core::frame::Frame;
use cluster_core::matrix::Matrix;
use cluster_core::seed::{find_compatible_lambda, Seed};
use cluster_core::tropical::{dominance_less, extract_pointed};
use cluster_core::{Error, ScalarPoly, TorusElement};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Draws a skew-symmetrizable matrix with symmetrizer entries in {1, 2} and
/// matrix entries bounded by 2, on up to four vertices.
fn random_b(rng: &mut ChaCha8Rng) -> (usize, Vec<usize>, Vec<i64>, Matrix) {
    let n = rng.gen_range(2..=4);
    let unfrozen_count = rng.gen_range(1..=n);
    let unfrozen: Vec<usize> = (0..unfrozen_count).collect();
    let d: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=2)).collect();
    let mut b = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in (i + 1)..n {
            let w = rng.gen_range(-1..=1);
            b[i][j] = d[j] * w;
            b[j][i] = -d[i] * w;
        }
    }
    (n, unfrozen, d, b)
}

/// Rejection-samples until the unfrozen columns have full rank; classical.
fn random_seed(rng: &mut ChaCha8Rng) -> Seed {
    for _ in 0..10_000 {
        let (n, unfrozen, d, b) = random_b(rng);
        let vertices: Vec<String> = (1..=n).map(|i| format!("x{i}")).collect();
        let frame = match Frame::new(vertices, unfrozen, d, None) {
            Ok(f) => Arc::new(f),
            Err(_) => continue,
        };
        if let Ok(s) = Seed::new(frame, b) {
            return s;
        }
    }
    panic!("sampling kept hitting rank-deficient matrices");
}

/// A seed as above, equipped with a compatible skew form.
fn random_quantum_seed(rng: &mut ChaCha8Rng) -> Seed {
    for _ in 0..10_000 {
        let s = random_seed(rng);
        let (lambda, _) = match find_compatible_lambda(s.b_full(), s.frame().unfrozen()) {
            Ok(found) => found,
            Err(_) => continue,
        };
        let frame = Arc::new(s.frame().with_lambda(Some(lambda)).unwrap());
        return Seed::new(frame, s.b_full().clone()).unwrap();
    }
    panic!("sampling kept failing to find a compatible form");
}

fn random_path(rng: &mut ChaCha8Rng, s: &Seed, len: usize) -> Vec<usize> {
    let unfrozen = s.frame().unfrozen();
    (0..len)
        .map(|_| unfrozen[rng.gen_range(0..unfrozen.len())])
        .collect()
}

/// Offsets a degree by `Btilde n`, the move that defines dominance.
fn push_down(g: &[i64], n: &[usize], s: &Seed) -> Vec<i64> {
    let mut out = g.to_vec();
    for (pos, &k) in s.frame().unfrozen().iter().enumerate() {
        for i in 0..out.len() {
            out[i] += (n[pos] as i64) * s.b_full()[i][k];
        }
    }
    out
}

fn random_offset(rng: &mut ChaCha8Rng, len: usize) -> Vec<usize> {
    loop {
        let n: Vec<usize> = (0..len).map(|_| rng.gen_range(0..=2)).collect();
        if n.iter().any(|&x| x != 0) {
            return n;
        }
    }
}

pub fn involution_suite(instances: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    for case in 0..instances {
        let s = if case % 2 == 0 {
            random_seed(&mut rng)
        } else {
            random_quantum_seed(&mut rng)
        };
        let len = rng.gen_range(0..=3);
        let path = random_path(&mut rng, &s, len);
        let t = s.mutate_seq(&path).unwrap();
        for &k in s.frame().unfrozen() {
            let back = t.mutate(k).unwrap().mutate(k).unwrap();
            assert_eq!(back, t, "case {case}: path {path:?}, vertex {k}");
        }
    }
}

pub fn compatibility_suite(instances: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    for case in 0..instances {
        let s = random_quantum_seed(&mut rng);
        let delta = s.check_compatibility().unwrap();
        let len = rng.gen_range(1..=4);
        let path = random_path(&mut rng, &s, len);
        let mut t = s.clone();
        for &k in &path {
            t = t.mutate(k).unwrap();
            let mutated_delta = t
                .check_compatibility()
                .unwrap_or_else(|e| panic!("case {case}: path {path:?} broke the form: {e}"));
            assert_eq!(mutated_delta, delta, "case {case}: path {path:?}");
        }
    }
}

pub fn dominance_suite(instances: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(303);
    for case in 0..instances {
        let s = random_seed(&mut rng);
        let r = s.frame().unfrozen().len();
        let top: Vec<i64> = (0..s.n()).map(|_| rng.gen_range(-5..=5)).collect();
        let mid = push_down(&top, &random_offset(&mut rng, r), &s);
        let low = push_down(&mid, &random_offset(&mut rng, r), &s);

        for g in [&top, &mid, &low] {
            assert!(!dominance_less(g, g, &s), "case {case}: irreflexivity");
        }
        assert!(dominance_less(&mid, &top, &s), "case {case}");
        assert!(dominance_less(&low, &mid, &s), "case {case}");
        assert!(dominance_less(&low, &top, &s), "case {case}: transitivity");
        assert!(!dominance_less(&top, &mid, &s), "case {case}: antisymmetry");
        assert!(!dominance_less(&mid, &low, &s), "case {case}: antisymmetry");
        assert!(!dominance_less(&top, &low, &s), "case {case}: antisymmetry");
    }
}

pub fn pointedness_suite(instances: usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(404);
    for case in 0..instances {
        let s = random_seed(&mut rng);
        let r = s.frame().unfrozen().len();
        let g: Vec<i64> = (0..s.n()).map(|_| rng.gen_range(-4..=4)).collect();

        let mut f: BTreeMap<Vec<usize>, ScalarPoly> = BTreeMap::new();
        f.insert(vec![0; r], ScalarPoly::one());
        for _ in 0..rng.gen_range(1..=4) {
            let n = random_offset(&mut rng, r);
            let c = if rng.gen_bool(0.5) {
                ScalarPoly::from_int(rng.gen_range(1..=3))
            } else {
                ScalarPoly::v_power(rng.gen_range(-2..=2))
            };
            f.insert(n, c);
        }

        let z = TorusElement::from_terms(
            s.frame().clone(),
            f.iter().map(|(n, c)| (push_down(&g, n, &s), c.clone())),
        );
        let dec = extract_pointed(&z, &s).unwrap();
        assert_eq!(dec.g, g, "case {case}");
        let got: BTreeMap<Vec<usize>, ScalarPoly> = dec
            .f_poly
            .iter()
            .map(|(n, c)| (n.iter().map(|&x| x as usize).collect(), c.clone()))
            .collect();
        assert_eq!(got, f, "case {case}");
        assert_eq!(dec.reassemble(&s), z, "case {case}");

        // A non-unit leading coefficient is rejected rather than rescaled.
        let doubled = z.scalar_mul(&ScalarPoly::from_int(2));
        assert!(matches!(
            extract_pointed(&doubled, &s),
            Err(Error::NotUnitLeading(_, _))
        ));
    }
}
