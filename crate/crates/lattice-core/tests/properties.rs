use lattice_core::{char_poly_identities, dihedral_orbit, spectrum, InverseMasses};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

fn random_masses(rng: &mut ChaCha8Rng, n: usize) -> InverseMasses {
    let a: Vec<f64> = (0..n).map(|_| rng.random_range(0.05..3.0)).collect();
    InverseMasses::new(a).unwrap()
}

#[test]
fn exactly_one_zero_eigenvalue_for_random_chains() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for trial in 0..1000 {
        let n = rng.random_range(3..=8);
        let a = random_masses(&mut rng, n);
        let s = spectrum(&a).expect("spectrum");
        let max = s
            .eigenvalues
            .iter()
            .fold(0.0_f64, |acc, &l| acc.max(l.abs()));
        let near_zero = s
            .eigenvalues
            .iter()
            .filter(|l| l.abs() <= 1e-10 * max)
            .count();
        assert_eq!(near_zero, 1, "trial {trial}: {:?}", s.eigenvalues);
        for &l in s.positive() {
            assert!(l > 0.0, "trial {trial}: nonpositive eigenvalue {l}");
        }
    }
}

#[test]
fn spectrum_scales_linearly_with_masses() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..20 {
        let n = rng.random_range(3..=8);
        let a = random_masses(&mut rng, n);
        let base = spectrum(&a).unwrap();
        for t in [0.5, 2.0, 10.0] {
            let scaled = InverseMasses::new(a.values().iter().map(|&x| t * x).collect()).unwrap();
            let s = spectrum(&scaled).unwrap();
            for (ls, lb) in s.eigenvalues.iter().zip(&base.eigenvalues) {
                let want = t * lb;
                let denom = want.abs().max(1.0);
                assert!(
                    (ls - want).abs() / denom < 1e-10,
                    "t={t}: got {ls}, want {want}"
                );
            }
        }
    }
}

#[test]
fn spectrum_is_dihedral_invariant() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let n = rng.random_range(3..=8);
        let a = random_masses(&mut rng, n);
        let base = spectrum(&a).unwrap();
        for image in dihedral_orbit(&a) {
            let s = spectrum(&InverseMasses::new(image).unwrap()).unwrap();
            for (ls, lb) in s.eigenvalues.iter().zip(&base.eigenvalues) {
                let denom = lb.abs().max(1.0);
                assert!((ls - lb).abs() / denom < 1e-10);
            }
        }
    }
}

#[test]
fn characteristic_coefficients_match_symmetric_functions() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..200 {
        let a = random_masses(&mut rng, 4);
        let s = spectrum(&a).unwrap();
        let lam = s.positive();
        let e1: f64 = lam.iter().sum();
        let e2 = lam[0] * lam[1] + lam[0] * lam[2] + lam[1] * lam[2];
        let e3 = lam[0] * lam[1] * lam[2];
        let (p3, p2) = char_poly_identities(&a);
        assert!((p3 - e1).abs() / e1.abs() < 1e-9, "p3 {p3} vs e1 {e1}");
        assert!((p2 - e2).abs() / e2.abs() < 1e-9, "p2 {p2} vs e2 {e2}");
        let v = a.values();
        let ea3: f64 = (0..4)
            .flat_map(|i| ((i + 1)..4).flat_map(move |j| ((j + 1)..4).map(move |k| (i, j, k))))
            .map(|(i, j, k)| v[i] * v[j] * v[k])
            .sum();
        assert!(
            (4.0 * ea3 - e3).abs() / e3.abs() < 1e-9,
            "4*e3(a) {} vs e3(lambda) {}",
            4.0 * ea3,
            e3
        );
    }
}
