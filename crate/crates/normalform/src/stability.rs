use nalgebra::{Complex, DMatrix};
use serde::Serialize;

use eigenmode_transform::cubic_from_table;

use crate::{
    comoving_jacobian, edge_family, mode1_comoving, mode2_comoving, mode3_comoving,
    NormalFormError, PLANE_TOL, THIRD_INTEGRAL_TOL,
};

/// Relative size below which a real or imaginary part counts as zero
/// when classifying a spectrum.
const CLASSIFY_TOL: f64 = 1e-12;

/// The invariant sets of the averaged flow whose transverse
/// linearization is available in closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum InvariantFamily {
    /// Pure first mode, `x1 = a cos 3t + b sin 3t`.
    Mode1,
    /// Pure second mode, `x2 = a cos 2t + b sin 2t`.
    Mode2,
    /// Pure third mode, `x3 = a cos t + b sin t`; invariant only while
    /// the `x3^2 x2` coupling vanishes.
    Mode3,
    /// Third mode with the slaved first-mode correction of
    /// [`edge_family`](crate::edge_family).
    Edge,
}

impl std::fmt::Display for InvariantFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            InvariantFamily::Mode1 => "mode1",
            InvariantFamily::Mode2 => "mode2",
            InvariantFamily::Mode3 => "mode3",
            InvariantFamily::Edge => "edge",
        };
        f.write_str(name)
    }
}

/// Linear stability type of a relative equilibrium, read off the
/// eigenvalue pattern of its transverse linearization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StabilityClass {
    /// All eigenvalues purely imaginary: two elliptic pairs.
    EE,
    /// One purely imaginary and one real pair.
    EH,
    /// All eigenvalues real: two hyperbolic pairs.
    HH,
    /// A quartet with nonzero real and imaginary parts.
    C,
}

impl std::fmt::Display for StabilityClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let name = match self {
            StabilityClass::EE => "EE",
            StabilityClass::EH => "EH",
            StabilityClass::HH => "HH",
            StabilityClass::C => "C",
        };
        f.write_str(name)
    }
}

/// One eigenvalue of a real matrix, split into parts for serialization.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Eigenvalue {
    pub re: f64,
    pub im: f64,
}

impl From<Complex<f64>> for Eigenvalue {
    fn from(z: Complex<f64>) -> Self {
        Eigenvalue { re: z.re, im: z.im }
    }
}

/// Transverse linearization of the averaged flow around an invariant
/// family member.
#[derive(Debug, Clone, Serialize)]
pub struct StabilityReport {
    /// Which family was linearized.
    pub family: InvariantFamily,
    /// Amplitude pair `(a, b)` of the carrying mode.
    pub amplitude: [f64; 2],
    /// Eigenvalues of the reduced matrix, sorted by real then imaginary
    /// part.  Physical exponents are these times `scale`.
    pub eigenvalues: Vec<Eigenvalue>,
    /// Common positive factor `7 eps / 2` divided out of the matrix.
    pub scale: f64,
    /// Stability class of the transverse dynamics.
    pub class: StabilityClass,
}

/// Linearization around the first mode, acting on `(z1, z2, u1, u2)`.
pub fn mode1_matrix(d6: f64, a: f64, b: f64) -> [[f64; 4]; 4] {
    [
        [0.0, 0.0, -d6 * b / 2.0, d6 * a / 2.0],
        [0.0, 0.0, d6 * a, d6 * b],
        [-d6 * b, d6 * a / 2.0, 0.0, 0.0],
        [d6 * a, d6 * b / 2.0, 0.0, 0.0],
    ]
}

/// Linearization around the second mode, acting on `(y1, y2, u1, u2)`.
pub fn mode2_matrix(d6: f64, d9: f64, a: f64, b: f64) -> [[f64; 4]; 4] {
    [
        [0.0, 0.0, d6 * b / 3.0, d6 * a / 3.0],
        [0.0, 0.0, -d6 * a, d6 * b],
        [-d6 * b, d6 * a / 3.0, 2.0 * d9 * b, -2.0 * d9 * a],
        [-d6 * a, -d6 * b / 3.0, -2.0 * d9 * a, -2.0 * d9 * b],
    ]
}

/// Linearization around the third mode, acting on `(y1, y2, z1, z2)`.
pub fn mode3_matrix(d6: f64, a: f64, b: f64) -> [[f64; 4]; 4] {
    [
        [0.0, 0.0, -d6 * b / 3.0, -d6 * a / 6.0],
        [0.0, 0.0, d6 * a, -d6 * b / 2.0],
        [d6 * b / 2.0, -d6 * a / 6.0, 0.0, 0.0],
        [d6 * a, d6 * b / 3.0, 0.0, 0.0],
    ]
}

/// Linearization around an edge equilibrium, acting on the full
/// co-moving state `(y1, y2, z1, z2, u1, u2)`.
///
/// Two exact zero eigenvalues come from sliding along the family and
/// the free phase; the remaining four form two equal imaginary pairs.
pub fn edge_matrix(d6: f64, d9: f64, a: f64, b: f64) -> Result<[[f64; 6]; 6], NormalFormError> {
    let edge = edge_family(d6, d9, a, b)?;
    let (c, d) = (edge.c, edge.d);
    Ok([
        [0.0, 0.0, d6 * b / 3.0, d6 * a / 6.0, 0.0, 0.0],
        [0.0, 0.0, -d6 * a, d6 * b / 2.0, 0.0, 0.0],
        [
            -d6 * b / 2.0,
            d6 * a / 6.0,
            0.0,
            0.0,
            d6 * d / 2.0 + d9 * b,
            -d6 * c / 2.0 + d9 * a,
        ],
        [
            -d6 * a,
            -d6 * b / 3.0,
            0.0,
            0.0,
            -d6 * c - 2.0 * d9 * a,
            -d6 * d + 2.0 * d9 * b,
        ],
        [
            0.0,
            0.0,
            d6 * d - 2.0 * d9 * b,
            -d6 * c / 2.0 + d9 * a,
            0.0,
            0.0,
        ],
        [
            0.0,
            0.0,
            -d6 * c - 2.0 * d9 * a,
            -d6 * d / 2.0 - d9 * b,
            0.0,
            0.0,
        ],
    ])
}

/// Eigenvalues of a dense real matrix given as row-major entries.
///
/// The matrix is first conjugated by a fixed orthogonal matrix, which
/// leaves the spectrum untouched while filling in the sparse patterns
/// on which the plain QR iteration can stall; the iteration itself is
/// bounded so non-convergence surfaces as an error.
fn dense_eigenvalues(n: usize, flat: &[f64]) -> Result<Vec<Complex<f64>>, NormalFormError> {
    let m = DMatrix::from_row_slice(n, n, flat);
    let mixer = DMatrix::from_fn(n, n, |r, c| {
        (((1 + r * n + c) as f64) * 0.754_877_666_246_692_8).fract() - 0.5
    });
    let q = mixer.qr().q();
    let rotated = q.transpose() * m * &q;
    let schur = rotated
        .try_schur(f64::EPSILON, 100_000)
        .ok_or_else(|| NormalFormError::UnclassifiedSpectrum {
            detail: "eigenvalue iteration did not converge".to_string(),
        })?;
    Ok(schur.complex_eigenvalues().iter().copied().collect())
}

/// Classifies a spectrum into the four transverse stability types.
///
/// Eigenvalues below `1e-12` of the largest magnitude are marginal
/// directions along the family and are ignored; the rest must fit one
/// of the patterns.
pub fn classify(eigs: &[Complex<f64>]) -> Result<StabilityClass, NormalFormError> {
    let scale = eigs.iter().map(|e| e.norm()).fold(1.0f64, f64::max);
    let tol = CLASSIFY_TOL * scale;
    let live: Vec<&Complex<f64>> = eigs.iter().filter(|e| e.norm() > tol).collect();
    if live.is_empty() {
        return Err(NormalFormError::UnclassifiedSpectrum {
            detail: "all eigenvalues are marginal".to_string(),
        });
    }
    let re: Vec<bool> = live.iter().map(|e| e.re.abs() > tol).collect();
    let im: Vec<bool> = live.iter().map(|e| e.im.abs() > tol).collect();
    let all = |v: &[bool]| v.iter().all(|&x| x);
    let any = |v: &[bool]| v.iter().any(|&x| x);
    if all(&re) && !any(&im) {
        return Ok(StabilityClass::HH);
    }
    if all(&im) && !any(&re) {
        return Ok(StabilityClass::EE);
    }
    if re.iter().zip(&im).all(|(&r, &i)| r && i) {
        return Ok(StabilityClass::C);
    }
    let pure_re = re.iter().zip(&im).any(|(&r, &i)| r && !i);
    let pure_im = re.iter().zip(&im).any(|(&r, &i)| i && !r);
    if pure_re && pure_im {
        return Ok(StabilityClass::EH);
    }
    Err(NormalFormError::UnclassifiedSpectrum {
        detail: format!("mixed pattern in {eigs:?}"),
    })
}

/// Closed-form squared eigenvalues of the second-mode linearization,
///
/// ```text
/// lambda^2 = -(a^2 + b^2) [ (d6^2/3 - 2 d9^2)
///            +- 2 d9 sqrt(d9^2 - d6^2/3) ],
/// ```
///
/// each taken twice.  A negative radicand makes the pair complex, so
/// the quartet leaves the imaginary axis exactly when `d9` is nonzero
/// and `3 d9^2 < d6^2`.
pub fn mode2_lambda_squared(d6: f64, d9: f64, a: f64, b: f64) -> [Complex<f64>; 2] {
    let s = a * a + b * b;
    let root = Complex::new(d9 * d9 - d6 * d6 / 3.0, 0.0).sqrt();
    let base = Complex::new(d6 * d6 / 3.0 - 2.0 * d9 * d9, 0.0);
    [
        -s * (base + 2.0 * d9 * root),
        -s * (base - 2.0 * d9 * root),
    ]
}

/// Largest distance produced by greedily pairing two eigenvalue
/// multisets, nearest matches first.
///
/// Conjugate pairs make componentwise sorting of complex spectra
/// ambiguous, so multiset pairing is the reliable comparison.
pub fn spectrum_distance(want: &[Complex<f64>], have: &[Complex<f64>]) -> f64 {
    assert_eq!(want.len(), have.len(), "spectra of different sizes");
    let mut pool: Vec<Complex<f64>> = have.to_vec();
    let mut worst = 0.0f64;
    for w in want {
        let (best, dist) = pool
            .iter()
            .enumerate()
            .map(|(i, v)| (i, (v - w).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("pool is nonempty");
        worst = worst.max(dist);
        pool.swap_remove(best);
    }
    worst
}

/// Validates the shared parameters of a stability request.
fn check_amplitude_and_eps(amplitude: [f64; 2], eps: f64) -> Result<(), NormalFormError> {
    let s = amplitude[0] * amplitude[0] + amplitude[1] * amplitude[1];
    if s <= PLANE_TOL * PLANE_TOL {
        return Err(NormalFormError::DegenerateParameter {
            name: "a^2 + b^2",
            value: s,
        });
    }
    if !(eps > 0.0) {
        return Err(NormalFormError::OutOfDomain {
            name: "eps",
            value: eps,
            domain: "(0, inf)",
        });
    }
    Ok(())
}

/// Reduced matrix of a family member as a flat row-major buffer.
fn family_matrix(
    family: InvariantFamily,
    d6: f64,
    d9: f64,
    amplitude: [f64; 2],
) -> Result<(usize, Vec<f64>), NormalFormError> {
    let [a, b] = amplitude;
    match family {
        InvariantFamily::Mode1 => Ok((4, mode1_matrix(d6, a, b).concat())),
        InvariantFamily::Mode2 => Ok((4, mode2_matrix(d6, d9, a, b).concat())),
        InvariantFamily::Mode3 => {
            if d9.abs() > THIRD_INTEGRAL_TOL {
                return Err(NormalFormError::ModeNotInvariant { d9 });
            }
            Ok((4, mode3_matrix(d6, a, b).concat()))
        }
        InvariantFamily::Edge => Ok((6, edge_matrix(d6, d9, a, b)?.concat())),
    }
}

/// Linear stability of a normal mode or edge equilibrium with the given
/// amplitude pair.
///
/// The reduced matrix is scaled so that the physical exponents are its
/// eigenvalues times `7 eps / 2`; the report keeps the two factors
/// separate.
pub fn normal_mode_stability(
    family: InvariantFamily,
    d6: f64,
    d9: f64,
    amplitude: [f64; 2],
    eps: f64,
) -> Result<StabilityReport, NormalFormError> {
    check_amplitude_and_eps(amplitude, eps)?;
    let (n, flat) = family_matrix(family, d6, d9, amplitude)?;
    let mut eigs = dense_eigenvalues(n, &flat)?;
    let class = classify(&eigs)?;
    eigs.sort_by(|p, q| p.re.total_cmp(&q.re).then(p.im.total_cmp(&q.im)));
    Ok(StabilityReport {
        family,
        amplitude,
        eigenvalues: eigs.into_iter().map(Eigenvalue::from).collect(),
        scale: 3.5 * eps,
        class,
    })
}

/// Largest greedy-pairing distance between the eigenvalues of the
/// closed-form reduced matrix and those of a finite-difference Jacobian
/// of the co-moving field at the matching equilibrium.
///
/// Both spectra carry the physical `7 eps / 2` factor.  The reduced
/// matrices of the pure modes act on the transverse pairs only, so the
/// Jacobian is restricted to those rows and columns; its remaining
/// block vanishes at the equilibrium.
pub fn crosscheck_spectrum(
    family: InvariantFamily,
    d6: f64,
    d9: f64,
    amplitude: [f64; 2],
    eps: f64,
) -> Result<f64, NormalFormError> {
    check_amplitude_and_eps(amplitude, eps)?;
    let [a, b] = amplitude;
    let (state, idx): ([f64; 6], Vec<usize>) = match family {
        InvariantFamily::Mode1 => (mode1_comoving(a, b), vec![2, 3, 4, 5]),
        InvariantFamily::Mode2 => (mode2_comoving(a, b), vec![0, 1, 4, 5]),
        InvariantFamily::Mode3 => {
            if d9.abs() > THIRD_INTEGRAL_TOL {
                return Err(NormalFormError::ModeNotInvariant { d9 });
            }
            (mode3_comoving(a, b), vec![0, 1, 2, 3])
        }
        InvariantFamily::Edge => (edge_family(d6, d9, a, b)?.state, (0..6).collect()),
    };
    let jac = comoving_jacobian(&state, d6, d9, eps);
    let n = idx.len();
    let mut sub = Vec::with_capacity(n * n);
    for &r in &idx {
        for &c in &idx {
            sub.push(jac[r][c]);
        }
    }
    let fd_eigs = dense_eigenvalues(n, &sub)?;
    let (_, flat) = family_matrix(family, d6, d9, amplitude)?;
    let scale = 3.5 * eps;
    let scaled: Vec<Complex<f64>> = dense_eigenvalues(n, &flat)?
        .into_iter()
        .map(|z| z * scale)
        .collect();
    Ok(spectrum_distance(&scaled, &fd_eigs))
}

/// Second-mode stability along the resonant mass curve.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct HopfScanPoint {
    /// Curve parameter.
    pub u: f64,
    /// Resonant couplings at `u`.
    pub d6: f64,
    pub d9: f64,
    /// `d6^2 - 3 d9^2`; positive together with a nonzero `d9` puts the
    /// quartet off the imaginary axis.
    pub discriminant: f64,
    /// Class of the second-mode linearization.
    pub class: StabilityClass,
}

/// Classifies the second normal mode along the curve `u in [0, u_max]`.
///
/// At `u = 0` the detuning coupling `d9` vanishes and the mode is
/// elliptic; any positive `u` switches on `d9` and moves the doubled
/// imaginary pair into a complex quartet, the Hamiltonian-Hopf
/// scenario without parameter crossing.
pub fn hopf_scan(u_max: f64, count: usize) -> Result<Vec<HopfScanPoint>, NormalFormError> {
    if count < 2 {
        return Err(NormalFormError::OutOfDomain {
            name: "count",
            value: count as f64,
            domain: "[2, inf)",
        });
    }
    if !(u_max > 0.0) {
        return Err(NormalFormError::OutOfDomain {
            name: "u_max",
            value: u_max,
            domain: "(0, u1)",
        });
    }
    let mut points = Vec::with_capacity(count);
    for k in 0..count {
        let u = u_max * k as f64 / (count - 1) as f64;
        let coeffs = cubic_from_table(u, 1.0)?;
        let (d6, d9) = (coeffs.d6(), coeffs.d9());
        let eigs = dense_eigenvalues(4, &mode2_matrix(d6, d9, 1.0, 0.0).concat())?;
        points.push(HopfScanPoint {
            u,
            d6,
            d9,
            discriminant: d6 * d6 - 3.0 * d9 * d9,
            class: classify(&eigs)?,
        });
    }
    Ok(points)
}

#[cfg(test)]
mod tests {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;

    const CASE0: (f64, f64) = (-0.02290810644963621, 0.0);
    const CASE1: (f64, f64) = (-0.03062292208153298, -0.00894379517446523);
    const CASE2: (f64, f64) = (-0.03378773723033789, -0.01056007933143469);
    const AMP: [f64; 2] = [1.3, -0.7];

    fn class_of(family: InvariantFamily, d6: f64, d9: f64) -> StabilityClass {
        normal_mode_stability(family, d6, d9, AMP, 0.5)
            .unwrap()
            .class
    }

    #[test]
    fn the_first_mode_is_hyperbolic_for_every_case() {
        for (d6, d9) in [CASE0, CASE1, CASE2] {
            assert_eq!(class_of(InvariantFamily::Mode1, d6, d9), StabilityClass::HH);
        }
        let s = AMP[0] * AMP[0] + AMP[1] * AMP[1];
        let report = normal_mode_stability(InvariantFamily::Mode1, CASE0.0, 0.0, AMP, 0.5).unwrap();
        let expect = (s / 2.0).sqrt() * CASE0.0.abs();
        for e in &report.eigenvalues {
            assert!((e.re.abs() - expect).abs() < 1e-12);
            assert!(e.im.abs() < 1e-12);
        }
        assert!((report.scale - 1.75).abs() < 1e-15);
    }

    #[test]
    fn the_second_mode_turns_complex_when_the_detuning_switches_on() {
        assert_eq!(class_of(InvariantFamily::Mode2, CASE0.0, CASE0.1), StabilityClass::EE);
        assert_eq!(class_of(InvariantFamily::Mode2, CASE1.0, CASE1.1), StabilityClass::C);
        assert_eq!(class_of(InvariantFamily::Mode2, CASE2.0, CASE2.1), StabilityClass::C);
        let s = AMP[0] * AMP[0] + AMP[1] * AMP[1];
        let report = normal_mode_stability(InvariantFamily::Mode2, CASE0.0, 0.0, AMP, 0.5).unwrap();
        let expect = (s / 3.0).sqrt() * CASE0.0.abs();
        for e in &report.eigenvalues {
            assert!(e.re.abs() < 1e-12);
            assert!((e.im.abs() - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn the_third_mode_is_elliptic_and_exists_only_without_detuning() {
        assert_eq!(class_of(InvariantFamily::Mode3, CASE0.0, CASE0.1), StabilityClass::EE);
        assert!(matches!(
            normal_mode_stability(InvariantFamily::Mode3, CASE1.0, CASE1.1, AMP, 0.5),
            Err(NormalFormError::ModeNotInvariant { .. })
        ));
        let s = AMP[0] * AMP[0] + AMP[1] * AMP[1];
        let report = normal_mode_stability(InvariantFamily::Mode3, CASE0.0, 0.0, AMP, 0.5).unwrap();
        let expect = (s / 6.0).sqrt() * CASE0.0.abs();
        for e in &report.eigenvalues {
            assert!(e.re.abs() < 1e-12);
            assert!((e.im.abs() - expect).abs() < 1e-12);
        }
    }

    #[test]
    fn the_edge_spectrum_has_two_marginal_and_four_equal_elliptic_exponents() {
        for (d6, d9) in [CASE0, CASE1, CASE2] {
            let report =
                normal_mode_stability(InvariantFamily::Edge, d6, d9, AMP, 0.5).unwrap();
            assert_eq!(report.class, StabilityClass::EE);
            let mut mags: Vec<f64> = report
                .eigenvalues
                .iter()
                .map(|e| (e.re * e.re + e.im * e.im).sqrt())
                .collect();
            mags.sort_by(f64::total_cmp);
            assert!(mags[0] < 1e-13 && mags[1] < 1e-13, "marginal pair {mags:?}");
            let top = mags[5];
            assert!(top > 1e-3);
            for &m in &mags[2..] {
                assert!((m - top).abs() < 1e-10 * top, "equal pairs {mags:?}");
            }
            for e in &report.eigenvalues {
                assert!(e.re.abs() < 1e-12);
            }
        }
    }

    #[test]
    fn squared_mode_matrices_are_proportional_to_the_identity() {
        let (d6, _) = CASE0;
        let (a, b) = (0.4, 1.1);
        let s = a * a + b * b;
        let m1 = mode1_matrix(d6, a, b);
        let m3 = mode3_matrix(d6, a, b);
        for r in 0..4 {
            for c in 0..4 {
                let sq1: f64 = (0..4).map(|k| m1[r][k] * m1[k][c]).sum();
                let sq3: f64 = (0..4).map(|k| m3[r][k] * m3[k][c]).sum();
                let want = if r == c { s * d6 * d6 } else { 0.0 };
                assert!((sq1 - want / 2.0).abs() < 1e-18);
                assert!((sq3 + want / 6.0).abs() < 1e-18);
            }
        }
    }

    #[test]
    fn closed_form_squares_match_the_matrix_spectrum_on_random_draws() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let mut drawn = 0;
        while drawn < 100 {
            let d6: f64 = rng.random_range(-1.0..1.0);
            let d9: f64 = rng.random_range(-1.0..1.0);
            let a: f64 = rng.random_range(-1.0..1.0);
            let b: f64 = rng.random_range(-1.0..1.0);
            if d6.abs() < 1e-3 {
                continue;
            }
            drawn += 1;
            let eigs = dense_eigenvalues(4, &mode2_matrix(d6, d9, a, b).concat()).unwrap();
            let squares: Vec<Complex<f64>> = eigs.iter().map(|z| z * z).collect();
            let [f1, f2] = mode2_lambda_squared(d6, d9, a, b);
            assert!(spectrum_distance(&[f1, f1, f2, f2], &squares) < 1e-12);
        }
    }

    #[test]
    fn eigenvalue_magnitudes_only_depend_on_the_amplitude_radius() {
        let (d6, d9) = CASE1;
        let mut base: Option<Vec<f64>> = None;
        for k in 0..7 {
            let th = 2.0 * std::f64::consts::PI * k as f64 / 6.0;
            let report = normal_mode_stability(
                InvariantFamily::Mode2,
                d6,
                d9,
                [1.5 * th.cos(), 1.5 * th.sin()],
                0.5,
            )
            .unwrap();
            let mut mags: Vec<f64> = report
                .eigenvalues
                .iter()
                .map(|e| (e.re * e.re + e.im * e.im).sqrt())
                .collect();
            mags.sort_by(f64::total_cmp);
            match &base {
                None => base = Some(mags),
                Some(b) => {
                    for (m, want) in mags.iter().zip(b) {
                        assert!((m - want).abs() < 1e-12);
                    }
                }
            }
        }
    }

    #[test]
    fn reduced_matrices_reproduce_the_jacobian_spectra_of_the_flow() {
        for (d6, d9) in [CASE0, CASE1, CASE2] {
            for family in [
                InvariantFamily::Mode1,
                InvariantFamily::Mode2,
                InvariantFamily::Edge,
            ] {
                let dist = crosscheck_spectrum(family, d6, d9, AMP, 2.0 / 7.0).unwrap();
                assert!(dist < 1e-8, "{family} at ({d6}, {d9}): {dist}");
            }
        }
        let dist = crosscheck_spectrum(InvariantFamily::Mode3, CASE0.0, 0.0, AMP, 2.0 / 7.0);
        assert!(dist.unwrap() < 1e-8);
    }

    #[test]
    fn pure_mode_jacobian_blocks_equal_the_reduced_matrices_up_to_sign() {
        let (d6, d9) = (CASE1.0, CASE1.1);
        let jac1 = comoving_jacobian(&mode1_comoving(AMP[0], AMP[1]), d6, d9, 2.0 / 7.0);
        let m1 = mode1_matrix(d6, AMP[0], AMP[1]);
        for (r, rows) in [2, 3, 4, 5].iter().enumerate() {
            for (c, cols) in [2, 3, 4, 5].iter().enumerate() {
                assert!((jac1[*rows][*cols] + m1[r][c]).abs() < 1e-12);
            }
        }
        let jac2 = comoving_jacobian(&mode2_comoving(AMP[0], AMP[1]), d6, d9, 2.0 / 7.0);
        let m2 = mode2_matrix(d6, d9, AMP[0], AMP[1]);
        for (r, rows) in [0, 1, 4, 5].iter().enumerate() {
            for (c, cols) in [0, 1, 4, 5].iter().enumerate() {
                assert!((jac2[*rows][*cols] - m2[r][c]).abs() < 1e-12);
            }
        }
        let jac3 = comoving_jacobian(&mode3_comoving(AMP[0], AMP[1]), CASE0.0, 0.0, 2.0 / 7.0);
        let m3 = mode3_matrix(CASE0.0, AMP[0], AMP[1]);
        for (r, rows) in [0, 1, 2, 3].iter().enumerate() {
            for (c, cols) in [0, 1, 2, 3].iter().enumerate() {
                assert!((jac3[*rows][*cols] + m3[r][c]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn the_scan_along_the_curve_leaves_the_imaginary_axis_immediately() {
        let points = hopf_scan(0.8, 17).unwrap();
        assert_eq!(points.len(), 17);
        assert_eq!(points[0].class, StabilityClass::EE);
        assert_eq!(points[0].d9, 0.0);
        for p in &points[1..] {
            assert_eq!(p.class, StabilityClass::C, "u = {}", p.u);
            assert!(p.d9.abs() > 0.0);
            assert!(p.discriminant > 0.0);
        }
        assert!(hopf_scan(-0.1, 5).is_err());
        assert!(hopf_scan(0.5, 1).is_err());
    }

    #[test]
    fn degenerate_requests_are_rejected() {
        assert!(matches!(
            normal_mode_stability(InvariantFamily::Mode1, CASE1.0, CASE1.1, [0.0, 0.0], 0.5),
            Err(NormalFormError::DegenerateParameter { .. })
        ));
        assert!(normal_mode_stability(InvariantFamily::Mode1, CASE1.0, CASE1.1, AMP, 0.0).is_err());
        assert!(matches!(
            normal_mode_stability(InvariantFamily::Edge, 0.0, 0.1, AMP, 0.5),
            Err(NormalFormError::DegenerateParameter { name: "d6", .. })
        ));
    }
}
