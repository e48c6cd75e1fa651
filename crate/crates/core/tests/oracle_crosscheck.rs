//! Exact round probabilities computed three ways: the oracle, the
//! quantum-core pipeline, and dense N×N projector matrices.

use std::collections::BTreeSet;

use approx::assert_abs_diff_eq;
use interrogate::oracle::{exact_misidentification_probability, exact_round_distribution};
use interrogate::protocols::{build_reference_state, RoundKernel};
use interrogate::quantum::{prepare_uniform_superposition, Eigenvalue};
use interrogate::{Complex64, PixelArray64};

type Matrix = Vec<Vec<Complex64>>;

fn projector(v: &[Complex64]) -> Matrix {
    let norm: f64 = v.iter().map(|z| z.norm_sqr()).sum();
    v.iter().map(|a| v.iter().map(|b| a * b.conj() / norm).collect()).collect()
}

fn apply(m: &Matrix, v: &[Complex64]) -> Vec<Complex64> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

fn complement(m: &Matrix) -> Matrix {
    let n = m.len();
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { Complex64::new(1.0, 0.0) - m[i][j] } else { -m[i][j] }).collect())
        .collect()
}

/// Absorptions, then eigenvalue one, then eigenvalue zero split by beam.
fn dense_outcomes(theoretical: &PixelArray64, actual: &PixelArray64) -> Vec<f64> {
    let n = theoretical.len();
    let amp = 1.0 / (n as f64).sqrt();
    let mut out: Vec<f64> = (0..n).map(|i| amp * amp * (1.0 - actual.transparencies()[i].norm_sqr())).collect();
    let transmitted: Vec<Complex64> = actual.transparencies().iter().map(|a| a * amp).collect();
    let p1 = projector(theoretical.transparencies());
    let p0 = complement(&p1);
    out.push(apply(&p1, &transmitted).iter().map(|z| z.norm_sqr()).sum());
    for i in 0..n {
        let mut diag: Matrix = vec![vec![Complex64::new(0.0, 0.0); n]; n];
        diag[i][i] = Complex64::new(1.0, 0.0);
        out.push(apply(&diag, &apply(&p0, &transmitted)).iter().map(|z| z.norm_sqr()).sum());
    }
    out
}

fn pipeline_outcomes(theoretical: &PixelArray64, actual: &PixelArray64) -> Vec<f64> {
    let n = theoretical.len();
    let probe = prepare_uniform_superposition(n).unwrap();
    let reference = build_reference_state(theoretical, &vec![true; n]).unwrap();
    let kernel = RoundKernel::new(&probe, actual, &reference).unwrap();
    let t = kernel.transmission();
    let mut out = t.p_absorb().to_vec();
    match kernel.projection() {
        Some(m) => {
            out.push(t.p_survive() * m.p_one());
            let p_zero = t.p_survive() * (1.0 - m.p_one());
            match m.post_state(Eigenvalue::Zero) {
                Some(post) if p_zero > 0.0 => {
                    let beams: Vec<f64> = post.probabilities().collect();
                    out.extend(beams.iter().map(|b| b * p_zero));
                }
                _ => out.extend(std::iter::repeat_n(0.0, n)),
            }
        }
        None => out.extend(std::iter::repeat_n(0.0, n + 1)),
    }
    out
}

fn cases() -> Vec<(PixelArray64, PixelArray64)> {
    let c = Complex64::new;
    let polar = Complex64::from_polar;
    vec![
        (PixelArray64::from_real(&[1.0, 1.0]).unwrap(), PixelArray64::from_real(&[1.0, 0.5]).unwrap()),
        (PixelArray64::from_real(&[1.0; 4]).unwrap(), PixelArray64::from_real(&[0.0, 1.0, 1.0, 1.0]).unwrap()),
        (
            PixelArray64::new(vec![c(0.7, 0.0), c(0.0, 0.6), polar(0.9, 2.0), c(0.1, -0.3), c(0.5, 0.5)]).unwrap(),
            PixelArray64::new(vec![c(0.7, 0.0), c(0.3, 0.2), polar(0.9, -1.0), c(0.1, -0.3), c(0.0, 0.0)]).unwrap(),
        ),
        (
            PixelArray64::from_real(&[0.7; 8]).unwrap(),
            PixelArray64::uniform(8, polar(0.7, 0.4)).unwrap(),
        ),
        (
            PixelArray64::new(vec![c(0.0, 0.0), c(0.5, 0.0), c(0.0, 0.5)]).unwrap(),
            PixelArray64::new(vec![c(0.2, 0.0), c(0.5, 0.0), c(0.0, 0.5)]).unwrap(),
        ),
    ]
}

#[test]
fn three_routes_agree() {
    for (theoretical, actual) in cases() {
        let dense = dense_outcomes(&theoretical, &actual);
        let oracle = exact_round_distribution(&theoretical, &actual).unwrap().outcomes();
        let pipeline = pipeline_outcomes(&theoretical, &actual);
        assert_eq!(dense.len(), oracle.len());
        assert_eq!(dense.len(), pipeline.len());
        for (k, ((d, o), p)) in dense.iter().zip(&oracle).zip(&pipeline).enumerate() {
            assert_abs_diff_eq!(*d, *o, epsilon = 1e-12);
            assert!((d - p).abs() < 1e-12, "outcome {k}: dense {d} vs pipeline {p}");
        }
        assert_abs_diff_eq!(dense.iter().sum::<f64>(), 1.0, epsilon = 1e-12);
    }
}

#[test]
fn opaque_pixel_misidentification_is_one_over_n() {
    // α' = 0 at one of four transparent pixels: beams (9, 1, 1, 1)/64
    let theoretical = PixelArray64::from_real(&[1.0; 4]).unwrap();
    let actual = PixelArray64::from_real(&[0.0, 1.0, 1.0, 1.0]).unwrap();
    let dense = dense_outcomes(&theoretical, &actual);
    assert_abs_diff_eq!(dense[5], 9.0 / 64.0, epsilon = 1e-15);
    assert_abs_diff_eq!(dense[6], 1.0 / 64.0, epsilon = 1e-15);
    let set: BTreeSet<usize> = [0].into();
    let m = exact_misidentification_probability(&theoretical, &actual, &set).unwrap();
    assert_abs_diff_eq!(m.p_misid, 0.25, epsilon = 1e-14);
}

#[test]
fn uniform_single_defect_misidentification_scales_as_one_over_n() {
    for n in [8usize, 32, 128, 512] {
        let theoretical = PixelArray64::from_real(&vec![0.7; n]).unwrap();
        let actual = theoretical.with_pixel(n / 2, Complex64::new(0.5, 0.0)).unwrap();
        let dense = dense_outcomes(&theoretical, &actual);
        let zero_mass: f64 = dense[n + 1..].iter().sum();
        let good = zero_mass - dense[n + 1 + n / 2];
        let set: BTreeSet<usize> = [n / 2].into();
        let m = exact_misidentification_probability(&theoretical, &actual, &set).unwrap();
        assert_abs_diff_eq!(m.p_misid, good / zero_mass, epsilon = 1e-10);
        assert_abs_diff_eq!(m.p_misid * n as f64, 1.0, epsilon = 1e-9);
    }
}
