//! Perron eigenvalue and normalized eigenvector of an incidence matrix.

use std::sync::Arc;

use crate::error::WordError;
use crate::morphism::{IntegerMatrix, Morphism};
use crate::number::{null_vector, AlgebraicNumber, FrequencyValue, NumberField, DEFAULT_TOLERANCE};
use crate::poly::{
    characteristic_polynomial, dominant_real_eigenvalue, eigenvalues, minimal_polynomial,
    MinimalPolynomial,
};

/// Arithmetic used for frequencies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Mode {
    #[default]
    Exact,
    Approx,
}

/// Threshold on the distance between successive power-iteration vectors.
pub const POWER_ITERATION_STEP: f64 = 1e-14;
/// Certified residual `‖Mx − λx‖∞` in approximate mode.
pub const RESIDUAL_BOUND: f64 = 1e-12;

#[derive(Clone, Debug)]
pub struct SpectralData {
    pub eigenvalue: FrequencyValue,
    /// Entries sum to one; they are the letter frequencies.
    pub eigenvector: Vec<FrequencyValue>,
    /// Present in exact mode.
    pub field: Option<Arc<NumberField>>,
    /// `‖Mx − λx‖∞`, zero in exact mode.
    pub residual: f64,
}

/// Perron data of a primitive morphism's incidence matrix.
///
/// Exact mode works in `Q(λ)` and fails with
/// [`WordError::FieldDegreeTooHigh`] when `λ` has degree above 4; callers fall
/// back to [`Mode::Approx`] in that case.
pub fn perron_data(m: &Morphism, mode: Mode) -> Result<SpectralData, WordError> {
    if !m.is_primitive() {
        return Err(WordError::NotPrimitive);
    }
    let mat = m.incidence_matrix();
    match mode {
        Mode::Exact => exact_perron(&mat),
        Mode::Approx => approx_perron(&mat, DEFAULT_TOLERANCE),
    }
}

pub fn perron_data_with_tolerance(m: &Morphism, mode: Mode, tolerance: f64) -> Result<SpectralData, WordError> {
    if !m.is_primitive() {
        return Err(WordError::NotPrimitive);
    }
    let mat = m.incidence_matrix();
    match mode {
        Mode::Exact => exact_perron(&mat),
        Mode::Approx => approx_perron(&mat, tolerance),
    }
}

/// The number field generated by the Perron root of `mat`.
pub fn perron_field(mat: &IntegerMatrix) -> Result<Arc<NumberField>, WordError> {
    let cp = characteristic_polynomial(mat);
    let eigs = eigenvalues(mat);
    let lam = dominant_real_eigenvalue(&eigs).ok_or(WordError::NoConvergence(f64::NAN))?;
    match minimal_polynomial(&cp, &eigs, lam) {
        MinimalPolynomial::Found(p) => Ok(NumberField::new(p, lam)),
        MinimalPolynomial::DegreeExceeds(n) => Err(WordError::FieldDegreeTooHigh(n)),
    }
}

fn exact_perron(mat: &IntegerMatrix) -> Result<SpectralData, WordError> {
    let field = perron_field(mat)?;
    let n = mat.dim();
    let lam = AlgebraicNumber::generator(&field);
    let entry = |i: usize, j: usize| {
        let mut x = AlgebraicNumber::from_integer(&field, mat.get(i, j) as i64);
        if i == j {
            x = x.sub(&lam);
        }
        FrequencyValue::Exact(x)
    };
    let a: Vec<Vec<FrequencyValue>> = (0..n).map(|i| (0..n).map(|j| entry(i, j)).collect()).collect();
    let v = null_vector(a).ok_or(WordError::NoConvergence(f64::NAN))?;
    let sum = v
        .iter()
        .skip(1)
        .fold(v[0].clone(), |acc, x| acc.add(x));
    let inv = sum.inv().ok_or(WordError::NoConvergence(f64::NAN))?;
    let eigenvector: Vec<FrequencyValue> = v.iter().map(|x| x.mul(&inv)).collect();
    Ok(SpectralData {
        eigenvalue: FrequencyValue::Exact(lam),
        eigenvector,
        field: Some(field),
        residual: 0.0,
    })
}

fn approx_perron(mat: &IntegerMatrix, tolerance: f64) -> Result<SpectralData, WordError> {
    let n = mat.dim();
    let apply = |x: &[f64]| -> Vec<f64> {
        (0..n)
            .map(|i| (0..n).map(|j| mat.get(i, j) as f64 * x[j]).sum())
            .collect()
    };
    let mut x = vec![1.0 / n as f64; n];
    let mut lam = 0.0;
    for _ in 0..1_000_000 {
        let y = apply(&x);
        let s: f64 = y.iter().sum();
        let next: Vec<f64> = y.iter().map(|v| v / s).collect();
        let step = next
            .iter()
            .zip(&x)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        x = next;
        lam = s;
        if step < POWER_ITERATION_STEP {
            break;
        }
    }
    // Rayleigh-type refinement for a nonsymmetric positive vector
    let mx = apply(&x);
    let num: f64 = mx.iter().zip(&x).map(|(a, b)| a * b).sum();
    let den: f64 = x.iter().map(|b| b * b).sum();
    if den > 0.0 {
        lam = num / den;
    }
    let residual = mx
        .iter()
        .zip(&x)
        .map(|(a, b)| (a - lam * b).abs())
        .fold(0.0, f64::max);
    if residual > RESIDUAL_BOUND {
        return Err(WordError::NoConvergence(residual));
    }
    Ok(SpectralData {
        eigenvalue: FrequencyValue::approx(lam, tolerance),
        eigenvector: x.iter().map(|&v| FrequencyValue::approx(v, tolerance)).collect(),
        field: None,
        residual,
    })
}
