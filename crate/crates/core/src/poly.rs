//! Integer polynomials: characteristic polynomials of incidence matrices and
//! detection of the minimal polynomial of the Perron root.
//!
//! Coefficient vectors are ascending: `c[0] + c[1] x + … + c[d] x^d`.

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::morphism::IntegerMatrix;

type Complex64 = nalgebra::Complex<f64>;

/// Largest field degree handled in exact mode.
pub const MAX_EXACT_DEGREE: usize = 4;

/// Characteristic polynomial `det(x I - M)` by Faddeev–LeVerrier; all
/// intermediate quantities are integers.
pub fn characteristic_polynomial(m: &IntegerMatrix) -> Vec<BigInt> {
    let n = m.dim();
    let a: Vec<Vec<BigInt>> = (0..n)
        .map(|i| (0..n).map(|j| BigInt::from(m.get(i, j))).collect())
        .collect();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    // mk = M_k, starting from M_0 = 0
    let mut mk = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I
        let mut next = mat_mul(&a, &mk);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        let am = mat_mul(&a, &next);
        let trace: BigInt = (0..n).map(|i| am[i][i].clone()).sum();
        let (q, r) = (-trace).div_rem(&BigInt::from(k));
        debug_assert!(r.is_zero());
        coeffs[n - k] = q;
        mk = next;
    }
    coeffs
}

fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    let mut out = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                out[i][j] += &a[i][k] * &b[k][j];
            }
        }
    }
    out
}

/// Remainder of `p` modulo the monic polynomial `d`.
pub fn rem_monic(p: &[BigInt], d: &[BigInt]) -> Vec<BigInt> {
    assert!(d.last().map(|c| c.is_one()).unwrap_or(false), "divisor must be monic");
    let dd = d.len() - 1;
    let mut r: Vec<BigInt> = p.to_vec();
    while r.len() > dd {
        let lead = r.pop().expect("nonempty");
        if lead.is_zero() {
            continue;
        }
        let shift = r.len() - dd;
        for (i, c) in d[..dd].iter().enumerate() {
            r[shift + i] -= &lead * c;
        }
    }
    while r.last().map(|c| c.is_zero()).unwrap_or(false) {
        r.pop();
    }
    r
}

pub fn eval_f64(p: &[BigInt], x: f64) -> f64 {
    p.iter()
        .rev()
        .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
}

/// Eigenvalues of the incidence matrix as complex numbers.
pub fn eigenvalues(m: &IntegerMatrix) -> Vec<Complex64> {
    let n = m.dim();
    let dm = DMatrix::from_fn(n, n, |i, j| m.get(i, j) as f64);
    dm.complex_eigenvalues()
        .iter()
        .map(|z| Complex64::new(z.re, z.im))
        .collect()
}

/// The eigenvalue of largest modulus, taken as real.
pub fn dominant_real_eigenvalue(eigs: &[Complex64]) -> Option<f64> {
    eigs.iter()
        .filter(|z| z.im.abs() < 1e-9 * (1.0 + z.re.abs()))
        .map(|z| z.re)
        .fold(None, |best: Option<f64>, x| match best {
            Some(b) if b >= x => Some(b),
            _ => Some(x),
        })
}

/// Outcome of the minimal-polynomial search.
#[derive(Clone, Debug, PartialEq)]
pub enum MinimalPolynomial {
    Found(Vec<BigInt>),
    /// No integer factor of degree at most the cap contains the root; carries
    /// the degree of the characteristic polynomial.
    DegreeExceeds(usize),
}

/// Finds the minimal polynomial of `root`, a simple root of the monic
/// integer polynomial `charpoly`, by trying products of `(x - root)` with
/// subsets of the other numerical roots, rounding, and checking exact
/// divisibility. The first degree that succeeds is minimal, hence the
/// factor is irreducible.
pub fn minimal_polynomial(charpoly: &[BigInt], roots: &[Complex64], root: f64) -> MinimalPolynomial {
    let n = charpoly.len() - 1;
    let pos = match roots
        .iter()
        .enumerate()
        .min_by(|a, b| {
            let da = (a.1 - Complex64::new(root, 0.0)).norm();
            let db = (b.1 - Complex64::new(root, 0.0)).norm();
            da.partial_cmp(&db).expect("finite")
        }) {
        Some((i, _)) => i,
        None => return MinimalPolynomial::DegreeExceeds(n),
    };
    let others: Vec<Complex64> = roots
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != pos)
        .map(|(_, z)| *z)
        .collect();
    for d in 1..=MAX_EXACT_DEGREE.min(n) {
        let mut found = None;
        for_each_combination(others.len(), d - 1, &mut |idx| {
            if found.is_some() {
                return;
            }
            let mut p = vec![Complex64::new(1.0, 0.0)];
            p = poly_mul_linear(&p, Complex64::new(root, 0.0));
            for &i in idx {
                p = poly_mul_linear(&p, others[i]);
            }
            if let Some(int) = round_to_integers(&p) {
                if rem_monic(charpoly, &int).is_empty() {
                    found = Some(int);
                }
            }
        });
        if let Some(p) = found {
            return MinimalPolynomial::Found(p);
        }
    }
    MinimalPolynomial::DegreeExceeds(n)
}

fn poly_mul_linear(p: &[Complex64], r: Complex64) -> Vec<Complex64> {
    // p(x) * (x - r)
    let mut out = vec![Complex64::new(0.0, 0.0); p.len() + 1];
    for (i, c) in p.iter().enumerate() {
        out[i + 1] += c;
        out[i] -= c * r;
    }
    out
}

fn round_to_integers(p: &[Complex64]) -> Option<Vec<BigInt>> {
    p.iter()
        .map(|c| {
            let tol = 1e-6 * (1.0 + c.re.abs());
            let r = c.re.round();
            if c.im.abs() < tol && (c.re - r).abs() < tol {
                Some(BigInt::from(r as i64))
            } else {
                None
            }
        })
        .collect()
}

fn for_each_combination(n: usize, k: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, f);
            cur.pop();
        }
    }
    let mut cur = Vec::with_capacity(k);
    rec(0, n, k, &mut cur, f);
}

/// Writes an integer polynomial as `x^2 - 4*x + 1`.
pub fn format_polynomial(p: &[BigInt]) -> String {
    let mut out = String::new();
    for (i, c) in p.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let abs = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = match i {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        };
        if mono.is_empty() {
            out.push_str(&abs.to_string());
        } else if abs.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format!("{abs}*{mono}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
