//! Exact arithmetic in `Q(λ)` and the frequency value type.
//!
//! Elements of `Q(λ)` are rational coordinate vectors in the power basis
//! `1, λ, …, λ^{d-1}`, reduced modulo the (monic, integer) minimal
//! polynomial of `λ`. Frequencies are either such exact elements or
//! floating values carrying a comparison tolerance.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::poly::format_polynomial;

/// The number field `Q(λ)` generated by a real algebraic integer.
#[derive(Clone, Debug)]
pub struct NumberField {
    minimal_polynomial: Vec<BigInt>,
    embedding: f64,
    /// For degree 2: `λ = (-c1 + s·√D)/2` with `D` squarefree.
    quadratic: Option<(BigInt, BigInt)>,
}

impl PartialEq for NumberField {
    fn eq(&self, other: &Self) -> bool {
        self.minimal_polynomial == other.minimal_polynomial
    }
}

impl Eq for NumberField {}

impl NumberField {
    /// `minimal_polynomial` must be monic, irreducible over `Q`, with ascending
    /// coefficients; `embedding` is the real root representing `λ`.
    pub fn new(minimal_polynomial: Vec<BigInt>, embedding: f64) -> Arc<Self> {
        assert!(minimal_polynomial.len() >= 2, "degree must be at least 1");
        assert!(
            minimal_polynomial.last().map(|c| c.is_one()).unwrap_or(false),
            "minimal polynomial must be monic"
        );
        let quadratic = if minimal_polynomial.len() == 3 {
            let c0 = &minimal_polynomial[0];
            let c1 = &minimal_polynomial[1];
            let disc = c1 * c1 - BigInt::from(4) * c0;
            let (s, d) = squarefree_split(&disc);
            // the root with +√D is the larger one
            Some((s, d))
        } else {
            None
        };
        Arc::new(NumberField {
            minimal_polynomial,
            embedding,
            quadratic,
        })
    }

    /// `Q` itself, presented as `Q(r)` for an integer `r`.
    pub fn rational(root: i64) -> Arc<Self> {
        Self::new(vec![BigInt::from(-root), BigInt::one()], root as f64)
    }

    pub fn degree(&self) -> usize {
        self.minimal_polynomial.len() - 1
    }

    pub fn minimal_polynomial(&self) -> &[BigInt] {
        &self.minimal_polynomial
    }

    pub fn embedding(&self) -> f64 {
        self.embedding
    }

    /// Squarefree part `D` of the discriminant for quadratic fields.
    pub fn sqrt_part(&self) -> Option<&BigInt> {
        self.quadratic.as_ref().map(|(_, d)| d)
    }

    pub fn describe(&self) -> String {
        format!("Q(l), l = {:.15} root of {}", self.embedding, format_polynomial(&self.minimal_polynomial))
    }
}

fn squarefree_split(n: &BigInt) -> (BigInt, BigInt) {
    // n = s^2 * d with d squarefree (sign kept in d)
    let sign = if n.is_negative() { -BigInt::one() } else { BigInt::one() };
    let mut rest = n.abs();
    let mut s = BigInt::one();
    let mut p = BigInt::from(2);
    while &p * &p <= rest {
        let sq = &p * &p;
        while (&rest % &sq).is_zero() {
            rest /= &sq;
            s *= &p;
        }
        p += 1;
    }
    (s, rest * sign)
}

/// An element of `Q(λ)`.
#[derive(Clone, Debug)]
pub struct AlgebraicNumber {
    field: Arc<NumberField>,
    coords: Vec<BigRational>,
}

impl PartialEq for AlgebraicNumber {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords && *self.field == *other.field
    }
}

impl Eq for AlgebraicNumber {}

impl Hash for AlgebraicNumber {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

impl AlgebraicNumber {
    pub fn from_coords(field: &Arc<NumberField>, coords: Vec<BigRational>) -> Self {
        let mut x = AlgebraicNumber {
            field: Arc::clone(field),
            coords,
        };
        x.reduce();
        x
    }

    pub fn zero(field: &Arc<NumberField>) -> Self {
        Self::from_rational(field, BigRational::zero())
    }

    pub fn one(field: &Arc<NumberField>) -> Self {
        Self::from_rational(field, BigRational::one())
    }

    pub fn from_integer(field: &Arc<NumberField>, n: i64) -> Self {
        Self::from_rational(field, BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(field: &Arc<NumberField>, q: BigRational) -> Self {
        let mut coords = vec![BigRational::zero(); field.degree()];
        coords[0] = q;
        AlgebraicNumber {
            field: Arc::clone(field),
            coords,
        }
    }

    /// The generator `λ`.
    pub fn generator(field: &Arc<NumberField>) -> Self {
        Self::from_coords(
            field,
            vec![BigRational::zero(), BigRational::one()],
        )
    }

    pub fn field(&self) -> &Arc<NumberField> {
        &self.field
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    fn reduce(&mut self) {
        let d = self.field.degree();
        let mp = &self.field.minimal_polynomial;
        while self.coords.len() > d {
            let lead = self.coords.pop().expect("nonempty");
            if lead.is_zero() {
                continue;
            }
            let shift = self.coords.len() - d;
            for (i, c) in mp[..d].iter().enumerate() {
                self.coords[shift + i] -= &lead * BigRational::from_integer(c.clone());
            }
        }
        self.coords.resize(d, BigRational::zero());
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coords.iter().skip(1).all(|c| c.is_zero())
    }

    fn check_field(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field,
            "mixing elements of different number fields"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_field(other);
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + b)
            .collect();
        AlgebraicNumber {
            field: Arc::clone(&self.field),
            coords,
        }
    }

    pub fn neg(&self) -> Self {
        AlgebraicNumber {
            field: Arc::clone(&self.field),
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_field(other);
        let d = self.field.degree();
        let mut prod = vec![BigRational::zero(); 2 * d - 1];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coords.iter().enumerate() {
                prod[i + j] += a * b;
            }
        }
        Self::from_coords(&self.field, prod)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        AlgebraicNumber {
            field: Arc::clone(&self.field),
            coords: self.coords.iter().map(|a| a * q).collect(),
        }
    }

    /// Multiplicative inverse, solving `x · y = 1` through the matrix of
    /// multiplication by `x`. `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let d = self.field.degree();
        // column j = coords of x * λ^j
        let mut cols = Vec::with_capacity(d);
        let mut basis = AlgebraicNumber::one(&self.field);
        let gen = AlgebraicNumber::generator(&self.field);
        for _ in 0..d {
            cols.push(self.mul(&basis).coords);
            basis = basis.mul(&gen);
        }
        let mut a: Vec<Vec<BigRational>> = (0..d)
            .map(|i| (0..d).map(|j| cols[j][i].clone()).collect())
            .collect();
        let mut b = vec![BigRational::zero(); d];
        b[0] = BigRational::one();
        let sol = solve_rational(&mut a, &mut b)?;
        Some(AlgebraicNumber {
            field: Arc::clone(&self.field),
            coords: sol,
        })
    }

    pub fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|y| self.mul(&y))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = AlgebraicNumber::one(&self.field);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Real value under the embedding `λ ↦ field.embedding()`.
    pub fn to_f64(&self) -> f64 {
        if let Some((s, d)) = &self.field.quadratic {
            // a + bλ = (a - b c1/2) + (b s/2) √D; avoids powering λ
            let c1 = BigRational::from_integer(self.field.minimal_polynomial[1].clone());
            let two = BigRational::from_integer(BigInt::from(2));
            let p = &self.coords[0] - &self.coords[1] * &c1 / &two;
            let q = &self.coords[1] * BigRational::from_integer(s.clone()) / &two;
            return ratio_f64(&p) + ratio_f64(&q) * d.to_f64().unwrap_or(f64::NAN).sqrt();
        }
        let lam = self.field.embedding;
        self.coords
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * lam + ratio_f64(c))
    }

    /// For degree 2: integers `(p, q, r)` with value `(p + q√D)/r`, `r > 0`.
    pub fn quadratic_form(&self) -> Option<(BigInt, BigInt, BigInt)> {
        let (s, _) = self.field.quadratic.as_ref()?;
        let c1 = BigRational::from_integer(self.field.minimal_polynomial[1].clone());
        let two = BigRational::from_integer(BigInt::from(2));
        let p = &self.coords[0] - &self.coords[1] * &c1 / &two;
        let q = &self.coords[1] * BigRational::from_integer(s.clone()) / &two;
        let r = p.denom().lcm(q.denom());
        let pn = p.numer() * (&r / p.denom());
        let qn = q.numer() * (&r / q.denom());
        Some((pn, qn, r))
    }
}

pub(crate) fn ratio_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        let n = q.numer().to_f64().unwrap_or(f64::NAN);
        let d = q.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for AlgebraicNumber {
    /// Degree 1: `p/q`. Degree 2: `(p + q*sqrt(D))/r`. Otherwise the
    /// coordinate tuple `[c0, c1, …]` in the power basis of `λ`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.field.degree() {
            1 => f.write_str(&format_rational(&self.coords[0])),
            2 => {
                let (p, q, r) = self.quadratic_form().expect("quadratic field");
                let d = self.field.sqrt_part().expect("quadratic field");
                if q.is_zero() {
                    return f.write_str(&format_rational(&BigRational::new(p, r)));
                }
                let root = if q.abs().is_one() {
                    format!("sqrt({d})")
                } else {
                    format!("{}*sqrt({d})", q.abs())
                };
                let (num, compound) = if p.is_zero() {
                    (if q.is_negative() { format!("-{root}") } else { root }, false)
                } else {
                    let sign = if q.is_negative() { '-' } else { '+' };
                    (format!("{p} {sign} {root}"), true)
                };
                if r.is_one() {
                    f.write_str(&num)
                } else if compound {
                    write!(f, "({num})/{r}")
                } else {
                    write!(f, "{num}/{r}")
                }
            }
            _ => {
                let parts: Vec<String> = self.coords.iter().map(format_rational).collect();
                write!(f, "[{}]", parts.join(", "))
            }
        }
    }
}

/// Gaussian elimination over `Q`; `None` if singular.
fn solve_rational(a: &mut [Vec<BigRational>], b: &mut [BigRational]) -> Option<Vec<BigRational>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        b.swap(col, piv);
        let inv = a[col][col].recip();
        for j in col..n {
            a[col][j] = &a[col][j] * &inv;
        }
        b[col] = &b[col] * &inv;
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for j in col..n {
                let t = &factor * &a[col][j];
                a[r][j] -= t;
            }
            let t = &factor * &b[col];
            b[r] -= t;
        }
    }
    Some(b.to_vec())
}

/// Floating frequency with the relative tolerance used for equality.
#[derive(Clone, Copy, Debug)]
pub struct ApproxValue {
    pub value: f64,
    pub tolerance: f64,
}

/// Default relative tolerance for comparing approximate frequencies.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;
/// Values closer than this, yet unequal, are flagged as possible false splits.
pub const NEAR_SPLIT: f64 = 1e-6;

/// A factor frequency `ρ(w)`.
#[derive(Clone, Debug)]
pub enum FrequencyValue {
    Exact(AlgebraicNumber),
    Approx(ApproxValue),
}

impl FrequencyValue {
    pub fn approx(value: f64, tolerance: f64) -> Self {
        FrequencyValue::Approx(ApproxValue { value, tolerance })
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, FrequencyValue::Exact(_))
    }

    pub fn as_exact(&self) -> Option<&AlgebraicNumber> {
        match self {
            FrequencyValue::Exact(x) => Some(x),
            FrequencyValue::Approx(_) => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            FrequencyValue::Exact(x) => x.to_f64(),
            FrequencyValue::Approx(a) => a.value,
        }
    }

    /// A value of the same kind as `self`.
    pub fn zero_like(&self) -> Self {
        match self {
            FrequencyValue::Exact(x) => FrequencyValue::Exact(AlgebraicNumber::zero(x.field())),
            FrequencyValue::Approx(a) => FrequencyValue::approx(0.0, a.tolerance),
        }
    }

    pub fn one_like(&self) -> Self {
        match self {
            FrequencyValue::Exact(x) => FrequencyValue::Exact(AlgebraicNumber::one(x.field())),
            FrequencyValue::Approx(a) => FrequencyValue::approx(1.0, a.tolerance),
        }
    }

    pub fn from_integer_like(&self, n: i64) -> Self {
        match self {
            FrequencyValue::Exact(x) => {
                FrequencyValue::Exact(AlgebraicNumber::from_integer(x.field(), n))
            }
            FrequencyValue::Approx(a) => FrequencyValue::approx(n as f64, a.tolerance),
        }
    }

    fn zip(&self, other: &Self, exact: impl Fn(&AlgebraicNumber, &AlgebraicNumber) -> AlgebraicNumber, approx: impl Fn(f64, f64) -> f64) -> Self {
        match (self, other) {
            (FrequencyValue::Exact(a), FrequencyValue::Exact(b)) => FrequencyValue::Exact(exact(a, b)),
            (FrequencyValue::Approx(a), FrequencyValue::Approx(b)) => FrequencyValue::approx(
                approx(a.value, b.value),
                a.tolerance.max(b.tolerance),
            ),
            _ => panic!("mixing exact and approximate frequency values"),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a.add(b), |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a.sub(b), |a, b| a - b)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a.mul(b), |a, b| a * b)
    }

    pub fn inv(&self) -> Option<Self> {
        match self {
            FrequencyValue::Exact(a) => a.inv().map(FrequencyValue::Exact),
            FrequencyValue::Approx(a) if a.value != 0.0 => {
                Some(FrequencyValue::approx(1.0 / a.value, a.tolerance))
            }
            FrequencyValue::Approx(_) => None,
        }
    }

    pub fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|y| self.mul(&y))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FrequencyValue::Exact(a) => a.is_zero(),
            FrequencyValue::Approx(a) => a.value == 0.0,
        }
    }

    /// Field equality for exact values; relative tolerance for approximate ones.
    pub fn same_value(&self, other: &Self) -> bool {
        match (self, other) {
            (FrequencyValue::Exact(a), FrequencyValue::Exact(b)) => a == b,
            (FrequencyValue::Approx(a), FrequencyValue::Approx(b)) => {
                let tol = a.tolerance.max(b.tolerance);
                let scale = a.value.abs().max(b.value.abs()).max(f64::MIN_POSITIVE);
                (a.value - b.value).abs() <= tol * scale
            }
            _ => panic!("mixing exact and approximate frequency values"),
        }
    }
}

impl fmt::Display for FrequencyValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FrequencyValue::Exact(x) => x.fmt(f),
            FrequencyValue::Approx(a) => write!(f, "{:.17e}", a.value),
        }
    }
}

/// Solves `a x = b` by Gaussian elimination with magnitude pivoting.
/// Returns `None` when the system is singular (for approximate values: when
/// a pivot falls below `1e-12` relative to the largest entry).
pub fn solve_linear(mut a: Vec<Vec<FrequencyValue>>, mut b: Vec<FrequencyValue>) -> Option<Vec<FrequencyValue>> {
    let n = b.len();
    let scale = a
        .iter()
        .flatten()
        .map(|x| x.to_f64().abs())
        .fold(0.0f64, f64::max)
        .max(f64::MIN_POSITIVE);
    for col in 0..n {
        let piv = (col..n)
            .filter(|&r| !a[r][col].is_zero())
            .max_by(|&r, &s| {
                a[r][col]
                    .to_f64()
                    .abs()
                    .partial_cmp(&a[s][col].to_f64().abs())
                    .unwrap_or(std::cmp::Ordering::Equal)
            })?;
        if !a[piv][col].is_exact() && a[piv][col].to_f64().abs() < 1e-12 * scale {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        let inv = a[col][col].inv()?;
        for j in col..n {
            a[col][j] = a[col][j].mul(&inv);
        }
        b[col] = b[col].mul(&inv);
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for j in col..n {
                let t = factor.mul(&a[col][j]);
                a[r][j] = a[r][j].sub(&t);
            }
            let t = factor.mul(&b[col]);
            b[r] = b[r].sub(&t);
        }
    }
    Some(b)
}

/// A nonzero vector `x` with `a x = 0`, assuming a one-dimensional kernel
/// (exact values only). The free coordinate is set to 1.
pub fn null_vector(mut a: Vec<Vec<FrequencyValue>>) -> Option<Vec<FrequencyValue>> {
    let rows = a.len();
    let cols = a.first()?.len();
    let one = a[0][0].one_like();
    let mut pivot_cols = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row >= rows {
            break;
        }
        let Some(piv) = (row..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, piv);
        let inv = a[row][col].inv()?;
        for j in col..cols {
            a[row][j] = a[row][j].mul(&inv);
        }
        for r in 0..rows {
            if r == row || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for j in col..cols {
                let t = factor.mul(&a[row][j]);
                a[r][j] = a[r][j].sub(&t);
            }
        }
        pivot_cols.push(col);
        row += 1;
    }
    let free = (0..cols).find(|c| !pivot_cols.contains(c))?;
    let mut x = vec![one.zero_like(); cols];
    x[free] = one.clone();
    for (r, &pc) in pivot_cols.iter().enumerate() {
        // x_pc + a[r][free] * 1 = 0 (other free columns set to zero)
        x[pc] = a[r][free].zero_like().sub(&a[r][free]);
    }
    Some(x)
}
