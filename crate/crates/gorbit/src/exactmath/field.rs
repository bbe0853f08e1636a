//! Real quadratic field towers ℚ(√d₁,…,√dₖ) with exact arithmetic and an
//! exact sign oracle for the real embedding (every √d taken positive).
//!
//! Elements are stored as coordinate vectors over the monomial basis
//! {∏_{d∈S} √d : S ⊆ generators}, indexed by subset bitmask.

use std::fmt;
use std::sync::Arc;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use super::ExactError;

/// Checks that `d` has no repeated prime factor.
fn is_square_free(d: u64) -> bool {
    let mut n = d;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return false;
            }
        }
        p += 1;
    }
    true
}

/// A tower ℚ(√d₁,…,√dₖ) over pairwise distinct square-free generators ≥ 2.
#[derive(Debug, PartialEq, Eq)]
pub struct ScalarField {
    generators: Vec<u64>,
}

pub type Field = Arc<ScalarField>;

impl ScalarField {
    /// Builds the tower; rejects non-square-free or duplicate generators.
    pub fn new(mut ds: Vec<u64>) -> Result<Field, ExactError> {
        ds.sort_unstable();
        for w in ds.windows(2) {
            if w[0] == w[1] {
                return Err(ExactError::DuplicateGenerator(w[0]));
            }
        }
        for &d in &ds {
            if d < 2 {
                return Err(ExactError::GeneratorTooSmall(d));
            }
            if !is_square_free(d) {
                return Err(ExactError::NotSquareFree(d));
            }
        }
        Ok(Arc::new(ScalarField { generators: ds }))
    }

    /// The rationals, as the empty tower.
    pub fn rationals() -> Field {
        ScalarField::new(vec![]).unwrap()
    }

    /// Default tower ℚ(√2,√3,√5); its monomials cover √2, √6, √10, √15, √30.
    pub fn default_tower() -> Field {
        ScalarField::new(vec![2, 3, 5]).unwrap()
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    /// Dimension 2^k of the tower over ℚ.
    pub fn dimension(&self) -> usize {
        1 << self.generators.len()
    }

    /// The square-free integer ∏_{d∈S} d represented by monomial mask `s`.
    pub fn monomial_value(&self, s: usize) -> u64 {
        let mut v = 1u64;
        for (i, &d) in self.generators.iter().enumerate() {
            if s & (1 << i) != 0 {
                v *= d;
            }
        }
        v
    }

    /// Monomial product: m_s · m_t = factor · m_{s⊕t} with factor = ∏_{d∈s∩t} d.
    pub fn monomial_product(&self, s: usize, t: usize) -> (u64, usize) {
        (self.monomial_value(s & t), s ^ t)
    }
}

/// An element of a [`ScalarField`], canonical over the monomial basis.
#[derive(Clone, PartialEq, Eq)]
pub struct Scalar {
    field: Field,
    coords: Vec<BigRational>,
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({})", self)
    }
}

fn br(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Scalar {
    pub fn zero(field: &Field) -> Scalar {
        Scalar {
            field: field.clone(),
            coords: vec![BigRational::zero(); field.dimension()],
        }
    }

    pub fn one(field: &Field) -> Scalar {
        Scalar::from_rational(field, BigRational::one())
    }

    pub fn from_rational(field: &Field, q: BigRational) -> Scalar {
        let mut s = Scalar::zero(field);
        s.coords[0] = q;
        s
    }

    pub fn from_int(field: &Field, n: i64) -> Scalar {
        Scalar::from_rational(field, br(n, 1))
    }

    pub fn from_ratio(field: &Field, n: i64, d: i64) -> Scalar {
        Scalar::from_rational(field, br(n, d))
    }

    /// q · m where m is the monomial with subset mask `mask`.
    pub fn monomial(field: &Field, mask: usize, q: BigRational) -> Result<Scalar, ExactError> {
        if mask >= field.dimension() {
            return Err(ExactError::NotInField(format!("monomial mask {mask}")));
        }
        let mut s = Scalar::zero(field);
        s.coords[mask] = q;
        Ok(s)
    }

    /// √n as a field element, if n = q² · (∏_{d∈S} d) for some monomial S.
    pub fn sqrt_of_int(field: &Field, n: u64) -> Result<Scalar, ExactError> {
        if n == 0 {
            return Ok(Scalar::zero(field));
        }
        for mask in 0..field.dimension() {
            let m = field.monomial_value(mask);
            if n % m == 0 {
                let rest = n / m;
                let r = (rest as f64).sqrt().round() as u64;
                for cand in r.saturating_sub(1)..=r + 1 {
                    if cand * cand == rest {
                        return Scalar::monomial(field, mask, br(cand as i64, 1));
                    }
                }
            }
        }
        Err(ExactError::NotInField(format!("sqrt({n})")))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> bool {
        self.coords.iter().skip(1).all(|c| c.is_zero())
    }

    /// The rational coordinate on the monomial 1.
    pub fn rational_part(&self) -> &BigRational {
        &self.coords[0]
    }

    /// As a rational number, if the element lies in ℚ.
    pub fn to_rational(&self) -> Option<BigRational> {
        if self.is_rational() {
            Some(self.coords[0].clone())
        } else {
            None
        }
    }

    fn check_same(&self, other: &Scalar) -> Result<(), ExactError> {
        if self.field.generators() != other.field.generators() {
            return Err(ExactError::MixedFields);
        }
        Ok(())
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        self.check_same(other).expect("mixed fields in add");
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + b)
            .collect();
        Scalar {
            field: self.field.clone(),
            coords,
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.check_same(other).expect("mixed fields in sub");
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a - b)
            .collect();
        Scalar {
            field: self.field.clone(),
            coords,
        }
    }

    pub fn neg(&self) -> Scalar {
        Scalar {
            field: self.field.clone(),
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        self.check_same(other).expect("mixed fields in mul");
        let dim = self.field.dimension();
        let mut coords = vec![BigRational::zero(); dim];
        for s in 0..dim {
            if self.coords[s].is_zero() {
                continue;
            }
            for t in 0..dim {
                if other.coords[t].is_zero() {
                    continue;
                }
                let (factor, idx) = self.field.monomial_product(s, t);
                let mut term = &self.coords[s] * &other.coords[t];
                if factor != 1 {
                    term *= BigRational::from(BigInt::from(factor));
                }
                coords[idx] += term;
            }
        }
        Scalar {
            field: self.field.clone(),
            coords,
        }
    }

    pub fn scale(&self, q: &BigRational) -> Scalar {
        Scalar {
            field: self.field.clone(),
            coords: self.coords.iter().map(|c| c * q).collect(),
        }
    }

    /// Multiplicative inverse; solves x·y = 1 over the monomial basis.
    pub fn inverse(&self) -> Result<Scalar, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        let dim = self.field.dimension();
        if dim == 1 {
            return Ok(Scalar::from_rational(
                &self.field,
                self.coords[0].recip(),
            ));
        }
        // Multiplication-by-self matrix over ℚ, column t = coords of self · m_t.
        let mut mat = vec![vec![BigRational::zero(); dim]; dim];
        for s in 0..dim {
            if self.coords[s].is_zero() {
                continue;
            }
            for t in 0..dim {
                let (factor, idx) = self.field.monomial_product(s, t);
                let mut term = self.coords[s].clone();
                if factor != 1 {
                    term *= BigRational::from(BigInt::from(factor));
                }
                mat[idx][t] += term;
            }
        }
        // Solve mat · y = e_0 by Gaussian elimination over ℚ.
        let mut rhs = vec![BigRational::zero(); dim];
        rhs[0] = BigRational::one();
        let mut rows: Vec<(Vec<BigRational>, BigRational)> =
            mat.into_iter().zip(rhs).collect();
        let mut piv_row = 0;
        for col in 0..dim {
            let Some(r) = (piv_row..dim).find(|&r| !rows[r].0[col].is_zero()) else {
                continue;
            };
            rows.swap(piv_row, r);
            let p = rows[piv_row].0[col].clone();
            for c in 0..dim {
                rows[piv_row].0[c] = &rows[piv_row].0[c] / &p;
            }
            rows[piv_row].1 = &rows[piv_row].1 / &p;
            for r2 in 0..dim {
                if r2 != piv_row && !rows[r2].0[col].is_zero() {
                    let f = rows[r2].0[col].clone();
                    for c in 0..dim {
                        let sub = &rows[piv_row].0[c] * &f;
                        rows[r2].0[c] = &rows[r2].0[c] - &sub;
                    }
                    let sub = &rows[piv_row].1 * &f;
                    rows[r2].1 = &rows[r2].1 - &sub;
                }
            }
            piv_row += 1;
        }
        // A nonzero field element is invertible, so the system is consistent
        // with a unique solution in reduced form.
        let mut coords = vec![BigRational::zero(); dim];
        let mut row = 0;
        for col in 0..dim {
            if row < dim && rows[row].0[col].is_one() {
                coords[col] = rows[row].1.clone();
                row += 1;
            }
        }
        let candidate = Scalar {
            field: self.field.clone(),
            coords,
        };
        let check = self.mul(&candidate);
        if check != Scalar::one(&self.field) {
            return Err(ExactError::DivisionByZero);
        }
        Ok(candidate)
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar, ExactError> {
        Ok(self.mul(&other.inverse()?))
    }

    /// Exact sign of the real embedding: interval refinement of the √d values
    /// until the enclosing interval excludes zero; zero is a coordinate check.
    pub fn sign(&self) -> i32 {
        if self.is_zero() {
            return 0;
        }
        if self.is_rational() {
            return rational_sign(&self.coords[0]);
        }
        let gens = self.field.generators();
        // Dyadic intervals lo ≤ √d ≤ hi, refined by bisection.
        let mut lo: Vec<BigRational> = Vec::new();
        let mut hi: Vec<BigRational> = Vec::new();
        for &d in gens {
            let mut l = 0i64;
            while (l + 1) * (l + 1) <= d as i64 {
                l += 1;
            }
            lo.push(br(l, 1));
            hi.push(br(l + 1, 1));
        }
        let mut steps = 8usize;
        loop {
            for (i, &d) in gens.iter().enumerate() {
                let dq = br(d as i64, 1);
                for _ in 0..steps {
                    let mid = (&lo[i] + &hi[i]) / br(2, 1);
                    if &mid * &mid <= dq {
                        lo[i] = mid;
                    } else {
                        hi[i] = mid;
                    }
                }
            }
            let (mut total_lo, mut total_hi) = (BigRational::zero(), BigRational::zero());
            for (mask, c) in self.coords.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                // Monomial interval: product of positive intervals.
                let mut mlo = BigRational::one();
                let mut mhi = BigRational::one();
                for (i, _) in gens.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        mlo *= &lo[i];
                        mhi *= &hi[i];
                    }
                }
                if c.is_positive() {
                    total_lo += c * &mlo;
                    total_hi += c * &mhi;
                } else {
                    total_lo += c * &mhi;
                    total_hi += c * &mlo;
                }
            }
            if total_lo.is_positive() {
                return 1;
            }
            if total_hi.is_negative() {
                return -1;
            }
            // The element is known nonzero by coordinates, so finitely many
            // refinement rounds decide the sign.
            steps *= 2;
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() > 0
    }

    /// Double-precision value of the real embedding. Diagnostic only.
    pub fn to_f64(&self) -> f64 {
        let gens = self.field.generators();
        let mut total = 0.0;
        for (mask, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut m = 1.0;
            for (i, &d) in gens.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    m *= (d as f64).sqrt();
                }
            }
            total += rational_to_f64(c) * m;
        }
        total
    }
}

pub fn rational_sign(q: &BigRational) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

pub fn rational_to_f64(q: &BigRational) -> f64 {
    let n = q.numer();
    let d = q.denom();
    // Good enough for diagnostics at desk scale.
    str::parse::<f64>(&n.to_string()).unwrap() / str::parse::<f64>(&d.to_string()).unwrap()
}

// ---------------------------------------------------------------------------
// Serialization: summands "a/b" or "a/b*sqrt(d)" joined by "+".
// ---------------------------------------------------------------------------

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0/1");
        }
        let mut parts = Vec::new();
        for (mask, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let frac = format!("{}/{}", c.numer(), c.denom());
            if mask == 0 {
                parts.push(frac);
            } else {
                parts.push(format!("{}*sqrt({})", frac, self.field.monomial_value(mask)));
            }
        }
        write!(f, "{}", parts.join("+"))
    }
}

impl Scalar {
    /// Parses the [`Display`] format back; bit-exact round trip.
    pub fn parse(field: &Field, s: &str) -> Result<Scalar, ExactError> {
        let mut out = Scalar::zero(field);
        for raw in split_summands(s) {
            let part = raw.trim();
            if part.is_empty() {
                return Err(ExactError::Parse(s.to_string()));
            }
            let (frac_str, sqrt_arg) = match part.find("*sqrt(") {
                Some(i) => {
                    let rest = &part[i + 6..];
                    let close = rest
                        .find(')')
                        .ok_or_else(|| ExactError::Parse(part.to_string()))?;
                    let d: u64 = rest[..close]
                        .parse()
                        .map_err(|_| ExactError::Parse(part.to_string()))?;
                    (&part[..i], Some(d))
                }
                None => (part, None),
            };
            let q = parse_rational(frac_str).ok_or_else(|| ExactError::Parse(part.to_string()))?;
            let term = match sqrt_arg {
                None => Scalar::from_rational(field, q),
                Some(d) => Scalar::sqrt_of_int(field, d)?.scale(&q),
            };
            out = out.add(&term);
        }
        Ok(out)
    }
}

/// Splits on '+' separators, keeping a leading '-' attached to its summand.
fn split_summands(s: &str) -> Vec<&str> {
    s.split('+').filter(|p| !p.is_empty()).collect()
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.find('/') {
        Some(i) => {
            let n: BigInt = s[..i].parse().ok()?;
            let d: BigInt = s[i + 1..].parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => {
            let n: BigInt = s.parse().ok()?;
            Some(BigRational::from(n))
        }
    }
}
