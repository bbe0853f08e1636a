//! Polynomials with coefficients in a quadratic tower, plus root extraction
//! restricted to roots that lie in the working field (rational roots and
//! rational multiples of square-root monomials, with a quadratic-formula
//! fallback for degree two).

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, Zero};

use super::field::{Field, Scalar};
use super::matrix::ExactMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    /// Coefficients, low degree first; no trailing zeros except for the zero
    /// polynomial itself.
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(field: &Field, mut coeffs: Vec<Scalar>) -> Poly {
        while coeffs.len() > 1 && coeffs.last().unwrap().is_zero() {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(Scalar::zero(field));
        }
        Poly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero(&self.field);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn eval_matrix(&self, m: &ExactMatrix) -> ExactMatrix {
        let n = m.rows();
        let mut acc = ExactMatrix::zero(&self.field, n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(m);
            for i in 0..n {
                let cur = acc.at(i, i).add(c);
                *acc.at_mut(i, i) = cur;
            }
        }
        acc
    }

    /// Synthetic division by (t − r); the caller asserts r is a root.
    pub fn deflate(&self, r: &Scalar) -> Poly {
        let mut out = vec![Scalar::zero(&self.field); self.degree()];
        let mut carry = Scalar::zero(&self.field);
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if i == 0 {
                break;
            }
            carry = c.add(&carry.mul(r));
            out[i - 1] = carry.clone();
        }
        Poly::new(&self.field, out)
    }

    /// All roots lying in the working field that the restricted search finds:
    /// candidates r·m over every monomial m, plus the quadratic formula when
    /// the (deflated) polynomial has degree two. Roots outside this family
    /// are not reported.
    pub fn field_roots(&self) -> Vec<Scalar> {
        let mut roots = Vec::new();
        let mut p = self.clone();
        loop {
            if p.degree() == 0 {
                break;
            }
            let mut found = None;
            if p.degree() == 2 {
                if let Some(pair) = p.quadratic_roots() {
                    for r in pair {
                        if !roots.contains(&r) {
                            roots.push(r.clone());
                        }
                        p = p.deflate(&r);
                    }
                    continue;
                }
            }
            'search: for mask in 0..self.field.dimension() {
                for r in p.monomial_axis_roots(mask) {
                    found = Some(r);
                    break 'search;
                }
            }
            match found {
                Some(r) => {
                    if !roots.contains(&r) {
                        roots.push(r.clone());
                    }
                    p = p.deflate(&r);
                }
                None => break,
            }
        }
        roots
    }

    /// Roots of the form q·m for the fixed monomial with mask `mask`:
    /// substitute t = m·u and find common rational roots of the monomial
    /// component polynomials of p(m·u).
    fn monomial_axis_roots(&self, mask: usize) -> Vec<Scalar> {
        let field = &self.field;
        let n_sq = BigRational::from(BigInt::from(field.monomial_value(mask)));
        // q_j = c_j · m^j; m^2 = N.
        let mut subst: Vec<Scalar> = Vec::with_capacity(self.coeffs.len());
        let mut m_pow = Scalar::one(field); // m^j
        let m = Scalar::monomial(field, mask, BigRational::one()).unwrap();
        for c in &self.coeffs {
            subst.push(c.mul(&m_pow));
            m_pow = m_pow.mul(&m);
        }
        // Component polynomials over ℚ, one per basis monomial.
        let dim = field.dimension();
        let mut comps: Vec<Vec<BigRational>> = vec![Vec::new(); dim];
        for s in &subst {
            for (k, coord) in s.coords().iter().enumerate() {
                comps[k].push(coord.clone());
            }
        }
        let Some(lead_comp) = comps.iter().find(|c| c.iter().any(|q| !q.is_zero())) else {
            return Vec::new();
        };
        let _ = n_sq;
        let mut out = Vec::new();
        for u in rational_roots(lead_comp) {
            let cand = m.scale(&u);
            if self.eval(&cand).is_zero() {
                out.push(cand);
            }
        }
        out
    }

    /// Roots of a monic-izable quadratic t² + bt + c when the discriminant has
    /// a square root inside the field.
    fn quadratic_roots(&self) -> Option<[Scalar; 2]> {
        let field = &self.field;
        let lead = self.coeffs[2].inverse().ok()?;
        let b = self.coeffs[1].mul(&lead);
        let c = self.coeffs[0].mul(&lead);
        let four = Scalar::from_int(field, 4);
        let disc = b.mul(&b).sub(&c.mul(&four));
        let s = scalar_sqrt(&disc)?;
        let half = Scalar::from_ratio(field, 1, 2);
        let r1 = b.neg().add(&s).mul(&half);
        let r2 = b.neg().sub(&s).mul(&half);
        Some([r1, r2])
    }
}

/// Square root of a field element inside the same field, when one exists.
///
/// Guess-then-certify: the candidate coordinates are recovered from the real
/// embeddings of the tower (one sign choice of the √d per embedding) and
/// rationalized; the only trusted step is the exact verification x² = s.
pub fn scalar_sqrt(s: &Scalar) -> Option<Scalar> {
    if s.is_zero() {
        return Some(s.clone());
    }
    if s.sign() < 0 {
        return None;
    }
    let field = s.field().clone();
    if let Some(q) = s.to_rational() {
        use num::ToPrimitive;
        // q = a/b with a,b > 0: sqrt(q) = sqrt(a·b)/b.
        let ab = (q.numer() * q.denom()).to_u64()?;
        let root = Scalar::sqrt_of_int(&field, ab).ok()?;
        let denom = BigRational::new(BigInt::one(), q.denom().clone());
        return Some(root.scale(&denom));
    }
    let k = field.generators().len();
    let dim = field.dimension();
    // Embedding values of each monomial under every sign pattern of the √d.
    let sqrts: Vec<f64> = field.generators().iter().map(|&d| (d as f64).sqrt()).collect();
    let embed = |pattern: usize, mask: usize| -> f64 {
        let mut v = 1.0;
        for i in 0..k {
            if mask & (1 << i) != 0 {
                v *= if pattern & (1 << i) != 0 { -sqrts[i] } else { sqrts[i] };
            }
        }
        v
    };
    let coords_f: Vec<f64> = s
        .coords()
        .iter()
        .map(super::field::rational_to_f64)
        .collect();
    let sigma: Vec<f64> = (0..dim)
        .map(|p| {
            (0..dim)
                .map(|mask| coords_f[mask] * embed(p, mask))
                .sum::<f64>()
        })
        .collect();
    if sigma.iter().any(|&v| v < 0.0) {
        // Not totally positive: the square root cannot lie in a real tower.
        return None;
    }
    let mags: Vec<f64> = sigma.iter().map(|&v| v.sqrt()).collect();
    // Try sign patterns for the embeddings of x; x and −x coincide, fix +.
    for eps in 0..(1usize << dim.saturating_sub(1)) {
        let vals: Vec<f64> = (0..dim)
            .map(|p| if p > 0 && eps & (1 << (p - 1)) != 0 { -mags[p] } else { mags[p] })
            .collect();
        // coords solve V·x = vals where V[p][mask] = embed(p, mask).
        let mut coords = Vec::with_capacity(dim);
        let mut ok = true;
        for mask in 0..dim {
            // Orthogonality of characters: x_mask = (1/dim) Σ_p vals[p]·sign
            let mut acc = 0.0;
            for (p, &v) in vals.iter().enumerate() {
                let sign = if (p & mask).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
                acc += v * sign;
            }
            let x = acc / dim as f64 / embed(0, mask);
            match rationalize(x, 1_000_000) {
                Some(q) => coords.push(q),
                None => {
                    ok = false;
                    break;
                }
            }
        }
        if !ok {
            continue;
        }
        let mut cand = Scalar::zero(&field);
        for (mask, q) in coords.into_iter().enumerate() {
            if !q.is_zero() {
                cand = cand.add(&Scalar::monomial(&field, mask, q).unwrap());
            }
        }
        if cand.mul(&cand) == *s {
            return Some(if cand.sign() >= 0 { cand } else { cand.neg() });
        }
    }
    None
}

/// Continued-fraction rationalization with bounded denominator.
fn rationalize(x: f64, max_den: u64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    let neg = x < 0.0;
    let mut x = x.abs();
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    for _ in 0..40 {
        let a = x.floor();
        if a > 1e15 {
            return None;
        }
        let ai = BigInt::from(a as i64);
        let h2 = &ai * &h1 + &h0;
        let k2 = &ai * &k1 + &k0;
        if k2 > BigInt::from(max_den) {
            break;
        }
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        let frac = x - a;
        if frac < 1e-12 {
            break;
        }
        x = 1.0 / frac;
    }
    if k1.is_zero() {
        return None;
    }
    let q = BigRational::new(h1, k1);
    Some(if neg { -q } else { q })
}

/// Rational roots of a polynomial with rational coefficients, by the rational
/// root theorem after clearing denominators.
pub fn rational_roots(coeffs: &[BigRational]) -> Vec<BigRational> {
    // Strip trailing zeros; factor out powers of u (root 0).
    let mut cs: Vec<BigRational> = coeffs.to_vec();
    while cs.len() > 1 && cs.last().unwrap().is_zero() {
        cs.pop();
    }
    let mut out = Vec::new();
    let mut low = 0;
    while low < cs.len() && cs[low].is_zero() {
        low += 1;
    }
    if low > 0 {
        out.push(BigRational::zero());
        cs.drain(0..low);
    }
    if cs.len() <= 1 {
        return out;
    }
    // Clear denominators to an integer polynomial.
    let mut lcm = BigInt::one();
    for c in &cs {
        lcm = lcm.lcm(c.denom());
    }
    let ints: Vec<BigInt> = cs.iter().map(|c| (c * BigRational::from(lcm.clone())).to_integer()).collect();
    let a0 = ints[0].clone();
    let lead = ints.last().unwrap().clone();
    let p_divs = small_divisors(&a0);
    let q_divs = small_divisors(&lead);
    let (Some(p_divs), Some(q_divs)) = (p_divs, q_divs) else {
        return out;
    };
    let eval = |r: &BigRational| -> bool {
        let mut acc = BigRational::zero();
        for c in ints.iter().rev() {
            acc = acc * r + BigRational::from(c.clone());
        }
        acc.is_zero()
    };
    for p in &p_divs {
        for q in &q_divs {
            for sign in [1i32, -1] {
                let mut r = BigRational::new(p.clone(), q.clone());
                if sign < 0 {
                    r = -r;
                }
                if !out.contains(&r) && eval(&r) {
                    out.push(r);
                }
            }
        }
    }
    out
}

/// Positive divisors, bailing out on values too large to enumerate.
fn small_divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    use num::ToPrimitive;
    let n = n.abs().to_u64()?;
    if n == 0 || n > 1_000_000_000_000 {
        return None;
    }
    let mut divs = Vec::new();
    let mut i = 1u64;
    while i * i <= n {
        if n % i == 0 {
            divs.push(BigInt::from(i));
            if i != n / i {
                divs.push(BigInt::from(n / i));
            }
        }
        i += 1;
    }
    Some(divs)
}

