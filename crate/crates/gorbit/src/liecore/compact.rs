//! Compact real forms on the basis {iH over the simple coroots} ∪
//! {F_γ, G_γ : γ ∈ R⁺}, with F_γ = E_γ − E_{−γ} and G_γ = i(E_γ + E_{−γ}).
//! The construction runs in the complexification over ℚ(i) and checks that
//! every resulting structure constant is real rational.

use std::fmt;
use std::sync::Arc;

use num::rational::BigRational;
use num::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::exactmath::{ExactError, ExactMatrix, Field, Scalar};
use crate::par;

use super::chevalley::ChevalleyConstants;
use super::roots::{RootSystem, RootVec};

/// A finite-dimensional real Lie algebra as a basis-labelled structure
/// tensor with a cached Killing form.
pub struct LieAlgebra {
    field: Field,
    labels: Vec<String>,
    /// brackets[i][j] = coordinates of [eᵢ, eⱼ].
    brackets: Vec<Vec<Vec<Scalar>>>,
    killing: ExactMatrix,
    /// Root system data for algebras built from one (None for sp(n) bases).
    root_system: Option<RootSystem>,
}

pub type Algebra = Arc<LieAlgebra>;

impl fmt::Debug for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieAlgebra(dim {})", self.dim())
    }
}

impl LieAlgebra {
    pub fn from_structure(
        field: &Field,
        labels: Vec<String>,
        brackets: Vec<Vec<Vec<Scalar>>>,
        root_system: Option<RootSystem>,
    ) -> Algebra {
        let dim = labels.len();
        assert_eq!(brackets.len(), dim);
        let mut alg = LieAlgebra {
            field: field.clone(),
            labels,
            brackets,
            killing: ExactMatrix::zero(field, dim, dim),
            root_system,
        };
        alg.killing = alg.compute_killing();
        Arc::new(alg)
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label_index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn root_system(&self) -> Option<&RootSystem> {
        self.root_system.as_ref()
    }

    pub fn killing(&self) -> &ExactMatrix {
        &self.killing
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &[Scalar] {
        &self.brackets[i][j]
    }

    /// Matrix of ad(eᵢ) in the algebra basis.
    pub fn ad_basis(&self, i: usize) -> ExactMatrix {
        let n = self.dim();
        let mut m = ExactMatrix::zero(&self.field, n, n);
        for j in 0..n {
            for (k, c) in self.brackets[i][j].iter().enumerate() {
                if !c.is_zero() {
                    *m.at_mut(k, j) = c.clone();
                }
            }
        }
        m
    }

    fn compute_killing(&self) -> ExactMatrix {
        let n = self.dim();
        let ads: Vec<ExactMatrix> = (0..n).map(|i| self.ad_basis(i)).collect();
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i..n).map(move |j| (i, j)))
            .collect();
        let traces = par::map(&pairs, |&(i, j)| ads[i].mul(&ads[j]).trace());
        let mut killing = ExactMatrix::zero(&self.field, n, n);
        for (&(i, j), t) in pairs.iter().zip(traces) {
            *killing.at_mut(i, j) = t.clone();
            *killing.at_mut(j, i) = t;
        }
        killing
    }

    /// B is negative definite iff the leading principal minors alternate in
    /// sign starting negative.
    pub fn killing_negative_definite(&self) -> bool {
        match self.killing.leading_minor_signs() {
            None => false,
            Some(signs) => signs
                .iter()
                .enumerate()
                .all(|(k, &s)| s == if k % 2 == 0 { -1 } else { 1 }),
        }
    }

    /// First basis triple violating the Jacobi identity, if any.
    pub fn jacobi_witness(self: &Algebra) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        let triples: Vec<(usize, usize, usize)> = (0..n)
            .flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))))
            .collect();
        par::first_failure(&triples, |&(i, j, k)| {
            let a = Element::basis(self, i);
            let b = Element::basis(self, j);
            let c = Element::basis(self, k);
            let s = a
                .bracket(&b.bracket(&c))
                .add(&b.bracket(&c.bracket(&a)))
                .add(&c.bracket(&a.bracket(&b)));
            if s.is_zero() {
                None
            } else {
                Some((i, j, k))
            }
        })
    }

    /// First basis triple violating ad-invariance of B, if any.
    pub fn killing_invariance_witness(self: &Algebra) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        let triples: Vec<(usize, usize, usize)> = (0..n)
            .flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k))))
            .collect();
        par::first_failure(&triples, |&(i, j, k)| {
            let x = Element::basis(self, i);
            let y = Element::basis(self, j);
            let z = Element::basis(self, k);
            let lhs = self.killing_pair(&x.bracket(&y), &z);
            let rhs = self.killing_pair(&y, &x.bracket(&z));
            if lhs.add(&rhs).is_zero() {
                None
            } else {
                Some((i, j, k))
            }
        })
    }

    pub fn killing_pair(&self, x: &Element, y: &Element) -> Scalar {
        let mut acc = Scalar::zero(&self.field);
        for (i, a) in x.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.coords.iter().enumerate() {
                if !b.is_zero() {
                    acc = acc.add(&self.killing.at(i, j).mul(a).mul(b));
                }
            }
        }
        acc
    }
}

/// An element of a fixed Lie algebra, as exact coordinates.
#[derive(Clone)]
pub struct Element {
    pub alg: Algebra,
    pub coords: Vec<Scalar>,
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("({})·{}", c, self.alg.labels()[i]))
            .collect();
        write!(f, "Element[{}]", parts.join(" + "))
    }
}

impl Element {
    pub fn zero(alg: &Algebra) -> Element {
        Element {
            alg: alg.clone(),
            coords: vec![Scalar::zero(alg.field()); alg.dim()],
        }
    }

    pub fn basis(alg: &Algebra, i: usize) -> Element {
        let mut e = Element::zero(alg);
        e.coords[i] = Scalar::one(alg.field());
        e
    }

    pub fn from_coords(alg: &Algebra, coords: Vec<Scalar>) -> Element {
        assert_eq!(coords.len(), alg.dim());
        Element {
            alg: alg.clone(),
            coords,
        }
    }

    pub fn same_algebra(&self, other: &Element) -> bool {
        Arc::ptr_eq(&self.alg, &other.alg)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &Element) -> Element {
        assert!(self.same_algebra(other), "mixed algebras");
        Element {
            alg: self.alg.clone(),
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, other: &Element) -> Element {
        assert!(self.same_algebra(other), "mixed algebras");
        Element {
            alg: self.alg.clone(),
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> Element {
        Element {
            alg: self.alg.clone(),
            coords: self.coords.iter().map(|c| c.mul(s)).collect(),
        }
    }

    pub fn bracket(&self, other: &Element) -> Element {
        assert!(self.same_algebra(other), "mixed algebras");
        let mut out = Element::zero(&self.alg);
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coords.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a.mul(b);
                for (k, c) in self.alg.bracket_basis(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        out.coords[k] = out.coords[k].add(&c.mul(&ab));
                    }
                }
            }
        }
        out
    }

    /// Matrix of ad(x).
    pub fn ad(&self) -> ExactMatrix {
        let n = self.alg.dim();
        let mut m = ExactMatrix::zero(self.alg.field(), n, n);
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let adi = self.alg.ad_basis(i);
            m = m.add(&adi.scale(a));
        }
        m
    }
}

// ---------------------------------------------------------------------------
// Complexified construction over ℚ(i).
// ---------------------------------------------------------------------------

#[derive(Clone, PartialEq)]
struct Cplx {
    re: BigRational,
    im: BigRational,
}

impl Cplx {
    fn zero() -> Cplx {
        Cplx {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }
    fn real(q: BigRational) -> Cplx {
        Cplx {
            re: q,
            im: BigRational::zero(),
        }
    }
    fn imag(q: BigRational) -> Cplx {
        Cplx {
            re: BigRational::zero(),
            im: q,
        }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn add(&self, o: &Cplx) -> Cplx {
        Cplx {
            re: &self.re + &o.re,
            im: &self.im + &o.im,
        }
    }
    fn mul(&self, o: &Cplx) -> Cplx {
        Cplx {
            re: &self.re * &o.re - &self.im * &o.im,
            im: &self.re * &o.im + &self.im * &o.re,
        }
    }
}

/// Index set of the complex basis {H_1..H_r} ∪ {E_γ : γ ∈ R}.
struct ComplexBasis {
    rank: usize,
    roots: Vec<RootVec>,
}

impl ComplexBasis {
    fn dim(&self) -> usize {
        self.rank + self.roots.len()
    }
    fn e_index(&self, gamma: &[i64]) -> usize {
        self.rank + self.roots.iter().position(|r| r == gamma).expect("root")
    }
}

/// Builds the compact real form of the given root system over `field`.
pub fn compact_form(rs: &RootSystem, field: &Field) -> Result<Algebra, ExactError> {
    let cc = ChevalleyConstants::new(rs);
    let basis = ComplexBasis {
        rank: rs.rank,
        roots: rs.roots.clone(),
    };
    let cdim = basis.dim();

    // Compact basis over the complex one: iH_j, then F_γ, G_γ per positive γ.
    let rank = rs.rank;
    let dim = rank + 2 * rs.positive.len();
    let mut compact: Vec<Vec<Cplx>> = Vec::with_capacity(dim);
    let mut labels = Vec::with_capacity(dim);
    let letters = ["a", "b", "c", "d", "e", "f", "g", "h"];
    for j in 0..rank {
        let mut v = vec![Cplx::zero(); cdim];
        v[j] = Cplx::imag(BigRational::one());
        compact.push(v);
        labels.push(format!("iH_{}", letters[j]));
    }
    for gamma in &rs.positive {
        let gi = basis.e_index(gamma);
        let ni = basis.e_index(&gamma.iter().map(|c| -c).collect::<RootVec>());
        let mut f = vec![Cplx::zero(); cdim];
        f[gi] = Cplx::real(BigRational::one());
        f[ni] = Cplx::real(-BigRational::one());
        compact.push(f);
        labels.push(format!("F_{}", rs.root_name(gamma)));
        let mut g = vec![Cplx::zero(); cdim];
        g[gi] = Cplx::imag(BigRational::one());
        g[ni] = Cplx::imag(BigRational::one());
        compact.push(g);
        labels.push(format!("G_{}", rs.root_name(gamma)));
    }

    // Structure tensor in the compact basis; all coefficients must be real.
    let mut brackets: Vec<Vec<Vec<Scalar>>> = vec![vec![Vec::new(); dim]; dim];
    for a in 0..dim {
        for b in 0..dim {
            let mut acc = vec![Cplx::zero(); cdim];
            for (i, ca) in compact[a].iter().enumerate() {
                if ca.is_zero() {
                    continue;
                }
                for (j, cb) in compact[b].iter().enumerate() {
                    if cb.is_zero() {
                        continue;
                    }
                    let coef = ca.mul(cb);
                    for (k, v) in cplx_bracket(rs, &cc, &basis, i, j).into_iter().enumerate() {
                        if !v.is_zero() {
                            acc[k] = acc[k].add(&coef.mul(&v));
                        }
                    }
                }
            }
            brackets[a][b] = express_in_compact(rs, &basis, &acc, field)?;
        }
    }
    Ok(LieAlgebra::from_structure(
        field,
        labels,
        brackets,
        Some(rs.clone()),
    ))
}

/// Bracket of complex basis elements, as complex coordinate vectors over
/// {H_j, E_γ}.
fn cplx_bracket(
    rs: &RootSystem,
    cc: &ChevalleyConstants,
    basis: &ComplexBasis,
    i: usize,
    j: usize,
) -> Vec<Cplx> {
    let mut out = vec![Cplx::zero(); basis.dim()];
    if i < rs.rank && j < rs.rank {
        return out; // Cartan is abelian
    }
    if i < rs.rank {
        // [H_i, E_δ] = δ(H_i)·E_δ
        let delta = &basis.roots[j - rs.rank];
        let mut e = vec![0i64; rs.rank];
        e[i] = 1;
        let c = rs.cartan_int(delta, &e);
        out[j] = Cplx::real(BigRational::from_integer(c.into()));
        return out;
    }
    if j < rs.rank {
        let mut o = cplx_bracket(rs, cc, basis, j, i);
        for v in o.iter_mut() {
            *v = Cplx::real(-BigRational::one()).mul(v);
        }
        return o;
    }
    let gamma = basis.roots[i - rs.rank].clone();
    let delta = basis.roots[j - rs.rank].clone();
    let sum: RootVec = gamma.iter().zip(&delta).map(|(a, b)| a + b).collect();
    if sum.iter().all(|&c| c == 0) {
        // [E_γ, E_{−γ}] = H_γ over the simple coroots.
        for (k, c) in cc.coroot_coeffs(&gamma).into_iter().enumerate() {
            out[k] = Cplx::real(c);
        }
        return out;
    }
    if rs.is_root(&sum) {
        let n = cc.n(&gamma, &delta);
        out[basis.e_index(&sum)] = Cplx::real(BigRational::from_integer(n.into()));
    }
    out
}

/// Rewrites a complex coordinate vector over {H_j, E_γ} in the compact basis
/// {iH_j, F_γ, G_γ}; errors if any coordinate fails to be real.
fn express_in_compact(
    rs: &RootSystem,
    basis: &ComplexBasis,
    v: &[Cplx],
    field: &Field,
) -> Result<Vec<Scalar>, ExactError> {
    let rank = rs.rank;
    let dim = rank + 2 * rs.positive.len();
    let mut out = vec![Scalar::zero(field); dim];
    let not_real = |what: &str| ExactError::Parse(format!("non-real compact coefficient at {what}"));
    for j in 0..rank {
        // z·H_j = (im z)·(iH_j) requires re z = 0.
        if !v[j].re.is_zero() {
            return Err(not_real("Cartan"));
        }
        out[j] = Scalar::from_rational(field, v[j].im.clone());
    }
    for (pi, gamma) in rs.positive.iter().enumerate() {
        let x = &v[basis.e_index(gamma)];
        let y = &v[basis.e_index(&gamma.iter().map(|c| -c).collect::<RootVec>())];
        // x·E_γ + y·E_{−γ} = c_F·F_γ + c_G·G_γ with c_F = (x−y)/2,
        // c_G = (x+y)/(2i); real iff im(x−y) = 0 and re(x+y) = 0.
        let two = BigRational::from_integer(2.into());
        let cf_re = (&x.re - &y.re) / &two;
        let cf_im = (&x.im - &y.im) / &two;
        let cg_re = (&x.im + &y.im) / &two;
        let cg_im = -(&x.re + &y.re) / &two;
        if !cf_im.is_zero() || !cg_im.is_zero() {
            return Err(not_real("root space"));
        }
        out[rank + 2 * pi] = Scalar::from_rational(field, cf_re);
        out[rank + 2 * pi + 1] = Scalar::from_rational(field, cg_re);
    }
    Ok(out)
}

/// cos/sin of 2π·k/d as exact scalars. Angles that are multiples of 15°
/// lie in ℚ(√2,√3): cos 15° = (√6+√2)/4.
fn unit_circle(field: &Field, k: i64, d: i64) -> Result<(Scalar, Scalar), ExactError> {
    if d <= 0 || 24 % d != 0 {
        return Err(ExactError::NotInField(format!(
            "cos(2π/{d}) is outside the scalar tower"
        )));
    }
    let t = (k * (24 / d)).rem_euclid(24);
    let half = |n: u64| -> Result<Scalar, ExactError> {
        Ok(Scalar::sqrt_of_int(field, n)?.scale(&BigRational::new(1.into(), 2.into())))
    };
    let quarter = |a: u64, b: u64, neg: bool| -> Result<Scalar, ExactError> {
        let x = Scalar::sqrt_of_int(field, a)?;
        let y = Scalar::sqrt_of_int(field, b)?;
        let s = if neg { x.sub(&y) } else { x.add(&y) };
        Ok(s.scale(&BigRational::new(1.into(), 4.into())))
    };
    // First quadrant table at 15° steps; the rest by reflection.
    let base = |t: i64| -> Result<(Scalar, Scalar), ExactError> {
        Ok(match t {
            0 => (Scalar::one(field), Scalar::zero(field)),
            1 => (quarter(6, 2, false)?, quarter(6, 2, true)?),
            2 => (half(3)?, Scalar::from_ratio(field, 1, 2)),
            3 => (half(2)?, half(2)?),
            4 => (Scalar::from_ratio(field, 1, 2), half(3)?),
            5 => (quarter(6, 2, true)?, quarter(6, 2, false)?),
            _ => (Scalar::zero(field), Scalar::one(field)),
        })
    };
    Ok(match t {
        0..=6 => base(t)?,
        7..=12 => {
            let (c, s) = base(12 - t)?;
            (c.neg(), s)
        }
        _ => {
            let (c, s) = unit_circle(field, 24 - t, 24)?;
            (c, s.neg())
        }
    })
}

/// Adjoint action of the torus element exp(2π(k/d)·iH_c) on the compact
/// form, where H_c = Σ cⱼ·H_{αⱼ} over the simple coroots. Exact whenever
/// every rotation angle is a multiple of 15°; the result fixes i𝔱 and
/// rotates each root plane 𝔪_γ by 2π(k/d)·γ(H_c).
pub fn torus_rotation(
    alg: &Algebra,
    coroot_coeffs: &[i64],
    k: i64,
    d: i64,
) -> Result<ExactMatrix, ExactError> {
    let rs = alg
        .root_system()
        .ok_or_else(|| ExactError::NotInField("algebra has no root system".into()))?;
    if coroot_coeffs.len() != rs.rank {
        return Err(ExactError::Dimension(
            "coweight length must equal the rank".into(),
        ));
    }
    let field = alg.field();
    let mut m = ExactMatrix::identity(field, alg.dim());
    for (p, gamma) in rs.positive.iter().enumerate() {
        let mut w = 0i64;
        for (j, c) in coroot_coeffs.iter().enumerate() {
            let mut simple = vec![0i64; rs.rank];
            simple[j] = 1;
            w += c * rs.cartan_int(gamma, &simple);
        }
        let (cos, sin) = unit_circle(field, k * w, d)?;
        let (fi, gi) = (rs.rank + 2 * p, rs.rank + 2 * p + 1);
        *m.at_mut(fi, fi) = cos.clone();
        *m.at_mut(gi, gi) = cos;
        *m.at_mut(gi, fi) = sin.clone();
        *m.at_mut(fi, gi) = sin.neg();
    }
    Ok(m)
}

/// Shared serialization schema for algebras (used by the CLI `build`).
#[derive(Serialize, Deserialize)]
pub struct AlgebraDto {
    pub schema_version: u32,
    pub label: Option<String>,
    pub field_generators: Vec<u64>,
    pub basis_labels: Vec<String>,
    /// Sparse triples (i, j, k, coefficient string): [eᵢ,eⱼ] = Σ c·e_k.
    pub structure: Vec<(usize, usize, usize, String)>,
    pub killing: Vec<Vec<String>>,
}

impl AlgebraDto {
    pub fn from_algebra(alg: &Algebra) -> AlgebraDto {
        let n = alg.dim();
        let mut structure = Vec::new();
        for i in 0..n {
            for j in 0..n {
                for (k, c) in alg.bracket_basis(i, j).iter().enumerate() {
                    if !c.is_zero() {
                        structure.push((i, j, k, c.to_string()));
                    }
                }
            }
        }
        let killing = (0..n)
            .map(|i| (0..n).map(|j| alg.killing().at(i, j).to_string()).collect())
            .collect();
        AlgebraDto {
            schema_version: 1,
            label: alg.root_system().map(|rs| rs.label.clone()),
            field_generators: alg.field().generators().to_vec(),
            basis_labels: alg.labels().to_vec(),
            structure,
            killing,
        }
    }

    /// Rebuilds the algebra; the Killing form is recomputed from the
    /// structure constants and checked against the stored copy.
    pub fn to_algebra(&self) -> Result<Algebra, ExactError> {
        if self.schema_version != 1 {
            return Err(ExactError::Parse(format!(
                "unsupported algebra schema version {}",
                self.schema_version
            )));
        }
        let field = crate::exactmath::ScalarField::new(self.field_generators.clone())?;
        let n = self.basis_labels.len();
        let mut brackets = vec![vec![vec![Scalar::zero(&field); n]; n]; n];
        for (i, j, k, c) in &self.structure {
            if *i >= n || *j >= n || *k >= n {
                return Err(ExactError::Parse("structure index out of range".into()));
            }
            brackets[*i][*j][*k] = Scalar::parse(&field, c)?;
        }
        let rs = match &self.label {
            Some(l) => Some(RootSystem::new(l)?),
            None => None,
        };
        let alg = LieAlgebra::from_structure(&field, self.basis_labels.clone(), brackets, rs);
        for i in 0..n {
            for j in 0..n {
                if alg.killing().at(i, j) != &Scalar::parse(&field, &self.killing[i][j])? {
                    return Err(ExactError::Parse(
                        "stored Killing form disagrees with the structure constants".into(),
                    ));
                }
            }
        }
        Ok(alg)
    }
}
