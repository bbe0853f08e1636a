//! Compact symplectic algebras sp(n) as quaternionic anti-Hermitian
//! matrices, with basis labels that expose the diagonal block embedding
//! sp(n₁)⊕sp(n₂)⊕sp(n₃) ⊂ sp(n) used by the reproduction driver.

use num::rational::BigRational;
use num::{One, Zero};

use crate::exactmath::{ExactError, Field, Scalar};

use super::compact::{Algebra, LieAlgebra};

/// A rational quaternion w + xi + yj + zk.
#[derive(Clone, PartialEq)]
struct Quat {
    w: BigRational,
    x: BigRational,
    y: BigRational,
    z: BigRational,
}

impl Quat {
    fn zero() -> Quat {
        Quat {
            w: BigRational::zero(),
            x: BigRational::zero(),
            y: BigRational::zero(),
            z: BigRational::zero(),
        }
    }
    fn unit(idx: usize) -> Quat {
        let mut q = Quat::zero();
        let one = BigRational::one();
        match idx {
            0 => q.w = one,
            1 => q.x = one,
            2 => q.y = one,
            _ => q.z = one,
        }
        q
    }
    fn is_zero(&self) -> bool {
        self.w.is_zero() && self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }
    fn conj(&self) -> Quat {
        Quat {
            w: self.w.clone(),
            x: -self.x.clone(),
            y: -self.y.clone(),
            z: -self.z.clone(),
        }
    }
    fn neg(&self) -> Quat {
        Quat {
            w: -self.w.clone(),
            x: -self.x.clone(),
            y: -self.y.clone(),
            z: -self.z.clone(),
        }
    }
    fn add(&self, o: &Quat) -> Quat {
        Quat {
            w: &self.w + &o.w,
            x: &self.x + &o.x,
            y: &self.y + &o.y,
            z: &self.z + &o.z,
        }
    }
    fn mul(&self, o: &Quat) -> Quat {
        Quat {
            w: &self.w * &o.w - &self.x * &o.x - &self.y * &o.y - &self.z * &o.z,
            x: &self.w * &o.x + &self.x * &o.w + &self.y * &o.z - &self.z * &o.y,
            y: &self.w * &o.y - &self.x * &o.z + &self.y * &o.w + &self.z * &o.x,
            z: &self.w * &o.z + &self.x * &o.y - &self.y * &o.x + &self.z * &o.w,
        }
    }
}

type QMat = Vec<Vec<Quat>>;

fn qmat_zero(n: usize) -> QMat {
    vec![vec![Quat::zero(); n]; n]
}

fn qmat_bracket(a: &QMat, b: &QMat) -> QMat {
    let n = a.len();
    let mut out = qmat_zero(n);
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() && b[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                let ab = a[i][k].mul(&b[k][j]);
                let ba = b[i][k].mul(&a[k][j]);
                out[i][j] = out[i][j].add(&ab).add(&ba.neg());
            }
        }
    }
    out
}

/// Basis description: either a pure-imaginary diagonal unit or an
/// off-diagonal pair q·E_pq − q̄·E_qp.
enum BasisKind {
    Diag { pos: usize, unit: usize },
    Off { p: usize, q: usize, unit: usize },
}

fn basis_matrix(n: usize, b: &BasisKind) -> QMat {
    let mut m = qmat_zero(n);
    match *b {
        BasisKind::Diag { pos, unit } => {
            m[pos][pos] = Quat::unit(unit);
        }
        BasisKind::Off { p, q, unit } => {
            m[p][q] = Quat::unit(unit);
            m[q][p] = Quat::unit(unit).conj().neg();
        }
    }
    m
}

/// Builds compact sp(n). Basis labels: "D{p}{u}" for diagonal units
/// (u ∈ {i,j,k}) and "O{p}{q}{u}" for off-diagonal ones (u ∈ {1,i,j,k}).
pub fn compact_sp(n: usize, field: &Field) -> Result<Algebra, ExactError> {
    if n == 0 || n > 4 {
        return Err(ExactError::Dimension(format!("sp({n}) out of desk range")));
    }
    let unit_names = ["1", "i", "j", "k"];
    let mut kinds = Vec::new();
    let mut labels = Vec::new();
    for p in 0..n {
        for unit in 1..4 {
            kinds.push(BasisKind::Diag { pos: p, unit });
            labels.push(format!("D{}{}", p + 1, unit_names[unit]));
        }
    }
    for p in 0..n {
        for q in p + 1..n {
            for unit in 0..4 {
                kinds.push(BasisKind::Off { p, q, unit });
                labels.push(format!("O{}{}{}", p + 1, q + 1, unit_names[unit]));
            }
        }
    }
    let dim = kinds.len();
    assert_eq!(dim, n * (2 * n + 1));
    let mats: Vec<QMat> = kinds.iter().map(|k| basis_matrix(n, k)).collect();

    // Coordinates of an anti-Hermitian matrix over the basis: read straight
    // off the diagonal imaginary parts and the upper-triangle quaternions.
    let coords_of = |m: &QMat| -> Vec<Scalar> {
        let mut coords = Vec::with_capacity(dim);
        for p in 0..n {
            debug_assert!(m[p][p].w.is_zero(), "diagonal must be pure imaginary");
            coords.push(Scalar::from_rational(field, m[p][p].x.clone()));
            coords.push(Scalar::from_rational(field, m[p][p].y.clone()));
            coords.push(Scalar::from_rational(field, m[p][p].z.clone()));
        }
        for p in 0..n {
            for q in p + 1..n {
                let e = &m[p][q];
                coords.push(Scalar::from_rational(field, e.w.clone()));
                coords.push(Scalar::from_rational(field, e.x.clone()));
                coords.push(Scalar::from_rational(field, e.y.clone()));
                coords.push(Scalar::from_rational(field, e.z.clone()));
            }
        }
        coords
    };

    let mut brackets = vec![vec![Vec::new(); dim]; dim];
    for a in 0..dim {
        for b in 0..dim {
            brackets[a][b] = coords_of(&qmat_bracket(&mats[a], &mats[b]));
        }
    }
    Ok(LieAlgebra::from_structure(field, labels, brackets, None))
}

/// Indices of basis elements supported inside the diagonal blocks given by
/// `sizes` (the sp(n₁)⊕sp(n₂)⊕… block subalgebra).
pub fn block_subalgebra_indices(n: usize, sizes: &[usize]) -> Vec<usize> {
    let mut block_of = vec![usize::MAX; n];
    let mut start = 0;
    for (bi, &s) in sizes.iter().enumerate() {
        for p in start..start + s {
            block_of[p] = bi;
        }
        start += s;
    }
    assert_eq!(start, n, "block sizes must sum to n");
    let mut idx = Vec::new();
    let mut cur = 0;
    for _p in 0..n {
        for _ in 0..3 {
            idx.push(cur);
            cur += 1;
        }
    }
    // Diagonal units always belong to a block; now filter off-diagonal ones.
    let mut out: Vec<usize> = idx;
    for p in 0..n {
        for q in p + 1..n {
            for _ in 0..4 {
                if block_of[p] == block_of[q] {
                    out.push(cur);
                }
                cur += 1;
            }
        }
    }
    out
}

/// Indices of basis elements in the off-diagonal module 𝔪ᵢ coupling the two
/// blocks other than block `i` (three blocks assumed).
pub fn off_block_module_indices(n: usize, sizes: &[usize], skip_block: usize) -> Vec<usize> {
    assert_eq!(sizes.len(), 3);
    let mut block_of = vec![usize::MAX; n];
    let mut start = 0;
    for (bi, &s) in sizes.iter().enumerate() {
        for p in start..start + s {
            block_of[p] = bi;
        }
        start += s;
    }
    let mut out = Vec::new();
    let mut cur = 3 * n;
    for p in 0..n {
        for q in p + 1..n {
            for _ in 0..4 {
                if block_of[p] != block_of[q]
                    && block_of[p] != skip_block
                    && block_of[q] != skip_block
                {
                    out.push(cur);
                }
                cur += 1;
            }
        }
    }
    out
}
