//! Representation theory of a subalgebra acting on an invariant subspace:
//! restricted action matrices, spaces of equivariant maps, commutants, and
//! certified decomposition into irreducible invariant summands.

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::exactmath::{ExactMatrix, Scalar};
use crate::liecore::Element;
use crate::subalg::{basis_matrix, SubalgError, Subalgebra};

/// An ad-invariant subspace with the restricted action of the acting
/// subalgebra precomputed. Construction verifies invariance exactly.
#[derive(Clone)]
pub struct InvariantModule {
    pub carrier: Vec<Element>,
    /// n×d matrix with the carrier basis as columns.
    pub mat: ExactMatrix,
    /// One d×d matrix per basis element of the acting subalgebra.
    pub actions: Vec<ExactMatrix>,
    /// Restricted Killing form: matᵀ·B·mat, a d×d symmetric matrix.
    pub gram: ExactMatrix,
}

impl InvariantModule {
    pub fn new(k: &Subalgebra, carrier: Vec<Element>) -> Result<InvariantModule, SubalgError> {
        let alg = k.algebra().clone();
        let field = alg.field();
        let mat = basis_matrix(&alg, &carrier);
        if mat.rank() != carrier.len() {
            return Err(SubalgError::NotIndependent);
        }
        let mut actions = Vec::with_capacity(k.dim());
        for z in k.basis() {
            let mut cols = Vec::with_capacity(carrier.len());
            for v in &carrier {
                let w = z.bracket(v);
                match mat.solve(&w.coords)?.solution() {
                    Some(c) => cols.push(c),
                    None => return Err(SubalgError::NotInvariant),
                }
            }
            actions.push(ExactMatrix::from_columns(field, cols));
        }
        // Finite normalizer components restrict the same way and contribute
        // intertwining constraints of the identical shape T·σ^U = σ^V·T, so
        // they join the action list.
        for sigma in k.components() {
            let mut cols = Vec::with_capacity(carrier.len());
            for v in &carrier {
                let w = sigma.apply(&v.coords);
                match mat.solve(&w)?.solution() {
                    Some(c) => cols.push(c),
                    None => return Err(SubalgError::NotInvariant),
                }
            }
            actions.push(ExactMatrix::from_columns(field, cols));
        }
        let gram = mat.transpose().mul(alg.killing()).mul(&mat);
        Ok(InvariantModule { carrier, mat, actions, gram })
    }

    pub fn dim(&self) -> usize {
        self.carrier.len()
    }

    /// Element from module coordinates.
    pub fn lift(&self, u: &[Scalar]) -> Element {
        let alg = &self.carrier[0].alg;
        let mut x = Element::zero(alg);
        for (b, c) in self.carrier.iter().zip(u) {
            if !c.is_zero() {
                x = x.add(&b.scale(c));
            }
        }
        x
    }
}

/// Basis of Hom_𝔨(U, V): matrices T with T·A^U_Z = A^V_Z·T for every
/// generator Z. Unknowns are the entries of T, solved as one nullspace.
pub fn hom_space(u: &InvariantModule, v: &InvariantModule) -> Vec<ExactMatrix> {
    let field = u.mat.field();
    let (du, dv) = (u.dim(), v.dim());
    if du == 0 || dv == 0 {
        return Vec::new();
    }
    let unknowns = dv * du;
    let idx = |r: usize, c: usize| r * du + c;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for (au, av) in u.actions.iter().zip(&v.actions) {
        for r in 0..dv {
            for c in 0..du {
                let mut row = vec![Scalar::zero(field); unknowns];
                // Σ_s T[r][s]·A^U[s][c] − Σ_s A^V[r][s]·T[s][c] = 0
                for s in 0..du {
                    row[idx(r, s)] = row[idx(r, s)].add(au.at(s, c));
                }
                for s in 0..dv {
                    row[idx(s, c)] = row[idx(s, c)].sub(av.at(r, s));
                }
                rows.push(row);
            }
        }
    }
    let m = ExactMatrix::from_rows(field, rows);
    let (_, null) = m.rank_nullspace();
    null.into_iter()
        .map(|flat| {
            let mut t = ExactMatrix::zero(field, dv, du);
            for r in 0..dv {
                for c in 0..du {
                    *t.at_mut(r, c) = flat[idx(r, c)].clone();
                }
            }
            t
        })
        .collect()
}

/// Basis of the commutant End_𝔨(U).
pub fn commutant(u: &InvariantModule) -> Vec<ExactMatrix> {
    hom_space(u, u)
}

/// Basis of the B-symmetric commutant: equivariant S with Sᵀ·G = G·S where
/// G is the restricted Killing form. For a compact module its dimension is 1
/// exactly when the module is irreducible over ℝ.
pub fn symmetric_commutant(u: &InvariantModule) -> Vec<ExactMatrix> {
    let field = u.mat.field();
    let d = u.dim();
    if d == 0 {
        return Vec::new();
    }
    let unknowns = d * d;
    let idx = |r: usize, c: usize| r * d + c;
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for a in &u.actions {
        for r in 0..d {
            for c in 0..d {
                let mut row = vec![Scalar::zero(field); unknowns];
                for s in 0..d {
                    row[idx(r, s)] = row[idx(r, s)].add(a.at(s, c));
                    row[idx(s, c)] = row[idx(s, c)].sub(a.at(r, s));
                }
                rows.push(row);
            }
        }
    }
    // Symmetry: Σ_s S[s][r]·G[s][c] − G[r][s]·S[s][c] = 0.
    for r in 0..d {
        for c in 0..d {
            let mut row = vec![Scalar::zero(field); unknowns];
            for s in 0..d {
                row[idx(s, r)] = row[idx(s, r)].add(u.gram.at(s, c));
                row[idx(s, c)] = row[idx(s, c)].sub(u.gram.at(r, s));
            }
            rows.push(row);
        }
    }
    let m = ExactMatrix::from_rows(field, rows);
    let (_, null) = m.rank_nullspace();
    null.into_iter()
        .map(|flat| {
            let mut t = ExactMatrix::zero(field, d, d);
            for r in 0..d {
                for c in 0..d {
                    *t.at_mut(r, c) = flat[idx(r, c)].clone();
                }
            }
            t
        })
        .collect()
}

/// Why a summand is certified irreducible (or not).
#[derive(Clone, Debug, PartialEq)]
pub enum IrreducibilityCertificate {
    /// Full commutant has dimension 1: irreducible and of real type.
    CommutantDim1,
    /// Symmetric commutant has dimension 1 and the full commutant is a
    /// division algebra of the stated dimension (2: complex, 4: quaternionic);
    /// witnessed by sampled commutant elements with root-free minimal
    /// polynomials.
    DivisionAlgebra { commutant_dim: usize },
    /// Budget exhausted without a certificate.
    Unresolved,
}

impl IrreducibilityCertificate {
    pub fn is_certified(&self) -> bool {
        !matches!(self, IrreducibilityCertificate::Unresolved)
    }
}

pub struct InvariantDecomposition {
    pub modules: Vec<InvariantModule>,
    pub certificates: Vec<IrreducibilityCertificate>,
    /// Equivalence classes of summand indices under module isomorphism.
    pub classes: Vec<Vec<usize>>,
}

/// Splits a carrier into irreducible invariant summands by extracting exact
/// eigenspaces of sampled symmetric commutant elements. Symmetric samples
/// have all eigenvalues in the real field tower whenever they split at all,
/// and their eigenspaces are automatically B-orthogonal and invariant.
pub fn decompose(
    k: &Subalgebra,
    carrier: &[Element],
    rng: &mut ChaCha8Rng,
) -> Result<InvariantDecomposition, SubalgError> {
    let root = InvariantModule::new(k, carrier.to_vec())?;
    let mut leaves: Vec<(InvariantModule, IrreducibilityCertificate)> = Vec::new();
    split(k, root, rng, &mut leaves)?;
    let modules: Vec<InvariantModule> = leaves.iter().map(|(m, _)| m.clone()).collect();
    let certificates: Vec<IrreducibilityCertificate> =
        leaves.into_iter().map(|(_, c)| c).collect();
    let classes = equivalence_classes(&modules);
    Ok(InvariantDecomposition { modules, certificates, classes })
}

fn equivalence_classes(modules: &[InvariantModule]) -> Vec<Vec<usize>> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..modules.len() {
        let mut placed = false;
        for class in classes.iter_mut() {
            let rep = class[0];
            if !hom_space(&modules[rep], &modules[i]).is_empty() {
                class.push(i);
                placed = true;
                break;
            }
        }
        if !placed {
            classes.push(vec![i]);
        }
    }
    classes
}

fn split(
    k: &Subalgebra,
    module: InvariantModule,
    rng: &mut ChaCha8Rng,
    out: &mut Vec<(InvariantModule, IrreducibilityCertificate)>,
) -> Result<(), SubalgError> {
    let field = module.mat.field();
    let d = module.dim();
    let comm = commutant(&module);
    if comm.len() == 1 {
        out.push((module, IrreducibilityCertificate::CommutantDim1));
        return Ok(());
    }
    let sym = symmetric_commutant(&module);
    if sym.len() == 1 {
        // Candidate complex/quaternionic irreducible: certify that sampled
        // commutant elements outside the scalars have no eigenvalues in the
        // field, so no equivariant projection can exist.
        let cert = if comm.len() == 2 || comm.len() == 4 {
            let mut ok = true;
            for _ in 0..8 {
                let s = random_combo(field, &comm, rng, d);
                let mp = s.min_poly();
                if mp.degree() >= 2 && !mp.field_roots().is_empty() {
                    ok = false;
                    break;
                }
            }
            if ok {
                IrreducibilityCertificate::DivisionAlgebra { commutant_dim: comm.len() }
            } else {
                IrreducibilityCertificate::Unresolved
            }
        } else {
            IrreducibilityCertificate::Unresolved
        };
        out.push((module, cert));
        return Ok(());
    }
    // Reducible: sample symmetric commutant elements until one has at least
    // two exact eigenvalues in the field.
    for _ in 0..16 {
        let s = random_combo(field, &sym, rng, d);
        let mp = s.min_poly();
        if mp.degree() < 2 {
            continue;
        }
        let roots = mp.field_roots();
        if roots.len() < 2 {
            continue;
        }
        let mut parts: Vec<Vec<Element>> = Vec::new();
        let mut covered = 0;
        for lam in &roots {
            let shifted = s.sub(&ExactMatrix::identity(field, d).scale(lam));
            let (_, null) = shifted.rank_nullspace();
            if null.is_empty() {
                continue;
            }
            covered += null.len();
            parts.push(null.iter().map(|u| module.lift(u)).collect());
        }
        if covered < d {
            // Residual complement: B-orthogonal to the found eigenspaces,
            // inside the module.
            let found: Vec<Element> = parts.iter().flatten().cloned().collect();
            let alg = k.algebra();
            let mut rows = Vec::new();
            for e in &found {
                let be = alg.killing().apply(&e.coords);
                let mut row = Vec::with_capacity(d);
                for c in 0..d {
                    let mut acc = Scalar::zero(field);
                    for (r, v) in be.iter().enumerate() {
                        if !v.is_zero() {
                            acc = acc.add(&v.mul(module.mat.at(r, c)));
                        }
                    }
                    row.push(acc);
                }
                rows.push(row);
            }
            let m = ExactMatrix::from_rows(field, rows);
            let (_, null) = m.rank_nullspace();
            if null.len() != d - covered {
                continue;
            }
            parts.push(null.iter().map(|u| module.lift(u)).collect());
        }
        if parts.len() >= 2 {
            for part in parts {
                let sub = InvariantModule::new(k, part)?;
                split(k, sub, rng, out)?;
            }
            return Ok(());
        }
    }
    out.push((module, IrreducibilityCertificate::Unresolved));
    Ok(())
}

fn random_combo(
    field: &crate::exactmath::Field,
    basis: &[ExactMatrix],
    rng: &mut ChaCha8Rng,
    d: usize,
) -> ExactMatrix {
    let mut s = ExactMatrix::zero(field, d, d);
    for b in basis {
        let c: i64 = rng.gen_range(-4..=4);
        if c != 0 {
            s = s.add(&b.scale(&Scalar::from_int(field, c)));
        }
    }
    s
}

/// Re-verifies a claimed decomposition: each part invariant, parts pairwise
/// B-orthogonal, direct sum spans the carrier, each part irreducible.
pub fn verify_decomposition(
    k: &Subalgebra,
    carrier: &[Element],
    claimed: &[Vec<Element>],
    rng: &mut ChaCha8Rng,
) -> Result<Vec<IrreducibilityCertificate>, SubalgError> {
    let alg = k.algebra().clone();
    let total: usize = claimed.iter().map(|p| p.len()).sum();
    if total != carrier.len() {
        return Err(SubalgError::Unresolved("claimed parts have wrong total dimension".into()));
    }
    let all: Vec<Element> = claimed.iter().flatten().cloned().collect();
    if basis_matrix(&alg, &all).rank() != carrier.len() {
        return Err(SubalgError::Unresolved("claimed parts do not span".into()));
    }
    let carrier_mat = basis_matrix(&alg, carrier);
    for e in &all {
        if carrier_mat.solve(&e.coords)?.solution().is_none() {
            return Err(SubalgError::Unresolved("claimed part escapes the carrier".into()));
        }
    }
    for i in 0..claimed.len() {
        for j in i + 1..claimed.len() {
            for x in &claimed[i] {
                for y in &claimed[j] {
                    if !alg.killing_pair(x, y).is_zero() {
                        return Err(SubalgError::Unresolved("claimed parts not B-orthogonal".into()));
                    }
                }
            }
        }
    }
    let mut certs = Vec::new();
    for part in claimed {
        let module = InvariantModule::new(k, part.clone())?;
        let mut leaves = Vec::new();
        split(k, module, rng, &mut leaves)?;
        if leaves.len() != 1 {
            return Err(SubalgError::Unresolved("claimed part is reducible".into()));
        }
        certs.push(leaves.pop().unwrap().1);
    }
    Ok(certs)
}
