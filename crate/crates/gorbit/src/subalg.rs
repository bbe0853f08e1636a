//! Subalgebra-level analysis: closure, normalizer, centralizer, center,
//! rank with Cartan certificates, Dynkin regularity, simple-ideal
//! decomposition, and weak regularity.
//!
//! Randomized steps are Las Vegas: a seeded PRNG proposes elements and every
//! success is converted to an exact certificate before being reported.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::exactmath::{ExactError, ExactMatrix, Scalar, SolveOutcome};
use crate::liecore::{Algebra, Element};

#[derive(Debug, Error)]
pub enum SubalgError {
    #[error("basis is not linearly independent")]
    NotIndependent,
    #[error("not closed under bracket: [basis {i}, basis {j}] escapes the span")]
    NotClosed { i: usize, j: usize },
    #[error("carrier is not invariant under the acting subalgebra")]
    NotInvariant,
    #[error("unresolved after retry budget: {0}")]
    Unresolved(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

/// A bracket-closed subspace of a fixed ambient algebra.
#[derive(Clone)]
pub struct Subalgebra {
    alg: Algebra,
    basis: Vec<Element>,
    /// n×k matrix with the basis as columns.
    mat: ExactMatrix,
    /// Adjoint matrices of finite normalizer components: exact ambient
    /// automorphisms σ with σ(𝔥) = 𝔥 that are not generated by exp(ad 𝔥).
    /// When the normalizer group is disconnected these carry the extra
    /// equivariance constraints; module computations treat them as
    /// additional intertwining generators.
    components: Vec<ExactMatrix>,
}

/// Builds the n×k column matrix of a list of elements.
pub fn basis_matrix(alg: &Algebra, elems: &[Element]) -> ExactMatrix {
    ExactMatrix::from_columns(
        alg.field(),
        elems.iter().map(|e| e.coords.clone()).collect(),
    )
}

/// All elements B-orthogonal to the given ones.
pub fn orthocomplement(alg: &Algebra, elems: &[Element]) -> Vec<Element> {
    let n = alg.dim();
    let field = alg.field();
    let mut rows = Vec::new();
    for e in elems {
        // Row (B·e)ᵀ.
        let be = alg.killing().apply(&e.coords);
        rows.push(be);
    }
    if rows.is_empty() {
        return (0..n).map(|i| Element::basis(alg, i)).collect();
    }
    let m = ExactMatrix::from_rows(field, rows);
    let (_, null) = m.rank_nullspace();
    null.into_iter()
        .map(|v| Element::from_coords(alg, v))
        .collect()
}

impl Subalgebra {
    /// Verifies independence and closure under bracket; on failure returns
    /// the witness pair whose bracket escapes the span.
    pub fn span_closure_check(alg: &Algebra, basis: Vec<Element>) -> Result<Subalgebra, SubalgError> {
        let mat = basis_matrix(alg, &basis);
        if mat.rank() != basis.len() {
            return Err(SubalgError::NotIndependent);
        }
        for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                let b = basis[i].bracket(&basis[j]);
                if mat.solve(&b.coords)?.solution().is_none() {
                    return Err(SubalgError::NotClosed { i, j });
                }
            }
        }
        Ok(Subalgebra { alg: alg.clone(), basis, mat, components: Vec::new() })
    }

    /// The whole algebra as a subalgebra of itself.
    pub fn full(alg: &Algebra) -> Subalgebra {
        let basis: Vec<Element> = (0..alg.dim()).map(|i| Element::basis(alg, i)).collect();
        let mat = basis_matrix(alg, &basis);
        Subalgebra { alg: alg.clone(), basis, mat, components: Vec::new() }
    }

    pub fn algebra(&self) -> &Algebra {
        &self.alg
    }

    pub fn basis(&self) -> &[Element] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn matrix(&self) -> &ExactMatrix {
        &self.mat
    }

    pub fn components(&self) -> &[ExactMatrix] {
        &self.components
    }

    /// Registers a normalizer-component generator after verifying exactly
    /// that σ is a bracket automorphism of the ambient algebra and maps the
    /// subalgebra span into itself. (Killing-orthogonality of σ follows from
    /// the automorphism property and is not checked separately.)
    pub fn attach_component(&mut self, sigma: ExactMatrix) -> Result<(), SubalgError> {
        let n = self.alg.dim();
        if sigma.rows() != n || sigma.cols() != n {
            return Err(SubalgError::Unresolved(
                "component matrix has the wrong shape".into(),
            ));
        }
        let image: Vec<Element> = (0..n)
            .map(|i| Element::from_coords(&self.alg, sigma.apply(&Element::basis(&self.alg, i).coords)))
            .collect();
        if basis_matrix(&self.alg, &image).rank() != n {
            return Err(SubalgError::Unresolved("component matrix is singular".into()));
        }
        for i in 0..n {
            for j in i + 1..n {
                let lhs = sigma.apply(&Element::basis(&self.alg, i).bracket(&Element::basis(&self.alg, j)).coords);
                let rhs = image[i].bracket(&image[j]).coords.clone();
                if lhs
                    .iter()
                    .zip(&rhs)
                    .any(|(a, b)| !a.sub(b).is_zero())
                {
                    return Err(SubalgError::Unresolved(format!(
                        "component is not an automorphism: bracket ({i}, {j})"
                    )));
                }
            }
        }
        for h in &self.basis {
            let img = sigma.apply(&h.coords);
            if self.mat.solve(&img)?.solution().is_none() {
                return Err(SubalgError::NotInvariant);
            }
        }
        self.components.push(sigma);
        Ok(())
    }

    pub fn contains(&self, x: &Element) -> bool {
        self.mat
            .solve(&x.coords)
            .map(|o| o.solution().is_some())
            .unwrap_or(false)
    }

    /// Coordinates of x over the subalgebra basis, if x lies in the span.
    pub fn coords_of(&self, x: &Element) -> Option<Vec<Scalar>> {
        self.mat.solve(&x.coords).ok()?.solution()
    }

    /// Seeded random element with small integer coordinates over the basis.
    pub fn random_element(&self, rng: &mut ChaCha8Rng) -> Element {
        let field = self.alg.field();
        let mut x = Element::zero(&self.alg);
        for b in &self.basis {
            let c: i64 = rng.gen_range(-4..=4);
            if c != 0 {
                x = x.add(&b.scale(&Scalar::from_int(field, c)));
            }
        }
        x
    }

    /// The normalizer 𝔫(𝔥) = {X : [X, 𝔥] ⊆ 𝔥}, as the exact solution space
    /// of the span-membership conditions.
    pub fn normalizer(&self) -> Subalgebra {
        let n = self.alg.dim();
        let field = self.alg.field();
        // Left-null basis of the span: rows l with lᵀ·C = 0.
        let (_, lnull) = self.mat.transpose().rank_nullspace();
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        for h in &self.basis {
            // [X, h] = −ad(h)·X must satisfy lᵀ·ad(h)·X = 0 for each l.
            let adh = h.ad();
            for l in &lnull {
                let mut row = vec![Scalar::zero(field); n];
                for c in 0..n {
                    let mut acc = Scalar::zero(field);
                    for (r, lv) in l.iter().enumerate() {
                        if !lv.is_zero() {
                            acc = acc.add(&lv.mul(adh.at(r, c)));
                        }
                    }
                    row[c] = acc;
                }
                rows.push(row);
            }
        }
        let basis = if rows.is_empty() {
            (0..n).map(|i| Element::basis(&self.alg, i)).collect()
        } else {
            let m = ExactMatrix::from_rows(field, rows);
            let (_, null) = m.rank_nullspace();
            null.into_iter()
                .map(|v| Element::from_coords(&self.alg, v))
                .collect()
        };
        let mut k = Subalgebra::span_closure_check(&self.alg, basis)
            .expect("a normalizer is always a subalgebra");
        // An automorphism with σ(𝔥) = 𝔥 preserves 𝔫(𝔥); re-verified on attach.
        for sigma in &self.components {
            k.attach_component(sigma.clone())
                .expect("components preserve the normalizer");
        }
        k
    }

    /// The centralizer 𝔠(𝔥) = {X : [X, 𝔥] = 0} in the ambient algebra.
    pub fn centralizer(&self) -> Subalgebra {
        let field = self.alg.field();
        let mut stacked: Option<ExactMatrix> = None;
        for h in &self.basis {
            let adh = h.ad();
            stacked = Some(match stacked {
                None => adh,
                Some(s) => s.vstack(&adh),
            });
        }
        let basis = match stacked {
            None => (0..self.alg.dim())
                .map(|i| Element::basis(&self.alg, i))
                .collect(),
            Some(m) => {
                let (_, null) = m.rank_nullspace();
                null.into_iter()
                    .map(|v| Element::from_coords(&self.alg, v))
                    .collect()
            }
        };
        let _ = field;
        Subalgebra::span_closure_check(&self.alg, basis)
            .expect("a centralizer is always a subalgebra")
    }

    /// The center of this subalgebra: elements of 𝔥 commuting with all of 𝔥.
    pub fn center(&self) -> Vec<Element> {
        let field = self.alg.field();
        let k = self.dim();
        if k == 0 {
            return Vec::new();
        }
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        for h in &self.basis {
            // x = C·u, condition ad(h)·C·u = 0.
            let prod = h.ad().mul(&self.mat);
            for r in 0..prod.rows() {
                rows.push(prod.row(r).to_vec());
            }
        }
        let m = ExactMatrix::from_rows(field, rows);
        let (_, null) = m.rank_nullspace();
        null.into_iter().map(|u| self.lift(&u)).collect()
    }

    /// Element Σ uᵢ·basisᵢ from subalgebra coordinates.
    pub fn lift(&self, u: &[Scalar]) -> Element {
        let mut x = Element::zero(&self.alg);
        for (b, c) in self.basis.iter().zip(u) {
            if !c.is_zero() {
                x = x.add(&b.scale(c));
            }
        }
        x
    }

    /// B-orthogonal complement of the subalgebra in the ambient algebra.
    pub fn orthocomplement(&self) -> Vec<Element> {
        orthocomplement(&self.alg, &self.basis)
    }

    /// Rank via certified Cartan subalgebras: the centralizer of a generic
    /// element inside 𝔥 is abelian, and an abelian centralizer of an element
    /// of a compact algebra is a Cartan subalgebra.
    pub fn rank(&self, rng: &mut ChaCha8Rng) -> Result<CartanCertificate, SubalgError> {
        if self.dim() == 0 {
            return Ok(CartanCertificate { rank: 0, cartan: Vec::new() });
        }
        for _ in 0..32 {
            let z = self.random_element(rng);
            if z.is_zero() {
                continue;
            }
            // 𝔠_𝔥(z) in subalgebra coordinates.
            let prod = z.ad().mul(&self.mat);
            let (_, null) = prod.rank_nullspace();
            let cand: Vec<Element> = null.iter().map(|u| self.lift(u)).collect();
            let abelian = cand
                .iter()
                .enumerate()
                .all(|(i, a)| cand[i + 1..].iter().all(|b| a.bracket(b).is_zero()));
            if abelian && !cand.is_empty() {
                return Ok(CartanCertificate { rank: cand.len(), cartan: cand });
            }
        }
        Err(SubalgError::Unresolved(
            "rank certification budget exhausted".to_string(),
        ))
    }

    /// Dynkin regularity: the normalizer contains a Cartan subalgebra of the
    /// ambient algebra, i.e. rank(𝔫(𝔥)) = rank(𝔤).
    pub fn is_regular(&self, rng: &mut ChaCha8Rng) -> Result<RegularityReport, SubalgError> {
        let ambient = Subalgebra::full(&self.alg).rank(rng)?;
        let norm = self.normalizer();
        let norm_rank = norm.rank(rng)?;
        Ok(RegularityReport {
            regular: norm_rank.rank == ambient.rank,
            ambient_rank: ambient.rank,
            normalizer_rank: norm_rank.rank,
            cartan_in_normalizer: norm_rank.cartan,
        })
    }

    /// Splits into center and simple ideals; every invariant is re-verified
    /// exactly before returning.
    pub fn ideal_decomposition(
        &self,
        rng: &mut ChaCha8Rng,
    ) -> Result<IdealDecomposition, SubalgError> {
        let center = self.center();
        // Semisimple part: B-orthocomplement of the center inside 𝔥.
        let field = self.alg.field();
        let semisimple: Vec<Element> = if center.is_empty() {
            self.basis.clone()
        } else {
            let mut rows = Vec::new();
            for z in &center {
                let bz = self.alg.killing().apply(&z.coords);
                // row over subalgebra coordinates: (B·z)ᵀ·C
                let mut row = Vec::with_capacity(self.dim());
                for c in 0..self.dim() {
                    let mut acc = Scalar::zero(field);
                    for (r, v) in bz.iter().enumerate() {
                        if !v.is_zero() {
                            acc = acc.add(&v.mul(self.mat.at(r, c)));
                        }
                    }
                    row.push(acc);
                }
                rows.push(row);
            }
            let m = ExactMatrix::from_rows(field, rows);
            let (_, null) = m.rank_nullspace();
            null.into_iter().map(|u| self.lift(&u)).collect()
        };
        let ideals: Vec<Vec<Element>> = if semisimple.is_empty() {
            Vec::new()
        } else {
            let dec = crate::repth::decompose(self, &semisimple, rng)
                .map_err(|e| SubalgError::Unresolved(format!("ideal split: {e}")))?;
            if dec.certificates.iter().any(|c| !c.is_certified()) {
                return Err(SubalgError::Unresolved(
                    "ideal irreducibility not certified".to_string(),
                ));
            }
            dec.modules.into_iter().map(|m| m.carrier).collect()
        };
        let out = IdealDecomposition { center, ideals };
        self.verify_ideal_decomposition(&out)?;
        Ok(out)
    }

    fn verify_ideal_decomposition(&self, d: &IdealDecomposition) -> Result<(), SubalgError> {
        // Cross brackets vanish and parts are pairwise B-orthogonal.
        let mut parts: Vec<&[Element]> = vec![&d.center];
        for i in &d.ideals {
            parts.push(i);
        }
        for i in 0..parts.len() {
            for j in i + 1..parts.len() {
                for x in parts[i] {
                    for y in parts[j] {
                        if !x.bracket(y).is_zero() {
                            return Err(SubalgError::Unresolved(
                                "ideal cross bracket nonzero".to_string(),
                            ));
                        }
                        if !self.alg.killing_pair(x, y).is_zero() {
                            return Err(SubalgError::Unresolved(
                                "ideal parts not B-orthogonal".to_string(),
                            ));
                        }
                    }
                }
            }
        }
        // Direct sum spans the subalgebra.
        let total: usize = parts.iter().map(|p| p.len()).sum();
        let all: Vec<Element> = parts.iter().flat_map(|p| p.iter().cloned()).collect();
        if total != self.dim() || basis_matrix(&self.alg, &all).rank() != self.dim() {
            return Err(SubalgError::Unresolved(
                "ideal decomposition does not span".to_string(),
            ));
        }
        // Each ideal has zero center within itself.
        for ideal in &d.ideals {
            let sub = Subalgebra::span_closure_check(&self.alg, ideal.clone())?;
            if !sub.center().is_empty() {
                return Err(SubalgError::Unresolved("ideal has nonzero center".to_string()));
            }
        }
        Ok(())
    }

    /// Weak regularity via the equivariant-map criterion: with
    /// 𝔨 = 𝔫(𝔥) and 𝔪 = 𝔨^⊥, the subalgebra is weakly regular iff every
    /// ad_𝔨-equivariant map between 𝔨 and 𝔪 vanishes.
    pub fn weak_regularity(&self) -> Result<WeakRegularityReport, SubalgError> {
        let k = self.normalizer();
        let m = k.orthocomplement();
        let mod_k = crate::repth::InvariantModule::new(&k, k.basis().to_vec())?;
        let hom_km = if m.is_empty() {
            Vec::new()
        } else {
            let mod_m = crate::repth::InvariantModule::new(&k, m.clone())?;
            crate::repth::hom_space(&mod_k, &mod_m)
        };
        let hom_mk = if m.is_empty() {
            Vec::new()
        } else {
            let mod_m = crate::repth::InvariantModule::new(&k, m.clone())?;
            crate::repth::hom_space(&mod_m, &mod_k)
        };
        Ok(WeakRegularityReport {
            weakly_regular: hom_km.is_empty() && hom_mk.is_empty(),
            hom_km_dim: hom_km.len(),
            hom_mk_dim: hom_mk.len(),
            normalizer: k,
            complement: m,
        })
    }
}

/// An exactly certified Cartan subalgebra.
pub struct CartanCertificate {
    pub rank: usize,
    pub cartan: Vec<Element>,
}

pub struct RegularityReport {
    pub regular: bool,
    pub ambient_rank: usize,
    pub normalizer_rank: usize,
    pub cartan_in_normalizer: Vec<Element>,
}

pub struct IdealDecomposition {
    pub center: Vec<Element>,
    pub ideals: Vec<Vec<Element>>,
}

pub struct WeakRegularityReport {
    pub weakly_regular: bool,
    pub hom_km_dim: usize,
    pub hom_mk_dim: usize,
    pub normalizer: Subalgebra,
    pub complement: Vec<Element>,
}

/// Convenience: inconsistency data from a solve, when present.
pub fn inconsistency(outcome: &SolveOutcome) -> Option<(usize, usize)> {
    match outcome {
        SolveOutcome::Inconsistent { rank, augmented_rank } => Some((*rank, *augmented_rank)),
        SolveOutcome::Solution(_) => None,
    }
}
