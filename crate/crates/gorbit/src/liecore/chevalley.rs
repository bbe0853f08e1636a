//! Chevalley structure constants N_{γδ} with signs fixed by the
//! extraspecial-pair convention on the (height, lex) order of positive
//! roots. Magnitudes are root-chain lengths; signs propagate from the
//! extraspecial pairs through the standard Jacobi relations.

use std::collections::BTreeMap;

use num::rational::BigRational;
use num::ToPrimitive;

use super::roots::{RootSystem, RootVec};

pub struct ChevalleyConstants {
    rs: RootSystem,
    /// N for special positive pairs (γ, δ), γ < δ, γ+δ ∈ R⁺.
    special: BTreeMap<(RootVec, RootVec), i64>,
}

fn add(a: &[i64], b: &[i64]) -> RootVec {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn neg(a: &[i64]) -> RootVec {
    a.iter().map(|x| -x).collect()
}

fn is_positive(a: &[i64]) -> bool {
    a.iter().all(|&c| c >= 0)
}

/// (height, lex) key used for the total order on positive roots.
fn order_key(v: &[i64]) -> (i64, RootVec) {
    (v.iter().sum(), v.to_vec())
}

impl ChevalleyConstants {
    pub fn new(rs: &RootSystem) -> ChevalleyConstants {
        let mut cc = ChevalleyConstants {
            rs: rs.clone(),
            special: BTreeMap::new(),
        };
        // Sums ξ of special pairs, processed by increasing height.
        let mut sums: Vec<RootVec> = rs
            .positive
            .iter()
            .filter(|v| v.iter().sum::<i64>() >= 2)
            .cloned()
            .collect();
        sums.sort_by_key(|v| order_key(v));
        for xi in sums {
            // Candidate special pairs (γ, δ) with γ + δ = ξ, γ < δ.
            let mut pairs: Vec<(RootVec, RootVec)> = Vec::new();
            for gamma in &rs.positive {
                let delta = xi
                    .iter()
                    .zip(gamma)
                    .map(|(x, g)| x - g)
                    .collect::<RootVec>();
                if is_positive(&delta)
                    && rs.is_root(&delta)
                    && order_key(gamma) < order_key(&delta)
                {
                    pairs.push((gamma.clone(), delta.clone()));
                }
            }
            pairs.sort_by_key(|(g, _)| order_key(g));
            let Some((eps, eta)) = pairs.first().cloned() else {
                continue;
            };
            // Extraspecial pair: N = +(p+1).
            let p = rs.chain_down(&eps, &eta);
            cc.special.insert((eps.clone(), eta.clone()), p + 1);
            for (gamma, delta) in pairs.iter().skip(1) {
                let n = cc.derive_special(&xi, &eps, &eta, gamma, delta);
                let p = rs.chain_down(gamma, delta);
                assert_eq!(
                    n.abs(),
                    p + 1,
                    "structure constant magnitude must be chain length"
                );
                cc.special.insert((gamma.clone(), delta.clone()), n);
            }
        }
        cc
    }

    /// N_{γδ} for a non-extraspecial special pair, from the Jacobi identity
    /// on (ε, η, −δ) where (ε, η) is the extraspecial pair of ξ = γ+δ.
    fn derive_special(
        &self,
        xi: &[i64],
        eps: &[i64],
        eta: &[i64],
        gamma: &[i64],
        delta: &[i64],
    ) -> i64 {
        let rs = &self.rs;
        let mut rhs: i64 = 0;
        let t1 = add(eta, &neg(delta));
        if rs.is_root(&t1) {
            rhs += self.n(eta, &neg(delta)) * self.n(&t1, eps);
        }
        let t2 = add(&neg(delta), eps);
        if rs.is_root(&t2) {
            rhs += self.n(&neg(delta), eps) * self.n(&t2, eta);
        }
        // N(ε,η)·N(ξ,−δ) = −rhs and N(ξ,−δ) = (γ,γ)/(ξ,ξ)·N(γ,δ).
        let n_eps_eta = self.n(eps, eta);
        let ratio = rs.pairing(gamma, gamma) / rs.pairing(xi, xi);
        let value = BigRational::from_integer((-rhs).into())
            / (BigRational::from_integer(n_eps_eta.into()) * ratio);
        assert!(value.is_integer(), "derived structure constant not integral");
        value.to_integer().to_i64().expect("small constant")
    }

    /// N_{γδ} for any pair of roots with γ+δ a root; 0 when γ+δ is not a
    /// root. Callers must not pass δ = −γ (that bracket is a coroot).
    pub fn n(&self, gamma: &[i64], delta: &[i64]) -> i64 {
        let rs = &self.rs;
        let sum = add(gamma, delta);
        if !rs.is_root(&sum) {
            return 0;
        }
        let gp = is_positive(gamma);
        let dp = is_positive(delta);
        match (gp, dp) {
            (true, true) => {
                if order_key(gamma) < order_key(delta) {
                    *self
                        .special
                        .get(&(gamma.to_vec(), delta.to_vec()))
                        .expect("special pair computed")
                } else {
                    -self.n(delta, gamma)
                }
            }
            (false, false) => -self.n(&neg(gamma), &neg(delta)),
            (false, true) => -self.n(delta, gamma),
            (true, false) => {
                if is_positive(&sum) {
                    // N(γ,δ) = (ξ,ξ)/(γ,γ)·N(δ,−ξ) with N(δ,−ξ) = −N(−δ,ξ).
                    let ratio = rs.pairing(&sum, &sum) / rs.pairing(gamma, gamma);
                    let inner = -self.n(&neg(delta), &sum);
                    let v = ratio * BigRational::from_integer(inner.into());
                    assert!(v.is_integer(), "mixed-pair constant not integral");
                    v.to_integer().to_i64().expect("small constant")
                } else {
                    -self.n(&neg(gamma), &neg(delta))
                }
            }
        }
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    /// Coefficients of the coroot H_γ over the simple coroots H_{αⱼ}:
    /// H_γ = Σⱼ mⱼ·(αⱼ,αⱼ)/(γ,γ)·H_{αⱼ} for γ = Σⱼ mⱼαⱼ. Defined for any
    /// nonzero vector λ of the root lattice, not only roots.
    pub fn coroot_coeffs(&self, lambda: &[i64]) -> Vec<BigRational> {
        let rs = &self.rs;
        let norm = rs.pairing(lambda, lambda);
        (0..rs.rank)
            .map(|j| {
                let mut e = vec![0i64; rs.rank];
                e[j] = 1;
                let aj = rs.pairing(&e, &e);
                BigRational::from_integer(lambda[j].into()) * aj / norm.clone()
            })
            .collect()
    }
}
