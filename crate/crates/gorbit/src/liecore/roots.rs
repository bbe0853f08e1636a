//! Root systems in simple-root coordinates, generated by reflection closure
//! from the Cartan matrix. Positive roots are ordered by height, then
//! lexicographically; all downstream golden data is keyed to this order.

use std::collections::BTreeSet;
use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::Zero;

use crate::exactmath::ExactError;

/// A root as integer coordinates over the simple roots.
pub type RootVec = Vec<i64>;

#[derive(Debug, Clone)]
pub struct RootSystem {
    pub label: String,
    pub rank: usize,
    /// Cartan matrix C[i][j] = 2(αᵢ,αⱼ)/(αⱼ,αⱼ).
    pub cartan: Vec<Vec<i64>>,
    /// Gram matrix (αᵢ,αⱼ) of the invariant pairing, long roots normalized
    /// to squared length 2.
    pub gram: Vec<Vec<BigRational>>,
    /// All roots, negatives included.
    pub roots: Vec<RootVec>,
    /// Positive roots by (height, lex) order.
    pub positive: Vec<RootVec>,
}

fn qr(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Cartan matrix and squared-length-halves (αᵢ,αᵢ)/2 for the supported types.
fn cartan_data(series: char, n: usize) -> Option<(Vec<Vec<i64>>, Vec<BigRational>)> {
    let mut c = vec![vec![0i64; n]; n];
    for (i, row) in c.iter_mut().enumerate() {
        row[i] = 2;
    }
    let chain = |c: &mut Vec<Vec<i64>>| {
        for i in 0..n - 1 {
            c[i][i + 1] = -1;
            c[i + 1][i] = -1;
        }
    };
    let mut half = vec![qr(1, 1); n];
    match series {
        'A' => {
            if n < 1 {
                return None;
            }
            if n > 1 {
                chain(&mut c);
            }
        }
        'B' => {
            // α_n short: (α_n,α_n) = 1.
            if n < 2 {
                return None;
            }
            chain(&mut c);
            c[n - 2][n - 1] = -2;
            half[n - 1] = qr(1, 2);
        }
        'C' => {
            // α_n long of squared length 4 relative to shorts of 2; rescale
            // so the long root has squared length 2.
            if n < 2 {
                return None;
            }
            chain(&mut c);
            c[n - 1][n - 2] = -2;
            for h in half.iter_mut().take(n - 1) {
                *h = qr(1, 2);
            }
        }
        'D' => {
            if n < 3 {
                return None;
            }
            for i in 0..n - 2 {
                c[i][i + 1] = -1;
                c[i + 1][i] = -1;
            }
            c[n - 3][n - 1] = -1;
            c[n - 1][n - 3] = -1;
        }
        'G' => {
            if n != 2 {
                return None;
            }
            // α₁ = α short, α₂ = β long: (α,α) = 2/3, (β,β) = 2.
            c = vec![vec![2, -1], vec![-3, 2]];
            half = vec![qr(1, 3), qr(1, 1)];
        }
        _ => return None,
    }
    Some((c, half))
}

impl RootSystem {
    /// Builds the root system for labels like "G2", "A1", "C3".
    pub fn new(label: &str) -> Result<RootSystem, ExactError> {
        let mut chars = label.chars();
        let series = chars
            .next()
            .ok_or_else(|| ExactError::Parse(label.to_string()))?;
        let n: usize = chars
            .as_str()
            .parse()
            .map_err(|_| ExactError::Parse(format!("unsupported type {label}")))?;
        let (cartan, half) = cartan_data(series.to_ascii_uppercase(), n)
            .ok_or_else(|| ExactError::Parse(format!("unsupported type {label}")))?;
        // Gram: (αᵢ,αⱼ) = C[i][j]·(αⱼ,αⱼ)/2.
        let mut gram = vec![vec![BigRational::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                gram[i][j] = qr(cartan[i][j], 1) * &half[j];
            }
        }
        // Reflection closure of the simple roots.
        let mut seen: BTreeSet<RootVec> = BTreeSet::new();
        let mut frontier: Vec<RootVec> = Vec::new();
        for i in 0..n {
            let mut v = vec![0i64; n];
            v[i] = 1;
            seen.insert(v.clone());
            frontier.push(v);
        }
        while let Some(v) = frontier.pop() {
            for j in 0..n {
                // s_j(v) = v − (Σᵢ vᵢ C[i][j]) αⱼ
                let pairing: i64 = (0..n).map(|i| v[i] * cartan[i][j]).sum();
                let mut w = v.clone();
                w[j] -= pairing;
                if seen.insert(w.clone()) {
                    frontier.push(w);
                }
            }
        }
        let roots: Vec<RootVec> = seen.into_iter().collect();
        let mut positive: Vec<RootVec> = roots
            .iter()
            .filter(|v| v.iter().all(|&c| c >= 0))
            .cloned()
            .collect();
        positive.sort_by_key(|v| (v.iter().sum::<i64>(), v.clone()));
        Ok(RootSystem {
            label: label.to_string(),
            rank: n,
            cartan,
            gram,
            roots,
            positive,
        })
    }

    pub fn is_root(&self, v: &[i64]) -> bool {
        self.roots.iter().any(|r| r == v)
    }

    /// Pairing (γ,δ) extended bilinearly from the Gram matrix; defined for
    /// any pair of weight-lattice vectors, not only roots.
    pub fn pairing(&self, a: &[i64], b: &[i64]) -> BigRational {
        let mut acc = BigRational::zero();
        for i in 0..self.rank {
            for j in 0..self.rank {
                if a[i] != 0 && b[j] != 0 {
                    acc += qr(a[i] * b[j], 1) * &self.gram[i][j];
                }
            }
        }
        acc
    }

    /// Cartan integer 2(γ,δ)/(δ,δ).
    pub fn cartan_int(&self, gamma: &[i64], delta: &[i64]) -> i64 {
        let num = qr(2, 1) * self.pairing(gamma, delta);
        let den = self.pairing(delta, delta);
        let q = num / den;
        assert!(q.is_integer(), "Cartan pairing must be integral");
        use num::ToPrimitive;
        q.to_integer().to_i64().expect("small Cartan integer")
    }

    /// Largest p with δ − pγ a root (the down-chain length).
    pub fn chain_down(&self, gamma: &[i64], delta: &[i64]) -> i64 {
        let mut p = 0i64;
        loop {
            let probe: RootVec = delta
                .iter()
                .zip(gamma)
                .map(|(d, g)| d - (p + 1) * g)
                .collect();
            if self.is_root(&probe) {
                p += 1;
            } else {
                return p;
            }
        }
    }

    /// Position of a positive root in the fixed (height, lex) order.
    pub fn positive_index(&self, v: &[i64]) -> Option<usize> {
        self.positive.iter().position(|r| r == v)
    }

    /// Short name for a root over letters a, b, c, … (e.g. "3a+2b").
    pub fn root_name(&self, v: &[i64]) -> String {
        let letters = ["a", "b", "c", "d", "e", "f", "g", "h"];
        let mut parts = Vec::new();
        for (i, &c) in v.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let coef = match c {
                1 => String::new(),
                -1 => "-".to_string(),
                _ => c.to_string(),
            };
            parts.push(format!("{}{}", coef, letters[i]));
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join("+").replace("+-", "-")
        }
    }
}

impl fmt::Display for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ({} roots)", self.label, self.roots.len())
    }
}
