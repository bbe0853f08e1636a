//! Dense exact matrices over a quadratic tower, with fraction-free
//! (Bareiss-style) elimination: rows are scaled to integer coordinates and
//! every division during elimination is exact in the ring ℤ[√d₁,…,√dₖ].



use super::field::{Field, Scalar};
use super::poly::Poly;
use super::ExactError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl ExactMatrix {
    pub fn zero(field: &Field, rows: usize, cols: usize) -> ExactMatrix {
        ExactMatrix {
            field: field.clone(),
            rows,
            cols,
            entries: vec![Scalar::zero(field); rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> ExactMatrix {
        let mut m = ExactMatrix::zero(field, n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Scalar::one(field);
        }
        m
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<Scalar>>) -> ExactMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        ExactMatrix {
            field: field.clone(),
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_columns(field: &Field, cols: Vec<Vec<Scalar>>) -> ExactMatrix {
        let c = cols.len();
        let r = cols.first().map_or(0, |col| col.len());
        let mut m = ExactMatrix::zero(field, r, c);
        for (j, col) in cols.iter().enumerate() {
            assert!(col.len() == r, "ragged columns");
            for (i, v) in col.iter().enumerate() {
                *m.at_mut(i, j) = v.clone();
            }
        }
        m
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Scalar {
        &mut self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut m = ExactMatrix::zero(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *m.at_mut(j, i) = self.at(i, j).clone();
            }
        }
        m
    }

    pub fn add(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.add(b))
            .collect();
        ExactMatrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn sub(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.sub(b))
            .collect();
        ExactMatrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            entries,
        }
    }

    pub fn scale(&self, s: &Scalar) -> ExactMatrix {
        ExactMatrix {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e.mul(s)).collect(),
        }
    }

    pub fn mul(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut m = ExactMatrix::zero(&self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let t = a.mul(b);
                    let cur = m.at(i, j).add(&t);
                    *m.at_mut(i, j) = cur;
                }
            }
        }
        m
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape");
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero(&self.field);
                for j in 0..self.cols {
                    let e = self.at(i, j);
                    if !e.is_zero() && !v[j].is_zero() {
                        acc = acc.add(&e.mul(&v[j]));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn trace(&self) -> Scalar {
        assert_eq!(self.rows, self.cols);
        let mut acc = Scalar::zero(&self.field);
        for i in 0..self.rows {
            acc = acc.add(self.at(i, i));
        }
        acc
    }

    /// Stacks `other` below `self`.
    pub fn vstack(&self, other: &ExactMatrix) -> ExactMatrix {
        assert_eq!(self.cols, other.cols);
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        ExactMatrix {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        }
    }

    /// Exact rank and a basis of the right nullspace.
    pub fn rank_nullspace(&self) -> (usize, Vec<Vec<Scalar>>) {
        let ech = self.echelon();
        let rank = ech.pivots.len();
        let pivot_set: Vec<usize> = ech.pivots.clone();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![Scalar::zero(&self.field); self.cols];
            v[free] = Scalar::one(&self.field);
            // Back-substitute pivot coordinates from the echelon rows.
            for (ri, &pc) in pivot_set.iter().enumerate().rev() {
                let row = &ech.rows[ri];
                let mut acc = Scalar::zero(&self.field);
                for j in pc + 1..self.cols {
                    if !row[j].is_zero() && !v[j].is_zero() {
                        acc = acc.add(&row[j].mul(&v[j]));
                    }
                }
                v[pc] = acc.neg().div(&row[pc]).expect("pivot nonzero");
            }
            basis.push(v);
        }
        (rank, basis)
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// Solves M·v = b; on inconsistency returns the rank certificate
    /// rank(M) < rank(M|b).
    pub fn solve(&self, b: &[Scalar]) -> Result<SolveOutcome, ExactError> {
        if b.len() != self.rows {
            return Err(ExactError::Dimension(format!(
                "solve rhs length {} vs {} rows",
                b.len(),
                self.rows
            )));
        }
        let mut aug = ExactMatrix::zero(&self.field, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                *aug.at_mut(i, j) = self.at(i, j).clone();
            }
            *aug.at_mut(i, self.cols) = b[i].clone();
        }
        let ech = aug.echelon();
        if ech.pivots.iter().any(|&c| c == self.cols) {
            let rank_m = self.rank();
            return Ok(SolveOutcome::Inconsistent {
                rank: rank_m,
                augmented_rank: ech.pivots.len(),
            });
        }
        // Particular solution with free variables set to zero.
        let mut v = vec![Scalar::zero(&self.field); self.cols];
        for (ri, &pc) in ech.pivots.iter().enumerate().rev() {
            let row = &ech.rows[ri];
            let mut acc = row[self.cols].clone();
            for j in pc + 1..self.cols {
                if !row[j].is_zero() && !v[j].is_zero() {
                    acc = acc.sub(&row[j].mul(&v[j]));
                }
            }
            v[pc] = acc.div(&row[pc]).expect("pivot nonzero");
        }
        Ok(SolveOutcome::Solution(v))
    }

    /// Inverse of an invertible square matrix, column-by-column solves.
    pub fn inverse(&self) -> Result<ExactMatrix, ExactError> {
        assert_eq!(self.rows, self.cols, "inverse of a square matrix");
        let mut cols = Vec::with_capacity(self.cols);
        for j in 0..self.cols {
            let mut e = vec![Scalar::zero(&self.field); self.rows];
            e[j] = Scalar::one(&self.field);
            match self.solve(&e)? {
                SolveOutcome::Solution(v) => cols.push(v),
                SolveOutcome::Inconsistent { .. } => {
                    return Err(ExactError::Dimension("matrix is singular".to_string()))
                }
            }
        }
        Ok(ExactMatrix::from_columns(&self.field, cols))
    }

    /// Monic polynomial of least degree annihilating the matrix.
    pub fn min_poly(&self) -> Poly {
        assert_eq!(self.rows, self.cols, "min_poly of a square matrix");
        let n = self.rows;
        let mut powers: Vec<Vec<Scalar>> = vec![vectorize(&ExactMatrix::identity(&self.field, n))];
        let mut cur = ExactMatrix::identity(&self.field, n);
        loop {
            cur = cur.mul(self);
            powers.push(vectorize(&cur));
            // Columns are vec(M^0) … vec(M^d); look for the first dependency.
            let stack = ExactMatrix::from_columns(&self.field, powers.clone());
            let (_, null) = stack.rank_nullspace();
            if let Some(rel) = null.first() {
                let lead = rel.last().unwrap();
                // The dependency appears first at the top power, so the last
                // coordinate is nonzero; normalize monic.
                let inv = lead.inverse().expect("leading coefficient nonzero");
                let coeffs: Vec<Scalar> = rel.iter().map(|c| c.mul(&inv)).collect();
                return Poly::new(&self.field, coeffs);
            }
            assert!(powers.len() <= n + 1, "dependency must appear by degree n");
        }
    }

    /// Signs of the leading principal minors, via one fraction-free pass.
    /// Returns `None` if a zero pivot is hit (the form is not definite).
    pub fn leading_minor_signs(&self) -> Option<Vec<i32>> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut m: Vec<Vec<Scalar>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut prev = Scalar::one(&self.field);
        let mut signs = Vec::with_capacity(n);
        for k in 0..n {
            if m[k][k].is_zero() {
                return None;
            }
            signs.push(m[k][k].sign());
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m[i][j].mul(&m[k][k]).sub(&m[i][k].mul(&m[k][j]));
                    m[i][j] = num.div(&prev).expect("Bareiss division exact");
                }
            }
            prev = m[k][k].clone();
        }
        Some(signs)
    }

    /// Row echelon form via fraction-free elimination.
    fn echelon(&self) -> Echelon {
        // Normalized Gaussian elimination. One scalar inverse per pivot;
        // the update loops skip zero entries, which matters a lot for the
        // sparse equivariance systems.
        let mut rows: Vec<Vec<Scalar>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let mut pivots = Vec::new();
        let mut pr = 0;
        for pc in 0..self.cols {
            // Sparsest candidate row as pivot limits fill-in.
            let mut best: Option<(usize, usize)> = None;
            for r in pr..rows.len() {
                if !rows[r][pc].is_zero() {
                    let nnz = rows[r][pc..].iter().filter(|s| !s.is_zero()).count();
                    if best.is_none_or(|(_, bn)| nnz < bn) {
                        best = Some((r, nnz));
                    }
                }
            }
            let Some((r, _)) = best else { continue };
            rows.swap(pr, r);
            let inv = rows[pr][pc].inverse().expect("nonzero pivot");
            for c in pc..self.cols {
                if !rows[pr][c].is_zero() {
                    rows[pr][c] = rows[pr][c].mul(&inv);
                }
            }
            for r2 in pr + 1..rows.len() {
                if rows[r2][pc].is_zero() {
                    continue;
                }
                let factor = rows[r2][pc].clone();
                for c in pc..self.cols {
                    if !rows[pr][c].is_zero() {
                        rows[r2][c] = rows[r2][c].sub(&factor.mul(&rows[pr][c]));
                    }
                }
            }
            pivots.push(pc);
            pr += 1;
            if pr == rows.len() {
                break;
            }
        }
        rows.truncate(pr);
        Echelon { rows, pivots }
    }
}

/// Outcome of an exact linear solve.
#[derive(Clone, Debug)]
pub enum SolveOutcome {
    Solution(Vec<Scalar>),
    /// rank(M) < rank(M|b): the system has no solution.
    Inconsistent {
        rank: usize,
        augmented_rank: usize,
    },
}

impl SolveOutcome {
    pub fn solution(self) -> Option<Vec<Scalar>> {
        match self {
            SolveOutcome::Solution(v) => Some(v),
            SolveOutcome::Inconsistent { .. } => None,
        }
    }
}

struct Echelon {
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

fn vectorize(m: &ExactMatrix) -> Vec<Scalar> {
    let mut v = Vec::with_capacity(m.rows() * m.cols());
    for i in 0..m.rows() {
        v.extend(m.row(i).iter().cloned());
    }
    v
}

