//! Floating-point Euler–Arnold cross-check. The body-velocity form of the
//! geodesic equation for a left-invariant metric is dV/dt = Λ⁻¹[ΛV, V];
//! when the witness identity holds at X with witness W, the solution is the
//! one-parameter orbit V(t) = exp(t·ad_W)(X). Everything here is double
//! precision and purely diagnostic — it never feeds back into a certificate.

use crate::exactmath::ExactMatrix;
use crate::gomet::{go_solve, GoSolveOutcome, MetricEndomorphism};
use crate::liecore::{Algebra, Element};
use crate::subalg::Subalgebra;

type Mat = Vec<Vec<f64>>;

/// The √d constants are rounded exactly once, here.
pub fn embed_matrix(m: &ExactMatrix) -> Mat {
    (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| m.at(i, j).to_f64()).collect())
        .collect()
}

fn mat_vec(m: &Mat, v: &[f64]) -> Vec<f64> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let mut out = vec![vec![0.0; n]; n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i][k];
            if aik == 0.0 {
                continue;
            }
            for j in 0..n {
                out[i][j] += aik * b[k][j];
            }
        }
    }
    out
}

fn lu_solve(a: &Mat, b: &[f64]) -> Vec<f64> {
    let n = a.len();
    let mut m: Mat = a.clone();
    let mut x = b.to_vec();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| m[i][col].abs().total_cmp(&m[j][col].abs()))
            .unwrap();
        m.swap(col, piv);
        x.swap(col, piv);
        let d = m[col][col];
        assert!(d.abs() > 1e-300, "metric endomorphism must be invertible");
        for i in col + 1..n {
            let f = m[i][col] / d;
            if f == 0.0 {
                continue;
            }
            for j in col..n {
                m[i][j] -= f * m[col][j];
            }
            x[i] -= f * x[col];
        }
    }
    for col in (0..n).rev() {
        x[col] /= m[col][col];
        for i in 0..col {
            x[i] -= m[i][col] * x[col];
        }
    }
    x
}

/// exp(M) by scaling-and-squaring on top of the Taylor series.
fn mat_exp(m: &Mat) -> Mat {
    let n = m.len();
    let norm: f64 = m
        .iter()
        .map(|row| row.iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max);
    let squarings = if norm > 0.5 { (norm / 0.5).log2().ceil() as u32 } else { 0 };
    let scale = 0.5f64.powi(squarings as i32);
    let scaled: Mat = m.iter().map(|row| row.iter().map(|x| x * scale).collect()).collect();
    let mut result: Mat = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();
    let mut term = result.clone();
    for k in 1..=20 {
        term = mat_mul(&term, &scaled);
        let kf = k as f64;
        for i in 0..n {
            for j in 0..n {
                term[i][j] /= kf;
                result[i][j] += term[i][j];
            }
        }
    }
    for _ in 0..squarings {
        result = mat_mul(&result, &result);
    }
    result
}

/// ad_W as a dense float matrix.
fn ad_matrix(alg: &Algebra, w: &Element) -> Mat {
    let n = alg.dim();
    let mut out = vec![vec![0.0; n]; n];
    for j in 0..n {
        let col = w.bracket(&Element::basis(alg, j));
        for (i, c) in col.coords.iter().enumerate() {
            out[i][j] = c.to_f64();
        }
    }
    out
}

pub struct EulerArnoldResult {
    /// max over sample times of the max coordinate gap between the
    /// integrated V(t) and exp(t·ad_W)(X).
    pub max_deviation: f64,
    /// relative drift of the conserved energy ⟨V, ΛV⟩ = −B(V, ΛV).
    pub energy_drift: f64,
}

/// Integrates dV/dt = Λ⁻¹[ΛV, V] from V(0) = X with classical RK4 and
/// compares against the orbit exp(t·ad_W)(X) for the supplied W.
pub fn euler_arnold_deviation(
    metric: &MetricEndomorphism,
    w: &Element,
    x: &Element,
    horizon: f64,
    dt: f64,
) -> Result<EulerArnoldResult, String> {
    if !(dt > 0.0 && horizon > 0.0 && dt <= horizon) {
        return Err(format!("invalid step/horizon: dt = {dt}, T = {horizon}"));
    }
    let alg = &metric.alg;
    let n = alg.dim();
    let lambda = embed_matrix(&metric.matrix);
    let killing = embed_matrix(alg.killing());
    // Dense structure constants: c[i][j] = [e_i, e_j] coordinates.
    let mut c = vec![vec![vec![0.0; n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            for (k, s) in alg.bracket_basis(i, j).iter().enumerate() {
                c[i][j][k] = s.to_f64();
            }
        }
    }
    let bracket = |a: &[f64], b: &[f64]| -> Vec<f64> {
        let mut out = vec![0.0; n];
        for i in 0..n {
            if a[i] == 0.0 {
                continue;
            }
            for j in 0..n {
                if b[j] == 0.0 {
                    continue;
                }
                let f = a[i] * b[j];
                for k in 0..n {
                    out[k] += f * c[i][j][k];
                }
            }
        }
        out
    };
    let rhs = |v: &[f64]| -> Vec<f64> {
        let lv = mat_vec(&lambda, v);
        lu_solve(&lambda, &bracket(&lv, v))
    };
    let energy = |v: &[f64]| -> f64 {
        let lv = mat_vec(&lambda, v);
        let blv = mat_vec(&killing, &lv);
        -v.iter().zip(&blv).map(|(a, b)| a * b).sum::<f64>()
    };

    let x0: Vec<f64> = x.coords.iter().map(|s| s.to_f64()).collect();
    let mut adw = ad_matrix(alg, w);
    for row in &mut adw {
        for e in row {
            *e *= dt;
        }
    }
    let step_flow = mat_exp(&adw);

    let steps = (horizon / dt).round() as usize;
    let mut v = x0.clone();
    let mut orbit = x0.clone();
    let e0 = energy(&x0);
    let mut max_deviation: f64 = 0.0;
    let mut energy_drift: f64 = 0.0;
    for _ in 0..steps {
        let k1 = rhs(&v);
        let vk = |k: &[f64], h: f64| -> Vec<f64> {
            v.iter().zip(k).map(|(a, b)| a + h * b).collect()
        };
        let k2 = rhs(&vk(&k1, dt / 2.0));
        let k3 = rhs(&vk(&k2, dt / 2.0));
        let k4 = rhs(&vk(&k3, dt));
        for i in 0..n {
            v[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        orbit = mat_vec(&step_flow, &orbit);
        let dev = v
            .iter()
            .zip(&orbit)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max);
        max_deviation = max_deviation.max(dev);
        if e0.abs() > 0.0 {
            energy_drift = energy_drift.max(((energy(&v) - e0) / e0).abs());
        }
    }
    Ok(EulerArnoldResult { max_deviation, energy_drift })
}

/// Solves for the witness W at X first (exactly), then measures the float
/// deviation. Errors when X admits no witness — then there is no orbit to
/// compare against and the caller should use `euler_arnold_deviation` with
/// an explicit W instead.
pub fn euler_arnold_check(
    metric: &MetricEndomorphism,
    h: &Subalgebra,
    x: &Element,
    horizon: f64,
    dt: f64,
) -> Result<EulerArnoldResult, String> {
    match go_solve(metric, h, x) {
        GoSolveOutcome::Witness(w) => euler_arnold_deviation(metric, &w, x, horizon, dt),
        GoSolveOutcome::Inconsistent { rank, augmented_rank } => Err(format!(
            "no geodesic witness at X: rank {rank} < augmented rank {augmented_rank}"
        )),
    }
}
