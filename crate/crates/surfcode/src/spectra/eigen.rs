//! Restarted block Lanczos with full reorthogonalization.
//!
//! Each cycle grows an orthonormal Krylov basis from the current block of
//! Ritz vectors, one new direction per operator application, then performs a
//! Rayleigh–Ritz step on the projected Hermitian matrix. The start block is
//! wider than the number of wanted pairs so exactly degenerate levels are
//! resolved.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::hamiltonian::LinearOperator;
use super::SpectraError;

type Vector = Vec<Complex64>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EigenOptions {
    /// Residual tolerance relative to the operator norm bound.
    pub tol: f64,
    pub seed: u64,
    /// Largest Krylov basis per cycle; 0 picks one from the dimension.
    pub max_basis: usize,
    pub max_restarts: usize,
    /// Extra start vectors beyond the number of wanted pairs.
    pub extra_block: usize,
}

impl Default for EigenOptions {
    fn default() -> Self {
        EigenOptions {
            tol: 1e-10,
            seed: 7,
            max_basis: 0,
            max_restarts: 200,
            extra_block: 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Vec<Vector>,
    pub residuals: Vec<f64>,
}

impl Spectrum {
    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }
}

fn dot(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn norm(a: &[Complex64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

fn axpy(alpha: Complex64, x: &[Complex64], y: &mut [Complex64]) {
    y.iter_mut().zip(x).for_each(|(y, x)| *y += alpha * x);
}

fn scale(v: &mut [Complex64], s: f64) {
    v.iter_mut().for_each(|x| *x *= s);
}

/// Removes the components of `w` along `basis` twice; returns the total
/// coefficients.
fn project_out(basis: &[Vector], w: &mut [Complex64]) -> Vec<Complex64> {
    let mut coeffs = vec![Complex64::new(0.0, 0.0); basis.len()];
    for _ in 0..2 {
        for (q, c) in basis.iter().zip(coeffs.iter_mut()) {
            let d = dot(q, w);
            axpy(-d, q, w);
            *c += d;
        }
    }
    coeffs
}

fn random_block(dim: usize, count: usize, seed: u64) -> Vec<Vector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<Vector> = Vec::with_capacity(count);
    while out.len() < count {
        let mut v: Vector = (0..dim)
            .map(|_| Complex64::new(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5))
            .collect();
        project_out(&out, &mut v);
        let n = norm(&v);
        if n > 1e-8 {
            scale(&mut v, 1.0 / n);
            out.push(v);
        }
    }
    out
}

fn dense_matrix<O: LinearOperator>(op: &O) -> DMatrix<Complex64> {
    let dim = op.dim();
    let mut m = DMatrix::zeros(dim, dim);
    let mut e = vec![Complex64::new(0.0, 0.0); dim];
    let mut col = vec![Complex64::new(0.0, 0.0); dim];
    for j in 0..dim {
        e[j] = Complex64::new(1.0, 0.0);
        op.apply(&e, &mut col);
        for (i, c) in col.iter().enumerate() {
            m[(i, j)] = *c;
        }
        e[j] = Complex64::new(0.0, 0.0);
    }
    m
}

fn sorted_eigen(t: DMatrix<Complex64>) -> (Vec<f64>, DMatrix<Complex64>) {
    let eig = SymmetricEigen::new(t);
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(eig.eigenvectors.nrows(), order.len(), |r, c| {
        eig.eigenvectors[(r, order[c])]
    });
    (values, vectors)
}

const DENSE_LIMIT: usize = 512;

/// The `k` lowest eigenpairs of a Hermitian operator.
pub fn lowest_eigs<O: LinearOperator>(
    op: &O,
    k: usize,
    opts: &EigenOptions,
) -> Result<Spectrum, SpectraError> {
    let dim = op.dim();
    if k == 0 || k > dim {
        return Err(SpectraError::BadCount { k, dim });
    }
    let h_norm = op.norm_bound().max(f64::MIN_POSITIVE);
    let target = opts.tol * h_norm;

    if dim <= DENSE_LIMIT {
        let (values, vectors) = sorted_eigen(dense_matrix(op));
        let eigenvectors: Vec<Vector> = (0..k)
            .map(|c| vectors.column(c).iter().copied().collect())
            .collect();
        let residuals = residuals(op, &values[..k], &eigenvectors);
        return Ok(Spectrum {
            eigenvalues: values[..k].to_vec(),
            eigenvectors,
            residuals,
        });
    }

    let block = (k + opts.extra_block).min(dim);
    let max_basis = if opts.max_basis > 0 {
        opts.max_basis.max(block + 1).min(dim)
    } else {
        // keep the basis under roughly 1 GiB
        let budget = (1usize << 30) / (16 * dim);
        (4 * block).max(budget.min(64)).max(block + 1).min(dim)
    };

    let mut x = random_block(dim, block, opts.seed);
    let mut hx: Option<Vec<Vector>> = None;
    let mut last_residuals = Vec::new();
    for _ in 0..opts.max_restarts {
        let mut q: Vec<Vector> = x;
        let mut known_h = hx.take();
        // t[(i, j)] = <q_i | H q_j> for i < len_at[j]
        let mut t = DMatrix::<Complex64>::zeros(max_basis, max_basis);
        let mut len_at = Vec::with_capacity(max_basis);
        let mut w = vec![Complex64::new(0.0, 0.0); dim];
        let mut j = 0;
        while j < q.len() {
            match known_h.as_mut().and_then(|h| h.get_mut(j)) {
                Some(hv) => std::mem::swap(&mut w, hv),
                None => op.apply(&q[j], &mut w),
            }
            let coeffs = project_out(&q, &mut w);
            for (i, c) in coeffs.into_iter().enumerate() {
                t[(i, j)] = c;
            }
            len_at.push(q.len());
            if q.len() < max_basis {
                let n = norm(&w);
                if n > 1e-13 * h_norm {
                    t[(q.len(), j)] = Complex64::new(n, 0.0);
                    len_at[j] += 1;
                    let mut v = w.clone();
                    scale(&mut v, 1.0 / n);
                    q.push(v);
                }
            }
            j += 1;
        }
        let m = q.len();
        let mut proj = DMatrix::<Complex64>::zeros(m, m);
        for jj in 0..m {
            for i in 0..m {
                proj[(i, jj)] = if i < len_at[jj] {
                    t[(i, jj)]
                } else {
                    t[(jj, i)].conj()
                };
            }
        }
        let herm = (&proj + proj.adjoint()) * Complex64::new(0.5, 0.0);
        let (theta, y) = sorted_eigen(herm);
        let keep = block.min(m);

        let mut ritz: Vec<Vector> = Vec::with_capacity(keep);
        for c in 0..keep {
            let mut v = vec![Complex64::new(0.0, 0.0); dim];
            for (i, qi) in q.iter().enumerate() {
                axpy(y[(i, c)], qi, &mut v);
            }
            ritz.push(v);
        }
        drop(q);
        let mut h_ritz = Vec::with_capacity(keep);
        let mut res = Vec::with_capacity(keep);
        for (c, v) in ritz.iter().enumerate() {
            let mut hv = vec![Complex64::new(0.0, 0.0); dim];
            op.apply(v, &mut hv);
            let r: f64 = hv
                .iter()
                .zip(v)
                .map(|(a, b)| (a - b * theta[c]).norm_sqr())
                .sum::<f64>()
                .sqrt();
            res.push(r);
            h_ritz.push(hv);
        }
        if keep >= k && res[..k].iter().all(|&r| r <= target) {
            return Ok(Spectrum {
                eigenvalues: theta[..k].to_vec(),
                eigenvectors: ritz.into_iter().take(k).collect(),
                residuals: res[..k].to_vec(),
            });
        }
        last_residuals = res;
        x = ritz;
        hx = Some(h_ritz);
    }
    Err(SpectraError::NotConverged {
        residuals: last_residuals,
    })
}

fn residuals<O: LinearOperator>(op: &O, values: &[f64], vectors: &[Vector]) -> Vec<f64> {
    let mut hv = vec![Complex64::new(0.0, 0.0); op.dim()];
    values
        .iter()
        .zip(vectors)
        .map(|(&l, v)| {
            op.apply(v, &mut hv);
            hv.iter()
                .zip(v)
                .map(|(a, b)| (a - b * l).norm_sqr())
                .sum::<f64>()
                .sqrt()
        })
        .collect()
}
