//! Symmetric eigenvalue kernels used throughout the workspace.
//!
//! Everything here operates on real symmetric matrices, which is all the
//! physics in this project produces: Hill matrices and charge-basis
//! Hamiltonians are symmetric tridiagonal, and the qubit-resonator product
//! Hamiltonian is dense symmetric. Three classic kernels cover those needs:
//!
//! - implicit-shift QL iteration for the full spectrum of a symmetric
//!   tridiagonal matrix (eigenvalues only),
//! - Sturm-sequence bisection for the lowest k eigenvalues, used by sweeps
//!   that only need a few low-lying levels and as an independent cross-check
//!   on the QL path,
//! - Householder reduction of a dense symmetric matrix to tridiagonal form,
//!   after which the QL kernel finishes the job.

use crate::error::MathieuError;

/// Symmetric tridiagonal matrix: `diag` of length n, `off` of length n-1.
#[derive(Debug, Clone, PartialEq)]
pub struct SymTridiagonal {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
}

impl SymTridiagonal {
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Result<Self, MathieuError> {
        if diag.is_empty() {
            return Err(MathieuError::InvalidField {
                field: "diag",
                reason: "matrix dimension must be at least 1".into(),
            });
        }
        if off.len() + 1 != diag.len() {
            return Err(MathieuError::InvalidField {
                field: "off",
                reason: format!(
                    "off-diagonal length {} does not match dimension {}",
                    off.len(),
                    diag.len()
                ),
            });
        }
        if diag.iter().chain(off.iter()).any(|x| !x.is_finite()) {
            return Err(MathieuError::InvalidField {
                field: "diag/off",
                reason: "matrix entries must be finite".into(),
            });
        }
        Ok(Self { diag, off })
    }

    pub fn dim(&self) -> usize {
        self.diag.len()
    }

    /// Full spectrum, ascending. Implicit-shift QL.
    pub fn eigenvalues(&self) -> Result<Vec<f64>, MathieuError> {
        let mut d = self.diag.clone();
        // The QL recurrence wants a trailing zero in the off-diagonal slot.
        let mut e = self.off.clone();
        e.push(0.0);
        ql_implicit(&mut d, &mut e)?;
        d.sort_by(|a, b| a.partial_cmp(b).expect("QL output is finite"));
        Ok(d)
    }

    /// Lowest `k` eigenvalues, ascending, by Sturm-sequence bisection.
    pub fn lowest_eigenvalues(&self, k: usize) -> Result<Vec<f64>, MathieuError> {
        let n = self.dim();
        if k == 0 || k > n {
            return Err(MathieuError::InvalidField {
                field: "k",
                reason: format!("must satisfy 1 <= k <= {n}, got {k}"),
            });
        }
        // Gershgorin bounds enclose the whole spectrum.
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let left = if i > 0 { self.off[i - 1].abs() } else { 0.0 };
            let right = if i + 1 < n { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - left - right);
            hi = hi.max(self.diag[i] + left + right);
        }
        let scale = hi.abs().max(lo.abs()).max(1.0);
        let mut out = Vec::with_capacity(k);
        for idx in 0..k {
            let mut a = lo;
            let mut b = hi;
            // 100 halvings of the Gershgorin interval reach f64 resolution.
            for _ in 0..100 {
                let mid = 0.5 * (a + b);
                if self.count_below(mid) > idx {
                    b = mid;
                } else {
                    a = mid;
                }
                if b - a <= f64::EPSILON * scale {
                    break;
                }
            }
            out.push(0.5 * (a + b));
        }
        Ok(out)
    }

    /// Number of eigenvalues strictly below `x` (Sturm count via LDL^T).
    fn count_below(&self, x: f64) -> usize {
        let n = self.dim();
        let tiny = f64::MIN_POSITIVE / f64::EPSILON;
        let mut count = 0;
        let mut d = self.diag[0] - x;
        if d < 0.0 {
            count += 1;
        }
        for i in 1..n {
            if d.abs() < tiny {
                d = -tiny;
            }
            d = self.diag[i] - x - self.off[i - 1] * self.off[i - 1] / d;
            if d < 0.0 {
                count += 1;
            }
        }
        count
    }
}

/// Dense symmetric matrix stored row-major; only used for moderate dimensions
/// (product-basis Hamiltonians), so O(n^3) reduction is fine.
#[derive(Debug, Clone)]
pub struct DenseSym {
    n: usize,
    data: Vec<f64>,
}

impl DenseSym {
    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            data: vec![0.0; n * n],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
        self.data[j * self.n + i] = v;
    }

    pub fn add(&mut self, i: usize, j: usize, v: f64) {
        self.set(i, j, self.get(i, j) + v);
    }

    /// Full spectrum, ascending: Householder reduction to tridiagonal form
    /// followed by implicit-shift QL.
    pub fn eigenvalues(&self) -> Result<Vec<f64>, MathieuError> {
        let (d, e) = self.tridiagonalize();
        SymTridiagonal::new(d, e)?.eigenvalues()
    }

    /// Householder reduction, eigenvalues-only variant (no transform
    /// accumulation). Returns (diagonal, off-diagonal).
    fn tridiagonalize(&self) -> (Vec<f64>, Vec<f64>) {
        let n = self.n;
        let mut a = self.data.clone();
        let mut d = vec![0.0; n];
        let mut e = vec![0.0; n];
        let at = |a: &[f64], i: usize, j: usize| a[i * n + j];

        for i in (1..n).rev() {
            let l = i; // row i has l = i entries to the left of the diagonal
            let mut h = 0.0;
            if l > 1 {
                let mut scale = 0.0;
                for k in 0..l {
                    scale += at(&a, i, k).abs();
                }
                if scale == 0.0 {
                    e[i] = at(&a, i, l - 1);
                } else {
                    for k in 0..l {
                        a[i * n + k] /= scale;
                        h += at(&a, i, k) * at(&a, i, k);
                    }
                    let f = at(&a, i, l - 1);
                    let g = if f >= 0.0 { -h.sqrt() } else { h.sqrt() };
                    e[i] = scale * g;
                    h -= f * g;
                    a[i * n + (l - 1)] = f - g;
                    let mut f_acc = 0.0;
                    for j in 0..l {
                        // Form an element of A*u in g.
                        let mut g = 0.0;
                        for k in 0..=j {
                            g += at(&a, j, k) * at(&a, i, k);
                        }
                        for k in (j + 1)..l {
                            g += at(&a, k, j) * at(&a, i, k);
                        }
                        e[j] = g / h;
                        f_acc += e[j] * at(&a, i, j);
                    }
                    let hh = f_acc / (h + h);
                    for j in 0..l {
                        let f = at(&a, i, j);
                        let g = e[j] - hh * f;
                        e[j] = g;
                        for k in 0..=j {
                            a[j * n + k] -= f * e[k] + g * at(&a, i, k);
                        }
                    }
                }
            } else {
                e[i] = at(&a, i, l - 1);
            }
            d[i] = h;
        }

        for i in 0..n {
            d[i] = at(&a, i, i);
        }
        // e[0] is unused; shift into the (n-1)-length convention.
        let off = e[1..].to_vec();
        (d, off)
    }
}

/// Implicit-shift QL on (d, e) where e has length n with a trailing zero.
/// On success d holds eigenvalues (unsorted).
fn ql_implicit(d: &mut [f64], e: &mut [f64]) -> Result<(), MathieuError> {
    let n = d.len();
    if n == 1 {
        return Ok(());
    }
    for l in 0..n {
        let mut iter = 0;
        'sweeps: loop {
            // Find the first negligible off-diagonal element at or after l.
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 50 {
                return Err(MathieuError::EigenNonConvergence {
                    index: l,
                    iterations: iter,
                });
            }
            // Wilkinson shift from the leading 2x2 of the active block.
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c) = (1.0, 1.0);
            let mut p = 0.0;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    // Rotation underflow: drop the shift correction for this
                    // sweep and restart with the deflated block.
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    continue 'sweeps;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}
