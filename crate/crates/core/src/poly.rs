//! Dense real polynomials and their roots.

use std::fmt;
use std::ops::{Add, Mul};

use nalgebra::{Complex, DMatrix};

/// Coefficients in ascending order of degree.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly(pub Vec<f64>);

/// A root together with its multiplicity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Root {
    pub value: Complex<f64>,
    pub multiplicity: usize,
}

impl Root {
    pub fn is_real(&self, imag_tol: f64) -> bool {
        self.value.im.abs() < imag_tol
    }
}

/// Successive tolerances for grouping nearby computed roots; a group is kept
/// only if its centroid passes the multiple-root test below.
const GROUPING_RADII: [f64; 4] = [1e-2, 1e-4, 1e-6, 1e-9];
/// Relative size of the low Taylor coefficients at an accepted multiple root.
const MULTIPLE_ROOT_TOL: f64 = 1e-9;

impl Poly {
    pub fn constant(c: f64) -> Self {
        Poly(vec![c])
    }

    /// `a + b d`.
    pub fn linear(a: f64, b: f64) -> Self {
        Poly(vec![a, b])
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.0
    }

    /// Degree after dropping zero leading coefficients; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.0.iter().rposition(|&c| c != 0.0)
    }

    pub fn leading(&self) -> f64 {
        self.degree().map_or(0.0, |d| self.0[d])
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn eval_complex(&self, z: Complex<f64>) -> Complex<f64> {
        self.0
            .iter()
            .rev()
            .fold(Complex::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    pub fn derivative(&self) -> Self {
        if self.0.len() <= 1 {
            return Poly(vec![0.0]);
        }
        Poly(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &c)| i as f64 * c)
                .collect(),
        )
    }

    /// Taylor coefficients `p^(i)(z) / i!` at `z`, by repeated synthetic
    /// division.
    fn taylor_at(&self, z: Complex<f64>) -> Vec<Complex<f64>> {
        let mut work: Vec<Complex<f64>> = self.0.iter().map(|&c| Complex::new(c, 0.0)).collect();
        let n = work.len();
        let mut out = Vec::with_capacity(n);
        for len in (1..=n).rev() {
            for i in (0..len - 1).rev() {
                let carry = work[i + 1] * z;
                work[i] += carry;
            }
            out.push(work[0]);
            work.remove(0);
        }
        out
    }

    /// Roots with multiplicities.
    ///
    /// Computed as eigenvalues of the companion matrix. Multiple roots come
    /// out of that step as tight clusters; a cluster of `m` computed roots is
    /// merged into one root of multiplicity `m` when the first `m` Taylor
    /// coefficients at its centroid are negligible, and otherwise split at
    /// the next smaller grouping radius.
    pub fn roots(&self) -> Vec<Root> {
        let Some(deg) = self.degree() else {
            return Vec::new();
        };
        let zeros_at_origin = self.0.iter().position(|&c| c != 0.0).unwrap();
        let reduced = Poly(self.0[zeros_at_origin..=deg].to_vec());
        let mut out = Vec::new();
        if zeros_at_origin > 0 {
            out.push(Root {
                value: Complex::new(0.0, 0.0),
                multiplicity: zeros_at_origin,
            });
        }
        let n = deg - zeros_at_origin;
        if n > 0 {
            let lead = reduced.0[n];
            let mut companion = DMatrix::<f64>::zeros(n, n);
            for i in 1..n {
                companion[(i, i - 1)] = 1.0;
            }
            for i in 0..n {
                companion[(i, n - 1)] = -reduced.0[i] / lead;
            }
            let mut raw: Vec<Complex<f64>> =
                companion.complex_eigenvalues().iter().copied().collect();
            raw.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
            reduced.group(&raw, 0, &mut out);
        }
        out.sort_by(|a, b| {
            a.value
                .re
                .total_cmp(&b.value.re)
                .then(a.value.im.total_cmp(&b.value.im))
        });
        out
    }

    fn group(&self, raw: &[Complex<f64>], level: usize, out: &mut Vec<Root>) {
        let radius = GROUPING_RADII[level];
        for cluster in single_linkage(raw, radius) {
            let m = cluster.len();
            let centroid = cluster.iter().sum::<Complex<f64>>() / m as f64;
            let last_level = level + 1 == GROUPING_RADII.len();
            if m == 1 || last_level || self.is_multiple_root(centroid, m) {
                out.push(Root {
                    value: self.polish(centroid, m),
                    multiplicity: m,
                });
            } else {
                self.group(&cluster, level + 1, out);
            }
        }
    }

    fn is_multiple_root(&self, z: Complex<f64>, m: usize) -> bool {
        let rho = z.norm().max(1.0);
        let taylor: Vec<f64> = self
            .taylor_at(z)
            .iter()
            .enumerate()
            .map(|(i, t)| t.norm() * rho.powi(i as i32))
            .collect();
        let scale: f64 = taylor.iter().sum();
        taylor[..m].iter().all(|&t| t <= MULTIPLE_ROOT_TOL * scale)
    }

    /// Newton steps on `p^(m-1)`, kept only while they reduce its modulus.
    fn polish(&self, mut z: Complex<f64>, m: usize) -> Complex<f64> {
        let mut f = self.clone();
        for _ in 1..m {
            f = f.derivative();
        }
        let df = f.derivative();
        let mut best = f.eval_complex(z).norm();
        for _ in 0..8 {
            let d = df.eval_complex(z);
            if d.norm() == 0.0 || best == 0.0 {
                break;
            }
            let next = z - f.eval_complex(z) / d;
            let val = f.eval_complex(next).norm();
            if val < best {
                z = next;
                best = val;
            } else {
                break;
            }
        }
        if z.im.abs() < 1e-12 * z.re.abs().max(1.0) {
            z.im = 0.0;
        }
        z
    }
}

fn single_linkage(sorted: &[Complex<f64>], radius: f64) -> Vec<Vec<Complex<f64>>> {
    let mut clusters: Vec<Vec<Complex<f64>>> = Vec::new();
    for &z in sorted {
        let tol = radius * z.norm().max(1.0);
        match clusters
            .iter_mut()
            .find(|c| c.iter().any(|w| (w - z).norm() <= tol))
        {
            Some(c) => c.push(z),
            None => clusters.push(vec![z]),
        }
    }
    clusters
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        let n = self.0.len().max(rhs.0.len());
        Poly(
            (0..n)
                .map(|i| self.0.get(i).unwrap_or(&0.0) + rhs.0.get(i).unwrap_or(&0.0))
                .collect(),
        )
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = vec![0.0; self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly(out)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.0.iter().enumerate().rev() {
            if c == 0.0 && !(first && i == 0) {
                continue;
            }
            let (sign, mag) = if c < 0.0 { ("-", -c) } else { ("+", c) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            match i {
                0 => write!(f, "{mag}")?,
                1 => write!(f, "{mag}*d")?,
                _ => write!(f, "{mag}*d^{i}")?,
            }
            first = false;
        }
        Ok(())
    }
}
