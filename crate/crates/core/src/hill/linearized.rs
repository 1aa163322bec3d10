use super::spectrum::summarize;
use super::{check_grid, spectrum, HillError, HillKind, HillOperator, SpectrumReport};
use crate::numerics::{eig_symmetric, fourier_d2, DenseMatrix, SymmetricMatrix};
use crate::waves::{Dispersion, Wave};
use crate::{periodic_grid, Real};

/// The 2×2 operator `𝓛` discretized on `n` collocation points.
#[derive(Debug, Clone)]
pub struct LinearizedOperator<T> {
    wave: Wave<T>,
    d2: DenseMatrix<T>,
    phi: Vec<T>,
    dispersion: Dispersion<T>,
    omega: T,
    big_b: T,
}

pub fn assemble_l<T: Real>(wave: &Wave<T>, n: usize) -> Result<LinearizedOperator<T>, HillError> {
    LinearizedOperator::new(wave, n)
}

impl<T: Real> LinearizedOperator<T> {
    pub fn new(wave: &Wave<T>, n: usize) -> Result<Self, HillError> {
        let d2 = fourier_d2(n, wave.period())?;
        let phi = wave.profile().sample(&periodic_grid(wave.period(), n));
        Ok(Self {
            wave: *wave,
            d2,
            phi,
            dispersion: wave.dispersion(),
            omega: wave.omega(),
            big_b: wave.big_b(),
        })
    }

    pub fn grid_size(&self) -> usize {
        self.phi.len()
    }

    pub fn wave(&self) -> &Wave<T> {
        &self.wave
    }

    fn check_len(&self, v: &[T]) -> Result<(), HillError> {
        if v.len() != self.grid_size() {
            return Err(HillError::GridMismatch { expected: self.grid_size(), got: v.len() });
        }
        Ok(())
    }

    /// Each component of `𝓛(f, g)` as a list of its separate terms.
    fn terms(&self, f: &[T], g: &[T]) -> (Vec<[T; 4]>, Vec<[T; 4]>) {
        let Dispersion { a, b, c, .. } = self.dispersion;
        let bw = b * self.omega;
        let f2 = self.d2.mul_vec(f);
        let g2 = self.d2.mul_vec(g);
        let n = self.grid_size();
        let mut first = Vec::with_capacity(n);
        let mut second = Vec::with_capacity(n);
        for i in 0..n {
            let cross = self.big_b * self.phi[i] - self.omega;
            first.push([f[i], c * f2[i], bw * g2[i], cross * g[i]]);
            second.push([bw * f2[i], cross * f[i], g[i] + a * g2[i], self.phi[i] * g[i]]);
        }
        (first, second)
    }

    pub fn apply(&self, f: &[T], g: &[T]) -> Result<(Vec<T>, Vec<T>), HillError> {
        self.check_len(f)?;
        self.check_len(g)?;
        let (t1, t2) = self.terms(f, g);
        Ok((
            t1.iter().map(|t| t.iter().copied().sum()).collect(),
            t2.iter().map(|t| t.iter().copied().sum()).collect(),
        ))
    }

    /// `(‖𝓛(φ', Bφ')‖∞, largest individual term)`.
    pub fn kernel_residual(&self) -> (T, T) {
        let prof = self.wave.profile();
        let dphi: Vec<T> = periodic_grid(self.wave.period(), self.grid_size())
            .into_iter()
            .map(|x| prof.jet(x).d1)
            .collect();
        let dpsi: Vec<T> = dphi.iter().map(|&v| self.big_b * v).collect();
        let (t1, t2) = self.terms(&dphi, &dpsi);
        let mut res = T::zero();
        let mut scale = T::zero();
        for t in t1.iter().chain(t2.iter()) {
            res = res.max(t.iter().copied().sum::<T>().abs());
            scale = t.iter().fold(scale, |m, v| m.max(v.abs()));
        }
        (res, scale)
    }

    /// Symmetric `2N × 2N` matrix acting on `(f, g)` stacked.
    pub fn matrix(&self) -> SymmetricMatrix<T> {
        let n = self.grid_size();
        let Dispersion { a, b, c, .. } = self.dispersion;
        let bw = b * self.omega;
        let half = T::lit(0.5);
        let d2s = |i: usize, j: usize| (self.d2[(i, j)] + self.d2[(j, i)]) * half;
        SymmetricMatrix::from_fn(2 * n, |i, j| {
            let (bi, ii) = (i / n, i % n);
            let (bj, jj) = (j / n, j % n);
            let d = d2s(ii, jj);
            let diag = ii == jj;
            match (bi, bj) {
                (0, 0) => c * d + if diag { T::one() } else { T::zero() },
                (1, 1) => a * d + if diag { T::one() + self.phi[ii] } else { T::zero() },
                _ => bw * d + if diag { self.big_b * self.phi[ii] - self.omega } else { T::zero() },
            }
        })
    }
}

/// Constant 2×2 matrix `X` with `𝓛 = Xᵀ diag(Lᵢ, Lⱼ) X`.
///
/// First family: `X = R S T` with
///
/// ```text
/// T = [[1, 1], [−1, 1]] / √2,   S = diag(√(b(1−ω)), √(b(1+ω)))
/// α = −√(b(1+ω)) (B − 1)(2B + ω + 3),   β = −√(b(1−ω)) (1 + B)(−2B − ω + 3)
/// R = [[α, β], [−β, α]] / √(α² + β²)
/// ```
///
/// paired with `(L1, L2)`. Second family: `X = 𝒮T` (orthogonal), paired with
/// `(L3, L4)`, where with `p = √(3 + 2√2)`, `m = √(3 − 2√2)`
/// `𝒮 = [[p, m], [−m, p]]/√6` for `B > 0` and `[[m, p], [p, −m]]/√6` for `B < 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Congruence<T> {
    pub x: [[T; 2]; 2],
    pub kinds: [HillKind; 2],
}

fn mat2<T: Real>(a: [[T; 2]; 2], b: [[T; 2]; 2]) -> [[T; 2]; 2] {
    let mut out = [[T::zero(); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

const SINGULAR_DET: f64 = 1e-12;

impl<T: Real> Congruence<T> {
    pub fn for_wave(wave: &Wave<T>) -> Result<Self, HillError> {
        let r2 = T::SQRT_2();
        let t = [[T::one() / r2, T::one() / r2], [-T::one() / r2, T::one() / r2]];
        let out = match wave {
            Wave::Case1(w) => {
                let (b, om, bb) = (w.b(), w.omega(), w.big_b());
                let sm = (b * (T::one() - om)).sqrt();
                let sp = (b * (T::one() + om)).sqrt();
                let three = T::lit(3.0);
                let two = T::lit(2.0);
                let alpha = -sp * (bb - T::one()) * (two * bb + om + three);
                let beta = -sm * (T::one() + bb) * (-two * bb - om + three);
                let nr = (alpha * alpha + beta * beta).sqrt();
                let r = [[alpha / nr, beta / nr], [-beta / nr, alpha / nr]];
                let s = [[sm, T::zero()], [T::zero(), sp]];
                Self { x: mat2(r, mat2(s, t)), kinds: [HillKind::L1, HillKind::L2] }
            }
            Wave::Case2(w) => {
                let p = (T::lit(3.0) + T::lit(2.0) * r2).sqrt();
                let m = (T::lit(3.0) - T::lit(2.0) * r2).sqrt();
                let s6 = T::lit(6.0).sqrt();
                let s = if w.big_b() > T::zero() {
                    [[p / s6, m / s6], [-m / s6, p / s6]]
                } else {
                    [[m / s6, p / s6], [p / s6, -m / s6]]
                };
                Self { x: mat2(s, t), kinds: [HillKind::L3, HillKind::L4] }
            }
        };
        let det = out.determinant();
        if !(det.abs() >= T::lit(SINGULAR_DET)) {
            return Err(HillError::SingularTransform(det.as_f64()));
        }
        Ok(out)
    }

    pub fn determinant(&self) -> T {
        self.x[0][0] * self.x[1][1] - self.x[0][1] * self.x[1][0]
    }

    /// `max |X Xᵀ − I|` entrywise.
    pub fn orthogonality_defect(&self) -> T {
        let xt = [[self.x[0][0], self.x[1][0]], [self.x[0][1], self.x[1][1]]];
        let p = mat2(self.x, xt);
        let mut d = T::zero();
        for (i, row) in p.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                let id = if i == j { T::one() } else { T::zero() };
                d = d.max((v - id).abs());
            }
        }
        d
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimilarityReport<T> {
    /// `‖𝓛f − Xᵀ diag(Lᵢ, Lⱼ) X f‖∞ / ‖f‖∞`.
    pub residual: T,
    pub determinant: T,
    /// `max |X Xᵀ − I|`; only meaningful (and only required small) for the
    /// second family, whose transform is orthogonal.
    pub orthogonality_defect: T,
}

/// Applies `𝓛` to `(f, g)` directly and through the diagonalized pair of
/// Hill operators, and compares.
pub fn similarity_check<T: Real>(wave: &Wave<T>, f: &[T], g: &[T]) -> Result<SimilarityReport<T>, HillError> {
    let n = f.len();
    let op = LinearizedOperator::new(wave, n)?;
    let (l1, l2) = op.apply(f, g)?;
    let cg = Congruence::for_wave(wave)?;
    let x = cg.x;
    let h1: Vec<T> = f.iter().zip(g).map(|(&a, &b)| x[0][0] * a + x[0][1] * b).collect();
    let h2: Vec<T> = f.iter().zip(g).map(|(&a, &b)| x[1][0] * a + x[1][1] * b).collect();
    let o1 = HillOperator::for_wave(cg.kinds[0], wave)?.matrix(n)?.mul_vec(&h1);
    let o2 = HillOperator::for_wave(cg.kinds[1], wave)?.matrix(n)?.mul_vec(&h2);
    let mut diff = T::zero();
    for i in 0..n {
        let r1 = x[0][0] * o1[i] + x[1][0] * o2[i];
        let r2 = x[0][1] * o1[i] + x[1][1] * o2[i];
        diff = diff.max((r1 - l1[i]).abs()).max((r2 - l2[i]).abs());
    }
    let norm = f.iter().chain(g).fold(T::zero(), |m, v| m.max(v.abs()));
    Ok(SimilarityReport {
        residual: if norm == T::zero() { diff } else { diff / norm },
        determinant: cg.determinant(),
        orthogonality_defect: cg.orthogonality_defect(),
    })
}

/// Inertia `(n, z)` of `𝓛` by Sylvester's law on the diagonalized pair, with
/// the direct `2N` eigenvalue count as cross-check.
#[derive(Debug, Clone, PartialEq)]
pub struct InertiaReport<T> {
    pub n: usize,
    pub z: usize,
    pub parts: [SpectrumReport<T>; 2],
    pub kinds: [HillKind; 2],
    pub direct: SpectrumReport<T>,
}

pub fn inertia_of_l<T: Real>(wave: &Wave<T>, n: usize) -> Result<InertiaReport<T>, HillError> {
    check_grid(n)?;
    let cg = Congruence::for_wave(wave)?;
    let first = spectrum(&HillOperator::for_wave(cg.kinds[0], wave)?, n)?;
    let second = spectrum(&HillOperator::for_wave(cg.kinds[1], wave)?, n)?;
    let sylvester = (first.n_count + second.n_count, first.z_count + second.z_count);

    let fine = LinearizedOperator::new(wave, n)?;
    let eig = eig_symmetric(&fine.matrix())?;
    let coarse = eig_symmetric(&LinearizedOperator::new(wave, n / 2)?.matrix())?;
    let err = eig
        .values
        .iter()
        .zip(&coarse.values)
        .take(8)
        .fold(T::zero(), |acc, (a, b)| acc.max((*a - *b).abs()));
    let tol_zero = T::lit(1e-6).max(T::lit(10.0) * err);
    let prof = wave.profile();
    let grid = periodic_grid(wave.period(), n);
    let mut mode: Vec<T> = grid.iter().map(|&x| prof.jet(x).d1).collect();
    let tail: Vec<T> = mode.iter().map(|&v| wave.big_b() * v).collect();
    mode.extend(tail);
    let direct = summarize(&eig, &mode, tol_zero, 8, err, n);
    let direct_counts = (direct.n_count, direct.z_count);
    if direct_counts != sylvester {
        return Err(HillError::InertiaMismatch { sylvester, direct: direct_counts });
    }
    Ok(InertiaReport { n: sylvester.0, z: sylvester.1, parts: [first, second], kinds: cg.kinds, direct })
}
