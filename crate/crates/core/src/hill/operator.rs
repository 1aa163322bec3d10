use super::HillError;
use crate::numerics::{fourier_d2, SymmetricMatrix};
use crate::waves::{CnoidalWave, Wave};
use crate::{periodic_grid, Real};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HillKind {
    L1,
    L2,
    L3,
    L4,
}

impl HillKind {
    pub fn as_str(self) -> &'static str {
        match self {
            HillKind::L1 => "L1",
            HillKind::L2 => "L2",
            HillKind::L3 => "L3",
            HillKind::L4 => "L4",
        }
    }
}

impl std::fmt::Display for HillKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `−p ∂ₓ² + q0 + q1 φ(x)` on the period of `φ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HillOperator<T> {
    kind: Option<HillKind>,
    p: T,
    q0: T,
    q1: T,
    profile: CnoidalWave<T>,
}

impl<T: Real> HillOperator<T> {
    pub fn new(p: T, q0: T, q1: T, profile: CnoidalWave<T>) -> Self {
        Self { kind: None, p, q0, q1, profile }
    }

    /// One of `L1..L4` for the given wave:
    ///
    /// ```text
    /// L1 = −∂² + 1/b + ℓ1 φ,   ℓ1 = (4 + 2Bω) / (2b(1 − ω²))
    /// L2 = −∂² + 1/b + ℓ2 φ,   ℓ2 = (−2 + 2Bω) / (2b(1 − ω²))
    /// L3 = a∂² + 1 + 2φ
    /// L4 = a∂² + 1 − φ
    /// ```
    pub fn for_wave(kind: HillKind, wave: &Wave<T>) -> Result<Self, HillError> {
        let profile = wave.profile();
        let two = T::lit(2.0);
        let op = match (kind, wave) {
            (HillKind::L1 | HillKind::L2, Wave::Case1(w)) => {
                let (b, om, bb) = (w.b(), w.omega(), w.big_b());
                let denom = two * b * (T::one() - om * om);
                let lead = if kind == HillKind::L1 { T::lit(4.0) } else { -two };
                Self::new(T::one(), T::one() / b, (lead + two * bb * om) / denom, profile)
            }
            (HillKind::L3, Wave::Case2(w)) => Self::new(-w.a(), T::one(), two, profile),
            (HillKind::L4, Wave::Case2(w)) => Self::new(-w.a(), T::one(), -T::one(), profile),
            _ => return Err(HillError::WrongFamily { kind: kind.as_str(), case: wave.case_number() }),
        };
        Ok(Self { kind: Some(kind), ..op })
    }

    pub fn kind(&self) -> Option<HillKind> {
        self.kind
    }
    pub fn p(&self) -> T {
        self.p
    }
    pub fn q0(&self) -> T {
        self.q0
    }
    pub fn q1(&self) -> T {
        self.q1
    }
    pub fn profile(&self) -> &CnoidalWave<T> {
        &self.profile
    }
    pub fn period(&self) -> T {
        self.profile.period()
    }

    pub fn potential(&self, x: T) -> T {
        self.q0 + self.q1 * self.profile.phi(x)
    }

    /// `−p·D2 + diag(q(x_j))` on `n` collocation points, symmetrized.
    pub fn matrix(&self, n: usize) -> Result<SymmetricMatrix<T>, HillError> {
        let d2 = fourier_d2(n, self.period())?;
        let q: Vec<T> = periodic_grid(self.period(), n).into_iter().map(|x| self.potential(x)).collect();
        let half = T::lit(0.5);
        Ok(SymmetricMatrix::from_fn(n, |i, j| {
            let off = -self.p * (d2[(i, j)] + d2[(j, i)]) * half;
            if i == j {
                off + q[i]
            } else {
                off
            }
        }))
    }

    /// `(‖−p φ''' + q φ'‖∞, scale)` on an `n`-point grid, the scale being the
    /// larger of the two terms.
    pub fn kernel_residual(&self, wave: &CnoidalWave<T>, n: usize) -> (T, T) {
        let mut res = T::zero();
        let mut scale = T::zero();
        for x in periodic_grid(wave.period(), n) {
            let j = wave.jet(x);
            let a = -self.p * j.d3;
            let b = self.potential(x) * j.d1;
            res = res.max((a + b).abs());
            scale = scale.max(a.abs()).max(b.abs());
        }
        (res, scale)
    }
}
