use super::NumericsError;
use crate::Real;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureTolerance<T> {
    pub abs: T,
    pub rel: T,
}

impl<T: Real> Default for QuadratureTolerance<T> {
    fn default() -> Self {
        Self { abs: T::lit(1e-13), rel: T::lit(1e-12) }
    }
}

const MAX_INTERVALS: usize = 4000;

// Kronrod 15-point abscissae (positive half, descending) and weights.
const XGK: [f64; 8] = [
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144845693013,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.0,
];
const WGK: [f64; 8] = [
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
];
// Gauss 7-point weights at XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
];

struct Panel<T> {
    a: T,
    b: T,
    value: T,
    error: T,
}

fn gk15<T: Real, F: FnMut(T) -> T>(f: &mut F, a: T, b: T) -> Panel<T> {
    let half = (b - a) * T::lit(0.5);
    let mid = (a + b) * T::lit(0.5);
    let fc = f(mid);
    let mut kron = T::lit(WGK[7]) * fc;
    let mut gauss = T::lit(WG[3]) * fc;
    for j in 0..7 {
        let dx = half * T::lit(XGK[j]);
        let s = f(mid - dx) + f(mid + dx);
        kron = kron + T::lit(WGK[j]) * s;
        if j % 2 == 1 {
            gauss = gauss + T::lit(WG[j / 2]) * s;
        }
    }
    Panel { a, b, value: kron * half, error: ((kron - gauss) * half).abs() }
}

/// Globally adaptive Gauss–Kronrod (7, 15) quadrature of `f` over `[a, b]`.
///
/// The panel with the largest error estimate is bisected until the summed
/// estimate falls below `max(abs, rel·|I|)`.
pub fn adaptive_quadrature<T: Real, F: FnMut(T) -> T>(
    mut f: F,
    a: T,
    b: T,
    tol: QuadratureTolerance<T>,
) -> Result<T, NumericsError> {
    if a == b {
        return Ok(T::zero());
    }
    let mut panels = vec![gk15(&mut f, a, b)];
    loop {
        let total: T = panels.iter().map(|p| p.value).sum();
        let err: T = panels.iter().map(|p| p.error).sum();
        if !total.is_finite() || !err.is_finite() {
            return Err(NumericsError::NonFinite("adaptive_quadrature"));
        }
        if err <= tol.abs.max(tol.rel * total.abs()) {
            return Ok(total);
        }
        if panels.len() >= MAX_INTERVALS {
            return Err(NumericsError::QuadratureNotConverged {
                intervals: panels.len(),
                estimate: err.as_f64(),
            });
        }
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.partial_cmp(&y.1.error).unwrap())
            .map(|(i, _)| i)
            .unwrap();
        let p = panels.swap_remove(worst);
        let mid = (p.a + p.b) * T::lit(0.5);
        if mid <= p.a.min(p.b) || mid >= p.a.max(p.b) {
            // Panel cannot be split further in this precision.
            return Err(NumericsError::QuadratureNotConverged {
                intervals: panels.len() + 1,
                estimate: err.as_f64(),
            });
        }
        panels.push(gk15(&mut f, p.a, mid));
        panels.push(gk15(&mut f, mid, p.b));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn sine_over_half_period() {
        let v = adaptive_quadrature(f64::sin, 0.0, PI, QuadratureTolerance::default()).unwrap();
        assert!((v - 2.0).abs() < 1e-12);
    }

    #[test]
    fn reversed_limits_flip_sign() {
        let v = adaptive_quadrature(|x: f64| x * x, 1.0, 0.0, QuadratureTolerance::default()).unwrap();
        assert!((v + 1.0 / 3.0).abs() < 1e-14);
    }

    #[test]
    fn endpoint_singularity_resolved() {
        let v = adaptive_quadrature(|x: f64| 1.0 / x.sqrt(), 0.0, 1.0, QuadratureTolerance { abs: 1e-11, rel: 1e-11 })
            .unwrap();
        assert!((v - 2.0).abs() < 1e-9);
    }

    #[test]
    fn peaked_integrand() {
        let v = adaptive_quadrature(|x: f64| 1.0 / (1e-4 + x * x), -1.0, 1.0, QuadratureTolerance::default()).unwrap();
        let exact = 2.0 * (1.0f64 / 1e-2).atan() / 1e-2;
        assert!(((v - exact) / exact).abs() < 1e-11);
    }
}
