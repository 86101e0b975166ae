//! Sphere integrals of the transverse projector against a plane wave.

use std::f64::consts::PI;

use nalgebra::{Matrix3, Vector3};

use crate::error::{Error, Result};

/// Below this |s| the profiles are summed from their Taylor series, which
/// avoids the s⁻³ cancellation in ĝ″.
const SERIES_LIMIT: f64 = 1.0;

/// ĝ(s) = sin s / s and its second derivative.
pub fn sinc_and_second_derivative(s: f64) -> (f64, f64) {
    if s.abs() < SERIES_LIMIT {
        // ĝ = Σ (−1)ⁿ s²ⁿ/(2n+1)!,  ĝ″ = Σ_{n≥1} (−1)ⁿ 2n(2n−1) s²ⁿ⁻²/(2n+1)!
        let s2 = s * s;
        let mut g = 1.0;
        let mut g2 = 0.0;
        // c = (−1)ⁿ s²ⁿ⁻²/(2n+1)!
        let mut c = -1.0 / 6.0;
        for n in 1..14 {
            let m = 2.0 * n as f64;
            if n > 1 {
                c *= -s2 / (m * (m + 1.0));
            }
            g += c * s2;
            g2 += c * m * (m - 1.0);
        }
        (g, g2)
    } else {
        let (sn, cs) = s.sin_cos();
        let g = sn / s;
        let g2 = 2.0 * sn / (s * s * s) - 2.0 * cs / (s * s) - sn / s;
        (g, g2)
    }
}

/// (b1, b3) with b1 = ĝ − ĝ″ and b3 = 2(ĝ + ĝ″).
pub fn g_profiles(s: f64) -> (f64, f64) {
    let (g, g2) = sinc_and_second_derivative(s);
    (g - g2, 2.0 * (g + g2))
}

/// Symmetric 3×3 matrix arising from transverse angular integrals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransverseMatrix(pub Matrix3<f64>);

impl TransverseMatrix {
    pub fn isotropic(value: f64) -> Self {
        Self(Matrix3::identity() * value)
    }

    /// perp·(1 − ââᵀ) + par·ââᵀ for a unit vector â.
    pub fn axial(axis: &Vector3<f64>, perp: f64, par: f64) -> Self {
        let p = axis * axis.transpose();
        Self(Matrix3::identity() * perp + p * (par - perp))
    }

    pub fn matrix(&self) -> &Matrix3<f64> {
        &self.0
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (self.0 - other.0).abs().max()
    }
}

/// Rows (e1, e2, â): the rotation O_a taking â to the third axis. `hint`
/// picks the completion; it must not be parallel to `a`.
pub fn aligned_frame(a: &Vector3<f64>, hint: &Vector3<f64>) -> Result<Matrix3<f64>> {
    let norm = a.norm();
    if norm == 0.0 || !norm.is_finite() {
        return Err(Error::DegenerateDirection);
    }
    let e3 = a / norm;
    let h = hint - e3 * hint.dot(&e3);
    let hn = h.norm();
    if hn < 1e-8 * hint.norm() || hn == 0.0 {
        return Err(Error::DegenerateDirection);
    }
    let e1 = h / hn;
    let e2 = e3.cross(&e1);
    Ok(Matrix3::from_rows(&[e1.transpose(), e2.transpose(), e3.transpose()]))
}

fn default_hint(a: &Vector3<f64>) -> Vector3<f64> {
    // Coordinate axis least aligned with a.
    let i = a.iamin();
    let mut h = Vector3::zeros();
    h[i] = 1.0;
    h
}

/// ∫dΩ_k e^{ik·a} Q(k) = 2π O_a⁻¹ diag(b1, b1, b3) O_a, s = |k||a|.
pub fn angular_transverse_integral(k_mag: f64, a: &Vector3<f64>) -> Result<TransverseMatrix> {
    angular_transverse_integral_with(k_mag, a, &default_hint(a))
}

/// As [`angular_transverse_integral`] with an explicit frame completion.
pub fn angular_transverse_integral_with(
    k_mag: f64,
    a: &Vector3<f64>,
    hint: &Vector3<f64>,
) -> Result<TransverseMatrix> {
    let o = aligned_frame(a, hint)?;
    let (b1, b3) = g_profiles(k_mag * a.norm());
    let b = Matrix3::from_diagonal(&Vector3::new(b1, b1, b3)) * (2.0 * PI);
    Ok(TransverseMatrix(o.transpose() * b * o))
}
