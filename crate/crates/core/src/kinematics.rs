//! On-shell four-momenta, pure boosts and the spherical momentum parameterization.
//!
//! Four-vectors are stored with contravariant components `(E, p^x, p^y, p^z)`
//! and `LorentzMatrix` acts as `p'^μ = Λ^μ_ν p^ν`. Natural units throughout.

use nalgebra::{Matrix3, Matrix4, Vector3, Vector4};

use crate::clifford::METRIC;
use crate::error::{Error, Result};

/// Rest mass, positive and finite.
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct Mass(f64);

impl Mass {
    pub fn new(m: f64) -> Result<Self> {
        if m.is_finite() && m > 0.0 {
            Ok(Self(m))
        } else {
            Err(Error::NonPositiveMass(m))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Energy-momentum of a massive particle on its mass shell.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FourMomentum {
    mass: Mass,
    energy: f64,
    p3: Vector3<f64>,
}

impl FourMomentum {
    /// On-shell momentum with `E = sqrt(m² + |p|²)`.
    pub fn on_shell(mass: Mass, p3: Vector3<f64>) -> Self {
        let m = mass.value();
        let energy = (m * m + p3.norm_squared()).sqrt();
        Self { mass, energy, p3 }
    }

    pub fn at_rest(mass: Mass) -> Self {
        Self::on_shell(mass, Vector3::zeros())
    }

    pub fn mass(&self) -> Mass {
        self.mass
    }

    pub fn m(&self) -> f64 {
        self.mass.value()
    }

    pub fn energy(&self) -> f64 {
        self.energy
    }

    pub fn p3(&self) -> &Vector3<f64> {
        &self.p3
    }

    pub fn magnitude(&self) -> f64 {
        self.p3.norm()
    }

    /// Contravariant components `(E, p^x, p^y, p^z)`.
    pub fn contravariant(&self) -> [f64; 4] {
        [self.energy, self.p3.x, self.p3.y, self.p3.z]
    }

    /// Covariant components `p_μ = η_{μν} p^ν`.
    pub fn covariant(&self) -> [f64; 4] {
        let c = self.contravariant();
        std::array::from_fn(|mu| METRIC.sign(mu) * c[mu])
    }

    /// Rapidity `ξ` with `cosh ξ = E/m`.
    pub fn rapidity(&self) -> f64 {
        (self.magnitude() / self.m()).asinh()
    }

    /// The same mass with the spatial momentum negated.
    pub fn reversed(&self) -> Self {
        Self::on_shell(self.mass, -self.p3)
    }

    /// `sqrt(E² - |p|²)` computed from the stored components.
    pub fn invariant_mass(&self) -> f64 {
        ((self.energy - self.p3.norm()) * (self.energy + self.p3.norm())).sqrt()
    }
}

/// Spherical parameterization of a 3-momentum.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SphericalMomentum {
    magnitude: f64,
    theta: f64,
    phi: f64,
}

impl SphericalMomentum {
    pub fn new(magnitude: f64, theta: f64, phi: f64) -> Result<Self> {
        if !(magnitude.is_finite() && magnitude >= 0.0) {
            return Err(Error::InvalidMomentumMagnitude(magnitude));
        }
        if !(0.0..=std::f64::consts::PI).contains(&theta) {
            return Err(Error::PolarAngleOutOfRange(theta));
        }
        Ok(Self {
            magnitude,
            theta,
            phi,
        })
    }

    pub fn magnitude(&self) -> f64 {
        self.magnitude
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// `{p sinθ cosφ, p sinθ sinφ, p cosθ}`.
    pub fn cartesian(&self) -> Vector3<f64> {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        self.magnitude * Vector3::new(st * cp, st * sp, ct)
    }

    /// `{p cosθ cosφ, p cosθ sinφ, -p sinθ}`, i.e. θ shifted by π/2.
    pub fn perpendicular_cartesian(&self) -> Vector3<f64> {
        let (st, ct) = self.theta.sin_cos();
        let (sp, cp) = self.phi.sin_cos();
        self.magnitude * Vector3::new(ct * cp, ct * sp, -st)
    }
}

pub fn make_momentum(mass: f64, sph: &SphericalMomentum) -> Result<FourMomentum> {
    Ok(FourMomentum::on_shell(Mass::new(mass)?, sph.cartesian()))
}

pub fn perp_momentum(mass: f64, sph: &SphericalMomentum) -> Result<FourMomentum> {
    Ok(FourMomentum::on_shell(
        Mass::new(mass)?,
        sph.perpendicular_cartesian(),
    ))
}

/// A proper orthochronous Lorentz transformation on contravariant vectors.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LorentzMatrix(Matrix4<f64>);

impl LorentzMatrix {
    /// Validates `Λᵀ η Λ = η` (relative to the squared entry scale),
    /// `det Λ = +1` and `Λ^0_0 ≥ 1`.
    pub fn new(m: Matrix4<f64>) -> Result<Self> {
        let eta = Matrix4::from_diagonal(&Vector4::new(1.0, -1.0, -1.0, -1.0));
        let scale = m.iter().fold(1.0_f64, |a, x| a.max(x.abs()));
        let metric_residual = (m.transpose() * eta * m - eta).amax() / (scale * scale);
        let det_residual = (m.determinant() - 1.0).abs() / scale.powi(4);
        let residual = metric_residual.max(det_residual);
        if !m.iter().all(|x| x.is_finite()) || residual > 1e-12 || m[(0, 0)] < 1.0 - 1e-12 {
            return Err(Error::NotLorentz { residual });
        }
        Ok(Self(m))
    }

    pub fn identity() -> Self {
        Self(Matrix4::identity())
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.0
    }

    pub fn compose(&self, rhs: &LorentzMatrix) -> LorentzMatrix {
        LorentzMatrix(self.0 * rhs.0)
    }

    /// Inverse via `Λ⁻¹ = η Λᵀ η`.
    pub fn inverse(&self) -> LorentzMatrix {
        let eta = Matrix4::from_diagonal(&Vector4::new(1.0, -1.0, -1.0, -1.0));
        LorentzMatrix(eta * self.0.transpose() * eta)
    }

    /// Raw action on a contravariant four-vector.
    pub fn apply_vector(&self, v: [f64; 4]) -> [f64; 4] {
        let r = self.0 * Vector4::from(v);
        [r[0], r[1], r[2], r[3]]
    }

    /// Whether the transformation is a pure boost (symmetric matrix).
    pub fn is_pure_boost(&self, tol: f64) -> bool {
        let scale = self.0[(0, 0)];
        (self.0 - self.0.transpose()).amax() <= tol * scale
    }

    /// Spatial 3x3 block.
    pub fn spatial(&self) -> Matrix3<f64> {
        self.0.fixed_view::<3, 3>(1, 1).into_owned()
    }
}

/// Boost along the unit vector `n` with rapidity `xi` (active, towards `+n`).
pub fn boost_along(n: &Vector3<f64>, xi: f64) -> LorentzMatrix {
    let n = n.normalize();
    let (ch, sh) = (xi.cosh(), xi.sinh());
    let mut m = Matrix4::identity();
    m[(0, 0)] = ch;
    for i in 0..3 {
        m[(0, i + 1)] = sh * n[i];
        m[(i + 1, 0)] = sh * n[i];
        for j in 0..3 {
            m[(i + 1, j + 1)] += (ch - 1.0) * n[i] * n[j];
        }
    }
    LorentzMatrix(m)
}

/// The pure boost `L_p` taking `(m, 0, 0, 0)` to `p`.
pub fn standard_boost(p: &FourMomentum) -> LorentzMatrix {
    let m = p.m();
    let e = p.energy();
    let q = p.p3();
    let mut l = Matrix4::identity();
    l[(0, 0)] = e / m;
    for i in 0..3 {
        l[(0, i + 1)] = q[i] / m;
        l[(i + 1, 0)] = q[i] / m;
        for j in 0..3 {
            l[(i + 1, j + 1)] += q[i] * q[j] / (m * (e + m));
        }
    }
    LorentzMatrix(l)
}

/// Boost along `+z` with rapidity `xi`.
pub fn boost_z(xi: f64) -> LorentzMatrix {
    boost_along(&Vector3::z(), xi)
}

/// Observer velocity `tanh ξ` for rapidity `ξ`.
pub fn velocity(xi: f64) -> f64 {
    xi.tanh()
}

/// `Λp`, with the energy restored from the mass shell.
///
/// The spatial part is taken from the matrix action; recomputing the energy
/// avoids the cancellation in `E cosh ξ - p sinθ sinh ξ` at large rapidity.
pub fn apply_lorentz(l: &LorentzMatrix, p: &FourMomentum) -> FourMomentum {
    let v = l.apply_vector(p.contravariant());
    FourMomentum::on_shell(p.mass(), Vector3::new(v[1], v[2], v[3]))
}
