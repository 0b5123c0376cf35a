//! Transport of spinor labels under an observer Lorentz transformation.
//!
//! In the FW representation the amplitude four-vector `(a₊, a₋, b₊, b₋)` of a
//! momentum eigenstate maps as `ψ̃(Λp) = T̃ ψ̃(p)`. In the covariant
//! representation the same 2x2 block is the matrix of the Wigner rotation
//! `S⁻¹(L_{Λp}) S(Λ) S(L_p)` between rest basis spinors.

use nalgebra::Matrix2;

use crate::clifford::{OperatorMatrix, C64};
use crate::error::{Error, Result};
use crate::kinematics::{apply_lorentz, FourMomentum, LorentzMatrix, Mass, SphericalMomentum};
use crate::spinor::{
    fw_unitary, momentum_eigenvalue, rest_spinor, spinor_boost, spinor_boost_inverse,
    spinor_representation, EnergySign, Representation, SpinLabel,
};

/// Structural tolerance for transports with `|p|/m ≤ 10³`.
pub const TRANSPORT_TOL: f64 = 1e-10;
/// Structural tolerance above `|p|/m = 10³`.
pub const TRANSPORT_TOL_ULTRA: f64 = 1e-8;

/// Tolerance appropriate for the larger of the two momenta involved.
pub fn transport_tolerance(p: &FourMomentum, p_out: &FourMomentum) -> f64 {
    let ratio = p.magnitude().max(p_out.magnitude()) / p.m();
    if ratio <= 1e3 {
        TRANSPORT_TOL
    } else {
        TRANSPORT_TOL_ULTRA
    }
}

/// Full 4x4 label transport, rows and columns ordered `(u+, u-, v+, v-)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TransportMatrix {
    pub entries: OperatorMatrix,
    pub lorentz: LorentzMatrix,
    pub momentum: FourMomentum,
    pub rep: Representation,
}

impl TransportMatrix {
    pub fn unitarity_residual(&self) -> f64 {
        self.entries.unitarity_residual()
    }

    /// Largest magnitude among the u↔v mixing entries.
    pub fn leakage(&self) -> f64 {
        self.entries
            .block(0, 1)
            .iter()
            .chain(self.entries.block(1, 0).iter())
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    /// `max |T_uu - T_vv|`.
    pub fn block_equality_residual(&self) -> f64 {
        (self.entries.block(0, 0) - self.entries.block(1, 1)).camax()
    }

    pub fn positive_block(&self) -> Matrix2<C64> {
        self.entries.block(0, 0)
    }

    pub fn transported_momentum(&self) -> FourMomentum {
        apply_lorentz(&self.lorentz, &self.momentum)
    }

    pub fn tolerance(&self) -> f64 {
        transport_tolerance(&self.momentum, &self.transported_momentum())
    }
}

fn wigner_operator(l: &LorentzMatrix, p: &FourMomentum) -> OperatorMatrix {
    let p_out = apply_lorentz(l, p);
    spinor_boost_inverse(&p_out) * spinor_representation(l) * spinor_boost(p)
}

/// `⟨k,λ′| S⁻¹(L_{Λp}) S(Λ) S(L_p) |k,λ⟩` for rest spinors of one energy sign.
pub fn transport_covariant(l: &LorentzMatrix, p: &FourMomentum, sign: EnergySign) -> Matrix2<C64> {
    let w = wigner_operator(l, p);
    Matrix2::from_fn(|r, c| {
        let bra = rest_spinor(SpinLabel::BOTH[r], sign);
        let ket = rest_spinor(SpinLabel::BOTH[c], sign);
        (bra.adjoint() * w.matrix() * ket)[(0, 0)]
    })
}

/// Both covariant blocks assembled in the 4x4 layout of [`transport_fw`].
pub fn transport_covariant_full(l: &LorentzMatrix, p: &FourMomentum) -> TransportMatrix {
    let pos = transport_covariant(l, p, EnergySign::Positive);
    let neg = transport_covariant(l, p, EnergySign::Negative);
    TransportMatrix {
        entries: OperatorMatrix::from_blocks(&pos, &Matrix2::zeros(), &Matrix2::zeros(), &neg),
        lorentz: *l,
        momentum: *p,
        rep: Representation::Covariant,
    }
}

/// `√(E/E′) U(q′) S(Λ) U†(q)`, sector by sector with `q = ±p`.
pub fn transport_fw(l: &LorentzMatrix, p: &FourMomentum) -> TransportMatrix {
    let p_out = apply_lorentz(l, p);
    let s = spinor_representation(l);
    let ratio = (p.energy() / p_out.energy()).sqrt();
    let sector = |sign: EnergySign| {
        let u_in = fw_unitary(&momentum_eigenvalue(p, sign), p.mass());
        let u_out = fw_unitary(&momentum_eigenvalue(&p_out, sign), p.mass());
        u_out * s * u_in.dagger() * ratio
    };
    let pos = sector(EnergySign::Positive);
    let neg = sector(EnergySign::Negative);
    let mut m = *pos.matrix();
    m.fixed_view_mut::<4, 2>(0, 2)
        .copy_from(&neg.matrix().fixed_view::<4, 2>(0, 2));
    TransportMatrix {
        entries: OperatorMatrix::from_matrix(m),
        lorentz: *l,
        momentum: *p,
        rep: Representation::FoldyWouthuysen,
    }
}

/// The Wigner block `((A, B), (-B*, A*))`, an SU(2) matrix.
///
/// For boosts along `z` the entry `A` is real and the block takes the form
/// `((A, B), (-B*, A))`; [`WignerBlock::reality_defect`] measures the departure
/// from that form.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WignerBlock {
    pub a: C64,
    pub b: C64,
}

impl WignerBlock {
    pub fn matrix(&self) -> Matrix2<C64> {
        Matrix2::new(self.a, self.b, -self.b.conj(), self.a.conj())
    }

    /// `|A|² + |B|² - 1`.
    pub fn norm_defect(&self) -> f64 {
        self.a.norm_sqr() + self.b.norm_sqr() - 1.0
    }

    /// `|A*B - AB|`, zero when `A` is real or `B` vanishes.
    pub fn reality_defect(&self) -> f64 {
        (self.a.conj() * self.b - self.a * self.b).norm()
    }

    pub fn unitarity_residual(&self) -> f64 {
        let m = self.matrix();
        (m.adjoint() * m - Matrix2::identity()).camax()
    }
}

/// Reads `(A, B)` from the positive block and checks the full block shape,
/// the lower block and the u↔v leakage against the transport tolerance.
pub fn wigner_block(t: &TransportMatrix) -> Result<WignerBlock> {
    let upper = t.entries.block(0, 0);
    let block = WignerBlock {
        a: upper[(0, 0)],
        b: upper[(0, 1)],
    };
    let shape = (upper - block.matrix()).camax();
    let residual = shape
        .max(t.block_equality_residual())
        .max(t.leakage())
        .max(block.unitarity_residual());
    if !residual.is_finite() || residual > t.tolerance() {
        return Err(Error::BlockShapeViolation { residual });
    }
    Ok(block)
}

/// Closed-form Wigner parameters for a boost along `z` with rapidity `ξ`:
/// `(a₁, b₁)` for the momentum `p(θ, φ)`, `(a₂, b₂)` for `p_⊥ = p(θ + π/2, φ)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ABParams {
    pub a1: f64,
    pub b1: f64,
    pub a2: f64,
    pub b2: f64,
}

/// Evaluates the closed forms with `E′ = E cosh ξ + p cosθ sinh ξ` and
/// `E″ = E cosh ξ - p sinθ sinh ξ`.
///
/// Every difference is rewritten as a sum of positive terms through
/// `E cosh ξ + p x sinh ξ = ½[(E + px)e^ξ + (E - px)e^{-ξ}]` and
/// `E - p|x| = (m² + p²(1 - x²)) / (E + p|x|)`, which keeps full relative
/// precision near `θ = π/2` at large momentum and rapidity.
pub fn ab_params(mass: Mass, sph: &SphericalMomentum, xi: f64) -> ABParams {
    let m = mass.value();
    let p = sph.magnitude();
    let e = (m * m + p * p).sqrt();
    let (st, ct) = sph.theta().sin_cos();
    // E + p·x for x = ±cosθ or ±sinθ, given the complementary function.
    let shifted = |x: f64, complement: f64| {
        if x >= 0.0 {
            e + p * x
        } else {
            (m * m + p * p * complement * complement) / (e - p * x)
        }
    };
    let (up, down) = (xi.exp(), (-xi).exp());
    let (up2, down2) = ((0.5 * xi).exp(), (-0.5 * xi).exp());
    let (ch, sh) = (xi.cosh(), xi.sinh());
    let (ch2, sh2) = ((0.5 * xi).cosh(), (0.5 * xi).sinh());
    // E cosh ξ + p x sinh ξ and cosh(ξ/2) + p x sinh(ξ/2) / (m + E); the
    // direct form is used when both terms share a sign.
    let boosted_energy = |x: f64, complement: f64| {
        if x * xi >= 0.0 {
            e * ch + p * x * sh
        } else {
            0.5 * (shifted(x, complement) * up + shifted(-x, complement) * down)
        }
    };
    let half_factor = |x: f64, complement: f64| {
        if x * xi >= 0.0 {
            ch2 + p * x / (m + e) * sh2
        } else {
            ((m + shifted(x, complement)) * up2 + (m + shifted(-x, complement)) * down2)
                / (2.0 * (m + e))
        }
    };
    let e1 = boosted_energy(ct, st);
    let e2 = boosted_energy(-st, ct);
    ABParams {
        a1: ((m + e) / (m + e1)).sqrt() * half_factor(ct, st),
        b1: p * st / ((m + e) * (m + e1)).sqrt() * sh2,
        a2: ((m + e) / (m + e2)).sqrt() * half_factor(-st, ct),
        b2: p * ct / ((m + e) * (m + e2)).sqrt() * sh2,
    }
}

impl ABParams {
    /// The Wigner blocks these parameters describe, with the azimuthal phase.
    pub fn blocks(&self, phi: f64) -> (WignerBlock, WignerBlock) {
        let phase = C64::from_polar(1.0, -phi);
        (
            WignerBlock {
                a: C64::from(self.a1),
                b: phase * self.b1,
            },
            WignerBlock {
                a: C64::from(self.a2),
                b: phase * self.b2,
            },
        )
    }
}

/// `max |T - 1|` helper for identity checks.
pub fn identity_residual(t: &TransportMatrix) -> f64 {
    (t.entries - OperatorMatrix::identity()).max_abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kinematics::{boost_along, boost_z, make_momentum, perp_momentum};
    use nalgebra::Vector3;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    fn mass(m: f64) -> Mass {
        Mass::new(m).unwrap()
    }

    fn mom(m: f64, x: f64, y: f64, z: f64) -> FourMomentum {
        FourMomentum::on_shell(mass(m), Vector3::new(x, y, z))
    }

    #[test]
    fn identity_transport() {
        let p = mom(1.0, 0.4, -2.0, 1.1);
        let t = transport_fw(&LorentzMatrix::identity(), &p);
        assert!(identity_residual(&t) < 1e-14);
        let c = transport_covariant(&LorentzMatrix::identity(), &p, EnergySign::Positive);
        assert!((c - Matrix2::identity()).camax() < 1e-14);
        let w = wigner_block(&t).unwrap();
        assert!((w.a - 1.0).norm() < 1e-14 && w.b.norm() < 1e-14);
    }

    #[test]
    fn collinear_boost_is_trivial() {
        let p = mom(1.0, 0.0, 0.0, 3.0);
        let t = transport_fw(&boost_z(2.0), &p);
        let w = wigner_block(&t).unwrap();
        assert!(w.b.norm() < 1e-12);
        assert!((w.a.norm() - 1.0).abs() < 1e-12);
        let c = transport_covariant(&boost_z(2.0), &p, EnergySign::Positive);
        assert!((c - Matrix2::identity()).camax() < 1e-12);
    }

    #[test]
    fn representations_agree() {
        let cases = [
            (boost_z(1.5), mom(1.0, 2.0, -1.0, 0.5)),
            (
                boost_along(&Vector3::new(1.0, 2.0, -0.5), 0.8),
                mom(2.0, -3.0, 1.0, 4.0),
            ),
            (
                boost_along(&Vector3::new(0.0, 1.0, 1.0), 3.0),
                mom(1.0, 10.0, 0.0, -2.0),
            ),
        ];
        for (l, p) in cases {
            let fw = transport_fw(&l, &p);
            let cov = transport_covariant_full(&l, &p);
            assert!(fw.entries.max_abs_diff(&cov.entries) < 1e-12);
            assert!(fw.unitarity_residual() < 1e-12);
            assert!(fw.leakage() < 1e-12);
            assert!(fw.block_equality_residual() < 1e-12);
        }
    }

    #[test]
    fn cocycle_for_coplanar_boosts() {
        let l1 = boost_along(&Vector3::new(1.0, 0.0, 0.3), 1.2);
        let l2 = boost_along(&Vector3::new(-0.4, 0.0, 1.0), 0.9);
        let p = mom(1.0, 0.5, 0.0, -2.0);
        let p1 = apply_lorentz(&l1, &p);
        let lhs = transport_fw(&l2, &p1).positive_block() * transport_fw(&l1, &p).positive_block();
        let rhs = transport_fw(&l2.compose(&l1), &p).positive_block();
        assert!((lhs - rhs).camax() < 1e-9);
    }

    #[test]
    fn a_real_for_z_boosts_only() {
        let sph = SphericalMomentum::new(10.0, 0.54 * PI, 0.7).unwrap();
        let p = make_momentum(1.0, &sph).unwrap();
        let w = wigner_block(&transport_fw(&boost_z(3.0), &p)).unwrap();
        assert!(w.b.norm() > 1e-3);
        assert!(w.reality_defect() < 1e-12);

        let oblique = boost_along(&Vector3::new(1.0, 1.0, 0.2), 2.0);
        let q = mom(1.0, 0.3, -2.0, 1.5);
        let w = wigner_block(&transport_fw(&oblique, &q)).unwrap();
        assert!(w.reality_defect() > 1e-3);
        assert!(w.unitarity_residual() < 1e-12);
    }

    #[test]
    fn ab_params_at_zero_rapidity() {
        let sph = SphericalMomentum::new(10.0, 0.54 * PI, 0.0).unwrap();
        let ab = ab_params(mass(1.0), &sph, 0.0);
        assert_eq!((ab.a1, ab.b1, ab.a2, ab.b2), (1.0, 0.0, 1.0, 0.0));
    }

    #[test]
    fn ab_params_match_transport() {
        for &(theta, phi, xi) in &[(0.54 * PI, 0.0, 10.0), (0.3, 1.1, 2.5), (2.9, -0.4, 6.0)] {
            let sph = SphericalMomentum::new(10.0, theta, phi).unwrap();
            let ab = ab_params(mass(1.0), &sph, xi);
            let (w1, w2) = ab.blocks(phi);
            let l = boost_z(xi);
            let t1 = wigner_block(&transport_fw(&l, &make_momentum(1.0, &sph).unwrap())).unwrap();
            let t2 = wigner_block(&transport_fw(&l, &perp_momentum(1.0, &sph).unwrap())).unwrap();
            assert!((t1.a - w1.a).norm() < 1e-10 && (t1.b - w1.b).norm() < 1e-10);
            assert!((t2.a - w2.a).norm() < 1e-10 && (t2.b - w2.b).norm() < 1e-10);
        }
    }

    #[test]
    fn ab_params_near_right_angle() {
        // 40-digit reference values.
        let sph = SphericalMomentum::new(46.57959700763213, 1.5701565645718958, 0.0).unwrap();
        let ab = ab_params(mass(0.1), &sph, 10.099018484552035);
        assert!((ab.a2 * ab.a2 + ab.b2 * ab.b2 - 1.0).abs() < 1e-13);
        let sph = SphericalMomentum::new(10.0, 0.54 * PI, 0.0).unwrap();
        let ab = ab_params(mass(1.0), &sph, 10.0);
        assert!((ab.a1 - 0.702_660_703_725_960_9).abs() < 1e-15);
        assert!((ab.b1 - 0.711_525_077_168_287_5).abs() < 1e-15);
    }

    #[test]
    fn corrupted_block_is_rejected() {
        let mut t = transport_fw(&boost_z(1.0), &mom(1.0, 1.0, 0.0, 0.0));
        let mut m = t.entries.into_inner();
        m[(1, 1)] += C64::new(1e-6, 0.0);
        t.entries = OperatorMatrix::from_matrix(m);
        assert!(matches!(
            wigner_block(&t),
            Err(Error::BlockShapeViolation { .. })
        ));
    }

    proptest! {
        #[test]
        fn ab_normalization(p in 0.0f64..500.0, theta in 0.0f64..PI, xi in -12.0f64..12.0, m in 0.1f64..5.0) {
            let sph = SphericalMomentum::new(p, theta, 0.0).unwrap();
            let ab = ab_params(mass(m), &sph, xi);
            prop_assert!((ab.a1 * ab.a1 + ab.b1 * ab.b1 - 1.0).abs() < 1e-12);
            prop_assert!((ab.a2 * ab.a2 + ab.b2 * ab.b2 - 1.0).abs() < 1e-12);
        }

        #[test]
        fn transport_is_unitary_and_block_diagonal(
            px in -20.0f64..20.0, py in -20.0f64..20.0, pz in -20.0f64..20.0,
            nx in -1.0f64..1.0, ny in -1.0f64..1.0, nz in 0.1f64..1.0, xi in 0.0f64..5.0,
        ) {
            let l = boost_along(&Vector3::new(nx, ny, nz), xi);
            let t = transport_fw(&l, &mom(1.0, px, py, pz));
            prop_assert!(t.unitarity_residual() < 1e-10);
            prop_assert!(t.leakage() < 1e-10);
            let w = wigner_block(&t).unwrap();
            prop_assert!(w.norm_defect().abs() < 1e-10);
        }
    }
}
