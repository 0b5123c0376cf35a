//! Dirac spinors in the covariant (standard) and Foldy-Wouthuysen
//! representations, the spinor boost and the FW unitary.

use nalgebra::{Rotation3, RowVector4, UnitQuaternion, Vector3, Vector4};

use crate::clifford::{gamma_basis, OperatorMatrix, C64, I, ONE};
use crate::error::{Error, Result};
use crate::kinematics::{standard_boost, FourMomentum, LorentzMatrix, Mass};

pub type Spinor4 = Vector4<C64>;

/// Normalization tolerance for spinor invariants.
pub const SPINOR_TOL: f64 = 1e-10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EnergySign {
    Positive,
    Negative,
}

impl EnergySign {
    pub fn factor(self) -> f64 {
        match self {
            EnergySign::Positive => 1.0,
            EnergySign::Negative => -1.0,
        }
    }

    /// Offset of this sector in the four spinor components.
    pub fn offset(self) -> usize {
        match self {
            EnergySign::Positive => 0,
            EnergySign::Negative => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SpinLabel {
    Up,
    Down,
}

impl SpinLabel {
    pub fn factor(self) -> f64 {
        match self {
            SpinLabel::Up => 1.0,
            SpinLabel::Down => -1.0,
        }
    }

    pub fn offset(self) -> usize {
        match self {
            SpinLabel::Up => 0,
            SpinLabel::Down => 1,
        }
    }

    pub const BOTH: [SpinLabel; 2] = [SpinLabel::Up, SpinLabel::Down];
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Representation {
    Covariant,
    FoldyWouthuysen,
}

/// A four-component spinor tagged with its representation and energy sign.
///
/// Covariant spinors satisfy `ψ̄ψ = ±1` according to the energy sign; FW
/// spinors satisfy `ψ†ψ = 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiracSpinor {
    components: Spinor4,
    rep: Representation,
    energy_sign: EnergySign,
    spin: Option<SpinLabel>,
}

impl DiracSpinor {
    pub fn new(
        components: Spinor4,
        rep: Representation,
        energy_sign: EnergySign,
        spin: Option<SpinLabel>,
    ) -> Result<Self> {
        let (expected, found) = match rep {
            Representation::Covariant => (energy_sign.factor(), bar_norm(&components)),
            Representation::FoldyWouthuysen => (1.0, components.norm_squared()),
        };
        if (found - expected).abs() > SPINOR_TOL {
            return Err(Error::BadNormalization { expected, found });
        }
        Ok(Self {
            components,
            rep,
            energy_sign,
            spin,
        })
    }

    pub fn components(&self) -> &Spinor4 {
        &self.components
    }

    pub fn rep(&self) -> Representation {
        self.rep
    }

    pub fn energy_sign(&self) -> EnergySign {
        self.energy_sign
    }

    pub fn spin(&self) -> Option<SpinLabel> {
        self.spin
    }
}

/// `ψ†γ⁰ψ`.
pub fn bar_norm(psi: &Spinor4) -> f64 {
    (psi[0].norm_sqr() + psi[1].norm_sqr()) - (psi[2].norm_sqr() + psi[3].norm_sqr())
}

/// `ψ†γ⁰φ`.
pub fn bar_product(psi: &Spinor4, phi: &Spinor4) -> C64 {
    (psi.adjoint() * gamma_basis().gamma[0].matrix() * phi)[(0, 0)]
}

/// `ψ† M φ`.
pub fn sandwich(psi: &Spinor4, m: &OperatorMatrix, phi: &Spinor4) -> C64 {
    (psi.adjoint() * m.matrix() * phi)[(0, 0)]
}

/// `ψ̄ M φ = ψ†γ⁰ M φ`.
pub fn bar_sandwich(psi: &Spinor4, m: &OperatorMatrix, phi: &Spinor4) -> C64 {
    (psi.adjoint() * (gamma_basis().gamma[0] * *m).matrix() * phi)[(0, 0)]
}

/// `S(L_p) = (E + m - γ⁰γ^i p_i) / sqrt(2m(E + m))`.
pub fn spinor_boost(p: &FourMomentum) -> OperatorMatrix {
    let b = gamma_basis();
    let (m, e) = (p.m(), p.energy());
    let numerator = b.identity * (e + m) - b.gamma[0] * b.slash_spatial(p.p3());
    numerator * (1.0 / (2.0 * m * (e + m)).sqrt())
}

/// `S⁻¹(L_p)`, which for a pure boost equals `S(L_{-p})`.
pub fn spinor_boost_inverse(p: &FourMomentum) -> OperatorMatrix {
    spinor_boost(&p.reversed())
}

/// Spinor boost along `+z` with rapidity `xi`.
pub fn spinor_boost_z(xi: f64) -> OperatorMatrix {
    let b = gamma_basis();
    let (ch, sh) = ((xi / 2.0).cosh(), (xi / 2.0).sinh());
    b.identity * ch + b.alpha[2] * sh
}

/// Spinor representation `S(Λ)` of a proper orthochronous Lorentz matrix,
/// normalized so that `S⁻¹ γ^μ S = Λ^μ_ν γ^ν`.
///
/// `Λ` is split as `B R` with `B` the pure boost carrying the time axis to
/// `Λ(1,0,0,0)` and `R` a rotation. The rotation is mapped through its unit
/// quaternion on the `w ≥ 0` branch, which fixes the overall sign.
pub fn spinor_representation(l: &LorentzMatrix) -> OperatorMatrix {
    let col = l.apply_vector([1.0, 0.0, 0.0, 0.0]);
    let four_velocity = FourMomentum::on_shell(
        Mass::new(1.0).expect("unit mass"),
        Vector3::new(col[1], col[2], col[3]),
    );
    let s_boost = spinor_boost(&four_velocity);
    // B⁻¹Λ cancels entries of size Λ⁰₀²; a symmetric Λ is already the boost.
    if l.is_pure_boost(1e-15) {
        return s_boost;
    }
    let rotation = standard_boost(&four_velocity).inverse().compose(l);
    s_boost * spinor_rotation(&rotation.spatial())
}

/// `exp(-i θ n·Σ / 2)` for the active rotation by `θ` about `n`.
pub fn spinor_rotation(r: &nalgebra::Matrix3<f64>) -> OperatorMatrix {
    let b = gamma_basis();
    let q = UnitQuaternion::from_rotation_matrix(&Rotation3::from_matrix_unchecked(*r));
    let (w, v) = if q.w < 0.0 {
        (-q.w, -q.imag())
    } else {
        (q.w, q.imag())
    };
    let mut s = b.identity * w;
    for k in 0..3 {
        s = s - b.sigma[k] * (I * v[k]);
    }
    s
}

/// Rest-frame basis spinor: a unit coordinate vector.
pub fn rest_spinor(spin: SpinLabel, sign: EnergySign) -> Spinor4 {
    let mut v = Spinor4::zeros();
    v[sign.offset() + spin.offset()] = ONE;
    v
}

/// `u(p,s)`, `v(p,s)` in the covariant representation, or the momentum
/// independent `ũ`, `ṽ` in the FW representation.
pub fn basis_spinor(
    p: &FourMomentum,
    spin: SpinLabel,
    sign: EnergySign,
    rep: Representation,
) -> DiracSpinor {
    let rest = rest_spinor(spin, sign);
    let components = match rep {
        Representation::Covariant => spinor_boost(p) * rest,
        Representation::FoldyWouthuysen => rest,
    };
    DiracSpinor {
        components,
        rep,
        energy_sign: sign,
        spin: Some(spin),
    }
}

/// `ψ̄ = ψ†γ⁰`.
pub fn dirac_adjoint(psi: &DiracSpinor) -> Result<RowVector4<C64>> {
    if psi.rep != Representation::Covariant {
        return Err(Error::WrongRepresentation {
            expected: "covariant",
        });
    }
    Ok(psi.components.adjoint() * gamma_basis().gamma[0].matrix())
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EnergyProjector {
    pub matrix: OperatorMatrix,
    pub sign: EnergySign,
    pub momentum: FourMomentum,
}

/// `Π± = (m ± γ^μ p_μ) / 2m`.
pub fn energy_projector(p: &FourMomentum, sign: EnergySign) -> EnergyProjector {
    let b = gamma_basis();
    let m = p.m();
    let matrix = (b.identity * m + b.slash(&p.contravariant()) * sign.factor()) * (0.5 / m);
    EnergyProjector {
        matrix,
        sign,
        momentum: *p,
    }
}

/// FW unitary `U(q) = (E + m - γ^i q_i) / sqrt(2E(E + m))`.
pub fn fw_unitary(q: &Vector3<f64>, mass: Mass) -> OperatorMatrix {
    let b = gamma_basis();
    let m = mass.value();
    let e = (m * m + q.norm_squared()).sqrt();
    (b.identity * (e + m) - b.slash_spatial(q)) * (1.0 / (2.0 * e * (e + m)).sqrt())
}

/// Momentum-operator eigenvalue `±p` carried by a spinor of the given sign.
pub fn momentum_eigenvalue(p: &FourMomentum, sign: EnergySign) -> Vector3<f64> {
    p.p3() * sign.factor()
}

/// `ψ̃± = sqrt(m/E) U(±p) ψ±`.
pub fn to_fw(psi: &DiracSpinor, p: &FourMomentum) -> Result<DiracSpinor> {
    if psi.rep != Representation::Covariant {
        return Err(Error::WrongRepresentation {
            expected: "covariant",
        });
    }
    let sign = psi.energy_sign;
    let projected = energy_projector(p, sign).matrix * psi.components;
    let residual = (projected - psi.components).camax();
    let scale = psi.components.camax().max(1.0);
    if residual > SPINOR_TOL * scale {
        return Err(Error::MixedEnergySign { residual });
    }
    let u = fw_unitary(&momentum_eigenvalue(p, sign), p.mass());
    let components = u * psi.components * C64::from((p.m() / p.energy()).sqrt());
    DiracSpinor::new(components, Representation::FoldyWouthuysen, sign, psi.spin)
}

/// Hermitian adjoint helper used by the FW sandwich `U† M U`.
pub fn conjugate_by(u: &OperatorMatrix, m: &OperatorMatrix) -> OperatorMatrix {
    u.dagger() * *m * *u
}
