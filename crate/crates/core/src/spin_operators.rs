//! Spin operators of a free massive Dirac particle.
//!
//! Every triple returned here is on the `Σ` scale: its rest-frame limit is the
//! 4x4 Pauli spin with eigenvalues ±1.
//!
//! * `covariant_spin` conjugates the rest spin tensor with the spinor boost and
//!   is the authoritative moving-frame spin `Σ_R`.
//! * `covariant_spin_closed_form` is the momentum-space closed form. Its
//!   half-scale printed version is exactly `Σ_R / 2`.
//! * `fw_mean_spin` is the Foldy-Wouthuysen mean spin `U†(q) Σ U(q)` in closed
//!   form. The cross term is `-iγ⁰(α×q)/E` with `α = γ⁰γ`; writing `Σ` in
//!   place of `α` there gives a non-Hermitian operator.
//! * `pauli_lubanski` builds `W_μ = -½ ε_{μνλδ} (Σ₀^{νλ}/2) p^δ`. With
//!   `ε_{0123} = -1` the rest-frame components are `W_i = -(m/2) Σ_i`, so
//!   `Σ_i / 2 = -W_i / m`, and `W^μ W_μ = -(3/4) m²`.
//! * `ryder_spin` forms `X`, `Y` from commutators of the Pauli-Lubanski
//!   vector of the moving-frame spin tensor and recombines them with opposite
//!   chiral projectors, `((1+γ₅) X + (1-γ₅) Y) / 2`. The result is `Σ_R / 2`.
//!   Using `(1-γ₅)/2` on both terms does not reproduce `Σ_R`; see
//!   [`select_chirality_variant`].
//! * `classical_spin` is twice the classical covariant spin `γ_v μ̂/α` embedded
//!   with `σ → Σ`, so that `Σ_R - classical` is exactly the `γ₅` term.

use nalgebra::{Vector3, Vector4};

use crate::clifford::{
    gamma_basis, levi_civita3, levi_civita4, spin_tensor_rest_all, IndexPosition, OperatorMatrix,
    C64, I, METRIC,
};
use crate::kinematics::{FourMomentum, Mass};
use crate::spinor::{
    bar_sandwich, fw_unitary, rest_spinor, sandwich, spinor_boost, spinor_boost_inverse,
    EnergySign, SpinLabel,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Construction {
    Rest,
    Conjugation,
    ClosedForm,
    Ryder,
    FwMean,
    FwConjugated,
    Classical,
    PauliLubanskiLinear,
}

/// Three spatial components of a spin operator.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpinOperatorTriple {
    pub components: [OperatorMatrix; 3],
    pub construction: Construction,
}

impl SpinOperatorTriple {
    pub fn new(components: [OperatorMatrix; 3], construction: Construction) -> Self {
        Self {
            components,
            construction,
        }
    }

    pub fn x(&self) -> &OperatorMatrix {
        &self.components[0]
    }

    pub fn y(&self) -> &OperatorMatrix {
        &self.components[1]
    }

    pub fn z(&self) -> &OperatorMatrix {
        &self.components[2]
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self::new(self.components.map(|c| c * s), self.construction)
    }

    /// Componentwise maximum entry difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (0..3)
            .map(|i| self.components[i].max_abs_diff(&other.components[i]))
            .fold(0.0, f64::max)
    }

    /// `max |[S_i, S_j] - i·scale·ε_ijk S_k|`.
    pub fn closure_residual(&self, scale: f64) -> f64 {
        let mut worst = 0.0_f64;
        for i in 0..3 {
            for j in 0..3 {
                let lhs = self.components[i].commutator(&self.components[j]);
                let rhs: OperatorMatrix = (0..3)
                    .map(|k| self.components[k] * (I * (scale * f64::from(levi_civita3(i, j, k)))))
                    .sum();
                worst = worst.max(lhs.max_abs_diff(&rhs));
            }
        }
        worst
    }

    /// `max_i |γ⁰ S_i† γ⁰ - S_i|`, self-adjointness under the `ψ̄φ` pairing.
    pub fn pseudo_hermiticity_residual(&self) -> f64 {
        let g0 = gamma_basis().gamma[0];
        self.components
            .iter()
            .map(|c| (g0 * c.dagger() * g0).max_abs_diff(c))
            .fold(0.0, f64::max)
    }

    pub fn hermiticity_residual(&self) -> f64 {
        self.components
            .iter()
            .map(|c| c.hermiticity_residual())
            .fold(0.0, f64::max)
    }
}

fn sigma_cross(v: &Vector3<f64>, m: &[OperatorMatrix; 3]) -> [OperatorMatrix; 3] {
    // (M × v)_i = ε_ijk M_j v_k
    std::array::from_fn(|i| {
        let mut acc = OperatorMatrix::zeros();
        for j in 0..3 {
            for k in 0..3 {
                let e = levi_civita3(i, j, k);
                if e != 0 {
                    acc = acc + m[j] * (f64::from(e) * v[k]);
                }
            }
        }
        acc
    })
}

/// `H_D(q) = γ⁰ m - γ⁰ γ^i q_i`.
pub fn dirac_hamiltonian(q: &Vector3<f64>, mass: Mass) -> OperatorMatrix {
    let b = gamma_basis();
    b.gamma[0] * mass.value() - b.gamma[0] * b.slash_spatial(q)
}

/// `Σ` itself.
pub fn rest_spin() -> SpinOperatorTriple {
    SpinOperatorTriple::new(gamma_basis().sigma, Construction::Rest)
}

/// `(Σ_R)_i = ε_ijk Σ_R^{jk} / 2` with `Σ_R^{μν} = S(L_p) Σ₀^{μν} S⁻¹(L_p)`.
pub fn covariant_spin(p: &FourMomentum) -> SpinOperatorTriple {
    let s = spinor_boost(p);
    let s_inv = spinor_boost_inverse(p);
    let tensor = spin_tensor_rest_all();
    let components = std::array::from_fn(|i| {
        let mut acc = OperatorMatrix::zeros();
        for j in 0..3 {
            for k in 0..3 {
                let e = levi_civita3(i, j, k);
                if e != 0 {
                    acc = acc + s * tensor[j + 1][k + 1] * s_inv * (0.5 * f64::from(e));
                }
            }
        }
        acc
    });
    SpinOperatorTriple::new(components, Construction::Conjugation)
}

/// Factor between the conjugation construction and the printed closed form
/// `Σ_i/2 + ε_ijk p_j (Σ×p)_k / 2m(E+m) + iγ₅ (Σ×p)_i / 2m`.
pub const CLOSED_FORM_SCALE: f64 = 2.0;

/// The closed form of `Σ_R`, already multiplied by [`CLOSED_FORM_SCALE`].
pub fn covariant_spin_closed_form(p: &FourMomentum) -> SpinOperatorTriple {
    let b = gamma_basis();
    let (m, e) = (p.m(), p.energy());
    let q = p.p3();
    let sxp = sigma_cross(q, &b.sigma);
    let components = std::array::from_fn(|i| {
        // ε_ijk p_j (Σ×p)_k = (p × (Σ×p))_i = Σ_i p² - p_i (p·Σ)
        let p_dot_sigma: OperatorMatrix = (0..3).map(|k| b.sigma[k] * q[k]).sum();
        let triple = b.sigma[i] * q.norm_squared() - p_dot_sigma * q[i];
        let half = b.sigma[i] * 0.5
            + triple * (1.0 / (2.0 * m * (e + m)))
            + b.gamma5 * sxp[i] * (I * (1.0 / (2.0 * m)));
        half * CLOSED_FORM_SCALE
    });
    SpinOperatorTriple::new(components, Construction::ClosedForm)
}

/// `iγ₅ (Σ×p)_i / m`: the part of `Σ_R` with no classical counterpart.
pub fn quantum_spin_term(p: &FourMomentum) -> SpinOperatorTriple {
    let b = gamma_basis();
    let sxp = sigma_cross(p.p3(), &b.sigma);
    let components = sxp.map(|c| b.gamma5 * c * (I * (1.0 / p.m())));
    SpinOperatorTriple::new(components, Construction::ClosedForm)
}

/// `Σ_FW = Σ - iγ⁰(α×q)/E - q×(Σ×q) / (E(E+m))`.
pub fn fw_mean_spin(q: &Vector3<f64>, mass: Mass) -> SpinOperatorTriple {
    let b = gamma_basis();
    let m = mass.value();
    let e = (m * m + q.norm_squared()).sqrt();
    let axq = sigma_cross(q, &b.alpha);
    let q_dot_sigma: OperatorMatrix = (0..3).map(|k| b.sigma[k] * q[k]).sum();
    let components = std::array::from_fn(|i| {
        let triple = b.sigma[i] * q.norm_squared() - q_dot_sigma * q[i];
        b.sigma[i] - b.gamma[0] * axq[i] * (I * (1.0 / e)) - triple * (1.0 / (e * (e + m)))
    });
    SpinOperatorTriple::new(components, Construction::FwMean)
}

/// `U†(q) Σ U(q)`.
pub fn fw_mean_spin_conjugated(q: &Vector3<f64>, mass: Mass) -> SpinOperatorTriple {
    let u = fw_unitary(q, mass);
    let components = gamma_basis().sigma.map(|s| u.dagger() * s * u);
    SpinOperatorTriple::new(components, Construction::FwConjugated)
}

/// `2 γ_v [σ/2 - p (v·σ) / (2(E+m))]` with `σ → Σ`, `v = p/E`, `γ_v = E/m`.
pub fn classical_spin(p: &FourMomentum) -> SpinOperatorTriple {
    let b = gamma_basis();
    let (m, e) = (p.m(), p.energy());
    let v = p.p3() / e;
    let gamma_v = e / m;
    let v_dot_sigma: OperatorMatrix = (0..3).map(|k| b.sigma[k] * v[k]).sum();
    let components = std::array::from_fn(|i| {
        let s_i = b.sigma[i] * 0.5 - v_dot_sigma * (p.p3()[i] / (2.0 * (e + m)));
        s_i * (2.0 * gamma_v)
    });
    SpinOperatorTriple::new(components, Construction::Classical)
}

/// Pauli-Lubanski components on the plane-wave spin sector.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PauliLubanskiSet {
    /// Covariant components `W_μ`.
    pub lower: [OperatorMatrix; 4],
    pub momentum: FourMomentum,
}

impl PauliLubanskiSet {
    /// Contravariant components `W^μ`.
    pub fn upper(&self) -> [OperatorMatrix; 4] {
        std::array::from_fn(|mu| self.lower[mu] * METRIC.sign(mu))
    }

    /// `W^μ W_μ`.
    pub fn casimir(&self) -> OperatorMatrix {
        let up = self.upper();
        (0..4).map(|mu| up[mu] * self.lower[mu]).sum()
    }

    /// `W^μ p_μ`.
    pub fn transversality(&self) -> OperatorMatrix {
        let p = self.momentum.covariant();
        let up = self.upper();
        (0..4).map(|mu| up[mu] * p[mu]).sum()
    }

    /// `(1/m)(W^i - p^i W^0 / (m + E))`, on the `Σ/2` scale.
    pub fn linear_spin_candidate(&self) -> SpinOperatorTriple {
        let (m, e) = (self.momentum.m(), self.momentum.energy());
        let up = self.upper();
        let q = self.momentum.p3();
        let components =
            std::array::from_fn(|i| (up[i + 1] - up[0] * (q[i] / (m + e))) * (1.0 / m));
        SpinOperatorTriple::new(components, Construction::PauliLubanskiLinear)
    }

    /// `S W_μ S⁻¹`, i.e. built from the moving-frame spin tensor.
    pub fn conjugated(&self, s: &OperatorMatrix, s_inv: &OperatorMatrix) -> Self {
        Self {
            lower: self.lower.map(|w| *s * w * *s_inv),
            momentum: self.momentum,
        }
    }
}

/// `W_μ = -½ ε_{μνλδ} (Σ₀^{νλ}/2) p^δ`.
pub fn pauli_lubanski(p: &FourMomentum) -> PauliLubanskiSet {
    let tensor = spin_tensor_rest_all();
    let pu = p.contravariant();
    let lower = std::array::from_fn(|mu| {
        let mut acc = OperatorMatrix::zeros();
        for nu in 0..4 {
            for la in 0..4 {
                for de in 0..4 {
                    let e = levi_civita4([mu, nu, la, de], IndexPosition::Lower)
                        .expect("valid indices");
                    if e != 0 {
                        acc = acc + tensor[nu][la] * (-0.25 * f64::from(e) * pu[de]);
                    }
                }
            }
        }
        acc
    });
    PauliLubanskiSet {
        lower,
        momentum: *p,
    }
}

/// Pauli-Lubanski vector of the moving-frame spin tensor `S Σ₀ S⁻¹`.
pub fn pauli_lubanski_moving(p: &FourMomentum) -> PauliLubanskiSet {
    pauli_lubanski(p).conjugated(&spinor_boost(p), &spinor_boost_inverse(p))
}

pub type Tensor4 = [[OperatorMatrix; 4]; 4];

/// `X^{μν}` and `Y^{μν}` (contravariant) from
/// `W^{μν} = [W^μ, W^ν]/m²` and `W̃^{μν} = ½ ε^{μνρδ} W_{ρδ}`.
pub fn ryder_tensors(w: &PauliLubanskiSet) -> (Tensor4, Tensor4) {
    let m2 = w.momentum.m().powi(2);
    let up = w.upper();
    let w_up: Tensor4 =
        std::array::from_fn(|a| std::array::from_fn(|b| up[a].commutator(&up[b]) * (1.0 / m2)));
    let w_low: Tensor4 = std::array::from_fn(|a| {
        std::array::from_fn(|b| w_up[a][b] * (METRIC.sign(a) * METRIC.sign(b)))
    });
    let dual: Tensor4 = std::array::from_fn(|a| {
        std::array::from_fn(|b| {
            let mut acc = OperatorMatrix::zeros();
            for r in 0..4 {
                for d in 0..4 {
                    let e =
                        levi_civita4([a, b, r, d], IndexPosition::Upper).expect("valid indices");
                    if e != 0 {
                        acc = acc + w_low[r][d] * (0.5 * f64::from(e));
                    }
                }
            }
            acc
        })
    });
    let x = std::array::from_fn(|a| std::array::from_fn(|b| (w_up[a][b] + dual[a][b] * I) * (-I)));
    let y = std::array::from_fn(|a| std::array::from_fn(|b| (w_up[a][b] - dual[a][b] * I) * (-I)));
    (x, y)
}

/// `½ ε_ijk T^{jk}` for the spatial block of an antisymmetric tensor.
pub fn spatial_dual(t: &Tensor4) -> [OperatorMatrix; 3] {
    std::array::from_fn(|i| {
        let mut acc = OperatorMatrix::zeros();
        for j in 0..3 {
            for k in 0..3 {
                let e = levi_civita3(i, j, k);
                if e != 0 {
                    acc = acc + t[j + 1][k + 1] * (0.5 * f64::from(e));
                }
            }
        }
        acc
    })
}

/// Chiral projector assignment in `P_X X + P_Y Y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChiralityVariant {
    /// `(1-γ₅)/2` on both `X` and `Y`.
    Printed,
    /// `(1+γ₅)/2` on `X`, `(1-γ₅)/2` on `Y`.
    Opposite,
    /// `(1-γ₅)/2` on `X`, `(1+γ₅)/2` on `Y`.
    OppositeSwapped,
}

impl ChiralityVariant {
    pub const ALL: [ChiralityVariant; 3] = [
        ChiralityVariant::Printed,
        ChiralityVariant::Opposite,
        ChiralityVariant::OppositeSwapped,
    ];

    fn projectors(self) -> (OperatorMatrix, OperatorMatrix) {
        let b = gamma_basis();
        let plus = (b.identity + b.gamma5) * 0.5;
        let minus = (b.identity - b.gamma5) * 0.5;
        match self {
            ChiralityVariant::Printed => (minus, minus),
            ChiralityVariant::Opposite => (plus, minus),
            ChiralityVariant::OppositeSwapped => (minus, plus),
        }
    }
}

/// Spatial spin from the chirality-projected `X`, `Y` tensors of `w`, on the
/// `Σ/2` scale.
pub fn ryder_half_spin(w: &PauliLubanskiSet, variant: ChiralityVariant) -> [OperatorMatrix; 3] {
    let (x, y) = ryder_tensors(w);
    let (px, py) = variant.projectors();
    let combined: Tensor4 =
        std::array::from_fn(|a| std::array::from_fn(|b| px * x[a][b] + py * y[a][b]));
    spatial_dual(&combined)
}

/// Ryder construction with a chosen chirality variant, on the `Σ` scale.
pub fn ryder_spin_variant(p: &FourMomentum, variant: ChiralityVariant) -> SpinOperatorTriple {
    let half = ryder_half_spin(&pauli_lubanski_moving(p), variant);
    SpinOperatorTriple::new(half.map(|c| c * 2.0), Construction::Ryder)
}

/// Ryder construction with the variant that reproduces `Σ_R`.
pub fn ryder_spin(p: &FourMomentum) -> SpinOperatorTriple {
    ryder_spin_variant(p, ChiralityVariant::Opposite)
}

/// Evaluates every chirality variant against `covariant_spin` over the given
/// momenta and returns the best one with all worst-case residuals.
pub fn select_chirality_variant(
    momenta: &[FourMomentum],
) -> (ChiralityVariant, Vec<(ChiralityVariant, f64)>) {
    let residuals: Vec<(ChiralityVariant, f64)> = ChiralityVariant::ALL
        .iter()
        .map(|&v| {
            let worst = momenta
                .iter()
                .map(|p| ryder_spin_variant(p, v).max_abs_diff(&covariant_spin(p)))
                .fold(0.0, f64::max);
            (v, worst)
        })
        .collect();
    let best = residuals
        .iter()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .map(|r| r.0)
        .expect("non-empty variant list");
    (best, residuals)
}

/// Three evaluations of the same spin expectation for a spinor written as
/// `c₊ u(p,+) + c₋ u(p,-) + d₊ v(p,+) + d₋ v(p,-)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EquivalenceSides {
    /// `ψ̃† Σ ψ̃` with `ψ̃` the FW amplitudes.
    pub fw_basis: [f64; 3],
    /// `(m/E)[ψ⁺† Σ_FW(p) ψ⁺ + ψ⁻† Σ_FW(-p) ψ⁻]`.
    pub fw_mean: [f64; 3],
    /// `ψ̄⁺ Σ_R ψ⁺ - ψ̄⁻ Σ_R ψ⁻`.
    pub covariant_signed: [f64; 3],
    /// Largest `|ū Σ_R v|` cross term; zero when the sectors decouple.
    pub cross_sector: f64,
}

impl EquivalenceSides {
    pub fn max_residual(&self) -> f64 {
        (0..3)
            .map(|i| {
                (self.fw_basis[i] - self.fw_mean[i])
                    .abs()
                    .max((self.fw_basis[i] - self.covariant_signed[i]).abs())
            })
            .fold(self.cross_sector, f64::max)
    }
}

pub fn equivalence_sides(p: &FourMomentum, amplitudes: &Vector4<C64>) -> EquivalenceSides {
    let s = spinor_boost(p);
    let sector = |sign: EnergySign| {
        SpinLabel::BOTH
            .iter()
            .map(|&spin| s * rest_spinor(spin, sign) * amplitudes[sign.offset() + spin.offset()])
            .sum::<Vector4<C64>>()
    };
    let psi_pos = sector(EnergySign::Positive);
    let psi_neg = sector(EnergySign::Negative);
    let sigma_r = covariant_spin(p);
    let fw_pos = fw_mean_spin(p.p3(), p.mass());
    let fw_neg = fw_mean_spin(&-p.p3(), p.mass());
    let sigma = gamma_basis().sigma;
    let ratio = p.m() / p.energy();
    let mut out = EquivalenceSides {
        fw_basis: [0.0; 3],
        fw_mean: [0.0; 3],
        covariant_signed: [0.0; 3],
        cross_sector: 0.0,
    };
    for i in 0..3 {
        out.fw_basis[i] = sandwich(amplitudes, &sigma[i], amplitudes).re;
        out.fw_mean[i] = ratio
            * (sandwich(&psi_pos, &fw_pos.components[i], &psi_pos)
                + sandwich(&psi_neg, &fw_neg.components[i], &psi_neg))
            .re;
        out.covariant_signed[i] = (bar_sandwich(&psi_pos, &sigma_r.components[i], &psi_pos)
            - bar_sandwich(&psi_neg, &sigma_r.components[i], &psi_neg))
        .re;
        let cross = bar_sandwich(&psi_pos, &sigma_r.components[i], &psi_neg).norm();
        out.cross_sector = out.cross_sector.max(cross);
    }
    out
}

/// `‖[A, B]‖_F / (‖A‖_F ‖B‖_F)`.
pub fn relative_commutator(a: &OperatorMatrix, b: &OperatorMatrix) -> f64 {
    a.commutator(b).frobenius_norm() / (a.frobenius_norm() * b.frobenius_norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spinor::{basis_spinor, Representation};
    use nalgebra::SymmetricEigen;

    fn mom(m: f64, x: f64, y: f64, z: f64) -> FourMomentum {
        FourMomentum::on_shell(Mass::new(m).unwrap(), Vector3::new(x, y, z))
    }

    fn sample_momenta() -> Vec<FourMomentum> {
        vec![
            mom(1.0, 0.0, 0.0, 0.0),
            mom(1.0, 0.3, -0.2, 0.5),
            mom(2.0, -3.0, 1.0, 4.0),
            mom(0.5, 2.0, 2.0, -1.0),
            mom(
                1.0,
                10.0 * (0.54f64 * std::f64::consts::PI).sin(),
                0.0,
                10.0 * (0.54f64 * std::f64::consts::PI).cos(),
            ),
        ]
    }

    #[test]
    fn hamiltonian_at_rest_and_spectrum() {
        let m = Mass::new(1.5).unwrap();
        let b = gamma_basis();
        assert!(dirac_hamiltonian(&Vector3::zeros(), m).approx_eq(&(b.gamma[0] * 1.5), 0.0));
        let q = Vector3::new(0.7, -1.1, 2.0);
        let h = dirac_hamiltonian(&q, m);
        assert!(h.is_hermitian(1e-15));
        let e = (1.5f64.powi(2) + q.norm_squared()).sqrt();
        let mut eig: Vec<f64> = SymmetricEigen::new(h.into_inner())
            .eigenvalues
            .iter()
            .copied()
            .collect();
        eig.sort_by(f64::total_cmp);
        for (got, want) in eig.iter().zip([-e, -e, e, e]) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn covariant_spin_at_rest_is_sigma() {
        let k = FourMomentum::at_rest(Mass::new(1.0).unwrap());
        assert!(covariant_spin(&k).max_abs_diff(&rest_spin()) < 1e-15);
    }

    #[test]
    fn closed_form_matches_conjugation_with_factor_two() {
        for p in sample_momenta() {
            assert!(covariant_spin_closed_form(&p).max_abs_diff(&covariant_spin(&p)) < 1e-12);
        }
    }

    #[test]
    fn covariant_spin_eigen_equations() {
        for p in sample_momenta() {
            let sz = *covariant_spin(&p).z();
            for sign in [EnergySign::Positive, EnergySign::Negative] {
                for spin in SpinLabel::BOTH {
                    let psi = *basis_spinor(&p, spin, sign, Representation::Covariant).components();
                    let r = (sz * psi - psi * C64::from(spin.factor())).camax();
                    assert!(r < 1e-12, "{r}");
                }
            }
        }
    }

    #[test]
    fn covariant_spin_is_pseudo_hermitian_not_hermitian() {
        let p = mom(1.0, 1.0, 2.0, 0.5);
        let s = covariant_spin(&p);
        assert!(s.pseudo_hermiticity_residual() < 1e-12);
        assert!(s.hermiticity_residual() > 0.1);
        assert!(s.closure_residual(2.0) < 1e-11);
    }

    #[test]
    fn fw_mean_spin_examples() {
        let m = Mass::new(1.0).unwrap();
        assert!(fw_mean_spin(&Vector3::zeros(), m).max_abs_diff(&rest_spin()) < 1e-15);
        let q = Vector3::new(-2.0, 0.5, 1.5);
        let closed = fw_mean_spin(&q, m);
        assert!(closed.max_abs_diff(&fw_mean_spin_conjugated(&q, m)) < 1e-13);
        assert!(closed.hermiticity_residual() < 1e-14);
        let u = fw_unitary(&q, m);
        for i in 0..3 {
            let back = u * closed.components[i] * 0.5 * u.dagger();
            assert!(back.approx_eq(&(gamma_basis().sigma[i] * 0.5), 1e-12));
        }
        let h = dirac_hamiltonian(&q, m);
        for c in closed.components {
            assert!(relative_commutator(&c, &h) < 1e-14);
        }
    }

    #[test]
    fn literal_sigma_cross_term_is_not_hermitian() {
        // Σ in the middle term instead of α: anti-Hermitian cross term
        let m = Mass::new(1.0).unwrap();
        let q = Vector3::new(0.3_f64, 0.4, -1.2);
        let b = gamma_basis();
        let e = (1.0 + q.norm_squared()).sqrt();
        let sxq = sigma_cross(&q, &b.sigma);
        let literal = b.gamma[0] * sxq[0] * (I * (1.0 / e));
        assert!(literal.dagger().approx_eq(&-literal, 1e-15));
        assert!(literal.max_abs() > 0.1);
        assert!(fw_mean_spin(&q, m).hermiticity_residual() < 1e-14);
    }

    #[test]
    fn pauli_lubanski_rest_calibration() {
        let m = 1.7;
        let k = FourMomentum::at_rest(Mass::new(m).unwrap());
        let w = pauli_lubanski(&k);
        let b = gamma_basis();
        assert!(w.lower[0].max_abs() < 1e-15);
        for i in 0..3 {
            // Σ_i/2 = -W_i/m
            assert!((w.lower[i + 1] * (-1.0 / m)).approx_eq(&(b.sigma[i] * 0.5), 1e-14));
        }
    }

    #[test]
    fn pauli_lubanski_casimir_and_transversality() {
        for p in sample_momenta() {
            let w = pauli_lubanski(&p);
            let target = OperatorMatrix::identity() * (-0.75 * p.m() * p.m());
            assert!(w.casimir().max_abs_diff(&target) < 1e-11 * p.energy().powi(2));
            assert!(w.transversality().max_abs() < 1e-12 * p.energy().powi(2));
            let wm = pauli_lubanski_moving(&p);
            assert!(wm.casimir().max_abs_diff(&target) < 1e-9 * p.energy().powi(2));
        }
    }

    #[test]
    fn linear_candidate_is_half_covariant_spin() {
        for p in sample_momenta() {
            let cand = pauli_lubanski(&p).linear_spin_candidate();
            assert!(cand.max_abs_diff(&covariant_spin(&p).scaled(0.5)) < 1e-12);
        }
    }

    #[test]
    fn ryder_variant_selection() {
        let momenta = sample_momenta();
        let (best, residuals) = select_chirality_variant(&momenta);
        assert_eq!(best, ChiralityVariant::Opposite);
        for (v, r) in residuals {
            match v {
                ChiralityVariant::Opposite => assert!(r < 1e-10, "{r}"),
                _ => assert!(r > 0.1, "{v:?} {r}"),
            }
        }
    }

    #[test]
    fn ryder_xy_close_under_angular_momentum() {
        let p = mom(1.0, 0.4, -0.7, 1.1);
        let (x, y) = ryder_tensors(&pauli_lubanski_moving(&p));
        let xs = SpinOperatorTriple::new(spatial_dual(&x), Construction::Ryder);
        let ys = SpinOperatorTriple::new(spatial_dual(&y), Construction::Ryder);
        assert!(xs.closure_residual(1.0) < 1e-11);
        assert!(ys.closure_residual(1.0) < 1e-11);
    }

    #[test]
    fn ryder_with_rest_tensor_gives_plain_sigma() {
        let p = mom(1.0, 2.0, -1.0, 0.5);
        let half = ryder_half_spin(&pauli_lubanski(&p), ChiralityVariant::Opposite);
        for i in 0..3 {
            assert!(half[i].approx_eq(&(gamma_basis().sigma[i] * 0.5), 1e-12));
        }
    }

    #[test]
    fn classical_spin_decomposition() {
        let k = FourMomentum::at_rest(Mass::new(1.0).unwrap());
        assert!(classical_spin(&k).max_abs_diff(&rest_spin()) < 1e-15);
        let g0 = gamma_basis().gamma[0];
        for p in sample_momenta() {
            let diff: [OperatorMatrix; 3] = std::array::from_fn(|i| {
                covariant_spin(&p).components[i] - classical_spin(&p).components[i]
            });
            for (d, q) in diff.iter().zip(quantum_spin_term(&p).components) {
                assert!(d.approx_eq(&q, 1e-12));
                assert!(d.block(0, 0).camax() < 1e-12 && d.block(1, 1).camax() < 1e-12);
                assert!(d.anticommutator(&g0).max_abs() < 1e-12);
            }
        }
    }

    #[test]
    fn equivalence_for_basis_spinors() {
        for p in sample_momenta() {
            for idx in 0..4 {
                let mut amps = Vector4::zeros();
                amps[idx] = C64::from(1.0);
                let sides = equivalence_sides(&p, &amps);
                assert!(sides.max_residual() < 1e-12, "{sides:?}");
            }
        }
    }

    #[test]
    fn noncommutation_of_covariant_spin() {
        let p = mom(1.0, 1.0, 0.5, -2.0);
        let h = dirac_hamiltonian(p.p3(), p.mass());
        let worst = covariant_spin(&p)
            .components
            .iter()
            .map(|c| relative_commutator(c, &h))
            .fold(0.0, f64::max);
        assert!(worst > 1e-3);
        let k = FourMomentum::at_rest(Mass::new(1.0).unwrap());
        let h0 = dirac_hamiltonian(k.p3(), k.mass());
        for c in covariant_spin(&k).components {
            assert!(c.commutator(&h0).max_abs() < 1e-15);
        }
    }
}
