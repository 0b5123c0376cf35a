//! Discrete spin-momentum superpositions in the FW representation, their
//! reduced spin density matrices and von Neumann entropies.
//!
//! Momentum labels are orthonormal, so the partial trace over momentum is the
//! plain sum of per-term outer products of the amplitude four-vectors
//! `(a₊, a₋, b₊, b₋)`.

use nalgebra::{DMatrix, Matrix2, SymmetricEigen, Vector4};
use rayon::prelude::*;

use crate::clifford::C64;
use crate::error::{Error, Result};
use crate::kinematics::{
    apply_lorentz, boost_z, make_momentum, perp_momentum, FourMomentum, LorentzMatrix, Mass,
    SphericalMomentum,
};
use crate::transport::{ab_params, transport_fw};

/// Normalization tolerance for freshly built states.
pub const STATE_TOL: f64 = 1e-12;
/// Normalization tolerance after a transport.
pub const BOOSTED_STATE_TOL: f64 = 1e-10;
/// Hermiticity, trace and spectrum tolerance for reduced densities.
pub const DENSITY_TOL: f64 = 1e-12;
/// Negative-energy amplitudes below this are treated as absent.
pub const NEGATIVE_SECTOR_CUTOFF: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MomentumTerm {
    pub momentum: FourMomentum,
    /// `(a₊, a₋, b₊, b₋)`.
    pub amplitudes: Vector4<C64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MomentumSuperposition {
    terms: Vec<MomentumTerm>,
}

fn total_norm(terms: &[MomentumTerm]) -> f64 {
    terms.iter().map(|t| t.amplitudes.norm_squared()).sum()
}

impl MomentumSuperposition {
    pub fn new(terms: Vec<MomentumTerm>) -> Result<Self> {
        Self::with_tolerance(terms, STATE_TOL)
    }

    fn with_tolerance(terms: Vec<MomentumTerm>, tol: f64) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::EmptyState);
        }
        for (i, a) in terms.iter().enumerate() {
            for b in &terms[i + 1..] {
                if a.momentum.p3() == b.momentum.p3() {
                    return Err(Error::DuplicateMomentum);
                }
            }
        }
        let norm = total_norm(&terms);
        if !norm.is_finite() || (norm - 1.0).abs() > tol {
            return Err(Error::UnnormalizedState { norm });
        }
        Ok(Self { terms })
    }

    pub fn terms(&self) -> &[MomentumTerm] {
        &self.terms
    }

    pub fn norm(&self) -> f64 {
        total_norm(&self.terms)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StateVariant {
    /// Both terms spin up.
    Psi1,
    /// Spin up at `p`, spin down at `p_⊥`.
    Psi2,
}

impl StateVariant {
    pub const BOTH: [StateVariant; 2] = [StateVariant::Psi1, StateVariant::Psi2];
}

/// Equal-weight superposition of `p` and `p_⊥` with positive energy.
pub fn make_state(
    variant: StateVariant,
    mass: Mass,
    sph: &SphericalMomentum,
) -> MomentumSuperposition {
    let w = C64::from(std::f64::consts::FRAC_1_SQRT_2);
    let zero = C64::from(0.0);
    let second = match variant {
        StateVariant::Psi1 => Vector4::new(w, zero, zero, zero),
        StateVariant::Psi2 => Vector4::new(zero, w, zero, zero),
    };
    let m = mass.value();
    let terms = vec![
        MomentumTerm {
            momentum: make_momentum(m, sph).expect("validated mass"),
            amplitudes: Vector4::new(w, zero, zero, zero),
        },
        MomentumTerm {
            momentum: perp_momentum(m, sph).expect("validated mass"),
            amplitudes: second,
        },
    ];
    MomentumSuperposition { terms }
}

/// Maps each term to `Λp` with amplitudes multiplied by the FW transport.
pub fn boost_state(
    state: &MomentumSuperposition,
    l: &LorentzMatrix,
) -> Result<MomentumSuperposition> {
    let terms = state
        .terms
        .iter()
        .map(|t| MomentumTerm {
            momentum: apply_lorentz(l, &t.momentum),
            amplitudes: transport_fw(l, &t.momentum).entries.matrix() * t.amplitudes,
        })
        .collect();
    MomentumSuperposition::with_tolerance(terms, BOOSTED_STATE_TOL)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Subspace {
    PositiveEnergy,
    Full,
}

/// A validated spin density matrix, 2x2 on the positive-energy subspace or
/// 4x4 on the full spinor space.
#[derive(Clone, Debug, PartialEq)]
pub struct ReducedSpinDensity {
    matrix: DMatrix<C64>,
    subspace: Subspace,
}

impl ReducedSpinDensity {
    pub fn new(matrix: DMatrix<C64>) -> Result<Self> {
        let subspace = match matrix.shape() {
            (2, 2) => Subspace::PositiveEnergy,
            (4, 4) => Subspace::Full,
            (r, c) => return Err(Error::InvalidDensity(format!("shape {r}x{c}"))),
        };
        if !matrix.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            return Err(Error::InvalidDensity("non-finite entry".into()));
        }
        let herm = (&matrix - matrix.adjoint()).camax();
        if herm > DENSITY_TOL {
            return Err(Error::InvalidDensity(format!(
                "hermiticity residual {herm:e}"
            )));
        }
        let rho = Self { matrix, subspace };
        let trace = rho.trace();
        if (trace - 1.0).abs() > DENSITY_TOL {
            return Err(Error::InvalidDensity(format!("trace {trace}")));
        }
        for lambda in rho.eigenvalues() {
            if !(-DENSITY_TOL..=1.0 + DENSITY_TOL).contains(&lambda) {
                return Err(Error::InvalidDensity(format!("eigenvalue {lambda}")));
            }
        }
        Ok(rho)
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    pub fn subspace(&self) -> Subspace {
        self.subspace
    }

    pub fn trace(&self) -> f64 {
        self.matrix.diagonal().iter().map(|z| z.re).sum()
    }

    /// Eigenvalues in ascending order. The 2x2 case uses `t/2 ± r`.
    pub fn eigenvalues(&self) -> Vec<f64> {
        match self.subspace {
            Subspace::PositiveEnergy => {
                let m = &self.matrix;
                let (a, d) = (m[(0, 0)].re, m[(1, 1)].re);
                let off = (m[(0, 1)] + m[(1, 0)].conj()) * 0.5;
                let r = (0.25 * (a - d) * (a - d) + off.norm_sqr()).sqrt();
                let half = 0.5 * (a + d);
                vec![half - r, half + r]
            }
            Subspace::Full => {
                let mut ev: Vec<f64> = SymmetricEigen::new(self.matrix.clone())
                    .eigenvalues
                    .iter()
                    .copied()
                    .collect();
                ev.sort_by(f64::total_cmp);
                ev
            }
        }
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        if self.matrix.shape() != other.matrix.shape() {
            return f64::INFINITY;
        }
        (&self.matrix - &other.matrix).camax()
    }
}

/// `Σ_p ψ̃(p) ψ̃†(p)`, reduced to the positive-energy block when no term
/// carries negative-energy amplitudes.
pub fn reduce_density(state: &MomentumSuperposition) -> Result<ReducedSpinDensity> {
    let norm = state.norm();
    if (norm - 1.0).abs() > BOOSTED_STATE_TOL {
        return Err(Error::UnnormalizedState { norm });
    }
    let full: nalgebra::Matrix4<C64> = state
        .terms
        .iter()
        .map(|t| t.amplitudes * t.amplitudes.adjoint())
        .sum();
    let negative = state
        .terms
        .iter()
        .flat_map(|t| [t.amplitudes[2], t.amplitudes[3]])
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    let matrix = if negative <= NEGATIVE_SECTOR_CUTOFF {
        DMatrix::from_iterator(2, 2, full.fixed_view::<2, 2>(0, 0).iter().copied())
    } else {
        DMatrix::from_iterator(4, 4, full.iter().copied())
    };
    ReducedSpinDensity::new(matrix)
}

/// The transformed densities for a boost along `z`, from the closed-form
/// Wigner parameters and the azimuth `φ`.
pub fn closed_form_density(
    variant: StateVariant,
    mass: Mass,
    sph: &SphericalMomentum,
    xi: f64,
) -> Result<ReducedSpinDensity> {
    let ab = ab_params(mass, sph, xi);
    let phase = C64::from_polar(1.0, -sph.phi());
    let (d0, d1, off) = match variant {
        StateVariant::Psi1 => (
            ab.a1 * ab.a1 + ab.a2 * ab.a2,
            ab.b1 * ab.b1 + ab.b2 * ab.b2,
            -(ab.a1 * ab.b1 + ab.a2 * ab.b2),
        ),
        StateVariant::Psi2 => (
            ab.a1 * ab.a1 + ab.b2 * ab.b2,
            ab.b1 * ab.b1 + ab.a2 * ab.a2,
            ab.a2 * ab.b2 - ab.a1 * ab.b1,
        ),
    };
    let m = Matrix2::new(
        C64::from(d0),
        phase * off,
        phase.conj() * off,
        C64::from(d1),
    ) * C64::from(0.5);
    ReducedSpinDensity::new(DMatrix::from_iterator(2, 2, m.iter().copied()))
}

/// The same density by transporting the state and tracing out momentum.
pub fn transported_density(
    variant: StateVariant,
    mass: Mass,
    sph: &SphericalMomentum,
    xi: f64,
) -> Result<ReducedSpinDensity> {
    reduce_density(&boost_state(&make_state(variant, mass, sph), &boost_z(xi))?)
}

/// `-Σ λ ln λ` in nats, with `0 ln 0 = 0`. Eigenvalues within rounding of 0
/// or 1 contribute nothing.
pub fn von_neumann_entropy(rho: &ReducedSpinDensity) -> Result<f64> {
    let trace = rho.trace();
    if (trace - 1.0).abs() > DENSITY_TOL {
        return Err(Error::InvalidDensity(format!("trace {trace}")));
    }
    let mut s = 0.0;
    for lambda in rho.eigenvalues() {
        if lambda < -1e-10 {
            return Err(Error::InvalidDensity(format!("eigenvalue {lambda}")));
        }
        if lambda > 0.0 && lambda < 1.0 {
            s -= lambda * lambda.ln();
        }
    }
    Ok(s)
}

/// Uniform grid with `steps` points from `lo` to `hi` inclusive.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GridRange {
    lo: f64,
    hi: f64,
    steps: usize,
}

impl GridRange {
    pub fn new(lo: f64, hi: f64, steps: usize) -> Result<Self> {
        if steps < 2 {
            return Err(Error::InvalidGrid(format!(
                "need at least 2 steps, got {steps}"
            )));
        }
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(Error::InvalidGrid(format!("bounds {lo}..{hi}")));
        }
        Ok(Self { lo, hi, steps })
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn point(&self, i: usize) -> f64 {
        if i + 1 == self.steps {
            self.hi
        } else {
            self.lo + (self.hi - self.lo) * (i as f64) / ((self.steps - 1) as f64)
        }
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.steps).map(|i| self.point(i)).collect()
    }
}

/// The swept variable and the value held fixed.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SweepAxis {
    /// Sweep `ξ` at fixed polar angle.
    Rapidity { theta: f64 },
    /// Sweep `θ` at fixed rapidity.
    Polar { xi: f64 },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRow {
    pub x: f64,
    pub entropy_psi1: f64,
    pub entropy_psi2: f64,
}

/// Closed-form entropies of both states along the grid, in grid order.
pub fn sweep(
    mass: Mass,
    magnitude: f64,
    phi: f64,
    axis: SweepAxis,
    range: &GridRange,
) -> Result<Vec<SweepRow>> {
    let point = |x: f64| -> Result<SweepRow> {
        let (theta, xi) = match axis {
            SweepAxis::Rapidity { theta } => (theta, x),
            SweepAxis::Polar { xi } => (x, xi),
        };
        let sph = SphericalMomentum::new(magnitude, theta, phi)?;
        let s1 = von_neumann_entropy(&closed_form_density(StateVariant::Psi1, mass, &sph, xi)?)?;
        let s2 = von_neumann_entropy(&closed_form_density(StateVariant::Psi2, mass, &sph, xi)?)?;
        Ok(SweepRow {
            x,
            entropy_psi1: s1,
            entropy_psi2: s2,
        })
    };
    range.points().into_par_iter().map(point).collect()
}
