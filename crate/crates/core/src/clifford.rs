//! Dirac matrices in the standard representation, the rest-frame spin tensor
//! and the Levi-Civita symbols.
//!
//! Greek indices run `0..4` with `0` the time component. Spatial (Latin)
//! indices are stored zero-based, so `sigma[0]` is the x component.

use std::ops::{Add, Mul, Neg, Sub};
use std::sync::OnceLock;

use nalgebra::{Matrix2, Matrix4, RowVector4, Vector4};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Tolerance for identities between products of exact `0, ±1, ±i` entries.
pub const ALGEBRA_TOL: f64 = 1e-14;

/// A 4x4 complex matrix acting on Dirac spinor space.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OperatorMatrix(Matrix4<C64>);

impl OperatorMatrix {
    pub fn from_matrix(m: Matrix4<C64>) -> Self {
        debug_assert!(m.iter().all(|z| z.re.is_finite() && z.im.is_finite()));
        Self(m)
    }

    pub fn zeros() -> Self {
        Self(Matrix4::zeros())
    }

    pub fn identity() -> Self {
        Self(Matrix4::identity())
    }

    /// Builds `[[a, b], [c, d]]` from 2x2 blocks.
    pub fn from_blocks(
        a: &Matrix2<C64>,
        b: &Matrix2<C64>,
        c: &Matrix2<C64>,
        d: &Matrix2<C64>,
    ) -> Self {
        let mut m = Matrix4::zeros();
        m.fixed_view_mut::<2, 2>(0, 0).copy_from(a);
        m.fixed_view_mut::<2, 2>(0, 2).copy_from(b);
        m.fixed_view_mut::<2, 2>(2, 0).copy_from(c);
        m.fixed_view_mut::<2, 2>(2, 2).copy_from(d);
        Self(m)
    }

    pub fn diagonal(d: [C64; 4]) -> Self {
        Self(Matrix4::from_diagonal(&Vector4::from(d)))
    }

    pub fn matrix(&self) -> &Matrix4<C64> {
        &self.0
    }

    pub fn into_inner(self) -> Matrix4<C64> {
        self.0
    }

    pub fn entry(&self, row: usize, col: usize) -> C64 {
        self.0[(row, col)]
    }

    /// 2x2 block at block coordinates `(row, col)`, each in `0..2`.
    pub fn block(&self, row: usize, col: usize) -> Matrix2<C64> {
        self.0.fixed_view::<2, 2>(2 * row, 2 * col).into_owned()
    }

    pub fn dagger(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn inverse(&self) -> Option<Self> {
        self.0.try_inverse().map(Self)
    }

    pub fn trace(&self) -> C64 {
        self.0.trace()
    }

    pub fn commutator(&self, other: &Self) -> Self {
        Self(self.0 * other.0 - other.0 * self.0)
    }

    pub fn anticommutator(&self, other: &Self) -> Self {
        Self(self.0 * other.0 + other.0 * self.0)
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        (*self - *other).max_abs()
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.max_abs_diff(other) <= tol
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|z| z.re.is_finite() && z.im.is_finite())
    }

    pub fn hermiticity_residual(&self) -> f64 {
        self.max_abs_diff(&self.dagger())
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_residual() <= tol
    }

    /// `max |M M† - 1|`.
    pub fn unitarity_residual(&self) -> f64 {
        (*self * self.dagger()).max_abs_diff(&Self::identity())
    }

    pub fn scale(&self, s: C64) -> Self {
        Self(self.0 * s)
    }

    pub fn apply(&self, v: &Vector4<C64>) -> Vector4<C64> {
        self.0 * v
    }
}

impl Default for OperatorMatrix {
    fn default() -> Self {
        Self::zeros()
    }
}

macro_rules! impl_binop {
    ($tr:ident, $method:ident, $op:tt) => {
        impl $tr for OperatorMatrix {
            type Output = OperatorMatrix;
            fn $method(self, rhs: OperatorMatrix) -> OperatorMatrix {
                OperatorMatrix(self.0 $op rhs.0)
            }
        }
        impl<'a> $tr<&'a OperatorMatrix> for &'a OperatorMatrix {
            type Output = OperatorMatrix;
            fn $method(self, rhs: &'a OperatorMatrix) -> OperatorMatrix {
                OperatorMatrix(self.0 $op rhs.0)
            }
        }
    };
}

impl_binop!(Add, add, +);
impl_binop!(Sub, sub, -);
impl_binop!(Mul, mul, *);

impl Neg for OperatorMatrix {
    type Output = OperatorMatrix;
    fn neg(self) -> OperatorMatrix {
        OperatorMatrix(-self.0)
    }
}

impl Mul<f64> for OperatorMatrix {
    type Output = OperatorMatrix;
    fn mul(self, rhs: f64) -> OperatorMatrix {
        OperatorMatrix(self.0 * C64::new(rhs, 0.0))
    }
}

impl Mul<OperatorMatrix> for f64 {
    type Output = OperatorMatrix;
    fn mul(self, rhs: OperatorMatrix) -> OperatorMatrix {
        rhs * self
    }
}

impl Mul<C64> for OperatorMatrix {
    type Output = OperatorMatrix;
    fn mul(self, rhs: C64) -> OperatorMatrix {
        OperatorMatrix(self.0 * rhs)
    }
}

impl Mul<OperatorMatrix> for C64 {
    type Output = OperatorMatrix;
    fn mul(self, rhs: OperatorMatrix) -> OperatorMatrix {
        rhs * self
    }
}

impl Mul<Vector4<C64>> for OperatorMatrix {
    type Output = Vector4<C64>;
    fn mul(self, rhs: Vector4<C64>) -> Vector4<C64> {
        self.0 * rhs
    }
}

impl<'a> Mul<&'a Vector4<C64>> for &'a OperatorMatrix {
    type Output = Vector4<C64>;
    fn mul(self, rhs: &'a Vector4<C64>) -> Vector4<C64> {
        self.0 * rhs
    }
}

impl Mul<OperatorMatrix> for RowVector4<C64> {
    type Output = RowVector4<C64>;
    fn mul(self, rhs: OperatorMatrix) -> RowVector4<C64> {
        self * rhs.0
    }
}

impl std::iter::Sum for OperatorMatrix {
    fn sum<It: Iterator<Item = OperatorMatrix>>(iter: It) -> Self {
        iter.fold(OperatorMatrix::zeros(), |acc, m| acc + m)
    }
}

/// The Pauli matrices `(σ_x, σ_y, σ_z)`.
pub fn pauli() -> [Matrix2<C64>; 3] {
    [
        Matrix2::new(ZERO, ONE, ONE, ZERO),
        Matrix2::new(ZERO, -I, I, ZERO),
        Matrix2::new(ONE, ZERO, ZERO, -ONE),
    ]
}

/// The Minkowski metric, fixed to `diag(+, -, -, -)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MetricSignature {
    diagonal: [i8; 4],
}

pub const METRIC: MetricSignature = MetricSignature {
    diagonal: [1, -1, -1, -1],
};

impl MetricSignature {
    pub fn diagonal(&self) -> [i8; 4] {
        self.diagonal
    }

    /// `η_{μμ}` as a float.
    pub fn sign(&self, mu: usize) -> f64 {
        f64::from(self.diagonal[mu])
    }
}

/// The standard-representation gamma matrices and derived spin matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct GammaBasis {
    /// `γ^0 .. γ^3` (upper index).
    pub gamma: [OperatorMatrix; 4],
    /// `γ_5 = i γ^0 γ^1 γ^2 γ^3`.
    pub gamma5: OperatorMatrix,
    /// `Σ_i = diag(σ_i, σ_i)`.
    pub sigma: [OperatorMatrix; 3],
    /// `α_i = γ^0 γ^i`.
    pub alpha: [OperatorMatrix; 3],
    pub identity: OperatorMatrix,
}

impl GammaBasis {
    pub fn standard() -> Self {
        let s = pauli();
        let id2 = Matrix2::<C64>::identity();
        let z2 = Matrix2::<C64>::zeros();
        let g0 = OperatorMatrix::from_blocks(&id2, &z2, &z2, &-id2);
        let gi = |k: usize| OperatorMatrix::from_blocks(&z2, &s[k], &-s[k], &z2);
        let gamma = [g0, gi(0), gi(1), gi(2)];
        let gamma5 = (gamma[0] * gamma[1] * gamma[2] * gamma[3]) * I;
        let sigma = [0, 1, 2].map(|k| OperatorMatrix::from_blocks(&s[k], &z2, &z2, &s[k]));
        let alpha = [0, 1, 2].map(|k| gamma[0] * gamma[k + 1]);
        Self {
            gamma,
            gamma5,
            sigma,
            alpha,
            identity: OperatorMatrix::identity(),
        }
    }

    /// `max_{μν} |{γ^μ, γ^ν} - 2 η^{μν}|`.
    pub fn clifford_residual(&self) -> f64 {
        let mut worst = 0.0_f64;
        for mu in 0..4 {
            for nu in 0..4 {
                let expected = if mu == nu {
                    self.identity * (2.0 * METRIC.sign(mu))
                } else {
                    OperatorMatrix::zeros()
                };
                let r = self.gamma[mu]
                    .anticommutator(&self.gamma[nu])
                    .max_abs_diff(&expected);
                worst = worst.max(r);
            }
        }
        worst
    }

    /// `γ^i q_i` with the lowered spatial index `q_i = -q^i`.
    pub fn slash_spatial(&self, q: &nalgebra::Vector3<f64>) -> OperatorMatrix {
        (0..3).map(|i| self.gamma[i + 1] * (-q[i])).sum()
    }

    /// `γ^μ p_μ` for a contravariant four-vector `p^μ`.
    pub fn slash(&self, p: &[f64; 4]) -> OperatorMatrix {
        (0..4)
            .map(|mu| self.gamma[mu] * (METRIC.sign(mu) * p[mu]))
            .sum()
    }
}

/// Shared standard basis.
pub fn gamma_basis() -> &'static GammaBasis {
    static BASIS: OnceLock<GammaBasis> = OnceLock::new();
    BASIS.get_or_init(GammaBasis::standard)
}

fn check_greek(index: usize) -> Result<()> {
    if index < 4 {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange {
            index,
            max_exclusive: 4,
        })
    }
}

/// `Σ_0^{μν} = (i/2)[γ^μ, γ^ν]`.
pub fn spin_tensor_rest(mu: usize, nu: usize) -> Result<OperatorMatrix> {
    check_greek(mu)?;
    check_greek(nu)?;
    let g = &gamma_basis().gamma;
    Ok(g[mu].commutator(&g[nu]) * C64::new(0.0, 0.5))
}

/// All sixteen components of the rest-frame spin tensor.
pub fn spin_tensor_rest_all() -> [[OperatorMatrix; 4]; 4] {
    let g = &gamma_basis().gamma;
    std::array::from_fn(|mu| {
        std::array::from_fn(|nu| g[mu].commutator(&g[nu]) * C64::new(0.0, 0.5))
    })
}

/// Whether a Levi-Civita symbol carries upper or lower indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IndexPosition {
    Upper,
    Lower,
}

fn permutation_sign<const N: usize>(idx: [usize; N]) -> i8 {
    for a in 0..N {
        for b in (a + 1)..N {
            if idx[a] == idx[b] {
                return 0;
            }
        }
    }
    let mut sign = 1;
    for a in 0..N {
        for b in (a + 1)..N {
            if idx[a] > idx[b] {
                sign = -sign;
            }
        }
    }
    sign
}

/// Four-index Levi-Civita symbol with `ε^{0123} = +1`; lowering all four
/// indices with the metric gives `ε_{0123} = -1`.
pub fn levi_civita4(idx: [usize; 4], position: IndexPosition) -> Result<i8> {
    for &i in &idx {
        check_greek(i)?;
    }
    let upper = permutation_sign(idx);
    Ok(match position {
        IndexPosition::Upper => upper,
        IndexPosition::Lower => -upper,
    })
}

/// Three-index Levi-Civita symbol over zero-based spatial indices.
pub fn levi_civita3(i: usize, j: usize, k: usize) -> i8 {
    debug_assert!(i < 3 && j < 3 && k < 3);
    permutation_sign([i, j, k])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma0_is_diag() {
        let g0 = gamma_basis().gamma[0];
        assert_eq!(g0, OperatorMatrix::diagonal([ONE, ONE, -ONE, -ONE]));
    }

    #[test]
    fn gamma5_squares_to_identity() {
        let b = gamma_basis();
        assert!((b.gamma5 * b.gamma5).approx_eq(&b.identity, ALGEBRA_TOL));
    }

    #[test]
    fn sigma_z_is_diag() {
        let b = gamma_basis();
        assert_eq!(b.sigma[2], OperatorMatrix::diagonal([ONE, -ONE, ONE, -ONE]));
    }

    #[test]
    fn clifford_relation_exact() {
        assert!(gamma_basis().clifford_residual() < ALGEBRA_TOL);
    }

    #[test]
    fn hermiticity_pattern() {
        let b = gamma_basis();
        assert!(b.gamma[0].is_hermitian(0.0));
        for k in 1..4 {
            assert!(b.gamma[k].dagger().approx_eq(&-b.gamma[k], 0.0));
        }
        assert!(b.gamma5.is_hermitian(0.0));
        for mu in 0..4 {
            let ac = b.gamma5.anticommutator(&b.gamma[mu]);
            assert!(ac.max_abs() < ALGEBRA_TOL);
        }
    }

    #[test]
    fn sigma_product_rule() {
        let b = gamma_basis();
        for i in 0..3 {
            for j in 0..3 {
                let mut expected = if i == j {
                    b.identity
                } else {
                    OperatorMatrix::zeros()
                };
                for k in 0..3 {
                    let e = f64::from(levi_civita3(i, j, k));
                    expected = expected + b.sigma[k] * (I * e);
                }
                assert!((b.sigma[i] * b.sigma[j]).approx_eq(&expected, ALGEBRA_TOL));
            }
        }
    }

    #[test]
    fn spin_tensor_examples() {
        let b = gamma_basis();
        assert!(spin_tensor_rest(1, 1).unwrap().max_abs() == 0.0);
        assert!(spin_tensor_rest(1, 2)
            .unwrap()
            .approx_eq(&b.sigma[2], ALGEBRA_TOL));
        assert!(spin_tensor_rest(2, 1)
            .unwrap()
            .approx_eq(&-b.sigma[2], ALGEBRA_TOL));
        assert_eq!(
            spin_tensor_rest(4, 0),
            Err(Error::IndexOutOfRange {
                index: 4,
                max_exclusive: 4
            })
        );
    }

    #[test]
    fn spin_tensor_spatial_is_levi_civita_sigma() {
        let b = gamma_basis();
        for i in 0..3 {
            for j in 0..3 {
                let mut expected = OperatorMatrix::zeros();
                for k in 0..3 {
                    expected = expected + b.sigma[k] * f64::from(levi_civita3(i, j, k));
                }
                let t = spin_tensor_rest(i + 1, j + 1).unwrap();
                assert!(t.approx_eq(&expected, ALGEBRA_TOL));
            }
        }
    }

    #[test]
    fn levi_civita_examples() {
        assert_eq!(levi_civita4([0, 1, 2, 3], IndexPosition::Upper), Ok(1));
        assert_eq!(levi_civita4([0, 1, 2, 3], IndexPosition::Lower), Ok(-1));
        assert_eq!(levi_civita4([0, 1, 2, 2], IndexPosition::Upper), Ok(0));
        assert_eq!(levi_civita4([1, 0, 2, 3], IndexPosition::Upper), Ok(-1));
        assert!(levi_civita4([0, 1, 2, 7], IndexPosition::Upper).is_err());
        assert_eq!(levi_civita3(0, 1, 2), 1);
        assert_eq!(levi_civita3(2, 1, 0), -1);
    }

    #[test]
    fn lowered_epsilon_matches_metric_lowering() {
        // ε_{μνλδ} = η_{μμ'}η_{νν'}η_{λλ'}η_{δδ'} ε^{μ'ν'λ'δ'} for diagonal η
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        let up = levi_civita4([a, b, c, d], IndexPosition::Upper).unwrap();
                        let lo = levi_civita4([a, b, c, d], IndexPosition::Lower).unwrap();
                        let f = METRIC.sign(a) * METRIC.sign(b) * METRIC.sign(c) * METRIC.sign(d);
                        assert_eq!(f64::from(lo), f * f64::from(up));
                    }
                }
            }
        }
    }
}
