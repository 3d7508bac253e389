//! Named qubit channels with closed-form A matrices, and a seeded random channel
//! generator.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::forms::{kraus_to_a, AForm, BForm, KrausSet};
use crate::forms::{realign_a_to_b, realign_b_to_a};
use crate::linalg::{norm3, BlochVector, ComplexMatrix};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// A channel description, either one of the named qubit maps or raw data.
#[derive(Debug, Clone, PartialEq)]
pub enum ChannelSpec {
    /// `U = exp(i (sigma . axis) angle / 2)`.
    Unitary {
        axis: [f64; 3],
        angle: f64,
    },
    /// Sends every input to the state with Bloch vector `p0`.
    Pin {
        p0: [f64; 3],
    },
    Transpose,
    /// `(p1, p2, p3) -> (p1, p2, 0)`.
    EquatorialProjection,
    /// Identity with probability `p`, `sigma_1` with probability `1 - p`.
    BitFlip {
        p: f64,
    },
    /// Identity with probability `p`, `sigma_3` with probability `1 - p`.
    PhaseFlip {
        p: f64,
    },
    RawA(ComplexMatrix),
    RawKraus(Vec<ComplexMatrix>),
}

impl ChannelSpec {
    /// Short machine-friendly name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            ChannelSpec::Unitary { .. } => "unitary",
            ChannelSpec::Pin { .. } => "pin",
            ChannelSpec::Transpose => "transpose",
            ChannelSpec::EquatorialProjection => "equatorial_projection",
            ChannelSpec::BitFlip { .. } => "bit_flip",
            ChannelSpec::PhaseFlip { .. } => "phase_flip",
            ChannelSpec::RawA(_) => "raw_a",
            ChannelSpec::RawKraus(_) => "raw_kraus",
        }
    }

    /// Hilbert-space dimension, or `None` when raw data has an unusable shape.
    pub fn dim(&self) -> Option<usize> {
        match self {
            ChannelSpec::RawA(m) => AForm::new(m.clone()).ok().map(|a| a.dim()),
            ChannelSpec::RawKraus(ops) => ops.first().map(ComplexMatrix::rows),
            _ => Some(2),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            ChannelSpec::Unitary { axis, angle } => format!(
                "unitary rotation about ({}, {}, {}) by {angle} rad",
                axis[0], axis[1], axis[2]
            ),
            ChannelSpec::Pin { p0 } => {
                format!(
                    "pin map onto Bloch vector ({}, {}, {})",
                    p0[0], p0[1], p0[2]
                )
            }
            ChannelSpec::Transpose => "transpose map".into(),
            ChannelSpec::EquatorialProjection => "projection onto the equatorial plane".into(),
            ChannelSpec::BitFlip { p } => format!("bit flip, p = {p}"),
            ChannelSpec::PhaseFlip { p } => format!("phase flip, p = {p}"),
            ChannelSpec::RawA(m) => format!("raw A-form ({}x{})", m.rows(), m.cols()),
            ChannelSpec::RawKraus(ops) => format!("raw Kraus set ({} operators)", ops.len()),
        }
    }

    /// Builds the A-form. Named channels use closed forms; raw Kraus sets go through
    /// [`kraus_to_a`], whose completeness check uses `tol`. Raw A matrices are only
    /// shape-checked here.
    pub fn build(&self, tol: f64) -> Result<AForm> {
        match self {
            ChannelSpec::Unitary { axis, angle } => build_unitary_a(*axis, *angle, tol),
            ChannelSpec::Pin { p0 } => build_pin_a(&BlochVector::new(*p0, tol)?),
            ChannelSpec::Transpose => Ok(build_transpose_a()),
            ChannelSpec::EquatorialProjection => Ok(build_equatorial_projection_a()),
            ChannelSpec::BitFlip { p } => build_bit_flip_a(*p),
            ChannelSpec::PhaseFlip { p } => build_phase_flip_a(*p),
            ChannelSpec::RawA(m) => AForm::new(m.clone()),
            ChannelSpec::RawKraus(ops) => kraus_to_a(&KrausSet::new(ops.clone())?, tol),
        }
    }
}

/// `exp(i (sigma . axis) angle / 2) = cos(angle/2) I + i sin(angle/2) sigma . axis`.
pub fn unitary_matrix(axis: [f64; 3], angle: f64) -> ComplexMatrix {
    let (s, co) = (angle / 2.0).sin_cos();
    let [n1, n2, n3] = axis;
    ComplexMatrix::from_vec(
        2,
        2,
        vec![
            c(co, n3 * s),
            // i n_- sin = i (n1 - i n2) sin
            c(n2 * s, n1 * s),
            // i n_+ sin = i (n1 + i n2) sin
            c(-n2 * s, n1 * s),
            c(co, -n3 * s),
        ],
    )
    .expect("finite entries")
}

/// Column vector `(cos(angle/2), i n1 sin, i n2 sin, i n3 sin)`; the unitary channel's
/// coefficient matrix in the Pauli basis is `2 X X^dagger`.
pub fn unitary_coefficient_vector(axis: [f64; 3], angle: f64) -> [Complex64; 4] {
    let (s, co) = (angle / 2.0).sin_cos();
    [
        c(co, 0.0),
        c(0.0, axis[0] * s),
        c(0.0, axis[1] * s),
        c(0.0, axis[2] * s),
    ]
}

/// `A_U = U ⊗ U*`.
pub fn build_unitary_a(axis: [f64; 3], angle: f64, tol: f64) -> Result<AForm> {
    let norm = norm3(axis);
    if !norm.is_finite() || (norm - 1.0).abs() > tol || !angle.is_finite() {
        return Err(Error::NotUnitAxis { norm });
    }
    let u = unitary_matrix(axis, angle);
    AForm::new(u.kron(&u.conj()))
}

/// Every column of `A_pin` is `vec(rho_0)` weighted by the trace functional `(1, 0, 0, 1)`.
pub fn build_pin_a(p0: &BlochVector) -> Result<AForm> {
    let [p1, p2, p3] = p0.components();
    let column = [
        c(0.5 * (1.0 + p3), 0.0),
        c(0.5 * p1, -0.5 * p2),
        c(0.5 * p1, 0.5 * p2),
        c(0.5 * (1.0 - p3), 0.0),
    ];
    let m = ComplexMatrix::from_fn(4, 4, |i, j| {
        if j == 0 || j == 3 {
            column[i]
        } else {
            c(0.0, 0.0)
        }
    });
    AForm::new(m)
}

pub fn build_transpose_a() -> AForm {
    let m = ComplexMatrix::from_real_rows(&[
        &[1.0, 0.0, 0.0, 0.0],
        &[0.0, 0.0, 1.0, 0.0],
        &[0.0, 1.0, 0.0, 0.0],
        &[0.0, 0.0, 0.0, 1.0],
    ])
    .expect("4x4");
    AForm::new(m).expect("4x4")
}

pub fn build_equatorial_projection_a() -> AForm {
    let m = ComplexMatrix::from_real_rows(&[
        &[1.0, 0.0, 0.0, 1.0],
        &[0.0, 2.0, 0.0, 0.0],
        &[0.0, 0.0, 2.0, 0.0],
        &[1.0, 0.0, 0.0, 1.0],
    ])
    .expect("4x4")
    .scale_real(0.5);
    AForm::new(m).expect("4x4")
}

fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::ProbabilityRange { p })
    }
}

pub fn build_bit_flip_a(p: f64) -> Result<AForm> {
    check_probability(p)?;
    let q = 1.0 - p;
    let m = ComplexMatrix::from_real_rows(&[
        &[p, 0.0, 0.0, q],
        &[0.0, p, q, 0.0],
        &[0.0, q, p, 0.0],
        &[q, 0.0, 0.0, p],
    ])?;
    AForm::new(m)
}

/// `diag(1, 2p - 1, 2p - 1, 1)`, the expansion of `p I ⊗ I + (1 - p) sigma_3 ⊗ sigma_3`.
pub fn build_phase_flip_a(p: f64) -> Result<AForm> {
    check_probability(p)?;
    let d = 2.0 * p - 1.0;
    AForm::new(ComplexMatrix::from_real_diagonal(&[1.0, d, d, 1.0]))
}

/// Random trace-preserving CP map with `rank` Kraus operators.
///
/// Draws a `(rank n) x n` complex Gaussian matrix, orthonormalizes its columns with two
/// passes of modified Gram-Schmidt, and slices the resulting isometry into `n x n` blocks.
pub fn random_cp_channel(n: usize, rank: usize, seed: u64) -> Result<KrausSet> {
    if n == 0 {
        return Err(Error::WrongDimension {
            expected: 1,
            actual: 0,
        });
    }
    if rank == 0 || rank > n * n {
        return Err(Error::RankRange { rank, max: n * n });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rows = rank * n;
    let mut columns: Vec<Vec<Complex64>> = (0..n)
        .map(|_| {
            (0..rows)
                .map(|_| {
                    let re: f64 = StandardNormal.sample(&mut rng);
                    let im: f64 = StandardNormal.sample(&mut rng);
                    c(re, im)
                })
                .collect()
        })
        .collect();
    orthonormalize(&mut columns);

    let operators = (0..rank)
        .map(|k| ComplexMatrix::from_fn(n, n, |i, j| columns[j][k * n + i]))
        .collect();
    KrausSet::new(operators)
}

fn orthonormalize(columns: &mut [Vec<Complex64>]) {
    for _pass in 0..2 {
        for j in 0..columns.len() {
            for i in 0..j {
                let (done, rest) = columns.split_at_mut(j);
                let proj: Complex64 = done[i]
                    .iter()
                    .zip(&rest[0])
                    .map(|(q, v)| q.conj() * v)
                    .sum();
                for (v, q) in rest[0].iter_mut().zip(&done[i]) {
                    *v -= proj * q;
                }
            }
            let norm = columns[j].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            for v in columns[j].iter_mut() {
                *v /= norm;
            }
        }
    }
}

/// Random Haar-distributed pure state of dimension `n`.
pub fn random_pure_state(n: usize, rng: &mut ChaCha8Rng) -> Vec<Complex64> {
    let mut v: Vec<Complex64> = (0..n)
        .map(|_| {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            c(re, im)
        })
        .collect();
    let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    for z in &mut v {
        *z /= norm;
    }
    v
}

/// Mixes the dynamical matrix with white noise of negative weight:
/// `B' = (1 + t) B - t I / n`. Trace and trace preservation survive, and every
/// eigenvalue moves to `(1 + t) lambda - t / n`, so rank-deficient CP maps become
/// non-CP for any `t > 0`.
pub fn shift_b_spectrum(a: &AForm, t: f64) -> AForm {
    let n = a.dim();
    let b = realign_a_to_b(a);
    let shifted =
        &b.matrix().scale_real(1.0 + t) - &ComplexMatrix::identity(n * n).scale_real(t / n as f64);
    realign_b_to_a(&BForm::new(shifted).expect("same shape"))
}
