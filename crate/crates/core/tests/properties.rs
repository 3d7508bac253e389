//! Property tests over random channels and states.

use chanforms::analysis::spectral_distance;
use chanforms::linalg::{
    bloch_to_density, density_to_bloch, hermitian_eigendecompose, hermitian_eigenvalues,
    row_unvectorize, BlochVector,
};
use chanforms::zoo::{random_cp_channel, random_pure_state, shift_b_spectrum};
use chanforms::{
    apply_a, apply_canonical, canonical_decompose, coefficient_matrix, extract_kraus, kraus_to_a,
    realign_a_to_b, realign_b_to_a, standard_basis, AForm, BasisLabel, Complex64, ComplexMatrix,
    DensityMatrix,
};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const TOL: f64 = 1e-9;

fn complex_matrix(n: usize) -> impl Strategy<Value = ComplexMatrix> {
    prop::collection::vec((-2.0f64..2.0, -2.0f64..2.0), n * n).prop_map(move |v| {
        let data = v
            .into_iter()
            .map(|(re, im)| Complex64::new(re, im))
            .collect();
        ComplexMatrix::from_vec(n, n, data).unwrap()
    })
}

fn hermitian(n: usize) -> impl Strategy<Value = ComplexMatrix> {
    complex_matrix(n).prop_map(|g| &g + &g.adjoint())
}

fn bloch_vector() -> impl Strategy<Value = [f64; 3]> {
    (-1.0f64..1.0, -1.0f64..1.0, -1.0f64..1.0, 0.0f64..1.0).prop_map(|(x, y, z, r)| {
        let norm = (x * x + y * y + z * z).sqrt().max(1e-3);
        [r * x / norm, r * y / norm, r * z / norm]
    })
}

/// Random qubit or qutrit channel, CP or pushed outside the CP cone.
fn channel() -> impl Strategy<Value = AForm> {
    (
        2usize..=3,
        1usize..=4,
        any::<u64>(),
        prop::option::of(0.05f64..0.5),
    )
        .prop_map(|(n, rank, seed, shift)| {
            let kraus = random_cp_channel(n, rank, seed).unwrap();
            let a = kraus_to_a(&kraus, TOL).unwrap();
            match shift {
                Some(t) => shift_b_spectrum(&a, t),
                None => a,
            }
        })
}

fn random_state(n: usize, seed: u64) -> DensityMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let psi = random_pure_state(n, &mut rng);
    let phi = random_pure_state(n, &mut rng);
    let mix = &DensityMatrix::pure(&psi)
        .unwrap()
        .into_matrix()
        .scale_real(0.7)
        + &DensityMatrix::pure(&phi)
            .unwrap()
            .into_matrix()
            .scale_real(0.3);
    DensityMatrix::new(mix, TOL).unwrap()
}

fn units(n: usize) -> chanforms::OperatorBasis {
    standard_basis(n, BasisLabel::MatrixUnits).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bloch_round_trip(p in bloch_vector()) {
        let v = BlochVector::new(p, TOL).unwrap();
        let back = density_to_bloch(&bloch_to_density(&v)).unwrap();
        prop_assert!(back.max_abs_diff(&v) < 1e-12);
    }

    #[test]
    fn vectorization_is_linear_and_invertible(
        x in complex_matrix(3),
        y in complex_matrix(3),
        a in -3.0f64..3.0,
        b in -3.0f64..3.0,
    ) {
        let combined = &x.scale_real(a) + &y.scale_real(b);
        let lhs = combined.vectorize();
        let vx = x.vectorize();
        let vy = y.vectorize();
        for i in 0..9 {
            prop_assert!((lhs[i] - (vx[i] * a + vy[i] * b)).norm() < 1e-12);
        }
        prop_assert!(row_unvectorize(&vx, 3).unwrap().max_abs_diff(&x) == 0.0);
    }

    #[test]
    fn eigenvalues_sum_to_trace(h in hermitian(4)) {
        let eig = hermitian_eigendecompose(&h, TOL).unwrap();
        let sum: f64 = eig.eigenvalues.iter().sum();
        prop_assert!((sum - h.trace().re).abs() < 1e-10);
        prop_assert!(eig.eigenvalues.windows(2).all(|w| w[0] >= w[1]));
        let again = hermitian_eigenvalues(&eig.reconstruct(), TOL).unwrap();
        prop_assert!(spectral_distance(&again, &eig.eigenvalues) < 1e-10);
    }

    #[test]
    fn realignment_is_an_involution(a in channel()) {
        let back = realign_b_to_a(&realign_a_to_b(&a));
        prop_assert!(back.matrix().max_abs_diff(a.matrix()) == 0.0);
    }

    #[test]
    fn coefficient_and_dynamical_spectra_agree(a in channel()) {
        let n = a.dim();
        let coefficient = coefficient_matrix(&a, &units(n)).unwrap();
        let lambda = coefficient.eigendecompose(TOL).unwrap().eigenvalues;
        let b = realign_a_to_b(&a).eigenvalues(TOL).unwrap();
        prop_assert!(spectral_distance(&lambda, &b) < 1e-9);
        prop_assert!((coefficient.trace() - Complex64::new(n as f64, 0.0)).norm() < 1e-9);
        prop_assert!((realign_a_to_b(&a).trace() - Complex64::new(n as f64, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn qubit_spectrum_is_basis_independent(seed in any::<u64>(), rank in 1usize..=4, t in 0.0f64..0.5) {
        let a = shift_b_spectrum(&kraus_to_a(&random_cp_channel(2, rank, seed).unwrap(), TOL).unwrap(), t);
        let pauli = standard_basis(2, BasisLabel::PauliOverSqrt2).unwrap();
        let l1 = coefficient_matrix(&a, &pauli).unwrap().eigendecompose(TOL).unwrap().eigenvalues;
        let l2 = coefficient_matrix(&a, &units(2)).unwrap().eigendecompose(TOL).unwrap().eigenvalues;
        prop_assert!(spectral_distance(&l1, &l2) < 1e-9);
    }

    #[test]
    fn canonical_form_reconstructs(a in channel()) {
        let c = canonical_decompose(&a, &units(a.dim()), TOL).unwrap();
        prop_assert!(c.reconstruct().max_abs_diff(a.matrix()) < 1e-9);
        prop_assert!(c.completeness().max_abs_diff(&ComplexMatrix::identity(a.dim())) < 1e-9);
        prop_assert!(c.orthonormality_residual() < 1e-9);
    }

    #[test]
    fn kraus_round_trip_for_cp_maps(n in 2usize..=3, rank in 1usize..=4, seed in any::<u64>()) {
        let a = kraus_to_a(&random_cp_channel(n, rank, seed).unwrap(), TOL).unwrap();
        let c = canonical_decompose(&a, &units(n), TOL).unwrap();
        prop_assert!(c.rank(TOL) <= rank);
        let kraus = extract_kraus(&c, TOL).unwrap();
        let back = kraus_to_a(&kraus, 1e-8).unwrap();
        prop_assert!(back.matrix().max_abs_diff(a.matrix()) < 1e-8);
    }

    #[test]
    fn every_representation_gives_the_same_output(a in channel(), seed in any::<u64>()) {
        let rho = random_state(a.dim(), seed);
        let direct = apply_a(&a, &rho).unwrap();
        let c = canonical_decompose(&a, &units(a.dim()), TOL).unwrap();
        let canonical = apply_canonical(&c, &rho).unwrap();
        prop_assert!(direct.matrix.max_abs_diff(&canonical.matrix) < 1e-9);
        prop_assert!((direct.matrix.trace() - Complex64::new(1.0, 0.0)).norm() < 1e-9);
        if let Ok(kraus) = extract_kraus(&c, TOL) {
            let via_kraus = kraus.apply(&rho).unwrap();
            prop_assert!(direct.matrix.max_abs_diff(&via_kraus.matrix) < 1e-9);
        }
    }

    #[test]
    fn realigned_validity_is_preserved(a in channel()) {
        let back = realign_b_to_a(&realign_a_to_b(&a));
        prop_assert!(back.validate(TOL).is_ok());
    }
}

/// Builds A column by column from the operator-sum action on matrix units, without
/// touching the tensor-product formula used by `kraus_to_a`.
#[test]
fn operator_sum_on_matrix_units_reproduces_a() {
    for (n, rank, seed) in [(2, 1, 1u64), (2, 3, 2), (3, 2, 3), (3, 5, 4)] {
        let kraus = random_cp_channel(n, rank, seed).unwrap();
        let a = kraus_to_a(&kraus, TOL).unwrap();
        let mut brute = ComplexMatrix::zeros(n * n, n * n);
        for r in 0..n {
            for s in 0..n {
                let mut unit = ComplexMatrix::zeros(n, n);
                unit[(r, s)] = Complex64::new(1.0, 0.0);
                let image = kraus.apply_matrix(&unit).unwrap().vectorize();
                for (row, value) in image.into_iter().enumerate() {
                    brute[(row, r * n + s)] = value;
                }
            }
        }
        assert!(
            brute.max_abs_diff(a.matrix()) < 1e-12,
            "n = {n}, rank = {rank}"
        );
    }
}
