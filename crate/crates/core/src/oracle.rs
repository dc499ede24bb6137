//! Exact-advection reference.
//!
//! For piecewise-constant data the advection equation can be solved exactly:
//! trace every cell back along the characteristics by the advected distance
//! and average the old data over the preimage. [`advect_and_average`] does
//! this with interval-overlap bookkeeping and serves as the independent
//! check for the matrix schemes: one domain-of-dependence step with
//! `eta = 1 - alpha/lambda` reproduces it, and both stay piecewise constant,
//! so the agreement telescopes over any number of steps.

use crate::error::{Error, Result};
use crate::mesh::CutCellMesh;
use crate::scalar::{snap_tol, Real};
use crate::stepping::{InitialProfile, PiecewiseConstantState};

/// Advects the state by `shift >= 0` to the right (periodic) and averages
/// back onto the mesh. The result is the exact cell average of the shifted
/// function; the `time` tag is copied, since `shift` alone does not
/// determine the new time.
pub fn advect_and_average<T: Real>(
    state: &PiecewiseConstantState<T>,
    mesh: &CutCellMesh<T>,
    shift: T,
) -> Result<PiecewiseConstantState<T>> {
    if state.len() != mesh.num_cells() {
        return Err(Error::DimensionMismatch {
            state: state.len(),
            expected: mesh.num_cells(),
        });
    }
    assert!(
        shift >= T::zero() && shift.is_finite(),
        "shift must be finite and non-negative"
    );
    let s = shift - shift.floor();
    if s == T::zero() {
        return Ok(state.clone());
    }
    let one = T::one();
    let values = (0..mesh.num_cells())
        .map(|j| {
            let p = mesh.x_left(j) - s;
            let q = mesh.x_right(j) - s;
            let integral = if p >= T::zero() {
                integrate(state, mesh, p, q)
            } else if q <= T::zero() {
                integrate(state, mesh, p + one, q + one)
            } else {
                integrate(state, mesh, p + one, one) + integrate(state, mesh, T::zero(), q)
            };
            integral / mesh.length(j)
        })
        .collect();
    Ok(PiecewiseConstantState::with_time(values, state.time))
}

/// Integral of the piecewise-constant function over `[lo, hi]` inside
/// `[0, 1]`. Endpoints within the snap tolerance of a cell boundary are
/// moved onto it, so roundoff in the shifted coordinates cannot produce
/// sliver overlaps.
fn integrate<T: Real>(
    state: &PiecewiseConstantState<T>,
    mesh: &CutCellMesh<T>,
    lo: T,
    hi: T,
) -> T {
    let lo = snap(mesh, lo);
    let hi = snap(mesh, hi);
    if hi <= lo {
        return T::zero();
    }
    let b = mesh.boundaries();
    let start = b.partition_point(|x| *x <= lo).saturating_sub(1);
    let mut acc = T::zero();
    for j in start..mesh.num_cells() {
        let seg = hi.min(b[j + 1]) - lo.max(b[j]);
        if seg > T::zero() {
            acc = acc + seg * state.values[j];
        }
        if b[j + 1] >= hi {
            break;
        }
    }
    acc
}

fn snap<T: Real>(mesh: &CutCellMesh<T>, x: T) -> T {
    let b = mesh.boundaries();
    let tol = snap_tol::<T>();
    let upper = b.partition_point(|v| *v <= x);
    if upper < b.len() && (b[upper] - x).abs() <= tol {
        return b[upper];
    }
    if upper > 0 && (b[upper - 1] - x).abs() <= tol {
        return b[upper - 1];
    }
    x
}

/// Pointwise exact solution `u0((x - beta*t) mod 1)` at the sample points.
pub fn exact_solution_samples<T: Real>(
    profile: &InitialProfile<T>,
    beta: T,
    t: T,
    xs: &[T],
) -> Vec<T> {
    assert!(t >= T::zero(), "time must be non-negative");
    xs.iter()
        .map(|&x| {
            let y = x - beta * t;
            profile.value_at(y - y.floor())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analysis::mass;
    use crate::assembly::{assemble_dod, assemble_unstabilized, AdvectionConfig};
    use crate::stepping::{project_initial_data, step};
    use proptest::prelude::*;

    #[test]
    fn zero_shift_is_the_identity() {
        let mesh = CutCellMesh::<f64>::new(10, 0.001, 0.5).unwrap();
        let u = PiecewiseConstantState::new((0..11).map(|i| i as f64).collect());
        let v = advect_and_average(&u, &mesh, 0.0).unwrap();
        assert_eq!(u, v);
        // A full revolution reduces to zero shift.
        let w = advect_and_average(&u, &mesh, 1.0).unwrap();
        assert_eq!(u, w);
    }

    #[test]
    fn matches_one_upwind_step_when_every_cell_is_large_enough() {
        // With alpha >= lambda the preimage of each cell only reaches its
        // direct neighbor and the plain scheme is already exact transport.
        let mesh = CutCellMesh::<f64>::new(5, 0.5, 0.4).unwrap();
        let config = AdvectionConfig::new(1.0, 0.3).unwrap();
        let m = assemble_unstabilized(&mesh, &config);
        let u0 = PiecewiseConstantState::new(vec![0.3, -1.0, 2.0, 0.0, 0.5, 1.5]);
        let by_matrix = step(&u0, &m).unwrap();
        let by_tracing = advect_and_average(&u0, &mesh, config.tau(mesh.h())).unwrap();
        for (a, b) in by_matrix.values.iter().zip(by_tracing.values.iter()) {
            assert!((a - b).abs() < 1e-13);
        }
    }

    #[test]
    fn reference_step_shift() {
        let mesh = CutCellMesh::<f64>::new(10, 0.001, 0.5).unwrap();
        let u0 = project_initial_data(
            &mesh,
            &InitialProfile::Step {
                lower: 0.1,
                upper: 0.5,
            },
        )
        .unwrap();
        let v = advect_and_average(&u0, &mesh, 0.04).unwrap();
        assert!((v.values[5] - 1.0).abs() < 1e-12);
        assert!((v.values[6] - 0.399 / 0.999).abs() < 1e-12);
        // The jump at 0.1 moves to 0.14: cell [0.1, 0.2] is 60% covered.
        assert!((v.values[1] - 0.6).abs() < 1e-13);
    }

    #[test]
    fn boundary_aligned_shift_relocates_a_projected_step() {
        let mesh = CutCellMesh::<f64>::new(5, 0.5, 0.4).unwrap();
        let u0 = project_initial_data(
            &mesh,
            &InitialProfile::Step {
                lower: 0.0,
                upper: 0.4,
            },
        )
        .unwrap();
        let shifted = advect_and_average(&u0, &mesh, 0.2).unwrap();
        let expect = project_initial_data(
            &mesh,
            &InitialProfile::Step {
                lower: 0.2,
                upper: 0.6,
            },
        )
        .unwrap();
        for (a, b) in shifted.values.iter().zip(expect.values.iter()) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn shift_reduction_modulo_domain() {
        let mesh = CutCellMesh::<f64>::new(10, 0.3, 0.2).unwrap();
        let u = PiecewiseConstantState::new((0..11).map(|i| (i as f64).sin()).collect());
        let a = advect_and_average(&u, &mesh, 2.3).unwrap();
        let b = advect_and_average(&u, &mesh, 0.3).unwrap();
        for (x, y) in a.values.iter().zip(b.values.iter()) {
            assert!((x - y).abs() < 1e-13);
        }
    }

    #[test]
    fn rejects_mismatched_state() {
        let mesh = CutCellMesh::<f64>::new(10, 0.3, 0.2).unwrap();
        let u = PiecewiseConstantState::new(vec![0.0; 5]);
        assert!(matches!(
            advect_and_average(&u, &mesh, 0.01),
            Err(Error::DimensionMismatch { state: 5, expected: 11 })
        ));
    }

    #[test]
    #[should_panic(expected = "non-negative")]
    fn rejects_negative_shift() {
        let mesh = CutCellMesh::<f64>::new(10, 0.3, 0.2).unwrap();
        let u = PiecewiseConstantState::new(vec![0.0; 11]);
        let _ = advect_and_average(&u, &mesh, -0.1);
    }

    #[test]
    fn sample_examples() {
        let sine = InitialProfile::<f64>::Sine;
        let xs = [0.0, 0.125, 0.3, 0.77];
        let full_turn = exact_solution_samples(&sine, 1.0, 1.0, &xs);
        for (v, x) in full_turn.iter().zip(xs.iter()) {
            assert!((v - (2.0 * std::f64::consts::PI * x).sin()).abs() < 1e-12);
        }

        let step = InitialProfile::Step {
            lower: 0.1,
            upper: 0.5,
        };
        let v = exact_solution_samples(&step, 1.0, 0.25, &[0.5]);
        assert_eq!(v[0], 1.0);
        let w = exact_solution_samples(&step, 1.0, 0.0, &[0.05, 0.3]);
        assert_eq!(w, vec![0.0, 1.0]);
        // Slow velocity: x - beta*t = 0.05, outside the plateau.
        let slow = exact_solution_samples(&step, 0.2, 0.25, &[0.1]);
        assert_eq!(slow[0], 0.0);
    }

    proptest! {
        #[test]
        fn dod_at_the_lower_endpoint_is_exact_advection(
            u in proptest::collection::vec(-1.0f64..1.0, 11),
            alpha in 1e-4f64..0.39,
        ) {
            let mesh = CutCellMesh::<f64>::new(10, alpha, 0.5).unwrap();
            let config = AdvectionConfig::new(1.0, 0.4).unwrap();
            let eta = 1.0 - alpha / 0.4;
            let m = assemble_dod(&mesh, &config, eta).unwrap();
            let u0 = PiecewiseConstantState::new(u);
            let by_scheme = step(&u0, &m).unwrap();
            let by_tracing = advect_and_average(&u0, &mesh, config.tau(mesh.h())).unwrap();
            for (a, b) in by_scheme.values.iter().zip(by_tracing.values.iter()) {
                prop_assert!((a - b).abs() < 1e-12);
            }
        }

        #[test]
        fn tracing_preserves_mass(
            u in proptest::collection::vec(-1.0f64..1.0, 11),
            shift in 0.0f64..1.5,
            alpha in 1e-4f64..=0.5,
        ) {
            let mesh = CutCellMesh::<f64>::new(10, alpha, 0.7).unwrap();
            let u0 = PiecewiseConstantState::new(u);
            let u1 = advect_and_average(&u0, &mesh, shift).unwrap();
            prop_assert!((mass(&u1, &mesh) - mass(&u0, &mesh)).abs() < 1e-13);
        }

        #[test]
        fn whole_cell_shifts_compose_exactly(
            u in proptest::collection::vec(-1.0f64..1.0, 6),
        ) {
            let mesh = CutCellMesh::<f64>::new(5, 0.3, 0.4).unwrap();
            let h = mesh.h();
            let u0 = PiecewiseConstantState::new(u);
            let once = advect_and_average(&u0, &mesh, h).unwrap();
            let twice = advect_and_average(&once, &mesh, h).unwrap();
            let direct = advect_and_average(&u0, &mesh, 2.0 * h).unwrap();
            for (a, b) in twice.values.iter().zip(direct.values.iter()) {
                prop_assert!((a - b).abs() < 1e-13);
            }
        }
    }
}
