//! Monotonicity checks and solution functionals.
//!
//! A linear scheme `M u' = B u` whose row and column sums reproduce the mass
//! diagonal is monotone exactly when every entry of `B` is non-negative.
//! Monotone schemes keep new values inside local bounds, which yields the
//! discrete maximum principle, TVD and the L1 contraction tested elsewhere.

use serde::Serialize;

use crate::assembly::SchemeMatrices;
use crate::mesh::CutCellMesh;
use crate::scalar::{cast, Real};
use crate::stepping::PiecewiseConstantState;

/// Entrywise sign scan of the system matrix.
#[derive(Clone, Debug, Serialize)]
pub struct MonotonicityReport<T> {
    /// True iff no entry lies below `-tolerance`.
    #[serde(rename = "verdict")]
    pub monotone: bool,
    /// Smallest entry of the system matrix.
    pub min_entry: T,
    /// All `(row, column, value)` with value below `-tolerance`.
    pub negative_entries: Vec<(usize, usize, T)>,
    /// The slack that was applied.
    pub tolerance: T,
}

/// Scans every entry of `B`. `None` selects the default slack of
/// [`SchemeMatrices::default_monotonicity_tolerance`].
pub fn check_monotonicity<T: Real>(
    matrices: &SchemeMatrices<T>,
    tolerance: Option<T>,
) -> MonotonicityReport<T> {
    let tol = tolerance.unwrap_or_else(|| matrices.default_monotonicity_tolerance());
    assert!(tol >= T::zero(), "tolerance must be non-negative");
    let mut negative_entries = Vec::new();
    let mut min_entry = T::infinity();
    for i in 0..matrices.n() {
        for j in 0..matrices.n() {
            let v = matrices.system[[i, j]];
            if v < min_entry {
                min_entry = v;
            }
            if v < -tol {
                negative_entries.push((i, j, v));
            }
        }
    }
    MonotonicityReport {
        monotone: negative_entries.is_empty(),
        min_entry,
        negative_entries,
        tolerance: tol,
    }
}

/// Range of domain-of-dependence parameters that keep the scheme monotone.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct EtaInterval<T> {
    /// `max(0, 1 - alpha/lambda)`.
    pub lower: T,
    /// Always 1.
    pub upper: T,
    /// Advisory flag: `alpha > lambda` means the cut cell is already
    /// CFL-sized and should not be stabilized at all.
    pub empty: bool,
}

/// Monotone parameter range for the domain-of-dependence scheme: the
/// small-cell diagonal needs `eta >= 1 - alpha/lambda` and the flux
/// coefficients need `eta <= 1`.
pub fn admissible_eta_interval<T: Real>(alpha: T, lambda_cfl: T) -> EtaInterval<T> {
    EtaInterval {
        lower: (T::one() - alpha / lambda_cfl).max(T::zero()),
        upper: T::one(),
        empty: alpha > lambda_cfl,
    }
}

/// Outcome of the ghost-penalty sign-condition system.
#[derive(Clone, Debug, Serialize)]
pub struct GpFeasibilityCertificate<T> {
    pub feasible: bool,
    /// A parameter pair satisfying every sign condition, when one exists.
    pub witness: Option<(T, T)>,
    /// Conditions forming the contradiction when infeasible.
    pub violated_constraints: Vec<&'static str>,
}

/// Decides whether any ghost-penalty pair `(eta1, eta2)` makes the scheme
/// monotone. The two superdiagonal entries force `eta1 <= 0` and
/// `eta2 <= 0`; on that quadrant every remaining sign condition is largest
/// at the corner `(0, 0)`, so the system is feasible iff all conditions
/// hold there. For `alpha < lambda` the small-cell diagonal fails at the
/// corner and no monotone pair exists.
pub fn ghost_penalty_feasibility<T: Real>(alpha: T, lambda_cfl: T) -> GpFeasibilityCertificate<T> {
    let zero = T::zero();
    let one = T::one();
    // Sign conditions of the ghost-penalty matrix, divided by h and
    // evaluated at (eta1, eta2) = (0, 0).
    let conditions: [(&'static str, T); 7] = [
        ("superdiagonal (k-1, k1): -lambda*eta1 >= 0", zero),
        ("superdiagonal (k1, k2): -lambda*eta2 >= 0", zero),
        (
            "diagonal (k1, k1): alpha - lambda + lambda*(eta1 + eta2) >= 0",
            alpha - lambda_cfl,
        ),
        (
            "diagonal (k-1, k-1): 1 - lambda*(1 - eta1) >= 0",
            one - lambda_cfl,
        ),
        ("subdiagonal (k1, k-1): lambda*(1 - eta1) >= 0", lambda_cfl),
        ("subdiagonal (k2, k1): lambda*(1 - eta2) >= 0", lambda_cfl),
        (
            "diagonal (k2, k2): 1 - alpha - lambda*(1 - eta2) >= 0",
            one - alpha - lambda_cfl,
        ),
    ];
    let tol = cast::<T>(1e-12).max(T::epsilon() * cast(8.0));
    let failing: Vec<&'static str> = conditions
        .iter()
        .filter(|(_, value)| *value < -tol)
        .map(|(name, _)| *name)
        .collect();
    if failing.is_empty() {
        GpFeasibilityCertificate {
            feasible: true,
            witness: Some((zero, zero)),
            violated_constraints: Vec::new(),
        }
    } else {
        // The contradiction always involves the superdiagonal signs that pin
        // the corner; list them ahead of whatever fails there.
        let mut violated_constraints = vec![conditions[0].0, conditions[1].0];
        violated_constraints.extend(failing);
        GpFeasibilityCertificate {
            feasible: false,
            witness: None,
            violated_constraints,
        }
    }
}

/// Periodic total variation: sum of jumps across all faces including the
/// wraparound face.
pub fn total_variation<T: Real>(state: &PiecewiseConstantState<T>) -> T {
    let n = state.len();
    (0..n)
        .map(|j| (state.values[(j + 1) % n] - state.values[j]).abs())
        .sum()
}

/// Length-weighted L1 norm.
pub fn l1_norm<T: Real>(state: &PiecewiseConstantState<T>, mesh: &CutCellMesh<T>) -> T {
    assert_eq!(state.len(), mesh.num_cells(), "state/mesh size mismatch");
    state
        .values
        .iter()
        .zip(mesh.lengths().iter())
        .map(|(u, len)| u.abs() * *len)
        .sum()
}

/// Length-weighted integral of the state; conserved by every scheme variant.
pub fn mass<T: Real>(state: &PiecewiseConstantState<T>, mesh: &CutCellMesh<T>) -> T {
    assert_eq!(state.len(), mesh.num_cells(), "state/mesh size mismatch");
    state
        .values
        .iter()
        .zip(mesh.lengths().iter())
        .map(|(u, len)| *u * *len)
        .sum()
}

/// `(min, max)` over the cell values.
pub fn extrema<T: Real>(state: &PiecewiseConstantState<T>) -> (T, T) {
    assert!(!state.is_empty(), "extrema of an empty state");
    let mut lo = T::infinity();
    let mut hi = T::neg_infinity();
    for &v in &state.values {
        if v < lo {
            lo = v;
        }
        if v > hi {
            hi = v;
        }
    }
    (lo, hi)
}
