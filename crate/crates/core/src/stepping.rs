//! Time stepping and initial data.
//!
//! States are piecewise constant: one value per cell. A step solves the
//! diagonal system `M u' = B u` and advances the clock by `dt`.

use crate::assembly::SchemeMatrices;
use crate::error::{Error, Result};
use crate::mesh::CutCellMesh;
use crate::scalar::{cast, Real};

/// One value per cell, tagged with the simulation time it belongs to.
#[derive(Clone, Debug, PartialEq)]
pub struct PiecewiseConstantState<T> {
    pub values: Vec<T>,
    pub time: T,
}

impl<T: Real> PiecewiseConstantState<T> {
    /// State at time zero.
    pub fn new(values: Vec<T>) -> Self {
        PiecewiseConstantState {
            values,
            time: T::zero(),
        }
    }

    pub fn with_time(values: Vec<T>, time: T) -> Self {
        PiecewiseConstantState { values, time }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Initial data on the periodic unit interval.
#[derive(Clone, Debug, PartialEq)]
pub enum InitialProfile<T> {
    /// Indicator of `[lower, upper]`, with `lower <= upper` expected.
    Step { lower: T, upper: T },
    Constant(T),
    /// `sin(2 pi x)`.
    Sine,
    /// Piecewise constant on a uniform grid of `len()` cells over `[0, 1]`.
    Custom(Vec<T>),
}

impl<T: Real> InitialProfile<T> {
    /// Pointwise value at `x` in `[0, 1)`.
    pub fn value_at(&self, x: T) -> T {
        match self {
            InitialProfile::Step { lower, upper } => {
                if x >= *lower && x <= *upper {
                    T::one()
                } else {
                    T::zero()
                }
            }
            InitialProfile::Constant(c) => *c,
            InitialProfile::Sine => (cast::<T>(2.0) * T::PI() * x).sin(),
            InitialProfile::Custom(samples) => {
                let m = samples.len();
                let bin = (x * T::from_usize(m).unwrap())
                    .floor()
                    .to_usize()
                    .unwrap_or(0)
                    .min(m - 1);
                samples[bin]
            }
        }
    }
}

/// Projects a profile onto the mesh: every cell gets the exact average of
/// the profile over the cell (closed forms throughout, no quadrature).
pub fn project_initial_data<T: Real>(
    mesh: &CutCellMesh<T>,
    profile: &InitialProfile<T>,
) -> Result<PiecewiseConstantState<T>> {
    let values = match profile {
        InitialProfile::Constant(c) => vec![*c; mesh.num_cells()],
        InitialProfile::Step { lower, upper } => (0..mesh.num_cells())
            .map(|j| {
                let overlap = (mesh.x_right(j).min(*upper) - mesh.x_left(j).max(*lower))
                    .max(T::zero());
                overlap / mesh.length(j)
            })
            .collect(),
        InitialProfile::Sine => {
            let two_pi = cast::<T>(2.0) * T::PI();
            (0..mesh.num_cells())
                .map(|j| {
                    let l = mesh.x_left(j);
                    let r = mesh.x_right(j);
                    ((two_pi * l).cos() - (two_pi * r).cos()) / (two_pi * mesh.length(j))
                })
                .collect()
        }
        InitialProfile::Custom(samples) => {
            if samples.is_empty() {
                return Err(Error::EmptyProfile);
            }
            let m = samples.len();
            let m_t = T::from_usize(m).unwrap();
            (0..mesh.num_cells())
                .map(|j| {
                    let l = mesh.x_left(j);
                    let r = mesh.x_right(j);
                    let mut acc = T::zero();
                    let mut bin = (l * m_t).floor().to_usize().unwrap_or(0).min(m - 1);
                    loop {
                        let bl = T::from_usize(bin).unwrap() / m_t;
                        let br = T::from_usize(bin + 1).unwrap() / m_t;
                        acc = acc + (r.min(br) - l.max(bl)).max(T::zero()) * samples[bin];
                        bin += 1;
                        if bin >= m || T::from_usize(bin).unwrap() / m_t >= r {
                            break;
                        }
                    }
                    acc / mesh.length(j)
                })
                .collect()
        }
    };
    Ok(PiecewiseConstantState::new(values))
}

/// One explicit Euler step, `u' = M^{-1} B u`.
pub fn step<T: Real>(
    state: &PiecewiseConstantState<T>,
    matrices: &SchemeMatrices<T>,
) -> Result<PiecewiseConstantState<T>> {
    let n = matrices.n();
    if state.len() != n {
        return Err(Error::DimensionMismatch {
            state: state.len(),
            expected: n,
        });
    }
    let mut values = Vec::with_capacity(n);
    for i in 0..n {
        let mut acc = T::zero();
        for j in 0..n {
            acc = acc + matrices.system[[i, j]] * state.values[j];
        }
        values.push(acc / matrices.mass_diagonal[i]);
    }
    Ok(PiecewiseConstantState::with_time(
        values,
        state.time + matrices.dt,
    ))
}

/// Runs `n_steps` steps and returns all `n_steps + 1` states, the initial
/// one included.
pub fn run<T: Real>(
    initial: PiecewiseConstantState<T>,
    matrices: &SchemeMatrices<T>,
    n_steps: usize,
) -> Result<Vec<PiecewiseConstantState<T>>> {
    let mut states = Vec::with_capacity(n_steps + 1);
    states.push(initial);
    for _ in 0..n_steps {
        let next = step(states.last().unwrap(), matrices)?;
        states.push(next);
    }
    Ok(states)
}

/// Standard upwind update on an uncut cell.
pub fn upwind_update<T: Real>(u_left: T, u: T, lambda_cfl: T) -> T {
    u - lambda_cfl * (u - u_left)
}

/// Closed-form domain-of-dependence update of the cut pair. Takes the old
/// values on `(km1, k1, k2)` and returns the new `(k1, k2)` pair:
///
/// ```text
/// u1' = u1 - (lambda/alpha) (1-eta) (u1 - u0)
/// u2' = u2 - (lambda/(1-alpha)) (u2 - u1) - (lambda/(1-alpha)) eta (u1 - u0)
/// ```
///
/// At `eta = 1 - alpha/lambda` the first line collapses to `u1' = u0`; at
/// `eta = 1` the small cell keeps its value and the jump lands in `k2`.
pub fn cut_cell_update_closed_form<T: Real>(
    u_km1: T,
    u_k1: T,
    u_k2: T,
    alpha: T,
    lambda_cfl: T,
    eta: T,
) -> (T, T) {
    let one = T::one();
    let inflow_jump = u_k1 - u_km1;
    let new_k1 = u_k1 - lambda_cfl / alpha * (one - eta) * inflow_jump;
    let factor = lambda_cfl / (one - alpha);
    let new_k2 = u_k2 - factor * (u_k2 - u_k1) - factor * eta * inflow_jump;
    (new_k1, new_k2)
}
