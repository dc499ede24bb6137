//! Scheme matrices for explicit-Euler upwind advection on a cut-cell mesh.
//!
//! One step of the scheme solves `M u' = B u` where `M` is the diagonal mass
//! matrix holding the cell lengths and `B = M - dt * A` collects the upwind
//! flux differences. With `tau = beta * dt = lambda * h`, the unstabilized
//! matrix has rows
//!
//! ```text
//!   B[j][j]   = |I_j| - tau
//!   B[j][j-1] = tau          (periodic: row 0 wraps to the last column)
//! ```
//!
//! On the small cut cell `|I_k1| = alpha * h`, so the diagonal entry turns
//! negative as soon as `alpha < lambda`: the small cell breaks monotonicity
//! and the explicit step becomes unstable there. The two stabilized variants
//! modify only the rows near the cut pair (`km1` is the cell left of `k1`):
//!
//! Ghost penalty, parameters `eta1` (face `km1|k1`) and `eta2` (face `k1|k2`):
//!
//! ```text
//!   row km1:  [ h - tau(1-eta1) ,  -tau*eta1                        ]
//!   row k1:   [ tau(1-eta1) ,  alpha*h - tau + tau*eta1 + tau*eta2 ,  -tau*eta2 ]
//!   row k2:   [ tau(1-eta2) ,  (1-alpha)*h - tau(1-eta2)           ]
//! ```
//!
//! Domain of dependence, parameter `eta`: a fraction `eta` of the inflow
//! flux of the small cell is routed past it, directly into `k2`:
//!
//! ```text
//!   row k1:   [ tau(1-eta) ,  alpha*h - tau(1-eta) ]
//!   row k2:   [ tau*eta (column km1) ,  tau(1-eta) ,  (1-alpha)*h - tau ]
//! ```
//!
//! Row sums and column sums of every variant equal the mass diagonal, which
//! is what makes the schemes conservative.

use ndarray::Array2;

use crate::error::{Error, Result};
use crate::mesh::CutCellMesh;
use crate::scalar::{cast, Real};

/// Velocity and CFL number of the advection problem. The time step on a
/// mesh with background size `h` is `dt = lambda_cfl * h / beta`.
#[derive(Clone, Copy, Debug)]
pub struct AdvectionConfig<T> {
    beta: T,
    lambda_cfl: T,
}

impl<T: Real> AdvectionConfig<T> {
    pub fn new(beta: T, lambda_cfl: T) -> Result<Self> {
        if !beta.is_finite() || beta <= T::zero() {
            return Err(Error::NonPositiveVelocity(beta.to_f64().unwrap_or(f64::NAN)));
        }
        if !(lambda_cfl > T::zero() && lambda_cfl < T::one()) {
            return Err(Error::CflOutOfRange(lambda_cfl.to_f64().unwrap_or(f64::NAN)));
        }
        Ok(AdvectionConfig { beta, lambda_cfl })
    }

    pub fn beta(&self) -> T {
        self.beta
    }

    pub fn lambda_cfl(&self) -> T {
        self.lambda_cfl
    }

    /// Time step on background cell size `h`.
    pub fn dt(&self, h: T) -> T {
        self.lambda_cfl * h / self.beta
    }

    /// Distance advected per step, `beta * dt = lambda_cfl * h`. Computed
    /// directly from `lambda_cfl * h` so the identity holds exactly.
    pub fn tau(&self, h: T) -> T {
        self.lambda_cfl * h
    }
}

/// How the domain-of-dependence parameter `eta` is chosen.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum EtaRule<T> {
    /// Use the given value as is.
    Fixed(T),
    /// `1 - alpha/lambda`: the smallest monotone choice. The update of the
    /// small cell degenerates to pure transport from its left neighbor.
    OneMinusAlphaOverLambda,
    /// `1 - alpha/(2*lambda)`: the midpoint of the admissible interval.
    OneMinusAlphaOverHalfLambda,
    /// `eta = 1`: the inflow of the small cell bypasses it entirely.
    One,
}

/// Evaluates an [`EtaRule`]. Every rule except `Fixed` yields 0 when
/// `alpha >= lambda`: a cell at least as large as the CFL distance needs no
/// stabilization.
pub fn resolve_eta<T: Real>(rule: &EtaRule<T>, alpha: T, lambda_cfl: T) -> T {
    match rule {
        EtaRule::Fixed(v) => *v,
        _ if alpha >= lambda_cfl => T::zero(),
        EtaRule::OneMinusAlphaOverLambda => T::one() - alpha / lambda_cfl,
        EtaRule::OneMinusAlphaOverHalfLambda => {
            T::one() - alpha / ((T::one() + T::one()) * lambda_cfl)
        }
        EtaRule::One => T::one(),
    }
}

/// Stabilization variant of the scheme.
#[derive(Clone, Copy, Debug)]
pub enum Stabilization<T> {
    /// Plain upwind scheme.
    None,
    /// Penalty terms on the two faces next to the small cell.
    GhostPenalty { eta1: T, eta2: T },
    /// Part of the small cell's inflow is routed directly into `k2`.
    DomainOfDependence { eta: EtaRule<T> },
}

impl<T: Real> Stabilization<T> {
    /// Assembles the matrices for this variant. `force` admits
    /// domain-of-dependence `eta` values outside `[0, 1]`, which is useful
    /// for probing non-monotone configurations.
    pub fn assemble(
        &self,
        mesh: &CutCellMesh<T>,
        config: &AdvectionConfig<T>,
    ) -> Result<SchemeMatrices<T>> {
        self.assemble_with(mesh, config, false)
    }

    pub fn assemble_with(
        &self,
        mesh: &CutCellMesh<T>,
        config: &AdvectionConfig<T>,
        force: bool,
    ) -> Result<SchemeMatrices<T>> {
        match self {
            Stabilization::None => Ok(assemble_unstabilized(mesh, config)),
            Stabilization::GhostPenalty { eta1, eta2 } => {
                Ok(assemble_ghost_penalty(mesh, config, *eta1, *eta2))
            }
            Stabilization::DomainOfDependence { eta } => {
                let value = resolve_eta(eta, mesh.alpha(), config.lambda_cfl());
                if force {
                    Ok(assemble_dod_forced(mesh, config, value))
                } else {
                    assemble_dod(mesh, config, value)
                }
            }
        }
    }
}

/// Mass diagonal and system matrix of one explicit step, `M u' = B u`.
#[derive(Clone, Debug)]
pub struct SchemeMatrices<T> {
    /// Cell lengths; the diagonal of `M`.
    pub mass_diagonal: Vec<T>,
    /// The dense matrix `B`.
    pub system: Array2<T>,
    /// Time step the matrix was assembled for.
    pub dt: T,
    /// The eta value actually used, `Some` only for domain-of-dependence.
    pub resolved_eta: Option<T>,
}

impl<T: Real> SchemeMatrices<T> {
    /// Number of cells.
    pub fn n(&self) -> usize {
        self.mass_diagonal.len()
    }

    pub fn row_sum(&self, i: usize) -> T {
        (0..self.n()).map(|j| self.system[[i, j]]).sum()
    }

    pub fn column_sum(&self, j: usize) -> T {
        (0..self.n()).map(|i| self.system[[i, j]]).sum()
    }

    /// Default slack for entrywise sign checks: `1e-13` times the background
    /// cell size (the largest mass entry), widened for low-precision scalars.
    pub fn default_monotonicity_tolerance(&self) -> T {
        let h = self
            .mass_diagonal
            .iter()
            .fold(T::zero(), |a, &b| if b > a { b } else { a });
        cast::<T>(1e-13).max(T::epsilon() * cast(4.0)) * h
    }
}

fn base_matrices<T: Real>(mesh: &CutCellMesh<T>, config: &AdvectionConfig<T>) -> SchemeMatrices<T> {
    let n = mesh.num_cells();
    let tau = config.tau(mesh.h());
    let mut system = Array2::from_elem((n, n), T::zero());
    for j in 0..n {
        system[[j, j]] = mesh.length(j) - tau;
        system[[j, mesh.prev_index(j)]] = tau;
    }
    SchemeMatrices {
        mass_diagonal: mesh.lengths().to_vec(),
        system,
        dt: config.dt(mesh.h()),
        resolved_eta: None,
    }
}

/// Plain upwind matrix. Monotone iff `alpha >= lambda`.
pub fn assemble_unstabilized<T: Real>(
    mesh: &CutCellMesh<T>,
    config: &AdvectionConfig<T>,
) -> SchemeMatrices<T> {
    base_matrices(mesh, config)
}

/// Ghost-penalty matrix with face parameters `eta1`, `eta2`. Any real
/// parameters are accepted; monotonicity is a separate question (see
/// [`crate::analysis::ghost_penalty_feasibility`]).
pub fn assemble_ghost_penalty<T: Real>(
    mesh: &CutCellMesh<T>,
    config: &AdvectionConfig<T>,
    eta1: T,
    eta2: T,
) -> SchemeMatrices<T> {
    let mut m = base_matrices(mesh, config);
    let one = T::one();
    let tau = config.tau(mesh.h());
    let k1 = mesh.k1_index();
    let k2 = mesh.k2_index();
    let km1 = mesh.prev_index(k1);
    let b = &mut m.system;
    b[[km1, km1]] = mesh.length(km1) - tau * (one - eta1);
    b[[km1, k1]] = -(tau * eta1);
    b[[k1, km1]] = tau * (one - eta1);
    b[[k1, k1]] = mesh.length(k1) - tau + tau * eta1 + tau * eta2;
    b[[k1, k2]] = -(tau * eta2);
    b[[k2, k1]] = tau * (one - eta2);
    b[[k2, k2]] = mesh.length(k2) - tau * (one - eta2);
    m
}

/// Domain-of-dependence matrix. Rejects `eta` outside `[0, 1]`; use
/// [`assemble_dod_forced`] to probe such values deliberately.
pub fn assemble_dod<T: Real>(
    mesh: &CutCellMesh<T>,
    config: &AdvectionConfig<T>,
    eta: T,
) -> Result<SchemeMatrices<T>> {
    if !(eta >= T::zero() && eta <= T::one()) {
        return Err(Error::EtaOutOfRange(eta.to_f64().unwrap_or(f64::NAN)));
    }
    Ok(assemble_dod_forced(mesh, config, eta))
}

/// Domain-of-dependence matrix without the `[0, 1]` parameter guard.
pub fn assemble_dod_forced<T: Real>(
    mesh: &CutCellMesh<T>,
    config: &AdvectionConfig<T>,
    eta: T,
) -> SchemeMatrices<T> {
    let mut m = base_matrices(mesh, config);
    let one = T::one();
    let tau = config.tau(mesh.h());
    let k1 = mesh.k1_index();
    let k2 = mesh.k2_index();
    let km1 = mesh.prev_index(k1);
    let b = &mut m.system;
    b[[k1, km1]] = tau * (one - eta);
    b[[k1, k1]] = mesh.length(k1) - tau * (one - eta);
    b[[k2, km1]] = tau * eta;
    b[[k2, k1]] = tau * (one - eta);
    m.resolved_eta = Some(eta);
    m
}
