//! 1D cut-cell advection schemes and their monotonicity analysis.
//!
//! The setting: linear advection with velocity `beta > 0` on the periodic
//! unit interval, discretized with piecewise-constant upwind finite volumes
//! and explicit Euler in time. The mesh is equidistant except that one
//! background cell is split into a cut pair `(alpha*h, (1-alpha)*h)`. The
//! time step is chosen relative to the background size, `dt = lambda*h/beta`,
//! so for `alpha < lambda` the small cell is run far beyond its own CFL
//! limit. This crate provides
//!
//! - [`mesh`]: the cut-cell mesh,
//! - [`assembly`]: mass and system matrices for the plain upwind scheme and
//!   two small-cell treatments (ghost penalty, domain of dependence),
//! - [`stepping`]: initial data, projection, and explicit time stepping,
//! - [`analysis`]: entrywise monotonicity checks, the admissible parameter
//!   interval of the domain-of-dependence scheme, the infeasibility
//!   certificate for ghost penalties, and solution functionals (TV, L1,
//!   mass, extrema),
//! - [`oracle`]: exact advection of piecewise-constant data by
//!   characteristic tracing, used as an independent reference.
//!
//! Everything is generic over the floating-point type via [`Real`]; the
//! aliases below fix `f64` (the default working precision) and `f32`.
//!
//! ```
//! use cutcell::{
//!     admissible_eta_interval, assemble_dod, check_monotonicity, project_initial_data, step,
//!     AdvectionConfig64, CutCellMesh64, InitialProfile,
//! };
//!
//! let mesh = CutCellMesh64::new(10, 0.001, 0.5).unwrap();
//! let config = AdvectionConfig64::new(1.0, 0.4).unwrap();
//! let eta = admissible_eta_interval(0.001, 0.4).lower;
//! let matrices = assemble_dod(&mesh, &config, eta).unwrap();
//! assert!(check_monotonicity(&matrices, None).monotone);
//!
//! let u0 = project_initial_data(&mesh, &InitialProfile::Step { lower: 0.1, upper: 0.5 }).unwrap();
//! let u1 = step(&u0, &matrices).unwrap();
//! assert!((u1.values[mesh.k1_index()] - 1.0).abs() < 1e-12);
//! ```

pub mod analysis;
pub mod assembly;
pub mod error;
pub mod mesh;
pub mod oracle;
pub mod scalar;
pub mod stepping;

pub use analysis::{
    admissible_eta_interval, check_monotonicity, extrema, ghost_penalty_feasibility, l1_norm,
    mass, total_variation, EtaInterval, GpFeasibilityCertificate, MonotonicityReport,
};
pub use assembly::{
    assemble_dod, assemble_dod_forced, assemble_ghost_penalty, assemble_unstabilized, resolve_eta,
    AdvectionConfig, EtaRule, SchemeMatrices, Stabilization,
};
pub use error::{Error, Result};
pub use mesh::{Cell, CutCellMesh};
pub use oracle::{advect_and_average, exact_solution_samples};
pub use scalar::Real;
pub use stepping::{
    cut_cell_update_closed_form, project_initial_data, run, step, upwind_update, InitialProfile,
    PiecewiseConstantState,
};

/// `f64` instantiations, the working precision of the command-line tool.
pub type CutCellMesh64 = CutCellMesh<f64>;
pub type AdvectionConfig64 = AdvectionConfig<f64>;
pub type SchemeMatrices64 = SchemeMatrices<f64>;
pub type State64 = PiecewiseConstantState<f64>;

/// `f32` instantiations.
pub type CutCellMesh32 = CutCellMesh<f32>;
pub type AdvectionConfig32 = AdvectionConfig<f32>;
pub type SchemeMatrices32 = SchemeMatrices<f32>;
pub type State32 = PiecewiseConstantState<f32>;
