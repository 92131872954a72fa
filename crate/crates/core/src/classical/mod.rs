//! Mean-field limit `S → ∞` in the canonical disk chart.

pub mod cubic;
pub mod disk;
pub mod fixed_points;
pub mod lyapunov;
pub mod region;
pub mod separatrix;

pub use disk::{classical_hamiltonian, effective_potential, hamilton_flow, hamiltonian_gradient, PhasePoint};
pub use fixed_points::{find_fixed_points, FixedPoint, Stability};
pub use lyapunov::{
    fit_max_lyapunov_line, jacobian_at, lyapunov_exponent, lyapunov_map, max_lyapunov,
    primary_hyperbolic_point, LyapunovMap, MapCell, MapGrid, RidgeFit,
};
pub use region::{classify_region, h2_over_j, Boundary, Region, RegionInfo, RegionLabel};
pub use separatrix::{separatrix, Polyline};
