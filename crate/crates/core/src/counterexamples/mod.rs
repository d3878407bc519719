//! The explicit function families behind the sharpness and failure
//! statements: the self-dual two-scale Gaussians `g_c`, the signed
//! Rudin–Shapiro translate sums, and the logarithmic endpoint integrals.

mod endpoint;
mod rudin_shapiro;
mod sharpness;

pub use endpoint::{endpoint_l1_mass, endpoint_tail_mass, endpoint_weighted_mass};
pub use rudin_shapiro::{
    bump_base, rs_family_sequence, rs_fourier_defect, rs_grid_spec, rs_growth_ratio, rs_level, sign_matrix,
    RSFamily, RsGrowth, SignMatrix, RS_SPACING,
};
pub use sharpness::{alpha_exponent, gc_infimum_sweep, gc_profile, gc_uncertainty_ratio, h_bound};
