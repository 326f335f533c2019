//! Numerical checks of the dissipative-solution inequality, the
//! Gronwall-type lemma, the energy estimate and the α-uniform bounds.
//!
//! These sample finitely many times and test pairs. A passing report means
//! no violation was found, nothing more.

mod calibrate;
mod gronwall;
mod identities;
mod margin;
mod sweep;

pub use calibrate::{calibrate_gamma, combine_constants, GammaCalibration, DEFAULT_SAFETY, MIN_SAMPLES};
pub use gronwall::{
    bound_from, cumulative_trapezoid, gronwall_bound, gronwall_selftest, GronwallInput, GronwallSelfTest, CLOSED_FORM_TOLERANCE,
    COMPARISON_TOLERANCE,
};
pub use identities::{identity_suite, IdentityReport, IDENTITY_TOLERANCE, ROUNDTRIP_TOLERANCE};
pub(crate) use margin::min_or_nan;
pub use margin::{
    coincidence_check, dissipative_estimate, inequality_margin, reference_test_pair, CheckMode,
    CoincidenceOptions, DissipativeReport, DEFAULT_TOLERANCE, TOLERANCE_FLOOR,
};
pub use sweep::{alpha_sweep, SweepEntry, SweepReport, ENERGY_SLACK};
