//! Quantities derived from spectra: gap traces and minima, scaling fits,
//! degeneracy checks, the quasiclassical estimate, runtime bounds and
//! real-time evolution.

pub mod evolve;
pub mod fit;
pub mod gap;
pub mod kramers;
pub mod perturb;
pub mod runtime;
pub mod states;
pub mod wkb;

pub use evolve::{evolve_schrodinger, EvolutionResult};
pub use fit::{fit_scaling, scaling_study, FitModel, ScalingFit, ScalingStudy};
pub use gap::{find_min_gap, gap_trace, GapPoint, GapTrace, MinGapOptions, MinGapResult};
pub use kramers::{kramers_check, KramersReport};
pub use perturb::{perturbative_estimate, ElementConvention, PerturbativeEstimate};
pub use runtime::runtime_bound;
pub use states::exact_ground_state;
pub use wkb::{wkb_matrix_element, wkb_potential};
