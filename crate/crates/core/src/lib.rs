//! Best uniform trigonometric approximation of periodic convolution
//! classes.
//!
//! The library builds the generating kernels Ψ(t) = Σ ψ(k)cos(kt − β_kπ/2)
//! of a convolution class, the extremal witnesses f = F₁ + F₂ living in it,
//! and the two-sided estimates that pin the best uniform approximation
//! E_n(f) between a constructive alternation bound and a Fourier-remainder
//! bound. A trigonometric Remez exchange computes certified E_n values so
//! every estimate can be checked against a true solve.
//!
//! Modules:
//! - [`series`]: ψ/β̄ sequences, certified tail sums, decay hypotheses, and
//!   kernel evaluation;
//! - [`norms`]: L_p and uniform norms, the ‖cos‖_{p'} constant;
//! - [`extremal`]: witness construction and the de la Vallée Poussin bound;
//! - [`best_approx`]: Fourier partial sums and the Remez exchange;
//! - [`bounds`]: the bound formulas, family brackets, reference terms, and
//!   the end-to-end verification pipeline.

pub mod best_approx;
pub mod bounds;
pub mod error;
mod extremum;
pub mod extremal;
pub mod norms;
pub mod quad;
pub mod series;
pub mod special;

pub use best_approx::{
    fourier_partial_sum, remainder_sup, remez_trig, remez_trig_from, RemezResult, TrigPolynomial,
};
pub use bounds::{
    elliptic_k, exp_class_report, lower_bound, p1_delta_lower, reference_asymptotics,
    upper_bound, verify_point, weyl_nagy_report, BoundsReport, ReferenceFormula, ReportStatus,
    VerifyOptions,
};
pub use error::{Error, Result};
pub use extremal::{
    alternation_points, build_witness, phi_eval, phi_harmonics, vallee_poussin_lower,
    ExtremalWitness, WitnessSpec,
};
pub use norms::{
    conjugate_exponent, cos_pnorm, lp_norm, sup_norm, PeriodicFunction, QuadratureSpec,
    Smoothness,
};
pub use series::{
    hypothesis_check, BetaSequence, Condition, HypothesisReport, KernelSpec, PsiSequence,
};
