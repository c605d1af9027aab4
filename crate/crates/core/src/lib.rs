//! A kernel for the λδ-2B calculus: terms with abbreviations and casts in
//! de Bruijn form, bound rt-reduction, normal forms, arity inference, and
//! validity checking parametric in the applicability domain.

pub mod arity;
pub mod checker;
pub mod cli;
pub mod config;
pub mod domain;
pub mod equiv;
pub mod error;
pub mod eta;
pub mod normal;
pub mod reduction;
pub mod subclosure;
pub mod syntax;
pub mod term;
pub mod vars;

pub use arity::{infer_arity, Arity};
pub use checker::{rt_convertible, Checker, Failure, PathStep, Premise, ValidityReport};
pub use domain::{domain_leq, ApplicabilityDomain};
pub use error::{default_fuel, KernelError};
pub use normal::{is_r_normal, r_normalize, rt_normal_form, whnf_rt, WhnfResult};
pub use reduction::{
    canonical_type, qrst_steps, reachable_rt, step_env_r, step_env_x, step_rt, step_t, step_x, QrstKind, QrstStep,
    RtStep, Rule,
};
pub use syntax::{parse_closure, parse_term, print_closure, print_term, SyntaxError};
pub use term::{lift, lower, BoundCount, Closure, Entry, Env, SortPolicy, Term};
pub use vars::{inherited_free_vars, is_closed_in, VarSet};
