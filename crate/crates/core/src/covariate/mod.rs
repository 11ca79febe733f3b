//! L1-penalized pseudolikelihood estimation and sampling for the Ising
//! model with node covariates (dependent logistic regression).

mod diag;
mod fit;
mod gibbs;
mod model;

pub use diag::{assumption_report, AssumptionReport};
pub use fit::{
    fit_penalized, fit_penalized_at_lambda, grad_neg_log_pl, neg_log_pl, PenalizedFit,
};
pub use gibbs::{gibbs_covariate, gibbs_covariate_run};
pub use model::{parse_covariates_csv, parse_edge_list, parse_responses, CovariateModel};
