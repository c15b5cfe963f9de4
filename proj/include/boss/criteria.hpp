#pragma once

#include "boss/dof.hpp"
#include "boss/types.hpp"

namespace boss {

enum class Criterion { Cp, Aic, Aicc, Bic, ErrKl };

const char* criterion_name(Criterion c);

// Per-size criterion values. +inf marks inadmissible sizes (AICc pole,
// zero RSS), so the trace stays totally ordered and argmin is well defined.
struct CriterionTrace {
  Criterion criterion = Criterion::Aicc;
  DfSource df_source = DfSource::Ndf;
  Vector values;
  int argmin = 0;  // smallest k among ties
};

double cp(double rss, double df, double sigma2);
double aic(double rss, double df, int n);
double aicc(double rss, double df, int n);
double bic(double rss, double df, int n);

// Training deviance of the fitted Gaussian model, n log(RSS/n) - n,
// with the n log(2*pi) constant dropped.
double err_kl_train(double rss, int n);

// Builds the trace for one criterion over a path's rss vector; df holds the
// effective degrees of freedom per size (any intercept adjustment already
// applied by the caller). sigma2 is only used by Cp.
CriterionTrace evaluate_trace(Criterion c, const Vector& rss, const Vector& df, int n,
                              double sigma2 = 0.0);

// Single-replication unbiased estimate of the expected KL testing error:
// err_kl_train + n (n sigma^2 + |mu - muhat(k)|^2) / rss(k) + n per size.
// Needs the true mean and noise sd, so this is a simulation-only validator.
CriterionTrace err_kl_estimate(const Matrix& fitted, const Vector& rss, const Vector& mu,
                               double sigma);

// Index of the minimal finite value (ties: smallest index). Throws
// selection_error if every value is +inf.
int argmin_finite(const Vector& values);

}  // namespace boss
