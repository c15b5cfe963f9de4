#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "boss/types.hpp"

namespace boss {

struct LassoOptions {
  int nlambda = 100;
  double lmin_ratio = 0.001;
  double tol = 1e-7;       // on the max coefficient change per sweep
  int max_iter = 100000;   // total sweeps per lambda
  bool standardize = true;
  Vector lambdas;  // optional explicit decreasing grid; overrides nlambda
  // Diagnostic hook called after every sweep with (lambda index, sweep
  // number, objective value). Computing the objective is O(np), so the hook
  // also makes fits slower; leave empty outside tests.
  std::function<void(int, int, double)> sweep_hook;
};

struct LassoPath {
  Vector lambdas;
  Matrix coefs;  // p x L, original scale
  Vector intercepts;
  Vector rss;
  std::vector<int> df;  // nonzero counts per lambda
  std::vector<char> converged;

  int n_lambda() const { return static_cast<int>(lambdas.size()); }
};

// Cyclic coordinate descent with warm starts along a decreasing lambda grid,
// soft-thresholding updates, active-set iteration between full sweeps.
// Objective: (1/2n) |y - b0 - X b|^2 + lambda |b|_1 on internally
// standardized columns; coefficients are returned on the original scale.
LassoPath lasso_cd(const Dataset& data, const LassoOptions& opts = {});

struct LassoCvFit {
  double lambda = 0.0;
  int lambda_index = 0;
  Vector coef;
  double intercept = 0.0;
  Vector mu_hat;  // fitted values on the full data at the selected lambda
  int df = 0;
  Vector cv_errors;  // total held-out squared error per lambda
};

// K-fold cross-validated lasso on the full-data grid; ties in CV error go to
// the larger lambda (sparser model).
LassoCvFit lasso_cv(const Dataset& data, int folds, std::uint64_t seed,
                    const LassoOptions& opts = {});

}  // namespace boss
