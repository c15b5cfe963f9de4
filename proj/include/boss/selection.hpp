#pragma once

#include <cstdint>
#include <functional>
#include <optional>

#include "boss/criteria.hpp"
#include "boss/dof.hpp"
#include "boss/lasso.hpp"
#include "boss/paths.hpp"
#include "boss/types.hpp"

namespace boss {

struct NoiseEstimate {
  enum class Source { FullOls, LassoReid, Known };
  Vector mu_hat;
  double sigma_hat = 0.0;
  Source source = Source::FullOls;
  bool degenerate = false;  // sigma_hat underflowed to zero

  // X^T mu_hat against an orthonormal basis Q (columns of zero mean).
  Vector against(const Matrix& Q) const { return Q.transpose() * mu_hat; }
};

NoiseEstimate known_noise(const Vector& mu, double sigma);

// Full-model OLS noise estimate when n > p + 1, lasso-based (10-fold CV,
// df = nonzero count) otherwise. The basis argument reuses the BOSS
// orthogonalization of the same data.
NoiseEstimate estimate_noise(const Dataset& data, const OrderedBasis& basis,
                             std::uint64_t seed = 42);

struct SelectionResult {
  int k_selected = 0;  // column index into the path
  Vector coefficients;
  double intercept = 0.0;
  std::vector<int> support;
  CriterionTrace trace;   // IC selection
  Vector cv_errors;       // CV selection
  NoiseEstimate noise;
  DfProfile df_profile;
};

// Information-criterion selection over a path. Criteria always see
// df(k) + 1 for the intercept. Ties go to the smallest size.
SelectionResult select_ic(const SolutionPath& path, Criterion crit, const DfProfile& dfp,
                          const NoiseEstimate& noise);

using PathProducer = std::function<SolutionPath(const Dataset&)>;

// K-fold cross-validation: deterministic seeded fold assignment (shuffled
// round-robin), per-size held-out squared error, refit on the full data at
// the winning size.
SelectionResult kfold_cv(const PathProducer& method, const Dataset& data, int folds,
                         std::uint64_t seed);

// ---------------------------------------------------------------------------
// End-to-end fitting used by the CLI, the LOO harness and the simulations.

enum class Selector { AiccHdf, CpHdf, BicHdf, AiccNdf, BicNdf, AiccEdf, CpEdf, Cv, ErrKl };

const char* selector_name(Selector s);
Selector parse_selector(const std::string& text);
Method parse_method(const std::string& text);

struct FitSpec {
  Method method = Method::Boss;
  Selector selector = Selector::AiccHdf;
  int cv_folds = 10;
  std::uint64_t seed = 42;
  int k_max = -1;  // bs_exhaustive cap; -1 means min(n-1, p)

  // Simulation-only knowledge of the truth: enables ErrKl and the
  // edf-based selectors, and lets hdf use the true moments.
  bool use_true_noise = false;
  Vector true_mu;
  double true_sigma = 0.0;
  int edf_reps = 1000;  // inner Monte-Carlo size for the edf selectors
};

struct FitOutcome {
  SelectionResult sel;
  Vector fitted;  // in-sample fitted values at the selection
  double seconds = 0.0;
};

FitOutcome fit_method(const Dataset& data, const FitSpec& spec);

// True when the centered columns of X are orthonormal to within 1e-8; the
// best-subset path then reduces to ranking z = X^T y.
bool is_orthonormal_design(const Matrix& Xc, double tol = 1e-8);

// Best-subset path for an orthonormal (after centering) design, built by
// direct ranking. Throws config_error when the design is not orthonormal.
SolutionPath bs_orthogonal_path(const Dataset& data);

}  // namespace boss
