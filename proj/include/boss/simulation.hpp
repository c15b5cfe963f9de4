#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "boss/selection.hpp"
#include "boss/types.hpp"

namespace boss {

enum class Design {
  OrthNull,
  OrthSparseEx1,
  OrthSparseEx2,
  OrthDense,
  SparseEx1,
  SparseEx2,
  SparseEx3,
  SparseEx4,
  Dense,
};

const char* design_name(Design d);
Design parse_design(const std::string& text);
bool is_orthogonal_design(Design d);

// Trigonometric orthonormal design: sin/cos columns at integer frequencies,
// scaled to unit l2 norm. p must be even and no larger than n.
Matrix gen_orthogonal_trig(int n, int p);

struct GeneralDesign {
  Matrix X;
  Vector beta;
  Matrix Sigma;
};

// Gaussian design with the covariance structure and coefficient vector of
// the named scenario; rows are i.i.d. N(0, Sigma) from a seeded stream.
GeneralDesign gen_general(Design d, int n, int p, double rho, std::uint64_t seed);

// Coefficient vector of a design at dimension p (used for both the
// orthogonal and the general variants).
Vector design_beta(Design d, int p);

// sigma such that beta' Sigma beta / sigma^2 = snr.
double calibrate_sigma(const Vector& beta, const Matrix& Sigma, double snr);
// Fixed-design flavor: Var(x beta) taken as |X beta|^2 / n.
double calibrate_sigma_fixed(const Vector& mu, int n, double snr);

struct TrueModel {
  Matrix X;
  Vector beta;
  Vector mu;  // X beta
  double sigma = 1.0;
  double snr = 0.0;
  bool orthogonal = false;
};

TrueModel build_true_model(Design d, int n, int p, double rho, double snr,
                           std::uint64_t seed);

struct MethodSpec {
  Method method = Method::Boss;
  Selector selector = Selector::AiccHdf;

  std::string label() const;
};

// Replication r of the response: mu plus noise shifted to exact zero mean
// (so the true intercept is zero), from the (seed, r) substream.
Vector draw_response(const TrueModel& tm, std::uint64_t seed, int rep);

struct SimConfig {
  Design design = Design::OrthSparseEx1;
  int n = 200;
  int p = 30;
  double rho = 0.0;
  double snr = 7.0;
  int reps = 200;
  std::uint64_t seed = 42;
  std::vector<MethodSpec> entries;
  std::optional<Method> baseline;  // default: bs for orthogonal designs, boss otherwise
  bool use_true_noise = false;
  int cv_folds = 10;
  int edf_reps = 1000;
};

struct MethodReport {
  MethodSpec spec;
  bool skipped = false;
  std::string note;
  double rmse_mean = 0.0;
  double rmse_se = 0.0;
  double pct_worse = 0.0;
  double rel_efficiency = 0.0;
  double sparsistency = 0.0;
  double extra = 0.0;
  double avg_size = 0.0;
  double seconds = 0.0;  // total fit time; excluded from serialized reports
};

struct SimReport {
  SimConfig config;
  double sigma = 0.0;
  double oracle_rmse_mean = 0.0;
  double null_rmse_mean = 0.0;
  double full_rmse_mean = 0.0;
  bool full_reduced = false;  // p >= n-1 forced a reduced "full" fit
  std::vector<MethodReport> methods;
};

// Fixed design, replicated responses with exactly mean-zero noise, every
// method/selector pair fitted per replication. Metrics follow the usual
// conventions: RMSE against X beta, % worse than the per-replication oracle
// along the baseline path, relative efficiency over the method pool plus the
// null and full OLS fits.
SimReport run_experiment(const SimConfig& config);

struct LooEntryReport {
  MethodSpec spec;
  bool skipped = false;
  std::string note;
  double rmse = 0.0;
  double avg_predictors = 0.0;
  double avg_seconds = 0.0;
};

struct LooReport {
  int n = 0;
  std::vector<LooEntryReport> entries;
};

// Leave-one-out evaluation: n refits, each predicting the held-out row.
LooReport loo_real_data(const Dataset& data, const std::vector<MethodSpec>& specs,
                        int cv_folds = 10, std::uint64_t seed = 42);

struct LbsCompareConfig {
  Design design = Design::OrthSparseEx1;
  int n = 200;
  int p = 30;
  double snr = 7.0;
  int reps = 200;
  std::uint64_t seed = 42;
  int grid_m = 200;
  double grid_alpha = 0.001;
  int edf_reps = 1000;
};

struct LbsCompareReport {
  double lambda_max = 0.0;
  double lambda_min = 0.0;
  int more = 0;   // replications where LBS selected strictly more predictors
  int fewer = 0;  // ... strictly fewer
  int equal = 0;
  std::vector<double> bs_size_freq;   // % of replications per selected size
  std::vector<double> lbs_size_freq;
  MethodReport bs;
  MethodReport lbs;
};

// Orthogonal-design comparison of BS and LBS under Cp-edf with the true
// moments: shared log-spaced lambda grid across replications, analytic
// df_L(lambda), Monte-Carlo df_C(k).
LbsCompareReport lbs_compare(const LbsCompareConfig& config);

}  // namespace boss
