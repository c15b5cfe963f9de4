#pragma once

#include <cstdint>
#include <functional>

#include "boss/types.hpp"

namespace boss {

enum class DfSource { Ndf, Hdf, Edf, Bdf };

const char* df_source_name(DfSource s);

// Degrees of freedom per subset size, values[0] == 0 always.
struct DfProfile {
  DfSource method = DfSource::Ndf;
  Vector values;       // k_eff + 1 entries
  Vector lambda_star;  // hdf only: the root lambda*_k per size (inf at k=0)
  double sigma_hat = 0.0;

  int k_max() const { return static_cast<int>(values.size()) - 1; }
};

DfProfile ndf_profile(int k_max);

// Expected subset size of the Lagrangian problem at penalty lambda, for an
// orthogonal design with mean component xtmu = X^T mu and noise sd sigma.
// Strictly decreasing in lambda from K (lambda=0) to 0.
double expected_size(double lambda, const Vector& xtmu, double sigma);

// Analytic degrees of freedom of the Lagrangian problem at lambda.
double df_lagrangian(double lambda, const Vector& xtmu, double sigma);

struct HdfResult {
  double df = 0.0;
  double lambda_star = 0.0;
};

// Heuristic df at size k: bisects E(k_L(lambda)) = k on u = sqrt(2*lambda)
// and evaluates df_lagrangian at the root. Throws numerical_error if the
// size equation cannot be met to 1e-8 within 200 iterations.
HdfResult hdf(int k, const Vector& xtmu, double sigma);

// Whole profile k = 0..k_max (k_max defaults to the length of xtmu).
DfProfile hdf_profile(const Vector& xtmu, double sigma, int k_max = -1);

// Closed form of hdf under an orthogonal design and a null true model,
// used as an independent oracle for Algorithm-1 output.
double hdf_null_closed_form(int k, int p);

// A fitting rule evaluated over a whole path: given a response, returns the
// n x (k_max+1) matrix of fitted values, one column per subset size.
using PathFitter = std::function<Matrix(const Vector& y)>;

// Monte-Carlo estimate of the covariance-based edf of `fit` under
// y = mu + N(0, sigma^2 I): values[k] = sum_i cov(muhat_i(k), y_i) / sigma^2.
// Replications run in parallel in fixed-size blocks; the reduction order is
// independent of the thread count.
DfProfile edf_monte_carlo(const PathFitter& fit, const Vector& mu, double sigma, int reps,
                          std::uint64_t seed);

// Parametric bootstrap flavor: responses drawn from N(mu_hat, sigma_hat^2 I).
DfProfile bdf_bootstrap(const PathFitter& fit, const Vector& mu_hat, double sigma_hat, int B,
                        std::uint64_t seed);

}  // namespace boss
