#include "boss/dof.hpp"

#include <cmath>

#include "boss/normal.hpp"
#include "boss/rng.hpp"

namespace boss {

const char* df_source_name(DfSource s) {
  switch (s) {
    case DfSource::Ndf: return "ndf";
    case DfSource::Hdf: return "hdf";
    case DfSource::Edf: return "edf";
    case DfSource::Bdf: return "bdf";
  }
  return "?";
}

DfProfile ndf_profile(int k_max) {
  DfProfile prof;
  prof.method = DfSource::Ndf;
  prof.values = Vector::LinSpaced(k_max + 1, 0.0, static_cast<double>(k_max));
  return prof;
}

namespace {

// E(k_L) and df_L as functions of u = sqrt(2*lambda); both are smoother in u
// than in lambda, which is why the root-finder works on u.
double expected_size_u(double u, const Vector& a, double sigma) {
  double s = 0.0;
  for (int i = 0; i < a.size(); ++i) {
    s += 1.0 - normal_cdf((u - a[i]) / sigma) + normal_cdf((-u - a[i]) / sigma);
  }
  return s;
}

double df_lagrangian_u(double u, const Vector& a, double sigma) {
  double corr = 0.0;
  for (int i = 0; i < a.size(); ++i) {
    corr += normal_pdf((u - a[i]) / sigma) + normal_pdf((-u - a[i]) / sigma);
  }
  return expected_size_u(u, a, sigma) + (u / sigma) * corr;
}

}  // namespace

double expected_size(double lambda, const Vector& xtmu, double sigma) {
  if (!(sigma > 0.0)) throw numerical_error("expected_size: sigma must be positive");
  return expected_size_u(std::sqrt(2.0 * lambda), xtmu, sigma);
}

double df_lagrangian(double lambda, const Vector& xtmu, double sigma) {
  if (!(sigma > 0.0)) throw numerical_error("df_lagrangian: sigma must be positive");
  return df_lagrangian_u(std::sqrt(2.0 * lambda), xtmu, sigma);
}

HdfResult hdf(int k, const Vector& xtmu, double sigma) {
  const int K = static_cast<int>(xtmu.size());
  if (!(sigma > 0.0)) throw numerical_error("hdf: sigma must be positive");
  if (k < 0 || k > K) throw config_error("hdf: k out of range");
  if (k == 0) return {0.0, std::numeric_limits<double>::infinity()};

  const double tol = 1e-8;
  double lo = 0.0;
  double hi = xtmu.cwiseAbs().maxCoeff() +
              sigma * normal_quantile(1.0 - 1.0 / (4.0 * static_cast<double>(K)));
  // E is K at u=0 and below 1/2 at hi, so [lo, hi] brackets every k >= 1.
  double e_lo = expected_size_u(lo, xtmu, sigma);
  if (std::abs(e_lo - k) < tol) {
    return {df_lagrangian_u(lo, xtmu, sigma), 0.0};
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double e = expected_size_u(mid, xtmu, sigma);
    if (std::abs(e - k) < tol) {
      return {df_lagrangian_u(mid, xtmu, sigma), mid * mid / 2.0};
    }
    if (e > k) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  throw numerical_error("hdf: size equation not solved to 1e-8 in 200 bisections (k=" +
                        std::to_string(k) + ", K=" + std::to_string(K) + ")");
}

DfProfile hdf_profile(const Vector& xtmu, double sigma, int k_max) {
  const int K = static_cast<int>(xtmu.size());
  if (k_max < 0) k_max = K;
  if (k_max > K) throw config_error("hdf_profile: k_max exceeds basis size");
  DfProfile prof;
  prof.method = DfSource::Hdf;
  prof.sigma_hat = sigma;
  prof.values = Vector::Zero(k_max + 1);
  prof.lambda_star = Vector::Zero(k_max + 1);
  prof.lambda_star[0] = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= k_max; ++k) {
    const HdfResult r = hdf(k, xtmu, sigma);
    prof.values[k] = r.df;
    prof.lambda_star[k] = r.lambda_star;
  }
  return prof;
}

double hdf_null_closed_form(int k, int p) {
  if (k < 1 || k > p) throw config_error("hdf_null_closed_form: need 1 <= k <= p");
  if (k == p) return static_cast<double>(p);
  const double q = normal_quantile(static_cast<double>(k) / (2.0 * p));
  return k - 2.0 * p * q * normal_pdf(q);
}

namespace {

// Shared core of edf/bdf: sample covariance between fitted values and the
// response across replications. Work is chunked into fixed-size blocks so
// partial sums merge in block order no matter how many threads run.
DfProfile covariance_df(const PathFitter& fit, const Vector& mu, double sigma, int reps,
                        std::uint64_t seed, DfSource tag) {
  if (reps < 2) throw config_error("covariance df: need at least 2 replications");
  const int n = static_cast<int>(mu.size());

  // Probe one fit to size the accumulators.
  const int kp1 = [&] {
    RepRng rng(seed, 0);
    const Vector y = mu + rng.normal_vector(n, sigma);
    return static_cast<int>(fit(y).cols());
  }();

  constexpr int kBlock = 25;
  const int nblocks = (reps + kBlock - 1) / kBlock;
  std::vector<Matrix> s_f(nblocks);   // sum of fitted values
  std::vector<Matrix> s_fy(nblocks);  // sum of fitted * y (elementwise)
  std::vector<Vector> s_y(nblocks);

#pragma omp parallel for schedule(dynamic)
  for (int b = 0; b < nblocks; ++b) {
    Matrix sf = Matrix::Zero(n, kp1);
    Matrix sfy = Matrix::Zero(n, kp1);
    Vector sy = Vector::Zero(n);
    const int r_end = std::min(reps, (b + 1) * kBlock);
    for (int r = b * kBlock; r < r_end; ++r) {
      RepRng rng(seed, r);
      const Vector y = mu + rng.normal_vector(n, sigma);
      const Matrix fitted = fit(y);
      sf += fitted;
      sfy.array() += fitted.array().colwise() * y.array();
      sy += y;
    }
    s_f[b] = std::move(sf);
    s_fy[b] = std::move(sfy);
    s_y[b] = std::move(sy);
  }

  Matrix sf = Matrix::Zero(n, kp1);
  Matrix sfy = Matrix::Zero(n, kp1);
  Vector sy = Vector::Zero(n);
  for (int b = 0; b < nblocks; ++b) {
    sf += s_f[b];
    sfy += s_fy[b];
    sy += s_y[b];
  }

  DfProfile prof;
  prof.method = tag;
  prof.sigma_hat = sigma;
  prof.values = Vector::Zero(kp1);
  const double R = static_cast<double>(reps);
  for (int k = 0; k < kp1; ++k) {
    // sum_i [ (sum_r f y - (sum f)(sum y)/R) / (R-1) ]
    const double cross = sfy.col(k).sum() - sf.col(k).dot(sy) / R;
    prof.values[k] = cross / (R - 1.0) / (sigma * sigma);
  }
  return prof;
}

}  // namespace

DfProfile edf_monte_carlo(const PathFitter& fit, const Vector& mu, double sigma, int reps,
                          std::uint64_t seed) {
  return covariance_df(fit, mu, sigma, reps, seed, DfSource::Edf);
}

DfProfile bdf_bootstrap(const PathFitter& fit, const Vector& mu_hat, double sigma_hat, int B,
                        std::uint64_t seed) {
  return covariance_df(fit, mu_hat, sigma_hat, B, seed, DfSource::Bdf);
}

}  // namespace boss
