#include "boss/reference.hpp"

#include <cmath>

#include "boss/rng.hpp"

namespace boss {
namespace reference {

DfProfile edf_monte_carlo(const PathFitter& fit, const Vector& mu, double sigma, int reps,
                          std::uint64_t seed) {
  if (reps < 2) throw config_error("covariance df: need at least 2 replications");
  const int n = static_cast<int>(mu.size());

  Matrix sf, sfy;
  Vector sy = Vector::Zero(n);
  int kp1 = 0;
  for (int r = 0; r < reps; ++r) {
    RepRng rng(seed, r);
    const Vector y = mu + rng.normal_vector(n, sigma);
    const Matrix fitted = fit(y);
    if (r == 0) {
      kp1 = static_cast<int>(fitted.cols());
      sf = Matrix::Zero(n, kp1);
      sfy = Matrix::Zero(n, kp1);
    }
    sf += fitted;
    sfy.array() += fitted.array().colwise() * y.array();
    sy += y;
  }

  DfProfile prof;
  prof.method = DfSource::Edf;
  prof.sigma_hat = sigma;
  prof.values = Vector::Zero(kp1);
  const double R = reps;
  for (int k = 0; k < kp1; ++k) {
    const double cross = sfy.col(k).sum() - sf.col(k).dot(sy) / R;
    prof.values[k] = cross / (R - 1.0) / (sigma * sigma);
  }
  return prof;
}

namespace {

struct Best {
  double rss = std::numeric_limits<double>::infinity();
  std::vector<int> support;
};

void dfs(const Matrix& Xc, const Vector& yc, int next_col, int k_max, QRState& qr, double rss,
         std::vector<int>& sup, std::vector<Best>& best) {
  const int p = static_cast<int>(Xc.cols());
  if (static_cast<int>(sup.size()) == k_max) return;
  for (int j = next_col; j < p; ++j) {
    if (!qr.append(Xc.col(j), j)) continue;
    const int k = qr.size();
    const double g = qr.Q().col(k - 1).dot(yc);
    const double r2 = std::max(0.0, rss - g * g);
    sup.push_back(j);
    if (r2 < best[k].rss) {
      best[k].rss = r2;
      best[k].support = sup;
    }
    dfs(Xc, yc, j + 1, k_max, qr, r2, sup, best);
    sup.pop_back();
    qr.pop();
  }
}

}  // namespace

SolutionPath bs_exhaustive(const Dataset& data, int k_max) {
  data.validate();
  const int n = data.n(), p = data.p();
  if (p > 25) throw config_error("bs_exhaustive: p > 25 not enumerable");
  if (k_max < 0 || k_max > p) throw config_error("bs_exhaustive: k_max out of range");
  k_max = std::min(k_max, n - 1);

  const CenteredData cd = center(data);
  const double yss = cd.yc.squaredNorm();

  std::vector<Best> best(k_max + 1);
  best[0].rss = yss;
  // Workers in the parallel version own one leading column each and merge in
  // ascending order; a single DFS from an empty state visits the exact same
  // sequence.
  {
    QRState qr;
    std::vector<int> sup;
    dfs(cd.Xc, cd.yc, 0, k_max, qr, yss, sup, best);
  }

  SolutionPath path;
  path.method = Method::Bs;
  path.k_eff = k_max;
  path.coefs = Matrix::Zero(p, k_max + 1);
  path.intercepts = Vector::Zero(k_max + 1);
  path.rss = Vector::Zero(k_max + 1);
  path.supports.resize(k_max + 1);
  path.rss[0] = yss;
  path.intercepts[0] = cd.ybar;
  for (int k = 1; k <= k_max; ++k) {
    const Best& bk = best[k];
    if (!std::isfinite(bk.rss)) {
      path.k_eff = k - 1;
      path.truncated = true;
      path.coefs.conservativeResize(p, k);
      path.intercepts.conservativeResize(k);
      path.rss.conservativeResize(k);
      path.supports.resize(k);
      break;
    }
    Matrix sub(n, bk.support.size());
    for (size_t i = 0; i < bk.support.size(); ++i) sub.col(i) = cd.Xc.col(bk.support[i]);
    const OlsFit fit = ols(sub, cd.yc);
    for (size_t i = 0; i < bk.support.size(); ++i) {
      path.coefs(bk.support[i], k) = fit.coef[i];
      if (fit.coef[i] != 0.0) path.supports[k].push_back(bk.support[i]);
    }
    path.rss[k] = fit.rss;
    path.intercepts[k] = cd.ybar - cd.xbar.dot(path.coefs.col(k));
  }
  return path;
}

}  // namespace reference
}  // namespace boss
