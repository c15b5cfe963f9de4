#include "boss/paths.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace boss {

const char* method_name(Method m) {
  switch (m) {
    case Method::Boss: return "boss";
    case Method::Fs: return "fs";
    case Method::Bs: return "bs";
    case Method::Lbs: return "lbs";
    case Method::Lasso: return "lasso";
  }
  return "?";
}

OrderedBasis build_ordered_basis(const Dataset& data) {
  OrderedBasis out;
  out.cd = center(data);
  const int n = data.n(), p = data.p();
  const int k_target = std::min(n - 1, p);

  out.qr.init_cache(out.cd.Xc);
  Vector ydot = out.cd.Xc.transpose() * out.cd.yc;  // <yc, resid_j>
  std::vector<char> alive(p, 1);
  std::vector<double> zvals;
  zvals.reserve(k_target);

  while (static_cast<int>(out.qr.size()) < k_target) {
    // Largest |corr(y, resid_j)|; compare ydot_j^2 / |resid_j|^2 by
    // cross-multiplication, lower index winning ties.
    int best = -1;
    double best_num = 0.0, best_den = 1.0;
    for (int j = 0; j < p; ++j) {
      if (!alive[j] || !out.qr.cache_active(j)) continue;
      const double den = out.qr.residual_norm2(j);
      const double lim = kRankEps * out.cd.Xc.col(j).norm();
      if (den < lim * lim) {
        alive[j] = 0;  // collinear with the basis; skipped permanently
        continue;
      }
      const double num = ydot[j] * ydot[j];
      if (best < 0 || num * best_den > best_num * den) {
        best = j;
        best_num = num;
        best_den = den;
      }
    }
    if (best < 0) break;

    alive[best] = 0;
    if (!out.qr.append_cached(best, out.cd.Xc.col(best))) continue;

    const int k = out.qr.size() - 1;
    const double zk = out.qr.Q().col(k).dot(out.cd.yc);
    zvals.push_back(zk);
    // <yc, resid_j - c_j q> = <yc, resid_j> - c_j z_k
    const Vector& c = out.qr.last_sweep();
    for (int j = 0; j < p; ++j) {
      if (alive[j] && out.qr.cache_active(j)) ydot[j] -= c[j] * zk;
    }
  }

  out.k_eff = out.qr.size();
  out.truncated = out.k_eff < k_target;
  out.z = Eigen::Map<Vector>(zvals.data(), out.k_eff);
  return out;
}

namespace {

// Shared back end of boss_path / fs_path: given per-size kept flags over the
// ordered basis, back-solve to original coordinates.
SolutionPath project_back(const OrderedBasis& basis, Method method,
                          const std::vector<std::vector<int>>& kept_per_size) {
  const int K = basis.k_eff;
  const int p = static_cast<int>(basis.cd.Xc.cols());
  const int m = static_cast<int>(kept_per_size.size());

  SolutionPath path;
  path.method = method;
  path.order = basis.qr.order();
  path.z = basis.z;
  path.k_eff = K;
  path.truncated = basis.truncated;
  path.coefs = Matrix::Zero(p, m);
  path.intercepts = Vector::Zero(m);
  path.rss = Vector::Zero(m);
  path.supports.resize(m);

  const double yss = basis.cd.yc.squaredNorm();
  for (int s = 0; s < m; ++s) {
    Vector gamma = Vector::Zero(K);
    double explained = 0.0;
    for (int j : kept_per_size[s]) {
      gamma[j] = basis.z[j];
      explained += basis.z[j] * basis.z[j];
    }
    path.rss[s] = std::max(0.0, yss - explained);
    if (!kept_per_size[s].empty()) {
      const Vector beta_ordered = back_solve(basis.qr.R(), gamma);
      for (int i = 0; i < K; ++i) {
        const int orig = path.order[i];
        path.coefs(orig, s) = beta_ordered[i];
        if (beta_ordered[i] != 0.0) path.supports[s].push_back(orig);
      }
      std::sort(path.supports[s].begin(), path.supports[s].end());
    }
    path.intercepts[s] = basis.cd.ybar - basis.cd.xbar.dot(path.coefs.col(s));
  }
  return path;
}

}  // namespace

std::vector<int> rank_by_magnitude(const Vector& z) {
  std::vector<int> idx(z.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
    const double fa = std::abs(z[a]), fb = std::abs(z[b]);
    if (fa != fb) return fa > fb;
    return a < b;
  });
  return idx;
}

Vector bs_orthogonal(const Vector& z, int k) {
  const int K = static_cast<int>(z.size());
  if (k < 0 || k > K) throw config_error("bs_orthogonal: k out of range");
  Vector out = Vector::Zero(K);
  const std::vector<int> ranked = rank_by_magnitude(z);
  for (int i = 0; i < k; ++i) out[ranked[i]] = z[ranked[i]];
  return out;
}

SolutionPath boss_path(const OrderedBasis& basis) {
  const int K = basis.k_eff;
  const std::vector<int> ranked = rank_by_magnitude(basis.z);
  std::vector<std::vector<int>> kept(K + 1);
  for (int k = 1; k <= K; ++k) {
    kept[k] = kept[k - 1];
    kept[k].push_back(ranked[k - 1]);
  }
  return project_back(basis, Method::Boss, kept);
}

SolutionPath boss_path(const Dataset& data) { return boss_path(build_ordered_basis(data)); }

SolutionPath fs_path(const OrderedBasis& basis) {
  const int K = basis.k_eff;
  std::vector<std::vector<int>> kept(K + 1);
  for (int k = 1; k <= K; ++k) {
    kept[k] = kept[k - 1];
    kept[k].push_back(k - 1);
  }
  return project_back(basis, Method::Fs, kept);
}

SolutionPath fs_path(const Dataset& data) { return fs_path(build_ordered_basis(data)); }

namespace {

struct BestSubset {
  double rss = std::numeric_limits<double>::infinity();
  std::vector<int> support;
};

// Depth-first enumeration visiting supports in lexicographic order, so with
// strict-improvement comparisons the retained tie is always the
// lexicographically smallest index set.
void subset_dfs(const Matrix& Xc, const Vector& yc, int next_col, int k_max, QRState& qr,
                double rss, std::vector<int>& sup, std::vector<BestSubset>& best) {
  const int p = static_cast<int>(Xc.cols());
  if (static_cast<int>(sup.size()) == k_max) return;
  for (int j = next_col; j < p; ++j) {
    if (!qr.append(Xc.col(j), j)) continue;  // in span; supersets covered elsewhere
    const int k = qr.size();
    const double g = qr.Q().col(k - 1).dot(yc);
    const double r2 = std::max(0.0, rss - g * g);
    sup.push_back(j);
    if (r2 < best[k].rss) {
      best[k].rss = r2;
      best[k].support = sup;
    }
    subset_dfs(Xc, yc, j + 1, k_max, qr, r2, sup, best);
    sup.pop_back();
    qr.pop();
  }
}

// All subsets whose smallest element is `first`.
void enumerate_from(int first, const Matrix& Xc, const Vector& yc, int k_max,
                    std::vector<BestSubset>& best) {
  QRState qr;
  if (!qr.append(Xc.col(first), first)) return;
  const double g = qr.Q().col(0).dot(yc);
  const double rss = std::max(0.0, yc.squaredNorm() - g * g);
  std::vector<int> sup = {first};
  if (rss < best[1].rss) {
    best[1].rss = rss;
    best[1].support = sup;
  }
  subset_dfs(Xc, yc, first + 1, k_max, qr, rss, sup, best);
}

}  // namespace

SolutionPath bs_exhaustive(const Dataset& data, int k_max) {
  data.validate();
  const int n = data.n(), p = data.p();
  if (p > 25) {
    throw config_error(
        "bs_exhaustive: p > 25 is not enumerable at this scale; use the boss path instead");
  }
  if (k_max < 0 || k_max > p) throw config_error("bs_exhaustive: k_max out of range");
  k_max = std::min(k_max, n - 1);

  const CenteredData cd = center(data);
  const double yss = cd.yc.squaredNorm();

  std::vector<std::vector<BestSubset>> per_first(p, std::vector<BestSubset>(k_max + 1));
#pragma omp parallel for schedule(dynamic)
  for (int first = 0; first < p; ++first) {
    if (k_max >= 1) enumerate_from(first, cd.Xc, cd.yc, k_max, per_first[first]);
  }

  // Merge in ascending first-column order: lexicographic tie-break
  // independent of the parallel schedule.
  std::vector<BestSubset> best(k_max + 1);
  best[0].rss = yss;
  for (int first = 0; first < p; ++first) {
    for (int k = 1; k <= k_max; ++k) {
      if (per_first[first][k].rss < best[k].rss) best[k] = per_first[first][k];
    }
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
    const auto& bk = best[k];
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

SolutionPath lbs_path(const Vector& z, const Vector& lambdas, double rss0) {
  const int K = static_cast<int>(z.size());
  const int L = static_cast<int>(lambdas.size());
  for (int l = 0; l + 1 < L; ++l) {
    if (!(lambdas[l] > lambdas[l + 1])) {
      throw config_error("lbs_path: lambdas must be positive decreasing");
    }
  }
  if (L > 0 && !(lambdas[L - 1] >= 0.0)) throw config_error("lbs_path: negative lambda");

  SolutionPath path;
  path.method = Method::Lbs;
  path.lambdas = lambdas;
  path.k_eff = K;
  path.coefs = Matrix::Zero(K, L);
  path.intercepts = Vector::Zero(L);
  path.rss = Vector::Zero(L);
  path.supports.resize(L);
  for (int l = 0; l < L; ++l) {
    const double thr = std::sqrt(2.0 * lambdas[l]);
    double excluded = 0.0;
    for (int i = 0; i < K; ++i) {
      if (std::abs(z[i]) >= thr) {
        path.coefs(i, l) = z[i];
        path.supports[l].push_back(i);
      } else {
        excluded += z[i] * z[i];
      }
    }
    path.rss[l] = rss0 + excluded;
  }
  return path;
}

Vector lambda_grid(const std::vector<Vector>& z_reps, int m, double alpha) {
  if (m < 2) throw config_error("lambda_grid: need m >= 2");
  if (!(alpha > 0.0 && alpha < 1.0)) throw config_error("lambda_grid: alpha outside (0,1)");
  double lambda_max = 0.0;
  for (const Vector& z : z_reps) {
    for (int i = 0; i < z.size(); ++i) lambda_max = std::max(lambda_max, z[i] * z[i] / 2.0);
  }
  if (lambda_max <= 0.0) throw config_error("lambda_grid: all-zero z inputs give a degenerate grid");
  Vector grid(m);
  const double step = std::log(alpha) / (m - 1);
  for (int i = 0; i < m; ++i) grid[i] = lambda_max * std::exp(step * i);
  return grid;
}

double theorem1_decompose(const SolutionPath& path, const Dataset& data, int k_q) {
  if (path.method != Method::Boss) {
    throw config_error("theorem1_decompose: needs a boss path");
  }
  if (path.truncated) {
    throw rank_deficient_error("theorem1_decompose: not applicable to a truncated path");
  }
  const int K = path.k_eff;
  if (k_q < 0 || k_q > K) throw config_error("theorem1_decompose: k_q out of range");

  const CenteredData cd = center(data);
  Matrix Xo(data.n(), K);
  for (int i = 0; i < K; ++i) Xo.col(i) = cd.Xc.col(path.order[i]);

  // alpha^(j): LS of yc on the first j ordered columns, zero-padded.
  std::vector<Vector> alpha(K + 1, Vector::Zero(K));
  for (int j = 1; j <= K; ++j) {
    const OlsFit fit = ols(Xo.leftCols(j), cd.yc);
    alpha[j].head(j) = fit.coef;
  }

  const std::vector<int> ranked = rank_by_magnitude(path.z);
  Vector sum = Vector::Zero(K);
  for (int i = 0; i < k_q; ++i) {
    const int j = ranked[i] + 1;  // 1-based position within the ordered set
    sum += alpha[j] - alpha[j - 1];
  }

  Vector beta_ordered(K);
  for (int i = 0; i < K; ++i) beta_ordered[i] = path.coefs(path.order[i], k_q);
  return (sum - beta_ordered).lpNorm<Eigen::Infinity>();
}

}  // namespace boss
