#include "boss/lasso.hpp"

#include <algorithm>
#include <cmath>

#include "boss/rng.hpp"

namespace boss {

namespace {

double soft_threshold(double x, double t) {
  if (x > t) return x - t;
  if (x < -t) return x + t;
  return 0.0;
}

struct WorkingData {
  Matrix Xs;      // centered, possibly scaled columns
  Vector yc;
  Vector scale;   // per-column divisor used on the way in
  Vector colvar;  // |Xs_j|^2 / n
  Vector xbar;
  double ybar;
};

WorkingData prepare(const Dataset& data, bool standardize) {
  data.validate();
  const CenteredData cd = center(data);
  const int n = data.n(), p = data.p();
  WorkingData w;
  w.xbar = cd.xbar;
  w.ybar = cd.ybar;
  w.yc = cd.yc;
  w.Xs = cd.Xc;
  w.scale = Vector::Ones(p);
  if (standardize) {
    for (int j = 0; j < p; ++j) {
      const double sd = std::sqrt(w.Xs.col(j).squaredNorm() / n);
      if (sd > 0.0) {
        w.scale[j] = sd;
        w.Xs.col(j) /= sd;
      }
    }
  }
  w.colvar = w.Xs.colwise().squaredNorm() / static_cast<double>(n);
  return w;
}

}  // namespace

LassoPath lasso_cd(const Dataset& data, const LassoOptions& opts) {
  const WorkingData w = prepare(data, opts.standardize);
  const int n = data.n(), p = data.p();

  Vector grid = opts.lambdas;
  if (grid.size() == 0) {
    const double lmax = (w.Xs.transpose() * w.yc).cwiseAbs().maxCoeff() / n;
    if (lmax <= 0.0) {
      grid = Vector::Constant(1, 0.0);
    } else {
      grid.resize(opts.nlambda);
      const double step = std::log(opts.lmin_ratio) / (opts.nlambda - 1);
      for (int l = 0; l < opts.nlambda; ++l) grid[l] = lmax * std::exp(step * l);
    }
  } else {
    for (int l = 0; l + 1 < grid.size(); ++l) {
      if (!(grid[l] > grid[l + 1])) throw config_error("lasso: lambda grid must be decreasing");
    }
  }
  const int L = static_cast<int>(grid.size());

  LassoPath path;
  path.lambdas = grid;
  path.coefs = Matrix::Zero(p, L);
  path.intercepts = Vector::Zero(L);
  path.rss = Vector::Zero(L);
  path.df.assign(L, 0);
  path.converged.assign(L, 1);

  Vector b = Vector::Zero(p);
  Vector r = w.yc;  // residual in the standardized problem
  for (int l = 0; l < L; ++l) {
    const double lam = grid[l];
    bool full_sweep = true;
    bool done = false;
    int iter = 0;
    std::vector<int> active;
    while (iter < opts.max_iter) {
      double max_change = 0.0;
      if (full_sweep) active.clear();
      const int count = full_sweep ? p : static_cast<int>(active.size());
      for (int idx = 0; idx < count; ++idx) {
        const int j = full_sweep ? idx : active[idx];
        if (w.colvar[j] <= 0.0) continue;
        const double old = b[j];
        const double rho = w.Xs.col(j).dot(r) / n + w.colvar[j] * old;
        const double bj = soft_threshold(rho, lam) / w.colvar[j];
        if (bj != old) {
          r += w.Xs.col(j) * (old - bj);
          b[j] = bj;
          max_change = std::max(max_change, std::abs(bj - old));
        }
        if (full_sweep && b[j] != 0.0) active.push_back(j);
      }
      ++iter;
      if (opts.sweep_hook) {
        const double obj = 0.5 * r.squaredNorm() / n + lam * b.cwiseAbs().sum();
        opts.sweep_hook(l, iter, obj);
      }
      if (max_change < opts.tol) {
        if (full_sweep) {
          done = true;
          break;
        }
        full_sweep = true;  // active set stable; verify with a full pass
      } else {
        full_sweep = false;
      }
    }
    if (!done) path.converged[l] = 0;

    for (int j = 0; j < p; ++j) {
      const double bj = b[j] / w.scale[j];
      path.coefs(j, l) = bj;
      if (bj != 0.0) ++path.df[l];
    }
    path.intercepts[l] = w.ybar - w.xbar.dot(path.coefs.col(l));
    path.rss[l] = r.squaredNorm();
  }
  return path;
}

LassoCvFit lasso_cv(const Dataset& data, int folds, std::uint64_t seed,
                    const LassoOptions& opts) {
  const int n = data.n();
  if (folds < 2 || folds > n) throw config_error("lasso_cv: need 2 <= folds <= n");

  const LassoPath full = lasso_cd(data, opts);
  const int L = full.n_lambda();

  LassoOptions fold_opts = opts;
  fold_opts.lambdas = full.lambdas;

  RepRng rng(seed, 0, /*salt=*/0x1a550);
  const std::vector<int> perm = rng.permutation(n);
  std::vector<int> fold_of(n);
  for (int i = 0; i < n; ++i) fold_of[perm[i]] = i % folds;

  std::vector<Vector> fold_err(folds, Vector::Zero(L));
#pragma omp parallel for schedule(dynamic)
  for (int f = 0; f < folds; ++f) {
    std::vector<int> train, test;
    for (int i = 0; i < n; ++i) (fold_of[i] == f ? test : train).push_back(i);
    Dataset tr;
    tr.X.resize(train.size(), data.p());
    tr.y.resize(train.size());
    for (size_t i = 0; i < train.size(); ++i) {
      tr.X.row(i) = data.X.row(train[i]);
      tr.y[i] = data.y[train[i]];
    }
    const LassoPath pf = lasso_cd(tr, fold_opts);
    Vector err = Vector::Zero(L);
    for (int idx : test) {
      for (int l = 0; l < L; ++l) {
        const double pred = pf.intercepts[l] + data.X.row(idx).dot(pf.coefs.col(l));
        const double d = data.y[idx] - pred;
        err[l] += d * d;
      }
    }
    fold_err[f] = std::move(err);
  }

  LassoCvFit fit;
  fit.cv_errors = Vector::Zero(L);
  for (int f = 0; f < folds; ++f) fit.cv_errors += fold_err[f];

  int best = 0;
  for (int l = 1; l < L; ++l) {
    if (fit.cv_errors[l] < fit.cv_errors[best]) best = l;
  }
  fit.lambda_index = best;
  fit.lambda = full.lambdas[best];
  fit.coef = full.coefs.col(best);
  fit.intercept = full.intercepts[best];
  fit.df = full.df[best];
  fit.mu_hat = (data.X * fit.coef).array() + fit.intercept;
  return fit;
}

}  // namespace boss
