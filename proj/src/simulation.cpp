#include "boss/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "boss/rng.hpp"

namespace boss {

namespace {
// Stream salts keeping the design draw, the replications and nested
// procedures (CV folds, edf/bdf inner loops) on disjoint substreams.
constexpr std::uint64_t kSaltDesign = 0xd5;
constexpr std::uint64_t kSaltNoise = 0x0e;
constexpr std::uint64_t kSaltFit = 0xf1;
constexpr std::uint64_t kSaltEdf = 0xed;
}  // namespace

const char* design_name(Design d) {
  switch (d) {
    case Design::OrthNull: return "orth-null";
    case Design::OrthSparseEx1: return "orth-sparse-ex1";
    case Design::OrthSparseEx2: return "orth-sparse-ex2";
    case Design::OrthDense: return "orth-dense";
    case Design::SparseEx1: return "sparse-ex1";
    case Design::SparseEx2: return "sparse-ex2";
    case Design::SparseEx3: return "sparse-ex3";
    case Design::SparseEx4: return "sparse-ex4";
    case Design::Dense: return "dense";
  }
  return "?";
}

Design parse_design(const std::string& text) {
  for (Design d : {Design::OrthNull, Design::OrthSparseEx1, Design::OrthSparseEx2,
                   Design::OrthDense, Design::SparseEx1, Design::SparseEx2, Design::SparseEx3,
                   Design::SparseEx4, Design::Dense}) {
    if (text == design_name(d)) return d;
  }
  throw config_error("unknown design: " + text);
}

bool is_orthogonal_design(Design d) {
  switch (d) {
    case Design::OrthNull:
    case Design::OrthSparseEx1:
    case Design::OrthSparseEx2:
    case Design::OrthDense: return true;
    default: return false;
  }
}

Matrix gen_orthogonal_trig(int n, int p) {
  if (p % 2 != 0) throw config_error("trig design: p must be even");
  if (p > n) throw config_error("trig design: p must not exceed n");
  Matrix X(n, p);
  const double w = 2.0 * M_PI / n;
  for (int j = 1; j <= p / 2; ++j) {
    for (int t = 0; t < n; ++t) {
      X(t, j - 1) = std::sin(w * j * t);
      X(t, p / 2 + j - 1) = std::cos(w * j * t);
    }
  }
  for (int c = 0; c < p; ++c) X.col(c) /= X.col(c).norm();
  return X;
}

namespace {

constexpr int kP0 = 6;  // signal count of the sparse scenarios

Matrix design_sigma(Design d, int p, double rho) {
  Matrix S = Matrix::Identity(p, p);
  switch (d) {
    case Design::SparseEx1:
    case Design::Dense:
      for (int i = 0; i < p; ++i) {
        for (int j = 0; j < p; ++j) S(i, j) = std::pow(rho, std::abs(i - j));
      }
      break;
    case Design::SparseEx2:
    case Design::SparseEx4:
      for (int i = 0; i < kP0; ++i) {
        for (int j = i + 1; j < kP0; ++j) S(i, j) = S(j, i) = rho;
      }
      break;
    case Design::SparseEx3:
      if (p < 2 * kP0) throw config_error("sparse-ex3: needs p >= 12");
      for (int i = 0; i < kP0; ++i) S(i, kP0 + i) = S(kP0 + i, i) = rho;
      break;
    default: throw config_error("design_sigma: not a general design");
  }
  return S;
}

}  // namespace

Vector design_beta(Design d, int p) {
  Vector beta = Vector::Zero(p);
  switch (d) {
    case Design::OrthNull: break;
    case Design::OrthSparseEx1:
    case Design::SparseEx3:
      for (int i = 0; i < kP0 && i < p; ++i) beta[i] = 1.0;
      break;
    case Design::SparseEx1:
      // p0 ones at equispaced positions across 1..p
      for (int i = 0; i < kP0; ++i) {
        const int pos =
            static_cast<int>(std::lround(1.0 + i * (p - 1.0) / (kP0 - 1.0))) - 1;
        beta[std::clamp(pos, 0, p - 1)] = 1.0;
      }
      break;
    case Design::OrthSparseEx2:
    case Design::SparseEx4: {
      const double vals[kP0] = {1, -1, 5, -5, 10, -10};
      for (int i = 0; i < kP0 && i < p; ++i) beta[i] = vals[i];
      break;
    }
    case Design::SparseEx2:
      for (int i = 0; i < kP0 && i < p; ++i) beta[i] = (i % 2 == 0) ? 1.0 : -1.0;
      break;
    case Design::OrthDense:
    case Design::Dense:
      for (int j = 1; j <= p; ++j) {
        beta[j - 1] = ((j % 2 == 0) ? 1.0 : -1.0) * std::exp(-j / 10.0);
      }
      break;
  }
  return beta;
}

GeneralDesign gen_general(Design d, int n, int p, double rho, std::uint64_t seed) {
  if (is_orthogonal_design(d)) throw config_error("gen_general: use gen_orthogonal_trig");
  if (!(rho >= 0.0 && rho < 1.0)) throw config_error("gen_general: need rho in [0,1)");
  GeneralDesign out;
  out.Sigma = design_sigma(d, p, rho);
  const Eigen::LLT<Matrix> llt(out.Sigma);
  if (llt.info() != Eigen::Success) {
    throw config_error("gen_general: covariance not positive definite");
  }
  const Matrix L = llt.matrixL();
  RepRng rng(seed, 0, kSaltDesign);
  Matrix Z(n, p);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < p; ++j) Z(i, j) = rng.normal();
  }
  out.X = Z * L.transpose();
  out.beta = design_beta(d, p);
  return out;
}

double calibrate_sigma(const Vector& beta, const Matrix& Sigma, double snr) {
  if (!(snr > 0.0)) throw config_error("calibrate_sigma: snr must be positive");
  const double v = beta.dot(Sigma * beta);
  if (!(v > 0.0)) throw config_error("calibrate_sigma: zero beta leaves snr undefined");
  return std::sqrt(v / snr);
}

double calibrate_sigma_fixed(const Vector& mu, int n, double snr) {
  if (!(snr > 0.0)) throw config_error("calibrate_sigma: snr must be positive");
  const double v = mu.squaredNorm() / n;
  if (!(v > 0.0)) throw config_error("calibrate_sigma: zero mean leaves snr undefined");
  return std::sqrt(v / snr);
}

TrueModel build_true_model(Design d, int n, int p, double rho, double snr,
                           std::uint64_t seed) {
  TrueModel tm;
  tm.snr = snr;
  tm.orthogonal = is_orthogonal_design(d);
  if (tm.orthogonal) {
    tm.X = gen_orthogonal_trig(n, p);
    tm.beta = design_beta(d, p);
    tm.mu = tm.X * tm.beta;
    tm.sigma = d == Design::OrthNull ? 1.0 : calibrate_sigma_fixed(tm.mu, n, snr);
  } else {
    const GeneralDesign g = gen_general(d, n, p, rho, seed);
    tm.X = g.X;
    tm.beta = g.beta;
    tm.mu = tm.X * tm.beta;
    tm.sigma = calibrate_sigma(tm.beta, g.Sigma, snr);
  }
  return tm;
}

std::string MethodSpec::label() const {
  return std::string(method_name(method)) + "-" + selector_name(selector);
}

Vector draw_response(const TrueModel& tm, std::uint64_t seed, int rep) {
  RepRng rng(seed, static_cast<std::uint64_t>(rep), kSaltNoise);
  Vector eps = rng.normal_vector(static_cast<int>(tm.mu.size()), tm.sigma);
  eps.array() -= eps.mean();  // exact zero-mean noise: the intercept is zero
  return tm.mu + eps;
}

namespace {

double rmse_of(const Vector& fitted, const Vector& mu) {
  return std::sqrt((fitted - mu).squaredNorm() / mu.size());
}

// Smallest RMSE along a path (the per-replication oracle).
double best_possible_rmse(const SolutionPath& path, const Matrix& X, const Vector& mu) {
  Matrix fitted = X * path.coefs;
  fitted.rowwise() += path.intercepts.transpose();
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < path.n_models(); ++k) {
    best = std::min(best, rmse_of(fitted.col(k), mu));
  }
  return best;
}

struct RepMetrics {
  double rmse = 0.0;
  int size = 0;
  int tp = 0;
  int fp = 0;
  double seconds = 0.0;
};

std::vector<int> support_of(const Vector& beta) {
  std::vector<int> s;
  for (int j = 0; j < beta.size(); ++j) {
    if (beta[j] != 0.0) s.push_back(j);
  }
  return s;
}

}  // namespace

SimReport run_experiment(const SimConfig& config) {
  if (config.reps < 2) throw config_error("run_experiment: need reps >= 2");
  if (config.entries.empty()) throw config_error("run_experiment: no methods configured");
  if (config.design == Design::OrthNull) {
    throw config_error("run_experiment: the null design leaves snr undefined; use the df tool");
  }
  const TrueModel tm = build_true_model(config.design, config.n, config.p, config.rho,
                                        config.snr, config.seed);
  const std::vector<int> true_support = support_of(tm.beta);
  const Method baseline =
      config.baseline.value_or(tm.orthogonal ? Method::Bs : Method::Boss);

  const int ne = static_cast<int>(config.entries.size());
  const int reps = config.reps;

  SimReport report;
  report.config = config;
  report.sigma = tm.sigma;
  report.methods.resize(ne);
  for (int e = 0; e < ne; ++e) report.methods[e].spec = config.entries[e];

  // Probe each entry once so incompatible configurations are skipped with a
  // notice instead of failing the whole experiment.
  {
    const Vector y0 = draw_response(tm, config.seed, 0);
    Dataset d{tm.X, y0, {}};
    for (int e = 0; e < ne; ++e) {
      FitSpec spec;
      spec.method = config.entries[e].method;
      spec.selector = config.entries[e].selector;
      spec.cv_folds = config.cv_folds;
      spec.edf_reps = config.edf_reps;
      spec.use_true_noise = config.use_true_noise ||
                            spec.selector == Selector::ErrKl ||
                            spec.selector == Selector::AiccEdf ||
                            spec.selector == Selector::CpEdf;
      if (spec.use_true_noise) {
        spec.true_mu = tm.mu;
        spec.true_sigma = tm.sigma;
      }
      try {
        (void)fit_method(d, spec);
      } catch (const config_error& err) {
        report.methods[e].skipped = true;
        report.methods[e].note = err.what();
      }
    }
  }

  std::vector<std::vector<RepMetrics>> metrics(ne, std::vector<RepMetrics>(reps));
  std::vector<double> oracle(reps, 0.0), null_rmse(reps, 0.0), full_rmse(reps, 0.0);
  bool full_reduced = false;

  const int full_k = std::min(config.n - 2, config.p);
  if (full_k < config.p) full_reduced = true;

#pragma omp parallel for schedule(dynamic)
  for (int r = 0; r < reps; ++r) {
    const Vector y = draw_response(tm, config.seed, r);
    Dataset d{tm.X, y, {}};
    const double ybar = y.mean();

    // Oracle along the baseline path.
    SolutionPath base_path;
    if (baseline == Method::Bs && tm.orthogonal) {
      base_path = bs_orthogonal_path(d);
    } else if (baseline == Method::Fs) {
      base_path = fs_path(d);
    } else {
      base_path = boss_path(d);
    }
    oracle[r] = best_possible_rmse(base_path, tm.X, tm.mu);

    // Null and (possibly reduced) full OLS for the efficiency pool.
    null_rmse[r] = rmse_of(Vector::Constant(config.n, ybar), tm.mu);
    {
      const CenteredData cd = center(d);
      Vector mu_full;
      if (!full_reduced) {
        const OlsFit fit = ols(cd.Xc, cd.yc);
        mu_full = (cd.Xc * fit.coef).array() + ybar;
      } else {
        const OrderedBasis basis = build_ordered_basis(d);
        const int k_use = std::min(full_k, basis.k_eff);
        mu_full = (basis.qr.Q().leftCols(k_use) * basis.z.head(k_use)).array() + ybar;
      }
      full_rmse[r] = rmse_of(mu_full, tm.mu);
    }

    for (int e = 0; e < ne; ++e) {
      if (report.methods[e].skipped) continue;
      FitSpec spec;
      spec.method = config.entries[e].method;
      spec.selector = config.entries[e].selector;
      spec.cv_folds = config.cv_folds;
      spec.edf_reps = config.edf_reps;
      // Per-replication substreams keep CV fold draws independent across
      // replications while staying schedule-independent.
      RepRng mix(config.seed, static_cast<std::uint64_t>(r), kSaltFit + e);
      spec.seed = mix.next();
      spec.use_true_noise = config.use_true_noise ||
                            spec.selector == Selector::ErrKl ||
                            spec.selector == Selector::AiccEdf ||
                            spec.selector == Selector::CpEdf;
      if (spec.use_true_noise) {
        spec.true_mu = tm.mu;
        spec.true_sigma = tm.sigma;
      }
      const FitOutcome fit = fit_method(d, spec);
      RepMetrics& m = metrics[e][r];
      m.rmse = rmse_of(fit.fitted, tm.mu);
      m.size = static_cast<int>(fit.sel.support.size());
      for (int j : fit.sel.support) {
        if (tm.beta[j] != 0.0) {
          ++m.tp;
        } else {
          ++m.fp;
        }
      }
      m.seconds = fit.seconds;
    }
  }

  // Fixed-order reductions.
  const auto mean_of = [reps](const std::vector<double>& v) {
    double s = 0.0;
    for (int r = 0; r < reps; ++r) s += v[r];
    return s / reps;
  };
  report.oracle_rmse_mean = mean_of(oracle);
  report.null_rmse_mean = mean_of(null_rmse);
  report.full_rmse_mean = mean_of(full_rmse);
  report.full_reduced = full_reduced;

  for (int e = 0; e < ne; ++e) {
    MethodReport& mr = report.methods[e];
    if (mr.skipped) continue;
    double s = 0.0, s2 = 0.0, tp = 0.0, fp = 0.0, size = 0.0, secs = 0.0;
    for (int r = 0; r < reps; ++r) {
      const RepMetrics& m = metrics[e][r];
      s += m.rmse;
      s2 += m.rmse * m.rmse;
      tp += m.tp;
      fp += m.fp;
      size += m.size;
      secs += m.seconds;
    }
    mr.rmse_mean = s / reps;
    mr.rmse_se = std::sqrt(std::max(0.0, s2 / reps - mr.rmse_mean * mr.rmse_mean) /
                           std::max(1, reps - 1));
    mr.sparsistency = tp / reps;
    mr.extra = fp / reps;
    mr.avg_size = size / reps;
    mr.seconds = secs;
    mr.pct_worse = 100.0 * (mr.rmse_mean / report.oracle_rmse_mean - 1.0);
  }

  double pool_min = std::min(report.null_rmse_mean, report.full_rmse_mean);
  for (const MethodReport& mr : report.methods) {
    if (!mr.skipped) pool_min = std::min(pool_min, mr.rmse_mean);
  }
  for (MethodReport& mr : report.methods) {
    if (!mr.skipped) mr.rel_efficiency = pool_min / mr.rmse_mean;
  }
  return report;
}

LooReport loo_real_data(const Dataset& data, const std::vector<MethodSpec>& specs,
                        int cv_folds, std::uint64_t seed) {
  data.validate();
  const int n = data.n();
  if (n < 3) throw config_error("loo: need at least 3 observations");

  LooReport report;
  report.n = n;
  report.entries.resize(specs.size());
  for (size_t e = 0; e < specs.size(); ++e) report.entries[e].spec = specs[e];

  const int ne = static_cast<int>(specs.size());
  std::vector<std::vector<double>> sqerr(ne, std::vector<double>(n, 0.0));
  std::vector<std::vector<double>> sizes(ne, std::vector<double>(n, 0.0));
  std::vector<std::vector<double>> secs(ne, std::vector<double>(n, 0.0));
  std::vector<std::vector<char>> ok(ne, std::vector<char>(n, 1));

#pragma omp parallel for schedule(dynamic)
  for (int i = 0; i < n; ++i) {
    Dataset train;
    train.X.resize(n - 1, data.p());
    train.y.resize(n - 1);
    for (int r = 0, w = 0; r < n; ++r) {
      if (r == i) continue;
      train.X.row(w) = data.X.row(r);
      train.y[w] = data.y[r];
      ++w;
    }
    for (int e = 0; e < ne; ++e) {
      FitSpec spec;
      spec.method = specs[e].method;
      spec.selector = specs[e].selector;
      spec.cv_folds = cv_folds;
      RepRng mix(seed, static_cast<std::uint64_t>(i), kSaltFit + e);
      spec.seed = mix.next();
      try {
        const FitOutcome fit = fit_method(train, spec);
        const double pred =
            fit.sel.intercept + data.X.row(i).dot(fit.sel.coefficients);
        const double d = data.y[i] - pred;
        sqerr[e][i] = d * d;
        sizes[e][i] = static_cast<double>(fit.sel.support.size());
        secs[e][i] = fit.seconds;
      } catch (const error&) {
        ok[e][i] = 0;  // degenerate training fold: skipped with notice
      }
    }
  }

  for (int e = 0; e < ne; ++e) {
    LooEntryReport& er = report.entries[e];
    int used = 0;
    double se = 0.0, sz = 0.0, ts = 0.0;
    for (int i = 0; i < n; ++i) {
      if (!ok[e][i]) continue;
      ++used;
      se += sqerr[e][i];
      sz += sizes[e][i];
      ts += secs[e][i];
    }
    if (used == 0) {
      er.skipped = true;
      er.note = "every leave-one-out fit failed";
      continue;
    }
    if (used < n) er.note = std::to_string(n - used) + " folds skipped";
    er.rmse = std::sqrt(se / used);
    er.avg_predictors = sz / used;
    er.avg_seconds = ts / used;
  }
  return report;
}

LbsCompareReport lbs_compare(const LbsCompareConfig& config) {
  if (!is_orthogonal_design(config.design)) {
    throw config_error("lbs-compare: needs an orthogonal design");
  }
  const TrueModel tm = build_true_model(config.design, config.n, config.p, 0.0, config.snr,
                                        config.seed);
  const int n = config.n, p = config.p, reps = config.reps;
  const Vector xtmu = tm.X.transpose() * tm.mu;

  // All replication responses and scores first: the lambda grid depends on
  // every replication (smallest lambda with an all-zero solution across all).
  std::vector<Vector> zs(reps);
  std::vector<Vector> ys(reps);
#pragma omp parallel for schedule(static)
  for (int r = 0; r < reps; ++r) {
    ys[r] = draw_response(tm, config.seed, r);
    const Vector yc = ys[r].array() - ys[r].mean();
    zs[r] = tm.X.transpose() * yc;
  }
  const Vector grid = lambda_grid(zs, config.grid_m, config.grid_alpha);

  // Analytic df_L on the grid; Monte-Carlo df_C for the constrained problem.
  Vector df_l(grid.size());
  for (int l = 0; l < grid.size(); ++l) df_l[l] = df_lagrangian(grid[l], xtmu, tm.sigma);

  const Matrix Xfixed = tm.X;
  PathFitter bs_fitter = [Xfixed](const Vector& y) {
    Dataset d{Xfixed, y, {}};
    const SolutionPath path = bs_orthogonal_path(d);
    return Matrix((Xfixed.rowwise() - Xfixed.colwise().mean()) * path.coefs);
  };
  const DfProfile df_c =
      edf_monte_carlo(bs_fitter, tm.mu, tm.sigma, config.edf_reps, config.seed ^ kSaltEdf);

  LbsCompareReport report;
  report.lambda_max = grid[0];
  report.lambda_min = grid[grid.size() - 1];
  report.bs.spec = {Method::Bs, Selector::CpEdf};
  report.lbs.spec = {Method::Lbs, Selector::CpEdf};
  report.bs_size_freq.assign(p + 1, 0.0);
  report.lbs_size_freq.assign(p + 1, 0.0);

  std::vector<int> bs_size(reps), lbs_size(reps);
  std::vector<double> bs_rmse(reps), lbs_rmse(reps), oracle(reps), null_rmse(reps),
      full_rmse(reps);
  std::vector<std::array<double, 2>> bs_tpfp(reps), lbs_tpfp(reps);

  const double sigma2 = tm.sigma * tm.sigma;
#pragma omp parallel for schedule(static)
  for (int r = 0; r < reps; ++r) {
    const Vector& y = ys[r];
    const double ybar = y.mean();
    const Vector yc = y.array() - ybar;
    const Vector& z = zs[r];
    const double rss0 = yc.squaredNorm() - z.squaredNorm();

    Dataset d{tm.X, y, {}};
    const SolutionPath bs = bs_orthogonal_path(d);

    // Cp-edf over subset sizes.
    int k_best = 0;
    double best = std::numeric_limits<double>::infinity();
    double best_oracle = best;
    Matrix fitted = tm.X * bs.coefs;
    fitted.rowwise() += bs.intercepts.transpose();
    for (int k = 0; k <= p; ++k) {
      const double value = cp(bs.rss[k], df_c.values[std::min<int>(k, df_c.k_max())], sigma2);
      if (value < best) {
        best = value;
        k_best = k;
      }
      best_oracle = std::min(best_oracle, rmse_of(fitted.col(k), tm.mu));
    }
    oracle[r] = best_oracle;
    bs_size[r] = static_cast<int>(bs.supports[k_best].size());
    bs_rmse[r] = rmse_of(fitted.col(k_best), tm.mu);
    bs_tpfp[r] = {0.0, 0.0};
    for (int j : bs.supports[k_best]) {
      if (tm.beta[j] != 0.0) {
        ++bs_tpfp[r][0];
      } else {
        ++bs_tpfp[r][1];
      }
    }

    // Cp-edf over the lambda grid; scanning from the largest lambda keeps
    // ties on the sparser side.
    const SolutionPath lbs = lbs_path(z, grid, rss0);
    int l_best = 0;
    double lbs_best = std::numeric_limits<double>::infinity();
    for (int l = 0; l < grid.size(); ++l) {
      const double value = cp(lbs.rss[l], df_l[l], sigma2);
      if (value < lbs_best) {
        lbs_best = value;
        l_best = l;
      }
    }
    lbs_size[r] = static_cast<int>(lbs.supports[l_best].size());
    const Vector lbs_mu = (tm.X * lbs.coefs.col(l_best)).array() + ybar;
    lbs_rmse[r] = rmse_of(lbs_mu, tm.mu);
    lbs_tpfp[r] = {0.0, 0.0};
    for (int j : lbs.supports[l_best]) {
      if (tm.beta[j] != 0.0) {
        ++lbs_tpfp[r][0];
      } else {
        ++lbs_tpfp[r][1];
      }
    }

    null_rmse[r] = rmse_of(Vector::Constant(n, ybar), tm.mu);
    full_rmse[r] = rmse_of(fitted.col(p), tm.mu);
  }

  double s_bs = 0, s_lbs = 0, s_or = 0, s_null = 0, s_full = 0;
  double q_bs = 0, q_lbs = 0;
  for (int r = 0; r < reps; ++r) {
    if (lbs_size[r] > bs_size[r]) {
      ++report.more;
    } else if (lbs_size[r] < bs_size[r]) {
      ++report.fewer;
    } else {
      ++report.equal;
    }
    report.bs_size_freq[std::min(bs_size[r], p)] += 100.0 / reps;
    report.lbs_size_freq[std::min(lbs_size[r], p)] += 100.0 / reps;
    s_bs += bs_rmse[r];
    q_bs += bs_rmse[r] * bs_rmse[r];
    s_lbs += lbs_rmse[r];
    q_lbs += lbs_rmse[r] * lbs_rmse[r];
    s_or += oracle[r];
    s_null += null_rmse[r];
    s_full += full_rmse[r];
    report.bs.sparsistency += bs_tpfp[r][0] / reps;
    report.bs.extra += bs_tpfp[r][1] / reps;
    report.lbs.sparsistency += lbs_tpfp[r][0] / reps;
    report.lbs.extra += lbs_tpfp[r][1] / reps;
    report.bs.avg_size += static_cast<double>(bs_size[r]) / reps;
    report.lbs.avg_size += static_cast<double>(lbs_size[r]) / reps;
  }
  report.bs.rmse_mean = s_bs / reps;
  report.lbs.rmse_mean = s_lbs / reps;
  report.bs.rmse_se = std::sqrt(
      std::max(0.0, q_bs / reps - report.bs.rmse_mean * report.bs.rmse_mean) /
      std::max(1, reps - 1));
  report.lbs.rmse_se = std::sqrt(
      std::max(0.0, q_lbs / reps - report.lbs.rmse_mean * report.lbs.rmse_mean) /
      std::max(1, reps - 1));
  const double oracle_mean = s_or / reps;
  report.bs.pct_worse = 100.0 * (report.bs.rmse_mean / oracle_mean - 1.0);
  report.lbs.pct_worse = 100.0 * (report.lbs.rmse_mean / oracle_mean - 1.0);
  const double pool =
      std::min({report.bs.rmse_mean, report.lbs.rmse_mean, s_null / reps, s_full / reps});
  report.bs.rel_efficiency = pool / report.bs.rmse_mean;
  report.lbs.rel_efficiency = pool / report.lbs.rmse_mean;
  return report;
}

}  // namespace boss
