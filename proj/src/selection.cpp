#include "boss/selection.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "boss/rng.hpp"

namespace boss {

NoiseEstimate known_noise(const Vector& mu, double sigma) {
  if (!(sigma > 0.0)) throw numerical_error("known_noise: sigma must be positive");
  NoiseEstimate est;
  est.mu_hat = mu;
  est.sigma_hat = sigma;
  est.source = NoiseEstimate::Source::Known;
  return est;
}

NoiseEstimate estimate_noise(const Dataset& data, const OrderedBasis& basis,
                             std::uint64_t seed) {
  const int n = data.n();
  const int k_full = basis.k_eff;

  NoiseEstimate est;
  if (n - k_full - 1 > 0 && n > data.p()) {
    est.source = NoiseEstimate::Source::FullOls;
    est.mu_hat = basis.cd.ybar + (basis.qr.Q() * basis.z).array();
    const double rss = (data.y - est.mu_hat).squaredNorm();
    est.sigma_hat = std::sqrt(rss / (n - k_full - 1));
    est.degenerate = !(est.sigma_hat > 0.0);
    return est;
  }

  // n <= p: sigma from the 10-fold CV lasso fit, df = nonzero count.
  const LassoCvFit lf = lasso_cv(data, 10, seed);
  const double denom = n - lf.df - 1;
  if (denom <= 0.0) {
    throw numerical_error("estimate_noise: lasso fit leaves no residual degrees of freedom");
  }
  est.source = NoiseEstimate::Source::LassoReid;
  est.mu_hat = lf.mu_hat;
  est.sigma_hat = std::sqrt((data.y - lf.mu_hat).squaredNorm() / denom);
  est.degenerate = !(est.sigma_hat > 0.0);
  return est;
}

SelectionResult select_ic(const SolutionPath& path, Criterion crit, const DfProfile& dfp,
                          const NoiseEstimate& noise) {
  const int m = path.n_models();
  if (static_cast<int>(dfp.values.size()) != m) {
    throw config_error("select_ic: df profile length does not match the path");
  }
  const int n = static_cast<int>(noise.mu_hat.size());
  if (n <= 0) throw config_error("select_ic: noise estimate carries no sample size");
  if (crit == Criterion::Cp && !(noise.sigma_hat > 0.0)) {
    throw selection_error("select_ic: Cp needs a positive sigma estimate");
  }

  const Vector df_eff = dfp.values.array() + 1.0;  // intercept
  CriterionTrace trace =
      evaluate_trace(crit, path.rss, df_eff, n, noise.sigma_hat * noise.sigma_hat);
  trace.df_source = dfp.method;

  SelectionResult out;
  out.k_selected = trace.argmin;
  out.coefficients = path.coefs.col(trace.argmin);
  out.intercept = path.intercepts[trace.argmin];
  out.support = path.supports[trace.argmin];
  out.trace = std::move(trace);
  out.noise = noise;
  out.df_profile = dfp;
  return out;
}

SelectionResult kfold_cv(const PathProducer& method, const Dataset& data, int folds,
                         std::uint64_t seed) {
  const int n = data.n();
  if (folds < 2) throw config_error("kfold_cv: need at least 2 folds");
  if (n < folds) throw config_error("kfold_cv: more folds than observations");

  RepRng rng(seed, 0, /*salt=*/0xcf);
  const std::vector<int> perm = rng.permutation(n);
  std::vector<int> fold_of(n);
  for (int i = 0; i < n; ++i) fold_of[perm[i]] = i % folds;

  std::vector<Vector> fold_err(folds);
  std::vector<int> fold_sizes(folds, 0);
#pragma omp parallel for schedule(dynamic)
  for (int f = 0; f < folds; ++f) {
    std::vector<int> train, test;
    for (int i = 0; i < n; ++i) (fold_of[i] == f ? test : train).push_back(i);
    if (train.size() < 2) {
      fold_sizes[f] = -1;
      continue;
    }
    Dataset tr;
    tr.X.resize(train.size(), data.p());
    tr.y.resize(train.size());
    for (size_t i = 0; i < train.size(); ++i) {
      tr.X.row(i) = data.X.row(train[i]);
      tr.y[i] = data.y[train[i]];
    }
    const SolutionPath pf = method(tr);
    Vector err = Vector::Zero(pf.n_models());
    for (int idx : test) {
      for (int k = 0; k < pf.n_models(); ++k) {
        const double pred = pf.intercepts[k] + data.X.row(idx).dot(pf.coefs.col(k));
        const double d = data.y[idx] - pred;
        err[k] += d * d;
      }
    }
    fold_err[f] = std::move(err);
    fold_sizes[f] = static_cast<int>(test.size());
  }

  int common = -1;
  for (int f = 0; f < folds; ++f) {
    if (fold_sizes[f] < 0) throw config_error("kfold_cv: fold too small to center and fit");
    const int m = static_cast<int>(fold_err[f].size());
    common = common < 0 ? m : std::min(common, m);
  }
  Vector cv = Vector::Zero(common);
  for (int f = 0; f < folds; ++f) cv += fold_err[f].head(common);

  int best = 0;
  for (int k = 1; k < common; ++k) {
    if (cv[k] < cv[best]) best = k;
  }

  const SolutionPath full = method(data);
  const int k_sel = std::min(best, full.n_models() - 1);
  SelectionResult out;
  out.k_selected = k_sel;
  out.coefficients = full.coefs.col(k_sel);
  out.intercept = full.intercepts[k_sel];
  out.support = full.supports[k_sel];
  out.cv_errors = std::move(cv);
  return out;
}

bool is_orthonormal_design(const Matrix& Xc, double tol) {
  const int p = static_cast<int>(Xc.cols());
  if (p > Xc.rows()) return false;
  const Matrix g = Xc.transpose() * Xc - Matrix::Identity(p, p);
  return g.cwiseAbs().maxCoeff() < tol;
}

SolutionPath bs_orthogonal_path(const Dataset& data) {
  const CenteredData cd = center(data);
  if (!is_orthonormal_design(cd.Xc)) {
    throw config_error("bs_orthogonal_path: centered design is not orthonormal");
  }
  const int p = data.p();
  const Vector z = cd.Xc.transpose() * cd.yc;
  const std::vector<int> ranked = rank_by_magnitude(z);
  const double yss = cd.yc.squaredNorm();

  SolutionPath path;
  path.method = Method::Bs;
  path.k_eff = p;
  path.z = z;
  path.coefs = Matrix::Zero(p, p + 1);
  path.intercepts = Vector::Zero(p + 1);
  path.rss = Vector::Zero(p + 1);
  path.supports.resize(p + 1);
  path.rss[0] = yss;
  path.intercepts[0] = cd.ybar;
  double explained = 0.0;
  std::vector<int> sup;
  for (int k = 1; k <= p; ++k) {
    const int j = ranked[k - 1];
    sup.push_back(j);
    explained += z[j] * z[j];
    path.coefs.col(k) = path.coefs.col(k - 1);
    path.coefs(j, k) = z[j];
    path.rss[k] = std::max(0.0, yss - explained);
    path.supports[k] = sup;
    std::sort(path.supports[k].begin(), path.supports[k].end());
    path.intercepts[k] = cd.ybar - cd.xbar.dot(path.coefs.col(k));
  }
  return path;
}

const char* selector_name(Selector s) {
  switch (s) {
    case Selector::AiccHdf: return "aicc-hdf";
    case Selector::CpHdf: return "cp-hdf";
    case Selector::BicHdf: return "bic-hdf";
    case Selector::AiccNdf: return "aicc-ndf";
    case Selector::BicNdf: return "bic-ndf";
    case Selector::AiccEdf: return "aicc-edf";
    case Selector::CpEdf: return "cp-edf";
    case Selector::Cv: return "cv";
    case Selector::ErrKl: return "err-kl";
  }
  return "?";
}

Selector parse_selector(const std::string& text) {
  if (text == "aicc-hdf") return Selector::AiccHdf;
  if (text == "cp-hdf") return Selector::CpHdf;
  if (text == "bic-hdf") return Selector::BicHdf;
  if (text == "aicc-ndf" || text == "aicc") return Selector::AiccNdf;
  if (text == "bic-ndf") return Selector::BicNdf;
  if (text == "aicc-edf") return Selector::AiccEdf;
  if (text == "cp-edf") return Selector::CpEdf;
  if (text == "cv") return Selector::Cv;
  if (text == "err-kl") return Selector::ErrKl;
  throw config_error("unknown selector: " + text);
}

Method parse_method(const std::string& text) {
  if (text == "boss") return Method::Boss;
  if (text == "fs") return Method::Fs;
  if (text == "bs") return Method::Bs;
  if (text == "lbs") return Method::Lbs;
  if (text == "lasso") return Method::Lasso;
  throw config_error("unknown method: " + text);
}

namespace {

Criterion criterion_of(Selector s) {
  switch (s) {
    case Selector::AiccHdf:
    case Selector::AiccNdf:
    case Selector::AiccEdf: return Criterion::Aicc;
    case Selector::CpHdf:
    case Selector::CpEdf: return Criterion::Cp;
    case Selector::BicHdf:
    case Selector::BicNdf: return Criterion::Bic;
    case Selector::ErrKl: return Criterion::ErrKl;
    case Selector::Cv: break;
  }
  throw config_error("selector has no criterion");
}

bool needs_hdf(Selector s) {
  return s == Selector::AiccHdf || s == Selector::CpHdf || s == Selector::BicHdf;
}

bool needs_edf(Selector s) { return s == Selector::AiccEdf || s == Selector::CpEdf; }

// Fitted-value matrix of a subset path, one column per size.
Matrix fitted_matrix(const SolutionPath& path, const Matrix& X) {
  Matrix f = X * path.coefs;
  f.rowwise() += path.intercepts.transpose();
  return f;
}

FitOutcome fit_lasso(const Dataset& data, const FitSpec& spec) {
  FitOutcome out;
  if (spec.selector == Selector::Cv) {
    const LassoCvFit cv = lasso_cv(data, spec.cv_folds, spec.seed);
    out.sel.k_selected = cv.lambda_index;
    out.sel.coefficients = cv.coef;
    out.sel.intercept = cv.intercept;
    out.sel.cv_errors = cv.cv_errors;
    for (int j = 0; j < cv.coef.size(); ++j) {
      if (cv.coef[j] != 0.0) out.sel.support.push_back(j);
    }
    out.fitted = cv.mu_hat;
    return out;
  }
  if (spec.selector != Selector::AiccNdf && spec.selector != Selector::BicNdf) {
    throw config_error("lasso supports the cv, aicc-ndf and bic-ndf selectors");
  }
  const LassoPath path = lasso_cd(data);
  const int n = data.n();
  Vector values(path.n_lambda());
  const Criterion crit = criterion_of(spec.selector);
  for (int l = 0; l < path.n_lambda(); ++l) {
    const double df = path.df[l] + 1.0;
    values[l] = crit == Criterion::Aicc ? aicc(path.rss[l], df, n) : bic(path.rss[l], df, n);
  }
  const int best = argmin_finite(values);
  out.sel.k_selected = best;
  out.sel.coefficients = path.coefs.col(best);
  out.sel.intercept = path.intercepts[best];
  out.sel.trace.criterion = crit;
  out.sel.trace.df_source = DfSource::Ndf;
  out.sel.trace.values = std::move(values);
  out.sel.trace.argmin = best;
  for (int j = 0; j < data.p(); ++j) {
    if (path.coefs(j, best) != 0.0) out.sel.support.push_back(j);
  }
  out.fitted = (data.X * path.coefs.col(best)).array() + path.intercepts[best];
  return out;
}

}  // namespace

FitOutcome fit_method(const Dataset& data, const FitSpec& spec) {
  const auto t0 = std::chrono::steady_clock::now();
  FitOutcome out;

  if (spec.method == Method::Lbs) {
    throw config_error("lbs is only available through the lbs-compare experiment");
  }
  if (spec.method == Method::Lasso) {
    out = fit_lasso(data, spec);
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
  }

  // Subset-path methods share the ordered orthogonal basis machinery.
  std::optional<OrderedBasis> basis;
  SolutionPath path;
  const bool orth = [&] {
    const CenteredData cd = center(data);
    return is_orthonormal_design(cd.Xc);
  }();

  if (spec.method == Method::Boss || spec.method == Method::Fs) {
    basis = build_ordered_basis(data);
    path = spec.method == Method::Boss ? boss_path(*basis) : fs_path(*basis);
  } else {  // Method::Bs
    if (orth) {
      path = bs_orthogonal_path(data);
    } else if (data.p() <= 25) {
      path = bs_exhaustive(data, spec.k_max < 0 ? data.p() : spec.k_max);
    } else {
      throw config_error("bs: p > 25 without an orthonormal design; use boss instead");
    }
  }

  if (spec.selector == Selector::Cv) {
    PathProducer producer;
    switch (spec.method) {
      case Method::Boss:
        producer = [](const Dataset& d) { return boss_path(d); };
        break;
      case Method::Fs:
        producer = [](const Dataset& d) { return fs_path(d); };
        break;
      case Method::Bs:
        // Subsampled folds are no longer orthonormal, so exhaustive search is
        // required; past the enumeration cap the boss path stands in for it.
        if (data.p() <= 25) {
          const int kmax = spec.k_max;
          producer = [kmax](const Dataset& d) {
            return bs_exhaustive(d, kmax < 0 ? d.p() : kmax);
          };
        } else {
          producer = [](const Dataset& d) { return boss_path(d); };
        }
        break;
      default: throw config_error("cv selector: unsupported method");
    }
    out.sel = kfold_cv(producer, data, spec.cv_folds, spec.seed);
    // Report the selection against the full-data path of the method itself.
    out.fitted =
        (data.X * out.sel.coefficients).array() + out.sel.intercept;
    out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return out;
  }

  // Information-criterion selectors.
  NoiseEstimate noise;
  if (spec.use_true_noise) {
    noise = known_noise(spec.true_mu, spec.true_sigma);
  } else {
    if (!basis) basis = build_ordered_basis(data);
    noise = estimate_noise(data, *basis, spec.seed);
    if (noise.degenerate) {
      throw selection_error("noise estimate degenerate (zero residual); use the cv selector");
    }
  }

  const int k_top = path.n_models() - 1;
  DfProfile dfp;
  if (needs_hdf(spec.selector)) {
    Vector xtmu;
    if (spec.method == Method::Bs) {
      if (!orth) {
        throw config_error("bs: hdf selectors need an orthonormal design; use cv");
      }
      // The centered design is the orthonormal basis itself here.
      const CenteredData cd = center(data);
      xtmu = cd.Xc.transpose() * noise.mu_hat;
    } else {
      if (!basis) basis = build_ordered_basis(data);
      xtmu = basis->qr.Q().transpose() * noise.mu_hat;
    }
    dfp = hdf_profile(xtmu, noise.sigma_hat, k_top);
  } else if (needs_edf(spec.selector)) {
    if (!spec.use_true_noise) {
      throw config_error("edf selectors need the true model (simulation only)");
    }
    const Dataset shared = data;
    const Method m = spec.method;
    PathFitter fitter = [shared, m](const Vector& y) {
      Dataset d = shared;
      d.y = y;
      SolutionPath p;
      if (m == Method::Boss) {
        p = boss_path(d);
      } else if (m == Method::Fs) {
        p = fs_path(d);
      } else {
        p = bs_orthogonal_path(d);
      }
      return fitted_matrix(p, d.X);
    };
    dfp = edf_monte_carlo(fitter, spec.true_mu, spec.true_sigma, spec.edf_reps,
                          spec.seed ^ 0xedf0);
    if (dfp.k_max() > k_top) dfp.values.conservativeResize(k_top + 1);
  } else {
    dfp = ndf_profile(k_top);
  }

  if (spec.selector == Selector::ErrKl) {
    if (!spec.use_true_noise) {
      throw config_error("err-kl selection needs the true model (simulation only)");
    }
    const Matrix fitted = fitted_matrix(path, data.X);
    CriterionTrace trace = err_kl_estimate(fitted, path.rss, spec.true_mu, spec.true_sigma);
    out.sel.k_selected = trace.argmin;
    out.sel.coefficients = path.coefs.col(trace.argmin);
    out.sel.intercept = path.intercepts[trace.argmin];
    out.sel.support = path.supports[trace.argmin];
    out.sel.trace = std::move(trace);
    out.sel.noise = noise;
  } else {
    out.sel = select_ic(path, criterion_of(spec.selector), dfp, noise);
  }
  out.fitted = (data.X * out.sel.coefficients).array() + out.sel.intercept;
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

}  // namespace boss
