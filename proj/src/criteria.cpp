#include "boss/criteria.hpp"

#include <cmath>
#include <limits>

namespace boss {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

const char* criterion_name(Criterion c) {
  switch (c) {
    case Criterion::Cp: return "cp";
    case Criterion::Aic: return "aic";
    case Criterion::Aicc: return "aicc";
    case Criterion::Bic: return "bic";
    case Criterion::ErrKl: return "err-kl";
  }
  return "?";
}

double cp(double rss, double df, double sigma2) { return rss + 2.0 * sigma2 * df; }

double aic(double rss, double df, int n) {
  if (rss <= 0.0) return kInf;
  return n * std::log(rss / n) + 2.0 * df;
}

double aicc(double rss, double df, int n) {
  if (rss <= 0.0 || df >= n - 2) return kInf;
  return n * std::log(rss / n) + n * (n + df) / (n - df - 2.0);
}

double bic(double rss, double df, int n) {
  if (rss <= 0.0) return kInf;
  return n * std::log(rss / n) + std::log(static_cast<double>(n)) * df;
}

double err_kl_train(double rss, int n) {
  if (rss <= 0.0) return kInf;
  return n * std::log(rss / n) - n;
}

int argmin_finite(const Vector& values) {
  int arg = -1;
  double best = kInf;
  for (int k = 0; k < values.size(); ++k) {
    if (std::isfinite(values[k]) && values[k] < best) {
      best = values[k];
      arg = k;
    }
  }
  if (arg < 0) throw selection_error("criterion trace has no admissible subset");
  return arg;
}

CriterionTrace evaluate_trace(Criterion c, const Vector& rss, const Vector& df, int n,
                              double sigma2) {
  if (rss.size() != df.size()) throw config_error("evaluate_trace: rss/df length mismatch");
  CriterionTrace trace;
  trace.criterion = c;
  trace.values = Vector::Zero(rss.size());
  for (int k = 0; k < rss.size(); ++k) {
    switch (c) {
      case Criterion::Cp: trace.values[k] = cp(rss[k], df[k], sigma2); break;
      case Criterion::Aic: trace.values[k] = aic(rss[k], df[k], n); break;
      case Criterion::Aicc: trace.values[k] = aicc(rss[k], df[k], n); break;
      case Criterion::Bic: trace.values[k] = bic(rss[k], df[k], n); break;
      case Criterion::ErrKl:
        throw config_error("evaluate_trace: err-kl needs the true mean; use err_kl_estimate");
    }
  }
  trace.argmin = argmin_finite(trace.values);
  return trace;
}

CriterionTrace err_kl_estimate(const Matrix& fitted, const Vector& rss, const Vector& mu,
                               double sigma) {
  if (fitted.cols() != rss.size() || fitted.rows() != mu.size()) {
    throw config_error("err_kl_estimate: shape mismatch");
  }
  const int n = static_cast<int>(mu.size());
  CriterionTrace trace;
  trace.criterion = Criterion::ErrKl;
  trace.values = Vector::Zero(rss.size());
  for (int k = 0; k < rss.size(); ++k) {
    if (rss[k] <= 0.0) {
      trace.values[k] = kInf;
      continue;
    }
    const double miss = (mu - fitted.col(k)).squaredNorm();
    trace.values[k] =
        err_kl_train(rss[k], n) + n * (n * sigma * sigma + miss) / rss[k] + n;
  }
  trace.argmin = argmin_finite(trace.values);
  return trace;
}

}  // namespace boss
