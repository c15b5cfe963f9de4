#include "boss/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace boss {

void Dataset::validate() const {
  if (X.rows() < 1 || X.cols() < 1) {
    throw invalid_data_error("dataset: need n >= 1 and p >= 1");
  }
  if (y.size() != X.rows()) {
    throw invalid_data_error("dataset: y length does not match rows of X");
  }
  if (!X.allFinite() || !y.allFinite()) {
    throw invalid_data_error("dataset: non-finite entries");
  }
  if (!names.empty()) {
    if (static_cast<int>(names.size()) != X.cols()) {
      throw invalid_data_error("dataset: names length does not match columns");
    }
    std::set<std::string> uniq(names.begin(), names.end());
    if (uniq.size() != names.size()) {
      throw invalid_data_error("dataset: duplicate column names");
    }
  }
}

CenteredData center(const Dataset& data) {
  data.validate();
  CenteredData out;
  out.xbar = data.X.colwise().mean();
  out.ybar = data.y.mean();
  out.Xc = data.X.rowwise() - out.xbar.transpose();
  out.yc = data.y.array() - out.ybar;
  return out;
}

Dataset CenteredData::as_dataset(const std::vector<std::string>& names) const {
  Dataset d;
  d.X = Xc;
  d.y = yc;
  d.names = names;
  return d;
}

void QRState::init_cache(const Matrix& X) {
  const int p = static_cast<int>(X.cols());
  resid_ = X;
  proj_ = Matrix::Zero(std::min<int>(X.rows(), p), p);
  cache_active_.assign(p, 1);
  resid_norm2_ = X.colwise().squaredNorm();
  orig_norm_ = resid_norm2_.array().sqrt();
  cache_init_ = true;
}

bool QRState::finish_append(Vector v, Vector rcol, double orig_norm, int index) {
  const int k = size();
  double nrm = v.norm();
  if (nrm < kRankEps * orig_norm) {
    return false;  // numerically in span(Q); caller truncates the path
  }
  // One reorthogonalization pass when cancellation ate most of the column.
  if (k > 0 && nrm < 0.1 * orig_norm) {
    for (int i = 0; i < k; ++i) {
      const double c = Q_.col(i).dot(v);
      v -= c * Q_.col(i);
      rcol[i] += c;
    }
    nrm = v.norm();
    if (nrm < kRankEps * orig_norm) return false;
  }

  Q_.conservativeResize(v.size(), k + 1);
  Q_.col(k) = v / nrm;
  R_.conservativeResize(k + 1, k + 1);
  if (k > 0) {
    R_.block(0, k, k, 1) = rcol.head(k);
    R_.block(k, 0, 1, k).setZero();
  }
  R_(k, k) = nrm;
  order_.push_back(index);
  sweep_cache();
  return true;
}

void QRState::sweep_cache() {
  if (!cache_init_) return;
  const int k = size() - 1;  // index of the freshly added column
  const int p = static_cast<int>(resid_.cols());
  last_sweep_ = Vector::Zero(p);
  for (int j = 0; j < p; ++j) {
    if (!cache_active_[j]) continue;
    const double c = Q_.col(k).dot(resid_.col(j));
    resid_.col(j) -= c * Q_.col(k);
    if (k < proj_.rows()) proj_(k, j) = c;
    last_sweep_[j] = c;
    resid_norm2_[j] = std::max(0.0, resid_norm2_[j] - c * c);
  }
}

bool QRState::append(const Vector& x, int index) {
  if (!x.allFinite()) throw invalid_data_error("qr append: non-finite column");
  if (std::find(order_.begin(), order_.end(), index) != order_.end()) {
    throw error("qr append: column index already in the factorization");
  }
  const int k = size();
  Vector v = x;
  Vector rcol = Vector::Zero(k);
  for (int i = 0; i < k; ++i) {  // modified Gram-Schmidt
    const double c = Q_.col(i).dot(v);
    v -= c * Q_.col(i);
    rcol[i] = c;
  }
  if (cache_init_ && index >= 0 && index < static_cast<int>(cache_active_.size())) {
    cache_active_[index] = 0;
  }
  return finish_append(std::move(v), std::move(rcol), x.norm(), index);
}

bool QRState::append_cached(int j, const Vector& x_original) {
  if (!cache_init_ || !cache_active_[j]) {
    throw error("qr append: candidate not in cache");
  }
  const int k = size();
  Vector v = resid_.col(j);
  Vector rcol = Vector::Zero(k);
  if (k > 0) rcol = proj_.block(0, j, k, 1);
  cache_active_[j] = 0;
  return finish_append(std::move(v), std::move(rcol), x_original.norm(), j);
}

void QRState::pop() {
  const int k = size();
  if (k == 0) throw error("qr pop: empty state");
  if (cache_init_) throw error("qr pop: unsupported with an active cache");
  Q_.conservativeResize(Eigen::NoChange, k - 1);
  R_.conservativeResize(k - 1, k - 1);
  order_.pop_back();
}

Vector back_solve(const Matrix& R, const Vector& gamma) {
  const int k = static_cast<int>(R.rows());
  if (R.cols() != k || gamma.size() != k) {
    throw invalid_data_error("back_solve: shape mismatch");
  }
  Vector beta(k);
  for (int i = k - 1; i >= 0; --i) {
    if (R(i, i) == 0.0) throw singular_error("back_solve: zero diagonal entry");
    double s = gamma[i];
    for (int j = i + 1; j < k; ++j) s -= R(i, j) * beta[j];
    beta[i] = s / R(i, i);
  }
  return beta;
}

OlsFit ols(const Matrix& X, const Vector& y) {
  const int k = static_cast<int>(X.cols());
  QRState qr;
  for (int j = 0; j < k; ++j) {
    if (!qr.append(X.col(j), j)) {
      throw singular_error("ols: design is column rank deficient");
    }
  }
  const Vector gamma = qr.Q().transpose() * y;
  OlsFit fit;
  fit.coef = back_solve(qr.R(), gamma);
  fit.rss = (y - qr.Q() * gamma).squaredNorm();
  return fit;
}

}  // namespace boss
