#pragma once

#include <optional>
#include <vector>

#include "boss/types.hpp"

namespace boss {

// Relative tolerance below which a column is treated as lying in the span of
// the current orthogonal basis. The solution path is truncated at the
// achieved rank whenever this fires.
inline constexpr double kRankEps = 1e-10;

// Incrementally built thin QR factorization of a growing set of columns,
// with an optional residual cache over a pool of candidate columns.
//
// Invariants after every successful append:
//   Q has orthonormal columns (max |Q^T Q - I| < 1e-8),
//   R is upper triangular with positive diagonal,
//   Q * R reproduces the appended columns in `order`.
//
// The cache keeps, for every candidate column j not yet appended, the
// residual of X_j after projecting out span(Q) together with the accumulated
// projection coefficients (the future R column). Appending a cached column
// costs O(n * #remaining); this is what gives the path algorithms their
// O(npK) total cost.
class QRState {
 public:
  QRState() = default;

  // Initialize the candidate pool. Column means are not touched here;
  // callers pass centered data.
  void init_cache(const Matrix& X);

  int size() const { return static_cast<int>(order_.size()); }
  int rows() const { return static_cast<int>(Q_.rows()); }
  const Matrix& Q() const { return Q_; }
  const Matrix& R() const { return R_; }
  const std::vector<int>& order() const { return order_; }

  bool cache_initialized() const { return cache_init_; }
  bool cache_active(int j) const { return cache_active_[j] != 0; }
  // Squared norm of the cached residual of candidate j.
  double residual_norm2(int j) const { return resid_norm2_[j]; }
  const Matrix& residuals() const { return resid_; }
  // Projection of the newest Q column onto each cached residual, filled by
  // the last append; used by path builders to update their own dot products.
  const Vector& last_sweep() const { return last_sweep_; }

  // Appends column x (original, unprojected) under original index `index`.
  // Returns false and leaves the state untouched if x is numerically inside
  // span(Q) (residual norm < kRankEps * |x|). Throws invalid_data_error on
  // non-finite input and error if the index was appended before.
  bool append(const Vector& x, int index);

  // Appends a cached candidate column; cheaper than the generic overload
  // because its residual is already projected. Marks j consumed.
  bool append_cached(int j, const Vector& x_original);

  // Drops the newest column (used by the exhaustive-enumeration DFS).
  void pop();

 private:
  bool finish_append(Vector v, Vector rcol, double orig_norm, int index);
  void sweep_cache();

  Matrix Q_;  // n x k
  Matrix R_;  // k x k
  std::vector<int> order_;

  bool cache_init_ = false;
  Matrix resid_;                    // n x p candidate residuals
  Matrix proj_;                     // kmax x p accumulated coefficients
  std::vector<char> cache_active_;  // 1 while j is still a candidate
  Vector resid_norm2_;
  Vector orig_norm_;
  Vector last_sweep_;
};

// Solves R * beta = gamma for upper-triangular R by back substitution.
// Throws singular_error on a zero diagonal entry.
Vector back_solve(const Matrix& R, const Vector& gamma);

struct OlsFit {
  Vector coef;
  double rss = 0.0;
};

// Exact least squares via the incremental QR. Throws singular_error when X
// is column rank deficient.
OlsFit ols(const Matrix& X, const Vector& y);

}  // namespace boss
