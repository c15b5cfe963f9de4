#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

namespace boss {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

// Error hierarchy. Callers that need to map failures onto CLI exit codes
// distinguish config/usage problems from numerical ones.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct invalid_data_error : error {
  using error::error;
};
struct singular_error : error {
  using error::error;
};
struct rank_deficient_error : error {
  using error::error;
};
struct config_error : error {
  using error::error;
};
struct selection_error : error {
  using error::error;
};
struct numerical_error : error {
  using error::error;
};

// A regression problem: response, design matrix, column labels.
struct Dataset {
  Matrix X;                        // n x p
  Vector y;                        // n
  std::vector<std::string> names;  // p labels, distinct

  int n() const { return static_cast<int>(X.rows()); }
  int p() const { return static_cast<int>(X.cols()); }

  // Throws invalid_data_error on shape mismatch, non-finite entries or
  // duplicate names.
  void validate() const;
};

// Column-centered copy of a Dataset plus the means needed to recover the
// intercept of any fit done in centered coordinates.
struct CenteredData {
  Matrix Xc;    // zero column means
  Vector yc;    // zero mean
  Vector xbar;  // p column means
  double ybar = 0.0;

  Dataset as_dataset(const std::vector<std::string>& names = {}) const;
};

CenteredData center(const Dataset& data);

}  // namespace boss
