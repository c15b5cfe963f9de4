#pragma once

#include <vector>

#include "boss/linalg.hpp"
#include "boss/types.hpp"

namespace boss {

enum class Method { Boss, Fs, Bs, Lbs, Lasso };

const char* method_name(Method m);

// A full solution path: one fitted model per candidate subset size (or, for
// LBS, per lambda). Column 0 is always the null model.
struct SolutionPath {
  Method method = Method::Boss;
  Matrix coefs;                            // p x (k_eff+1)   (LBS: p x L)
  Vector intercepts;                       // k_eff+1         (LBS: L)
  std::vector<std::vector<int>> supports;  // original indices with nonzero coef
  Vector rss;
  std::vector<int> order;  // BOSS/FS: ordered original column indices
  Vector z;                // BOSS/FS: regression coefficients of yc on Q
  Vector lambdas;          // LBS grid
  int k_eff = 0;
  bool truncated = false;  // rank deficiency cut the path short

  int n_models() const { return static_cast<int>(rss.size()); }
};

// Ordering + orthogonalization shared by BOSS and FS: predictors enter by
// largest partial correlation with y, with residuals against the current
// basis maintained incrementally.
struct OrderedBasis {
  CenteredData cd;
  QRState qr;
  Vector z;  // Q^T yc, one entry per accepted column
  bool truncated = false;
  int k_eff = 0;
};

OrderedBasis build_ordered_basis(const Dataset& data);

// BOSS: best-subset ranking of z on the orthogonalized basis, transformed
// back to the original coordinates.
SolutionPath boss_path(const Dataset& data);
SolutionPath boss_path(const OrderedBasis& basis);

// Forward stepwise via the same basis; keeps z entries in entry order, so
// supports are nested.
SolutionPath fs_path(const Dataset& data);
SolutionPath fs_path(const OrderedBasis& basis);

// Exhaustive best subset by branch-free enumeration with an incremental QR.
// Guarded at p <= 25; ties in RSS go to the lexicographically smallest
// index set.
SolutionPath bs_exhaustive(const Dataset& data, int k_max);

// Hard threshold keeping the k largest |z| entries (ties: lower index).
Vector bs_orthogonal(const Vector& z, int k);

// Indices of z sorted by decreasing magnitude, ties by lower index.
std::vector<int> rank_by_magnitude(const Vector& z);

// Lagrangian best subset on an orthogonal basis: hard threshold at
// sqrt(2*lambda) for every lambda in the grid. rss0 is the residual sum of
// squares of the full model in the ambient space (0 for a pure z-space view).
SolutionPath lbs_path(const Vector& z, const Vector& lambdas, double rss0 = 0.0);

// Grid of m log-equispaced lambdas. lambda_max is the smallest lambda with an
// all-zero solution across every provided replication, lambda_min is
// alpha * lambda_max.
Vector lambda_grid(const std::vector<Vector>& z_reps, int m = 200, double alpha = 0.001);

// Max-norm difference between the path's coefficient column at k_Q and the
// telescoping sum of nested LS coefficients it must equal for full-rank X.
double theorem1_decompose(const SolutionPath& path, const Dataset& data, int k_q);

}  // namespace boss
