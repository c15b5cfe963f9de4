#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "boss/paths.hpp"
#include "boss/reference.hpp"
#include "boss/rng.hpp"
#include "boss/simulation.hpp"

using namespace boss;

namespace {

Matrix random_matrix(int n, int p, std::uint64_t seed) {
  RepRng rng(seed, 0);
  Matrix X(n, p);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < p; ++j) X(i, j) = rng.normal();
  }
  return X;
}

// Zero-mean orthonormal columns: centering is a no-op on these designs.
Matrix orthonormal_design(int n, int p, std::uint64_t seed) {
  Matrix X = random_matrix(n, p, seed);
  X.rowwise() -= X.colwise().mean();
  return Eigen::HouseholderQR<Matrix>(X).householderQ() * Matrix::Identity(n, p);
}

Dataset make_data(const Matrix& X, const Vector& y) { return Dataset{X, y, {}}; }

}  // namespace

TEST_CASE("boss path with a single predictor is null model plus simple LS") {
  const int n = 25;
  const Matrix X = random_matrix(n, 1, 40);
  RepRng rng(41, 0);
  const Vector y = 2.0 * X.col(0) + rng.normal_vector(n, 0.1);
  const SolutionPath path = boss_path(make_data(X, y));
  REQUIRE(path.n_models() == 2);
  CHECK(path.coefs(0, 0) == 0.0);
  CHECK(path.intercepts[0] == doctest::Approx(y.mean()));

  const CenteredData cd = center(make_data(X, y));
  const OlsFit fit = ols(cd.Xc, cd.yc);
  CHECK(path.coefs(0, 1) == doctest::Approx(fit.coef[0]).epsilon(1e-10));
  CHECK(path.rss[1] == doctest::Approx(fit.rss).epsilon(1e-10));
}

TEST_CASE("fs path equals boss path for a single predictor") {
  const Matrix X = random_matrix(30, 1, 42);
  RepRng rng(43, 0);
  const Vector y = X.col(0) + rng.normal_vector(30, 0.3);
  const SolutionPath a = boss_path(make_data(X, y));
  const SolutionPath b = fs_path(make_data(X, y));
  CHECK((a.coefs - b.coefs).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((a.rss - b.rss).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("boss and fs share the ordering and z") {
  const Matrix X = random_matrix(60, 8, 44);
  RepRng rng(45, 0);
  const Vector y = X.col(2) - 0.5 * X.col(5) + rng.normal_vector(60, 0.5);
  const OrderedBasis basis = build_ordered_basis(make_data(X, y));
  const SolutionPath a = boss_path(basis);
  const SolutionPath b = fs_path(basis);
  CHECK(a.order == b.order);
  CHECK((a.z - b.z).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("boss rss matches exhaustive best subset on an orthonormal design") {
  const int n = 40, p = 8;
  const Matrix Q = orthonormal_design(n, p, 46);
  RepRng rng(47, 0);
  Vector beta = Vector::Zero(p);
  beta[1] = 2.0;
  beta[4] = -1.0;
  beta[6] = 0.5;
  const Vector y = Q * beta + rng.normal_vector(n, 0.4);
  const Dataset d = make_data(Q, y);
  const SolutionPath boss = boss_path(d);
  const SolutionPath bs = bs_exhaustive(d, p);
  REQUIRE(boss.n_models() == bs.n_models());
  for (int k = 0; k <= p; ++k) {
    CHECK(std::abs(boss.rss[k] - bs.rss[k]) < 1e-9);
  }
}

TEST_CASE("ordering finds the true predictor under high snr") {
  // Two uncorrelated predictors, beta = [0, 1]: the first ordered predictor
  // must be the second column in nearly every replication.
  const int n = 100, reps = 1000;
  int hits = 0;
  for (int r = 0; r < reps; ++r) {
    RepRng rng(48, r);
    Matrix X(n, 2);
    for (int i = 0; i < n; ++i) {
      X(i, 0) = rng.normal();
      X(i, 1) = rng.normal();
    }
    const Vector y = X.col(1) + rng.normal_vector(n, std::sqrt(1.0 / 7.0));
    const OrderedBasis basis = build_ordered_basis(make_data(X, y));
    if (basis.qr.order()[0] == 1) ++hits;
  }
  CHECK(hits >= 990);
}

TEST_CASE("fs supports are nested") {
  const Matrix X = random_matrix(50, 10, 49);
  RepRng rng(50, 0);
  const Vector y = X.col(0) + X.col(3) + rng.normal_vector(50, 1.0);
  const SolutionPath path = fs_path(make_data(X, y));
  for (int k = 1; k < path.n_models(); ++k) {
    CHECK(std::includes(path.supports[k].begin(), path.supports[k].end(),
                        path.supports[k - 1].begin(), path.supports[k - 1].end()));
  }
}

TEST_CASE("boss can skip earlier entries (non-nested Q-space supports)") {
  // Sparse-Ex4-style fixture: correlated pairs with opposite effects let a
  // later z entry outrank an earlier one.
  const TrueModel tm = build_true_model(Design::SparseEx4, 200, 30, 0.9, 7.0, 51);
  bool found = false;
  for (int r = 0; r < 50 && !found; ++r) {
    RepRng rng(52, r);
    const Vector y = tm.mu + rng.normal_vector(200, tm.sigma);
    const OrderedBasis basis = build_ordered_basis(make_data(tm.X, y));
    const std::vector<int> ranked = rank_by_magnitude(basis.z);
    for (int k = 1; k < basis.k_eff && !found; ++k) {
      // a nested prefix would put ranked[0..k-1] inside {0..k-1}
      const int max_pos = *std::max_element(ranked.begin(), ranked.begin() + k);
      if (max_pos >= k) found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("bs_exhaustive at k = p is the full OLS fit") {
  const Matrix X = random_matrix(30, 5, 53);
  RepRng rng(54, 0);
  const Vector y = X * Vector::Ones(5) + rng.normal_vector(30, 1.0);
  const Dataset d = make_data(X, y);
  const SolutionPath path = bs_exhaustive(d, 5);
  const CenteredData cd = center(d);
  const OlsFit fit = ols(cd.Xc, cd.yc);
  CHECK((path.coefs.col(5) - fit.coef).cwiseAbs().maxCoeff() < 1e-9);
  CHECK(path.rss[5] == doctest::Approx(fit.rss).epsilon(1e-10));
}

TEST_CASE("bs_exhaustive on an orthonormal design keeps the largest |X^T y|") {
  const int n = 50, p = 7;
  const Matrix Q = orthonormal_design(n, p, 55);
  RepRng rng(56, 0);
  const Vector y = rng.normal_vector(n);
  const Dataset d = make_data(Q, y);
  const SolutionPath path = bs_exhaustive(d, p);
  const Vector z = Q.transpose() * (y.array() - y.mean()).matrix();
  const std::vector<int> ranked = rank_by_magnitude(z);
  for (int k = 1; k <= p; ++k) {
    std::vector<int> expect(ranked.begin(), ranked.begin() + k);
    std::sort(expect.begin(), expect.end());
    CHECK(path.supports[k] == expect);
  }
}

TEST_CASE("bs_exhaustive rss is non-increasing and matches the serial reference") {
  const Matrix X = random_matrix(40, 9, 57);
  RepRng rng(58, 0);
  const Vector y = X.col(1) - X.col(7) + rng.normal_vector(40, 0.7);
  const Dataset d = make_data(X, y);
  const SolutionPath par = bs_exhaustive(d, 9);
  const SolutionPath ser = reference::bs_exhaustive(d, 9);
  for (int k = 1; k < par.n_models(); ++k) {
    CHECK(par.rss[k] <= par.rss[k - 1] + 1e-12);
    CHECK(par.rss[k] == ser.rss[k]);  // bit-identical by construction
    CHECK(par.supports[k] == ser.supports[k]);
  }
}

TEST_CASE("bs_exhaustive rejects large p") {
  const Matrix X = random_matrix(30, 26, 59);
  CHECK_THROWS_AS(bs_exhaustive(make_data(X, X.col(0)), 3), config_error);
}

TEST_CASE("bs_orthogonal thresholding") {
  Vector z(3);
  z << 3.0, -5.0, 1.0;
  CHECK(bs_orthogonal(z, 0).cwiseAbs().maxCoeff() == 0.0);
  CHECK((bs_orthogonal(z, 3) - z).cwiseAbs().maxCoeff() == 0.0);
  const Vector kept = bs_orthogonal(z, 2);
  CHECK(kept[0] == 3.0);
  CHECK(kept[1] == -5.0);
  CHECK(kept[2] == 0.0);
}

TEST_CASE("bs_orthogonal breaks magnitude ties by lower index") {
  Vector z(4);
  z << -2.0, 1.0, 2.0, 1.0;
  const Vector kept = bs_orthogonal(z, 3);
  CHECK(kept[0] == -2.0);
  CHECK(kept[2] == 2.0);
  CHECK(kept[1] == 1.0);  // index 1 beats index 3 on the tie
  CHECK(kept[3] == 0.0);
}

TEST_CASE("lbs path endpoints") {
  Vector z(4);
  z << 1.0, -2.0, 0.5, 3.0;
  Vector lambdas(2);
  lambdas << 5.0, 1e-9;
  const SolutionPath path = lbs_path(z, lambdas);
  CHECK(path.coefs.col(0).cwiseAbs().maxCoeff() == 0.0);  // lambda > max z^2/2
  CHECK((path.coefs.col(1) - z).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("every lbs solution equals bs_orthogonal at the matching size") {
  RepRng rng(60, 0);
  const Vector z = rng.normal_vector(12);
  const Vector grid = lambda_grid({z}, 60, 0.001);
  const SolutionPath path = lbs_path(z, grid);
  for (int l = 0; l < grid.size(); ++l) {
    int k = 0;
    for (int i = 0; i < z.size(); ++i) {
      if (z[i] * z[i] >= 2.0 * grid[l]) ++k;
    }
    const Vector expect = bs_orthogonal(z, k);
    CHECK((path.coefs.col(l) - expect).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("lambda_grid basics") {
  Vector z1(1);
  z1 << 1.0;
  const Vector g1 = lambda_grid({z1}, 2, 0.25);
  CHECK(g1[0] == doctest::Approx(0.5));
  CHECK(g1[1] == doctest::Approx(0.125));

  RepRng rng(61, 0);
  const Vector z = rng.normal_vector(20);
  const Vector g = lambda_grid({z}, 200, 0.001);
  REQUIRE(g.size() == 200);
  const double ratio = g[1] / g[0];
  for (int i = 1; i < g.size(); ++i) {
    CHECK(std::abs(g[i] / g[i - 1] - ratio) < 1e-12);
  }
  CHECK(g[199] == doctest::Approx(0.001 * g[0]).epsilon(1e-12));
}

TEST_CASE("lambda_grid rejects degenerate input") {
  CHECK_THROWS_AS(lambda_grid({Vector::Zero(4)}, 10, 0.001), config_error);
}

TEST_CASE("theorem-1 decomposition identities") {
  const int n = 100, p = 6;
  const Matrix X = random_matrix(n, p, 62);
  RepRng rng(63, 0);
  const Vector y = X.col(0) + 0.3 * X.col(4) + rng.normal_vector(n, 0.8);
  const Dataset d = make_data(X, y);
  const SolutionPath path = boss_path(d);
  CHECK(theorem1_decompose(path, d, 0) < 1e-12);
  for (int k = 1; k <= p; ++k) {
    CHECK(theorem1_decompose(path, d, k) < 1e-8);
  }
}

TEST_CASE("boss rss is non-increasing in subset size") {
  const TrueModel tm = build_true_model(Design::SparseEx1, 80, 12, 0.5, 1.5, 64);
  RepRng rng(65, 0);
  const Vector y = tm.mu + rng.normal_vector(80, tm.sigma);
  const SolutionPath path = boss_path(make_data(tm.X, y));
  for (int k = 1; k < path.n_models(); ++k) {
    CHECK(path.rss[k] <= path.rss[k - 1] + 1e-12);
  }
}

TEST_CASE("rank-deficient designs truncate the path") {
  Matrix X = random_matrix(30, 4, 66);
  X.conservativeResize(30, 5);
  X.col(4) = X.col(0) + X.col(1);  // exactly dependent
  RepRng rng(67, 0);
  const Vector y = rng.normal_vector(30);
  const SolutionPath path = boss_path(make_data(X, y));
  CHECK(path.truncated);
  CHECK(path.k_eff == 4);
  CHECK(path.n_models() == 5);
}
