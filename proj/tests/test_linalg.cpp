#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "boss/linalg.hpp"
#include "boss/rng.hpp"

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

Vector random_vector(int n, std::uint64_t seed) {
  RepRng rng(seed, 1);
  return rng.normal_vector(n);
}

}  // namespace

TEST_CASE("center leaves a zero-mean matrix unchanged") {
  Matrix X = random_matrix(20, 3, 11);
  X.rowwise() -= X.colwise().mean();
  const Dataset d{X, random_vector(20, 12), {}};
  const CenteredData cd = center(d);
  CHECK((cd.Xc - X).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(cd.xbar.cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("center maps a constant column to zeros") {
  Matrix X = random_matrix(15, 2, 13);
  X.col(1).setConstant(3.5);
  const Dataset d{X, random_vector(15, 14), {}};
  const CenteredData cd = center(d);
  CHECK(cd.Xc.col(1).cwiseAbs().maxCoeff() < 1e-14);
  CHECK(cd.xbar[1] == doctest::Approx(3.5));
}

TEST_CASE("centered columns have mean below 1e-12") {
  const Dataset d{random_matrix(5, 3, 15).array() * 100.0, random_vector(5, 16), {}};
  const CenteredData cd = center(d);
  CHECK(cd.Xc.colwise().mean().cwiseAbs().maxCoeff() < 1e-12);
  CHECK(std::abs(cd.yc.mean()) < 1e-12);
}

TEST_CASE("center is idempotent") {
  const Dataset d{random_matrix(30, 4, 17), random_vector(30, 18), {}};
  const CenteredData once = center(d);
  const CenteredData twice = center(once.as_dataset());
  CHECK((twice.Xc - once.Xc).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((twice.yc - once.yc).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("center rejects non-finite input") {
  Matrix X = random_matrix(5, 2, 19);
  X(2, 1) = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(center(Dataset{X, random_vector(5, 20), {}}), invalid_data_error);
}

TEST_CASE("qr append of a unit vector") {
  QRState qr;
  Vector e1 = Vector::Zero(4);
  e1[0] = 1.0;
  REQUIRE(qr.append(e1, 0));
  CHECK(qr.size() == 1);
  CHECK((qr.Q().col(0) - e1).norm() < 1e-15);
  CHECK(qr.R()(0, 0) == doctest::Approx(1.0));
}

TEST_CASE("appending a duplicate column signals rank deficiency") {
  QRState qr;
  const Vector x = random_vector(10, 21);
  REQUIRE(qr.append(x, 0));
  CHECK_FALSE(qr.append(x, 1));
  CHECK(qr.size() == 1);
}

TEST_CASE("two random columns give an orthonormal factor reproducing X") {
  const Matrix X = random_matrix(12, 2, 22);
  QRState qr;
  REQUIRE(qr.append(X.col(0), 0));
  REQUIRE(qr.append(X.col(1), 1));
  const Matrix qtq = qr.Q().transpose() * qr.Q() - Matrix::Identity(2, 2);
  CHECK(qtq.cwiseAbs().maxCoeff() < 1e-10);
  CHECK((qr.Q() * qr.R() - X).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("repeated appends keep the factorization tight") {
  const int n = 60, p = 20;
  const Matrix X = random_matrix(n, p, 23);
  QRState qr;
  for (int j = 0; j < p; ++j) REQUIRE(qr.append(X.col(j), j));
  const Matrix qtq = qr.Q().transpose() * qr.Q() - Matrix::Identity(p, p);
  CHECK(qtq.cwiseAbs().maxCoeff() < 1e-8);
  const double scale = X.cwiseAbs().maxCoeff();
  CHECK((qr.Q() * qr.R() - X).cwiseAbs().maxCoeff() < 1e-8 * scale);
}

TEST_CASE("cached appends match direct appends") {
  const int n = 40, p = 8;
  const Matrix X = random_matrix(n, p, 24);
  QRState direct, cached;
  cached.init_cache(X);
  for (int j = 0; j < p; ++j) {
    REQUIRE(direct.append(X.col(j), j));
    REQUIRE(cached.append_cached(j, X.col(j)));
  }
  CHECK((direct.Q() - cached.Q()).cwiseAbs().maxCoeff() < 1e-9);
  CHECK((direct.R() - cached.R()).cwiseAbs().maxCoeff() < 1e-9);
  CHECK((cached.Q() * cached.R() - X).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("back_solve on identity returns gamma") {
  const Vector g = random_vector(5, 25);
  const Vector beta = back_solve(Matrix::Identity(5, 5), g);
  CHECK((beta - g).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("back_solve 1x1") {
  Matrix R(1, 1);
  R << 2.0;
  Vector g(1);
  g << 4.0;
  CHECK(back_solve(R, g)[0] == doctest::Approx(2.0));
}

TEST_CASE("back_solve residual on a well-conditioned system") {
  const int k = 10;
  Matrix R = random_matrix(k, k, 26).triangularView<Eigen::Upper>();
  R.diagonal().array() += 5.0;
  const Vector g = random_vector(k, 27);
  const Vector beta = back_solve(R, g);
  CHECK((R * beta - g).norm() / g.norm() < 1e-10);
}

TEST_CASE("back_solve rejects a zero diagonal") {
  Matrix R = Matrix::Identity(3, 3);
  R(1, 1) = 0.0;
  CHECK_THROWS_AS(back_solve(R, Vector::Ones(3)), singular_error);
}

TEST_CASE("ols with identity design returns y") {
  const Vector y = random_vector(6, 28);
  const OlsFit fit = ols(Matrix::Identity(6, 6), y);
  CHECK((fit.coef - y).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(fit.rss == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("ols with y orthogonal to the columns") {
  Matrix X = Matrix::Zero(4, 2);
  X(0, 0) = 1.0;
  X(1, 1) = 1.0;
  Vector y = Vector::Zero(4);
  y[2] = 3.0;
  y[3] = -1.0;
  const OlsFit fit = ols(X, y);
  CHECK(fit.coef.cwiseAbs().maxCoeff() < 1e-14);
  CHECK(fit.rss == doctest::Approx(y.squaredNorm()));
}

TEST_CASE("ols matches the normal equations on a random system") {
  const Matrix X = random_matrix(50, 4, 29);
  const Vector y = random_vector(50, 30);
  const OlsFit fit = ols(X, y);
  // Independent oracle: solve X'X beta = X'y directly.
  const Vector oracle = (X.transpose() * X).ldlt().solve(X.transpose() * y);
  CHECK((fit.coef - oracle).cwiseAbs().maxCoeff() < 1e-8);
  CHECK(fit.rss == doctest::Approx((y - X * oracle).squaredNorm()).epsilon(1e-10));
}

TEST_CASE("ols on an orthonormal basis returns Q^T y") {
  const Matrix X = random_matrix(30, 5, 31);
  const Matrix Q = Eigen::HouseholderQR<Matrix>(X).householderQ() * Matrix::Identity(30, 5);
  const Vector y = random_vector(30, 32);
  const OlsFit fit = ols(Q, y);
  CHECK((fit.coef - Q.transpose() * y).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("ols rejects rank-deficient designs") {
  Matrix X(10, 3);
  X.col(0) = random_vector(10, 33);
  X.col(1) = random_vector(10, 34);
  X.col(2) = 2.0 * X.col(0) - X.col(1);
  CHECK_THROWS_AS(ols(X, random_vector(10, 35)), singular_error);
}
