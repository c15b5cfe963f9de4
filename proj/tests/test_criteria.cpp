#include <doctest.h>

#include <cmath>

#include "boss/criteria.hpp"

using namespace boss;

TEST_CASE("cp arithmetic") {
  CHECK(cp(0.0, 5.0, 1.0) == doctest::Approx(10.0));
  CHECK(cp(7.3, 0.0, 2.0) == doctest::Approx(7.3));
  CHECK(cp(10.0, 3.0, 2.0) == doctest::Approx(22.0));
}

TEST_CASE("aicc values and pole") {
  const int n = 100;
  CHECK(aicc(100.0, 0.0, n) == doctest::Approx(100.0 * 100.0 / 98.0).epsilon(1e-12));
  CHECK(std::isinf(aicc(50.0, n - 2.0, n)));
  CHECK(std::isinf(aicc(50.0, n + 1.0, n)));
  CHECK(std::isinf(aicc(0.0, 3.0, n)));
}

TEST_CASE("aic values") {
  CHECK(aic(100.0, 0.0, 100) == doctest::Approx(0.0));
  CHECK(aic(100.0, 3.0, 100) == doctest::Approx(6.0));
  CHECK(std::isinf(aic(0.0, 1.0, 50)));
}

TEST_CASE("aic is below aicc on a grid") {
  // n (n+df)/(n-df-2) > n + 2 df whenever 0 <= df < n-2.
  for (int n : {20, 50, 200}) {
    for (double df = 0.0; df < n - 3; df += 1.7) {
      CHECK(aic(37.0, df, n) < aicc(37.0, df, n));
    }
  }
}

TEST_CASE("bic values") {
  CHECK(bic(100.0, 0.0, 100) == doctest::Approx(0.0));
  // at n = round(e^2) = 7 the per-df penalty log(7) = 1.9459 sits next to
  // aic's 2; at n = 200 it is log(200) = 5.2983 per df
  CHECK(bic(5.0, 3.0, 7) - aic(5.0, 3.0, 7) == doctest::Approx(3.0 * (std::log(7.0) - 2.0)));
  CHECK(bic(5.0, 1.0, 200) - 200 * std::log(5.0 / 200) ==
        doctest::Approx(5.2983).epsilon(1e-4));
  CHECK(std::isinf(bic(0.0, 1.0, 50)));
}

TEST_CASE("err_kl_train values") {
  CHECK(err_kl_train(100.0, 100) == doctest::Approx(-100.0));
  CHECK(err_kl_train(100.0 * std::exp(1.0), 100) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(std::isinf(err_kl_train(0.0, 10)));
}

TEST_CASE("aicc equals err_kl_train plus penalty plus n") {
  const int n = 64;
  for (double df = 0.0; df < 30.0; df += 3.3) {
    const double lhs = aicc(17.0, df, n) - err_kl_train(17.0, n);
    CHECK(lhs == doctest::Approx(n * (n + df) / (n - df - 2.0) + n).epsilon(1e-12));
  }
}

TEST_CASE("penalties are monotone in df below the pole") {
  const int n = 60;
  for (double df = 0.0; df < n - 4; df += 1.0) {
    CHECK(aicc(9.0, df + 0.5, n) > aicc(9.0, df, n));
    CHECK(bic(9.0, df + 0.5, n) > bic(9.0, df, n));
    CHECK(aic(9.0, df + 0.5, n) > aic(9.0, df, n));
    CHECK(cp(9.0, df + 0.5, 1.3) > cp(9.0, df, 1.3));
  }
}

TEST_CASE("scaling rss shifts log criteria but keeps the argmin") {
  Vector rss(4), df(4);
  rss << 10.0, 6.0, 4.5, 4.4;
  df << 0.0, 1.0, 2.0, 3.0;
  const CriterionTrace a = evaluate_trace(Criterion::Aicc, rss, df, 50);
  const CriterionTrace b = evaluate_trace(Criterion::Aicc, 3.7 * rss, df, 50);
  CHECK(a.argmin == b.argmin);
  const double shift = 50 * std::log(3.7);
  for (int k = 0; k < 4; ++k) {
    CHECK(b.values[k] - a.values[k] == doctest::Approx(shift).epsilon(1e-10));
  }
  // Cp argmin is invariant when sigma^2 scales with rss.
  const CriterionTrace c1 = evaluate_trace(Criterion::Cp, rss, df, 50, 2.0);
  const CriterionTrace c2 = evaluate_trace(Criterion::Cp, 3.7 * rss, df, 50, 3.7 * 2.0);
  CHECK(c1.argmin == c2.argmin);
}

TEST_CASE("aicc approaches aic + n for large n") {
  // Exact penalty algebra: aicc - aic - n = 2 + 2(df+1)(df+2)/(n-df-2),
  // so the residual beyond the constant is O(df^2/n).
  for (double df : {0.0, 4.0, 11.0}) {
    for (int n : {100, 1000, 10000, 100000}) {
      const double gap = aicc(123.0, df, n) - aic(123.0, df, n) - n;
      const double expect = 2.0 + 2.0 * (df + 1.0) * (df + 2.0) / (n - df - 2.0);
      CHECK(gap == doctest::Approx(expect).epsilon(1e-9));
    }
  }
}

TEST_CASE("argmin skips infinite sentinels and breaks ties to smaller k") {
  Vector v(5);
  v << INFINITY, 3.0, 2.0, 2.0, INFINITY;
  CHECK(argmin_finite(v) == 2);
  Vector all_inf = Vector::Constant(3, INFINITY);
  CHECK_THROWS_AS(argmin_finite(all_inf), selection_error);
}

TEST_CASE("err_kl_estimate plugs in") {
  // muhat = mu and rss = n sigma^2: err + op = n log(sigma^2) - n + 2n.
  const int n = 50;
  const double sigma = 1.3;
  const Vector mu = Vector::Ones(n);
  Matrix fitted(n, 1);
  fitted.col(0) = mu;
  Vector rss(1);
  rss << n * sigma * sigma;
  const CriterionTrace t = err_kl_estimate(fitted, rss, mu, sigma);
  CHECK(t.values[0] ==
        doctest::Approx(n * std::log(sigma * sigma) + n).epsilon(1e-12));
}
