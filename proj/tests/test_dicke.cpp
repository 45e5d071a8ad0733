#include "cspin/dicke.hpp"
#include "cspin/errors.hpp"

#include "full_oracle.hpp"

#include <doctest.h>

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <random>

using namespace cspin;
using boost::multiprecision::cpp_int;

namespace {

cpp_int exact_binomial(int N, int n) {
  cpp_int c = 1;
  for (int k = 1; k <= n; ++k) {
    c *= N - n + k;
    c /= k;
  }
  return c;
}

double ln_cpp_int(const cpp_int& v) {
  // ln of a big integer via its decimal digits.
  const std::string digits = v.str();
  double mantissa = 0.0;
  const int take = std::min<int>(18, static_cast<int>(digits.size()));
  for (int i = 0; i < take; ++i) mantissa = mantissa * 10 + (digits[i] - '0');
  return std::log(mantissa) +
         (static_cast<int>(digits.size()) - take) * std::log(10.0);
}

}  // namespace

TEST_CASE("log_binomial small cases") {
  CHECK(log_binomial(8, 0) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(log_binomial(8, 8) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(log_binomial(8, 4) == doctest::Approx(std::log(70.0)).epsilon(1e-14));
  CHECK_THROWS_AS(log_binomial(8, 9), std::domain_error);
  CHECK_THROWS_AS(log_binomial(8, -1), std::domain_error);
}

TEST_CASE("log_binomial matches big-integer oracle at N=250") {
  const double expected = ln_cpp_int(exact_binomial(250, 125));
  CHECK(log_binomial(250, 125) == doctest::Approx(expected).epsilon(1e-10));
}

TEST_CASE("log_binomial vs exact binomials for all N <= 60") {
  for (int N = 0; N <= 60; ++N) {
    for (int n = 0; n <= N; ++n) {
      const cpp_int exact = exact_binomial(N, n);
      const double lb = log_binomial(N, n);
      // The value round-trips exactly through exp while C ln(C) eps << 1/2;
      // beyond ~2^40 the exp(ln x) evaluation itself can move x by >= 1.
      if (exact < (cpp_int{1} << 40)) {
        CHECK(static_cast<cpp_int>(std::llround(std::exp(lb))) == exact);
      }
      CHECK(lb == doctest::Approx(ln_cpp_int(exact)).epsilon(1e-13));
    }
  }
}

TEST_CASE("ladder coefficient") {
  CHECK(ladder_coefficient(0, 8) == 0.0);
  CHECK(ladder_coefficient(9, 8) == 0.0);
  CHECK(ladder_coefficient(1, 8) == 8.0);
  CHECK_THROWS_AS(ladder_coefficient(10, 8), std::domain_error);

  // Symmetry b_n = b_{N+1-n}, non-negativity.
  for (int N = 1; N <= 40; ++N)
    for (int n = 0; n <= N + 1; ++n) {
      CHECK(ladder_coefficient(n, N) >= 0.0);
      CHECK(ladder_coefficient(n, N) == ladder_coefficient(N + 1 - n, N));
    }
}

TEST_CASE("coherent weights: edge angles and N=2 equator") {
  const double pi = std::acos(-1.0);
  auto w0 = coherent_weights(12, 0.0);
  CHECK(w0.w[0] == doctest::Approx(1.0).epsilon(1e-15));
  for (int n = 1; n <= 12; ++n) CHECK(w0.w[n] == 0.0);

  // theta = pi in floating point leaves cos(theta/2) ~ 6e-17, so the lower
  // weights underflow to physically-zero values instead of exact zeros.
  auto wpi = coherent_weights(12, pi);
  CHECK(wpi.w[12] == doctest::Approx(1.0).epsilon(1e-15));
  for (int n = 0; n < 12; ++n) CHECK(wpi.w[n] <= 1e-30);

  auto weq = coherent_weights(2, pi / 2);
  CHECK(weq.w[0] == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(weq.w[1] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(weq.w[2] == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("coherent weights normalize up to N=1000 across theta") {
  const double pi = std::acos(-1.0);
  std::mt19937 rng(20240817);
  std::uniform_real_distribution<double> angle(0.0, pi);
  for (int rep = 0; rep < 200; ++rep) {
    const int N = 1 + static_cast<int>(rng() % 1000);
    const double theta = angle(rng);
    const auto cw = coherent_weights(N, theta);
    double sum = 0.0;
    for (int n = 0; n <= N; ++n) {
      CHECK(cw.w[n] >= 0.0);
      sum += cw.w[n];
    }
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK_THROWS_AS(coherent_weights(8, -0.1), std::domain_error);
  CHECK_THROWS_AS(coherent_weights(8, 3.5), std::domain_error);
}

TEST_CASE("dicke vectors: explicit small cases") {
  const auto v21 = dicke_vector(2, 1);
  // (|up down> + |down up>)/sqrt(2): configs 0b01 and 0b10.
  CHECK(v21[1] == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(v21[2] == doctest::Approx(1 / std::sqrt(2.0)));
  CHECK(v21[0] == 0.0);
  CHECK(v21[3] == 0.0);

  const auto v30 = dicke_vector(3, 0);
  CHECK(v30[0] == doctest::Approx(1.0));
  for (int cfg = 1; cfg < 8; ++cfg) CHECK(v30[cfg] == 0.0);

  CHECK_THROWS_AS(dicke_vector(15, 0), CapacityError);
}

TEST_CASE("dicke vectors are orthonormal and maximal-J") {
  for (int N : {2, 3, 5}) {
    const Eigen::MatrixXd j2 = oracle::bath_j_squared(N);
    const double jmax = (N / 2.0) * (N / 2.0 + 1.0);
    std::vector<Eigen::VectorXd> basis;
    for (int n = 0; n <= N; ++n) {
      const auto raw = dicke_vector(N, n);
      basis.push_back(Eigen::Map<const Eigen::VectorXd>(raw.data(), raw.size()));
    }
    for (int n = 0; n <= N; ++n) {
      CHECK((j2 * basis[n] - jmax * basis[n]).cwiseAbs().maxCoeff() ==
            doctest::Approx(0.0).epsilon(1e-12));
      for (int m = 0; m <= N; ++m) {
        const double overlap = basis[n].dot(basis[m]);
        CHECK(overlap == doctest::Approx(n == m ? 1.0 : 0.0).epsilon(1e-12));
      }
    }
  }
}
