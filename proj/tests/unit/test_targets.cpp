#include "rbhmc/targets.hpp"

#include "test_util.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace rbhmc;

TEST_CASE("standard Gaussian potential") {
  const auto t = gaussian_std(2);
  CHECK(t.potential(Vector{{0.0, 0.0}}) == 0.0);
  CHECK(t.potential(Vector{{1.0, 1.0}}) == 1.0);
  CHECK(t.grad_potential(Vector{{3.0, -4.0}}) == Vector{{3.0, -4.0}});
  CHECK(!t.hard_roi);
  CHECK_THROWS_AS(gaussian_std(0), std::invalid_argument);
}

TEST_CASE("norm potential examples") {
  const auto t = norm_potential(Vector{{1.0, 1.0}}, 5.0);
  CHECK(t.potential(Vector{{3.0, 4.0}}) == doctest::Approx(5.0));
  CHECK(t.grad_potential(Vector{{3.0, 4.0}}).isApprox(Vector{{0.6, 0.8}}));
  CHECK(t.potential(Vector::Zero(2)) == 0.0);
  CHECK(t.grad_potential(Vector::Zero(2)).isZero());
  CHECK(t.in_roi(Vector{{3.0, 4.0}}));
  CHECK(!t.in_roi(Vector{{3.0, 4.1}}));
  CHECK(std::isinf(t.restricted_potential(Vector{{3.0, 4.1}})));
  CHECK(std::isfinite(t.potential(Vector{{3.0, 4.1}})));

  const auto aniso = norm_potential(Vector{{std::exp(5.0), std::exp(-5.0)}});
  CHECK(aniso.potential(Vector{{1.0, 0.0}}) == doctest::Approx(std::exp(2.5)));
  CHECK(aniso.potential(Vector{{0.0, 1.0}}) == doctest::Approx(std::exp(-2.5)));

  CHECK_THROWS_AS(norm_potential(Vector{{1.0, -1.0}}), std::invalid_argument);
}

TEST_CASE("norm potential is positively homogeneous inside the ball") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n01;
  const auto t = norm_potential(Vector{{std::exp(5.0), 1.0, std::exp(-5.0)}});
  for (int i = 0; i < 50; ++i) {
    Vector x{{n01(rng), n01(rng), n01(rng)}};
    x *= 0.5 / x.norm();
    for (double c : {0.3, 1.7, 5.0}) {
      CHECK(t.potential(c * x) == doctest::Approx(c * t.potential(x)).epsilon(1e-12));
    }
  }
}

TEST_CASE("target gradients match finite differences") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> n01;
  const auto gauss = gaussian_std(4);
  const auto norm = norm_potential(Vector{{std::exp(5.0), std::exp(-5.0), 1.0, 2.0}});
  for (const Target* t : {&gauss, &norm}) {
    for (int i = 0; i < 100; ++i) {
      Vector x(4);
      for (auto& v : x) v = n01(rng);
      const Vector fd = testutil::finite_difference(t->potential, x);
      CHECK(testutil::gradient_error(t->grad_potential(x), fd) < 1e-5);
    }
  }
}

namespace {

NmfModel random_model(std::mt19937_64& rng, Eigen::Index n, Eigen::Index d, Eigen::Index k) {
  std::uniform_real_distribution<double> u(0.0, 2.0);
  NmfModel m;
  m.X.resize(n, d);
  for (Eigen::Index i = 0; i < m.X.size(); ++i) m.X.data()[i] = u(rng);
  m.K = k;
  m.lambda_W = 0.7;
  m.lambda_A = 1.3;
  m.sigma = 0.5;
  m.mu = 20.0;
  return m;
}

RowMatrix random_matrix(std::mt19937_64& rng, Eigen::Index r, Eigen::Index c) {
  std::uniform_real_distribution<double> u(-0.3, 1.5);
  RowMatrix M(r, c);
  for (Eigen::Index i = 0; i < M.size(); ++i) M.data()[i] = u(rng);
  return M;
}

}  // namespace

TEST_CASE("NMF potential examples") {
  NmfModel m;
  m.X = RowMatrix::Zero(1, 1);
  m.K = 1;
  m.sigma = 0.5;
  m.mu = 200.0;
  const RowMatrix zero = RowMatrix::Zero(1, 1);
  CHECK(nmf_potential(m, zero, zero) == doctest::Approx(1.3862943611198906).epsilon(1e-14));

  const auto g = nmf_gradient(m, zero, zero);
  CHECK(g.dW(0, 0) == doctest::Approx(-99.0));
  CHECK(g.dA(0, 0) == doctest::Approx(-99.0));

  // Exact factorization with every entry far inside the ROI.
  RowMatrix W{{1.0, 2.0}, {0.5, 1.5}};
  RowMatrix A{{1.0, 0.5, 2.0}, {0.25, 1.0, 0.75}};
  NmfModel exact;
  exact.X = W * A;
  exact.K = 2;
  exact.mu = 200.0;
  exact.lambda_W = 1.0;
  exact.lambda_A = 1.0;
  CHECK(nmf_potential(exact, W, A) == doctest::Approx(W.sum() + A.sum()).epsilon(1e-4));
  const auto ge = nmf_gradient(exact, W, A);
  CHECK((ge.dW.array() - exact.lambda_W).abs().maxCoeff() < 1e-4);
  CHECK((ge.dA.array() - exact.lambda_A).abs().maxCoeff() < 1e-4);
}

TEST_CASE("NMF gradient matches finite differences") {
  std::mt19937_64 rng(23);
  const NmfModel m = random_model(rng, 3, 2, 2);
  const Target t = nmf_target(m);
  for (int i = 0; i < 100; ++i) {
    const Vector x = nmf_pack(random_matrix(rng, 3, 2), random_matrix(rng, 2, 2));
    const Vector fd = testutil::finite_difference(t.potential, x);
    CHECK(testutil::gradient_error(t.grad_potential(x), fd) < 1e-5);
    const auto [W, A] = nmf_unpack(m, x);
    const auto g = nmf_gradient(m, W, A);
    CHECK((nmf_pack(g.dW, g.dA) - t.grad_potential(x)).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("NMF potential is symmetric under transposition") {
  std::mt19937_64 rng(29);
  const NmfModel m = random_model(rng, 5, 4, 3);
  const RowMatrix W = random_matrix(rng, 5, 3);
  const RowMatrix A = random_matrix(rng, 3, 4);
  NmfModel t = m;
  t.X = m.X.transpose();
  t.lambda_W = m.lambda_A;
  t.lambda_A = m.lambda_W;
  const RowMatrix Wt = A.transpose();
  const RowMatrix At = W.transpose();
  CHECK(nmf_potential(t, Wt, At) == doctest::Approx(nmf_potential(m, W, A)).epsilon(1e-12));
}

TEST_CASE("NMF shape checks and packing") {
  NmfModel m;
  m.X = RowMatrix::Ones(3, 4);
  m.K = 2;
  CHECK_THROWS_AS(nmf_potential(m, RowMatrix::Zero(3, 3), RowMatrix::Zero(2, 4)), std::invalid_argument);
  CHECK_THROWS_AS(nmf_gradient(m, RowMatrix::Zero(3, 2), RowMatrix::Zero(2, 5)), std::invalid_argument);
  CHECK_THROWS_AS(nmf_unpack(m, Vector::Zero(5)), std::invalid_argument);

  RowMatrix W{{1, 2}, {3, 4}, {5, 6}};
  RowMatrix A{{7, 8, 9, 10}, {11, 12, 13, 14}};
  const Vector packed = nmf_pack(W, A);
  for (Eigen::Index i = 0; i < packed.size(); ++i) CHECK(packed[i] == static_cast<double>(i + 1));
  const auto [W2, A2] = nmf_unpack(m, packed);
  CHECK(W2 == W);
  CHECK(A2 == A);
  const auto t = nmf_target(m);
  CHECK(t.dim == 14);
  CHECK(t.in_roi(packed));
  CHECK(!t.in_roi(-packed));
}
