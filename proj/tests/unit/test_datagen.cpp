#include "rbhmc/datagen.hpp"

#include "rbhmc/diagnostics.hpp"

#include <doctest.h>

#include <cmath>

using namespace rbhmc;

TEST_CASE("base images are disjoint corner blocks") {
  const RowMatrix A = base_images();
  REQUIRE(A.rows() == 4);
  REQUIRE(A.cols() == 36);
  for (Eigen::Index k = 0; k < 4; ++k) CHECK(A.row(k).sum() == 9.0);
  for (Eigen::Index k = 0; k < 4; ++k) {
    for (Eigen::Index l = k + 1; l < 4; ++l) CHECK(A.row(k).dot(A.row(l)) == 0.0);
  }
  CHECK(A.colwise().sum() == RowMatrix::Ones(1, 36));
  CHECK(A(0, 0) == 1.0);
  CHECK(A(0, 2 * 6 + 2) == 1.0);
  CHECK(A(0, 3) == 0.0);
  CHECK(A(3, 35) == 1.0);
}

TEST_CASE("noise-free dataset rows are exact sums of base images") {
  RandomStream rng(1);
  const NmfDataset d = gen_nmf_dataset(50, 0.0, rng);
  CHECK(d.X == d.W_true * d.A_true);
  CHECK(d.A_true == base_images());
  CHECK((d.W_true.array() == 0.0 || d.W_true.array() == 1.0).all());
  CHECK(mean_abs_diff(d.W_true, d.A_true, d.X) == 0.0);
}

TEST_CASE("noisy dataset statistics") {
  RandomStream rng(2);
  const NmfDataset d = gen_nmf_dataset(1000, 0.5, rng);
  REQUIRE(d.X.rows() == 1000);
  REQUIRE(d.X.cols() == 36);
  const double diff = mean_abs_diff(d.W_true, d.A_true, d.X);
  CHECK(diff > 0.39);
  CHECK(diff < 0.41);
  const double rate = d.W_true.mean();
  CHECK(rate > 0.47);
  CHECK(rate < 0.53);
  const RowMatrix noise = d.X - d.W_true * d.A_true;
  const double var = noise.squaredNorm() / static_cast<double>(noise.size());
  CHECK(var == doctest::Approx(0.25).epsilon(0.05));
  CHECK(d.noise_sd == 0.5);
}

TEST_CASE("dataset generation is reproducible and checks arguments") {
  RandomStream a(3, 7), b(3, 7);
  const auto da = gen_nmf_dataset(20, 0.5, a);
  const auto db = gen_nmf_dataset(20, 0.5, b);
  CHECK(da.X == db.X);
  CHECK(da.seed == 3);
  CHECK(da.stream == 7);
  CHECK_THROWS_AS(gen_nmf_dataset(0, 0.5, a), std::invalid_argument);
  CHECK_THROWS_AS(gen_nmf_dataset(5, -1.0, a), std::invalid_argument);
}

TEST_CASE("diagonal scalings") {
  RandomStream rng(4);
  const Vector a = gen_diag_A(50, rng);
  int big = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    CHECK((a[i] == std::exp(5.0) || a[i] == std::exp(-5.0)));
    big += a[i] == std::exp(5.0) ? 1 : 0;
  }
  CHECK(big >= 13);
  CHECK(big <= 37);
  RandomStream r1(5), r2(5);
  CHECK(gen_diag_A(10, r1) == gen_diag_A(10, r2));
  CHECK_THROWS_AS(gen_diag_A(0, rng), std::invalid_argument);
}
