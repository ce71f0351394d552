#include "rbhmc/kernels.hpp"

#include "rbhmc/constraints.hpp"
#include "rbhmc/targets.hpp"

#include <doctest.h>

#include <omp.h>

#include <random>

using namespace rbhmc;

namespace {

struct Problem {
  kernels::NmfShape shape;
  kernels::NmfParams params{0.8, 1.1, 0.5, 50.0};
  RowMatrix X, W, A;
};

Problem make_problem(std::size_t n, std::size_t k, std::size_t d, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-0.2, 1.5);
  Problem p{{n, k, d}};
  auto fill = [&](RowMatrix& M, std::size_t r, std::size_t c) {
    M.resize(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c));
    for (Eigen::Index i = 0; i < M.size(); ++i) M.data()[i] = u(rng);
  };
  fill(p.X, n, d);
  fill(p.W, n, k);
  fill(p.A, k, d);
  return p;
}

std::span<const double> view(const RowMatrix& M) { return {M.data(), static_cast<std::size_t>(M.size())}; }
std::span<double> view(RowMatrix& M) { return {M.data(), static_cast<std::size_t>(M.size())}; }

}  // namespace

TEST_CASE("parallel kernels are bit-identical to the serial reference") {
  for (auto [n, k, d] : {std::tuple{1, 1, 1}, std::tuple{7, 3, 5}, std::tuple{200, 4, 36}, std::tuple{333, 2, 17}}) {
    auto p = make_problem(n, k, d, 7u + n);
    for (int threads : {1, 2, 3, 4}) {
      omp_set_num_threads(threads);
      const double ps = kernels::serial::nmf_potential(p.shape, p.params, view(p.X), view(p.W), view(p.A));
      const double pp = kernels::parallel::nmf_potential(p.shape, p.params, view(p.X), view(p.W), view(p.A));
      CHECK(ps == pp);

      RowMatrix rs(n, d), rp(n, d), dws(n, k), dwp(n, k), das(k, d), dap(k, d);
      kernels::serial::nmf_gradient(p.shape, p.params, view(p.X), view(p.W), view(p.A), view(rs), view(dws), view(das));
      kernels::parallel::nmf_gradient(p.shape, p.params, view(p.X), view(p.W), view(p.A), view(rp), view(dwp), view(dap));
      CHECK(dws == dwp);
      CHECK(das == dap);

      CHECK(kernels::serial::mean_abs_diff(p.shape, view(p.X), view(p.W), view(p.A)) ==
            kernels::parallel::mean_abs_diff(p.shape, view(p.X), view(p.W), view(p.A)));
    }
  }
  omp_set_num_threads(omp_get_num_procs());
}

TEST_CASE("serial kernels agree with a dense matrix formulation") {
  auto p = make_problem(40, 4, 9, 99);
  const auto& [lw, la, sigma, mu] = p.params;
  const RowMatrix R = p.X - p.W * p.A;
  double expected = R.squaredNorm() / (2.0 * sigma * sigma) + lw * p.W.sum() + la * p.A.sum();
  for (Eigen::Index i = 0; i < p.W.size(); ++i) expected += softplus(-mu * p.W.data()[i]);
  for (Eigen::Index i = 0; i < p.A.size(); ++i) expected += softplus(-mu * p.A.data()[i]);
  CHECK(kernels::serial::nmf_potential(p.shape, p.params, view(p.X), view(p.W), view(p.A)) ==
        doctest::Approx(expected).epsilon(1e-12));

  RowMatrix dW_expected = -(R * p.A.transpose()) / (sigma * sigma);
  RowMatrix dA_expected = -(p.W.transpose() * R) / (sigma * sigma);
  for (Eigen::Index i = 0; i < p.W.size(); ++i) {
    dW_expected.data()[i] += lw - mu * logistic(-mu * p.W.data()[i]);
  }
  for (Eigen::Index i = 0; i < p.A.size(); ++i) {
    dA_expected.data()[i] += la - mu * logistic(-mu * p.A.data()[i]);
  }
  RowMatrix scratch(40, 9), dW(40, 4), dA(4, 9);
  kernels::serial::nmf_gradient(p.shape, p.params, view(p.X), view(p.W), view(p.A), view(scratch), view(dW), view(dA));
  CHECK(dW.isApprox(dW_expected, 1e-12));
  CHECK(dA.isApprox(dA_expected, 1e-12));
  CHECK(scratch.isApprox(R, 1e-12));

  CHECK(kernels::serial::mean_abs_diff(p.shape, view(p.X), view(p.W), view(p.A)) ==
        doctest::Approx(R.cwiseAbs().mean()).epsilon(1e-12));
}
