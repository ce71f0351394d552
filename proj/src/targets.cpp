#include "rbhmc/targets.hpp"

#include "rbhmc/kernels.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace rbhmc {

bool roi_contains(const HardRoi& roi, const Vector& x) {
  struct Visitor {
    const Vector& x;
    bool operator()(const BallRoi& b) const { return x.squaredNorm() <= b.radius * b.radius; }
    bool operator()(const HalfspaceRoi& h) const {
      for (std::size_t i = 0; i < h.normals.size(); ++i) {
        if (h.normals[i].dot(x) < h.offsets[i]) return false;
      }
      return true;
    }
    bool operator()(const CustomRoi& c) const { return c.contains(x); }
  };
  return std::visit(Visitor{x}, roi);
}

double Target::restricted_potential(const Vector& x) const {
  if (!in_roi(x)) return std::numeric_limits<double>::infinity();
  return potential(x);
}

Target gaussian_std(Eigen::Index dim) {
  if (dim < 1) throw std::invalid_argument("gaussian_std: dim must be >= 1");
  Target t;
  t.dim = dim;
  t.potential = [](const Vector& x) { return 0.5 * x.squaredNorm(); };
  t.grad_potential = [](const Vector& x) -> Vector { return x; };
  return t;
}

Target norm_potential(const Vector& a_diag, double radius) {
  if (a_diag.size() < 1) throw std::invalid_argument("norm_potential: empty diagonal");
  if ((a_diag.array() <= 0.0).any()) throw std::invalid_argument("norm_potential: diagonal must be positive");
  if (!(radius > 0.0)) throw std::invalid_argument("norm_potential: radius must be positive");
  Target t;
  t.dim = a_diag.size();
  t.potential = [a_diag](const Vector& x) {
    return std::sqrt((a_diag.array() * x.array().square()).sum());
  };
  t.grad_potential = [a_diag](const Vector& x) -> Vector {
    const double q = std::sqrt((a_diag.array() * x.array().square()).sum());
    if (q == 0.0) return Vector::Zero(x.size());
    return (a_diag.array() * x.array() / q).matrix();
  };
  t.hard_roi = BallRoi{radius};
  return t;
}

void NmfModel::validate() const {
  if (X.rows() < 1 || X.cols() < 1) throw std::invalid_argument("NmfModel: X must be non-empty");
  if (K < 1) throw std::invalid_argument("NmfModel: K must be >= 1");
  if (!(sigma > 0.0)) throw std::invalid_argument("NmfModel: sigma must be positive");
  if (!(lambda_W > 0.0) || !(lambda_A > 0.0)) throw std::invalid_argument("NmfModel: rates must be positive");
  if (!(mu > 0.0)) throw std::invalid_argument("NmfModel: mu must be positive");
}

namespace {

kernels::NmfShape shape_of(const NmfModel& m) {
  return {static_cast<std::size_t>(m.rows()), static_cast<std::size_t>(m.K),
          static_cast<std::size_t>(m.cols())};
}

kernels::NmfParams params_of(const NmfModel& m) {
  return {m.lambda_W, m.lambda_A, m.sigma, m.mu};
}

void check_shapes(const NmfModel& m, const RowMatrix& W, const RowMatrix& A) {
  if (W.rows() != m.rows() || W.cols() != m.K || A.rows() != m.K || A.cols() != m.cols()) {
    throw std::invalid_argument("nmf: expected W " + std::to_string(m.rows()) + "x" +
                                std::to_string(m.K) + " and A " + std::to_string(m.K) + "x" +
                                std::to_string(m.cols()) + ", got W " + std::to_string(W.rows()) +
                                "x" + std::to_string(W.cols()) + " and A " +
                                std::to_string(A.rows()) + "x" + std::to_string(A.cols()));
  }
}

std::span<const double> view(const RowMatrix& M) {
  return {M.data(), static_cast<std::size_t>(M.size())};
}

}  // namespace

double nmf_potential(const NmfModel& model, const RowMatrix& W, const RowMatrix& A) {
  check_shapes(model, W, A);
  return kernels::parallel::nmf_potential(shape_of(model), params_of(model), view(model.X), view(W),
                                          view(A));
}

NmfGradient nmf_gradient(const NmfModel& model, const RowMatrix& W, const RowMatrix& A) {
  check_shapes(model, W, A);
  NmfGradient g{RowMatrix(W.rows(), W.cols()), RowMatrix(A.rows(), A.cols())};
  std::vector<double> residual(static_cast<std::size_t>(model.X.size()));
  kernels::parallel::nmf_gradient(shape_of(model), params_of(model), view(model.X), view(W), view(A),
                                  residual, {g.dW.data(), static_cast<std::size_t>(g.dW.size())},
                                  {g.dA.data(), static_cast<std::size_t>(g.dA.size())});
  return g;
}

Vector nmf_pack(const RowMatrix& W, const RowMatrix& A) {
  Vector packed(W.size() + A.size());
  std::copy(W.data(), W.data() + W.size(), packed.data());
  std::copy(A.data(), A.data() + A.size(), packed.data() + W.size());
  return packed;
}

std::pair<RowMatrix, RowMatrix> nmf_unpack(const NmfModel& model, const Vector& packed) {
  if (packed.size() != model.packed_size()) {
    throw std::invalid_argument("nmf_unpack: expected " + std::to_string(model.packed_size()) +
                                " entries, got " + std::to_string(packed.size()));
  }
  RowMatrix W = Eigen::Map<const RowMatrix>(packed.data(), model.rows(), model.K);
  RowMatrix A = Eigen::Map<const RowMatrix>(packed.data() + W.size(), model.K, model.cols());
  return {std::move(W), std::move(A)};
}

Target nmf_target(const NmfModel& model) {
  model.validate();
  Target t;
  t.dim = model.packed_size();
  const auto s = shape_of(model);
  const auto p = params_of(model);
  const std::size_t w_size = s.n * s.k;
  auto split = [w_size](const Vector& x) {
    std::span<const double> all{x.data(), static_cast<std::size_t>(x.size())};
    return std::pair{all.first(w_size), all.subspan(w_size)};
  };
  auto check = [dim = t.dim](const Vector& x) {
    if (x.size() != dim) throw std::invalid_argument("nmf target: dimension mismatch");
  };
  t.potential = [X = model.X, s, p, split, check](const Vector& x) {
    check(x);
    auto [W, A] = split(x);
    return kernels::parallel::nmf_potential(s, p, view(X), W, A);
  };
  t.grad_potential = [X = model.X, s, p, split, check, w_size](const Vector& x) {
    check(x);
    auto [W, A] = split(x);
    Vector g(x.size());
    std::vector<double> residual(s.n * s.d);
    std::span<double> out{g.data(), static_cast<std::size_t>(g.size())};
    kernels::parallel::nmf_gradient(s, p, view(X), W, A, residual, out.first(w_size),
                                    out.subspan(w_size));
    return g;
  };
  t.hard_roi = CustomRoi{[](const Vector& x) { return (x.array() >= 0.0).all(); }};
  return t;
}

}  // namespace rbhmc
