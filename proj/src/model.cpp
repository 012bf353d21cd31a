#include "conehull/model.hpp"

#include <algorithm>
#include <cmath>

#include "conehull/errors.hpp"

namespace conehull {

namespace {

using Mat2 = Eigen::Matrix2cd;

Mat2 pauli(int k) {
  const cplx I(0, 1);
  Mat2 s;
  if (k == 1) s << 0, 1, 1, 0;
  else if (k == 2) s << 0, -I, I, 0;
  else s << 1, 0, 0, -1;
  return s;
}

}  // namespace

void check_model(const ModelSpec& model) {
  require(model.name == "two_band_chern", ErrorKind::UnknownModel, "unknown model '" + model.name + "'");
  require(std::isfinite(model.m), ErrorKind::InvalidArgument, "model parameter m must be finite");
}

TruncatedOperator build_model(WindowPtr window, const ModelSpec& model) {
  check_model(model);
  require(window->dimension() == 2 && window->bands() == 2, ErrorKind::DimensionMismatch,
          "two_band_chern needs D = 2 and 2 bands");
  const cplx I(0, 1);
  const Mat2 onsite = model.m * pauli(3);
  const Mat2 hop[2] = {(pauli(3) - I * pauli(1)) / 2.0, (pauli(3) - I * pauli(2)) / 2.0};
  std::vector<Eigen::Triplet<cplx>> t;
  const auto add = [&](std::size_t r, std::size_t c, const Mat2& block) {
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        if (block(a, b) != cplx(0))
          t.emplace_back(static_cast<int>(2 * r + a), static_cast<int>(2 * c + b), block(a, b));
  };
  for (std::size_t s = 0; s < window->size(); ++s) {
    add(s, s, onsite);
    for (std::size_t j = 0; j < 2; ++j) {
      Point e(2);
      e[j] = 1;
      const auto nb = window->index_of(window->site(s) + e);
      if (!nb || *nb == s) continue;
      add(s, *nb, hop[j]);
      add(*nb, s, hop[j].adjoint());
    }
  }
  const auto n = static_cast<Eigen::Index>(window->rows());
  SparseMatrix m(n, n);
  m.setFromTriplets(t.begin(), t.end());
  TruncatedOperator h(std::move(window), std::move(m));
  h.mark_hermitian(1e-14);
  return h;
}

Mat2 model_symbol(const ModelSpec& model, double k1, double k2) {
  check_model(model);
  return std::sin(k1) * pauli(1) + std::sin(k2) * pauli(2) + (model.m + std::cos(k1) + std::cos(k2)) * pauli(3);
}

// |d(k)|² = 2 + m² + 2m(c₁ + c₂) + 2c₁c₂ is bilinear in c_j = cos k_j, so its
// extremes over [-1, 1]² sit at the corners: (m+2)², (m-2)², m².
double model_norm_bound(const ModelSpec& model) {
  check_model(model);
  return std::fabs(model.m) + 2;
}

double model_gap(const ModelSpec& model) {
  check_model(model);
  return std::min({std::fabs(model.m + 2), std::fabs(model.m - 2), std::fabs(model.m)});
}

}  // namespace conehull
