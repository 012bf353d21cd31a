#include "doctest.h"

#include <cmath>
#include <random>

#include "conehull/eigensolver.hpp"
#include "conehull/errors.hpp"
#include "conehull/model.hpp"
#include "conehull/parallel.hpp"
#include "conehull/spectral.hpp"
#include "fixtures.hpp"

using namespace conehull;

namespace {

// U diag(λ) U† with λ drawn from [-3,-1] ∪ [1,3].
DenseMatrix random_gapped(Eigen::Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> mag(1, 3);
  DenseMatrix a(n, n);
  for (Eigen::Index c = 0; c < n; ++c)
    for (Eigen::Index r = 0; r < n; ++r) a(r, c) = cplx(g(rng), g(rng));
  const DenseMatrix q = Eigen::HouseholderQR<DenseMatrix>(a).householderQ();
  Eigen::VectorXd lambda(n);
  for (Eigen::Index i = 0; i < n; ++i) lambda(i) = (i % 2 ? -1 : 1) * mag(rng);
  DenseMatrix h = q * lambda.cast<cplx>().asDiagonal() * q.adjoint();
  return (h + h.adjoint()) / 2.0;
}

double max_abs(const DenseMatrix& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0; }

}  // namespace

TEST_CASE("eigensolvers agree with Eigen") {
  const DenseMatrix h = random_gapped(40, 1);
  const auto sys = hermitian_eigensystem(h);
  const Eigen::VectorXd ref = Eigen::SelfAdjointEigenSolver<DenseMatrix>(h).eigenvalues();
  CHECK((sys.values - ref).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(max_abs(h * sys.vectors - sys.vectors * sys.values.cast<cplx>().asDiagonal()) <= 1e-12);
  CHECK((hermitian_eigenvalues(h) - ref).cwiseAbs().maxCoeff() <= 1e-12);
  const auto low = hermitian_eigensystem_in(h, -10, 0);
  CHECK(low.values.size() == 20);
  CHECK((low.values - ref.head(20)).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(max_abs(low.vectors.adjoint() * low.vectors - DenseMatrix::Identity(20, 20)) <= 1e-12);
}

TEST_CASE("switch profiles") {
  for (auto p : {SwitchProfile::Smoothstep, SwitchProfile::Tanh, SwitchProfile::Erf}) {
    CHECK(parse_switch_profile(to_string(p)) == p);
    CHECK(std::fabs(switch_value(p, 0.5) - 0.5) <= 1e-15);
    double prev = -1;
    for (int i = -10; i <= 20; ++i) {
      const double v = switch_value(p, i / 10.0);
      CHECK(v >= prev);
      prev = v;
    }
  }
  CHECK(switch_value(SwitchProfile::Smoothstep, 0) == 0);
  CHECK(switch_value(SwitchProfile::Smoothstep, 1) == 1);
  CHECK(switch_value(SwitchProfile::Erf, 0) <= 1e-12);
  CHECK(switch_value(SwitchProfile::Erf, 1) >= 1 - 1e-12);
  CHECK_FALSE(parse_switch_profile("cubic").has_value());
}

TEST_CASE("dense spectral functions") {
  // H = σ₃ on one site: the occupied (lower) eigenvector is the second band.
  const auto one = SiteWindow::from_sites(2, {{0, 0}}, 2);
  DenseMatrix s3(2, 2);
  s3 << 1, 0, 0, -1;
  const TruncatedOperator h(one, s3, true);
  const DenseMatrix p = spectral_function(h, ScalarFunction::fermi_step(0)).dense();
  DenseMatrix expected(2, 2);
  expected << 0, 0, 0, 1;
  CHECK(max_abs(p - expected) <= 1e-15);

  const auto w = SiteWindow::from_sites(1, [] {
    std::vector<Point> s;
    for (std::int64_t i = 0; i < 30; ++i) s.push_back(Point{i});
    return s;
  }(), 2);
  for (std::uint64_t seed = 2; seed < 6; ++seed) {
    const TruncatedOperator g(w, random_gapped(60, seed), true);
    const DenseMatrix pf = spectral_function(g, ScalarFunction::fermi_step(0)).dense();
    CHECK(max_abs(pf * pf - pf) <= 1e-10);
    CHECK(std::fabs(pf.trace().real() - 30) <= 1e-10);
    for (auto prof : {SwitchProfile::Smoothstep, SwitchProfile::Erf}) {
      const DenseMatrix u = spectral_function(g, ScalarFunction::exp_edge(0, 1.0, prof)).dense();
      CHECK(max_abs(u - DenseMatrix::Identity(60, 60)) <= 1e-10);
    }
    // Switch across the whole spectrum: u is a genuine unitary, far from 1.
    const DenseMatrix u = spectral_function(g, ScalarFunction::exp_edge(0, 8.0)).dense();
    CHECK(max_abs(u.adjoint() * u - DenseMatrix::Identity(60, 60)) <= 1e-10);
    CHECK(max_abs(u - DenseMatrix::Identity(60, 60)) >= 0.1);
  }
  CHECK_THROWS_AS(spectral_function(TruncatedOperator(w, random_gapped(60, 9)), ScalarFunction::fermi_step(0)), Error);
}

TEST_CASE("Chebyshev series") {
  const auto s = chebyshev_fit([](double x) { return cplx(std::exp(x), std::sin(3 * x)); }, -2, 1, 4, 1e-14, 200);
  CHECK(s.tail <= 1e-14);
  CHECK(s.coeffs.size() < 60);
  for (double x = -2; x <= 1; x += 0.125) {
    CHECK(std::abs(s(x) - cplx(std::exp(x), std::sin(3 * x))) <= 1e-13);
  }
  // A C¹ kink converges slowly: the cap is reached and the tail is reported honestly.
  const auto kink = chebyshev_fit([](double x) { return cplx(switch_value(SwitchProfile::Smoothstep, x + 0.5)); }, -3,
                                  3, 10, 1e-12, 300);
  CHECK(kink.coeffs.size() == 301);
  CHECK(kink.tail > 1e-12);
}

TEST_CASE("Chebyshev route matches the dense route") {
  const ModelSpec model{"two_band_chern", 1.0};
  const auto w = SiteWindow::half_space(fixtures::golden_edge(), {6, 8, 4}, 2);
  const auto h = build_model(w, model);
  const double r = model_norm_bound(model) * 1.01;
  SpectralOptions cheb;
  cheb.force_chebyshev = true;
  cheb.interval = {{-r, r}};

  const auto g = ScalarFunction::exp_edge(0, 1.0, SwitchProfile::Erf);
  const DenseMatrix dense = spectral_function(h, g).dense();
  SpectralReport rep;
  const DenseMatrix series = spectral_function(h, g, cheb, &rep).dense();
  CHECK(rep.method == "chebyshev");
  CHECK(rep.tail <= 1e-12);
  CHECK(rep.order >= rep.order_floor);
  CHECK(max_abs(series - dense) <= 1e-10);
  const auto n = series.rows();
  CHECK(max_abs(series.adjoint() * series - DenseMatrix::Identity(n, n)) <= 1e-10);

  // Column subset: same numbers as the full evaluation.
  SpectralOptions cols = cheb;
  for (std::size_t c = 0; c < w->rows(); c += 3) cols.columns.push_back(c);
  cols.column_chunk = 7;
  const auto part = spectral_function(h, g, cols);
  REQUIRE(part.is_columns());
  for (std::size_t j = 0; j < cols.columns.size(); ++j)
    CHECK((part.columns_ref().block.col(static_cast<Eigen::Index>(j)) -
           series.col(static_cast<Eigen::Index>(cols.columns[j])))
              .cwiseAbs()
              .maxCoeff() <= 1e-13);

  // Fermi projection of a gapped torus through the series.
  const auto torus = SiteWindow::torus({8, 8}, 2);
  const ModelSpec trivial{"two_band_chern", 4.0};
  const auto ht = build_model(torus, trivial);
  SpectralOptions fermi = cheb;
  fermi.interval = {{-6.1, 6.1}};
  fermi.gap = model_gap(trivial);
  const DenseMatrix pc = spectral_function(ht, ScalarFunction::fermi_step(0), fermi).dense();
  const DenseMatrix pd = spectral_function(ht, ScalarFunction::fermi_step(0)).dense();
  CHECK(max_abs(pc - pd) <= 1e-10);

  // Interval violation.
  SpectralOptions tight = cheb;
  tight.interval = {{-1.5, 1.5}};
  CHECK_THROWS_AS(spectral_function(h, g, tight), Error);
  SpectralOptions no_gap = cheb;
  CHECK_THROWS_AS(spectral_function(h, ScalarFunction::fermi_step(0), no_gap), Error);
}

TEST_CASE("thread-count independence") {
  const ModelSpec model{"two_band_chern", 1.0};
  const auto w = SiteWindow::half_space(fixtures::golden_edge(), {5, 6, 3}, 2);
  const auto h = build_model(w, model);
  SpectralOptions opts;
  opts.force_chebyshev = true;
  opts.interval = {{-3.1, 3.1}};
  opts.column_chunk = 16;
  const auto g = ScalarFunction::exp_edge(0, 1.0, SwitchProfile::Erf);
  set_thread_count(1);
  const DenseMatrix one = spectral_function(h, g, opts).dense();
  set_thread_count(3);
  const DenseMatrix three = spectral_function(h, g, opts).dense();
  set_thread_count(1);
  CHECK(max_abs(one - three) == 0);
}
