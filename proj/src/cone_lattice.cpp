#include "conehull/cone_lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "conehull/errors.hpp"
#include "conehull/integer_lattice.hpp"

namespace conehull {

void SlabWindow::validate() const {
  require(std::isfinite(L) && L > 0, ErrorKind::InvalidArgument, "slab depth L must be positive");
  require(std::isfinite(t) && t > 0, ErrorKind::InvalidArgument, "window radius t must be positive");
  require(std::isfinite(core_margin) && core_margin >= 0, ErrorKind::InvalidArgument,
          "core_margin must be nonnegative");
}

Membership cone_membership(const Point& n, const ConeSpec& spec) {
  require(n.size() == spec.dimension(), ErrorKind::DimensionMismatch,
          "point " + n.to_string() + " has wrong dimension");
  Membership m{true, false};
  for (std::size_t k = 0; k < spec.facets(); ++k) {
    if (spec.facet(k).exact) {
      if (spec.scaled_dot(k, n) < 0) m.inside = false;
      continue;
    }
    const long double s = spec.dot(k, n);
    if (std::fabs(s) <= kTieTolerance) m.near_tie = true;
    else if (s < 0) m.inside = false;
  }
  return m;
}

Region Region::slab_window(const ConeSpec& spec, long double L, long double t) {
  Region r;
  r.slab.assign(spec.facets(), Bound{0, L});
  r.window_radius = t;
  return r;
}

namespace {

bool within(const ConeSpec& spec, std::size_t k, const Point& n, long double lo, long double hi) {
  const long double s = spec.dot(k, n);
  const long double tol = spec.facet(k).exact ? 0.0L : kTieTolerance;
  return s >= lo - tol && s <= hi + tol;
}

struct BoxPlan {
  std::int64_t box = 0;
  std::vector<LinearBound> linear;
  std::optional<QuadraticBound> quadratic;
};

BoxPlan plan_region(const ConeSpec& spec, const Region& region) {
  require(region.slab.empty() || region.slab.size() == spec.facets(), ErrorKind::DimensionMismatch,
          "region must give one slab entry per facet");
  const std::size_t D = spec.dimension();
  BoxPlan plan;
  long double depth2 = 0;
  for (std::size_t k = 0; k < spec.facets(); ++k) {
    Bound b;
    if (region.cone) b.lo = 0;
    if (!region.slab.empty() && region.slab[k]) {
      b.lo = std::max(b.lo, region.slab[k]->lo);
      b.hi = std::min(b.hi, region.slab[k]->hi);
    }
    require(std::isfinite(b.hi) && std::isfinite(b.lo), ErrorKind::UnboundedRegion,
            "facet " + std::to_string(k + 1) + " has no finite slab bounds");
    require(b.lo <= b.hi, ErrorKind::InvalidArgument, "empty slab for facet " + std::to_string(k + 1));
    const long double m = std::max(std::fabs(b.lo), std::fabs(b.hi));
    depth2 += m * m;
    LinearBound lb;
    for (std::size_t j = 0; j < D; ++j) lb.a[j] = spec.facet(k).value[j];
    lb.lo = b.lo - 1e-9L;
    lb.hi = b.hi + 1e-9L;
    plan.linear.push_back(lb);
  }
  long double radius = std::sqrt(depth2) / spec.min_singular_value();
  if (spec.facets() < D) {
    require(region.window_radius.has_value() && std::isfinite(*region.window_radius), ErrorKind::UnboundedRegion,
            "transverse directions need a finite window radius");
    require(*region.window_radius >= 0, ErrorKind::InvalidArgument, "window radius must be nonnegative");
    radius += *region.window_radius;
    const long double w = *region.window_radius;
    plan.quadratic = QuadraticBound{spec.transverse_projector(), w * w};
  }
  const long double box = std::ceil(radius) + 1;
  require(box < 1e9L && std::pow(2 * box + 1, static_cast<long double>(D - 1)) < 1e10L, ErrorKind::ResourceLimit,
          "region too large to enumerate");
  plan.box = static_cast<std::int64_t>(box);
  return plan;
}

void for_each_in_region(const ConeSpec& spec, const Region& region, const std::function<void(const Point&)>& f) {
  const BoxPlan plan = plan_region(spec, region);
  scan_box(spec.dimension(), plan.box, plan.linear, plan.quadratic, [&](const Point& n) {
    if (region_contains(spec, region, n)) f(n);
  });
}

}  // namespace

bool region_contains(const ConeSpec& spec, const Region& region, const Point& n) {
  if (region.cone && !cone_membership(n, spec)) return false;
  for (std::size_t k = 0; k < region.slab.size(); ++k)
    if (region.slab[k] && !within(spec, k, n, region.slab[k]->lo, region.slab[k]->hi)) return false;
  if (region.window_radius && spec.facets() < spec.dimension()) {
    const long double t = *region.window_radius;
    if (spec.transverse_norm2(n) > t * t * (1 + 1e-15L)) return false;
  }
  return true;
}

std::vector<Point> enumerate_region(const ConeSpec& spec, const Region& region) {
  std::vector<Point> out;
  for_each_in_region(spec, region, [&](const Point& n) { out.push_back(n); });
  return out;
}

std::uint64_t count_region(const ConeSpec& spec, const Region& region) {
  std::uint64_t count = 0;
  for_each_in_region(spec, region, [&](const Point&) { ++count; });
  return count;
}

void scan_box(std::size_t D, std::int64_t box, const std::vector<LinearBound>& linear,
              const std::optional<QuadraticBound>& quadratic, const std::function<void(const Point&)>& visit) {
  require(D >= 1 && D <= kMaxDimension, ErrorKind::DimensionMismatch, "scan dimension out of range");
  const std::size_t last = D - 1;
  // Bounds on the contribution of coordinates >= level, used for pruning.
  std::vector<std::array<long double, kMaxDimension + 1>> tail(linear.size());
  for (std::size_t c = 0; c < linear.size(); ++c) {
    tail[c][D] = 0;
    for (std::size_t j = D; j-- > 0;) tail[c][j] = tail[c][j + 1] + std::fabs(linear[c].a[j]) * box;
  }
  bool identity_q = false;
  if (quadratic) {
    identity_q = quadratic->Q.isIdentity(0);
  }
  const long double r2 = quadratic ? quadratic->r2 * (1 + 1e-12L) + 1e-9L : 0;

  Point n(D);
  std::vector<long double> partial(linear.size(), 0);

  std::function<void(std::size_t, long double)> rec = [&](std::size_t level, long double sq) {
    if (level == last) {
      long double lo = static_cast<long double>(-box), hi = static_cast<long double>(box);
      for (std::size_t c = 0; c < linear.size(); ++c) {
        const long double a = linear[c].a[last];
        const long double s = partial[c];
        if (std::fabs(a) > 1e-300L) {
          long double x1 = (linear[c].lo - s) / a, x2 = (linear[c].hi - s) / a;
          if (a < 0) std::swap(x1, x2);
          lo = std::max(lo, x1);
          hi = std::min(hi, x2);
        } else if (s < linear[c].lo - 1e-9L || s > linear[c].hi + 1e-9L) {
          return;
        }
      }
      if (quadratic) {
        const auto& Q = quadratic->Q;
        long double b = 0, cc = 0;
        for (std::size_t i = 0; i < last; ++i) {
          b += Q(last, i) * n[i];
          for (std::size_t j = 0; j < last; ++j) cc += Q(i, j) * n[i] * n[j];
        }
        const long double q = Q(last, last);
        if (q > 1e-18L) {
          const long double disc = b * b - q * (cc - r2);
          if (disc < 0) return;
          const long double root = std::sqrt(disc);
          lo = std::max(lo, (-b - root) / q);
          hi = std::min(hi, (-b + root) / q);
        } else if (cc > r2) {
          return;
        }
      }
      if (!(lo <= hi + 2)) return;
      const auto from = static_cast<std::int64_t>(std::max<long double>(std::ceil(lo) - 1, -box));
      const auto to = static_cast<std::int64_t>(std::min<long double>(std::floor(hi) + 1, box));
      for (std::int64_t x = from; x <= to; ++x) {
        n[last] = x;
        visit(n);
      }
      return;
    }
    for (std::int64_t x = -box; x <= box; ++x) {
      const long double xs = static_cast<long double>(x);
      const long double sq2 = sq + xs * xs;
      if (identity_q && sq2 > r2) continue;
      n[level] = x;
      bool feasible = true;
      for (std::size_t c = 0; c < linear.size(); ++c) {
        const long double s = partial[c] + linear[c].a[level] * xs;
        if (s - tail[c][level + 1] > linear[c].hi || s + tail[c][level + 1] < linear[c].lo) feasible = false;
      }
      if (!feasible) continue;
      for (std::size_t c = 0; c < linear.size(); ++c) partial[c] += linear[c].a[level] * xs;
      rec(level + 1, sq2);
      for (std::size_t c = 0; c < linear.size(); ++c) partial[c] -= linear[c].a[level] * xs;
    }
  };
  rec(0, 0);
}

std::vector<Point> ball_points(std::size_t D, long double r) {
  std::vector<Point> out;
  if (r <= 0) return out;
  const auto box = static_cast<std::int64_t>(std::ceil(r));
  QuadraticBound q{MatrixLD::Identity(D, D), r * r};
  scan_box(D, box, {}, q, [&](const Point& n) {
    if (static_cast<long double>(n.norm2()) < r * r) out.push_back(n);
  });
  return out;
}

long double covolume_facets(const ConeSpec& spec) {
  const std::size_t d = spec.facets();
  if (spec.all_exact()) {
    // Exact Gram determinant with entries p_a·p_b / (q_a q_b).
    std::vector<std::vector<BigRational>> G(d, std::vector<BigRational>(d));
    for (std::size_t a = 0; a < d; ++a)
      for (std::size_t b = 0; b < d; ++b) {
        BigInt s = 0;
        for (std::size_t j = 0; j < spec.dimension(); ++j)
          s += BigInt(spec.facet(a).numerator[j]) * spec.facet(b).numerator[j];
        G[a][b] = BigRational(s, BigInt(spec.facet(a).denominator) * spec.facet(b).denominator);
      }
    BigRational det = 1;
    for (std::size_t k = 0; k < d; ++k) {
      std::size_t p = k;
      while (p < d && G[p][k] == 0) ++p;
      if (p == d) return 0;
      if (p != k) {
        std::swap(G[p], G[k]);
        det = -det;
      }
      det *= G[k][k];
      for (std::size_t i = k + 1; i < d; ++i) {
        const BigRational f = G[i][k] / G[k][k];
        for (std::size_t j = k; j < d; ++j) G[i][j] -= f * G[k][j];
      }
    }
    const long double num = numerator(det).convert_to<long double>();
    const long double den = denominator(det).convert_to<long double>();
    return std::sqrt(num / den);
  }
  // Unit diagonal by invariant: only off-diagonal products carry rounding.
  MatrixLD G = spec.matrix() * spec.matrix().transpose();
  for (std::size_t k = 0; k < d; ++k) G(k, k) = 1;
  return std::sqrt(G.determinant());
}

KernelLattice kernel_covolume(const ConeSpec& spec) {
  require(spec.all_exact(), ErrorKind::IrrationalInput, "kernel lattice needs exact-rational vectors");
  const std::size_t D = spec.dimension();
  IntMatrix M(spec.facets(), std::vector<BigInt>(D));
  for (std::size_t k = 0; k < spec.facets(); ++k)
    for (std::size_t j = 0; j < D; ++j) M[k][j] = spec.facet(k).numerator[j];
  const auto basis = integer_kernel(M);
  KernelLattice out;
  for (const auto& b : basis) out.basis.emplace_back(std::span<const std::int64_t>(b));
  for (const auto& b : out.basis)
    for (std::size_t k = 0; k < spec.facets(); ++k)
      require(spec.scaled_dot(k, b) == 0, ErrorKind::InvalidArgument, "kernel basis check failed");
  out.covolume = basis.empty() ? 1.0L : std::sqrt(gram_determinant(basis).convert_to<long double>());
  return out;
}

long double image_covolume(const ConeSpec& spec) {
  require(spec.all_exact(), ErrorKind::IrrationalInput, "image lattice needs exact-rational vectors");
  const std::size_t D = spec.dimension();
  IntMatrix M(spec.facets(), std::vector<BigInt>(D));
  for (std::size_t k = 0; k < spec.facets(); ++k)
    for (std::size_t j = 0; j < D; ++j) M[k][j] = spec.facet(k).numerator[j];
  const auto hnf = column_hermite(M);
  require(hnf.rank == spec.facets(), ErrorKind::InvalidArgument, "facet matrix is rank deficient");
  // |det H| / prod(q_k): H is lower triangular on its first d columns.
  BigRational vol = 1;
  for (std::size_t k = 0; k < spec.facets(); ++k) vol *= BigRational(hnf.H[k][k], spec.facet(k).denominator);
  return numerator(vol).convert_to<long double>() / denominator(vol).convert_to<long double>();
}

long double unit_ball_volume(std::size_t k) {
  const long double h = static_cast<long double>(k) / 2;
  return std::pow(std::numbers::pi_v<long double>, h) / std::tgamma(h + 1);
}

std::vector<CountRow> count_scaling_study(const ConeSpec& spec, long double L,
                                          const std::vector<long double>& t_values) {
  const IndexSet all = IndexSet::all(spec.facets());
  const auto cls = spec.declared_rationality(all);
  require(!spec.all_exact(all) && cls != Rationality::Rational, ErrorKind::RationalSpec,
          "lattice-count asymptotics need a completely irrational spec");
  require(cls == Rationality::CompletelyIrrational, ErrorKind::InvalidArgument,
          "spec must declare the full index set CI");
  require(std::isfinite(L) && L > 0, ErrorKind::InvalidArgument, "L must be positive");
  for (std::size_t i = 0; i < t_values.size(); ++i) {
    require(std::isfinite(t_values[i]) && t_values[i] > 0, ErrorKind::InvalidArgument, "t values must be positive");
    require(i == 0 || t_values[i] > t_values[i - 1], ErrorKind::InvalidArgument, "t values must be increasing");
  }
  const std::size_t D = spec.dimension(), d = spec.facets();
  const long double base = std::pow(L, static_cast<long double>(d)) / covolume_facets(spec) * unit_ball_volume(D - d);
  std::vector<CountRow> rows;
  for (long double t : t_values) {
    CountRow row;
    row.t = t;
    row.count = count_region(spec, Region::slab_window(spec, L, t));
    row.predicted = base * std::pow(t, static_cast<long double>(D - d));
    row.relative_error = std::fabs(static_cast<long double>(row.count) - row.predicted) / row.predicted;
    rows.push_back(row);
  }
  return rows;
}

std::optional<Point> find_escape_vector(const ConeSpec& spec, std::size_t i, long double M, long double eps,
                                        std::int64_t search_radius) {
  const std::size_t d = spec.facets(), D = spec.dimension();
  require(i < d, ErrorKind::InvalidArgument, "direction index out of range");
  require(M > 0 && eps > 0 && search_radius > 0, ErrorKind::InvalidArgument, "M, eps and radius must be positive");
  const auto cls = spec.rationality(IndexSet::all(d));
  require(!spec.all_exact() && cls != Rationality::Rational, ErrorKind::RationalSpec,
          "escape vectors need an irrational spec");
  std::vector<LinearBound> linear;
  for (std::size_t k = 0; k < d; ++k) {
    LinearBound b;
    for (std::size_t j = 0; j < D; ++j) b.a[j] = spec.facet(k).value[j];
    if (k == i) b.lo = M - 1e-9L;
    else {
      b.lo = -1e-9L;
      b.hi = eps + 1e-9L;
    }
    linear.push_back(b);
  }
  // Strict inequalities with a margin above the tie tolerance.
  auto accept = [&](const Point& n) {
    for (std::size_t k = 0; k < d; ++k) {
      const long double s = spec.dot(k, n);
      if (k == i) {
        if (!(s > M + kTieTolerance)) return false;
      } else if (!(s > kTieTolerance && s < eps - kTieTolerance)) {
        return false;
      }
    }
    return true;
  };
  std::optional<Point> best;
  scan_box(D, search_radius, linear, std::nullopt, [&](const Point& n) {
    if (!accept(n)) return;
    if (!best || n.max_abs() < best->max_abs()) best = n;
  });
  return best;
}

}  // namespace conehull
