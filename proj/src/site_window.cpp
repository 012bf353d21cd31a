#include "conehull/site_window.hpp"

#include <algorithm>

#include "conehull/errors.hpp"

namespace conehull {

void SiteWindow::finish() {
  require(bands_ >= 1, ErrorKind::InvalidArgument, "a window needs at least one band");
  require(core_.size() == sites_.size(), ErrorKind::DimensionMismatch, "core mask length differs from site count");
  core_count_ = static_cast<std::size_t>(std::count(core_.begin(), core_.end(), true));
}

WindowPtr SiteWindow::half_space(const ConeSpec& spec, const SlabWindow& geometry, std::size_t bands) {
  geometry.validate();
  const long double m = geometry.core_margin;
  std::shared_ptr<SiteWindow> w(new SiteWindow);
  w->D_ = spec.dimension();
  w->bands_ = bands;
  w->sites_ = enumerate_region(spec, Region::slab_window(spec, geometry.L + m, geometry.t + m));
  const auto core = Region::slab_window(spec, geometry.L, geometry.t);
  w->core_.reserve(w->sites_.size());
  for (const auto& n : w->sites_) w->core_.push_back(region_contains(spec, core, n));
  w->spec_ = spec;
  w->geometry_ = geometry;
  w->finish();
  return w;
}

WindowPtr SiteWindow::torus(const std::vector<std::int64_t>& extents, std::size_t bands) {
  const std::size_t D = extents.size();
  require(D >= 1 && D <= kMaxDimension, ErrorKind::DimensionMismatch, "torus dimension out of range");
  std::size_t total = 1;
  for (auto e : extents) {
    require(e >= 1, ErrorKind::InvalidArgument, "torus extents must be positive");
    total *= static_cast<std::size_t>(e);
  }
  std::shared_ptr<SiteWindow> w(new SiteWindow);
  w->D_ = D;
  w->bands_ = bands;
  w->periods_ = extents;
  w->sites_.reserve(total);
  Point n(D);
  for (std::size_t i = 0; i < total; ++i) {
    std::size_t rest = i;
    for (std::size_t k = D; k-- > 0;) {
      n[k] = static_cast<std::int64_t>(rest % static_cast<std::size_t>(extents[k]));
      rest /= static_cast<std::size_t>(extents[k]);
    }
    w->sites_.push_back(n);
  }
  w->core_.assign(total, true);
  w->finish();
  return w;
}

WindowPtr SiteWindow::from_sites(std::size_t D, std::vector<Point> sites, std::size_t bands,
                                 std::optional<ConeSpec> spec, std::vector<bool> core) {
  for (const auto& n : sites) require(n.size() == D, ErrorKind::DimensionMismatch, "site dimension mismatch");
  if (spec) {
    require(spec->dimension() == D, ErrorKind::DimensionMismatch, "spec dimension mismatch");
    for (const auto& n : sites)
      require(cone_membership(n, *spec).inside, ErrorKind::InvalidArgument,
              "site " + n.to_string() + " is outside the cone semigroup");
  }
  std::vector<std::size_t> order(sites.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return sites[a] < sites[b]; });
  if (core.empty()) core.assign(sites.size(), true);
  require(core.size() == sites.size(), ErrorKind::DimensionMismatch, "core mask length differs from site count");
  std::shared_ptr<SiteWindow> w(new SiteWindow);
  w->D_ = D;
  w->bands_ = bands;
  for (auto i : order) {
    if (!w->sites_.empty() && w->sites_.back() == sites[i]) continue;
    w->sites_.push_back(sites[i]);
    w->core_.push_back(core[i]);
  }
  w->spec_ = std::move(spec);
  w->finish();
  return w;
}

std::optional<std::size_t> SiteWindow::index_of(const Point& n) const {
  if (n.size() != D_) return std::nullopt;
  Point key = n;
  for (std::size_t k = 0; k < periods_.size(); ++k) {
    key[k] %= periods_[k];
    if (key[k] < 0) key[k] += periods_[k];
  }
  const auto it = std::lower_bound(sites_.begin(), sites_.end(), key);
  if (it == sites_.end() || !(*it == key)) return std::nullopt;
  return static_cast<std::size_t>(it - sites_.begin());
}

Point SiteWindow::displacement(std::size_t s, std::size_t r) const {
  Point d = sites_[s] - sites_[r];
  for (std::size_t k = 0; k < periods_.size(); ++k) {
    const std::int64_t E = periods_[k];
    d[k] %= E;
    if (d[k] > E / 2) d[k] -= E;
    if (d[k] <= -((E + 1) / 2)) d[k] += E;
  }
  return d;
}

bool SiteWindow::same_as(const SiteWindow& other) const {
  return this == &other ||
         (D_ == other.D_ && bands_ == other.bands_ && sites_ == other.sites_ && core_ == other.core_ &&
          periods_ == other.periods_);
}

}  // namespace conehull
