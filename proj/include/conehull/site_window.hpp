#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "conehull/cone_lattice.hpp"

namespace conehull {

// Enumerated lattice sites carrying `bands` internal degrees of freedom each.
// Row index of (site s, band b) is s·bands + b.
class SiteWindow {
 public:
  // Sites of the slab 0 <= v_k·n <= L + margin with ‖P n‖ <= t + margin; the
  // core is the L, t slab, i.e. margin away from the artificial cuts.
  static std::shared_ptr<const SiteWindow> half_space(const ConeSpec& spec, const SlabWindow& geometry,
                                                      std::size_t bands);
  // The box Π [0, extent_i) with periodic identification; every site is core.
  static std::shared_ptr<const SiteWindow> torus(const std::vector<std::int64_t>& extents, std::size_t bands);
  // Explicit sites (sorted and deduplicated here); core defaults to all sites.
  static std::shared_ptr<const SiteWindow> from_sites(std::size_t D, std::vector<Point> sites, std::size_t bands,
                                                      std::optional<ConeSpec> spec = std::nullopt,
                                                      std::vector<bool> core = {});

  std::size_t dimension() const noexcept { return D_; }
  std::size_t bands() const noexcept { return bands_; }
  std::size_t size() const noexcept { return sites_.size(); }
  std::size_t rows() const noexcept { return sites_.size() * bands_; }
  const std::vector<Point>& sites() const noexcept { return sites_; }
  const Point& site(std::size_t s) const { return sites_[s]; }
  bool core(std::size_t s) const { return core_[s]; }
  std::size_t core_count() const noexcept { return core_count_; }

  const std::optional<ConeSpec>& spec() const noexcept { return spec_; }
  const std::optional<SlabWindow>& geometry() const noexcept { return geometry_; }
  bool periodic() const noexcept { return !periods_.empty(); }
  const std::vector<std::int64_t>& periods() const noexcept { return periods_; }

  // Site index of n (wrapped into the box on a torus).
  std::optional<std::size_t> index_of(const Point& n) const;
  // n_s - n_r; on a torus the minimal image with components in (-E/2, E/2].
  Point displacement(std::size_t s, std::size_t r) const;

  bool same_as(const SiteWindow& other) const;

 private:
  SiteWindow() = default;
  void finish();

  std::size_t D_ = 0;
  std::size_t bands_ = 1;
  std::vector<Point> sites_;
  std::vector<bool> core_;
  std::size_t core_count_ = 0;
  std::optional<ConeSpec> spec_;
  std::optional<SlabWindow> geometry_;
  std::vector<std::int64_t> periods_;
};

using WindowPtr = std::shared_ptr<const SiteWindow>;

}  // namespace conehull
