#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace conehull {

// Desk-scale enumeration is only practical for small D.
inline constexpr std::size_t kMaxDimension = 4;

// A point of Z^D with D <= kMaxDimension, stored inline.
class Point {
 public:
  Point() = default;
  explicit Point(std::size_t dim);
  Point(std::initializer_list<std::int64_t> coords);
  explicit Point(std::span<const std::int64_t> coords);

  std::size_t size() const noexcept { return dim_; }
  std::int64_t& operator[](std::size_t i) noexcept { return c_[i]; }
  std::int64_t operator[](std::size_t i) const noexcept { return c_[i]; }
  const std::int64_t* begin() const noexcept { return c_.data(); }
  const std::int64_t* end() const noexcept { return c_.data() + dim_; }

  std::int64_t norm2() const noexcept;
  std::int64_t max_abs() const noexcept;
  bool is_zero() const noexcept;

  Point operator-() const;
  Point& operator+=(const Point& o);
  Point& operator-=(const Point& o);
  friend Point operator+(Point a, const Point& b) { return a += b; }
  friend Point operator-(Point a, const Point& b) { return a -= b; }

  // Lexicographic order; only points of equal dimension are ever compared.
  friend bool operator==(const Point& a, const Point& b) noexcept;
  friend std::strong_ordering operator<=>(const Point& a, const Point& b) noexcept;

  std::string to_string() const;

 private:
  std::array<std::int64_t, kMaxDimension> c_{};
  std::size_t dim_ = 0;
};

// Subset of facet indices {0..d-1}; serialized 1-based ("1,2").
class IndexSet {
 public:
  IndexSet() = default;
  IndexSet(std::initializer_list<std::size_t> indices);
  static IndexSet all(std::size_t d);
  static IndexSet from_mask(std::uint32_t mask) { IndexSet s; s.mask_ = mask; return s; }

  bool contains(std::size_t k) const noexcept { return (mask_ >> k) & 1u; }
  void insert(std::size_t k) noexcept { mask_ |= (1u << k); }
  void erase(std::size_t k) noexcept { mask_ &= ~(1u << k); }
  std::size_t size() const noexcept;
  bool empty() const noexcept { return mask_ == 0; }
  std::uint32_t mask() const noexcept { return mask_; }
  bool subset_of(const IndexSet& o) const noexcept { return (mask_ & ~o.mask_) == 0; }
  std::vector<std::size_t> elements() const;

  IndexSet operator|(const IndexSet& o) const noexcept { return from_mask(mask_ | o.mask_); }
  IndexSet operator&(const IndexSet& o) const noexcept { return from_mask(mask_ & o.mask_); }
  friend bool operator==(const IndexSet&, const IndexSet&) = default;

  // "1,2" style, sorted, 1-based; empty set is "".
  std::string key() const;
  // Parses the key form; returns false on malformed or unsorted input.
  static bool parse_key(const std::string& text, std::size_t d, IndexSet& out);

 private:
  std::uint32_t mask_ = 0;
};

}  // namespace conehull
