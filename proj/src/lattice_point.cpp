#include "conehull/lattice_point.hpp"

#include <algorithm>
#include <bit>
#include <cstdlib>
#include <sstream>

#include "conehull/errors.hpp"

namespace conehull {

Point::Point(std::size_t dim) : dim_(dim) {
  require(dim >= 1 && dim <= kMaxDimension, ErrorKind::DimensionMismatch,
          "point dimension must be in [1, " + std::to_string(kMaxDimension) + "]");
}

Point::Point(std::initializer_list<std::int64_t> coords) : Point(coords.size()) {
  std::copy(coords.begin(), coords.end(), c_.begin());
}

Point::Point(std::span<const std::int64_t> coords) : Point(coords.size()) {
  std::copy(coords.begin(), coords.end(), c_.begin());
}

std::int64_t Point::norm2() const noexcept {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < dim_; ++i) s += c_[i] * c_[i];
  return s;
}

std::int64_t Point::max_abs() const noexcept {
  std::int64_t m = 0;
  for (std::size_t i = 0; i < dim_; ++i) m = std::max<std::int64_t>(m, std::llabs(c_[i]));
  return m;
}

bool Point::is_zero() const noexcept {
  for (std::size_t i = 0; i < dim_; ++i)
    if (c_[i] != 0) return false;
  return true;
}

Point Point::operator-() const {
  Point r = *this;
  for (std::size_t i = 0; i < dim_; ++i) r.c_[i] = -c_[i];
  return r;
}

Point& Point::operator+=(const Point& o) {
  for (std::size_t i = 0; i < dim_; ++i) c_[i] += o.c_[i];
  return *this;
}

Point& Point::operator-=(const Point& o) {
  for (std::size_t i = 0; i < dim_; ++i) c_[i] -= o.c_[i];
  return *this;
}

bool operator==(const Point& a, const Point& b) noexcept {
  if (a.dim_ != b.dim_) return false;
  for (std::size_t i = 0; i < a.dim_; ++i)
    if (a.c_[i] != b.c_[i]) return false;
  return true;
}

std::strong_ordering operator<=>(const Point& a, const Point& b) noexcept {
  const std::size_t n = std::min(a.dim_, b.dim_);
  for (std::size_t i = 0; i < n; ++i)
    if (auto c = a.c_[i] <=> b.c_[i]; c != 0) return c;
  return a.dim_ <=> b.dim_;
}

std::string Point::to_string() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < dim_; ++i) os << (i ? "," : "") << c_[i];
  os << ')';
  return os.str();
}

IndexSet::IndexSet(std::initializer_list<std::size_t> indices) {
  for (auto k : indices) insert(k);
}

IndexSet IndexSet::all(std::size_t d) {
  return from_mask(d >= 32 ? ~0u : ((1u << d) - 1u));
}

std::size_t IndexSet::size() const noexcept { return static_cast<std::size_t>(std::popcount(mask_)); }

std::vector<std::size_t> IndexSet::elements() const {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < 32; ++k)
    if (contains(k)) out.push_back(k);
  return out;
}

std::string IndexSet::key() const {
  std::string s;
  for (auto k : elements()) {
    if (!s.empty()) s += ',';
    s += std::to_string(k + 1);
  }
  return s;
}

bool IndexSet::parse_key(const std::string& text, std::size_t d, IndexSet& out) {
  out = IndexSet{};
  if (text.empty()) return true;
  std::size_t last = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto comma = text.find(',', pos);
    const auto token = text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (token.empty() || !std::all_of(token.begin(), token.end(), [](char c) { return c >= '0' && c <= '9'; }))
      return false;
    const auto k = static_cast<std::size_t>(std::stoul(token));
    if (k < 1 || k > d || k <= last) return false;
    out.insert(k - 1);
    last = k;
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return true;
}

}  // namespace conehull
