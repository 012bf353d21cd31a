#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "conehull/bulk_edge.hpp"
#include "conehull/strata.hpp"

namespace conehull {

// Insertion-ordered, so dumps are byte-stable.
using Json = nlohmann::ordered_json;

// Indices are 1-based in every serialized form.
Json to_json(const IndexSet& s);
IndexSet index_set_from_json(const Json& j, std::size_t d);
Json to_json(const Point& n);
Point point_from_json(const Json& j);
// Decimal strings keep long double precision; plain numbers are accepted on input.
Json decimal(long double x);
long double real_from_json(const Json& j);

Json to_json(const ConeSpec& spec);
ConeSpec cone_spec_from_json(const Json& j);

Json to_json(const Pattern& p);
// Pattern documents: {"kind": "analytic", I, J, x} | {"kind": "finite", points, radius}
// | {"kind": "orbit", n, radius}.
Pattern pattern_from_json(const Json& j, const ConeSpec& spec);

Json to_json(const StratumLabel& label);
Json to_json(const FellDistance& f);
Json to_json(const SpectralReport& r);
Json to_json(const PairingResult& r);
Json to_json(const BzChern& b);
Json to_json(const BulkEdgeReport& r);

// CSV with '.' decimals, LF endings and a header row; reals printed with %.17g.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}
  void add(std::vector<std::string> row);
  static std::string num(long double x);
  static std::string num(double x) { return num(static_cast<long double>(x)); }
  static std::string num(std::uint64_t x);
  std::string str() const;
  void write(const std::filesystem::path& path) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace conehull
