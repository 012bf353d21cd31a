#include "conehull/serialize.hpp"

#include <cinttypes>
#include <cstdio>
#include <fstream>

#include "conehull/errors.hpp"

namespace conehull {

Json to_json(const IndexSet& s) {
  Json out = Json::array();
  for (auto k : s.elements()) out.push_back(k + 1);
  return out;
}

IndexSet index_set_from_json(const Json& j, std::size_t d) {
  require(j.is_array(), ErrorKind::InvalidArgument, "index set must be an array of 1-based indices");
  IndexSet s;
  for (const auto& e : j) {
    require(e.is_number_integer() && e.get<std::int64_t>() >= 1 && e.get<std::int64_t>() <= static_cast<std::int64_t>(d),
            ErrorKind::InvalidArgument, "index out of range 1.." + std::to_string(d));
    s.insert(e.get<std::size_t>() - 1);
  }
  return s;
}

Json to_json(const Point& n) {
  Json out = Json::array();
  for (auto c : n) out.push_back(c);
  return out;
}

Point point_from_json(const Json& j) {
  require(j.is_array() && !j.empty() && j.size() <= kMaxDimension, ErrorKind::InvalidArgument,
          "lattice point must be an array of 1.." + std::to_string(kMaxDimension) + " integers");
  Point n(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    require(j[i].is_number_integer(), ErrorKind::InvalidArgument, "lattice point coordinates must be integers");
    n[i] = j[i].get<std::int64_t>();
  }
  return n;
}

Json decimal(long double x) { return format_decimal(x); }

long double real_from_json(const Json& j) {
  if (j.is_number()) return j.get<double>();
  long double v = 0;
  require(j.is_string() && parse_real_component(j.get<std::string>(), v), ErrorKind::InvalidArgument,
          "expected a real number or decimal string");
  return v;
}

Json to_json(const ConeSpec& spec) {
  Json vectors = Json::array(), exact = Json::array();
  for (std::size_t k = 0; k < spec.facets(); ++k) {
    vectors.push_back(spec.facet(k).source);
    exact.push_back(spec.facet(k).exact);
  }
  Json rat = Json::object();
  for (const auto& [key, r] : spec.rationality_map()) rat[key] = std::string(to_string(r));
  Json out;
  out["D"] = spec.dimension();
  out["vectors"] = vectors;
  out["exact"] = exact;
  out["rationality"] = rat;
  if (!spec.warnings().empty()) out["warnings"] = spec.warnings();
  return out;
}

ConeSpec cone_spec_from_json(const Json& j) {
  require(j.is_object(), ErrorKind::InvalidArgument, "cone must be an object");
  const auto D = j.at("D").get<std::size_t>();
  std::vector<std::vector<std::string>> vectors;
  for (const auto& v : j.at("vectors")) vectors.push_back(v.get<std::vector<std::string>>());
  std::vector<bool> exact(vectors.size(), false);
  if (j.contains("exact")) exact = j.at("exact").get<std::vector<bool>>();
  std::map<std::string, std::string> rat;
  if (j.contains("rationality"))
    for (const auto& [key, value] : j.at("rationality").items()) rat[key] = value.get<std::string>();
  return ConeSpec(D, vectors, exact, rat);
}

Json to_json(const Pattern& p) {
  Json out;
  if (p.is_analytic()) {
    const auto& a = p.as_analytic();
    out["kind"] = "analytic";
    out["I"] = to_json(a.I);
    out["J"] = to_json(a.J);
    Json x = Json::array();
    for (auto k : a.I.elements()) x.push_back(decimal(a.x[k]));
    out["x"] = x;
  } else {
    const auto& f = p.as_finite();
    out["kind"] = "finite";
    Json pts = Json::array();
    for (const auto& n : f.points) pts.push_back(to_json(n));
    out["points"] = pts;
    out["radius"] = decimal(f.radius);
  }
  if (!p.notes().empty()) out["notes"] = p.notes();
  return out;
}

Pattern pattern_from_json(const Json& j, const ConeSpec& spec) {
  require(j.is_object() && j.contains("kind"), ErrorKind::InvalidArgument, "pattern needs a kind");
  const auto kind = j.at("kind").get<std::string>();
  const std::size_t d = spec.facets();
  if (kind == "analytic") {
    const IndexSet I = index_set_from_json(j.at("I"), d);
    const IndexSet J = j.contains("J") ? index_set_from_json(j.at("J"), d) : IndexSet{};
    const auto elems = I.elements();
    const auto& xs = j.at("x");
    require(xs.is_array() && xs.size() == elems.size(), ErrorKind::DimensionMismatch, "x needs one entry per element of I");
    std::vector<long double> x(d, 0);
    for (std::size_t i = 0; i < elems.size(); ++i) x[elems[i]] = real_from_json(xs[i]);
    return hull_point(spec, I, J, x);
  }
  if (kind == "finite") {
    std::vector<Point> pts;
    for (const auto& n : j.at("points")) pts.push_back(point_from_json(n));
    return Pattern::finite(spec.dimension(), std::move(pts), real_from_json(j.at("radius")));
  }
  require(kind == "orbit", ErrorKind::InvalidArgument, "pattern kind must be analytic, finite or orbit");
  return orbit_point(spec, point_from_json(j.at("n")), real_from_json(j.at("radius")));
}

Json to_json(const StratumLabel& label) {
  Json out;
  out["I"] = to_json(label.I);
  out["J"] = to_json(label.J);
  Json x = Json::array();
  for (auto k : label.I.elements()) x.push_back(decimal(label.x[k]));
  out["x"] = x;
  out["x_error"] = static_cast<double>(label.x_error);
  out["codimension"] = label.codimension;
  out["escaped"] = to_json(label.escaped);
  out["notes"] = label.notes;
  return out;
}

Json to_json(const FellDistance& f) {
  Json out;
  out["value"] = static_cast<double>(f.value);
  out["exactness"] = f.exactness == Exactness::Exact ? "exact" : "upper_bound_only";
  out["agreement_radius"] = static_cast<double>(f.agreement_radius);
  out["witness"] = f.witness ? to_json(*f.witness) : Json(nullptr);
  return out;
}

Json to_json(const SpectralReport& r) {
  Json out;
  out["method"] = r.method;
  out["order"] = r.order;
  out["tail"] = r.tail;
  out["order_floor"] = r.order_floor;
  out["interval"] = {r.interval.first, r.interval.second};
  return out;
}

namespace {

Json complex_json(cplx z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

}  // namespace

Json to_json(const PairingResult& r) {
  Json out;
  out["value"] = complex_json(r.value);
  out["degree"] = r.m;
  out["directions"] = r.directions;
  out["truncation"] = {{"L", static_cast<double>(r.truncation.L)},
                       {"t", static_cast<double>(r.truncation.t)},
                       {"core_margin", static_cast<double>(r.truncation.core_margin)}};
  out["est_error"] = r.est_error;
  out["defect"] = r.defect;
  if (r.m == 1) {
    out["localization"] = r.localization;
    out["leakage"] = r.leakage;
  }
  Json ladder = Json::array();
  for (const auto& e : r.ladder) ladder.push_back({{"t", static_cast<double>(e.t)}, {"value", complex_json(e.value)}});
  out["ladder"] = ladder;
  out["convention_note"] = r.convention_note;
  return out;
}

Json to_json(const BzChern& b) { return Json{{"value", b.value}, {"raw", b.raw}, {"min_gap", b.min_gap}}; }

Json to_json(const BulkEdgeReport& r) {
  Json out;
  out["bulk"] = to_json(r.bulk);
  out["edge"] = to_json(r.edge);
  out["oracle"] = to_json(r.oracle);
  out["difference"] = r.difference;
  out["v"] = r.v;
  out["w"] = r.w;
  out["gap"] = r.gap;
  out["width"] = r.width;
  out["spectral"] = to_json(r.spectral);
  out["window_sites"] = r.window_sites;
  out["core_sites"] = r.core_sites;
  return out;
}

void CsvTable::add(std::vector<std::string> row) {
  require(row.size() == header_.size(), ErrorKind::DimensionMismatch, "CSV row width differs from the header");
  rows_.push_back(std::move(row));
}

std::string CsvTable::num(long double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", static_cast<double>(x));
  return buf;
}

std::string CsvTable::num(std::uint64_t x) { return std::to_string(x); }

std::string CsvTable::str() const {
  std::string out;
  const auto line = [&](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  line(header_);
  for (const auto& r : rows_) line(r);
  return out;
}

void CsvTable::write(const std::filesystem::path& path) const { write_text(path, str()); }

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  require(static_cast<bool>(f), ErrorKind::InvalidArgument, "cannot open " + path.string() + " for writing");
  f << text;
  require(static_cast<bool>(f), ErrorKind::InvalidArgument, "failed writing " + path.string());
}

}  // namespace conehull
