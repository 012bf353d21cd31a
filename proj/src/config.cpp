#include "conehull/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <optional>

#include "conehull/errors.hpp"

namespace conehull {

const std::vector<std::string> kTasks = {"hull", "classify", "count", "trace", "chern-bulk", "chern-edge", "bulk-edge"};

namespace {

std::string child(const std::string& path, const std::string& key) {
  std::string esc;
  for (char ch : key) {
    if (ch == '~') esc += "~0";
    else if (ch == '/') esc += "~1";
    else esc += ch;
  }
  return path + "/" + esc;
}

std::string child(const std::string& path, std::size_t index) { return path + "/" + std::to_string(index); }

enum class Knob { PositiveReal, PositiveInt, Bool, OpenUnit };

struct PrecisionKnob {
  const char* name;
  Knob kind;
  Json fallback;
};

const std::vector<PrecisionKnob>& precision_knobs() {
  static const std::vector<PrecisionKnob> knobs = {
      {"dense_threshold", Knob::PositiveInt, 6000},
      {"force_chebyshev", Knob::Bool, false},
      {"chebyshev_tolerance", Knob::PositiveReal, 1e-12},
      {"max_chebyshev_order", Knob::PositiveInt, 4000},
      {"column_chunk", Knob::PositiveInt, 32},
      {"projection_tolerance", Knob::PositiveReal, 1e-8},
      {"unitarity_tolerance", Knob::PositiveReal, 1e-8},
      {"localization_tolerance", Knob::PositiveReal, 1e-6},
      {"oracle_grid", Knob::PositiveInt, 64},
      {"quadrature_step", Knob::PositiveReal, 1e-3},
      {"escape_threshold", Knob::OpenUnit, 0.5},
      {"strict_tolerance", Knob::PositiveReal, 1e-9},
      {"search_radius", Knob::PositiveInt, 64},
  };
  return knobs;
}

bool is_real(const Json& v) {
  if (v.is_number()) return std::isfinite(v.get<double>());
  long double x = 0;
  return v.is_string() && parse_real_component(v.get<std::string>(), x) && std::isfinite(x);
}

double real_of(const Json& v) { return static_cast<double>(real_from_json(v)); }

class Checker {
 public:
  std::vector<Diagnostic> out;

  void add(std::string path, std::string message) { out.push_back({std::move(path), std::move(message), 0}); }

  const Json* field(const Json& obj, const std::string& path, const char* key, bool required) {
    if (obj.is_object() && obj.contains(key)) return &obj[key];
    if (required) add(child(path, key), "required field is missing");
    return nullptr;
  }

  bool object(const Json* v, const std::string& path) {
    if (!v) return false;
    if (v->is_object()) return true;
    add(path, "must be an object");
    return false;
  }

  void known_keys(const Json& obj, const std::string& path, const std::vector<std::string>& allowed) {
    if (!obj.is_object()) return;
    for (const auto& [key, value] : obj.items())
      if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) add(child(path, key), "unknown field");
  }

  // lo < v (or lo <= v when closed) and v < hi.
  bool real(const Json* v, const std::string& path, double lo = -INFINITY, bool closed = false, double hi = INFINITY) {
    if (!v) return false;
    if (!is_real(*v)) {
      add(path, "must be a finite real number");
      return false;
    }
    const double x = real_of(*v);
    if ((closed ? x < lo : x <= lo) || x >= hi) {
      if (lo == 0 && !closed && hi == INFINITY) add(path, "must be positive");
      else if (lo == 0 && closed && hi == INFINITY) add(path, "must be nonnegative");
      else add(path, "must lie in " + std::string(closed ? "[" : "(") + format_decimal(lo) + ", " +
                         (hi == INFINITY ? std::string("∞") : format_decimal(hi)) + ")");
      return false;
    }
    return true;
  }

  bool integer(const Json* v, const std::string& path, std::int64_t lo, std::int64_t hi) {
    if (!v) return false;
    if (!v->is_number_integer() || v->get<std::int64_t>() < lo || v->get<std::int64_t>() > hi) {
      add(path, "must be an integer in " + std::to_string(lo) + ".." + std::to_string(hi));
      return false;
    }
    return true;
  }

  void string_in(const Json* v, const std::string& path, const std::vector<std::string>& allowed) {
    if (!v) return;
    if (!v->is_string() || std::find(allowed.begin(), allowed.end(), v->get<std::string>()) == allowed.end()) {
      std::string list;
      for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
      add(path, "must be one of: " + list);
    }
  }

  // 1-based distinct facet indices; d = 0 means the facet count is unknown.
  std::optional<IndexSet> indices(const Json* v, const std::string& path, std::size_t d) {
    if (!v) return std::nullopt;
    if (!v->is_array()) {
      add(path, "must be an array of 1-based facet indices");
      return std::nullopt;
    }
    IndexSet s;
    bool ok = true;
    for (std::size_t i = 0; i < v->size(); ++i) {
      const auto& e = (*v)[i];
      const std::int64_t hi = d ? static_cast<std::int64_t>(d) : static_cast<std::int64_t>(kMaxDimension);
      if (!e.is_number_integer() || e.get<std::int64_t>() < 1 || e.get<std::int64_t>() > hi) {
        add(child(path, i), "must be a facet index in 1.." + std::to_string(hi));
        ok = false;
      } else if (s.contains(e.get<std::size_t>() - 1)) {
        add(child(path, i), "duplicate facet index");
        ok = false;
      } else {
        s.insert(e.get<std::size_t>() - 1);
      }
    }
    return ok ? std::optional<IndexSet>(s) : std::nullopt;
  }

  void increasing_positive(const Json* v, const std::string& path) {
    if (!v) return;
    if (!v->is_array() || v->empty()) {
      add(path, "must be a non-empty array of positive numbers");
      return;
    }
    double prev = 0;
    for (std::size_t i = 0; i < v->size(); ++i) {
      const auto p = child(path, i);
      if (!real(&(*v)[i], p, 0)) return;
      const double x = real_of((*v)[i]);
      if (i && x <= prev) {
        add(p, "values must be strictly increasing");
        return;
      }
      prev = x;
    }
  }

  void direction(const Json* v, const std::string& path) {
    if (!v) return;
    if (!v->is_array() || v->size() != 2) {
      add(path, "must be a 2-vector");
      return;
    }
    for (std::size_t i = 0; i < 2; ++i) real(&(*v)[i], child(path, i));
  }
};

struct ConeInfo {
  std::size_t D = 0, d = 0;
  bool valid = false;
};

ConeInfo check_cone(Checker& c, const Json& doc, bool edge_task) {
  ConeInfo info;
  const Json* cone = c.field(doc, "", "cone", true);
  if (!c.object(cone, "/cone")) return info;
  const std::size_t before = c.out.size();
  c.known_keys(*cone, "/cone", {"D", "vectors", "exact", "rationality"});
  if (const Json* D = c.field(*cone, "/cone", "D", true);
      c.integer(D, "/cone/D", 1, static_cast<std::int64_t>(kMaxDimension)))
    info.D = D->get<std::size_t>();
  if (const Json* v = c.field(*cone, "/cone", "vectors", true)) {
    if (!v->is_array() || v->empty()) {
      c.add("/cone/vectors", "must be a non-empty array of vectors");
    } else {
      info.d = v->size();
      if (info.D && info.d > info.D) c.add("/cone/vectors", "at most D vectors");
      for (std::size_t i = 0; i < v->size(); ++i) {
        const auto& vi = (*v)[i];
        const auto p = child("/cone/vectors", i);
        if (!vi.is_array()) {
          c.add(p, "must be an array of decimal strings");
          continue;
        }
        if (info.D && vi.size() != info.D) c.add(p, "needs D = " + std::to_string(info.D) + " components");
        for (std::size_t j = 0; j < vi.size(); ++j) {
          long double x = 0;
          if (!vi[j].is_string() || !parse_real_component(vi[j].get<std::string>(), x))
            c.add(child(p, j), "must be a decimal string");
        }
      }
    }
  }
  if (const Json* e = c.field(*cone, "/cone", "exact", false)) {
    if (!e->is_array() || (info.d && e->size() != info.d)) {
      c.add("/cone/exact", "must be an array of booleans, one per vector");
    } else {
      for (std::size_t i = 0; i < e->size(); ++i)
        if (!(*e)[i].is_boolean()) c.add(child("/cone/exact", i), "must be a boolean");
    }
  }
  if (const Json* r = c.field(*cone, "/cone", "rationality", false); c.object(r, "/cone/rationality")) {
    for (const auto& [key, value] : r->items()) {
      const auto p = child("/cone/rationality", key);
      IndexSet s;
      if (!IndexSet::parse_key(key, info.d ? info.d : 32, s) || s.empty())
        c.add(p, "key must list distinct 1-based facet indices in increasing order, like \"1,2\"");
      else
        c.string_in(&value, p, {"R", "CI"});
    }
  }
  if (c.out.size() != before) return info;
  try {
    const ConeSpec spec = cone_spec_from_json(*cone);
    if (edge_task && (spec.dimension() != 2 || spec.facets() != 1))
      c.add("/cone", "edge pairings need D = 2 and a single vector");
    else
      info.valid = true;
  } catch (const std::exception& e) {
    c.add("/cone", e.what());
  }
  return info;
}

void check_geometry(Checker& c, const Json& doc, bool required) {
  const Json* g = c.field(doc, "", "geometry", required);
  if (!c.object(g, "/geometry")) return;
  c.known_keys(*g, "/geometry", {"L", "t", "core_margin"});
  c.real(c.field(*g, "/geometry", "L", true), "/geometry/L", 0);
  c.real(c.field(*g, "/geometry", "t", true), "/geometry/t", 0);
  c.real(c.field(*g, "/geometry", "core_margin", false), "/geometry/core_margin", 0, true);
}

void check_model(Checker& c, const Json& doc) {
  const Json* m = c.field(doc, "", "model", true);
  if (!c.object(m, "/model")) return;
  c.known_keys(*m, "/model", {"name", "m"});
  c.string_in(c.field(*m, "/model", "name", false), "/model/name", {"two_band_chern"});
  c.real(c.field(*m, "/model", "m", true), "/model/m");
}

void check_precision(Checker& c, const Json& doc) {
  const Json* p = c.field(doc, "", "precision", false);
  if (!c.object(p, "/precision")) return;
  std::vector<std::string> names;
  for (const auto& k : precision_knobs()) names.push_back(k.name);
  c.known_keys(*p, "/precision", names);
  for (const auto& k : precision_knobs()) {
    const Json* v = c.field(*p, "/precision", k.name, false);
    if (!v) continue;
    const auto path = child("/precision", k.name);
    switch (k.kind) {
      case Knob::PositiveReal: c.real(v, path, 0); break;
      case Knob::PositiveInt: c.integer(v, path, 1, 1'000'000'000); break;
      case Knob::OpenUnit: c.real(v, path, 0, false, 1); break;
      case Knob::Bool:
        if (!v->is_boolean()) c.add(path, "must be a boolean");
        break;
    }
  }
}

void check_offsets(Checker& c, const Json* x, const std::string& path, std::size_t count) {
  if (!x) return;
  if (!x->is_array() || x->size() != count) {
    c.add(path, "needs " + std::to_string(count) + " offsets (one per element of I)");
    return;
  }
  for (std::size_t i = 0; i < count; ++i) c.real(&(*x)[i], child(path, i), 0, true);
}

void check_point(Checker& c, const Json* n, const std::string& path, std::size_t D) {
  if (!n) return;
  if (!n->is_array() || (D && n->size() != D)) {
    c.add(path, "must be an integer vector of length D");
    return;
  }
  for (std::size_t i = 0; i < n->size(); ++i)
    if (!(*n)[i].is_number_integer()) c.add(child(path, i), "must be an integer");
}

void check_analytic(Checker& c, const Json& obj, const std::string& path, const ConeInfo& cone) {
  const auto I = c.indices(c.field(obj, path, "I", true), child(path, "I"), cone.d);
  const auto J = c.indices(c.field(obj, path, "J", false), child(path, "J"), cone.d);
  if (I && J && !J->subset_of(*I)) c.add(child(path, "J"), "J must be a subset of I");
  if (I) check_offsets(c, c.field(obj, path, "x", true), child(path, "x"), I->size());
}

void check_pattern(Checker& c, const Json* p, const std::string& path, const ConeInfo& cone) {
  if (!c.object(p, path)) return;
  const Json* kind = c.field(*p, path, "kind", true);
  c.string_in(kind, child(path, "kind"), {"analytic", "finite", "orbit"});
  if (!kind || !kind->is_string()) return;
  const auto k = kind->get<std::string>();
  if (k == "analytic") {
    c.known_keys(*p, path, {"kind", "I", "J", "x"});
    check_analytic(c, *p, path, cone);
  } else if (k == "finite") {
    c.known_keys(*p, path, {"kind", "points", "radius"});
    const Json* pts = c.field(*p, path, "points", true);
    if (pts && !pts->is_array()) c.add(child(path, "points"), "must be an array of integer vectors");
    if (pts && pts->is_array())
      for (std::size_t i = 0; i < pts->size(); ++i) check_point(c, &(*pts)[i], child(child(path, "points"), i), cone.D);
    c.real(c.field(*p, path, "radius", true), child(path, "radius"), 0);
  } else if (k == "orbit") {
    c.known_keys(*p, path, {"kind", "n", "radius"});
    check_point(c, c.field(*p, path, "n", true), child(path, "n"), cone.D);
    c.real(c.field(*p, path, "radius", true), child(path, "radius"), 0);
  }
}

void check_sequence(Checker& c, const Json* s, const std::string& path, const ConeInfo& cone) {
  if (!c.object(s, path)) return;
  c.known_keys(*s, path, {"x", "tags", "limits", "max_radius"});
  const Json* x = c.field(*s, path, "x", true);
  if (x) {
    if (!x->is_array() || x->empty()) {
      c.add(child(path, "x"), "must be a non-empty array of offset vectors");
    } else {
      for (std::size_t j = 0; j < x->size(); ++j) {
        const auto p = child(child(path, "x"), j);
        const auto& row = (*x)[j];
        if (!row.is_array() || (cone.d && row.size() != cone.d)) {
          c.add(p, "needs one offset per facet");
          continue;
        }
        for (std::size_t k = 0; k < row.size(); ++k) c.real(&row[k], child(p, k));
      }
    }
  }
  if (const Json* tags = c.field(*s, path, "tags", false)) {
    if (!tags->is_array() || (cone.d && tags->size() != cone.d)) c.add(child(path, "tags"), "needs one tag (or null) per facet");
    else
      for (std::size_t k = 0; k < tags->size(); ++k)
        if (!(*tags)[k].is_null()) c.string_in(&(*tags)[k], child(child(path, "tags"), k), {"J+", "J-", "Jinf"});
  }
  if (const Json* lim = c.field(*s, path, "limits", false)) {
    if (!lim->is_array() || (cone.d && lim->size() != cone.d)) c.add(child(path, "limits"), "needs one limit (or null) per facet");
    else
      for (std::size_t k = 0; k < lim->size(); ++k)
        if (!(*lim)[k].is_null()) c.real(&(*lim)[k], child(child(path, "limits"), k));
  }
  c.real(c.field(*s, path, "max_radius", false), child(path, "max_radius"), 0);
}

void check_edge_section(Checker& c, const Json& doc, bool with_direction) {
  const Json* e = c.field(doc, "", "edge", false);
  if (!c.object(e, "/edge")) return;
  std::vector<std::string> keys = {"fermi_level", "width", "profile"};
  if (with_direction) keys.push_back("direction");
  c.known_keys(*e, "/edge", keys);
  c.real(c.field(*e, "/edge", "fermi_level", false), "/edge/fermi_level");
  c.real(c.field(*e, "/edge", "width", false), "/edge/width", 0);
  c.string_in(c.field(*e, "/edge", "profile", false), "/edge/profile", {"smoothstep", "tanh", "erf"});
  if (with_direction) c.direction(c.field(*e, "/edge", "direction", false), "/edge/direction");
}

void check_bulk_section(Checker& c, const Json& doc, bool full) {
  const Json* b = c.field(doc, "", "bulk", false);
  if (!c.object(b, "/bulk")) return;
  std::vector<std::string> keys = {"extent"};
  if (full) keys.insert(keys.end(), {"directions", "fermi_level", "ladder"});
  c.known_keys(*b, "/bulk", keys);
  c.integer(c.field(*b, "/bulk", "extent", false), "/bulk/extent", 4, 1024);
  if (!full) return;
  c.real(c.field(*b, "/bulk", "fermi_level", false), "/bulk/fermi_level");
  if (const Json* d = c.field(*b, "/bulk", "directions", false)) {
    if (!d->is_array() || d->size() != 2) c.add("/bulk/directions", "must hold two 2-vectors");
    else
      for (std::size_t i = 0; i < 2; ++i) c.direction(&(*d)[i], child("/bulk/directions", i));
  }
  if (const Json* l = c.field(*b, "/bulk", "ladder", false)) {
    if (!l->is_array() || l->empty()) {
      c.add("/bulk/ladder", "must be a non-empty array of torus extents");
    } else {
      for (std::size_t i = 0; i < l->size(); ++i)
        if (c.integer(&(*l)[i], child("/bulk/ladder", i), 4, 1024) && i &&
            (*l)[i].get<std::int64_t>() <= (*l)[i - 1].get<std::int64_t>())
          c.add(child("/bulk/ladder", i), "values must be strictly increasing");
    }
  }
}

void check_task_section(Checker& c, const Json& doc, const std::string& task, const ConeInfo& cone) {
  if (task == "hull") {
    const Json* h = c.field(doc, "", "hull", true);
    if (!c.object(h, "/hull")) return;
    c.known_keys(*h, "/hull", {"I", "J", "x", "mode", "radius", "sequence"});
    check_analytic(c, *h, "/hull", cone);
    c.string_in(c.field(*h, "/hull", "mode", false), "/hull/mode", {"analytic", "finite"});
    c.real(c.field(*h, "/hull", "radius", false), "/hull/radius", 0);
    check_sequence(c, c.field(*h, "/hull", "sequence", false), "/hull/sequence", cone);
  } else if (task == "classify") {
    const Json* s = c.field(doc, "", "classify", true);
    if (!c.object(s, "/classify")) return;
    c.known_keys(*s, "/classify", {"pattern"});
    check_pattern(c, c.field(*s, "/classify", "pattern", true), "/classify/pattern", cone);
  } else if (task == "count") {
    const Json* s = c.field(doc, "", "count", true);
    if (!c.object(s, "/count")) return;
    c.known_keys(*s, "/count", {"L", "t_values"});
    const Json* L = c.field(*s, "/count", "L", false);
    if (L) c.real(L, "/count/L", 0);
    else if (!doc.contains("geometry")) c.add("/count/L", "required field is missing (no geometry to take it from)");
    c.increasing_positive(c.field(*s, "/count", "t_values", true), "/count/t_values");
  } else if (task == "trace") {
    const Json* s = c.field(doc, "", "trace", true);
    if (!c.object(s, "/trace")) return;
    c.known_keys(*s, "/trace", {"I", "function", "t_values"});
    const auto I = c.indices(c.field(*s, "/trace", "I", false), "/trace/I", cone.d);
    if (I && I->empty()) c.add("/trace/I", "must not be empty");
    c.increasing_positive(c.field(*s, "/trace", "t_values", false), "/trace/t_values");
    const Json* f = c.field(*s, "/trace", "function", true);
    if (!c.object(f, "/trace/function")) return;
    const Json* kind = c.field(*f, "/trace/function", "kind", true);
    c.string_in(kind, "/trace/function/kind", {"indicator", "exponential", "damped_cosine"});
    if (!kind || !kind->is_string()) return;
    const auto k = kind->get<std::string>();
    if (k == "indicator") {
      c.known_keys(*f, "/trace/function", {"kind", "depth"});
      c.real(c.field(*f, "/trace/function", "depth", true), "/trace/function/depth", 0);
    } else if (k == "exponential") {
      c.known_keys(*f, "/trace/function", {"kind", "rate"});
      c.real(c.field(*f, "/trace/function", "rate", true), "/trace/function/rate", 0);
    } else if (k == "damped_cosine") {
      c.known_keys(*f, "/trace/function", {"kind", "rate", "frequency", "amplitude"});
      c.real(c.field(*f, "/trace/function", "rate", true), "/trace/function/rate", 0);
      c.real(c.field(*f, "/trace/function", "frequency", true), "/trace/function/frequency");
      c.real(c.field(*f, "/trace/function", "amplitude", true), "/trace/function/amplitude");
    }
  } else if (task == "chern-bulk") {
    check_bulk_section(c, doc, true);
  } else if (task == "chern-edge") {
    check_edge_section(c, doc, true);
  } else if (task == "bulk-edge") {
    check_edge_section(c, doc, false);
    check_bulk_section(c, doc, false);
  }
}

// Source line of every JSON pointer in a syntactically valid document.
class Locator {
 public:
  explicit Locator(const std::string& text) : s_(text) {}
  std::map<std::string, std::size_t> run() {
    value("");
    return lines_;
  }

 private:
  void ws() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) {
      if (s_[i_] == '\n') ++line_;
      ++i_;
    }
  }
  std::string string() {
    std::string out;
    ++i_;
    while (i_ < s_.size() && s_[i_] != '"') {
      if (s_[i_] == '\\' && i_ + 1 < s_.size()) ++i_;
      out += s_[i_++];
    }
    ++i_;
    return out;
  }
  void value(const std::string& path) {
    ws();
    lines_.emplace(path, line_);
    if (i_ >= s_.size()) return;
    const char open = s_[i_];
    if (open == '{' || open == '[') {
      ++i_;
      std::size_t index = 0;
      for (;;) {
        ws();
        if (i_ >= s_.size()) return;
        if (s_[i_] == '}' || s_[i_] == ']') {
          ++i_;
          return;
        }
        if (s_[i_] == ',') {
          ++i_;
          continue;
        }
        if (open == '{') {
          const std::size_t key_line = line_;
          const auto key = string();
          const auto p = child(path, key);
          lines_.emplace(p, key_line);
          ws();
          ++i_;  // ':'
          value(p);
        } else {
          value(child(path, index++));
        }
      }
    }
    if (open == '"') {
      string();
      return;
    }
    while (i_ < s_.size() && s_[i_] != ',' && s_[i_] != '}' && s_[i_] != ']' &&
           !std::isspace(static_cast<unsigned char>(s_[i_])))
      ++i_;
  }

  const std::string& s_;
  std::size_t i_ = 0, line_ = 1;
  std::map<std::string, std::size_t> lines_;
};

std::size_t line_of(const std::map<std::string, std::size_t>& lines, std::string path) {
  for (;;) {
    if (auto it = lines.find(path); it != lines.end()) return it->second;
    if (path.empty()) return 0;
    path.erase(path.rfind('/'));
  }
}

std::string task_of(const Json& doc, const std::string& expected) {
  if (doc.is_object() && doc.contains("task") && doc["task"].is_string()) return doc["task"].get<std::string>();
  return expected;
}

}  // namespace

std::vector<Diagnostic> validate(const Json& doc, const std::string& expected_task) {
  Checker c;
  if (!doc.is_object()) {
    c.add("", "config must be a JSON object");
    return c.out;
  }
  c.known_keys(doc, "", {"schema_version", "task", "output", "description", "cone", "geometry", "model", "precision",
                         "hull", "classify", "count", "trace", "bulk", "edge"});
  if (const Json* v = c.field(doc, "", "schema_version", false); v && (!v->is_number_integer() || *v != kSchemaVersion))
    c.add("/schema_version", "unsupported schema version (expected " + std::to_string(kSchemaVersion) + ")");
  const Json* t = c.field(doc, "", "task", expected_task.empty());
  c.string_in(t, "/task", kTasks);
  if (t && t->is_string() && !expected_task.empty() && t->get<std::string>() != expected_task)
    c.add("/task", "config task \"" + t->get<std::string>() + "\" does not match the command \"" + expected_task + "\"");
  if (!expected_task.empty() && std::find(kTasks.begin(), kTasks.end(), expected_task) == kTasks.end())
    c.add("", "unknown task \"" + expected_task + "\"");
  if (const Json* o = c.field(doc, "", "output", false); o && !o->is_string()) c.add("/output", "must be a path string");
  if (const Json* d = c.field(doc, "", "description", false); d && !d->is_string()) c.add("/description", "must be a string");
  check_precision(c, doc);

  const std::string task = task_of(doc, expected_task);
  if (std::find(kTasks.begin(), kTasks.end(), task) == kTasks.end()) return c.out;
  const bool edge = task == "chern-edge" || task == "bulk-edge";
  ConeInfo cone;
  if (task != "chern-bulk") cone = check_cone(c, doc, edge);
  if (task == "trace" || edge) check_geometry(c, doc, true);
  else if (doc.contains("geometry")) check_geometry(c, doc, false);
  if (task == "chern-bulk" || edge) check_model(c, doc);
  check_task_section(c, doc, task, cone);
  return c.out;
}

ParsedConfig parse_config(const std::string& text, const std::string& expected_task) {
  ParsedConfig out;
  try {
    out.doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    std::size_t line = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i)
      if (text[i] == '\n') ++line;
    std::string what = e.what();
    if (auto pos = what.find("syntax error"); pos != std::string::npos) what = what.substr(pos);
    out.diagnostics.push_back({"", what, line});
    return out;
  }
  out.diagnostics = validate(out.doc, expected_task);
  const auto lines = Locator(text).run();
  for (auto& d : out.diagnostics) d.line = line_of(lines, d.path);
  return out;
}

std::string format_diagnostic(const std::string& file, const Diagnostic& d) {
  std::string out = file;
  if (d.line) out += ":" + std::to_string(d.line);
  out += ": " + (d.path.empty() ? std::string("/") : d.path) + ": " + d.message;
  return out;
}

namespace {

Json with_defaults(const Json& given, const std::vector<std::pair<std::string, Json>>& defaults) {
  Json out = Json::object();
  for (const auto& [key, fallback] : defaults) {
    if (given.is_object() && given.contains(key)) out[key] = given[key];
    else if (!fallback.is_null()) out[key] = fallback;
  }
  return out;
}

}  // namespace

Json resolve(const Json& doc, const std::string& expected_task) {
  const auto diags = validate(doc, expected_task);
  require(diags.empty(), ErrorKind::InvalidArgument,
          "config does not validate: " + (diags.empty() ? std::string() : diags.front().path + ": " + diags.front().message));
  const std::string task = task_of(doc, expected_task);
  Json out;
  out["schema_version"] = kSchemaVersion;
  out["task"] = task;
  if (doc.contains("description")) out["description"] = doc["description"];
  out["output"] = doc.value("output", ".");
  if (doc.contains("cone")) {
    const auto& cone = doc["cone"];
    out["cone"] = with_defaults(cone, {{"D", nullptr},
                                       {"vectors", nullptr},
                                       {"exact", Json(std::vector<bool>(cone["vectors"].size(), false))},
                                       {"rationality", Json::object()}});
  }
  if (doc.contains("geometry"))
    out["geometry"] = with_defaults(doc["geometry"], {{"L", nullptr}, {"t", nullptr}, {"core_margin", 15}});
  if (doc.contains("model")) out["model"] = with_defaults(doc["model"], {{"name", "two_band_chern"}, {"m", nullptr}});
  std::vector<std::pair<std::string, Json>> knobs;
  for (const auto& k : precision_knobs()) knobs.emplace_back(k.name, k.fallback);
  out["precision"] = with_defaults(doc.value("precision", Json::object()), knobs);

  const auto section = [&](const char* key) { return doc.value(key, Json::object()); };
  if (task == "hull") {
    out["hull"] = with_defaults(section("hull"), {{"I", nullptr},
                                                  {"J", Json::array()},
                                                  {"x", nullptr},
                                                  {"mode", "analytic"},
                                                  {"radius", 5},
                                                  {"sequence", nullptr}});
    if (out["hull"].contains("sequence"))
      out["hull"]["sequence"] = with_defaults(out["hull"]["sequence"],
                                              {{"x", nullptr}, {"tags", nullptr}, {"limits", nullptr}, {"max_radius", 20}});
  } else if (task == "classify") {
    out["classify"] = section("classify");
  } else if (task == "count") {
    Json count = section("count");
    out["count"] = with_defaults(count, {{"L", doc.contains("geometry") ? doc["geometry"]["L"] : Json(nullptr)},
                                         {"t_values", nullptr}});
  } else if (task == "trace") {
    Json all = Json::array();
    for (std::size_t k = 1; k <= doc["cone"]["vectors"].size(); ++k) all.push_back(k);
    out["trace"] = with_defaults(section("trace"), {{"I", all},
                                                    {"function", nullptr},
                                                    {"t_values", Json::array({doc["geometry"]["t"]})}});
  } else if (task == "chern-bulk") {
    out["bulk"] = with_defaults(section("bulk"), {{"extent", 32},
                                                  {"directions", Json::array({{1, 0}, {0, 1}})},
                                                  {"fermi_level", 0},
                                                  {"ladder", nullptr}});
    if (!out["bulk"].contains("ladder")) out["bulk"]["ladder"] = Json::array({out["bulk"]["extent"]});
  } else if (task == "chern-edge" || task == "bulk-edge") {
    out["edge"] = with_defaults(section("edge"), {{"fermi_level", 0}, {"width", nullptr}, {"profile", "erf"}, {"direction", nullptr}});
    if (task == "bulk-edge") out["bulk"] = with_defaults(section("bulk"), {{"extent", 32}});
  }
  return out;
}

}  // namespace conehull
