#include "conehull/run.hpp"

#include <boost/version.hpp>
#include <chrono>
#include <cmath>
#include <fstream>
#include <new>
#include <ostream>
#include <sstream>

#include "conehull/bulk_edge.hpp"
#include "conehull/errors.hpp"

#ifndef CONEHULL_VERSION
#define CONEHULL_VERSION "0.0.0"
#endif

namespace conehull {

namespace {

// Dense-memory budget for one run; larger problems exit with a resource error.
constexpr double kMemoryBudgetBytes = 3e9;

struct Context {
  const Json& cfg;
  std::filesystem::path dir;
  std::ostream* log;
  Json normalization = Json::object();
  Json notes = Json::array();
  std::vector<std::filesystem::path> artifacts;

  void say(const std::string& line) const {
    if (log) *log << line << std::endl;
  }
  void table(const std::string& name, const CsvTable& t) {
    t.write(dir / name);
    artifacts.push_back(name);
  }
  void text(const std::string& name, const std::string& body) {
    write_text(dir / name, body);
    artifacts.push_back(name);
  }
  const Json& precision() const { return cfg["precision"]; }
};

double num(const Json& j) { return static_cast<double>(real_from_json(j)); }

std::vector<long double> offsets(const Json& x, const IndexSet& I, std::size_t d) {
  std::vector<long double> out(d, 0);
  const auto elems = I.elements();
  for (std::size_t i = 0; i < elems.size(); ++i) out[elems[i]] = real_from_json(x[i]);
  return out;
}

HullOptions hull_options(const Context& ctx) {
  HullOptions o;
  o.strict_tolerance = num(ctx.precision()["strict_tolerance"]);
  o.search_radius = ctx.precision()["search_radius"].get<std::int64_t>();
  return o;
}

ModelSpec model_of(const Json& cfg) {
  ModelSpec m{cfg["model"]["name"].get<std::string>(), num(cfg["model"]["m"])};
  check_model(m);
  return m;
}

SlabWindow geometry_of(const Json& cfg) {
  const auto& g = cfg["geometry"];
  SlabWindow w{real_from_json(g["L"]), real_from_json(g["t"]), real_from_json(g["core_margin"])};
  w.validate();
  return w;
}

Direction direction_of(const Json& j) { return {num(j[0]), num(j[1])}; }

Json complex_json(cplx z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

std::string ascii_grid(const Pattern& p, long double radius) {
  // '#' pattern point, '.' other lattice point of the open ball; rows run top (max n₂) to bottom.
  const auto r = static_cast<std::int64_t>(std::ceil(radius));
  std::string out;
  for (std::int64_t y = r; y >= -r; --y) {
    std::string row;
    for (std::int64_t x = -r; x <= r; ++x) {
      const Point n{x, y};
      if (static_cast<long double>(n.norm2()) >= radius * radius) row += ' ';
      else row += p.contains(n) ? '#' : '.';
    }
    while (!row.empty() && row.back() == ' ') row.pop_back();
    if (!row.empty()) out += row + '\n';
  }
  return out;
}

Json task_hull(Context& ctx) {
  const ConeSpec spec = cone_spec_from_json(ctx.cfg["cone"]);
  const auto& h = ctx.cfg["hull"];
  const std::size_t d = spec.facets();
  const IndexSet I = index_set_from_json(h["I"], d), J = index_set_from_json(h["J"], d);
  const long double radius = real_from_json(h["radius"]);
  const HullMode mode = h["mode"] == "finite" ? HullMode::truncated(radius) : HullMode::analytic();
  const Pattern p = hull_point(spec, I, J, offsets(h["x"], I, d), mode, hull_options(ctx));
  const auto pts = p.truncation(radius);

  Json result;
  result["pattern"] = to_json(p);
  Json list = Json::array();
  std::vector<std::string> header;
  for (std::size_t i = 1; i <= spec.dimension(); ++i) header.push_back("n" + std::to_string(i));
  CsvTable csv(header);
  for (const auto& n : pts) {
    list.push_back(to_json(n));
    std::vector<std::string> row;
    for (auto c : n) row.push_back(std::to_string(c));
    csv.add(row);
  }
  result["truncation"] = {{"radius", static_cast<double>(radius)}, {"count", pts.size()}, {"points", list}};
  ctx.table("hull_points.csv", csv);
  if (spec.dimension() == 2) {
    const auto grid = ascii_grid(p, radius);
    ctx.text("hull_grid.txt", grid);
    Json lines = Json::array();
    std::istringstream in(grid);
    for (std::string line; std::getline(in, line);) lines.push_back(line);
    result["grid"] = lines;
  }

  if (h.contains("sequence")) {
    const auto& s = h["sequence"];
    OffsetSequence seq;
    for (const auto& row : s["x"]) {
      std::vector<long double> x;
      for (const auto& c : row) x.push_back(real_from_json(c));
      seq.x.push_back(x);
    }
    if (s.contains("tags"))
      for (const auto& t : s["tags"]) {
        if (t.is_null()) seq.tags.push_back(std::nullopt);
        else if (t == "J+") seq.tags.push_back(Trend::NonIncreasing);
        else if (t == "J-") seq.tags.push_back(Trend::StrictlyIncreasing);
        else seq.tags.push_back(Trend::Diverging);
      }
    if (s.contains("limits"))
      for (const auto& l : s["limits"]) seq.limits.push_back(l.is_null() ? std::nullopt : std::optional(real_from_json(l)));
    ctx.say("sequence limit over " + std::to_string(seq.x.size()) + " offsets");
    const auto lim = sequence_limit(spec, seq, real_from_json(s["max_radius"]));
    Json limits = Json::array();
    for (auto x : lim.limits) limits.push_back(decimal(x));
    Json cert = Json::array();
    CsvTable ct({"j", "distance", "exactness", "agreement_radius"});
    for (const auto& step : lim.certificate) {
      Json dj = to_json(step.distance);
      cert.push_back({{"j", step.j + 1}, {"distance", dj}});
      ct.add({CsvTable::num(static_cast<std::uint64_t>(step.j + 1)), CsvTable::num(step.distance.value),
              dj["exactness"].get<std::string>(), CsvTable::num(step.distance.agreement_radius)});
    }
    result["sequence_limit"] = {{"pattern", to_json(lim.pattern)}, {"J_plus", to_json(lim.j_plus)},
                                {"J_minus", to_json(lim.j_minus)}, {"J_infinity", to_json(lim.j_infinity)},
                                {"limits", limits}, {"certificate", cert}};
    ctx.table("sequence_certificate.csv", ct);
  }
  ctx.notes.push_back("facet indices are 1-based; offsets x are listed in the order of I");
  return result;
}

Json task_classify(Context& ctx) {
  const ConeSpec spec = cone_spec_from_json(ctx.cfg["cone"]);
  const Pattern p = pattern_from_json(ctx.cfg["classify"]["pattern"], spec);
  ClassifyOptions co;
  co.escape_threshold = real_from_json(ctx.precision()["escape_threshold"]);
  co.hull = hull_options(ctx);
  const auto label = classify(p, spec, co);
  Json result;
  result["label"] = to_json(label);
  result["filtration_level"] = filtration_level(label);
  result["reconstruction"] = to_json(reconstruct(label, spec));
  ctx.notes.push_back("facet indices are 1-based; offsets x are listed in the order of I");
  return result;
}

Json task_count(Context& ctx) {
  const ConeSpec spec = cone_spec_from_json(ctx.cfg["cone"]);
  const auto& c = ctx.cfg["count"];
  const long double L = real_from_json(c["L"]);
  std::vector<long double> ts;
  for (const auto& t : c["t_values"]) ts.push_back(real_from_json(t));
  const auto rows = count_scaling_study(spec, L, ts);
  CsvTable csv({"t", "count", "predicted", "relative_error"});
  Json list = Json::array();
  for (const auto& r : rows) {
    csv.add({CsvTable::num(r.t), CsvTable::num(r.count), CsvTable::num(r.predicted), CsvTable::num(r.relative_error)});
    list.push_back({{"t", static_cast<double>(r.t)},
                    {"count", r.count},
                    {"predicted", static_cast<double>(r.predicted)},
                    {"relative_error", static_cast<double>(r.relative_error)}});
  }
  ctx.table("counts.csv", csv);
  const std::size_t co = spec.dimension() - spec.facets();
  ctx.normalization = {{"covolume_facets", static_cast<double>(covolume_facets(spec))},
                       {"unit_ball_volume", static_cast<double>(unit_ball_volume(co))},
                       {"L", static_cast<double>(L)},
                       {"predicted", "L^d · Vol(B_{D-d}) · t^{D-d} / covolume_facets"}};
  return Json{{"L", static_cast<double>(L)}, {"rows", list}};
}

std::function<long double(long double)> boundary_function(const Json& f) {
  const auto kind = f["kind"].get<std::string>();
  if (kind == "indicator") {
    const long double depth = real_from_json(f["depth"]);
    return [depth](long double y) { return y <= depth ? 1.0L : 0.0L; };
  }
  const long double rate = real_from_json(f["rate"]);
  if (kind == "exponential") return [rate](long double y) { return std::exp(-rate * y); };
  const long double freq = real_from_json(f["frequency"]), amp = real_from_json(f["amplitude"]);
  return [=](long double y) { return std::exp(-rate * y) * (1 + amp * std::cos(freq * y)); };
}

Json task_trace(Context& ctx) {
  const ConeSpec full = cone_spec_from_json(ctx.cfg["cone"]);
  const auto& tr = ctx.cfg["trace"];
  const IndexSet I = index_set_from_json(tr["I"], full.facets());
  const ConeSpec spec = full.restricted(I);
  const std::size_t k = spec.facets();
  SlabWindow g = geometry_of(ctx.cfg);
  std::vector<long double> ts;
  for (const auto& t : tr["t_values"]) ts.push_back(real_from_json(t));
  g.t = ts.back();

  // f(A_I n) = Π_k f(v_k·n): the diagonal boundary operator and its measure-side integrand.
  const auto f1 = boundary_function(tr["function"]);
  const auto f = [&](const std::vector<long double>& y) {
    long double v = 1;
    for (auto c : y) v *= f1(c);
    return v;
  };
  const auto window = SiteWindow::half_space(spec, g, 1);
  ctx.say("trace window: " + std::to_string(window->size()) + " sites");
  const auto op = TruncatedOperator::site_diagonal(window, [&](const Point& n, std::size_t, std::size_t) {
    std::vector<long double> y(k);
    for (std::size_t i = 0; i < k; ++i) y[i] = spec.dot(i, n);
    return cplx(static_cast<double>(f(y)), 0);
  });
  const auto base = TraceSpec::cone(spec, IndexSet::all(k), g);
  std::vector<std::pair<long double, long double>> box(k, {0, g.L});
  const auto measure = stratum_integral(f, base, real_from_json(ctx.precision()["quadrature_step"]), box);

  CsvTable csv({"t", "value", "est_error"});
  Json rows = Json::array(), norms = Json::array();
  for (auto t : ts) {
    const auto ts_t = base.with_radius(t);
    const double value = trace_estimate(op, ts_t).real();
    const double err = std::fabs(value - static_cast<double>(measure.value)) + static_cast<double>(measure.est_error);
    csv.add({CsvTable::num(t), CsvTable::num(value), CsvTable::num(err)});
    rows.push_back({{"t", static_cast<double>(t)}, {"value", value}, {"est_error", err}});
    norms.push_back({{"t", static_cast<double>(t)}, {"normalization", static_cast<double>(ts_t.normalization)}});
  }
  ctx.table("trace_convergence.csv", csv);
  ctx.normalization = {{"per_t", norms}, {"covolume_facets", static_cast<double>(base.covolume)}};
  if (base.rationality) ctx.normalization["rationality"] = std::string(to_string(*base.rationality));
  if (base.kernel_covolume) ctx.normalization["kernel_covolume"] = static_cast<double>(*base.kernel_covolume);
  if (base.image_covolume) ctx.normalization["image_covolume"] = static_cast<double>(*base.image_covolume);
  ctx.notes.push_back("trace per unit hypersurface: core diagonal sum divided by t^{D-|I|}·Vol(B_{D-|I|})");
  ctx.notes.push_back("est_error = |estimator − measure-side integral| + quadrature error of the integral");
  return Json{{"I", to_json(I)},
              {"estimator", rows},
              {"measure", {{"value", static_cast<double>(measure.value)},
                           {"est_error", static_cast<double>(measure.est_error)},
                           {"evaluations", measure.evaluations}}}};
}

void guard_torus(std::int64_t extent) {
  const double n = 2.0 * static_cast<double>(extent) * static_cast<double>(extent);
  require(8 * 16 * n * n <= kMemoryBudgetBytes, ErrorKind::ResourceLimit,
          "torus extent " + std::to_string(extent) + " needs more dense memory than the run budget");
}

void guard_edge(const ConeSpec& spec, const SlabWindow& g) {
  const auto window = SiteWindow::half_space(spec, g, 2);
  const auto core = trace_sites(*window, TraceSpec::cone(spec, IndexSet{0}, g));
  const double bytes = 4.0 * 16 * static_cast<double>(window->rows()) * 2 * static_cast<double>(core.size());
  require(bytes <= kMemoryBudgetBytes, ErrorKind::ResourceLimit,
          "edge window (" + std::to_string(window->size()) + " sites, " + std::to_string(core.size()) +
              " core sites) exceeds the run memory budget");
}

SpectralOptions spectral_options(const Context& ctx) {
  const auto& p = ctx.precision();
  SpectralOptions so;
  so.dense_threshold = p["dense_threshold"].get<std::size_t>();
  so.force_chebyshev = p["force_chebyshev"].get<bool>();
  so.chebyshev_tolerance = num(p["chebyshev_tolerance"]);
  so.max_chebyshev_order = p["max_chebyshev_order"].get<std::size_t>();
  so.column_chunk = p["column_chunk"].get<std::size_t>();
  return so;
}

BulkEdgeOptions edge_options(const Context& ctx) {
  const auto& e = ctx.cfg["edge"];
  BulkEdgeOptions o;
  o.fermi_level = num(e["fermi_level"]);
  if (e.contains("width")) o.width = num(e["width"]);
  o.profile = *parse_switch_profile(e["profile"].get<std::string>());
  o.oracle_grid = ctx.precision()["oracle_grid"].get<std::size_t>();
  o.spectral = spectral_options(ctx);
  o.odd.unitarity_tolerance = num(ctx.precision()["unitarity_tolerance"]);
  o.odd.localization_tolerance = num(ctx.precision()["localization_tolerance"]);
  if (ctx.cfg.contains("bulk")) o.torus_extent = ctx.cfg["bulk"]["extent"].get<std::int64_t>();
  return o;
}

Json edge_block(const EdgePairing& e) {
  return Json{{"pairing", to_json(e.edge)},   {"gap", e.gap},
              {"width", e.width},             {"spectral", to_json(e.spectral)},
              {"window_sites", e.window_sites}, {"core_sites", e.core_sites}};
}

CsvTable edge_table(const PairingResult& r) {
  // The t/2 rung only feeds the estimate of the full-t rung.
  CsvTable csv({"t", "value", "est_error"});
  for (std::size_t i = 0; i < r.ladder.size(); ++i)
    csv.add({CsvTable::num(r.ladder[i].t), CsvTable::num(r.ladder[i].value.real()),
             i + 1 == r.ladder.size() ? CsvTable::num(r.est_error) : std::string()});
  return csv;
}

Json task_chern_bulk(Context& ctx) {
  const ModelSpec model = model_of(ctx.cfg);
  const auto& b = ctx.cfg["bulk"];
  const double ef = num(b["fermi_level"]);
  const std::vector<Direction> dirs = {direction_of(b["directions"][0]), direction_of(b["directions"][1])};
  for (const auto& e : b["ladder"]) guard_torus(e.get<std::int64_t>());
  const auto oracle = bz_chern(model, ctx.precision()["oracle_grid"].get<std::size_t>(), ef);
  const double det = dirs[0][0] * dirs[1][1] - dirs[0][1] * dirs[1][0];

  CsvTable csv({"t", "value", "est_error"});
  Json ladder = Json::array();
  PairingResult last;
  double prev = NAN;
  for (const auto& e : b["ladder"]) {
    const auto extent = e.get<std::int64_t>();
    ctx.say("torus " + std::to_string(extent) + "x" + std::to_string(extent));
    last = bulk_pairing(model, extent, dirs, ef, num(ctx.precision()["projection_tolerance"]));
    const double v = last.value.real();
    const double err = std::isnan(prev) ? std::fabs(v - std::round(v)) : std::fabs(v - prev);
    prev = v;
    csv.add({CsvTable::num(static_cast<std::uint64_t>(extent)), CsvTable::num(v), CsvTable::num(err)});
    ladder.push_back({{"extent", extent}, {"value", complex_json(last.value)}, {"defect", last.defect},
                      {"est_error", err}});
  }
  ctx.table("bulk_convergence.csv", csv);
  ctx.normalization = {{"sites", b["ladder"].back().get<std::int64_t>() * b["ladder"].back().get<std::int64_t>()},
                       {"trace", "per unit volume: full trace / site count"},
                       {"directions_det", det}};
  ctx.notes.push_back(last.convention_note);
  ctx.notes.push_back("bulk_convergence.csv: t is the torus extent; est_error is the change from the previous rung "
                      "(first rung: distance to the nearest integer)");
  return Json{{"pairing", to_json(last)},
              {"oracle", to_json(oracle)},
              {"expected", det * oracle.value},
              {"difference", std::fabs(last.value.real() - det * oracle.value)},
              {"ladder", ladder}};
}

Json task_chern_edge(Context& ctx) {
  const ModelSpec model = model_of(ctx.cfg);
  const ConeSpec spec = cone_spec_from_json(ctx.cfg["cone"]);
  const SlabWindow g = geometry_of(ctx.cfg);
  guard_edge(spec, g);
  const auto& e = ctx.cfg["edge"];
  const Direction w = e.contains("direction") ? direction_of(e["direction"]) : edge_direction(spec);
  ctx.say("edge pairing, direction (" + format_decimal(w[0]) + ", " + format_decimal(w[1]) + ")");
  const auto edge = edge_pairing(model, spec, g, edge_options(ctx), w);
  ctx.table("edge_convergence.csv", edge_table(edge.edge));
  const auto ts = TraceSpec::cone(spec, IndexSet{0}, g);
  ctx.normalization = {{"trace_normalization", static_cast<double>(ts.normalization)},
                       {"covolume_facets", static_cast<double>(ts.covolume)}};
  ctx.notes.push_back(edge.edge.convention_note);
  ctx.notes.push_back("edge_convergence.csv: est_error = |value(t) − value(t/2)|, reported on the t row");
  Json out = edge_block(edge);
  out["direction"] = w;
  return out;
}

Json task_bulk_edge(Context& ctx) {
  const ModelSpec model = model_of(ctx.cfg);
  const ConeSpec spec = cone_spec_from_json(ctx.cfg["cone"]);
  const SlabWindow g = geometry_of(ctx.cfg);
  const auto opts = edge_options(ctx);
  guard_torus(opts.torus_extent);
  guard_edge(spec, g);
  ctx.say("bulk-edge check: torus " + std::to_string(opts.torus_extent) + ", edge t = " + format_decimal(g.t));
  const auto rep = bulk_edge_check(model, spec, g, opts);
  ctx.table("edge_convergence.csv", edge_table(rep.edge));
  const auto ts = TraceSpec::cone(spec, IndexSet{0}, g);
  ctx.normalization = {{"trace_normalization", static_cast<double>(ts.normalization)},
                       {"covolume_facets", static_cast<double>(ts.covolume)},
                       {"torus_sites", opts.torus_extent * opts.torus_extent}};
  ctx.notes.push_back(rep.edge.convention_note);
  ctx.notes.push_back("bulk pairing uses directions (w, v), the edge pairing direction w = (v2, −v1)");
  return to_json(rep);
}

Json versions() {
  return Json{{"conehull", CONEHULL_VERSION},
              {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                            std::to_string(EIGEN_MINOR_VERSION)},
              {"boost", std::to_string(BOOST_VERSION / 100000) + "." + std::to_string(BOOST_VERSION / 100 % 1000)},
              {"nlohmann_json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." +
                                    std::to_string(NLOHMANN_JSON_VERSION_MINOR) + "." +
                                    std::to_string(NLOHMANN_JSON_VERSION_PATCH)}};
}

Json dispatch(Context& ctx, const std::string& task) {
  if (task == "hull") return task_hull(ctx);
  if (task == "classify") return task_classify(ctx);
  if (task == "count") return task_count(ctx);
  if (task == "trace") return task_trace(ctx);
  if (task == "chern-bulk") return task_chern_bulk(ctx);
  if (task == "chern-edge") return task_chern_edge(ctx);
  return task_bulk_edge(ctx);
}

}  // namespace

std::string version_string() { return CONEHULL_VERSION; }

RunOutcome run(const Json& doc, const std::string& task, const RunOptions& options) {
  const auto start = std::chrono::steady_clock::now();
  RunOutcome out;
  const auto diags = validate(doc, task);
  if (!diags.empty()) {
    out.exit_code = kExitSchema;
    out.message = "config does not match the schema";
    for (const auto& d : diags) out.diagnostics.push_back(format_diagnostic("config", d));
    return out;
  }
  Json cfg;
  std::filesystem::path dir;
  try {
    cfg = resolve(doc, task);
    dir = options.out.empty() ? std::filesystem::path(cfg["output"].get<std::string>()) : options.out;
    std::filesystem::create_directories(dir);
  } catch (const std::exception& e) {
    out.exit_code = kExitOther;
    out.message = e.what();
    return out;
  }

  Context ctx{cfg, dir, options.log, Json::object(), Json::array(), {}};
  Json report;
  report["schema_version"] = kSchemaVersion;
  report["task"] = task;
  Json result, error;
  try {
    result = dispatch(ctx, task);
  } catch (const Error& e) {
    out.exit_code = e.kind() == ErrorKind::ResourceLimit ? kExitResource
                    : is_numerical(e.kind())              ? kExitNumerical
                                                          : kExitSchema;
    error = {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}};
  } catch (const std::bad_alloc&) {
    out.exit_code = kExitResource;
    error = {{"kind", "ResourceLimit"}, {"message", "out of memory"}};
  } catch (const std::exception& e) {
    out.exit_code = kExitOther;
    error = {{"kind", "Internal"}, {"message", e.what()}};
  }
  if (out.exit_code != kExitOk) out.message = error["message"].get<std::string>();

  report["status"] = out.exit_code == kExitOk ? "ok" : "error";
  if (out.exit_code == kExitOk) report["result"] = result;
  else report["error"] = error;
  report["normalization"] = ctx.normalization;
  report["convention_notes"] = ctx.notes;
  report["versions"] = versions();
  report["config"] = cfg;
  Json artifacts = Json::array();
  for (const auto& a : ctx.artifacts) artifacts.push_back(a.generic_string());
  report["artifacts"] = artifacts;
  report["wall_time_seconds"] =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  try {
    write_text(dir / "report.json", report.dump(2) + "\n");
    out.report = dir / "report.json";
  } catch (const std::exception& e) {
    out.exit_code = kExitOther;
    out.message = e.what();
  }
  for (const auto& a : ctx.artifacts) out.artifacts.push_back(dir / a);
  return out;
}

RunOutcome run_file(const std::filesystem::path& config, const std::string& task, const RunOptions& options) {
  RunOutcome out;
  std::ifstream in(config, std::ios::binary);
  if (!in) {
    out.exit_code = kExitSchema;
    out.message = "cannot read " + config.string();
    return out;
  }
  std::ostringstream text;
  text << in.rdbuf();
  const auto parsed = parse_config(text.str(), task);
  if (!parsed.diagnostics.empty()) {
    out.exit_code = kExitSchema;
    out.message = "config does not match the schema";
    for (const auto& d : parsed.diagnostics) out.diagnostics.push_back(format_diagnostic(config.string(), d));
    return out;
  }
  return run(parsed.doc, task, options);
}

}  // namespace conehull
