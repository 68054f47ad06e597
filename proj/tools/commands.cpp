#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <fmt/format.h>

#include "cli.hpp"
#include "cli_io.hpp"
#include "qclab/core/error.hpp"
#include "qclab/cutproject.hpp"
#include "qclab/diffraction.hpp"
#include "qclab/discrepancy.hpp"
#include "qclab/graph_spectrum.hpp"
#include "qclab/schrodinger.hpp"
#include "qclab/sequences.hpp"
#include "qclab/substitution.hpp"
#include "qclab/tilings.hpp"
#include "qclab/torus.hpp"

namespace qclab::cli {
namespace {

Convention convention(const Args& a) {
  return a.choice("convention", {"left", "right"}) == "left" ? Convention::LeftClosed : Convention::RightClosed;
}

SturmianParams sturmian_params(const Args& a) { return {a.real("alpha"), a.real("theta"), convention(a)}; }

std::vector<Param> source_params() {
  return {{"source", "lattice", "Point set: lattice, random, pinwheel, penrose, fibonacci or file"},
          {"input", "", "Point CSV (columns x[,y[,z]] or x1[,x2[,x3]], optional type) when --source file"},
          {"size", "64", "Side L of the lattice block [0,L)^2 or the random box"},
          {"count", "4096", "Number of uniform random points"},
          {"generations", "5", "Substitution generations for tiling sources"},
          {"radius", "200", "Physical radius of the Fibonacci chain"}};
}

PointSet load_source(Run& r) {
  const auto& a = r.args;
  const auto& src = a.choice("source", {"lattice", "random", "pinwheel", "penrose", "fibonacci", "file"});
  PointSet ps;
  ps.dim = 2;
  if (src == "lattice") {
    const auto L = a.integer("size");
    if (L < 1 || L > 4096) throw InputError("--size must lie in [1, 4096]");
    for (std::int64_t i = 0; i < L; ++i)
      for (std::int64_t j = 0; j < L; ++j) {
        const double p[2] = {static_cast<double>(i), static_cast<double>(j)};
        ps.push(p);
      }
  } else if (src == "random") {
    const double L = a.number("size");
    const auto n = a.integer("count");
    if (!(L > 0) || n < 1) throw InputError("--size and --count must be positive");
    std::mt19937_64 rng(r.seed);
    std::uniform_real_distribution<double> u(0.0, L);
    for (std::int64_t i = 0; i < n; ++i) {
      const double p[2] = {u(rng), u(rng)};
      ps.push(p);
    }
  } else if (src == "pinwheel") {
    ps = reference_points(substitute(pinwheel_seed(), static_cast<int>(a.integer("generations"))));
  } else if (src == "penrose") {
    const int g = static_cast<int>(a.integer("generations"));
    const auto tg = extract_graph(substitute(penrose_seed(), g));
    const double scale = std::pow(std::numbers::phi, g);
    for (const auto& p : tg.positions) {
      const double q[2] = {p[0] * scale, p[1] * scale};
      ps.push(q);
    }
  } else if (src == "fibonacci") {
    ps = generate_cps(line_scheme(parse_real("golden")), a.number("radius"));
  } else {
    if (a.text("input").empty()) throw InputError("--source file needs --input");
    ps = points_from_csv(r.read_input(a.text("input")));
  }
  return ps;
}

std::string cell(const HighPrec& x) { return x.to_string(20); }

void run_sturmian(Run& r) {
  const auto w = sturmian_sample(sturmian_params(r.args), r.args.integer("from"), r.args.integer("to"));
  std::string csv = "n,symbol\n";
  for (std::size_t i = 0; i < w.size(); ++i) csv += fmt::format("{},{}\n", w.offset + static_cast<std::int64_t>(i), w.symbols[i]);
  r.emit(csv);
  r.summary["length"] = w.size();
}

void run_complexity(Run& r) {
  const auto& a = r.args;
  const auto window = a.integer("window");
  if (window < 1) throw InputError("--window must be positive");
  BinaryWord w;
  if (a.text("word").empty()) {
    w = sturmian_sample(sturmian_params(a), 0, window);
  } else {
    const auto block = binary_word_from_string(a.text("word"));
    for (std::int64_t i = 0; i < window; ++i) w.symbols.push_back(block.symbols[static_cast<std::size_t>(i) % block.size()]);
  }
  const int nmax = static_cast<int>(a.integer("nmax"));
  const auto p = factor_complexity(w, nmax);
  const auto cls = classify_pattern_sturmian(w, static_cast<int>(a.integer("pattern-nmax")), static_cast<int>(a.integer("template-bound")));
  std::string csv = "n,p,pattern_lb\n";
  for (int n = 1; n <= nmax; ++n) {
    const auto i = static_cast<std::size_t>(n - 1);
    csv += fmt::format("{},{},{}\n", n, p[i], i < cls.lower_bounds.size() ? fmt::format("{}", cls.lower_bounds[i]) : "");
  }
  r.emit(csv);
  r.summary["verdict"] = to_string(cls.verdict);
  r.summary["refuted_n"] = cls.refuted_n;
  r.summary["refuted_count"] = cls.refuted_count;
  r.summary["witness"] = cls.witness;
}

void run_substitution(Run& r) {
  const auto sub = Substitution1D::parse(r.args.text("rule"));
  if (r.args.choice("export", {"report", "points"}) == "points") {
    const auto tp = natural_tile_points(sub, static_cast<std::size_t>(r.args.integer("length")));
    std::string csv = "x,type\n";
    for (std::size_t i = 0; i < tp.endpoints.size(); ++i)
      csv += fmt::format("{},{}\n", tp.endpoints[i], sub.index_of(tp.types[i]));
    r.emit(csv);
    r.summary["points"] = tp.endpoints.size();
    return;
  }
  const auto rep = pisot_check(sub);
  std::string matrix;
  for (const auto& row : rep.matrix) {
    if (!matrix.empty()) matrix += ";";
    for (std::size_t j = 0; j < row.size(); ++j) matrix += fmt::format("{}{}", j ? " " : "", row[j]);
  }
  std::string conj;
  for (const auto& z : rep.conjugates) conj += fmt::format("{}{}", conj.empty() ? "" : " ", std::abs(z));
  std::string csv = "property,value\n";
  csv += fmt::format("rule,{}\n", sub.to_string());
  csv += fmt::format("primitive,{}\n", sub.primitive());
  csv += fmt::format("matrix,{}\n", matrix);
  csv += fmt::format("char_poly,{}\n", rep.char_poly.to_string());
  csv += fmt::format("perron,{}\n", rep.perron);
  csv += fmt::format("conjugate_moduli,{}\n", conj);
  csv += fmt::format("pisot,{}\n", rep.is_pisot);
  csv += fmt::format("irreducible,{}\n", rep.is_irreducible);
  csv += fmt::format("unimodular,{}\n", rep.is_unimodular);
  csv += fmt::format("conjecture_applies,{}\n", rep.conjecture_applies);
  if (!rep.certificate.irreducible) {
    csv += fmt::format("factor,{}\n", rep.certificate.factor.to_string());
    csv += fmt::format("cofactor,{}\n", rep.certificate.cofactor.to_string());
  }
  r.emit(csv);
  r.summary["pisot"] = rep.is_pisot;
  r.summary["irreducible"] = rep.is_irreducible;
  r.summary["unimodular"] = rep.is_unimodular;
}

void run_spectrum1d(Run& r) {
  const auto& a = r.args;
  const double lambda = a.number("lambda"), tol = a.number("edge-tol");
  const int level = static_cast<int>(a.integer("level"));
  r.precision["edge_tol"] = tol;
  const auto cascade = spectrum_cascade(lambda, sturmian_params(a), level, tol);
  const bool all = a.choice("cascade", {"0", "1"}) == "1";
  std::string csv = "level,p,q,lo,hi\n";
  r.summary["levels"] = nlohmann::ordered_json::array();
  for (std::size_t k = 0; k < cascade.size(); ++k) {
    const auto& s = cascade[k];
    if (!all && k + 1 != cascade.size()) continue;
    for (const auto& b : s.set.bands()) csv += fmt::format("{},{},{},{},{}\n", k + 1, s.p, s.q, b.lo, b.hi);
    r.summary["levels"].push_back({{"level", k + 1}, {"q", s.q}, {"bands", s.bands.size()}, {"components", s.set.size()}, {"measure", s.measure}});
  }
  r.emit(csv);
}

void run_spectrum2d(Run& r) {
  const auto& a = r.args;
  const double tol = a.number("edge-tol");
  r.precision["edge_tol"] = tol;
  const auto set = spectrum_2d_separable(a.number("lambda1"), a.number("lambda2"), static_cast<int>(a.integer("level")), tol);
  std::string csv = "lo,hi\n";
  for (const auto& b : set.bands()) csv += fmt::format("{},{}\n", b.lo, b.hi);
  r.emit(csv);
  const auto rep = cantorval_report(set, a.number("eps"));
  r.summary["measure"] = set.measure();
  r.summary["components"] = rep.component_count;
  r.summary["gaps"] = rep.gap_count;
  r.summary["gap_measure"] = rep.total_gap_measure;
  r.summary["interior_fraction"] = rep.interior_fraction;
  r.summary["isolated_components"] = rep.isolated_component_count;
}

void run_trace(Run& r) {
  const auto& a = r.args;
  const auto t = fibonacci_trace_escape(a.number("lambda"), a.number("energy"), static_cast<int>(a.integer("max-iter")),
                                        a.number("radius"));
  std::string csv = "k,x\n";
  for (std::size_t i = 0; i < t.traces.size(); ++i) csv += fmt::format("{},{}\n", static_cast<int>(i) - 1, t.traces[i]);
  r.emit(csv);
  r.summary["escaped"] = t.escaped;
  r.summary["iteration"] = t.iteration;
  r.summary["invariant"] = t.invariant;
  r.summary["max_drift"] = t.max_drift;
}

void run_gaps(Run& r) {
  const auto& a = r.args;
  const auto rep = gap_report(a.real("alpha"), a.real("beta"), a.integer("M"), a.integer("N"));
  std::string csv = "dm,dn,dk,length,multiplicity\n";
  for (const auto& c : rep.classes)
    csv += fmt::format("{},{},{},{},{}\n", c.coeffs[0], c.coeffs[1], c.coeffs[2], cell(c.length), c.multiplicity);
  r.emit(csv);
  r.summary["points"] = rep.point_count;
  r.summary["distinct_gaps"] = rep.distinct;
}

void run_littlewood(Run& r) {
  const auto& a = r.args;
  const auto s = littlewood_scan(a.real("alpha"), a.real("beta"), a.integer("nmax"));
  std::string csv = "n,value,running_min\n";
  for (std::size_t i = 0; i < s.values.size(); ++i) csv += fmt::format("{},{},{}\n", i + 1, s.values[i], s.running_min[i]);
  r.emit(csv);
  r.summary["min_value"] = cell(s.min_value);
  r.summary["min_n"] = s.min_n;
}

void run_cps(Run& r) {
  const auto& a = r.args;
  const auto scheme = a.choice("dim", {"1", "2"}) == "1" ? line_scheme(a.real("alpha"))
                                                         : canonical_scheme(a.real("alpha"), a.real("beta"));
  const auto ps = generate_cps(scheme, a.number("radius"));
  if (a.choice("export", {"points", "complexity"}) == "complexity") {
    const auto series = patch_complexity(ps, a.number("rmax"), a.number("step"), a.number("radius"));
    std::string csv = "radius,classes,reference\n";
    for (const auto& c : series) csv += fmt::format("{},{},{}\n", c.radius, c.classes, c.reference);
    r.emit(csv);
    r.summary["loglog_slope"] = loglog_slope(series);
  } else {
    std::string csv;
    for (int c = 0; c < ps.dim; ++c) csv += fmt::format("{}x{}", c ? "," : "", c + 1);
    for (int c = 0; c < ps.lattice_rank; ++c) csv += fmt::format(",n{}", c + 1);
    csv += '\n';
    for (std::size_t i = 0; i < ps.size(); ++i) {
      for (int c = 0; c < ps.dim; ++c) csv += fmt::format("{}{}", c ? "," : "", ps.at(i, c));
      for (auto n : ps.lattice_point(i)) csv += fmt::format(",{}", n);
      csv += '\n';
    }
    r.emit(csv);
  }
  r.summary["points"] = ps.size();
}

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void run_weiss(Run& r) {
  const auto& a = r.args;
  const auto& kind = a.choice("yprime", {"lattice", "empty", "random"});
  const double density = a.number("density");
  const std::uint64_t seed = r.seed;
  std::function<bool(std::int64_t, std::int64_t)> pred;
  if (kind == "lattice") {
    pred = [](std::int64_t, std::int64_t) { return true; };
  } else if (kind == "empty") {
    pred = [](std::int64_t, std::int64_t) { return false; };
  } else {
    if (!(density >= 0 && density <= 1)) throw InputError("--density must lie in [0, 1]");
    pred = [seed, density](std::int64_t x, std::int64_t y) {
      const auto h = splitmix(seed ^ splitmix(static_cast<std::uint64_t>(x) ^ splitmix(static_cast<std::uint64_t>(y))));
      return static_cast<double>(h >> 11) * 0x1.0p-53 < density;
    };
  }
  const auto res = weiss_window(a.real("alpha"), a.real("beta"), pred, a.integer("xlo"), a.integer("xhi"), a.integer("ylo"),
                                a.integer("yhi"));
  std::string csv = "n1,n2,n3";
  for (int c = 0; c < res.points.dim; ++c) csv += fmt::format(",x{}", c + 1);
  csv += ",displacement\n";
  double maxd = 0;
  for (std::size_t i = 0; i < res.lattice.size(); ++i) {
    csv += fmt::format("{},{},{}", res.lattice[i][0], res.lattice[i][1], res.lattice[i][2]);
    for (int c = 0; c < res.points.dim; ++c) csv += fmt::format(",{}", res.points.at(i, c));
    csv += fmt::format(",{}\n", res.displacement[i]);
    maxd = std::max(maxd, res.displacement[i]);
  }
  r.emit(csv);
  r.summary["points"] = res.lattice.size();
  r.summary["max_displacement"] = maxd;
  r.summary["slab_height"] = res.slab_height;
}

std::string records_csv(const std::vector<TileRecord>& recs) {
  std::string csv = "type,reflected,rotation_deg,tx,ty\n";
  for (const auto& t : recs) csv += fmt::format("{},{},{},{},{}\n", t.type, t.reflected ? 1 : 0, t.rotation_deg, t.tx, t.ty);
  return csv;
}

void emit_graph(Run& r, const TilingGraph& g, std::size_t bins) {
  r.summary["vertices"] = g.graph.vertex_count;
  r.summary["edges"] = g.graph.edges.size();
  r.summary["faces"] = g.faces;
  r.summary["euler_characteristic"] = g.euler_characteristic();
  r.summary["midpoint_vertices"] = g.midpoint_vertices;
  if (r.args.text("export") == "graph") {
    std::string edges = "u,v\n";
    for (auto [u, v] : g.graph.edges) edges += fmt::format("{},{}\n", u, v);
    std::string verts = "id,x,y\n";
    for (std::size_t i = 0; i < g.positions.size(); ++i) verts += fmt::format("{},{},{}\n", i, g.positions[i][0], g.positions[i][1]);
    r.emit(edges);
    r.emit(verts, "vertices");
    return;
  }
  GraphSpectrumOptions opt;
  opt.mode = g.graph.vertex_count <= kDenseVertexBudget ? SpectrumMode::Dense : SpectrumMode::Iterative;
  opt.bins = bins;
  const auto s = graph_operator_spectrum(g.graph, opt);
  std::string csv = "energy,ids\n";
  for (std::size_t i = 0; i < s.ids.size(); ++i) csv += fmt::format("{},{}\n", s.ids_energies[i], s.ids[i]);
  r.emit(csv);
  r.summary["mode"] = opt.mode == SpectrumMode::Dense ? "dense" : "iterative";
  r.summary["min_eigenvalue"] = s.min_eigenvalue;
  r.summary["max_eigenvalue"] = s.max_eigenvalue;
  r.summary["eigenvalue_sum"] = s.eigenvalue_sum;
  r.summary["connected"] = s.connected;
}

void run_tiling(Run& r) {
  const auto& a = r.args;
  const int g = static_cast<int>(a.integer("generations"));
  const auto& exp = a.choice("export", {"points", "tiles", "graph", "spectrum"});
  const auto bins = static_cast<std::size_t>(std::max<std::int64_t>(1, a.integer("bins")));
  if (a.choice("rule", {"pinwheel", "penrose"}) == "pinwheel") {
    const auto patch = substitute(pinwheel_seed(), g);
    r.summary["tiles"] = patch.tiles.size();
    r.summary["orientations"] = orientation_census(patch);
    if (exp == "points") r.emit(points_to_csv(reference_points(patch)));
    else if (exp == "tiles") r.emit(records_csv(tile_records(patch)));
    else emit_graph(r, extract_graph(patch), bins);
  } else {
    const auto patch = substitute(penrose_seed(), g);
    r.summary["tiles"] = patch.tiles.size();
    r.summary["orientations"] = orientation_census(patch);
    const auto variant = a.choice("variant", {"rhombi", "triangles"}) == "rhombi" ? PenroseGraphVariant::Rhombi
                                                                                  : PenroseGraphVariant::Triangles;
    if (exp == "points") r.emit(points_to_csv(reference_points(patch)));
    else if (exp == "tiles") r.emit(records_csv(tile_records(patch)));
    else emit_graph(r, extract_graph(patch, variant), bins);
  }
}

Taper taper(const Args& a) {
  const double s = a.number("taper");
  if (s < 0) throw InputError("--taper must be >= 0");
  return s > 0 ? Taper{Taper::Kind::Gaussian, s} : Taper{};
}

std::string profile_csv(const RadialProfile& p) {
  std::string csv = "radius,intensity,count\n";
  for (std::size_t i = 0; i < p.radii.size(); ++i) csv += fmt::format("{},{},{}\n", p.radii[i], p.intensity[i], p.counts[i]);
  return csv;
}

void run_diffract(Run& r) {
  const auto& a = r.args;
  const auto ps = load_source(r);
  const auto tp = taper(a);
  r.precision["taper_sigma"] = a.number("taper");
  r.summary["points"] = ps.size();
  if (a.choice("grid", {"cartesian", "polar"}) == "polar") {
    const auto grid = KGrid::polar(a.number("extent"), a.number("dr"), static_cast<int>(a.integer("angles")));
    const auto rot = a.integer("rotations");
    r.emit(profile_csv(rot > 0 ? rotation_ensemble_profile(ps, grid, static_cast<int>(rot), r.seed, tp)
                               : radial_average(structure_factor(ps, grid, tp))));
    return;
  }
  const auto map = structure_factor(ps, KGrid::cartesian(a.number("extent"), a.number("step")), tp);
  std::string csv;
  for (int c = 0; c < map.dim; ++c) csv += fmt::format("{}k{}", c ? "," : "", c + 1);
  csv += ",intensity\n";
  const auto dim = static_cast<std::size_t>(map.dim);
  for (std::size_t q = 0; q < map.intensity.size(); ++q) {
    for (std::size_t c = 0; c < dim; ++c) csv += fmt::format("{}{}", c ? "," : "", map.nodes[q * dim + c]);
    csv += fmt::format(",{}\n", map.intensity[q]);
  }
  r.emit(csv);
}

void run_rings(Run& r) {
  const auto& a = r.args;
  const auto t = parse_csv(r.read_input(a.text("input")));
  RadialProfile p;
  p.radii = t.numbers("radius");
  p.intensity = t.numbers("intensity");
  for (double c : t.column("count") >= 0 ? t.numbers("count") : std::vector<double>(p.radii.size(), 1.0))
    p.counts.push_back(static_cast<std::size_t>(c));
  const auto rings = ring_detect(p, a.number("prominence"), static_cast<int>(a.integer("window")));
  std::string csv = "radius,peak,prominence,label\n";
  for (const auto& g : rings) csv += fmt::format("{},{},{},candidate\n", g.radius, g.peak, g.prominence);
  r.emit(csv);
  r.summary["rings"] = rings.size();
}

void run_discrepancy(Run& r) {
  const auto& a = r.args;
  const auto ps = load_source(r);
  if (ps.empty()) throw InputError("discrepancy: empty point set");
  const bool ball = a.choice("shape", {"square", "ball"}) == "ball";
  const auto sizes = a.numbers("sizes");
  const auto centers = a.integer("centers");
  if (centers < 1) throw InputError("--centers must be positive");
  const auto dim = static_cast<std::size_t>(ps.dim);
  std::vector<double> lo(dim), hi(dim);
  for (std::size_t c = 0; c < dim; ++c) {
    lo[c] = hi[c] = ps.at(0, static_cast<int>(c));
    for (std::size_t i = 1; i < ps.size(); ++i) {
      lo[c] = std::min(lo[c], ps.at(i, static_cast<int>(c)));
      hi[c] = std::max(hi[c], ps.at(i, static_cast<int>(c)));
    }
  }
  double density = 0;
  if (a.text("density") == "auto") {
    RegionSpec big{RegionSpec::Kind::AlignedSquare, {}, 0};
    double side = hi[0] - lo[0];
    for (std::size_t c = 0; c < dim; ++c) {
      big.center.push_back(0.5 * (lo[c] + hi[c]));
      side = std::min(side, hi[c] - lo[c]);
    }
    big.size = side;
    density = density_estimate(ps, big);
  } else {
    density = a.number("density");
  }
  std::mt19937_64 rng(r.seed);
  std::vector<RegionSpec> regions;
  for (double s : sizes) {
    const double half = ball ? s : s / 2;
    for (std::int64_t k = 0; k < centers; ++k) {
      RegionSpec reg{ball ? RegionSpec::Kind::Ball : RegionSpec::Kind::AlignedSquare, {}, s};
      for (std::size_t c = 0; c < dim; ++c) {
        if (hi[c] - lo[c] < 2 * half) throw InputError(fmt::format("region size {} does not fit the point set", s));
        reg.center.push_back(std::uniform_real_distribution<double>(lo[c] + half, hi[c] - half)(rng));
      }
      regions.push_back(std::move(reg));
    }
  }
  const auto samples = discrepancy_sweep(ps, density, regions);
  std::string csv = "kind";
  for (std::size_t c = 0; c < dim; ++c) csv += fmt::format(",c{}", c + 1);
  csv += ",size,count,expected,D,boundary\n";
  for (const auto& s : samples) {
    csv += ball ? "ball" : "square";
    for (double v : s.region.center) csv += fmt::format(",{}", v);
    csv += fmt::format(",{},{},{},{},{}\n", s.region.size, s.count, s.expected, s.D, s.boundary);
  }
  r.emit(csv);
  r.summary["density"] = density;
  try {
    const auto fit = growth_fit(samples);
    r.summary["exponent"] = fit.exponent;
    r.summary["log_correction"] = fit.log_correction;
    r.summary["power_rss"] = fit.power_rss;
    r.summary["log_rss"] = std::isfinite(fit.log_rss) ? nlohmann::ordered_json(fit.log_rss) : nlohmann::ordered_json(nullptr);
  } catch (const InputError& e) {
    r.summary["growth_fit"] = std::string("not fitted: ") + e.what();
  }
}

void run_plot(Run& r) {
  const auto& a = r.args;
  const auto t = parse_csv(r.read_input(a.text("input")));
  const auto& style = a.choice("style", {"line", "loglog", "bands"});
  const auto s = style == "line" ? PlotStyle::Line : style == "loglog" ? PlotStyle::LogLog : PlotStyle::Bands;
  r.emit(render_svg(t, s, a.text("x"), a.text("y"), a.text("group"), a.text("title")));
}

std::vector<Param> with(std::vector<Param> a, const std::vector<Param>& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

const std::vector<Param> kSturmian = {
    {"alpha", "golden", "Rotation number: decimal, sqrtD, golden, phi or (p+q*sqrtD)/r"},
    {"theta", "0", "Phase"},
    {"convention", "left", "Interval convention for floor/ceiling ties: left or right"}};

}  // namespace

const std::vector<Command>& commands() {
  static const std::vector<Command> all = {
      {"sturmian", "Sturmian word s_n = floor((n+1) alpha + theta) - floor(n alpha + theta) on an index range",
       with(kSturmian, {{"from", "0", "First index"}, {"to", "100", "One past the last index"}}), run_sturmian},
      {"complexity",
       "Factor complexity p(n) and lower bounds on the pattern complexity p*(n) of a Sturmian or periodic word",
       with(kSturmian, {{"word", "", "Repeat this binary block instead of sampling a Sturmian word"},
                        {"window", "5000", "Number of symbols examined"},
                        {"nmax", "20", "Largest block length for p(n)"},
                        {"pattern-nmax", "5", "Largest pattern size for p*(n)"},
                        {"template-bound", "40", "Largest template offset searched"}}),
       run_complexity},
      {"substitution",
       "Abelianization matrix, characteristic polynomial and Pisot, irreducibility and unimodularity predicates of a "
       "one-dimensional substitution, or its self-similar tile endpoints",
       {{"rule", "a->ab; b->a", "Substitution rules, e.g. 'a->ab; b->a'"},
        {"export", "report", "report or points"},
        {"length", "1000", "Number of tiles for --export points"}},
       run_substitution},
      {"spectrum1d",
       "Band spectra of periodic approximants of the Sturmian Schroedinger operator H = Delta + lambda v_n",
       with(kSturmian, {{"lambda", "1", "Coupling constant"},
                        {"level", "5", "Continued fraction level of the approximant"},
                        {"edge-tol", "1e-12", "Band edge tolerance"},
                        {"cascade", "0", "1 to emit every level up to --level"}}),
       run_spectrum1d},
      {"spectrum2d",
       "Spectrum of the separable square-lattice operator with two Fibonacci potentials as a sumset of 1D bands, with "
       "Cantorval diagnostics",
       {{"lambda1", "1", "Coupling along x"},
        {"lambda2", "1", "Coupling along y"},
        {"level", "6", "Approximant level"},
        {"edge-tol", "1e-12", "Band edge tolerance"},
        {"eps", "1e-6", "Resolution for gap and component counts"}},
       run_spectrum2d},
      {"trace", "Fibonacci trace map orbit x_{k+1} = 2 x_k x_{k-1} - x_{k-2} and its invariant",
       {{"lambda", "1", "Coupling constant"},
        {"energy", "0", "Energy"},
        {"max-iter", "50", "Iteration limit"},
        {"radius", "10", "Escape radius"}},
       run_trace},
      {"gaps", "Distinct gap lengths of the torus points m alpha + n beta mod 1, 0 <= m < M, 0 <= n < N",
       {{"alpha", "sqrt2", "First frequency"},
        {"beta", "sqrt3", "Second frequency"},
        {"M", "10", "Range of m"},
        {"N", "10", "Range of n"}},
       run_gaps},
      {"littlewood", "Scan of n ||n alpha|| ||n beta|| and its running minimum",
       {{"alpha", "sqrt2", "First frequency"}, {"beta", "sqrt3", "Second frequency"}, {"nmax", "10000", "Largest n"}},
       run_littlewood},
      {"cps", "Cut-and-project set with the projected unit cube window, or its patch counting function",
       {{"dim", "2", "1: line of slope alpha in Z^2; 2: plane z = alpha x + beta y in Z^3"},
        {"alpha", "golden", "Slope"},
        {"beta", "sqrt2", "Second slope (dim 2)"},
        {"radius", "20", "Physical radius"},
        {"export", "points", "points or complexity"},
        {"rmax", "4", "Largest patch radius for --export complexity"},
        {"step", "0.5", "Patch radius step"}},
       run_cps},
      {"weiss-window",
       "Model set in Z^3 whose projection is a bijective image of a chosen subset Y' of Z^2, slab z in "
       "[alpha x + beta y, alpha x + beta y + 1)",
       {{"alpha", "sqrt2", "First slope"},
        {"beta", "sqrt3", "Second slope"},
        {"yprime", "lattice", "Y': lattice, empty or random"},
        {"density", "0.5", "Inclusion probability for random Y'"},
        {"xlo", "-50", "Lowest x"},
        {"xhi", "50", "One past the highest x"},
        {"ylo", "-50", "Lowest y"},
        {"yhi", "50", "One past the highest y"}},
       run_weiss},
      {"tiling",
       "Pinwheel or Penrose (Robinson triangle) substitution patches in exact arithmetic, with point, tile, graph and "
       "graph Laplacian spectrum exports",
       {{"rule", "pinwheel", "pinwheel or penrose"},
        {"generations", "3", "Number of substitution steps"},
        {"export", "points", "points, tiles, graph or spectrum"},
        {"variant", "rhombi", "Penrose graph: rhombi or triangles"},
        {"bins", "200", "Integrated density of states bins"}},
       run_tiling},
      {"diffract", "Structure factor |sum_j exp(-2 pi i k.x_j)|^2 / N on a cartesian or polar grid",
       with(source_params(), {{"grid", "polar", "cartesian or polar"},
                              {"extent", "3", "Largest |k| component or radius"},
                              {"step", "0.05", "Cartesian step"},
                              {"dr", "0.02", "Polar radial step"},
                              {"angles", "64", "Polar angle samples"},
                              {"taper", "0", "Gaussian taper width; 0 for none"},
                              {"rotations", "0", "Average over this many random rotations (polar grid)"}}),
       run_diffract},
      {"rings", "Candidate sharp rings: local maxima of a radial profile above a moving median",
       {{"input", "profile.csv", "Radial profile CSV (radius,intensity[,count])"},
        {"prominence", "1", "Minimal height above the baseline"},
        {"window", "15", "Moving median window in samples"}},
       run_rings},
      {"discrepancy", "Counting discrepancy |N(R) - density vol(R)| over squares or balls, with a growth-law fit",
       with(source_params(), {{"shape", "square", "square or ball"},
                              {"sizes", "2,4,8,16,32", "Region sizes (side or radius)"},
                              {"centers", "16", "Random centers per size"},
                              {"density", "auto", "Point density, or auto"}}),
       run_discrepancy},
      {"plot", "SVG line, log-log or interval plot of a CSV file",
       {{"input", "data.csv", "CSV file"},
        {"style", "line", "line, loglog or bands"},
        {"x", "radius", "x column (lo column for bands)"},
        {"y", "intensity", "y column (hi column for bands)"},
        {"group", "", "Bands: column whose values select the strip"},
        {"title", "", "Title"}},
       run_plot, "svg"},
  };
  return all;
}

}  // namespace qclab::cli
