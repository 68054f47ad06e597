#include "cli_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <fmt/format.h>
#include <openssl/evp.h>

#include "qclab/core/error.hpp"

namespace qclab::cli {

std::string sha256_hex(const std::string& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
    throw ResourceError("sha256: digest failed");
  std::string out;
  for (unsigned int i = 0; i < len; ++i) out += fmt::format("{:02x}", digest[i]);
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InputError("cannot write " + path);
  out << bytes;
  if (!out) throw ResourceError("write failed for " + path);
}

int Table::column(const std::string& name) const {
  auto it = std::find(header.begin(), header.end(), name);
  return it == header.end() ? -1 : static_cast<int>(it - header.begin());
}

std::vector<double> Table::numbers(const std::string& name) const {
  const int c = column(name);
  if (c < 0) throw InputError("CSV has no column '" + name + "'");
  std::vector<double> out;
  for (const auto& r : rows) {
    const auto& cell = r[static_cast<std::size_t>(c)];
    try {
      std::size_t pos = 0;
      out.push_back(std::stod(cell, &pos));
      if (pos != cell.size()) throw InputError("");
    } catch (const std::exception&) {
      throw InputError("CSV column '" + name + "' has a non-numeric cell '" + cell + "'");
    }
  }
  return out;
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      cells.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  cells.push_back(cur);
  return cells;
}

}  // namespace

Table parse_csv(const std::string& text) {
  Table t;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    auto cells = split(line);
    if (t.header.empty()) {
      t.header = std::move(cells);
    } else {
      if (cells.size() != t.header.size())
        throw InputError(fmt::format("CSV row {} has {} cells, header has {}", t.rows.size() + 1, cells.size(), t.header.size()));
      t.rows.push_back(std::move(cells));
    }
  }
  if (t.header.empty()) throw InputError("empty CSV");
  return t;
}

PointSet points_from_csv(const std::string& text) {
  const Table t = parse_csv(text);
  PointSet ps;
  std::vector<std::vector<double>> cols;
  // Either x, y, z or the x1, x2, x3 naming used by lattice-labelled exports.
  const bool numbered = t.column("x") < 0 && t.column("x1") >= 0;
  for (const char* name : {"x", "y", "z"}) {
    const std::string col = numbered ? fmt::format("x{}", cols.size() + 1) : std::string(name);
    if (t.column(col) < 0) break;
    cols.push_back(t.numbers(col));
  }
  if (cols.empty()) throw InputError("point CSV needs an 'x' or 'x1' column");
  ps.dim = static_cast<int>(cols.size());
  for (std::size_t i = 0; i < t.rows.size(); ++i)
    for (const auto& c : cols) ps.coords.push_back(c[i]);
  if (t.column("type") >= 0)
    for (double v : t.numbers("type")) ps.types.push_back(static_cast<int>(v));
  return ps;
}

std::string points_to_csv(const PointSet& points) {
  static const char* names[] = {"x", "y", "z"};
  std::string out;
  for (int c = 0; c < points.dim; ++c) out += fmt::format("{}{}", c ? "," : "", c < 3 ? names[c] : "w");
  const bool typed = points.types.size() == points.size();
  out += typed ? ",type\n" : "\n";
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (int c = 0; c < points.dim; ++c) out += fmt::format("{}{}", c ? "," : "", points.at(i, c));
    if (typed) out += fmt::format(",{}", points.types[i]);
    out += '\n';
  }
  return out;
}

std::string render_svg(const Table& table, PlotStyle style, const std::string& x, const std::string& y,
                       const std::string& group, const std::string& title) {
  constexpr double W = 640, H = 400, M = 50;
  std::string svg = fmt::format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n"
      "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
      "<text x=\"{}\" y=\"{}\" font-size=\"14\">{}</text>\n",
      W, H, W, H, M, M / 2, title);
  auto frame = [&](double x0, double x1, double y0, double y1, const std::string& xl, const std::string& yl) {
    svg += fmt::format("<rect x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>\n", M, M,
                       W - 2 * M, H - 2 * M);
    svg += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"11\">{:.4g}</text>\n", M, H - M + 15, x0);
    svg += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"11\" text-anchor=\"end\">{:.4g}</text>\n", W - M, H - M + 15, x1);
    svg += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"11\" text-anchor=\"end\">{:.4g}</text>\n", M - 4, H - M, y0);
    svg += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"11\" text-anchor=\"end\">{:.4g}</text>\n", M - 4, M + 10, y1);
    svg += fmt::format("<text x=\"{}\" y=\"{}\" font-size=\"12\" text-anchor=\"middle\">{}</text>\n", W / 2, H - 12, xl);
    svg += fmt::format("<text x=\"14\" y=\"{}\" font-size=\"12\" transform=\"rotate(-90 14 {})\" text-anchor=\"middle\">{}</text>\n",
                       H / 2, H / 2, yl);
  };
  auto span = [](double& lo, double& hi) {
    if (!(hi > lo)) {
      lo -= 0.5;
      hi += 0.5;
    }
  };

  if (style == PlotStyle::Bands) {
    const auto lo = table.numbers(x), hi = table.numbers(y);
    std::vector<std::string> keys;
    const int gc = group.empty() ? -1 : table.column(group);
    for (const auto& r : table.rows) keys.push_back(gc < 0 ? "" : r[static_cast<std::size_t>(gc)]);
    std::vector<std::string> strips;
    for (const auto& k : keys)
      if (std::find(strips.begin(), strips.end(), k) == strips.end()) strips.push_back(k);
    if (lo.empty()) throw InputError("plot: no rows");
    double x0 = *std::min_element(lo.begin(), lo.end()), x1 = *std::max_element(hi.begin(), hi.end());
    span(x0, x1);
    frame(x0, x1, 0, static_cast<double>(strips.size()), x + " .. " + y, group.empty() ? "" : group);
    const double sh = (H - 2 * M) / static_cast<double>(strips.size());
    for (std::size_t i = 0; i < lo.size(); ++i) {
      const auto s = static_cast<double>(std::find(strips.begin(), strips.end(), keys[i]) - strips.begin());
      const double px = M + (lo[i] - x0) / (x1 - x0) * (W - 2 * M);
      const double pw = std::max((hi[i] - lo[i]) / (x1 - x0) * (W - 2 * M), 0.5);
      svg += fmt::format("<rect x=\"{:.3f}\" y=\"{:.3f}\" width=\"{:.3f}\" height=\"{:.3f}\" fill=\"steelblue\"/>\n", px,
                         M + s * sh + 0.15 * sh, pw, 0.7 * sh);
    }
    return svg + "</svg>\n";
  }

  auto xs = table.numbers(x), ys = table.numbers(y);
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (style == PlotStyle::LogLog) {
      if (xs[i] > 0 && ys[i] > 0) pts.emplace_back(std::log10(xs[i]), std::log10(ys[i]));
    } else {
      pts.emplace_back(xs[i], ys[i]);
    }
  }
  if (pts.empty()) throw InputError("plot: no plottable rows");
  double x0 = pts[0].first, x1 = x0, y0 = pts[0].second, y1 = y0;
  for (auto [a, b] : pts) {
    x0 = std::min(x0, a);
    x1 = std::max(x1, a);
    y0 = std::min(y0, b);
    y1 = std::max(y1, b);
  }
  span(x0, x1);
  span(y0, y1);
  const std::string pre = style == PlotStyle::LogLog ? "log10 " : "";
  frame(x0, x1, y0, y1, pre + x, pre + y);
  svg += "<polyline fill=\"none\" stroke=\"steelblue\" stroke-width=\"1.2\" points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    svg += fmt::format("{}{:.3f},{:.3f}", i ? " " : "", M + (pts[i].first - x0) / (x1 - x0) * (W - 2 * M),
                       H - M - (pts[i].second - y0) / (y1 - y0) * (H - 2 * M));
  }
  return svg + "\"/>\n</svg>\n";
}

}  // namespace qclab::cli
