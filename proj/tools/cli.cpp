#include "cli.hpp"

#include <algorithm>
#include <ostream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "cli_io.hpp"
#include "qclab/core/error.hpp"

#ifndef QCLAB_VERSION
#define QCLAB_VERSION "0.0.0"
#endif

namespace qclab::cli {

const Param& Args::find(const std::string& name) const {
  for (const auto& p : params_)
    if (p.name == name) return p;
  throw std::logic_error("undeclared parameter --" + name);
}

const std::string& Args::text(const std::string& name) const { return find(name).value; }

HighPrec Args::real(const std::string& name) const {
  try {
    return parse_real(text(name));
  } catch (const InputError& e) {
    throw InputError("--" + name + ": " + e.what());
  }
}

double Args::number(const std::string& name) const { return real(name).to_double(); }

std::int64_t Args::integer(const std::string& name) const {
  const auto& s = text(name);
  try {
    std::size_t pos = 0;
    const long long v = std::stoll(s, &pos);
    if (pos == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw InputError("--" + name + ": not an integer: '" + s + "'");
}

std::vector<double> Args::numbers(const std::string& name) const {
  std::vector<double> out;
  std::string cur;
  const std::string s = text(name) + ",";
  for (char c : s) {
    if (c != ',') {
      cur.push_back(c);
      continue;
    }
    if (!cur.empty()) {
      try {
        out.push_back(parse_real(cur).to_double());
      } catch (const InputError& e) {
        throw InputError("--" + name + ": " + e.what());
      }
    }
    cur.clear();
  }
  if (out.empty()) throw InputError("--" + name + ": empty list");
  return out;
}

const std::string& Args::choice(const std::string& name, const std::vector<std::string>& choices) const {
  const auto& v = text(name);
  if (std::find(choices.begin(), choices.end(), v) == choices.end()) {
    std::string all;
    for (const auto& c : choices) all += (all.empty() ? "" : "|") + c;
    throw InputError("--" + name + ": expected one of " + all + ", got '" + v + "'");
  }
  return v;
}

void Run::emit(const std::string& bytes, const std::string& suffix) {
  std::string path = out;
  if (!suffix.empty()) {
    const auto dot = path.find_last_of('.');
    const auto slash = path.find_last_of('/');
    if (dot != std::string::npos && (slash == std::string::npos || dot > slash))
      path = path.substr(0, dot) + "." + suffix + path.substr(dot);
    else
      path += "." + suffix;
  }
  outputs.emplace_back(path, bytes);
}

std::string Run::read_input(const std::string& path) {
  inputs.push_back(path);
  return read_file(path);
}

namespace {

bool is_help(const CLI::ParseError& e) {
  return dynamic_cast<const CLI::CallForHelp*>(&e) || dynamic_cast<const CLI::CallForAllHelp*>(&e) ||
         dynamic_cast<const CLI::CallForVersion*>(&e);
}

}  // namespace

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"qclab: numerical experiments on aperiodic order", "qclab"};
  app.require_subcommand(1, 1);
  app.set_version_flag("--version", QCLAB_VERSION);

  struct Slot {
    const Command* cmd;
    CLI::App* sub;
    std::vector<Param> params;
    std::string out, manifest;
    std::uint64_t seed = 1;
  };
  std::vector<Slot> slots;
  slots.reserve(commands().size());
  for (const auto& c : commands()) {
    slots.push_back({&c, nullptr, c.params, c.name + "." + c.extension, "", 1});
    auto& s = slots.back();
    s.sub = app.add_subcommand(c.name, c.help);
    for (auto& p : s.params) s.sub->add_option("--" + p.name, p.value, p.help)->capture_default_str();
    s.sub->add_option("--seed", s.seed, "Seed for every random choice")->capture_default_str();
    s.sub->add_option("--out", s.out, "Primary output file")->capture_default_str();
    s.sub->add_option("--manifest", s.manifest, "Manifest path (default: <out>.manifest.json)");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return is_help(e) ? code : 1;
  }

  for (auto& s : slots) {
    if (!s.sub->parsed()) continue;
    Run run(Args(s.params));
    run.seed = s.seed;
    run.out = s.out;
    run.precision["float"] = "binary64";
    run.precision["highprec_unit_roundoff"] = HighPrec::kUnitRoundoff;
    try {
      s.cmd->body(run);
      nlohmann::ordered_json m;
      m["subcommand"] = s.cmd->name;
      m["params"] = nlohmann::ordered_json::object();
      for (const auto& p : s.params) m["params"][p.name] = p.value;
      m["seed"] = s.seed;
      m["precision"] = run.precision;
      m["version"] = QCLAB_VERSION;
      m["inputs"] = nlohmann::ordered_json::array();
      for (const auto& path : run.inputs) m["inputs"].push_back({{"path", path}, {"sha256", sha256_hex(read_file(path))}});
      m["outputs"] = nlohmann::ordered_json::array();
      for (const auto& [path, bytes] : run.outputs) {
        write_file(path, bytes);
        m["outputs"].push_back({{"path", path}, {"sha256", sha256_hex(bytes)}});
        out << path << '\n';
      }
      m["summary"] = run.summary;
      write_file(s.manifest.empty() ? s.out + ".manifest.json" : s.manifest, m.dump(2) + "\n");
      return 0;
    } catch (const InputError& e) {
      err << "input error: " << e.what() << '\n';
      return 1;
    } catch (const NumericError& e) {
      err << "numeric error: " << e.what() << '\n';
      return 2;
    } catch (const ResourceError& e) {
      err << "resource error: " << e.what() << '\n';
      return 2;
    }
  }
  return 1;
}

}  // namespace qclab::cli
