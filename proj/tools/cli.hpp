#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "qclab/core/highprec.hpp"

namespace qclab::cli {

struct Param {
  std::string name;
  std::string value;  // default, then the parsed text
  std::string help;
};

/// Typed access to a subcommand's textual parameters. Conversion failures
/// throw InputError naming the option.
class Args {
 public:
  explicit Args(std::vector<Param> params) : params_(std::move(params)) {}

  const std::string& text(const std::string& name) const;
  HighPrec real(const std::string& name) const;
  double number(const std::string& name) const;
  std::int64_t integer(const std::string& name) const;
  std::vector<double> numbers(const std::string& name) const;
  /// Value must be one of `choices`.
  const std::string& choice(const std::string& name, const std::vector<std::string>& choices) const;
  const std::vector<Param>& params() const { return params_; }

 private:
  const Param& find(const std::string& name) const;
  std::vector<Param> params_;
};

struct Run {
  explicit Run(Args a) : args(std::move(a)) {}

  Args args;
  std::uint64_t seed = 1;
  std::string out;
  nlohmann::ordered_json precision = nlohmann::ordered_json::object();
  nlohmann::ordered_json summary = nlohmann::ordered_json::object();
  std::vector<std::pair<std::string, std::string>> outputs;  // path, bytes
  std::vector<std::string> inputs;

  /// Primary output goes to `out`; extra outputs insert `suffix` before its extension.
  void emit(const std::string& bytes, const std::string& suffix = "");
  std::string read_input(const std::string& path);
};

struct Command {
  std::string name;
  std::string help;
  std::vector<Param> params;
  std::function<void(Run&)> body;
  std::string extension = "csv";
};

const std::vector<Command>& commands();

/// Parses `args` (without the program name), runs the subcommand, writes its
/// outputs and a JSON manifest. Exit code 0 on success, 1 on input errors and
/// usage errors, 2 on numeric or resource failures.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qclab::cli
