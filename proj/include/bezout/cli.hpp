#pragma once

// Command-line front end: option parsing, command dispatch and rendering.

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "bezout/parser.hpp"
#include "bezout/syzygy.hpp"

namespace bezout::cli {

enum class Command { Gb, Reduce, Member, Syz, Resolve };
enum class Format { Text, Json };

struct Options {
  Command command = Command::Gb;
  std::string target;  // reduce, member
  Format format = Format::Text;
  bool trace = false;
  bool no_pseudo_reduce = false;
  bool valuation_division = false;
  bool quotient = false;
  bool unsafe_order = false;
  std::size_t max_levels = 0;
  std::string order;  // "lex:V1,V2,..."; empty keeps the file's order
};

// A printed vector literal together with the value it was printed from.
struct Payload {
  std::string text;
  ModuleVector value;
};

struct Document {
  nlohmann::ordered_json json;
  std::string text;
  std::vector<Payload> payloads;
  int exit_code = 0;
};

enum ExitCode { kOk = 0, kUsage = 2, kInternal = 3 };

// Throws UsageError for bad flag combinations; mathematical failures
// propagate as InvariantViolation, GuardExhausted or ResolutionIncomplete.
Document run_command(const Options& options, const ProblemFile& problem, const TraceSink& trace = {});

// Leading coefficient made canonical by a unit; zero stays zero.
ModuleVector normalized(const ModuleVector& v);

// Whole program: parses argv, reads the file ("-" for stdin), writes the
// document to out and diagnostics and trace to err.  Returns the exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace bezout::cli
