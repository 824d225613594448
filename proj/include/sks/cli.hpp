#pragma once

#include <iosfwd>
#include <memory>

#include "sks/modal.hpp"

namespace sks {

// A parsed model file: signature, ground structure, named sentences,
// universe seeds and run configuration.
struct Model {
  std::unique_ptr<SentenceEnv> env = std::make_unique<SentenceEnv>();
  SupervaluationStructure structure;
  std::vector<FormulaId> seeds;  // named sentences first, then `seed` lines
  unsigned depth = 1;
  std::size_t cap = 4000;
  std::size_t y_cap = 50000;
  std::optional<Admissibility> cond;
  std::optional<std::size_t> budget;
  std::string origin;  // file name as given
  std::string digest;  // FNV-1a of the file text
};

Model parse_model(std::string_view text, const std::string& origin = "<input>");
Model load_model(const std::string& path);

std::string fnv1a_hex(std::string_view text);

enum class Format : std::uint8_t { Text, Record };

struct CommandOptions {
  std::string command;
  std::string model;
  std::vector<std::string> args;  // formula / sequent operands
  std::optional<std::string> cond;
  std::optional<unsigned> depth;
  std::optional<std::size_t> budget;
  bool trace = false;
  bool modal = false;
  Format format = Format::Text;
  std::string logic = "n3";     // prove
  bool identity = false;        // prove
  bool tree = false;            // prove
  std::optional<std::string> curry;   // prove: derivation for a named sentence
  std::optional<std::string> result;  // saved fixpoint record
  std::optional<std::string> world, interp;
  std::vector<std::string> gamma;     // dedthm premises
  bool serial = false;
};

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kInputError = 2, kCollapse = 3 };

// Runs one command; the report goes to `out`, diagnostics to `err`.
int run_command(const CommandOptions& opts, std::ostream& out, std::ostream& err);

// Strips the timing field from a report so two runs can be compared.
std::string strip_timing(std::string_view report);

}  // namespace sks
