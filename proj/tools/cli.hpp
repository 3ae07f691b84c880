#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace galdesc::cli {

using json = nlohmann::json;

struct CommandSpec {
  std::string subcommand;
  std::optional<std::string> input_path;  // "-" reads standard input
  std::map<std::string, std::string> flags;
  // Document text supplied directly (tests); takes precedence over input_path.
  std::optional<std::string> input_text;
};

struct DispatchResult {
  int exit_code = 0;
  std::string output;  // complete JSON text, newline terminated
};

const std::vector<std::string>& subcommands();

// Never throws; every path yields valid JSON.
DispatchResult dispatch(const CommandSpec& spec);

struct ValidationError {
  std::string code;
  std::string path;  // JSON pointer
  std::string message;
};

struct Validation {
  json normalized;
  std::vector<ValidationError> errors;
  bool ok() const { return errors.empty(); }
};

// Schema and invariant checks for input documents. Numbers must be decimal
// strings; integers are re-rendered canonically in the normalized copy.
Validation validate_input(const json& doc);

std::string serialize(const json& doc);

// Built-in documents: downgrade instances, cocycle and divisor examples.
std::optional<json> example_document(const std::string& name);

// argv front end used by the executable.
int run(int argc, char** argv);

}  // namespace galdesc::cli
