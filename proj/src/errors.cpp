#include "colorobs/errors.hpp"

namespace colorobs {

namespace {

std::string join_violations(const std::vector<std::string>& violations) {
  std::string msg = "invalid graph";
  for (std::size_t i = 0; i < violations.size(); ++i) msg += (i == 0 ? ": " : "; ") + violations[i];
  return msg;
}

}  // namespace

ValidationError::ValidationError(std::vector<std::string> violations)
    : Error(join_violations(violations)), violations_(std::move(violations)) {}

ParseError::ParseError(const std::string& message, std::size_t line, std::size_t column)
    : Error(line == 0 ? message : "line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

}  // namespace colorobs
