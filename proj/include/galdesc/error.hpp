#pragma once

#include <stdexcept>
#include <string>

namespace galdesc {

// Domain failure carrying a stable machine-readable code ("NotSaturated",
// "OutsideWeightCone", ...). The CLI maps these to exit status 1.
class Error : public std::runtime_error {
 public:
  Error(std::string code, std::string detail)
      : std::runtime_error(code + ": " + detail),
        code_(std::move(code)),
        detail_(std::move(detail)) {}

  const std::string& code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string code_;
  std::string detail_;
};

}  // namespace galdesc
