#ifndef ECFP_ERRORS_HPP
#define ECFP_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace ecfp {

// Invariant violation inside a running process. Indicates a bug, not bad
// input; runs abort when this is thrown.
class internal_error : public std::logic_error {
 public:
  explicit internal_error(const std::string& what) : std::logic_error(what) {}
};

// Work-budget exceeded (enumeration too large for an exact check).
class resource_error : public std::runtime_error {
 public:
  explicit resource_error(const std::string& what) : std::runtime_error(what) {}
};

// Aggregated validation failure for a config or data file. Carries every
// problem found, each prefixed with the offending field path.
class config_error : public std::runtime_error {
 public:
  explicit config_error(std::vector<std::string> errors)
      : std::runtime_error(join(errors)), errors_(std::move(errors)) {}

  const std::vector<std::string>& errors() const { return errors_; }

 private:
  static std::string join(const std::vector<std::string>& errors) {
    std::string out;
    for (const auto& e : errors) {
      if (!out.empty()) out += "; ";
      out += e;
    }
    return out;
  }

  std::vector<std::string> errors_;
};

}  // namespace ecfp

#endif  // ECFP_ERRORS_HPP
