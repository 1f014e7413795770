#ifndef CCG_ERRORS_HPP
#define CCG_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ccg {

// Instance shape the solvers cannot handle (e.g. three or more contests
// without monotonically decreasing utility).
class UnsupportedModelError : public std::runtime_error {
 public:
  explicit UnsupportedModelError(const std::string& what)
      : std::runtime_error(what) {}
};

// Exhaustive search would exceed the configured profile/assignment cap.
class CapExceededError : public std::runtime_error {
 public:
  explicit CapExceededError(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace ccg

#endif  // CCG_ERRORS_HPP
