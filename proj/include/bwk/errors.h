#ifndef BWK_ERRORS_H_
#define BWK_ERRORS_H_

#include <stdexcept>
#include <string>

namespace bwk {

// Malformed input values: out-of-range payoffs, bad distributions, etc.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what)
      : std::invalid_argument(what) {}
};

// Inconsistent or unusable configuration (zero rho, unknown generator...).
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what)
      : std::invalid_argument(what) {}
};

}  // namespace bwk

#endif  // BWK_ERRORS_H_
