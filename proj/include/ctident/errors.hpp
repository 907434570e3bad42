#ifndef CTIDENT_ERRORS_HPP
#define CTIDENT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ctident {

/// Caller passed arguments that violate a documented precondition.
class usage_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computation exceeded a configured budget (term cap, exponent range,
/// arity). Carries the bound that was hit so callers can report it.
class resource_error : public std::runtime_error {
 public:
  resource_error(const std::string& what, std::size_t bound)
      : std::runtime_error(what + " (bound: " + std::to_string(bound) + ")"),
        bound_(bound) {}

  std::size_t bound() const noexcept { return bound_; }

 private:
  std::size_t bound_;
};

}  // namespace ctident

#endif  // CTIDENT_ERRORS_HPP
