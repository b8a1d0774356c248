#ifndef MAXMIN_ERRORS_HPP
#define MAXMIN_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace maxmin {

/// Requested operation exceeds a configured capability limit (e.g. vertex
/// enumeration above the dimension cap). Callers may catch this and fall
/// back to another method.
class CapabilityError : public std::runtime_error {
 public:
  explicit CapabilityError(const std::string& what) : std::runtime_error(what) {}
};

/// Numerical failure inside an iterative routine (pivot limit, lost
/// feasibility). Not expected on well-scaled inputs.
class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input file. Message carries field/line context.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace maxmin

#endif  // MAXMIN_ERRORS_HPP
