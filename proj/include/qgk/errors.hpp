#ifndef QGK_ERRORS_HPP
#define QGK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qgk {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller supplied something malformed: bad file, mismatched quivers,
// violated preconditions.
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// A computation would exceed a documented size limit.
class CapacityExceeded : public Error {
 public:
  using Error::Error;
};

// An internal mathematical assertion failed (positivity, integrality,
// exact division, reconstruction). `where` names the offending
// dimension vector when there is one.
class InvariantViolation : public Error {
 public:
  InvariantViolation(const std::string& what, std::string where = {})
      : Error(where.empty() ? what : what + " at d=" + where),
        where_(std::move(where)) {}
  const std::string& where() const { return where_; }

 private:
  std::string where_;
};

}  // namespace qgk

#endif  // QGK_ERRORS_HPP
