#ifndef QGK_VERIFY_HPP
#define QGK_VERIFY_HPP

#include <string>
#include <vector>

#include "qgk/quiver.hpp"

namespace qgk {

enum class Outcome { kPass, kFail, kSkip };
std::string to_string(Outcome o);

struct PropertyResult {
  std::string name;
  Outcome outcome;
  std::string detail;  // offending d or skip reason
};

struct VerifyOptions {
  int workers = 1;
};

// The invariant suite for one quiver up to total degree N.
std::vector<PropertyResult> verify_quiver(const Quiver& q, int bound, const VerifyOptions& options = {});

}  // namespace qgk

#endif  // QGK_VERIFY_HPP
