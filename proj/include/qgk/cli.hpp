#ifndef QGK_CLI_HPP
#define QGK_CLI_HPP

#include <exception>
#include <iosfwd>
#include <string>
#include <vector>

namespace qgk {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInvalid = 1;
inline constexpr int kExitInvariant = 2;

// args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Prints the error and returns 1 (bad input, capacity) or 2 (invariant).
int exit_code_for(std::exception_ptr error, std::ostream& err);

}  // namespace qgk

#endif  // QGK_CLI_HPP
