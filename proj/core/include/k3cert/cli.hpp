#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace k3cert::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInputError = 1;
inline constexpr int kExitInconclusive = 2;

/// The whole command-line surface, callable in-process. `args` excludes the
/// program name. Honors the K3CERT_SEARCH_CAP environment variable.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace k3cert::cli
