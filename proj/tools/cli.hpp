#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace skewgeom::cli {

/// Entry point of the batch front-end.  argv excludes the program name.
/// Returns 0 on success, 2 on input/usage errors, 3 on mathematical errors
/// (degenerate basis, point not on curve, not second order, ...).
int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err);

}  // namespace skewgeom::cli
