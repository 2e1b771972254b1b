#pragma once

#include <iosfwd>
#include <string>

namespace wnlse {

// Invariant suite behind the `selftest` CLI subcommand. Thresholds come from
// the checked-in tolerance file so pilot-derived values stay auditable.
// Returns the number of failed checks (0 = success).
int run_selftest(const std::string& tolerance_path, std::ostream& out);

}  // namespace wnlse
