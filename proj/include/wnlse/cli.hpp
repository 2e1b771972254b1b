#pragma once

namespace wnlse {

// Entry point behind the wnlse binary; exposed so tests can drive the CLI
// in-process. Exit codes: 0 success, 1 usage/config error, 2 numerical
// failure (blow-up or NaN), 3 selftest failure.
int cli_main(int argc, const char* const* argv);

}  // namespace wnlse
