#pragma once

namespace ncb {

/// Entry point shared by the ncbsar tool and the CLI tests.
/// Exit codes: 0 success, 2 usage error, 1 runtime error.
int cli_main(int argc, const char* const* argv);

}  // namespace ncb
