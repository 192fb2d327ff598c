#pragma once

namespace kdc {

// Entry point behind the kdclique binary; returns the process exit code
// (0 success, 1 domain error, 2 usage error).
int cli_main(int argc, const char* const* argv);

} // namespace kdc
