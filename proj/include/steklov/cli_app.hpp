#pragma once

namespace steklov {

/// Entry point behind the `steklov` binary. Returns the process exit code:
/// 0 success, 2 invalid input, 3 resource cap exceeded, 4 internal
/// invariant violation.
int run_cli(int argc, const char* const* argv);

} // namespace steklov
