#pragma once

namespace exl {

/// Entry point for the `exl` tool. Returns the process exit code:
/// 0 success or all checks passed, 1 a check failed, 2 usage or input error.
int run_cli(int argc, char** argv);

}  // namespace exl
