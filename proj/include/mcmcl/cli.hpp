#pragma once

namespace mcmcl {

// Exit codes: 0 success, 1 usage error, 2 data or configuration error,
// 3 unreachable cluster target under --strict.
int cli_main(int argc, char** argv);

}  // namespace mcmcl
