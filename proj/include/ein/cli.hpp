#pragma once

namespace ein::cli {

/// Entry point of the einsim command-line tool. Returns the process exit
/// code: 0 on success, 1 on usage errors, 2 on runtime failures (including
/// failed verify checks).
int run(int argc, const char* const* argv);

}  // namespace ein::cli
