#pragma once

namespace multinet {

// Entry point behind the `multinet` executable: subcommands generate,
// evaluate and sweep.  Returns the process exit code (0 success, 2 invalid
// input, 3 I/O failure).
int cli_main(int argc, char** argv);

}  // namespace multinet
