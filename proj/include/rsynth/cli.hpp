#pragma once

#include <iosfwd>

namespace rsynth {

/// Entry point of the rsynth tool: run, batch, eval, generalize, problems.
/// Returns the process exit status.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace rsynth
