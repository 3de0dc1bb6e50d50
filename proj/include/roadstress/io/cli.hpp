#pragma once

#include <ostream>

namespace roadstress::io {

/// Entry point of the `roadstress` tool. Returns 0 on success, 1 on input
/// errors (including bad flags), 2 on internal invariant violations.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace roadstress::io
