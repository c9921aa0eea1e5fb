#pragma once

#include <iosfwd>

namespace wedge {

// Entry point of the wedgehull tool. Returns 0 on success, 1 on runtime or
// verification failure and 2 on usage errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace wedge
