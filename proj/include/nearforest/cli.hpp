#pragma once

#include <iosfwd>

namespace nearforest {

// Exit codes: 0 completed, 2 usage or precondition error, 3 parse error,
// 4 internal invariant violation. JSON goes to out, diagnostics to err.
int cli_dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace nearforest
