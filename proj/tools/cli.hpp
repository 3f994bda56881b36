#pragma once

#include <ostream>

namespace vem::cli {

/// Entry point shared by the `vem` executable and the tests.
/// Returns 0 on success, 1 on solver/validation/I-O failure and 2 on a
/// command-line usage error.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace vem::cli
