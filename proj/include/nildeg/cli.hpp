#pragma once

// Command-line front end. Exit codes: 0 success, 1 verification failure,
// 2 input error.

#include <iosfwd>
#include <string>
#include <vector>

#include "nildeg/fields.hpp"

namespace nildeg {

/// "Q" or "0", a prime p, a prime power p^k (k <= 3) or a JSON descriptor.
Field parse_field_spec(const std::string& spec);

/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nildeg
