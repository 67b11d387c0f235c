#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace pin2 {

/* 0 = success, 2 = invariant failure, 3 = bad input */
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pin2
