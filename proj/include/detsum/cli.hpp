#pragma once

#include <string>
#include <vector>

namespace detsum {

// Exit codes: 0 ok, 2 usage, 3 MISMATCH verdict, 4 resource budget exceeded,
// 1 other errors.
int cli_main(const std::vector<std::string>& args);

}  // namespace detsum
