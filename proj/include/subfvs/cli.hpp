#pragma once

#include <string>
#include <vector>

namespace subfvs {

// placeholder; full implementation lands with the io module
inline int run_cli(const std::vector<std::string>& args) {
    (void)args;
    return 0;
}

} // namespace subfvs
