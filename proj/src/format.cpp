#include "bifbm/format.hpp"

#include <cstdio>

namespace bifbm {

std::string format_real(double x) {
    char buf[32];
    const int n = std::snprintf(buf, sizeof buf, "%.17g", x);
    return std::string(buf, static_cast<std::size_t>(n));
}

}  // namespace bifbm
