#pragma once

#include <string>

namespace bifbm {

/// Decimal rendering with 17 significant digits ("%.17g"); round-trips every double.
[[nodiscard]] std::string format_real(double x);

}  // namespace bifbm
