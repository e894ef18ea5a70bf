// Deterministic number formatting for report and theory files. Ratios are
// rounded to 4 decimals with integer arithmetic (round half away from zero),
// so the printed value never depends on floating-point rounding of the
// quotient.

#pragma once

#include <cstdint>
#include <string>

namespace relex {

// num/den rendered with exactly 4 decimals; den must be > 0.
std::string format_frac4(std::int64_t num, std::int64_t den);

// double rendered with exactly 4 decimals (printf %.4f).
std::string fmt4(double v);

}  // namespace relex
