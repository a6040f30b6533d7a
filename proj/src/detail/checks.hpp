#pragma once

#include <sstream>
#include <stdexcept>

namespace abar::detail {

// Probabilities are clamped to [0, 1]; a raw value outside
// [-1e-12, 1 + 1e-12] means a formula bug rather than rounding. Checked when
// the library is built with ABAR_INVARIANT_CHECKS.
inline void check_probability_excursion([[maybe_unused]] double raw,
                                        [[maybe_unused]] const char* op) {
#ifdef ABAR_INVARIANT_CHECKS
  if (!(raw >= -1e-12 && raw <= 1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << op << ": raw probability " << raw << " outside [0, 1]";
    throw std::logic_error(msg.str());
  }
#endif
}

}  // namespace abar::detail
