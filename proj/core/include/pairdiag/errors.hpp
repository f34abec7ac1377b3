#pragma once

#include <stdexcept>
#include <string>

namespace pairdiag {

// Input data failed validation: bad file, ragged row, out-of-range value.
// Carries a human-readable location (row/column) where applicable.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A statistic is undefined on this input: zero paired variance, empty
// discordance, fewer than two clusters. Distinct from ValidationError so the
// CLI can map it to its own exit code.
class DegeneracyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace pairdiag
