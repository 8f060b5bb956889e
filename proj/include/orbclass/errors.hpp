#pragma once

#include <stdexcept>
#include <string>

namespace orbclass {

/// Raised when user-supplied data fails a documented precondition.
/// Maps to CLI exit code 1.
class validation_error : public std::runtime_error {
public:
    enum class code {
        mixed_or_zero_weights,
        zero_vector,
        order_budget_exceeded,
        incomplete_point_set,
        non_proportional_weights,
        profile_sum_mismatch,
        degenerate_fixed_point,
        zero_character,
        schema,
        bad_argument,
    };

    validation_error(code c, std::string msg)
        : std::runtime_error(std::move(msg)), code_(c) {}

    code kind() const noexcept { return code_; }

    /// Stable identifier used in CLI error reports.
    const char* name() const noexcept {
        switch (code_) {
        case code::mixed_or_zero_weights:   return "MixedOrZeroWeights";
        case code::zero_vector:             return "ZeroVector";
        case code::order_budget_exceeded:   return "OrderBudgetExceeded";
        case code::incomplete_point_set:    return "AIncomplete";
        case code::non_proportional_weights: return "NonProportionalWeights";
        case code::profile_sum_mismatch:    return "ProfileSumMismatch";
        case code::degenerate_fixed_point:  return "DegenerateFixedPoint";
        case code::zero_character:          return "ZeroCharacter";
        case code::schema:                  return "Schema";
        case code::bad_argument:            return "BadArgument";
        }
        return "Unknown";
    }

private:
    code code_;
};

/// Raised when an internal consistency assertion fails (a division that must
/// be exact leaves a remainder, or two independent computation routes
/// disagree). Maps to CLI exit code 2. Seeing one of these means a bug, not
/// bad input.
class internal_error : public std::logic_error {
public:
    explicit internal_error(std::string msg) : std::logic_error(std::move(msg)) {}
};

/// Raised by exact_divide when the divisor does not divide the dividend.
class nonzero_remainder_error : public internal_error {
public:
    explicit nonzero_remainder_error(std::string msg)
        : internal_error(std::move(msg)) {}
};

} // namespace orbclass
