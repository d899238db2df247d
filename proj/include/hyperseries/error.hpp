#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hyperseries {

/// Failure modes raised by the library. Each maps onto one of the three
/// exit-code classes used by the command-line tool (see error_class()).
enum class Errc {
    invalid_argument,
    non_finite_input,
    center_mismatch,
    near_zero_constant,
    insufficient_order,
    domain_error,
    out_of_range,
    step_too_large,
    degenerate_solve,
    no_estimate,
    wrong_center,
    singular_evaluation,
    rejected_initial_condition,
    pole,
    branch,
    invalid_initial,
    inconsistent_parameters,
    out_of_radius,
    integration_failure,
};

enum class ErrorClass { invalid_input = 2, contract_violation = 3, numeric_failure = 4 };

constexpr std::string_view to_string(Errc e) noexcept
{
    switch (e) {
    case Errc::invalid_argument: return "invalid-argument";
    case Errc::non_finite_input: return "non-finite-input";
    case Errc::center_mismatch: return "center-mismatch";
    case Errc::near_zero_constant: return "near-zero-constant-term";
    case Errc::insufficient_order: return "insufficient-order";
    case Errc::domain_error: return "domain-error";
    case Errc::out_of_range: return "out-of-range";
    case Errc::step_too_large: return "step-too-large";
    case Errc::degenerate_solve: return "degenerate-solve";
    case Errc::no_estimate: return "no-estimate";
    case Errc::wrong_center: return "wrong-center";
    case Errc::singular_evaluation: return "singular-evaluation";
    case Errc::rejected_initial_condition: return "rejected-initial-condition";
    case Errc::pole: return "pole";
    case Errc::branch: return "branch";
    case Errc::invalid_initial: return "invalid-initial";
    case Errc::inconsistent_parameters: return "inconsistent-parameters";
    case Errc::out_of_radius: return "out-of-radius";
    case Errc::integration_failure: return "integration-failure";
    }
    return "unknown";
}

constexpr ErrorClass error_class(Errc e) noexcept
{
    switch (e) {
    case Errc::degenerate_solve:
    case Errc::singular_evaluation:
    case Errc::pole:
    case Errc::integration_failure:
    case Errc::no_estimate:
        return ErrorClass::numeric_failure;
    default:
        return ErrorClass::invalid_input;
    }
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string &what) : std::runtime_error(what), code_(code) {}

    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void raise(Errc code, const std::string &what)
{
    throw Error(code, std::string(to_string(code)) + ": " + what);
}

} // namespace hyperseries
