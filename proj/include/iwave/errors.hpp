#ifndef IWAVE_ERRORS_HPP
#define IWAVE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace iwave {

// Every failure mode in the library carries a short stable tag (used in CSV
// error columns and CLI diagnostics) plus a human-readable message.
//
// Two families:
//   ValidationError  -- the request itself is malformed or outside the
//                       domain of the operation (bad parameters, excluded
//                       angles, wrong scenario...).  CLI exit code 2.
//   NumericalError   -- the request was well-posed but the computation
//                       could not be completed (no convergence, degenerate
//                       pivot, step underflow...).  CLI exit code 3.

class Error : public std::runtime_error {
public:
    Error(std::string tag, const std::string& msg)
        : std::runtime_error(tag + ": " + msg), tag_(std::move(tag)) {}
    const std::string& tag() const noexcept { return tag_; }

private:
    std::string tag_;
};

class ValidationError : public Error {
public:
    using Error::Error;
};

class NumericalError : public Error {
public:
    using Error::Error;
};

// Validation-family tags.
inline constexpr const char* err_invalid_params       = "invalid-params";
inline constexpr const char* err_excluded_angle       = "excluded-angle";
inline constexpr const char* err_degenerate_direction = "degenerate-direction";
inline constexpr const char* err_unbounded_branch     = "unbounded-branch";
inline constexpr const char* err_not_double           = "not-double";
inline constexpr const char* err_outside_scenario     = "outside-scenario";
inline constexpr const char* err_division_degenerate  = "division-degenerate";

// Numerical-family tags.
inline constexpr const char* err_no_convergence         = "no-convergence";
inline constexpr const char* err_no_root                = "no-root";
inline constexpr const char* err_step_failure           = "step-failure";
inline constexpr const char* err_no_admissible_interval = "no-admissible-interval";
inline constexpr const char* err_sign_convention        = "sign-convention-violated";
inline constexpr const char* err_solvability_degenerate = "solvability-degenerate";
inline constexpr const char* err_determinant_zero       = "determinant-zero";
inline constexpr const char* err_inconclusive           = "inconclusive";

} // namespace iwave

#endif
