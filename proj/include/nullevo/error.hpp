#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace nullevo {

/// Failure categories. The CLI maps input-side codes to exit status 2 and
/// numerical ones to exit status 3.
enum class ErrorCode {
  too_few_samples,
  out_of_range,
  invalid_argument,
  irregular_curve,
  degenerate,      // vanishing k, k', tau, df/ds, ... where the theory needs it nonzero
  singularity,     // ODE right-hand side failed or produced non-finite values
  invalid_frame,
  constraint_violation,
  hypothesis,      // a theorem's hypothesis does not hold for this input
  pole,
};

const char* to_string(ErrorCode code);

/// True for codes caused by bad caller input rather than by the geometry.
bool is_input_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, std::optional<double> where = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  /// Parameter value (or node index) at which the failure was detected, if any.
  std::optional<double> where() const noexcept { return where_; }

 private:
  ErrorCode code_;
  std::optional<double> where_;
};

/// Rejected closed-form parameters; carries the constraint residual.
class ConstraintViolation : public Error {
 public:
  ConstraintViolation(const std::string& what, double residual)
      : Error(ErrorCode::constraint_violation, what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Absolute threshold for every "nonvanishing" predicate in the library.
inline constexpr double tol_degenerate = 1e-9;

}  // namespace nullevo
