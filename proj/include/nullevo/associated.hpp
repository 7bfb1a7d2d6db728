#pragma once

// Null curves built from a pseudo-arc parameterized curve: Bertrand mates,
// common-binormal partners, binormal-directional curves and the flattening
// to a tau = 0 helix.

#include <map>
#include <optional>
#include <string>

#include "nullevo/null_curve.hpp"
#include "nullevo/scalar_fn.hpp"

namespace nullevo {

struct AssociationReport {
  std::optional<NullCurve> partner;  // absent when the construction is infeasible
  SampledFn beta;                    // s_bar = beta(s)
  bool feasible = true;
  std::map<std::string, double> scalars;
  std::map<std::string, SampledFn> functions;
  std::map<std::string, double> residuals;
};

/// eps - N / tau for constant nonzero tau (max - min <= 1e-4 (1 + |mean|)).
AssociationReport bertrand_mate(const NullCurve& eps);

/// Partner eps + v B with 1/v = 1/v_s0 - (1/2) int_{s0} tau^2, s0 the first
/// node of the torsion grid. Feasible when a0^2 v^4 = +-(1 + v tau') holds for
/// a constant a0^2 to 1e-4 relative; `sign` picks the sign of a0.
/// Infeasibility is reported, not thrown.
AssociationReport common_binormal_partner(const NullCurve& eps, double v_s0, int sign = +1);

/// Tangent B(s) reparameterized by beta' = |tau|; tau must not vanish.
AssociationReport binormal_directional(const NullCurve& eps);

/// W(lambda(s)) = lambda'(s) T(s) with S(lambda) = -tau, lambda normalized at
/// s0; the domain ends before the first pole of lambda.
AssociationReport flatten_to_helix(const NullCurve& eps, double s0);

}  // namespace nullevo
