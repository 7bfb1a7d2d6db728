#include <cmath>
#include <functional>
#include <optional>

#include "doctest.h"
#include "nullevo/associated.hpp"
#include "nullevo/error.hpp"
#include "nullevo/laguerre.hpp"
#include "support.hpp"

using namespace nullevo;

namespace {

NullCurve helix1(const Grid& g) {
  return oracle::null(g, [](double s) { return MinkVec3{std::cos(s), std::sin(s), s}; });
}

NullCurve spiral(const Grid& g) { return oracle::null(g, oracle::log_spiral_levolute); }

double interior_distance(const NullCurve& a, const std::function<MinkVec3(double)>& exact, std::size_t skip) {
  double d = 0.0;
  for (std::size_t i = skip; i + skip < a.size(); ++i)
    d = std::max(d, euclid_norm(a.points[i] - exact(a.grid.at(i))));
  return d;
}

template <class F>
std::optional<ErrorCode> code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("bertrand mate of e1") {
  const auto eps = helix1(Grid::over(0, 6, 1025));
  const auto rep = bertrand_mate(eps);
  REQUIRE(rep.partner);
  CHECK(sup_distance(*rep.partner,
                     oracle::null(eps.grid, [](double s) { return MinkVec3{-std::cos(s), -std::sin(s), s}; })) < 1e-6);
  CHECK(rep.scalars.at("tau") == doctest::Approx(-0.5).epsilon(1e-8));
  CHECK(rep.residuals.at("torsion") < 1e-4);
  CHECK(rep.residuals.at("normal_lines") < 1e-5);
  CHECK(rep.residuals.at("potential") < 1e-5);
}

TEST_CASE("bertrand potentials on the sqrt(3) sin s + 2 family") {
  const auto p = constant_torsion_potential(-0.5, 0.0, std::sqrt(3.0), 2.0, Grid::over(0.5, 6, 2049), 1.0);
  const auto eps = reconstruct(p).epsilon;
  const auto rep = bertrand_mate(eps);
  CHECK(rep.residuals.at("potential") < 1e-5);
  const auto& fb = rep.functions.at("f_bar");
  double d = 0.0;
  for (std::size_t i = geometry_trim; i + geometry_trim < fb.size(); ++i)
    d = std::max(d, std::abs(fb[i] - (-std::sqrt(3.0) * std::sin(fb.grid().at(i)) + 2)));
  CHECK(d < 1e-5);
  CHECK(constant_torsion_constraint(-0.5, 0.0, -std::sqrt(3.0), 2.0) == doctest::Approx(0.0));
}

TEST_CASE("bertrand symmetry") {
  for (double tau : {-0.5, -2.0, 0.5}) {
    const auto eps = null_helix(tau, Grid::over(0.2, 2.2, 1025));
    const auto once = bertrand_mate(eps);
    const auto twice = bertrand_mate(*once.partner);
    CHECK(lorentz_registered_distance(eps, *twice.partner, 512) < 1e-4);
    CHECK(sup_distance(eps, *twice.partner) < 1e-4);
  }
}

TEST_CASE("bertrand rejects non-constant or zero torsion") {
  CHECK(code_of([] { bertrand_mate(null_helix(0.0, Grid::over(0, 2, 513))); }) == ErrorCode::hypothesis);
  CHECK(code_of([] { bertrand_mate(spiral(Grid::over(1, 3, 513))); }) == ErrorCode::hypothesis);
}

TEST_CASE("common binormal partner") {
  SUBCASE("constant nonzero torsion is infeasible") {
    const auto rep = common_binormal_partner(helix1(Grid::over(0, 4, 1025)), 1.0);
    CHECK_FALSE(rep.feasible);
    CHECK_FALSE(rep.partner);
    CHECK(rep.residuals.at("a0_squared_deviation") >= 1e-2);
    CHECK(rep.residuals.at("v_equation") < 1e-5);
  }
  SUBCASE("zero torsion") {
    const auto rep = common_binormal_partner(null_helix(0.0, Grid::over(0, 2, 1025)), 0.7);
    REQUIRE(rep.feasible);
    REQUIRE(rep.partner);
    CHECK(rep.residuals.at("binormal_lines") < 1e-6);
    CHECK(rep.residuals.at("v_equation") < 1e-5);
    // a0 = +-1/v(s0)^2, i.e. +-v0^2 with 1/v = v0 - ...
    CHECK(std::abs(rep.scalars.at("a0")) == doctest::Approx(1 / 0.49).epsilon(1e-6));
    const auto& v = rep.functions.at("v");
    CHECK(oracle::max_abs_diff(v, [](double) { return 0.7; }) < 1e-8);
    CHECK(verify_null(*rep.partner).passed);
    CHECK(rep.residuals.at("torsion") < 1e-4);
  }
  SUBCASE("sign flips a0") {
    const auto e = null_helix(0.0, Grid::over(0, 2, 513));
    CHECK(common_binormal_partner(e, 0.7, -1).scalars.at("a0") == doctest::Approx(-1 / 0.49));
  }
  SUBCASE("log spiral evolute") {
    const auto rep = common_binormal_partner(spiral(Grid::over(1, 3, 1025)), 0.5);
    CHECK(rep.residuals.at("v_equation") < 1e-5);
    CHECK(rep.residuals.count("a0_squared_deviation"));
  }
  SUBCASE("bad arguments") {
    const auto e = null_helix(0.0, Grid::over(0, 2, 513));
    CHECK(code_of([&] { common_binormal_partner(e, 0.0); }) == ErrorCode::invalid_argument);
    CHECK(code_of([&] { common_binormal_partner(e, 1.0, 2); }) == ErrorCode::invalid_argument);
  }
}

TEST_CASE("binormal directional") {
  SUBCASE("e1") {
    const auto rep = binormal_directional(helix1(Grid::over(0, 6, 1025)));
    CHECK(rep.residuals.at("torsion_product") < 1e-4);
    CHECK(rep.residuals.at("potential") < 1e-5);
    CHECK(oracle::max_abs_diff(rep.functions.at("f_bar"), [](double) { return 0.5; }) < 1e-6);
    CHECK(oracle::max_abs_diff(pseudo_torsion(*rep.partner), [](double) { return -2.0; }) < 1e-4);
  }
  SUBCASE("log spiral evolute") {
    const Grid g = Grid::over(1, 3, 2049);
    const auto rep = binormal_directional(spiral(g));
    CHECK(rep.residuals.at("torsion_product") < 1e-4);
    CHECK(oracle::max_abs_diff(rep.functions.at("f_bar"), [](double s) { return 5 / (4 * s); }) < 1e-4);
    // beta runs from the first torsion node, so s_bar = 5/(2s) = c - beta.
    const double c = 5 / (2 * rep.beta.grid().start);
    CHECK(oracle::max_abs_diff(rep.beta, [c](double s) { return c - 5 / (2 * s); }) < 1e-6);
    const auto fp = differentiate(rep.partner->component(2), 1, DiffScheme::smooth);
    double d = 0.0;
    for (std::size_t i = geometry_trim; i + geometry_trim < fp.size(); ++i)
      d = std::max(d, std::abs(std::abs(fp[i]) - (c - fp.grid().at(i)) / 2));
    CHECK(d < 1e-4);
  }
  SUBCASE("zero torsion") {
    CHECK(code_of([] { binormal_directional(null_helix(0.0, Grid::over(0, 2, 513))); }) == ErrorCode::degenerate);
  }
}

TEST_CASE("flatten to helix") {
  SUBCASE("e1") {
    const auto rep = flatten_to_helix(helix1(Grid::over(-2, 2, 1025)), 0.0);
    REQUIRE(rep.partner);
    CHECK(rep.residuals.at("torsion") < 1e-4);
    CHECK(rep.residuals.at("tangent_parallel") < 1e-8);
    CHECK(rep.residuals.at("third_derivative") < 1e-3);
    CHECK(rep.residuals.at("pseudo_arc") < 1e-6);
    // lambda = 2 tan(s/2)
    CHECK(oracle::max_abs_diff(rep.functions.at("lambda"), [](double s) { return 2 * std::tan(s / 2); }) < 1e-8);
  }
  SUBCASE("log spiral evolute") {
    const auto rep = flatten_to_helix(spiral(Grid::over(0.5, 2.5, 2049)), 1.0);
    CHECK(rep.residuals.at("torsion") < 1e-4);
    CHECK(rep.residuals.at("tangent_parallel") < 1e-8);
    CHECK(rep.residuals.at("third_derivative") < 1e-3);
  }
  SUBCASE("pole truncates the domain") {
    const auto rep = flatten_to_helix(helix1(Grid::over(-4, 4, 2049)), 0.0);
    CHECK(rep.scalars.at("truncated") == 1.0);
    CHECK(rep.scalars.at("s_stop") < std::acos(0.1) * 2);
    CHECK(rep.residuals.at("torsion") < 1e-4);
  }
  SUBCASE("zero torsion is kept") {
    const Grid g = Grid::over(-1, 1, 1025);
    const auto e = null_helix(0.0, g);
    const auto rep = flatten_to_helix(e, 0.0);
    CHECK(interior_distance(*rep.partner, [](double s) { return null_helix_at(0.0, s); }, 0) < 1e-6);
  }
}
