#pragma once

// Curve specifications accepted by the command-line tool.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "nullevo/laguerre.hpp"
#include "nullevo/null_curve.hpp"
#include "nullevo/plane.hpp"

namespace nullevo::spec {

enum class Kind { builtin, samples, potential };

struct CurveSpec {
  Kind kind = Kind::builtin;
  std::string name;                         // builtin curve or potential family
  nlohmann::json params = nlohmann::json::object();
  std::optional<Grid> grid;
  std::string curve = "plane";              // samples: plane | null
  std::string param = "generic";            // samples: generic | arclength | pseudo_arc
  std::vector<std::vector<double>> points;  // samples
  std::vector<double> f;                    // potential samples
  std::optional<double> s0, b0, s_first;
};

/// Builtin name, inline JSON object, or path to a JSON file.
CurveSpec parse(const std::string& arg);
/// `base` resolves relative "file" entries.
CurveSpec parse(const nlohmann::json& j, const std::filesystem::path& base = {});

std::vector<std::string> builtin_names();

/// A spec turned into data. Exactly one of plane, null, potential is set.
struct Curve {
  std::string name;
  std::optional<PlaneCurve> plane;
  std::optional<NullCurve> null;
  std::optional<PotentialFunction> potential;
  double s_first = 0.0;  // pseudo-arc value at a plane curve's first node
};

Curve resolve(const CurveSpec& s);

/// Pseudo-arc null curve: L-evolute of a plane curve, reconstruction of a
/// potential, or the curve itself (reparameterized when generic).
NullCurve as_null(const Curve& c);
/// Plane curve: the curve itself, or the plane curve of a potential or a null curve.
PlaneCurve as_plane(const Curve& c);
PotentialFunction as_potential(const Curve& c);
SampledFn torsion_of(const Curve& c);

}  // namespace nullevo::spec
