#include "nullevo/spec.hpp"

#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "nullevo/builtins.hpp"
#include "nullevo/error.hpp"

namespace nullevo::spec {

namespace {

struct Builtin {
  const char* name;
  Kind kind;
  double start, stop;
};

constexpr std::size_t default_count = 2049;

// Default grids keep every builtin away from u = 0 and inflections.
const Builtin builtins[] = {
    {"log_spiral", Kind::builtin, 1.0, 25.0},
    {"cornu", Kind::builtin, 0.5, 4.0},
    {"circle_involute", Kind::builtin, 0.5, 8.0},
    {"ellipse", Kind::builtin, 0.1, 1.4},
    {"helix_e1", Kind::builtin, 0.5, 4.5},
    {"helix_e2", Kind::builtin, 0.5, 4.5},
    {"helix_e3", Kind::builtin, 0.5, 4.5},
    {"log_spiral_evolute", Kind::builtin, 2.0, 10.0},
    {"half_s", Kind::potential, 0.5, 10.0},
    {"sqrt_s", Kind::potential, 0.5, 10.0},
    {"cornu_potential", Kind::potential, 1.0, 3.0},
    {"const_torsion_potential", Kind::potential, 0.5, 4.5},
};

const Builtin* find_builtin(const std::string& name) {
  for (const auto& b : builtins)
    if (name == b.name) return &b;
  return nullptr;
}

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::invalid_argument, "curve spec: " + what); }

Grid parse_grid(const nlohmann::json& g) {
  if (!g.is_object()) bad("grid must be {start, stop, count}");
  const double a = g.at("start").get<double>(), b = g.at("stop").get<double>();
  const auto n = g.at("count").get<std::size_t>();
  if (!(b > a)) bad("grid stop must exceed start");
  if (n < 64) bad("grid count must be at least 64");
  return Grid::over(a, b, n);
}

// Numeric rows of a CSV file; lines that do not start with a number are skipped.
std::vector<std::vector<double>> read_rows(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) bad("cannot read " + p.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const char c = line.front();
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' || c == '+' || c == '.')) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      try {
        row.push_back(std::stod(cell));
      } catch (const std::exception&) {
        bad("non-numeric cell '" + cell + "' in " + p.string());
      }
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

// Grid from a leading parameter column, which must be uniform.
Grid grid_from_column(const std::vector<std::vector<double>>& rows) {
  const std::size_t n = rows.size();
  if (n < 64) bad("at least 64 samples are needed");
  const Grid g = Grid::over(rows.front()[0], rows.back()[0], n);
  if (!(g.step > 0)) bad("parameter column must increase");
  for (std::size_t i = 0; i < n; ++i)
    if (std::abs(rows[i][0] - g.at(i)) > 1e-9 * g.step * static_cast<double>(n)) bad("parameter column is not uniform");
  return g;
}

double param(const CurveSpec& s, const char* key, double fallback) {
  return s.params.contains(key) ? s.params.at(key).get<double>() : fallback;
}

}  // namespace

std::vector<std::string> builtin_names() {
  std::vector<std::string> out;
  for (const auto& b : builtins) out.emplace_back(b.name);
  return out;
}

CurveSpec parse(const std::string& arg) {
  if (find_builtin(arg)) {
    nlohmann::json j{{"kind", find_builtin(arg)->kind == Kind::potential ? "potential" : "builtin"}, {"name", arg}};
    return parse(j);
  }
  if (!arg.empty() && arg.front() == '{') return parse(nlohmann::json::parse(arg));
  const std::filesystem::path p(arg);
  std::ifstream in(p);
  if (!in) bad("'" + arg + "' is neither a builtin nor a readable file");
  return parse(nlohmann::json::parse(in), p.parent_path());
}

CurveSpec parse(const nlohmann::json& j, const std::filesystem::path& base) {
  if (!j.is_object()) bad("expected a JSON object");
  CurveSpec s;
  const std::string kind = j.value("kind", "builtin");
  if (kind == "builtin") s.kind = Kind::builtin;
  else if (kind == "samples") s.kind = Kind::samples;
  else if (kind == "potential") s.kind = Kind::potential;
  else bad("unknown kind '" + kind + "'");

  if (j.contains("grid")) s.grid = parse_grid(j.at("grid"));
  if (j.contains("params")) s.params = j.at("params");
  if (j.contains("s0")) s.s0 = j.at("s0").get<double>();
  if (j.contains("b0")) s.b0 = j.at("b0").get<double>();
  if (j.contains("s_first")) s.s_first = j.at("s_first").get<double>();
  const auto file = [&](const char* key) { return base / j.at(key).get<std::string>(); };

  switch (s.kind) {
    case Kind::builtin: {
      s.name = j.value("name", "");
      const auto* b = find_builtin(s.name);
      if (!b || b->kind != Kind::builtin) bad("unknown builtin curve '" + s.name + "'");
      if (!s.grid) s.grid = Grid::over(b->start, b->stop, default_count);
      break;
    }
    case Kind::potential: {
      if (j.contains("f") || j.contains("file")) {
        std::vector<std::vector<double>> rows;
        if (j.contains("f")) {
          for (double v : j.at("f").get<std::vector<double>>()) s.f.push_back(v);
        } else {
          rows = read_rows(file("file"));
          if (!rows.empty() && rows.front().size() == 2) {
            if (!s.grid) s.grid = grid_from_column(rows);
            for (const auto& r : rows) s.f.push_back(r[1]);
          } else {
            for (const auto& r : rows) {
              if (r.size() != 1) bad("potential file rows must be 'f' or 's,f'");
              s.f.push_back(r[0]);
            }
          }
        }
        if (!s.grid) bad("potential samples need a grid");
        if (s.f.size() != s.grid->count) bad("potential sample count does not match the grid");
        if (!s.b0) bad("potential samples need b0");
      } else {
        s.name = j.value("name", j.value("builtin", ""));
        const auto* b = find_builtin(s.name);
        if (!b || b->kind != Kind::potential) bad("unknown potential family '" + s.name + "'");
        if (!s.grid) s.grid = Grid::over(b->start, b->stop, default_count);
      }
      break;
    }
    case Kind::samples: {
      s.curve = j.value("curve", "");
      s.param = j.value("param", "generic");
      if (s.param != "generic" && s.param != "arclength" && s.param != "pseudo_arc") bad("unknown param '" + s.param + "'");
      std::vector<std::vector<double>> rows;
      if (j.contains("points")) rows = j.at("points").get<std::vector<std::vector<double>>>();
      else if (j.contains("file")) rows = read_rows(file("file"));
      else bad("samples need 'points' or 'file'");
      if (rows.empty()) bad("no samples");
      const std::size_t w = rows.front().size();
      for (const auto& r : rows)
        if (r.size() != w) bad("ragged sample rows");
      std::size_t dim = s.curve == "plane" ? 2 : (s.curve == "null" ? 3 : 0);
      if (dim == 0) {
        dim = s.grid ? w : w - 1;
        if (dim != 2 && dim != 3) bad("cannot tell a plane curve from a null curve; set 'curve'");
        s.curve = dim == 2 ? "plane" : "null";
      }
      if (w == dim + 1) {
        if (!s.grid) s.grid = grid_from_column(rows);
        for (auto& r : rows) r.erase(r.begin());
      } else if (w != dim) {
        bad("sample rows have the wrong width");
      }
      if (!s.grid) bad("samples need a grid or a parameter column");
      if (rows.size() != s.grid->count) bad("sample count does not match the grid");
      if (s.curve == "plane" && s.param == "pseudo_arc") bad("pseudo_arc applies to null curves");
      if (s.curve == "null" && s.param == "arclength") bad("arclength applies to plane curves");
      s.points = std::move(rows);
      break;
    }
  }
  return s;
}

Curve resolve(const CurveSpec& s) {
  Curve c;
  c.name = s.name.empty() ? (s.kind == Kind::samples ? "samples" : "potential") : s.name;
  const Grid& g = *s.grid;
  if (s.kind == Kind::samples) {
    if (s.curve == "plane") {
      std::vector<Vec2> p;
      for (const auto& r : s.points) p.push_back({r[0], r[1]});
      c.plane.emplace(g, std::move(p), s.param == "arclength" ? PlaneParam::arclength : PlaneParam::generic, c.name);
    } else {
      std::vector<MinkVec3> p;
      for (const auto& r : s.points) p.push_back({r[0], r[1], r[2]});
      c.null.emplace(g, std::move(p), s.param == "pseudo_arc" ? NullParam::pseudo_arc : NullParam::generic, c.name);
    }
    c.s_first = s.s_first.value_or(s.curve == "null" && s.param == "pseudo_arc" ? g.start : 0.0);
    return c;
  }
  if (s.kind == Kind::potential) {
    if (s.name.empty()) {
      c.potential = make_potential(SampledFn(g, s.f, "f"), s.s0.value_or(g.start), *s.b0);
      return c;
    }
    PotentialFunction p = [&] {
      if (s.name == "half_s") return builtin::half_s_potential(g);
      if (s.name == "sqrt_s") return builtin::sqrt_potential(g);
      if (s.name == "cornu_potential") return builtin::cornu_potential(g);
      const double tau = param(s, "tau", -0.5);
      const auto cat = builtin::catalog_params(tau);
      return constant_torsion_potential(tau, param(s, "a", cat.a), param(s, "b", cat.b), param(s, "c", cat.c), g,
                                        null_helix_at(tau, g.start).u3);
    }();
    if (s.s0 || s.b0) p = make_potential(p.f, s.s0.value_or(p.s0), s.b0.value_or(p.b0));
    c.potential = std::move(p);
    return c;
  }

  const std::string& n = s.name;
  if (n == "log_spiral") {
    c.plane = builtin::log_spiral(g);
    c.s_first = 2 * std::sqrt(g.start);
  } else if (n == "cornu") {
    c.plane = builtin::cornu(g);
    c.s_first = 2 * std::sqrt(g.start);
  } else if (n == "circle_involute") {
    const double tau = param(s, "tau", -0.5);
    c.plane = builtin::circle_involute(g, tau);
    c.s_first = std::sqrt(g.start / std::abs(tau));
  } else if (n == "ellipse") {
    c.plane = builtin::ellipse(g, param(s, "a", 2.0), param(s, "b", 1.0));
  } else if (n == "log_spiral_evolute") {
    std::vector<MinkVec3> p(g.count);
    for (std::size_t i = 0; i < g.count; ++i) p[i] = builtin::log_spiral_levolute_at(g.at(i));
    c.null.emplace(g, std::move(p), NullParam::pseudo_arc, n);
  } else {
    const double tau = n == "helix_e1" ? -0.5 : (n == "helix_e2" ? 0.0 : 0.5);
    c.null = null_helix(param(s, "tau", tau), g);
  }
  if (c.null) c.s_first = g.start;
  if (s.s_first) c.s_first = *s.s_first;
  return c;
}

NullCurve as_null(const Curve& c) {
  if (c.potential) return reconstruct(*c.potential).epsilon;
  if (c.plane) return pseudo_arc_reparam(l_evolute(*c.plane), c.s_first).curve;
  if (c.null->kind == NullParam::pseudo_arc) return *c.null;
  return pseudo_arc_reparam(*c.null, c.s_first).curve;
}

PlaneCurve as_plane(const Curve& c) {
  if (c.plane) return *c.plane;
  if (c.potential) return reconstruct(*c.potential).gamma;
  return plane_from_null(*c.null);
}

PotentialFunction as_potential(const Curve& c) {
  if (c.potential) return *c.potential;
  if (c.plane) return potential_of(*c.plane, c.s_first).potential;
  // In pseudo-arc the potential is the rate of the third coordinate.
  const auto eps = as_null(c);
  const auto u = eps.component(2);
  return make_potential(differentiate(u, 1, DiffScheme::smooth).with_label("f"), eps.grid.start, u.front());
}

SampledFn torsion_of(const Curve& c) {
  if (c.potential) return torsion_from_potential(*c.potential);
  return pseudo_torsion(as_null(c));
}

}  // namespace nullevo::spec
