#include "nullevo/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>

#include "CLI11.hpp"
#include "nullevo/associated.hpp"
#include "nullevo/error.hpp"
#include "nullevo/io.hpp"
#include "nullevo/laguerre.hpp"
#include "nullevo/spec.hpp"

namespace nullevo::cli {

namespace {

namespace fs = std::filesystem;

struct Output {
  std::string command;
  std::vector<io::Table> tables;
  io::Report report;

  void add(io::Table t) { tables.push_back(std::move(t)); }
  void text(const std::string& k, const std::string& v) { report.text.emplace_back(k, v); }
  void num(const std::string& k, double v) { report.numbers[k] = v; }
  void flag(const std::string& k, bool v) { report.flags[k] = v; }
  bool has_report() const { return !report.text.empty() || !report.numbers.empty() || !report.flags.empty(); }
};

struct Options {
  std::string format = "csv";
  std::string out_dir;
  std::string curve;
  double tol = 0.0;  // 0: per-check default
};

void emit(const Output& o, const Options& opt, std::ostream& out) {
  std::string dir = opt.out_dir;
  if (dir.empty())
    if (const char* env = std::getenv("NULLEVOLUTE_OUT")) dir = env;

  if (opt.format == "json") {
    nlohmann::json j{{"command", o.command}, {"tables", nlohmann::json::array()}};
    for (const auto& t : o.tables) j["tables"].push_back(io::to_json(t));
    if (o.has_report()) j["report"] = io::to_json(o.report);
    if (dir.empty()) {
      out << j.dump(1) << '\n';
      return;
    }
    fs::create_directories(dir);
    const fs::path p = fs::path(dir) / (o.command + ".json");
    std::ofstream(p) << j.dump(1) << '\n';
    out << p.string() << '\n';
    return;
  }

  if (dir.empty()) {
    bool first = true;
    for (const auto& t : o.tables) {
      if (!first) out << '\n';
      first = false;
      out << "# " << t.name << '\n';
      io::write_csv(out, t);
    }
    if (o.has_report()) {
      if (!first) out << '\n';
      out << "# report\n";
      io::write_csv(out, o.report);
    }
    return;
  }
  fs::create_directories(dir);
  for (const auto& t : o.tables) {
    const fs::path p = fs::path(dir) / (t.name + ".csv");
    std::ofstream f(p);
    io::write_csv(f, t);
    out << p.string() << '\n';
  }
  if (o.has_report()) {
    const fs::path p = fs::path(dir) / "report.csv";
    std::ofstream f(p);
    io::write_csv(f, o.report);
    out << p.string() << '\n';
  }
}

spec::Curve load(const std::string& arg) { return spec::resolve(spec::parse(arg)); }

const char* kind_of(const spec::Curve& c) { return c.plane ? "plane" : (c.null ? "null" : "potential"); }

void add_potential(Output& o, const PotentialFunction& p) {
  o.add(io::table("potential", "s", p.f));
  o.add(io::table("torsion", "s", torsion_from_potential(p)));
  o.num("s0", p.s0);
  o.num("b0", p.b0);
}

int analyze(const Options& opt, Output& o) {
  const auto c = load(opt.curve);
  o.text("curve", c.name);
  o.text("kind", kind_of(c));
  if (c.plane) {
    const auto& g = *c.plane;
    const auto fr = frenet(g);
    o.add(io::table("curve", "t", g));
    o.add(io::table("curvature", "t", fr.curvature));
    o.add(io::table("evolute", "t", evolute(g)));
    o.add(io::table("l_evolute", "t", l_evolute(g)));
    const auto pr = potential_of(g, c.s_first);
    o.flag("flipped", pr.flipped);
    add_potential(o, pr.potential);
  } else if (c.potential) {
    add_potential(o, *c.potential);
    const auto r = reconstruct(*c.potential);
    o.add(io::table("epsilon", "s", r.epsilon));
    o.add(io::table("gamma", "t", r.gamma));
  } else {
    const auto eps = spec::as_null(c);
    const auto tr = pseudo_torsion_report(eps);
    o.add(io::table("curve", "s", eps));
    o.add(io::table("torsion", "s", tr.tau));
    o.num("frenet_residual_T", tr.res_T);
    o.num("frenet_residual_B", tr.res_B);
    o.num("frenet_residual_N", tr.res_N);
    o.num("frame_residual", frame_residual(cartan_frame(eps)));
  }
  return 0;
}

int reconstruct_cmd(const Options& opt, double t0, Output& o) {
  const auto c = load(opt.curve);
  const auto p = spec::as_potential(c);
  const auto r = reconstruct(p, t0);
  o.text("potential", c.name);
  o.add(io::table("epsilon", "s", r.epsilon));
  o.add(io::table("gamma", "t", r.gamma));
  o.add(io::table("phi", "s", r.phi));
  o.add(io::table("u", "s", r.u));
  add_potential(o, p);
  return 0;
}

int family(const Options& opt, double lambda, int count, std::optional<double> b0, Output& o) {
  const auto c = load(opt.curve);
  const auto p = spec::as_potential(c);
  const auto tau = torsion_from_potential(p);
  const auto tl = dilated_torsion(tau, lambda);
  const double root = std::sqrt(std::abs(lambda));
  // Members spread around the (dilated) potential of the input at mid-range.
  const double s1 = tl.grid().at(tl.size() / 2), sm = s1 / root;
  const auto fd = differentiate(p.f, 1, DiffScheme::smooth);
  const double fc = root * p.f(sm), fdc = fd(sm);
  std::vector<FamilyInit> inits;
  for (int k = 0; k < count; ++k) {
    const double w = count == 1 ? 1.0 : 0.5 + static_cast<double>(k) / (count - 1);
    inits.push_back({lambda, s1, w * fc, fdc, b0.value_or(p.b0)});
  }
  const auto members = congruent_family(tau, inits);
  o.text("curve", c.name);
  o.num("lambda", lambda);
  o.add(io::table("torsion", "s", tl));
  for (int k = 0; k < count; ++k) {
    const auto& m = members[static_cast<std::size_t>(k)];
    const std::string id = std::to_string(k);
    o.num("member_" + id + ".f1", inits[static_cast<std::size_t>(k)].f1);
    o.flag("member_" + id + ".truncated", m.truncated);
    o.add(io::table("potential_" + id, "s", m.potential.f));
    o.add(io::table("gamma_" + id, "t", reconstruct(m.potential).gamma));
  }
  return 0;
}

int associate(const std::string& which, const Options& opt, std::optional<double> v0, std::optional<double> s0,
              int sign, Output& o) {
  const auto c = load(opt.curve);
  const auto eps = spec::as_null(c);
  AssociationReport r = [&] {
    if (which == "bertrand") return bertrand_mate(eps);
    if (which == "binormal") return binormal_directional(eps);
    if (which == "flatten") return flatten_to_helix(eps, s0.value_or(eps.grid.at(eps.size() / 2)));
    if (!v0) throw Error(ErrorCode::invalid_argument, "common-binormal needs --v0");
    return common_binormal_partner(eps, *v0, sign);
  }();
  o.text("curve", c.name);
  o.text("construction", which);
  o.flag("feasible", r.feasible);
  if (r.partner) o.add(io::table("partner", "s_bar", *r.partner));
  o.add(io::table("beta", "s", r.beta));
  for (const auto& [k, f] : r.functions) o.add(io::table(k, "s", f));
  for (const auto& [k, v] : r.scalars) o.num(k, v);
  for (const auto& [k, v] : r.residuals) o.num("residual." + k, v);
  return r.feasible ? 0 : 1;
}

int check(const std::string& which, const Options& opt, std::optional<double> t0, std::size_t samples, Output& o) {
  const auto c = load(opt.curve);
  o.text("curve", c.name);
  o.text("check", which);
  bool pass = false;
  if (which == "null") {
    const NullCurve eps = c.null ? *c.null : (c.plane ? l_evolute(*c.plane) : reconstruct(*c.potential).epsilon);
    const auto r = verify_null(eps);
    o.num("null_residual", r.null_residual);
    o.num("min_gram", r.min_gram);
    if (eps.kind == NullParam::pseudo_arc) o.num("pseudo_arc_residual", r.pseudo_arc_residual);
    pass = r.passed;
  } else if (which == "frame") {
    const double tol = opt.tol > 0 ? opt.tol : 1e-4;
    const auto eps = spec::as_null(c);
    const double fr = frame_residual(cartan_frame(eps));
    const auto tr = pseudo_torsion_report(eps);
    o.num("frame_residual", fr);
    o.num("frenet_residual_T", tr.res_T);
    o.num("frenet_residual_B", tr.res_B);
    o.num("frenet_residual_N", tr.res_N);
    o.num("tolerance", tol);
    pass = fr <= tol;
  } else if (which == "tait") {
    const auto r = tait_certify(spec::as_plane(c), samples);
    o.num("samples", static_cast<double>(r.samples));
    o.num("min_margin", r.min_margin);
    o.flag("nested", r.nested);
    o.flag("graves", r.graves.passed);
    pass = r.passed;
  } else if (which == "olszak") {
    const double tol = opt.tol > 0 ? opt.tol : 1e-4;
    const auto r = olszak_check(spec::as_potential(c));
    o.num("residual_plus", r.r_plus);
    o.num("residual_minus", r.r_minus);
    o.text("holds", r.holds > 0 ? "S(g) = tau" : (r.holds < 0 ? "S(g) = -tau" : "neither"));
    o.num("tolerance", tol);
    pass = std::min(r.r_plus, r.r_minus) <= tol;
  } else {
    const auto eps = spec::as_null(c);
    const double at = t0.value_or(eps.grid.start);
    const auto r = graves_check(eps, at);
    o.num("t0", at);
    o.num("max_separation", r.max_separation);
    o.flag("third_sign_constant", r.third_sign_constant);
    pass = r.passed;
  }
  o.flag("passed", pass);
  return pass ? 0 : 1;
}

int helix(double tau, double start, double stop, std::size_t count, Output& o) {
  if (!(stop > start) || count < 2) throw Error(ErrorCode::invalid_argument, "helix: need stop > start and count >= 2");
  o.add(io::table("helix", "s", null_helix(tau, Grid::over(start, stop, count))));
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Null curves in Minkowski 3-space and Laguerre geometry of plane curves", "nullevolute"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--format", opt.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", opt.out_dir, "Output directory (default: $NULLEVOLUTE_OUT, else stdout)");

  const std::string spec_help = "Builtin name, inline JSON or JSON file";
  auto* an = app.add_subcommand("analyze", "Curvature, evolutes, potential and torsion tables");
  an->add_option("--curve", opt.curve, spec_help)->required();

  double t0 = 0.0;
  auto* rc = app.add_subcommand("reconstruct", "Null curve and plane curve from a potential");
  rc->add_option("--potential", opt.curve, spec_help)->required();
  rc->add_option("--t0", t0, "Arclength at s0");

  double lambda = 1.0;
  int count = 3;
  std::optional<double> b0;
  auto* fa = app.add_subcommand("family", "Laguerre-congruent plane curves");
  fa->add_option("--curve", opt.curve, spec_help)->required();
  fa->add_option("--lambda", lambda, "Dilation factor");
  fa->add_option("--count", count, "Number of members")->check(CLI::Range(1, 1000));
  fa->add_option("--b0", b0, "u at the left end of each member");

  std::string which;
  std::optional<double> v0, s0, at;
  int sign = 1;
  auto* as = app.add_subcommand("associate", "Associated null curves");
  as->add_option("construction", which, "bertrand | binormal | flatten | common-binormal")
      ->required()
      ->check(CLI::IsMember({"bertrand", "binormal", "flatten", "common-binormal"}));
  as->add_option("--curve", opt.curve, spec_help)->required();
  as->add_option("--v0", v0, "v at the first node (common-binormal)");
  as->add_option("--s0", s0, "Normalization point (flatten)");
  as->add_option("--sign", sign, "Sign of a0 (common-binormal)")->check(CLI::IsMember({-1, 1}));

  std::size_t samples = 64;
  auto* ch = app.add_subcommand("check", "Diagnostics; exit 0 on pass");
  ch->add_option("kind", which, "null | frame | tait | olszak | graves")
      ->required()
      ->check(CLI::IsMember({"null", "frame", "tait", "olszak", "graves"}));
  ch->add_option("--curve", opt.curve, spec_help)->required();
  ch->add_option("--tol", opt.tol, "Tolerance override")->check(CLI::PositiveNumber);
  ch->add_option("--t0", at, "Base point (graves)");
  ch->add_option("--samples", samples, "Circle count (tait)")->check(CLI::Range(64, 256));

  double tau = 0.0, start = 0.0, stop = 4.0;
  std::size_t nodes = 401;
  auto* hx = app.add_subcommand("helix", "Catalog helix table");
  hx->add_option("--tau", tau, "Pseudo-torsion")->required();
  hx->add_option("--start", start);
  hx->add_option("--stop", stop);
  hx->add_option("--count", nodes);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(std::move(rev));
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  Output o;
  try {
    int rc_code = 0;
    if (*an) o.command = "analyze", rc_code = analyze(opt, o);
    else if (*rc) o.command = "reconstruct", rc_code = reconstruct_cmd(opt, t0, o);
    else if (*fa) o.command = "family", rc_code = family(opt, lambda, count, b0, o);
    else if (*as) o.command = "associate", rc_code = associate(which, opt, v0, s0, sign, o);
    else if (*ch) o.command = "check", rc_code = check(which, opt, at, samples, o);
    else o.command = "helix", rc_code = helix(tau, start, stop, nodes, o);
    emit(o, opt, out);
    return rc_code;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_input_error(e.code()) ? 2 : 3;
  } catch (const nlohmann::json::exception& e) {
    err << "error: curve spec: " << e.what() << '\n';
    return 2;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
}

}  // namespace nullevo::cli
