#include "nullevo/io.hpp"

#include <cstdio>

namespace nullevo::io {

Table table(std::string name, std::string param, const SampledFn& f) {
  return {std::move(name), std::move(param), {"value"}, f.grid(), {{f.values().begin(), f.values().end()}}};
}

Table table(std::string name, std::string param, const PlaneCurve& c) {
  Table t{std::move(name), std::move(param), {"x", "y"}, c.grid, {{}, {}}};
  for (const auto& p : c.points) {
    t.data[0].push_back(p.x);
    t.data[1].push_back(p.y);
  }
  return t;
}

Table table(std::string name, std::string param, const NullCurve& c) {
  Table t{std::move(name), std::move(param), {"x", "y", "z"}, c.grid, {{}, {}, {}}};
  for (const auto& p : c.points) {
    t.data[0].push_back(p.u1);
    t.data[1].push_back(p.u2);
    t.data[2].push_back(p.u3);
  }
  return t;
}

std::string number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_csv(std::ostream& os, const Table& t) {
  os << t.param;
  for (const auto& c : t.columns) os << ',' << c;
  os << '\n';
  for (std::size_t i = 0; i < t.grid.count; ++i) {
    os << number(t.grid.at(i));
    for (const auto& col : t.data) os << ',' << number(col[i]);
    os << '\n';
  }
}

void write_csv(std::ostream& os, const Report& r) {
  os << "key,value\n";
  for (const auto& [k, v] : r.text) os << k << ',' << v << '\n';
  for (const auto& [k, v] : r.flags) os << k << ',' << (v ? "true" : "false") << '\n';
  for (const auto& [k, v] : r.numbers) os << k << ',' << number(v) << '\n';
}

nlohmann::json to_json(const Table& t) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < t.grid.count; ++i) {
    nlohmann::json row = nlohmann::json::array({t.grid.at(i)});
    for (const auto& col : t.data) row.push_back(col[i]);
    rows.push_back(std::move(row));
  }
  nlohmann::json cols = nlohmann::json::array({t.param});
  for (const auto& c : t.columns) cols.push_back(c);
  return {{"name", t.name},
          {"param", t.param},
          {"columns", cols},
          {"grid", {{"start", t.grid.start}, {"step", t.grid.step}, {"count", t.grid.count}}},
          {"rows", rows}};
}

nlohmann::json to_json(const Report& r) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [k, v] : r.text) j[k] = v;
  for (const auto& [k, v] : r.flags) j[k] = v;
  for (const auto& [k, v] : r.numbers) j[k] = v;
  return j;
}

}  // namespace nullevo::io
