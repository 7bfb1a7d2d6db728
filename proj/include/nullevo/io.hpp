#pragma once

// Tables written by the command-line tool: CSV (17 significant digits) or JSON.

#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"
#include "nullevo/null_curve.hpp"
#include "nullevo/plane.hpp"
#include "nullevo/scalar_fn.hpp"

namespace nullevo::io {

/// One row per grid node. The first column is the parameter, named by its
/// kind: "t", "s" or "s_bar".
struct Table {
  std::string name;
  std::string param;
  std::vector<std::string> columns;  // value columns, after the parameter
  Grid grid;
  std::vector<std::vector<double>> data;  // one vector per value column
};

Table table(std::string name, std::string param, const SampledFn& f);
Table table(std::string name, std::string param, const PlaneCurve& c);
Table table(std::string name, std::string param, const NullCurve& c);

/// Flat key/value diagnostics. Values are numbers, booleans or strings.
struct Report {
  std::vector<std::pair<std::string, std::string>> text;
  std::map<std::string, double> numbers;
  std::map<std::string, bool> flags;
};

/// %.17g
std::string number(double x);

void write_csv(std::ostream& os, const Table& t);
void write_csv(std::ostream& os, const Report& r);
nlohmann::json to_json(const Table& t);
nlohmann::json to_json(const Report& r);

}  // namespace nullevo::io
