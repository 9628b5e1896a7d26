#include "fillinglab/report.hpp"

namespace fillinglab {

Json rational_json(const Rational& r) { return rat_to_string(r); }

Rational rational_from_json(const Json& j) {
  if (!j.is_string()) throw report_parse_error("expected rational string");
  try {
    return rat_from_string(j.get<std::string>());
  } catch (const std::invalid_argument& e) {
    throw report_parse_error(e.what());
  }
}

Json quadratic_json(const QuadraticNumber& x) { return x.str(); }

Json matrix_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (int i = 0; i < m.dim(); ++i) {
    Json row = Json::array();
    for (int j = 0; j < m.dim(); ++j) row.push_back(m.at(i, j).get_str());
    rows.push_back(row);
  }
  return rows;
}

IntMatrix matrix_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) throw report_parse_error("expected matrix");
  const int n = static_cast<int>(j.size());
  IntMatrix m(n);
  for (int r = 0; r < n; ++r) {
    const Json& row = j[static_cast<size_t>(r)];
    if (!row.is_array() || static_cast<int>(row.size()) != n)
      throw report_parse_error("matrix is not square");
    for (int c = 0; c < n; ++c) {
      const Json& cell = row[static_cast<size_t>(c)];
      if (!cell.is_string()) throw report_parse_error("matrix entry not a string");
      try {
        m.at(r, c) = Integer(cell.get<std::string>());
      } catch (const std::invalid_argument&) {
        throw report_parse_error("bad matrix entry: " + cell.get<std::string>());
      }
    }
  }
  return m;
}

Json integer_vector_json(const std::vector<Integer>& v) {
  Json out = Json::array();
  for (const Integer& x : v) out.push_back(x.get_str());
  return out;
}

std::vector<Integer> integer_vector_from_json(const Json& j) {
  if (!j.is_array()) throw report_parse_error("expected integer vector");
  std::vector<Integer> out;
  for (const Json& cell : j) {
    if (!cell.is_string()) throw report_parse_error("vector entry not a string");
    try {
      out.emplace_back(cell.get<std::string>());
    } catch (const std::invalid_argument&) {
      throw report_parse_error("bad integer entry: " + cell.get<std::string>());
    }
  }
  return out;
}

Json rational_vector_json(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const Rational& x : v) out.push_back(rat_to_string(x));
  return out;
}

std::vector<Rational> rational_vector_from_json(const Json& j) {
  if (!j.is_array()) throw report_parse_error("expected rational vector");
  std::vector<Rational> out;
  for (const Json& cell : j) out.push_back(rational_from_json(cell));
  return out;
}

Json target_json(const SteerTarget& t) {
  Json out;
  if (const auto* r = std::get_if<RatioRegion>(&t)) {
    out["type"] =
        r->kind == RegionKind::OpenU ? "ratio-neighborhood" : "ratio-cone";
    out["index"] = r->index;
    if (r->kind == RegionKind::OpenU) out["epsilon"] = rational_json(r->epsilon);
  } else {
    const auto& box = std::get<ChartBox>(t);
    out["type"] = "chart-box";
    out["chart"] = box.chart;
    Json bounds = Json::array();
    for (const auto& [lo, hi] : box.bounds)
      bounds.push_back(Json::array({rational_json(lo), rational_json(hi)}));
    out["bounds"] = bounds;
  }
  return out;
}

SteerTarget target_from_json(const Json& j) {
  try {
    const std::string type = j.value("type", "");
    if (type == "ratio-neighborhood" || type == "ratio-cone") {
      RatioRegion r;
      r.kind =
          type == "ratio-neighborhood" ? RegionKind::OpenU : RegionKind::ClosedK;
      if (!j.contains("index")) throw report_parse_error("target needs index");
      r.index = j["index"].get<int>();
      if (r.kind == RegionKind::OpenU)
        r.epsilon = rational_from_json(j.at("epsilon"));
      return r;
    }
    if (type == "chart-box") {
      ChartBox box;
      box.chart = j.at("chart").get<int>();
      for (const Json& pair : j.at("bounds")) {
        if (!pair.is_array() || pair.size() != 2)
          throw report_parse_error("chart-box bound needs [lo, hi]");
        box.bounds.emplace_back(rational_from_json(pair[0]),
                                rational_from_json(pair[1]));
      }
      return box;
    }
    throw report_parse_error("unknown target type: " + type);
  } catch (const Json::exception& e) {
    throw report_parse_error(std::string("malformed target: ") + e.what());
  }
}

std::string report_to_string(const Json& report) { return report.dump(2) + "\n"; }

Json report_from_string(const std::string& text) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw report_parse_error("report is not valid JSON");
  return j;
}

Json report_canonical_form(Json report) {
  report.erase("timings_ms");
  return report;
}

}  // namespace fillinglab
