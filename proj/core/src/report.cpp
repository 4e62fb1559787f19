#include "nlslab/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <json.hpp>

#include "nlslab/diagnostics_io.hpp"
#include "nlslab/error.hpp"

namespace nlslab {

using ojson = nlohmann::ordered_json;

double SweepPoint::param(const std::string& name) const {
  for (const auto& [k, v] : params)
    if (k == name) return v;
  throw PreconditionError("sweep point has no parameter " + name);
}

double EstimateReport::metric(const std::string& key) const {
  for (const auto& [k, v] : metrics)
    if (k == key) return v;
  throw PreconditionError("report has no metric " + key);
}

bool EstimateReport::has_metric(const std::string& key) const {
  for (const auto& [k, v] : metrics)
    if (k == key) return true;
  return false;
}

void EstimateReport::set_metric(const std::string& key, double value) {
  for (auto& [k, v] : metrics) {
    if (k == key) {
      v = value;
      return;
    }
  }
  metrics.emplace_back(key, value);
}

double EstimateReport::banded_value() const {
  if (band.subject == "fit.exponent") return fit ? fit->exponent : std::nan("");
  return has_metric(band.subject) ? metric(band.subject) : std::nan("");
}

void EstimateReport::evaluate() {
  const double v = banded_value();
  pass = !std::isnan(v) && band.contains(v);
}

namespace {

// JSON has no inf/nan; non-finite numbers are written as null.
ojson number(double v) { return std::isfinite(v) ? ojson(v) : ojson(nullptr); }

double read_number(const ojson& j, double if_null) {
  if (j.is_null()) return if_null;
  if (!j.is_number()) throw FormatError("expected a number in report JSON");
  return j.get<double>();
}

}  // namespace

std::string to_json(const EstimateReport& r) {
  ojson j;
  j["name"] = r.name;
  ojson points = ojson::array();
  for (const auto& p : r.points) {
    ojson params = ojson::object();
    for (const auto& [k, v] : p.params) params[k] = number(v);
    points.push_back({{"params", params}, {"lhs", number(p.lhs)}, {"rhs", number(p.rhs)}, {"ratio", number(p.ratio)}});
  }
  j["points"] = points;
  if (r.fit) {
    j["fit"] = {{"exponent", number(r.fit->exponent)},
                {"stderr", number(r.fit->std_error)},
                {"constant", number(r.fit->constant)},
                {"points", r.fit->points}};
  } else {
    j["fit"] = nullptr;
  }
  j["band"] = {{"lo", number(r.band.lo)}, {"hi", number(r.band.hi)}, {"subject", r.band.subject}};
  ojson metrics = ojson::object();
  for (const auto& [k, v] : r.metrics) metrics[k] = number(v);
  j["metrics"] = metrics;
  j["pass"] = r.pass;
  return j.dump(2);
}

EstimateReport report_from_json(const std::string& text) {
  try {
    const auto j = ojson::parse(text);
    EstimateReport r;
    r.name = j.at("name").get<std::string>();
    for (const auto& p : j.at("points")) {
      SweepPoint sp;
      for (const auto& [k, v] : p.at("params").items()) sp.params.emplace_back(k, read_number(v, std::nan("")));
      sp.lhs = read_number(p.at("lhs"), std::nan(""));
      sp.rhs = read_number(p.at("rhs"), std::nan(""));
      sp.ratio = read_number(p.at("ratio"), std::nan(""));
      r.points.push_back(std::move(sp));
    }
    if (const auto& f = j.at("fit"); !f.is_null()) {
      r.fit = PowerLawFit{read_number(f.at("exponent"), std::nan("")), read_number(f.at("constant"), std::nan("")),
                          read_number(f.at("stderr"), std::nan("")), f.at("points").get<std::size_t>()};
    }
    const auto& b = j.at("band");
    r.band.lo = read_number(b.at("lo"), -HUGE_VAL);
    r.band.hi = read_number(b.at("hi"), HUGE_VAL);
    r.band.subject = b.at("subject").get<std::string>();
    for (const auto& [k, v] : j.at("metrics").items()) r.metrics.emplace_back(k, read_number(v, std::nan("")));
    r.pass = j.at("pass").get<bool>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("report JSON: ") + e.what());
  }
}

std::string to_csv(const EstimateReport& r) {
  std::vector<std::string> columns;
  for (const auto& p : r.points)
    for (const auto& [k, v] : p.params)
      if (std::find(columns.begin(), columns.end(), k) == columns.end()) columns.push_back(k);

  std::ostringstream os;
  for (const auto& c : columns) os << c << ',';
  os << "lhs,rhs,ratio\n";
  for (const auto& p : r.points) {
    for (const auto& c : columns) {
      for (const auto& [k, v] : p.params)
        if (k == c) os << format_double(v);
      os << ',';
    }
    os << format_double(p.lhs) << ',' << format_double(p.rhs) << ',' << format_double(p.ratio) << '\n';
  }
  return os.str();
}

}  // namespace nlslab
