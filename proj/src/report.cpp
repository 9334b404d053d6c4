#include "gts/report.hpp"

#include <json.hpp>

namespace gts {

namespace {

using OrderedJson = nlohmann::ordered_json;

OrderedJson optional_number(const std::optional<double>& v) {
  if (!v || !std::isfinite(*v)) return nullptr;
  return *v;
}

}  // namespace

std::string report_to_json(const TestReport& report) {
  OrderedJson j;
  j["n"] = report.n;
  j["m"] = report.m;
  j["n_nodes"] = report.n_nodes;
  j["n_edges"] = report.n_edges;
  j["r0"] = report.r0;
  j["r1"] = report.r1;
  j["r2"] = report.r2;
  j["mu0"] = report.mu0;
  j["mu1"] = report.mu1;
  j["mu2"] = report.mu2;
  j["sigma"] = {{report.sigma[0][0], report.sigma[0][1]},
                {report.sigma[1][0], report.sigma[1][1]}};
  j["statistic"] = OrderedJson{{"name", report.statistic_name},
                               {"value", optional_number(report.statistic_value)}};
  j["p_asymptotic"] = optional_number(report.p_asymptotic);
  j["p_permutation"] = optional_number(report.p_permutation);
  j["n_permutations"] =
      report.n_permutations ? OrderedJson(*report.n_permutations) : OrderedJson(nullptr);
  j["exact"] = report.exact;
  j["seed"] = report.seed;
  OrderedJson d;
  d["edge_ratio"] = report.diagnostics.edge_ratio;
  d["deg_sq_ratio"] = report.diagnostics.deg_sq_ratio;
  d["aebe_ratio"] = report.diagnostics.aebe_ratio;
  d["max_degree"] = report.diagnostics.max_degree;
  d["asymptotics_questionable"] = report.diagnostics.asymptotics_questionable;
  d["corr12"] = optional_number(report.corr12);
  d["z0"] = optional_number(report.z0);
  if (report.error) d["error"] = *report.error;
  j["diagnostics"] = std::move(d);
  return j.dump(2) + "\n";
}

TestReport report_from_json(const std::string& text) {
  OrderedJson j;
  try {
    j = OrderedJson::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid report JSON: ") + e.what());
  }
  try {
    TestReport r;
    r.n = j.at("n").get<int>();
    r.m = j.at("m").get<int>();
    r.n_nodes = j.at("n_nodes").get<int>();
    r.n_edges = j.at("n_edges").get<long long>();
    r.r0 = j.at("r0").get<long long>();
    r.r1 = j.at("r1").get<long long>();
    r.r2 = j.at("r2").get<long long>();
    r.mu0 = j.at("mu0").get<double>();
    r.mu1 = j.at("mu1").get<double>();
    r.mu2 = j.at("mu2").get<double>();
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) r.sigma[a][b] = j.at("sigma").at(a).at(b).get<double>();
    r.statistic_name = j.at("statistic").at("name").get<std::string>();
    const auto& sv = j.at("statistic").at("value");
    if (!sv.is_null()) r.statistic_value = sv.get<double>();
    if (!j.at("p_asymptotic").is_null()) r.p_asymptotic = j.at("p_asymptotic").get<double>();
    if (!j.at("p_permutation").is_null()) r.p_permutation = j.at("p_permutation").get<double>();
    if (!j.at("n_permutations").is_null())
      r.n_permutations = j.at("n_permutations").get<long long>();
    r.exact = j.at("exact").get<bool>();
    r.seed = j.at("seed").get<std::uint64_t>();
    const auto& d = j.at("diagnostics");
    r.diagnostics.edge_ratio = d.at("edge_ratio").get<double>();
    r.diagnostics.deg_sq_ratio = d.at("deg_sq_ratio").get<double>();
    r.diagnostics.aebe_ratio = d.at("aebe_ratio").get<double>();
    r.diagnostics.max_degree = d.at("max_degree").get<int>();
    r.diagnostics.asymptotics_questionable = d.at("asymptotics_questionable").get<bool>();
    if (!d.at("corr12").is_null()) r.corr12 = d.at("corr12").get<double>();
    if (!d.at("z0").is_null()) r.z0 = d.at("z0").get<double>();
    if (d.contains("error")) r.error = d.at("error").get<std::string>();
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("report JSON missing or mistyped field: ") + e.what());
  }
}

}  // namespace gts
