#include "doctest.h"

#include <string>
#include <vector>

#include "gts/inference.hpp"
#include "gts/report.hpp"

#include "helpers.hpp"

using namespace gts;
using namespace gts::test;

namespace {

TestReport sample_report() {
  const SimilarityGraph g = path_graph(4);
  const Labeling lab = labeling_from({0, 1, 1, 0});
  PermutationConfig config;
  config.seed = 42;
  return run_test(g, lab, StatName::kS, PValueSelection{}, config);
}

}  // namespace

TEST_CASE("report JSON round trip preserves every field") {
  const TestReport rep = sample_report();
  const std::string text = report_to_json(rep);
  const TestReport back = report_from_json(text);
  CHECK(back == rep);
  CHECK(report_to_json(back) == text);
}

TEST_CASE("absent values serialize as null and stay absent") {
  TestReport rep = sample_report();
  rep.p_asymptotic.reset();
  rep.corr12.reset();
  rep.error.reset();
  const std::string text = report_to_json(rep);
  CHECK(text.find("\"p_asymptotic\": null") != std::string::npos);
  CHECK(text.find("\"corr12\": null") != std::string::npos);
  const TestReport back = report_from_json(text);
  CHECK(!back.p_asymptotic.has_value());
  CHECK(!back.corr12.has_value());
  CHECK(back == rep);
}

TEST_CASE("report keys appear in a fixed order") {
  const std::string text = report_to_json(sample_report());
  const std::vector<std::string> keys = {
      "\"n\"", "\"m\"", "\"n_nodes\"", "\"n_edges\"", "\"r0\"", "\"r1\"", "\"r2\"",
      "\"mu0\"", "\"mu1\"", "\"mu2\"", "\"sigma\"", "\"statistic\"", "\"p_asymptotic\"",
      "\"p_permutation\"", "\"n_permutations\"", "\"exact\"", "\"seed\"", "\"diagnostics\""};
  std::size_t pos = 0;
  for (const auto& key : keys) {
    const std::size_t at = text.find(key, pos);
    REQUIRE(at != std::string::npos);
    pos = at;
  }
  CHECK(text.back() == '\n');
}

TEST_CASE("reports from identical runs are byte identical") {
  const TestReport a = sample_report();
  const TestReport b = sample_report();
  CHECK(report_to_json(a) == report_to_json(b));
}

TEST_CASE("error reports round trip") {
  const SimilarityGraph g = complete_graph(4);
  const Labeling lab = labeling_from({0, 0, 1, 1});
  PermutationConfig config;
  const TestReport rep = run_test(g, lab, StatName::kS, PValueSelection{}, config);
  REQUIRE(rep.error.has_value());
  const TestReport back = report_from_json(report_to_json(rep));
  CHECK(back == rep);
  CHECK(back.error == rep.error);
}
