#include "doctest.h"

#include <cstdlib>
#include <string>

#include <sys/wait.h>

#include "gts/io.hpp"
#include "gts/report.hpp"
#include "gts/simulate.hpp"

#include "helpers.hpp"

using namespace gts;
using namespace gts::test;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

// Runs the command line under the installed binary, capturing both streams.
RunResult run_cli(const TempDir& dir, const std::string& args) {
  const std::string out_path = dir.file("stdout.txt");
  const std::string err_path = dir.file("stderr.txt");
  const std::string command = std::string(GTS_CLI_PATH) + " " + args + " >" + out_path + " 2>" +
                              err_path;
  const int raw = std::system(command.c_str());
  RunResult res;
  res.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  res.out = read_file(out_path);
  res.err = read_file(err_path);
  return res;
}

// A small well-separated two-sample instance on disk.
struct Fixture {
  TempDir dir;
  std::string points_path;
  std::string labels_path;

  Fixture() {
    SimScenario scenario;
    scenario.family = Family::kNormalLocation;
    scenario.d = 2;
    scenario.n = 20;
    scenario.m = 20;
    scenario.delta = 3.0;
    const auto [pts, lab] = gen_samples(scenario, 77, 0);
    points_path = dir.file("pts.csv");
    labels_path = dir.file("labs.txt");
    save_points(pts, points_path);
    save_labels(lab, labels_path);
  }
};

}  // namespace

TEST_CASE("cli test subcommand emits a parseable report") {
  Fixture fx;
  const RunResult res = run_cli(
      fx.dir, "test --points " + fx.points_path + " --labels " + fx.labels_path +
                  " --graph kmst --k 3 --stat S --perms 200 --seed 5");
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("\"statistic\"") != std::string::npos);
  CHECK(res.out.find("\"p_permutation\"") != std::string::npos);
  CHECK(res.err.find("config") != std::string::npos);
  CHECK(report_from_json(res.out).n == 20);
}

TEST_CASE("cli runs are byte reproducible") {
  Fixture fx;
  const std::string args = "test --points " + fx.points_path + " --labels " + fx.labels_path +
                           " --graph kmdp --k 2 --stat T3 --perms 150 --seed 9";
  const RunResult a = run_cli(fx.dir, args);
  const RunResult b = run_cli(fx.dir, args);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("cli usage errors exit with 2") {
  Fixture fx;
  CHECK(run_cli(fx.dir, "test --points a.csv --distances d.csv --labels l.txt").exit_code == 2);
  CHECK(run_cli(fx.dir, "test --points " + fx.points_path + " --labels " + fx.labels_path +
                            " --stat T9").exit_code == 2);
  CHECK(run_cli(fx.dir, "frobnicate").exit_code == 2);
  CHECK(run_cli(fx.dir, "test --no-such-flag").exit_code == 2);
  CHECK(run_cli(fx.dir, "build-graph").exit_code == 2);
  CHECK(run_cli(fx.dir, "test --points " + fx.points_path + " --labels " + fx.labels_path +
                            " --metric hyperbolic").exit_code == 2);
}

TEST_CASE("cli data errors exit with 1") {
  Fixture fx;
  const RunResult missing = run_cli(fx.dir, "test --points /no/such/file.csv --labels " +
                                                fx.labels_path + " --stat S");
  CHECK(missing.exit_code == 1);
  CHECK(missing.err.find("error") != std::string::npos);

  const std::string bad_labels = fx.dir.file("bad.txt");
  write_file(bad_labels, "a\nb\nc\n");
  CHECK(run_cli(fx.dir, "test --points " + fx.points_path + " --labels " + bad_labels)
            .exit_code == 1);
}

TEST_CASE("cli writes the output file only on success") {
  Fixture fx;
  const std::string out_path = fx.dir.file("report.json");
  const RunResult ok = run_cli(fx.dir, "test --points " + fx.points_path + " --labels " +
                                           fx.labels_path + " --stat S --perms 100 --out " +
                                           out_path);
  CHECK(ok.exit_code == 0);
  CHECK(ok.out.empty());
  CHECK(!read_file(out_path).empty());

  const std::string never_path = fx.dir.file("never.json");
  const RunResult bad = run_cli(fx.dir, "test --points /no/such.csv --labels " + fx.labels_path +
                                            " --out " + never_path);
  CHECK(bad.exit_code == 1);
  CHECK(read_file(never_path).empty());
}

TEST_CASE("cli stat all emits an array across statistics") {
  Fixture fx;
  const RunResult res = run_cli(fx.dir, "test --points " + fx.points_path + " --labels " +
                                            fx.labels_path + " --stat all --perms 100");
  CHECK(res.exit_code == 0);
  REQUIRE(!res.out.empty());
  CHECK(res.out.front() == '[');
  CHECK(res.out.find("\"name\": \"S\"") != std::string::npos);
  CHECK(res.out.find("\"name\": \"hotelling\"") != std::string::npos);
  CHECK(res.out.find("\"name\": \"glr\"") != std::string::npos);
}

TEST_CASE("cli build, diagnose, and test compose through graph files") {
  Fixture fx;
  const std::string graph_path = fx.dir.file("g.json");
  const RunResult build = run_cli(fx.dir, "build-graph --input " + fx.points_path +
                                              " --graph kmst --k 2 --out " + graph_path);
  CHECK(build.exit_code == 0);
  const SimilarityGraph g = load_graph(graph_path);
  CHECK(g.n_nodes == 40);
  CHECK(g.n_edges() == 78);

  const RunResult diag = run_cli(fx.dir, "diagnose --graph " + graph_path);
  CHECK(diag.exit_code == 0);
  CHECK(diag.out.find("\"edge_ratio\"") != std::string::npos);
  CHECK(diag.out.find("\"asymptotics_questionable\"") != std::string::npos);

  const RunResult test = run_cli(fx.dir, "test --graph " + graph_path + " --labels " +
                                             fx.labels_path + " --stat R0 --perms 100");
  CHECK(test.exit_code == 0);
  CHECK(report_from_json(test.out).n_edges == 78);
}

TEST_CASE("cli packing subcommand") {
  TempDir dir;
  const RunResult res = run_cli(dir, "packing --d 30");
  CHECK(res.exit_code == 0);
  CHECK(res.out.find("9.8639") != std::string::npos);
}

TEST_CASE("cli simulate power respects a custom grid") {
  TempDir dir;
  const RunResult res = run_cli(dir,
                                "simulate power --table custom --family normal_location --d 2 "
                                "--n 15 --m 15 --delta 2.5 --graphs 1-mst --stats S,R0 "
                                "--trials 4 --perms 60 --seed 1");
  CHECK(res.exit_code == 0);
  CHECK(res.out.rfind("family,d,n,m,delta,sigma,graph,statistic,trials,alpha", 0) == 0);
  CHECK(res.out.find("normal_location,2,15,15,2.5") != std::string::npos);
  CHECK(res.out.find("1-mst,S,4,") != std::string::npos);
}

TEST_CASE("cli simulate packing sweeps a dimension range") {
  TempDir dir;
  const RunResult res = run_cli(dir, "simulate packing --dmin 1 --dmax 3 --step 1");
  CHECK(res.exit_code == 0);
  CHECK(res.out.rfind("d,log10_count", 0) == 0);
  CHECK(res.out.find("\n1,0.3010299956639811") != std::string::npos);
}

TEST_CASE("cli help exits cleanly") {
  TempDir dir;
  CHECK(run_cli(dir, "--help").exit_code == 0);
  CHECK(run_cli(dir, "test --help").exit_code == 0);
}
