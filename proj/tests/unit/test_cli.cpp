#include "doctest.h"
#include "helpers.hpp"

#include "mxplex/cli.hpp"
#include "mxplex/log.hpp"
#include "mxplex/multiplex.hpp"

#include "json.hpp"

#include <fstream>
#include <sstream>

using namespace mxplex;
using nlohmann::json;

namespace {

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::size_t count_lines(const std::string& s) {
  return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n'));
}

RunConfig generate_config(const std::filesystem::path& out) {
  RunConfig c;
  c.subcommand = "generate";
  c.output = out;
  c.n = 64;
  c.mu = 0.1;
  c.avg_degree = 10.0;
  c.seed = 3;
  return c;
}

RunConfig detect_config(const std::filesystem::path& data, const std::filesystem::path& out) {
  RunConfig c;
  c.subcommand = "detect";
  c.input = data / "network.txt";
  c.output = out;
  c.common = 2;
  c.private_counts = {2};
  c.restarts = 4;
  c.threads = 2;
  c.max_iters = 100;
  c.seed = 7;
  return c;
}

struct Quiet {
  Quiet() { set_log_level(LogLevel::kQuiet); }
  ~Quiet() { set_log_level(LogLevel::kWarning); }
};

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("exit codes") {
    Quiet q;
    std::ostringstream out;
    RunConfig c;
    c.subcommand = "detect";
    c.output = "unused";
    c.input = "/nonexistent/network.txt";
    CHECK(run_command(c, out) == kExitInput);
    c.input.clear();
    CHECK(run_command(c, out) == kExitUsage);
    c.subcommand = "frobnicate";
    CHECK(run_command(c, out) == kExitUsage);
    RunConfig g;
    g.subcommand = "generate";
    CHECK(run_command(g, out) == kExitUsage);
    RunConfig e;
    e.subcommand = "eval";
    CHECK(run_command(e, out) == kExitUsage);
  }

  TEST_CASE("generate writes a loadable benchmark") {
    testing::TempDir dir("cli_generate");
    std::ostringstream out;
    REQUIRE(run_command(generate_config(dir / "data"), out) == kExitOk);
    CHECK(out.str().find("planted k_l=[4,4,4] k_c=2 k_p=[2,2,2]") != std::string::npos);
    const MultiplexNetwork net = load_multiplex(dir / "data" / "network.txt");
    CHECK(net.layer_count() == 3);
    CHECK(net.node_count() == 64);
    for (int l = 0; l < 3; ++l) {
      CHECK(load_labels(dir / "data" / ("truth_l" + std::to_string(l) + ".txt")).size() == 64);
    }
    const json planted = json::parse(slurp(dir / "data" / "planted.json"));
    CHECK(planted["k_c"] == 2);
    const json manifest = json::parse(slurp(dir / "data" / "manifest.json"));
    CHECK(manifest["seed"] == 3);
    CHECK(manifest["command"] == "generate");
  }

  TEST_CASE("detect writes labels, trace, scores and summary") {
    testing::TempDir dir("cli_detect");
    std::ostringstream out;
    REQUIRE(run_command(generate_config(dir / "data"), out) == kExitOk);
    RunConfig c = detect_config(dir.path() / "data", dir / "run");
    for (int l = 0; l < 3; ++l) c.truth.push_back(dir / "data" / ("truth_l" + std::to_string(l) + ".txt"));
    std::ostringstream report;
    REQUIRE(run_command(c, report) == kExitOk);
    CHECK(report.str().find("order k_l=[4,4,4] k_c=2 k_p=[2,2,2]") != std::string::npos);
    CHECK(report.str().find("nmi\t") != std::string::npos);
    CHECK(report.str().find("qd\t") != std::string::npos);
    for (int l = 0; l < 3; ++l) {
      CHECK(load_labels(dir / "run" / ("labels_l" + std::to_string(l) + ".txt")).size() == 64);
    }
    const std::string scores = slurp(dir / "run" / "scores.csv");
    CHECK(scores.rfind("restart,score\n", 0) == 0);
    CHECK(count_lines(scores) == 5);
    const json summary = json::parse(slurp(dir / "run" / "summary.json"));
    CHECK(summary["selector"] == "nmi");
    CHECK(summary["k_p"] == json::array({2, 2, 2}));
    const std::size_t iterations = summary["iterations"];
    CHECK(count_lines(slurp(dir / "run" / "trace.txt")) == iterations + 1);
  }

  TEST_CASE("detect output does not depend on threads") {
    testing::TempDir dir("cli_determinism");
    std::ostringstream out;
    REQUIRE(run_command(generate_config(dir / "data"), out) == kExitOk);
    RunConfig a = detect_config(dir.path() / "data", dir / "a");
    RunConfig b = detect_config(dir.path() / "data", dir / "b");
    a.threads = 1;
    b.threads = 4;
    REQUIRE(run_command(a, out) == kExitOk);
    REQUIRE(run_command(b, out) == kExitOk);
    for (const char* f : {"trace.txt", "scores.csv", "summary.json", "labels_l0.txt", "labels_l2.txt"}) {
      CAPTURE(f);
      CHECK(slurp(dir / "a" / f) == slurp(dir / "b" / f));
    }
  }

  TEST_CASE("zero iterations keeps the initial objective") {
    testing::TempDir dir("cli_zero");
    std::ostringstream out;
    REQUIRE(run_command(generate_config(dir / "data"), out) == kExitOk);
    RunConfig c = detect_config(dir.path() / "data", dir / "run");
    c.restarts = 1;
    c.max_iters = 0;
    REQUIRE(run_command(c, out) == kExitOk);
    CHECK(count_lines(slurp(dir / "run" / "trace.txt")) == 1);
    CHECK(json::parse(slurp(dir / "run" / "summary.json"))["iterations"] == 0);
  }

  TEST_CASE("eval prints per-layer and mean scores") {
    testing::TempDir dir("cli_eval");
    std::ostringstream out;
    REQUIRE(run_command(generate_config(dir / "data"), out) == kExitOk);
    RunConfig e;
    e.subcommand = "eval";
    e.input = dir / "data" / "network.txt";
    for (int l = 0; l < 3; ++l) {
      const auto p = dir / "data" / ("truth_l" + std::to_string(l) + ".txt");
      e.labels.push_back(p);
      e.truth.push_back(p);
    }
    std::ostringstream report;
    REQUIRE(run_command(e, report) == kExitOk);
    const std::string s = report.str();
    CHECK(s.find("nmi_l0\t1\n") != std::string::npos);
    CHECK(s.find("nmi\t1\n") != std::string::npos);
    CHECK(s.find("qd_l2\t") != std::string::npos);
    CHECK(s.find("\nqd\t") != std::string::npos);
  }

  TEST_CASE("baseline writes one label file") {
    testing::TempDir dir("cli_baseline");
    std::ostringstream out;
    REQUIRE(run_command(generate_config(dir / "data"), out) == kExitOk);
    RunConfig c;
    c.subcommand = "baseline";
    c.input = dir / "data" / "network.txt";
    c.output = dir / "base" / "labels.txt";
    c.k = 4;
    c.fits = 2;
    c.max_iters = 100;
    c.truth = {dir / "data" / "truth_l0.txt"};
    std::ostringstream report;
    REQUIRE(run_command(c, report) == kExitOk);
    CHECK(report.str().rfind("k\t4\n", 0) == 0);
    CHECK(report.str().find("nmi\t") != std::string::npos);
    CHECK(load_labels(c.output).size() == 64);
  }

  TEST_CASE("sweep writes one row per value and method") {
    testing::TempDir dir("cli_sweep");
    RunConfig c;
    c.subcommand = "sweep";
    c.n = 64;
    c.avg_degree = 10.0;
    c.values = {0.1, 0.4};
    c.realizations = 2;
    c.restarts = 2;
    c.max_iters = 50;
    c.with_baseline = true;
    c.fits = 1;
    c.output = dir / "sweep.csv";
    c.plot = dir / "sweep.svg";
    std::ostringstream out;
    {
      Quiet q;
      REQUIRE(run_command(c, out) == kExitOk);
    }
    const std::string csv = slurp(c.output);
    CHECK(csv == out.str());
    CHECK(csv.rfind("axis,value,method,realizations,mean_nmi,std_nmi,mean_seconds\n", 0) == 0);
    CHECK(count_lines(csv) == 5);
    CHECK(slurp(c.plot).rfind("<svg", 0) == 0);
    c.axis = "bogus";
    Quiet q;
    CHECK(run_command(c, out) == kExitUsage);
  }
}
