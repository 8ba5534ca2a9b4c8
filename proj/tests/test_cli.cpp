#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "support/oracles.hpp"
#include "trailnet/alpha_miner.hpp"
#include "trailnet/cli.hpp"
#include "trailnet/relations.hpp"
#include "trailnet/social_graph.hpp"

using namespace trailnet;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("trailnet-cli-" + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
  fs::path operator/(const std::string& name) const { return path / name; }
};

void write(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

std::string read(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "trailnet");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::main(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

const char* kWorkedCsv =
    "case_id,activity,originator,timestamp\n"
    "1,A,,\n1,B,,\n1,C,,\n1,D,,\n"
    "2,A,,\n2,C,,\n2,B,,\n2,D,,\n"
    "3,A,,\n3,E,,\n3,D,,\n";

const char* kTwoRecords =
    R"({"artifact_id":"X","submitter":"S","reviewer":"R1","comment":"first","timestamp":"2012-05-03T10:00:00Z"})"
    "\n"
    R"({"artifact_id":"X","submitter":"S","reviewer":"R2","comment":"second","timestamp":"2012-05-03T11:00:00Z"})"
    "\n";

}  // namespace

TEST_CASE("mine writes net, DOT and intermediates") {
  TempDir dir;
  write(dir / "w.csv", kWorkedCsv);
  const auto r = run_cli({"mine", "--input", (dir / "w.csv").string(), "--output", (dir / "w").string()});
  REQUIRE(r.code == 0);
  const auto net = nlohmann::json::parse(read(dir / "w.net.json"));
  CHECK(net["places"].size() == 6);
  CHECK(net["arcs"].size() == 14);
  const auto im = nlohmann::json::parse(read(dir / "w.intermediates.json"));
  CHECK(im["Y_W"].size() == 4);
  CHECK(im["X_W"].size() == 10);
  CHECK(read(dir / "w.dot").rfind("digraph workflow_net", 0) == 0);
}

TEST_CASE("footprint writes the causal cells") {
  TempDir dir;
  write(dir / "w.csv", kWorkedCsv);
  const auto r = run_cli({"footprint", "--input", (dir / "w.csv").string(), "--output", (dir / "fp.csv").string()});
  REQUIRE(r.code == 0);
  const std::string grid = read(dir / "fp.csv");
  CHECK(grid == footprint_to_csv(footprint(EventLog::from_sequences(testing::worked_log()))));
  CHECK(grid.find("A,#,->,->,#,->\n") != std::string::npos);
}

TEST_CASE("build-log then mine matches in-process composition") {
  TempDir dir;
  write(dir / "r.jsonl", kTwoRecords);
  auto r = run_cli({"build-log", "--input", (dir / "r.jsonl").string(), "--output", (dir / "log.csv").string(),
                    "--strategy", "artifact"});
  REQUIRE(r.code == 0);
  r = run_cli({"mine", "--input", (dir / "log.csv").string(), "--output", (dir / "m").string()});
  REQUIRE(r.code == 0);

  const auto records = parse_review_records(std::string(kTwoRecords));
  BuildOptions options;
  options.source = "r.jsonl";
  const auto built = build_log(records, CaseStrategy::by_artifact(), options);
  CHECK(read(dir / "log.csv") == serialize_csv_log(built.log));
  CHECK(read(dir / "log.csv.meta.json") == metadata_to_json(built.metadata));
  const auto mined = alpha(built.log);
  CHECK(read(dir / "m.net.json") == net_to_json(mined.net));
  CHECK(read(dir / "m.dot") == to_dot(mined.net));
  CHECK(read(dir / "m.intermediates.json") == intermediates_to_json(mined.intermediates));
  CHECK(mined.net.arcs() == std::set<Arc>{{"i_W", "review:initiator"},
                                          {"review:initiator", "p({review:initiator},{review:responder})"},
                                          {"p({review:initiator},{review:responder})", "review:responder"},
                                          {"review:responder", "o_W"}});

  // Idempotent.
  const std::string first = read(dir / "m.net.json");
  REQUIRE(run_cli({"mine", "--input", (dir / "log.csv").string(), "--output", (dir / "m").string()}).code == 0);
  CHECK(read(dir / "m.net.json") == first);
}

TEST_CASE("build-log honours the window and records it") {
  TempDir dir;
  write(dir / "r.jsonl", kTwoRecords);
  const auto r = run_cli({"build-log", "--input", (dir / "r.jsonl").string(), "--output", (dir / "log.csv").string(),
                          "--strategy", "artifact", "--from", "2012-05-03T10:30:00Z", "--to", "2012-05-03T12:00:00Z"});
  REQUIRE(r.code == 0);
  CHECK(read(dir / "log.csv") == "case_id,activity,originator,timestamp\nX,review:initiator,R2,2012-05-03T11:00:00Z\n");
  const auto meta = nlohmann::json::parse(read(dir / "log.csv.meta.json"));
  CHECK(meta["window"]["from"] == "2012-05-03T10:30:00Z");
  CHECK(meta["record_count"] == 1);
  CHECK(meta["strategy"] == "artifact");
}

TEST_CASE("build-log with verbs and commit strategy") {
  TempDir dir;
  write(dir / "r.jsonl", kTwoRecords);
  write(dir / "verbs.json", R"([{"keyword":"second","verb":"reply","level":"Progression"}])");
  const auto r = run_cli({"build-log", "--input", (dir / "r.jsonl").string(), "--output", (dir / "log.csv").string(),
                          "--strategy", "commit", "--commit-window", "86400", "--verbs", (dir / "verbs.json").string()});
  REQUIRE(r.code == 0);
  CHECK(read(dir / "log.csv") ==
        "case_id,activity,originator,timestamp\n"
        "S@2012-05-03T00:00:00Z,review:initiator,R1,2012-05-03T10:00:00Z\n"
        "S@2012-05-03T00:00:00Z,reply,R2,2012-05-03T11:00:00Z\n");
}

TEST_CASE("social writes graph JSON and DOT") {
  TempDir dir;
  write(dir / "r.jsonl", kTwoRecords);
  REQUIRE(run_cli({"build-log", "--input", (dir / "r.jsonl").string(), "--output", (dir / "log.csv").string(),
                   "--strategy", "artifact"})
              .code == 0);
  REQUIRE(run_cli({"social", "--input", (dir / "log.csv").string(), "--output", (dir / "h").string()}).code == 0);
  CHECK(graph_from_json(read(dir / "h.json")).weight("R1", "R2") == 1);
  CHECK(read(dir / "h.dot").find("\"R1\" -> \"R2\" [label=\"1\"") != std::string::npos);

  REQUIRE(run_cli({"social", "--relation", "review", "--input", (dir / "r.jsonl").string(), "--output",
                   (dir / "rv").string()})
              .code == 0);
  const auto g = graph_from_json(read(dir / "rv.json"));
  CHECK(g.weight("R1", "S") == 1);
  CHECK(g.weight("R2", "S") == 1);
}

TEST_CASE("simulate and export") {
  TempDir dir;
  write(dir / "w.csv", kWorkedCsv);
  REQUIRE(run_cli({"mine", "--input", (dir / "w.csv").string(), "--output", (dir / "w").string()}).code == 0);

  auto r = run_cli({"simulate", "--input", (dir / "w.net.json").string(), "--output", (dir / "sim.csv").string(),
                    "--max-length", "10", "--max-traces", "100"});
  REQUIRE(r.code == 0);
  CHECK(r.err.empty());
  CHECK(trace_set(parse_csv_log(read(dir / "sim.csv"))) == trace_set(EventLog::from_sequences(testing::worked_log())));

  r = run_cli({"simulate", "--input", (dir / "w.net.json").string(), "--output", (dir / "sim2.csv").string(),
               "--max-length", "3"});
  REQUIRE(r.code == 0);
  CHECK(r.err.find("bounds_exceeded") != std::string::npos);

  r = run_cli({"export", "--format", "dot", "--input", (dir / "w.net.json").string(), "--output",
               (dir / "e.dot").string()});
  REQUIRE(r.code == 0);
  CHECK(read(dir / "e.dot") == read(dir / "w.dot"));

  r = run_cli({"export", "--format", "csv", "--input", (dir / "w.csv").string(), "--output", (dir / "e.csv").string()});
  REQUIRE(r.code == 0);
  CHECK(read(dir / "e.csv") == kWorkedCsv);

  r = run_cli({"export", "--format", "csv", "--input", (dir / "w.net.json").string(), "--output",
               (dir / "bad").string()});
  CHECK(r.code == cli::kInvalidConfig);
}

TEST_CASE("exit codes and machine-readable errors") {
  TempDir dir;
  write(dir / "w.csv", kWorkedCsv);
  write(dir / "bad.csv", "case_id,activity,originator,timestamp\n1,,,\n");
  const std::string in = (dir / "w.csv").string();
  const std::string out = (dir / "o").string();

  auto expect = [](const Outcome& r, int code) {
    CHECK(r.code == code);
    REQUIRE_FALSE(r.err.empty());
    const auto line = r.err.substr(0, r.err.find('\n'));
    const auto j = nlohmann::json::parse(line);
    CHECK(j["exit"] == code);
    CHECK(j.contains("message"));
  };

  expect(run_cli({"mine", "--input", (dir / "missing.csv").string(), "--output", out}), cli::kInvalidConfig);
  expect(run_cli({"mine", "--input", in, "--output", (dir / "nope" / "o").string()}), cli::kInvalidConfig);
  expect(run_cli({"mine", "--input", in, "--output", out, "--from", "2012-05-03T00:00:00Z"}), cli::kInvalidConfig);
  expect(run_cli({"build-log", "--input", in, "--output", out}), cli::kInvalidConfig);
  expect(run_cli({"build-log", "--input", in, "--output", out, "--strategy", "commit"}), cli::kInvalidConfig);
  expect(run_cli({"frobnicate", "--input", in, "--output", out}), cli::kInvalidConfig);
  expect(run_cli({"mine", "--input", in}), cli::kInvalidConfig);
  expect(run_cli({"mine", "--input", in, "--output", out, "--format", "dot"}), cli::kInvalidConfig);
  expect(run_cli({"mine", "--input", (dir / "bad.csv").string(), "--output", out}), cli::kIoOrParse);

  ::setenv(cli::kAlphabetLimitEnv, "3", 1);
  expect(run_cli({"mine", "--input", in, "--output", out}), cli::kAlphabetLimit);
  ::setenv(cli::kAlphabetLimitEnv, "many", 1);
  expect(run_cli({"mine", "--input", in, "--output", out}), cli::kInvalidConfig);
  ::setenv(cli::kAlphabetLimitEnv, "5", 1);
  CHECK(run_cli({"mine", "--input", in, "--output", out}).code == 0);
  ::unsetenv(cli::kAlphabetLimitEnv);

  const auto help = run_cli({"--help"});
  CHECK(help.code == 0);
  CHECK(help.out.find("build-log") != std::string::npos);
}
