#include "trailnet/cli.hpp"

#include <cerrno>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "trailnet/alpha_miner.hpp"
#include "trailnet/error.hpp"
#include "trailnet/event_log.hpp"
#include "trailnet/petri_net.hpp"
#include "trailnet/relations.hpp"
#include "trailnet/social_graph.hpp"

namespace trailnet::cli {

namespace fs = std::filesystem;

namespace {

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

void report(std::ostream& err, int code, std::string_view kind, std::string_view message) {
  nlohmann::ordered_json j;
  j["error"] = kind;
  j["exit"] = code;
  j["message"] = message;
  err << j.dump() << '\n';
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("failed reading '" + path.string() + "'");
  return buf.str();
}

void write_file(const fs::path& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) throw IoError("failed writing '" + path.string() + "'");
}

fs::path with_suffix(const fs::path& stem, std::string_view suffix) {
  fs::path p = stem;
  p += std::string(suffix);
  return p;
}

std::string_view command_name(Command c) {
  switch (c) {
    case Command::BuildLog: return "build-log";
    case Command::Footprint: return "footprint";
    case Command::Mine: return "mine";
    case Command::Social: return "social";
    case Command::Simulate: return "simulate";
    case Command::Export: return "export";
  }
  return "?";
}

void validate(const RunConfig& c) {
  const std::string cmd(command_name(c.command));
  if (c.input.empty()) throw ConfigError(cmd + ": --input is required");
  if (c.output.empty()) throw ConfigError(cmd + ": --output is required");

  if (c.command != Command::BuildLog) {
    if (c.from || c.to) throw ConfigError(cmd + ": --from/--to are only valid for build-log");
    if (c.strategy) throw ConfigError(cmd + ": --strategy is only valid for build-log");
    if (c.verbs) throw ConfigError(cmd + ": --verbs is only valid for build-log");
  } else {
    if (!c.strategy) throw ConfigError("build-log: --strategy is required");
    if (c.from.has_value() != c.to.has_value()) throw ConfigError("build-log: --from and --to must be given together");
    if (c.from && *c.to < *c.from) throw ConfigError("build-log: --to precedes --from");
  }
  if (c.command != Command::Simulate && (c.max_length || c.max_traces)) {
    throw ConfigError(cmd + ": --max-length/--max-traces are only valid for simulate");
  }
  if (c.command == Command::Simulate && ((c.max_length && *c.max_length == 0) || (c.max_traces && *c.max_traces == 0))) {
    throw ConfigError("simulate: bounds must be positive");
  }
  if (c.command != Command::Export && c.format) throw ConfigError(cmd + ": --format is only valid for export");
  if (c.command == Command::Export && !c.format) throw ConfigError("export: --format is required");
  if (c.command != Command::Social && c.relation) throw ConfigError(cmd + ": --relation is only valid for social");

  // Paths are checked before anything is read.
  std::error_code ec;
  if (!fs::is_regular_file(c.input, ec)) throw ConfigError(cmd + ": input '" + c.input.string() + "' is not a readable file");
  if (c.verbs && !fs::is_regular_file(*c.verbs, ec)) {
    throw ConfigError(cmd + ": verbs file '" + c.verbs->string() + "' is not a readable file");
  }
  const fs::path parent = c.output.has_parent_path() ? c.output.parent_path() : fs::path(".");
  if (!fs::is_directory(parent, ec)) {
    throw ConfigError(cmd + ": output directory '" + parent.string() + "' does not exist");
  }
}

void run_build_log(const RunConfig& c) {
  auto records = parse_review_records(read_file(c.input));
  BuildOptions options;
  options.source = c.input.filename().string();
  if (c.verbs) options.verbs = load_verb_rules(*c.verbs);
  if (c.from) {
    options.window = TimeWindow{*c.from, *c.to};
    records = time_window_filter(records, *c.from, *c.to);
  }
  const TraceLog result = build_log(records, *c.strategy, options);
  write_file(c.output, serialize_csv_log(result.log));
  write_file(with_suffix(c.output, ".meta.json"), metadata_to_json(result.metadata));
}

void run_mine(const RunConfig& c, std::ostream& err) {
  const EventLog log = parse_csv_log(read_file(c.input));
  const AlphaResult result = alpha(log, AlphaOptions{c.alphabet_limit});
  for (const auto& w : result.warnings) {
    nlohmann::ordered_json j;
    j["warning"] = w;
    err << j.dump() << '\n';
  }
  write_file(with_suffix(c.output, ".net.json"), net_to_json(result.net));
  write_file(with_suffix(c.output, ".dot"), to_dot(result.net));
  write_file(with_suffix(c.output, ".intermediates.json"), intermediates_to_json(result.intermediates));
}

void run_social(const RunConfig& c) {
  const SocialGraph graph = c.relation.value_or(SocialRelation::Handover) == SocialRelation::Review
                                ? review_relation(parse_review_records(read_file(c.input)))
                                : handover_of_work(parse_csv_log(read_file(c.input)));
  write_file(with_suffix(c.output, ".json"), graph_to_json(graph));
  write_file(with_suffix(c.output, ".dot"), graph_to_dot(graph));
}

void run_simulate(const RunConfig& c, std::ostream& err) {
  const WorkflowNet net = net_from_json(read_file(c.input));
  const auto result = generate_traces(net, c.max_length.value_or(kDefaultMaxLength),
                                      c.max_traces.value_or(kDefaultMaxTraces));
  std::vector<ActivitySequence> seqs(result.traces.begin(), result.traces.end());
  write_file(c.output, serialize_csv_log(EventLog::from_sequences(seqs)));
  if (result.status != GenerationStatus::Complete) {
    nlohmann::ordered_json j;
    j["status"] = result.status == GenerationStatus::BoundsExceeded ? "bounds_exceeded" : "no_complete_sequence";
    j["traces"] = seqs.size();
    err << j.dump() << '\n';
  }
}

void run_export(const RunConfig& c) {
  const std::string text = read_file(c.input);
  const std::string& format = *c.format;
  if (c.input.extension() == ".csv") {
    if (format != "csv") throw ConfigError("export: event logs can only be exported as csv");
    write_file(c.output, serialize_csv_log(parse_csv_log(text)));
    return;
  }
  nlohmann::json probe;
  try {
    probe = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("export: input is neither CSV nor JSON: ") + e.what());
  }
  if (probe.is_object() && probe.contains("places")) {
    const WorkflowNet net = net_from_json(text);
    if (format == "dot") return write_file(c.output, to_dot(net));
    if (format == "json") return write_file(c.output, net_to_json(net));
    throw ConfigError("export: nets can be exported as dot or json");
  }
  if (probe.is_object() && probe.contains("nodes")) {
    const SocialGraph graph = graph_from_json(text);
    if (format == "dot") return write_file(c.output, graph_to_dot(graph));
    if (format == "json") return write_file(c.output, graph_to_json(graph));
    throw ConfigError("export: graphs can be exported as dot or json");
  }
  throw ParseError("export: unrecognized JSON artifact (expected a net or a social graph)");
}

std::optional<CaseStrategy> strategy_from(const std::string& name, std::optional<long long> window) {
  if (name.empty()) {
    if (window) throw ConfigError("--commit-window requires --strategy commit");
    return std::nullopt;
  }
  if (name != "commit" && window) throw ConfigError("--commit-window requires --strategy commit");
  if (name == "artifact") return CaseStrategy::by_artifact();
  if (name == "thread") return CaseStrategy::by_thread();
  if (name == "topic") return CaseStrategy::by_topic();
  if (!window || *window <= 0) throw ConfigError("--strategy commit requires a positive --commit-window (seconds)");
  return CaseStrategy::by_commit(std::chrono::seconds{*window});
}

std::size_t alphabet_limit_from_env() {
  const char* raw = std::getenv(kAlphabetLimitEnv);
  if (raw == nullptr || *raw == '\0') return 16;
  char* end = nullptr;
  errno = 0;
  const unsigned long long v = std::strtoull(raw, &end, 10);
  if (errno != 0 || *end != '\0' || v == 0 || raw[0] == '-') {
    throw ConfigError(std::string(kAlphabetLimitEnv) + " must be a positive integer");
  }
  return static_cast<std::size_t>(v);
}

}  // namespace

std::vector<VerbRule> load_verb_rules(const fs::path& path) {
  const std::string text = read_file(path);
  try {
    const auto j = nlohmann::json::parse(text);
    std::vector<VerbRule> rules;
    for (const auto& item : j) {
      VerbRule rule{item.at("keyword").get<std::string>(), item.at("verb").get<std::string>(),
                    item.value("level", std::string{})};
      if (rule.keyword.empty() || rule.verb.empty()) throw ParseError("verb rules need a keyword and a verb");
      rules.push_back(std::move(rule));
    }
    return rules;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError("invalid verb rules '" + path.string() + "': " + e.what());
  }
}

int run(const RunConfig& config, std::ostream& err) {
  try {
    validate(config);
    switch (config.command) {
      case Command::BuildLog: run_build_log(config); break;
      case Command::Footprint:
        write_file(config.output, footprint_to_csv(footprint(parse_csv_log(read_file(config.input)))));
        break;
      case Command::Mine: run_mine(config, err); break;
      case Command::Social: run_social(config); break;
      case Command::Simulate: run_simulate(config, err); break;
      case Command::Export: run_export(config); break;
    }
    return kOk;
  } catch (const ConfigError& e) {
    report(err, kInvalidConfig, "config", e.what());
    return kInvalidConfig;
  } catch (const AlphabetLimitError& e) {
    report(err, kAlphabetLimit, "alphabet_limit", e.what());
    return kAlphabetLimit;
  } catch (const IoError& e) {
    report(err, kIoOrParse, "io", e.what());
    return kIoOrParse;
  } catch (const std::exception& e) {
    report(err, kIoOrParse, "parse", e.what());
    return kIoOrParse;
  }
}

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Process mining for code-review activity: event logs, footprints, alpha-mined nets, social graphs",
               "trailnet"};
  std::string command;
  std::string input;
  std::string output;
  std::string strategy;
  std::optional<long long> commit_window;
  std::string from;
  std::string to;
  std::optional<std::size_t> max_length;
  std::optional<std::size_t> max_traces;
  std::optional<std::string> format;
  std::string relation;
  std::string verbs;

  app.add_option("command", command, "build-log | footprint | mine | social | simulate | export")
      ->required()
      ->check(CLI::IsMember({"build-log", "footprint", "mine", "social", "simulate", "export"}));
  app.add_option("--input", input, "Input file");
  app.add_option("--output", output, "Output file (mine and social: path stem)");
  app.add_option("--strategy", strategy, "Case strategy for build-log")
      ->check(CLI::IsMember({"artifact", "thread", "topic", "commit"}));
  app.add_option("--commit-window", commit_window, "Period length in seconds for --strategy commit");
  app.add_option("--from", from, "Window start, YYYY-MM-DDThh:mm:ssZ (build-log)");
  app.add_option("--to", to, "Window end, YYYY-MM-DDThh:mm:ssZ (build-log)");
  app.add_option("--max-length", max_length, "Longest firing sequence explored (simulate)");
  app.add_option("--max-traces", max_traces, "Most traces generated (simulate)");
  app.add_option("--format", format, "Export format")->check(CLI::IsMember({"dot", "json", "csv"}));
  app.add_option("--relation", relation, "Social graph kind")->check(CLI::IsMember({"handover", "review"}));
  app.add_option("--verbs", verbs, "Keyword-to-verb mapping JSON (build-log)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    report(err, kInvalidConfig, "config", e.what());
    return kInvalidConfig;
  }

  RunConfig config;
  try {
    if (command == "build-log") config.command = Command::BuildLog;
    else if (command == "footprint") config.command = Command::Footprint;
    else if (command == "mine") config.command = Command::Mine;
    else if (command == "social") config.command = Command::Social;
    else if (command == "simulate") config.command = Command::Simulate;
    else config.command = Command::Export;
    config.input = input;
    config.output = output;
    config.strategy = strategy_from(strategy, commit_window);
    try {
      if (!from.empty()) config.from = parse_timestamp(from);
      if (!to.empty()) config.to = parse_timestamp(to);
    } catch (const ParseError& e) {
      throw ConfigError(e.what());
    }
    config.max_length = max_length;
    config.max_traces = max_traces;
    config.format = format;
    if (!relation.empty()) {
      config.relation = relation == "review" ? SocialRelation::Review : SocialRelation::Handover;
    }
    if (!verbs.empty()) config.verbs = fs::path(verbs);
    config.alphabet_limit = alphabet_limit_from_env();
  } catch (const Error& e) {
    report(err, kInvalidConfig, "config", e.what());
    return kInvalidConfig;
  }
  return run(config, err);
}

}  // namespace trailnet::cli
