#pragma once

// Command-line front end. Each subcommand runs one pipeline stage:
//
//   build-log   review records (JSON lines) -> event-log CSV + `<output>.meta.json`
//   footprint   event-log CSV -> footprint CSV
//   mine        event-log CSV -> `<output>.net.json`, `<output>.dot`,
//               `<output>.intermediates.json`
//   social      event-log CSV (handover) or review records (`--relation review`)
//               -> `<output>.json`, `<output>.dot`
//   simulate    net JSON -> event-log CSV of generated traces
//   export      net JSON, graph JSON or event-log CSV -> `--format` rendering
//
// Exit codes: 0 success, 1 I/O or parse failure, 2 invalid configuration,
// 3 alphabet limit exceeded. Failures print one JSON line on stderr.

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "trailnet/act_trace.hpp"

namespace trailnet::cli {

enum class Command { BuildLog, Footprint, Mine, Social, Simulate, Export };
enum class SocialRelation { Handover, Review };

enum ExitCode : int {
  kOk = 0,
  kIoOrParse = 1,
  kInvalidConfig = 2,
  kAlphabetLimit = 3,
};

inline constexpr const char* kAlphabetLimitEnv = "TRAILNET_ALPHABET_LIMIT";

struct RunConfig {
  Command command = Command::Mine;
  std::filesystem::path input;
  std::filesystem::path output;
  std::optional<CaseStrategy> strategy;
  std::optional<Timestamp> from;
  std::optional<Timestamp> to;
  std::optional<std::size_t> max_length;
  std::optional<std::size_t> max_traces;
  std::optional<std::string> format;
  std::optional<SocialRelation> relation;
  std::optional<std::filesystem::path> verbs;
  std::size_t alphabet_limit = 16;
};

inline constexpr std::size_t kDefaultMaxLength = 32;
inline constexpr std::size_t kDefaultMaxTraces = 1000;

/// Parses argv into a config, then runs it. Never throws.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Validates and executes. Never throws.
int run(const RunConfig& config, std::ostream& err);

/// Reads the verb-mapping file: a JSON array of
/// `{"keyword": ..., "verb": ..., "level": ...}` (level optional).
std::vector<VerbRule> load_verb_rules(const std::filesystem::path& path);

}  // namespace trailnet::cli
