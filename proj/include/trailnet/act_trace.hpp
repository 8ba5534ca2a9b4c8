#pragma once

// Turns code-review comment records into an event log. Records are grouped
// into cases by a case strategy; within a case the earliest reviewer is the
// initiator and everybody else a responder.

#include <chrono>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "trailnet/event_log.hpp"

namespace trailnet {

struct ReviewRecord {
  std::string artifact_id;
  std::string submitter;
  std::string reviewer;
  std::string comment;
  Timestamp timestamp;
  std::optional<std::string> thread_id;
  std::optional<std::string> topic;

  friend bool operator==(const ReviewRecord&, const ReviewRecord&) = default;
};

/// Parses JSON-lines records. Blank lines are skipped.
std::vector<ReviewRecord> parse_review_records(std::istream& in);
std::vector<ReviewRecord> parse_review_records(std::string_view text);
std::string serialize_review_record(const ReviewRecord& record);

enum class Role { Initiator, Responder };

inline constexpr std::string_view kInitiatorActivity = "review:initiator";
inline constexpr std::string_view kResponderActivity = "review:responder";

class CaseStrategy {
 public:
  enum class Kind { ByArtifact, ByThread, ByTopic, ByCommit };

  static CaseStrategy by_artifact() { return CaseStrategy(Kind::ByArtifact, {}); }
  static CaseStrategy by_thread() { return CaseStrategy(Kind::ByThread, {}); }
  static CaseStrategy by_topic() { return CaseStrategy(Kind::ByTopic, {}); }
  /// One case per submitter per `window`-long period, periods aligned to the
  /// Unix epoch. Throws InvalidArgument for a non-positive window.
  static CaseStrategy by_commit(std::chrono::seconds window);

  Kind kind() const noexcept { return kind_; }
  std::chrono::seconds window() const noexcept { return window_; }

  /// `artifact`, `thread`, `topic` or `commit`.
  std::string_view name() const noexcept;

  /// Case id for a record. Throws InvalidArgument when the record lacks the
  /// field the strategy groups on.
  std::string case_key(const ReviewRecord& record) const;

  friend bool operator==(const CaseStrategy&, const CaseStrategy&) = default;

 private:
  CaseStrategy(Kind kind, std::chrono::seconds window) : kind_(kind), window_(window) {}

  Kind kind_;
  std::chrono::seconds window_;
};

/// Optional extension of the activity vocabulary: the first rule whose
/// keyword occurs in the comment (ASCII case-insensitive) replaces the
/// role activity with `verb`. `level` is a free-form label and does not
/// affect mining.
struct VerbRule {
  std::string keyword;
  std::string verb;
  std::string level;
};

struct TimeWindow {
  Timestamp start;
  Timestamp end;

  friend bool operator==(const TimeWindow&, const TimeWindow&) = default;
};

struct TraceLogMetadata {
  CaseStrategy strategy;
  std::optional<TimeWindow> window;
  std::size_t record_count = 0;
  std::string source;
};

struct TraceLog {
  EventLog log;
  TraceLogMetadata metadata;
};

struct BuildOptions {
  std::vector<VerbRule> verbs;
  std::optional<TimeWindow> window;  // provenance only; see time_window_filter
  std::string source;
};

/// Cases are emitted in lexicographic case-id order; events within a case in
/// timestamp order with ties kept in input order.
TraceLog build_log(const std::vector<ReviewRecord>& records, const CaseStrategy& strategy,
                   const BuildOptions& options = {});

/// Role of each record within its case, indexed like `records`.
std::vector<Role> assign_roles(const std::vector<ReviewRecord>& records, const CaseStrategy& strategy);

std::vector<ReviewRecord> time_window_filter(const std::vector<ReviewRecord>& records, Timestamp start,
                                             Timestamp end);

/// Gaps between consecutive events per case.
std::map<std::string, std::vector<std::chrono::seconds>> durations(const EventLog& log);

/// Keys `strategy`, `window`, `record_count` (plus `commit_window_seconds`
/// for the commit strategy and `source` when set).
std::string metadata_to_json(const TraceLogMetadata& metadata);

}  // namespace trailnet
