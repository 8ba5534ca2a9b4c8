#pragma once

// Event-log data model (log -> case -> event) and its CSV interchange format.
//
// CSV layout: header `case_id,activity,originator,timestamp`, one event per
// row. The last two columns may be empty. Timestamps are ISO-8601 UTC with
// second precision (`YYYY-MM-DDThh:mm:ssZ`).

#include <chrono>
#include <istream>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace trailnet {

using Timestamp = std::chrono::sys_seconds;
using Activity = std::string;
using ActivitySequence = std::vector<Activity>;

/// Parses `YYYY-MM-DDThh:mm:ssZ`. Throws ParseError on anything else.
Timestamp parse_timestamp(std::string_view text);
std::string format_timestamp(Timestamp ts);

struct Event {
  std::string case_id;
  Activity activity;
  std::optional<std::string> originator;
  std::optional<Timestamp> timestamp;

  friend bool operator==(const Event&, const Event&) = default;
};

/// The events of one case. Construction validates the events and, when every
/// event carries a timestamp, stably sorts them by time.
class Trace {
 public:
  Trace(std::string case_id, std::vector<Event> events);

  const std::string& case_id() const noexcept { return case_id_; }
  const std::vector<Event>& events() const noexcept { return events_; }
  std::size_t size() const noexcept { return events_.size(); }

  ActivitySequence activities() const;
  bool timestamped() const noexcept;

  friend bool operator==(const Trace&, const Trace&) = default;

 private:
  std::string case_id_;
  std::vector<Event> events_;
};

class EventLog {
 public:
  EventLog() = default;
  explicit EventLog(std::vector<Trace> traces);

  /// Convenience for fixtures: case ids are "1", "2", ... in order.
  static EventLog from_sequences(const std::vector<ActivitySequence>& sequences);

  const std::vector<Trace>& traces() const noexcept { return traces_; }
  const std::set<Activity>& alphabet() const noexcept { return alphabet_; }
  bool empty() const noexcept { return traces_.empty(); }
  std::size_t event_count() const noexcept;

  friend bool operator==(const EventLog&, const EventLog&) = default;

 private:
  std::vector<Trace> traces_;
  std::set<Activity> alphabet_;
};

EventLog parse_csv_log(std::istream& in);
EventLog parse_csv_log(std::string_view text);

/// Canonical CSV: exact header, `\n` line endings, traces in log order.
std::string serialize_csv_log(const EventLog& log);

/// One activity sequence per trace, in log order. Duplicates are kept.
std::vector<ActivitySequence> simplify(const EventLog& log);

/// The distinct traces of `simplify(log)`.
std::set<ActivitySequence> trace_set(const EventLog& log);

std::set<Activity> alphabet(const EventLog& log);

}  // namespace trailnet
