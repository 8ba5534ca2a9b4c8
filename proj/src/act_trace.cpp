#include "trailnet/act_trace.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include <json.hpp>

#include "trailnet/error.hpp"

namespace trailnet {

namespace {

void validate_record(const ReviewRecord& r) {
  if (r.artifact_id.empty()) throw InvalidArgument("review record has empty artifact_id");
  if (r.reviewer.empty()) throw InvalidArgument("review record on '" + r.artifact_id + "' has empty reviewer");
}

bool contains_ignore_case(std::string_view haystack, std::string_view needle) {
  if (needle.empty()) return false;
  auto it = std::search(haystack.begin(), haystack.end(), needle.begin(), needle.end(), [](char a, char b) {
    return std::tolower(static_cast<unsigned char>(a)) == std::tolower(static_cast<unsigned char>(b));
  });
  return it != haystack.end();
}

std::optional<std::string> optional_string(const nlohmann::json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  return it->get<std::string>();
}

// Groups record indices by case key, each group in timestamp order (stable).
std::map<std::string, std::vector<std::size_t>> group_cases(const std::vector<ReviewRecord>& records,
                                                            const CaseStrategy& strategy) {
  std::map<std::string, std::vector<std::size_t>> cases;
  for (std::size_t i = 0; i < records.size(); ++i) {
    validate_record(records[i]);
    cases[strategy.case_key(records[i])].push_back(i);
  }
  for (auto& [key, members] : cases) {
    std::stable_sort(members.begin(), members.end(), [&](std::size_t a, std::size_t b) {
      return records[a].timestamp < records[b].timestamp;
    });
  }
  return cases;
}

}  // namespace

std::vector<ReviewRecord> parse_review_records(std::istream& in) {
  std::vector<ReviewRecord> out;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      if (!j.is_object()) throw ParseError("record must be a JSON object", line_no);
      ReviewRecord r;
      r.artifact_id = j.at("artifact_id").get<std::string>();
      r.submitter = j.value("submitter", std::string{});
      r.reviewer = j.at("reviewer").get<std::string>();
      r.comment = j.value("comment", std::string{});
      r.timestamp = parse_timestamp(j.at("timestamp").get<std::string>());
      r.thread_id = optional_string(j, "thread_id");
      r.topic = optional_string(j, "topic");
      validate_record(r);
      out.push_back(std::move(r));
    } catch (const nlohmann::json::exception& e) {
      throw ParseError(e.what(), line_no);
    } catch (const ParseError& e) {
      if (e.line() != 0) throw;
      throw ParseError(e.what(), line_no);
    } catch (const InvalidArgument& e) {
      throw ParseError(e.what(), line_no);
    }
  }
  return out;
}

std::vector<ReviewRecord> parse_review_records(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_review_records(in);
}

std::string serialize_review_record(const ReviewRecord& r) {
  nlohmann::ordered_json j;
  j["artifact_id"] = r.artifact_id;
  j["submitter"] = r.submitter;
  j["reviewer"] = r.reviewer;
  j["comment"] = r.comment;
  j["timestamp"] = format_timestamp(r.timestamp);
  if (r.thread_id) j["thread_id"] = *r.thread_id;
  if (r.topic) j["topic"] = *r.topic;
  return j.dump();
}

CaseStrategy CaseStrategy::by_commit(std::chrono::seconds window) {
  if (window.count() <= 0) throw InvalidArgument("commit window must be positive");
  return CaseStrategy(Kind::ByCommit, window);
}

std::string_view CaseStrategy::name() const noexcept {
  switch (kind_) {
    case Kind::ByArtifact: return "artifact";
    case Kind::ByThread: return "thread";
    case Kind::ByTopic: return "topic";
    case Kind::ByCommit: return "commit";
  }
  return "unknown";
}

std::string CaseStrategy::case_key(const ReviewRecord& r) const {
  switch (kind_) {
    case Kind::ByArtifact:
      return r.artifact_id;
    case Kind::ByThread:
      if (!r.thread_id || r.thread_id->empty()) {
        throw InvalidArgument("record on '" + r.artifact_id + "' has no thread_id");
      }
      return *r.thread_id;
    case Kind::ByTopic:
      if (!r.topic || r.topic->empty()) throw InvalidArgument("record on '" + r.artifact_id + "' has no topic");
      return *r.topic;
    case Kind::ByCommit: {
      if (r.submitter.empty()) throw InvalidArgument("record on '" + r.artifact_id + "' has no submitter");
      const auto since_epoch = r.timestamp.time_since_epoch();
      auto bucket = since_epoch / window_;
      if (since_epoch.count() < 0 && since_epoch % window_ != std::chrono::seconds{0}) --bucket;
      return r.submitter + "@" + format_timestamp(Timestamp{bucket * window_});
    }
  }
  throw InvalidArgument("unknown case strategy");
}

std::vector<Role> assign_roles(const std::vector<ReviewRecord>& records, const CaseStrategy& strategy) {
  std::vector<Role> roles(records.size(), Role::Responder);
  for (const auto& [key, members] : group_cases(records, strategy)) {
    const std::string& initiator = records[members.front()].reviewer;
    for (std::size_t i : members) {
      if (records[i].reviewer == initiator) roles[i] = Role::Initiator;
    }
  }
  return roles;
}

TraceLog build_log(const std::vector<ReviewRecord>& records, const CaseStrategy& strategy,
                   const BuildOptions& options) {
  if (records.empty()) throw InvalidArgument("no review records");
  std::vector<Trace> traces;
  for (const auto& [key, members] : group_cases(records, strategy)) {
    const std::string& initiator = records[members.front()].reviewer;
    std::vector<Event> events;
    events.reserve(members.size());
    for (std::size_t i : members) {
      const ReviewRecord& r = records[i];
      std::string activity(r.reviewer == initiator ? kInitiatorActivity : kResponderActivity);
      for (const auto& rule : options.verbs) {
        if (contains_ignore_case(r.comment, rule.keyword)) {
          activity = rule.verb;
          break;
        }
      }
      events.push_back(Event{key, std::move(activity), r.reviewer, r.timestamp});
    }
    traces.emplace_back(key, std::move(events));
  }
  return TraceLog{EventLog(std::move(traces)),
                  TraceLogMetadata{strategy, options.window, records.size(), options.source}};
}

std::vector<ReviewRecord> time_window_filter(const std::vector<ReviewRecord>& records, Timestamp start,
                                             Timestamp end) {
  if (end < start) throw InvalidArgument("time window end precedes start");
  std::vector<ReviewRecord> out;
  std::copy_if(records.begin(), records.end(), std::back_inserter(out),
               [&](const ReviewRecord& r) { return start <= r.timestamp && r.timestamp <= end; });
  return out;
}

std::map<std::string, std::vector<std::chrono::seconds>> durations(const EventLog& log) {
  std::map<std::string, std::vector<std::chrono::seconds>> out;
  for (const auto& trace : log.traces()) {
    const auto& events = trace.events();
    auto& gaps = out[trace.case_id()];
    for (const auto& e : events) {
      if (!e.timestamp) throw InvalidArgument("case '" + trace.case_id() + "' has an untimestamped event");
    }
    for (std::size_t i = 0; i + 1 < events.size(); ++i) {
      gaps.push_back(*events[i + 1].timestamp - *events[i].timestamp);
    }
  }
  return out;
}

std::string metadata_to_json(const TraceLogMetadata& m) {
  nlohmann::ordered_json j;
  j["strategy"] = std::string(m.strategy.name());
  if (m.strategy.kind() == CaseStrategy::Kind::ByCommit) {
    j["commit_window_seconds"] = m.strategy.window().count();
  }
  if (m.window) {
    j["window"] = {{"from", format_timestamp(m.window->start)}, {"to", format_timestamp(m.window->end)}};
  } else {
    j["window"] = nullptr;
  }
  j["record_count"] = m.record_count;
  if (!m.source.empty()) j["source"] = m.source;
  return j.dump(2) + "\n";
}

}  // namespace trailnet
