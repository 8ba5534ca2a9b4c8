#include "trailnet/event_log.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <sstream>
#include <unordered_map>

#include "trailnet/csv.hpp"
#include "trailnet/error.hpp"

namespace trailnet {

namespace {

constexpr std::string_view kHeader = "case_id,activity,originator,timestamp";

int read_digits(std::string_view text, std::size_t pos, std::size_t count) {
  int value = 0;
  for (std::size_t i = pos; i < pos + count; ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
      throw ParseError("unparseable timestamp '" + std::string(text) + "'");
    }
    value = value * 10 + (text[i] - '0');
  }
  return value;
}

void validate_event(const Event& e) {
  if (e.case_id.empty()) throw InvalidArgument("event has empty case_id");
  if (e.activity.empty()) throw InvalidArgument("event in case '" + e.case_id + "' has empty activity");
}

}  // namespace

Timestamp parse_timestamp(std::string_view text) {
  // YYYY-MM-DDThh:mm:ssZ
  if (text.size() != 20 || text[4] != '-' || text[7] != '-' || text[10] != 'T' ||
      text[13] != ':' || text[16] != ':' || text[19] != 'Z') {
    throw ParseError("unparseable timestamp '" + std::string(text) +
                     "' (expected YYYY-MM-DDThh:mm:ssZ)");
  }
  const int year = read_digits(text, 0, 4);
  const int month = read_digits(text, 5, 2);
  const int day = read_digits(text, 8, 2);
  const int hour = read_digits(text, 11, 2);
  const int minute = read_digits(text, 14, 2);
  const int second = read_digits(text, 17, 2);

  using namespace std::chrono;
  const year_month_day ymd{std::chrono::year{year}, std::chrono::month{static_cast<unsigned>(month)},
                           std::chrono::day{static_cast<unsigned>(day)}};
  if (!ymd.ok() || hour > 23 || minute > 59 || second > 59) {
    throw ParseError("timestamp out of range '" + std::string(text) + "'");
  }
  return sys_days{ymd} + hours{hour} + minutes{minute} + seconds{second};
}

std::string format_timestamp(Timestamp ts) {
  using namespace std::chrono;
  const auto day_point = floor<days>(ts);
  const year_month_day ymd{day_point};
  const hh_mm_ss hms{ts - day_point};
  char buf[32];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()),
                static_cast<int>(hms.hours().count()), static_cast<int>(hms.minutes().count()),
                static_cast<int>(hms.seconds().count()));
  return buf;
}

Trace::Trace(std::string case_id, std::vector<Event> events)
    : case_id_(std::move(case_id)), events_(std::move(events)) {
  if (case_id_.empty()) throw InvalidArgument("trace has empty case_id");
  if (events_.empty()) throw InvalidArgument("trace '" + case_id_ + "' has no events");
  std::size_t stamped = 0;
  for (const auto& e : events_) {
    validate_event(e);
    if (e.case_id != case_id_) {
      throw InvalidArgument("event with case_id '" + e.case_id + "' placed in trace '" + case_id_ + "'");
    }
    if (e.timestamp) ++stamped;
  }
  if (stamped != 0 && stamped != events_.size()) {
    throw InvalidArgument("trace '" + case_id_ + "' mixes timestamped and untimestamped events");
  }
  if (stamped != 0) {
    std::stable_sort(events_.begin(), events_.end(),
                     [](const Event& a, const Event& b) { return *a.timestamp < *b.timestamp; });
  }
}

ActivitySequence Trace::activities() const {
  ActivitySequence out;
  out.reserve(events_.size());
  for (const auto& e : events_) out.push_back(e.activity);
  return out;
}

bool Trace::timestamped() const noexcept { return events_.front().timestamp.has_value(); }

EventLog::EventLog(std::vector<Trace> traces) : traces_(std::move(traces)) {
  std::set<std::string> seen;
  for (const auto& t : traces_) {
    if (!seen.insert(t.case_id()).second) {
      throw InvalidArgument("duplicate case_id '" + t.case_id() + "'");
    }
    for (const auto& e : t.events()) alphabet_.insert(e.activity);
  }
}

EventLog EventLog::from_sequences(const std::vector<ActivitySequence>& sequences) {
  std::vector<Trace> traces;
  traces.reserve(sequences.size());
  for (std::size_t i = 0; i < sequences.size(); ++i) {
    const std::string id = std::to_string(i + 1);
    std::vector<Event> events;
    for (const auto& a : sequences[i]) events.push_back(Event{id, a, std::nullopt, std::nullopt});
    traces.emplace_back(id, std::move(events));
  }
  return EventLog(std::move(traces));
}

std::size_t EventLog::event_count() const noexcept {
  std::size_t n = 0;
  for (const auto& t : traces_) n += t.size();
  return n;
}

EventLog parse_csv_log(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;

  // Strips CR and, for quoted fields spanning lines, keeps reading until the
  // quotes balance. Returns the line number where the record started.
  auto next_record = [&](std::string& record) -> std::optional<std::size_t> {
    if (!std::getline(in, line)) return std::nullopt;
    ++line_no;
    const std::size_t start = line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    record = line;
    while (std::count(record.begin(), record.end(), '"') % 2 != 0) {
      if (!std::getline(in, line)) throw ParseError("unterminated quoted field", start);
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      record += '\n';
      record += line;
    }
    return start;
  };

  std::string record;
  auto header_line = next_record(record);
  if (!header_line) throw ParseError("missing header", 1);
  if (record.size() >= 3 && record.compare(0, 3, "\xEF\xBB\xBF") == 0) record.erase(0, 3);
  if (record != kHeader) {
    throw ParseError("expected header '" + std::string(kHeader) + "'", *header_line);
  }

  std::vector<std::string> order;
  std::unordered_map<std::string, std::vector<Event>> by_case;
  std::unordered_map<std::string, std::size_t> first_line;
  std::vector<std::string> fields;

  while (auto at = next_record(record)) {
    if (record.empty()) continue;
    if (!csv::split_record(record, fields)) throw ParseError("malformed CSV row", *at);
    if (fields.size() != 4) {
      throw ParseError("expected 4 fields, found " + std::to_string(fields.size()), *at);
    }
    Event e;
    e.case_id = std::move(fields[0]);
    e.activity = std::move(fields[1]);
    if (e.case_id.empty()) throw ParseError("empty case_id", *at);
    if (e.activity.empty()) throw ParseError("empty activity", *at);
    if (!fields[2].empty()) e.originator = std::move(fields[2]);
    if (!fields[3].empty()) {
      try {
        e.timestamp = parse_timestamp(fields[3]);
      } catch (const ParseError& err) {
        throw ParseError(err.what(), *at);
      }
    }
    auto [it, inserted] = by_case.try_emplace(e.case_id);
    if (inserted) {
      order.push_back(e.case_id);
      first_line[e.case_id] = *at;
    }
    it->second.push_back(std::move(e));
  }

  std::vector<Trace> traces;
  traces.reserve(order.size());
  for (const auto& id : order) {
    try {
      traces.emplace_back(id, std::move(by_case[id]));
    } catch (const InvalidArgument& err) {
      throw ParseError(err.what(), first_line[id]);
    }
  }
  return EventLog(std::move(traces));
}

EventLog parse_csv_log(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_csv_log(in);
}

std::string serialize_csv_log(const EventLog& log) {
  std::string out(kHeader);
  out += '\n';
  for (const auto& t : log.traces()) {
    for (const auto& e : t.events()) {
      out += csv::escape_field(e.case_id);
      out += ',';
      out += csv::escape_field(e.activity);
      out += ',';
      if (e.originator) out += csv::escape_field(*e.originator);
      out += ',';
      if (e.timestamp) out += format_timestamp(*e.timestamp);
      out += '\n';
    }
  }
  return out;
}

std::vector<ActivitySequence> simplify(const EventLog& log) {
  std::vector<ActivitySequence> out;
  out.reserve(log.traces().size());
  for (const auto& t : log.traces()) out.push_back(t.activities());
  return out;
}

std::set<ActivitySequence> trace_set(const EventLog& log) {
  auto seqs = simplify(log);
  return {seqs.begin(), seqs.end()};
}

std::set<Activity> alphabet(const EventLog& log) { return log.alphabet(); }

}  // namespace trailnet
