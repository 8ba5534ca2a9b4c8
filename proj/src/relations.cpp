#include "trailnet/relations.hpp"

#include <algorithm>

#include "trailnet/csv.hpp"
#include "trailnet/error.hpp"

namespace trailnet {

std::string_view symbol(Relation r) {
  switch (r) {
    case Relation::CausalForward: return "->";
    case Relation::CausalBackward: return "<-";
    case Relation::Unrelated: return "#";
    case Relation::Parallel: return "||";
  }
  return "?";
}

std::set<ActivityPair> direct_succession(const EventLog& log) {
  std::set<ActivityPair> out;
  for (const auto& trace : log.traces()) {
    const auto& events = trace.events();
    for (std::size_t i = 0; i + 1 < events.size(); ++i) {
      out.emplace(events[i].activity, events[i + 1].activity);
    }
  }
  return out;
}

FootprintMatrix::FootprintMatrix(const std::set<Activity>& alphabet,
                                 const std::set<ActivityPair>& succession)
    : alphabet_(alphabet.begin(), alphabet.end()),
      cells_(alphabet_.size() * alphabet_.size(), Relation::Unrelated) {
  const std::size_t n = alphabet_.size();
  std::vector<char> follows(n * n, 0);
  for (const auto& [a, b] : succession) {
    follows[index_of(a) * n + index_of(b)] = 1;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const bool ab = follows[i * n + j];
      const bool ba = follows[j * n + i];
      Relation r = Relation::Unrelated;
      if (ab && ba) r = Relation::Parallel;
      else if (ab) r = Relation::CausalForward;
      else if (ba) r = Relation::CausalBackward;
      cells_[i * n + j] = r;
    }
  }
}

bool FootprintMatrix::contains(std::string_view activity) const {
  return std::binary_search(alphabet_.begin(), alphabet_.end(), activity);
}

std::size_t FootprintMatrix::index_of(std::string_view activity) const {
  auto it = std::lower_bound(alphabet_.begin(), alphabet_.end(), activity);
  if (it == alphabet_.end() || *it != activity) {
    throw InvalidArgument("unknown activity '" + std::string(activity) + "'");
  }
  return static_cast<std::size_t>(it - alphabet_.begin());
}

Relation FootprintMatrix::at(std::string_view a, std::string_view b) const {
  return at_index(index_of(a), index_of(b));
}

std::vector<ActivityPair> FootprintMatrix::causal_pairs() const {
  std::vector<ActivityPair> out;
  for (std::size_t i = 0; i < size(); ++i) {
    for (std::size_t j = 0; j < size(); ++j) {
      if (at_index(i, j) == Relation::CausalForward) out.emplace_back(alphabet_[i], alphabet_[j]);
    }
  }
  return out;
}

FootprintMatrix footprint(const EventLog& log) {
  return FootprintMatrix(log.alphabet(), direct_succession(log));
}

Relation relation(const FootprintMatrix& matrix, std::string_view a, std::string_view b) {
  return matrix.at(a, b);
}

std::string footprint_to_csv(const FootprintMatrix& matrix) {
  std::string out;
  for (const auto& a : matrix.alphabet()) {
    out += ',';
    out += csv::escape_field(a);
  }
  out += '\n';
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    out += csv::escape_field(matrix.alphabet()[i]);
    for (std::size_t j = 0; j < matrix.size(); ++j) {
      out += ',';
      out += symbol(matrix.at_index(i, j));
    }
    out += '\n';
  }
  return out;
}

}  // namespace trailnet
