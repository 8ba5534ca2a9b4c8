#pragma once

// Log-based ordering relations and the footprint matrix.

#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "trailnet/event_log.hpp"

namespace trailnet {

enum class Relation {
  CausalForward,   // a -> b
  CausalBackward,  // b -> a
  Unrelated,       // a # b
  Parallel,        // a || b
};

/// `->`, `<-`, `#` or `||`.
std::string_view symbol(Relation r);

using ActivityPair = std::pair<Activity, Activity>;

/// Pairs (a, b) such that b immediately follows a in some trace.
std::set<ActivityPair> direct_succession(const EventLog& log);

class FootprintMatrix {
 public:
  /// Classifies every ordered pair over `alphabet` from the direct-succession
  /// set. Pairs in `succession` that mention activities outside the alphabet
  /// are rejected.
  FootprintMatrix(const std::set<Activity>& alphabet, const std::set<ActivityPair>& succession);

  /// Lexicographically ordered.
  const std::vector<Activity>& alphabet() const noexcept { return alphabet_; }
  std::size_t size() const noexcept { return alphabet_.size(); }
  bool contains(std::string_view activity) const;

  /// Throws InvalidArgument for names outside the alphabet.
  Relation at(std::string_view a, std::string_view b) const;
  Relation at_index(std::size_t row, std::size_t col) const { return cells_[row * size() + col]; }
  std::size_t index_of(std::string_view activity) const;

  /// All (a, b) with a -> b, in lexicographic order.
  std::vector<ActivityPair> causal_pairs() const;

  friend bool operator==(const FootprintMatrix&, const FootprintMatrix&) = default;

 private:
  std::vector<Activity> alphabet_;
  std::vector<Relation> cells_;
};

FootprintMatrix footprint(const EventLog& log);

Relation relation(const FootprintMatrix& matrix, std::string_view a, std::string_view b);

/// CSV grid: the first row is an empty corner cell followed by the alphabet;
/// each following row is an activity then one symbol per column. `\n` endings.
std::string footprint_to_csv(const FootprintMatrix& matrix);

}  // namespace trailnet
