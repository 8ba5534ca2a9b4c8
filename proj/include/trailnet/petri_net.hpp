#pragma once

// Workflow nets with ordinary (weight-1) arcs and token-game semantics.

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "trailnet/event_log.hpp"

namespace trailnet {

using Arc = std::pair<std::string, std::string>;

class WorkflowNet {
 public:
  /// Validates: source and sink are places, place and transition names are
  /// disjoint, arcs are bipartite and only touch declared nodes, the source
  /// has no incoming arc and the sink no outgoing arc.
  WorkflowNet(std::set<std::string> places, std::set<std::string> transitions,
              std::set<Arc> arcs, std::string source, std::string sink);

  const std::set<std::string>& places() const noexcept { return places_; }
  const std::set<std::string>& transitions() const noexcept { return transitions_; }
  const std::set<Arc>& arcs() const noexcept { return arcs_; }
  const std::string& source() const noexcept { return source_; }
  const std::string& sink() const noexcept { return sink_; }

  bool is_place(std::string_view name) const;
  bool is_transition(std::string_view name) const;

  /// Input/output places of a transition, or input/output transitions of a
  /// place. Throws InvalidArgument for unknown names.
  const std::set<std::string>& preset(std::string_view node) const;
  const std::set<std::string>& postset(std::string_view node) const;

  friend bool operator==(const WorkflowNet& a, const WorkflowNet& b) {
    return a.places_ == b.places_ && a.transitions_ == b.transitions_ && a.arcs_ == b.arcs_ &&
           a.source_ == b.source_ && a.sink_ == b.sink_;
  }

 private:
  std::set<std::string> places_;
  std::set<std::string> transitions_;
  std::set<Arc> arcs_;
  std::string source_;
  std::string sink_;
  std::map<std::string, std::set<std::string>, std::less<>> preset_;
  std::map<std::string, std::set<std::string>, std::less<>> postset_;
};

/// Token counts per place. Places with zero tokens are not stored, so two
/// markings compare equal exactly when every place holds the same count.
class Marking {
 public:
  Marking() = default;
  Marking(std::initializer_list<std::pair<const std::string, std::uint32_t>> init);

  std::uint32_t operator[](std::string_view place) const;
  void add(const std::string& place, std::uint32_t count = 1);
  /// Throws InvalidArgument when the place holds fewer than `count` tokens.
  void remove(const std::string& place, std::uint32_t count = 1);

  const std::map<std::string, std::uint32_t, std::less<>>& tokens() const noexcept { return tokens_; }
  std::uint64_t total() const noexcept;
  bool empty() const noexcept { return tokens_.empty(); }

  friend bool operator==(const Marking&, const Marking&) = default;
  friend auto operator<=>(const Marking&, const Marking&) = default;

 private:
  std::map<std::string, std::uint32_t, std::less<>> tokens_;
};

std::set<std::string> enabled(const WorkflowNet& net, const Marking& marking);

Marking fire(const WorkflowNet& net, const Marking& marking, std::string_view transition);

struct ReplayResult {
  bool fits = false;
  std::uint64_t consumed_missing = 0;
  std::uint64_t produced_remaining = 0;
  std::vector<std::string> firing_sequence;
  Marking final_marking;
};

/// Plays `trace` from {source:1}. Missing input tokens are created and
/// counted instead of aborting. After the last activity one sink token is
/// consumed; every other token left behind counts as remaining.
ReplayResult replay(const WorkflowNet& net, const ActivitySequence& trace);

enum class GenerationStatus {
  Complete,            // every complete sequence within the bounds was found
  BoundsExceeded,      // the search was cut by max_length or max_traces
  NoCompleteSequence,  // the full search found nothing reaching {sink:1}
};

struct GenerationResult {
  std::set<ActivitySequence> traces;
  GenerationStatus status = GenerationStatus::Complete;
};

/// Depth-first enumeration of firing sequences from {source:1} that end in
/// exactly {sink:1}. Paths are cut at `max_length` transitions.
GenerationResult generate_traces(const WorkflowNet& net, std::size_t max_length,
                                 std::size_t max_traces);

/// Transition sets equal and the multisets of place signatures
/// (role, input transitions, output transitions) equal. Place names are
/// ignored.
bool isomorphic(const WorkflowNet& a, const WorkflowNet& b);

std::string to_dot(const WorkflowNet& net);

/// Keys `places`, `transitions`, `arcs`, `source`, `sink`; arrays sorted.
std::string net_to_json(const WorkflowNet& net);
WorkflowNet net_from_json(std::string_view text);

}  // namespace trailnet
