#pragma once

// Alpha-algorithm process discovery: event log -> workflow net.

#include <compare>
#include <cstddef>
#include <set>
#include <string>
#include <vector>

#include "trailnet/event_log.hpp"
#include "trailnet/petri_net.hpp"
#include "trailnet/relations.hpp"

namespace trailnet {

using ActivitySet = std::set<Activity>;

/// A candidate place: every activity in `inputs` causally precedes every
/// activity in `outputs`; activities within each side are mutually unrelated.
struct PlacePair {
  ActivitySet inputs;
  ActivitySet outputs;

  friend auto operator<=>(const PlacePair&, const PlacePair&) = default;
  friend bool operator==(const PlacePair&, const PlacePair&) = default;
};

using PlacePairSet = std::set<PlacePair>;

struct AlphaIntermediates {
  ActivitySet all_tasks;      // T_W
  ActivitySet initial_tasks;  // T_I
  ActivitySet final_tasks;    // T_O
  PlacePairSet candidates;    // X_W
  PlacePairSet maximal;       // Y_W
};

struct AlphaOptions {
  /// Mining refuses alphabets larger than this (AlphabetLimitError).
  std::size_t alphabet_limit = 16;
};

struct AlphaResult {
  WorkflowNet net;
  AlphaIntermediates intermediates;
  /// Transitions that are neither initial/final nor part of any place.
  std::vector<std::string> warnings;
};

inline constexpr const char* kSourcePlace = "i_W";
inline constexpr const char* kSinkPlace = "o_W";

/// Canonical place name, e.g. `p({A},{B,E})`.
std::string place_name(const PlacePair& pair);

ActivitySet initial_tasks(const EventLog& log);
ActivitySet final_tasks(const EventLog& log);

/// Every (A, B) of non-empty activity sets satisfying the causal and
/// mutual-unrelatedness conditions. Only activities that take part in some
/// causal cell are considered, and sets are grown by backtracking so that
/// non-unrelated members are pruned early.
PlacePairSet candidate_pairs(const FootprintMatrix& footprint);

/// Elements of `candidates` not strictly contained, componentwise, in another.
PlacePairSet maximal_pairs(const PlacePairSet& candidates);

AlphaResult alpha(const EventLog& log, const AlphaOptions& options = {});

/// Keys `T_W`, `T_I`, `T_O`, `X_W`, `Y_W`; pairs are `[[inputs...],[outputs...]]`.
std::string intermediates_to_json(const AlphaIntermediates& intermediates);

}  // namespace trailnet
