#pragma once

// Weighted directed graphs over people: handover of work between consecutive
// originators in a case, and reviewer -> submitter review relations.

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "trailnet/act_trace.hpp"
#include "trailnet/event_log.hpp"

namespace trailnet {

class SocialGraph {
 public:
  using Edge = std::pair<std::string, std::string>;

  void add_node(const std::string& name);
  /// Adds both endpoints as nodes. `weight` must be positive.
  void add_edge(const std::string& from, const std::string& to, std::uint64_t weight = 1);

  const std::set<std::string>& nodes() const noexcept { return nodes_; }
  const std::map<Edge, std::uint64_t>& edges() const noexcept { return edges_; }
  std::uint64_t weight(const std::string& from, const std::string& to) const;
  std::uint64_t total_weight() const noexcept;

  friend bool operator==(const SocialGraph&, const SocialGraph&) = default;

 private:
  std::set<std::string> nodes_;
  std::map<Edge, std::uint64_t> edges_;
};

/// Throws InvalidArgument if any event lacks an originator.
SocialGraph handover_of_work(const EventLog& log);

/// Self-reviews only register the person as a node. Records with an empty
/// submitter contribute the reviewer node only.
SocialGraph review_relation(const std::vector<ReviewRecord>& records);

std::string graph_to_dot(const SocialGraph& graph);

/// `{"nodes": [...], "edges": [[from, to, weight], ...]}`, sorted.
std::string graph_to_json(const SocialGraph& graph);
SocialGraph graph_from_json(std::string_view text);

}  // namespace trailnet
