#include "trailnet/social_graph.hpp"

#include <json.hpp>

#include "trailnet/dot.hpp"
#include "trailnet/error.hpp"

namespace trailnet {

void SocialGraph::add_node(const std::string& name) {
  if (name.empty()) throw InvalidArgument("social graph node name is empty");
  nodes_.insert(name);
}

void SocialGraph::add_edge(const std::string& from, const std::string& to, std::uint64_t weight) {
  if (weight == 0) throw InvalidArgument("edge weight must be positive");
  add_node(from);
  add_node(to);
  edges_[{from, to}] += weight;
}

std::uint64_t SocialGraph::weight(const std::string& from, const std::string& to) const {
  auto it = edges_.find({from, to});
  return it == edges_.end() ? 0 : it->second;
}

std::uint64_t SocialGraph::total_weight() const noexcept {
  std::uint64_t n = 0;
  for (const auto& [edge, w] : edges_) n += w;
  return n;
}

SocialGraph handover_of_work(const EventLog& log) {
  SocialGraph g;
  for (const auto& trace : log.traces()) {
    const auto& events = trace.events();
    for (const auto& e : events) {
      if (!e.originator || e.originator->empty()) {
        throw InvalidArgument("event '" + e.activity + "' in case '" + e.case_id + "' has no originator");
      }
      g.add_node(*e.originator);
    }
    for (std::size_t i = 0; i + 1 < events.size(); ++i) {
      const auto& from = *events[i].originator;
      const auto& to = *events[i + 1].originator;
      if (from != to) g.add_edge(from, to);
    }
  }
  return g;
}

SocialGraph review_relation(const std::vector<ReviewRecord>& records) {
  SocialGraph g;
  for (const auto& r : records) {
    g.add_node(r.reviewer);
    if (r.submitter.empty()) continue;
    if (r.submitter == r.reviewer) {
      g.add_node(r.submitter);
    } else {
      g.add_edge(r.reviewer, r.submitter);
    }
  }
  return g;
}

std::string graph_to_dot(const SocialGraph& graph) {
  std::string out = "digraph social_graph {\n";
  for (const auto& n : graph.nodes()) out += "  " + dot::quote(n) + ";\n";
  for (const auto& [edge, w] : graph.edges()) {
    out += "  " + dot::quote(edge.first) + " -> " + dot::quote(edge.second) + " [label=\"" +
           std::to_string(w) + "\", weight=" + std::to_string(w) + "];\n";
  }
  out += "}\n";
  return out;
}

std::string graph_to_json(const SocialGraph& graph) {
  nlohmann::ordered_json j;
  j["nodes"] = graph.nodes();
  auto edges = nlohmann::ordered_json::array();
  for (const auto& [edge, w] : graph.edges()) edges.push_back({edge.first, edge.second, w});
  j["edges"] = std::move(edges);
  return j.dump(2) + "\n";
}

SocialGraph graph_from_json(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    SocialGraph g;
    for (const auto& n : j.at("nodes")) g.add_node(n.get<std::string>());
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 3) throw ParseError("edge must be [from, to, weight]");
      g.add_edge(e[0].get<std::string>(), e[1].get<std::string>(), e[2].get<std::uint64_t>());
    }
    return g;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid graph JSON: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("invalid graph: ") + e.what());
  }
}

}  // namespace trailnet
