#include "trailnet/petri_net.hpp"

#include <algorithm>
#include <functional>
#include <tuple>

#include <json.hpp>

#include "trailnet/dot.hpp"
#include "trailnet/error.hpp"

namespace trailnet {

WorkflowNet::WorkflowNet(std::set<std::string> places, std::set<std::string> transitions,
                         std::set<Arc> arcs, std::string source, std::string sink)
    : places_(std::move(places)),
      transitions_(std::move(transitions)),
      arcs_(std::move(arcs)),
      source_(std::move(source)),
      sink_(std::move(sink)) {
  if (!places_.count(source_)) throw InvalidArgument("source '" + source_ + "' is not a place");
  if (!places_.count(sink_)) throw InvalidArgument("sink '" + sink_ + "' is not a place");
  if (source_ == sink_) throw InvalidArgument("source and sink must differ");
  for (const auto& t : transitions_) {
    if (places_.count(t)) throw InvalidArgument("'" + t + "' is both a place and a transition");
  }
  for (const auto& p : places_) {
    preset_[p];
    postset_[p];
  }
  for (const auto& t : transitions_) {
    preset_[t];
    postset_[t];
  }
  for (const auto& [from, to] : arcs_) {
    const bool from_place = places_.count(from) > 0;
    const bool from_transition = transitions_.count(from) > 0;
    const bool to_place = places_.count(to) > 0;
    const bool to_transition = transitions_.count(to) > 0;
    if (!(from_place || from_transition) || !(to_place || to_transition)) {
      throw InvalidArgument("arc (" + from + ", " + to + ") references an unknown node");
    }
    if (from_place == to_place) {
      throw InvalidArgument("arc (" + from + ", " + to + ") is not place<->transition");
    }
    if (to == source_) throw InvalidArgument("source place has an incoming arc from '" + from + "'");
    if (from == sink_) throw InvalidArgument("sink place has an outgoing arc to '" + to + "'");
    postset_[from].insert(to);
    preset_[to].insert(from);
  }
}

bool WorkflowNet::is_place(std::string_view name) const {
  return places_.find(std::string(name)) != places_.end();
}

bool WorkflowNet::is_transition(std::string_view name) const {
  return transitions_.find(std::string(name)) != transitions_.end();
}

const std::set<std::string>& WorkflowNet::preset(std::string_view node) const {
  auto it = preset_.find(node);
  if (it == preset_.end()) throw InvalidArgument("unknown node '" + std::string(node) + "'");
  return it->second;
}

const std::set<std::string>& WorkflowNet::postset(std::string_view node) const {
  auto it = postset_.find(node);
  if (it == postset_.end()) throw InvalidArgument("unknown node '" + std::string(node) + "'");
  return it->second;
}

Marking::Marking(std::initializer_list<std::pair<const std::string, std::uint32_t>> init) {
  for (const auto& [place, count] : init) add(place, count);
}

std::uint32_t Marking::operator[](std::string_view place) const {
  auto it = tokens_.find(place);
  return it == tokens_.end() ? 0 : it->second;
}

void Marking::add(const std::string& place, std::uint32_t count) {
  if (count == 0) return;
  tokens_[place] += count;
}

void Marking::remove(const std::string& place, std::uint32_t count) {
  if (count == 0) return;
  auto it = tokens_.find(place);
  if (it == tokens_.end() || it->second < count) {
    throw InvalidArgument("place '" + place + "' holds fewer than " + std::to_string(count) + " tokens");
  }
  it->second -= count;
  if (it->second == 0) tokens_.erase(it);
}

std::uint64_t Marking::total() const noexcept {
  std::uint64_t n = 0;
  for (const auto& [place, count] : tokens_) n += count;
  return n;
}

namespace {

void check_marking(const WorkflowNet& net, const Marking& marking) {
  for (const auto& [place, count] : marking.tokens()) {
    if (!net.is_place(place)) throw InvalidArgument("marking references unknown place '" + place + "'");
  }
}

bool is_enabled(const WorkflowNet& net, const Marking& marking, const std::string& t) {
  return std::all_of(net.preset(t).begin(), net.preset(t).end(),
                     [&](const std::string& p) { return marking[p] > 0; });
}

Marking fire_unchecked(const WorkflowNet& net, Marking marking, const std::string& t) {
  for (const auto& p : net.preset(t)) marking.remove(p);
  for (const auto& p : net.postset(t)) marking.add(p);
  return marking;
}

}  // namespace

std::set<std::string> enabled(const WorkflowNet& net, const Marking& marking) {
  check_marking(net, marking);
  std::set<std::string> out;
  for (const auto& t : net.transitions()) {
    if (is_enabled(net, marking, t)) out.insert(t);
  }
  return out;
}

Marking fire(const WorkflowNet& net, const Marking& marking, std::string_view transition) {
  const std::string t(transition);
  if (!net.is_transition(t)) throw InvalidArgument("unknown transition '" + t + "'");
  check_marking(net, marking);
  if (!is_enabled(net, marking, t)) throw InvalidArgument("transition '" + t + "' is not enabled");
  return fire_unchecked(net, marking, t);
}

ReplayResult replay(const WorkflowNet& net, const ActivitySequence& trace) {
  for (const auto& a : trace) {
    if (!net.is_transition(a)) throw InvalidArgument("activity '" + a + "' is not a transition of the net");
  }
  ReplayResult result;
  Marking marking{{net.source(), 1}};
  for (const auto& a : trace) {
    for (const auto& p : net.preset(a)) {
      if (marking[p] == 0) {
        marking.add(p);
        ++result.consumed_missing;
      }
    }
    marking = fire_unchecked(net, std::move(marking), a);
    result.firing_sequence.push_back(a);
  }
  result.final_marking = marking;
  const bool exact_end = marking == Marking{{net.sink(), 1}};
  if (marking[net.sink()] > 0) {
    marking.remove(net.sink());
  } else {
    ++result.consumed_missing;
  }
  result.produced_remaining = marking.total();
  result.fits = exact_end && result.consumed_missing == 0 && result.produced_remaining == 0;
  return result;
}

GenerationResult generate_traces(const WorkflowNet& net, std::size_t max_length, std::size_t max_traces) {
  GenerationResult result;
  const Marking goal{{net.sink(), 1}};
  bool truncated = false;
  bool stop = false;
  ActivitySequence path;

  std::function<void(const Marking&)> search = [&](const Marking& marking) {
    if (stop) return;
    if (marking == goal) {
      if (result.traces.count(path)) return;
      if (result.traces.size() >= max_traces) {
        truncated = true;
        stop = true;
        return;
      }
      result.traces.insert(path);
      return;
    }
    for (const auto& t : net.transitions()) {
      if (!is_enabled(net, marking, t)) continue;
      if (path.size() >= max_length) {
        truncated = true;
        return;
      }
      path.push_back(t);
      search(fire_unchecked(net, marking, t));
      path.pop_back();
      if (stop) return;
    }
  };
  search(Marking{{net.source(), 1}});

  if (truncated) {
    result.status = GenerationStatus::BoundsExceeded;
  } else if (result.traces.empty()) {
    result.status = GenerationStatus::NoCompleteSequence;
  }
  return result;
}

namespace {

using PlaceSignature = std::tuple<int, std::set<std::string>, std::set<std::string>>;

std::vector<PlaceSignature> place_signatures(const WorkflowNet& net) {
  std::vector<PlaceSignature> out;
  for (const auto& p : net.places()) {
    const int role = p == net.source() ? 0 : (p == net.sink() ? 2 : 1);
    out.emplace_back(role, net.preset(p), net.postset(p));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

bool isomorphic(const WorkflowNet& a, const WorkflowNet& b) {
  if (a.transitions() != b.transitions()) return false;
  if (a.places().size() != b.places().size()) return false;
  return place_signatures(a) == place_signatures(b);
}

std::string to_dot(const WorkflowNet& net) {
  std::string out = "digraph workflow_net {\n  rankdir=LR;\n";
  auto place_line = [&](const std::string& p, std::string_view extra) {
    out += "  " + dot::quote(p) + " [shape=circle, label=\"\", xlabel=" + dot::quote(p);
    out += extra;
    out += "];\n";
  };
  place_line(net.source(), ", style=filled, fillcolor=\"#b6e3b6\"");
  for (const auto& p : net.places()) {
    if (p != net.source() && p != net.sink()) place_line(p, "");
  }
  place_line(net.sink(), ", style=filled, fillcolor=\"#e3b6b6\", penwidth=2");
  for (const auto& t : net.transitions()) {
    out += "  " + dot::quote(t) + " [shape=box];\n";
  }
  for (const auto& [from, to] : net.arcs()) {
    out += "  " + dot::quote(from) + " -> " + dot::quote(to) + ";\n";
  }
  out += "}\n";
  return out;
}

std::string net_to_json(const WorkflowNet& net) {
  nlohmann::ordered_json j;
  j["places"] = net.places();
  j["transitions"] = net.transitions();
  auto arcs = nlohmann::ordered_json::array();
  for (const auto& [from, to] : net.arcs()) arcs.push_back({from, to});
  j["arcs"] = std::move(arcs);
  j["source"] = net.source();
  j["sink"] = net.sink();
  return j.dump(2) + "\n";
}

WorkflowNet net_from_json(std::string_view text) {
  try {
    const auto j = nlohmann::json::parse(text);
    std::set<Arc> arcs;
    for (const auto& arc : j.at("arcs")) {
      if (!arc.is_array() || arc.size() != 2) throw ParseError("arc must be a [from, to] pair");
      arcs.emplace(arc[0].get<std::string>(), arc[1].get<std::string>());
    }
    return WorkflowNet(j.at("places").get<std::set<std::string>>(),
                       j.at("transitions").get<std::set<std::string>>(), std::move(arcs),
                       j.at("source").get<std::string>(), j.at("sink").get<std::string>());
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid net JSON: ") + e.what());
  } catch (const InvalidArgument& e) {
    throw ParseError(std::string("invalid net: ") + e.what());
  }
}

}  // namespace trailnet
