#include <doctest.h>

#include <random>

#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "trailnet/alpha_miner.hpp"
#include "trailnet/error.hpp"
#include "trailnet/petri_net.hpp"

using namespace trailnet;

namespace {

WorkflowNet worked_net() { return alpha(EventLog::from_sequences(testing::worked_log())).net; }

WorkflowNet sequence_net() {
  return WorkflowNet({"i", "p", "o"}, {"A", "B"}, {{"i", "A"}, {"A", "p"}, {"p", "B"}, {"B", "o"}}, "i", "o");
}

std::size_t count(const std::string& haystack, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = haystack.find(needle); pos != std::string::npos; pos = haystack.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("workflow net invariants") {
  CHECK_THROWS_AS(WorkflowNet({"i", "o"}, {"A"}, {{"i", "o"}}, "i", "o"), InvalidArgument);
  CHECK_THROWS_AS(WorkflowNet({"i", "o"}, {"A", "B"}, {{"A", "B"}}, "i", "o"), InvalidArgument);
  CHECK_THROWS_AS(WorkflowNet({"i", "o"}, {"A"}, {{"A", "i"}}, "i", "o"), InvalidArgument);
  CHECK_THROWS_AS(WorkflowNet({"i", "o"}, {"A"}, {{"o", "A"}}, "i", "o"), InvalidArgument);
  CHECK_THROWS_AS(WorkflowNet({"i", "o", "A"}, {"A"}, {}, "i", "o"), InvalidArgument);
  CHECK_THROWS_AS(WorkflowNet({"i", "o"}, {"A"}, {{"i", "X"}}, "i", "o"), InvalidArgument);
  CHECK_THROWS_AS(WorkflowNet({"i"}, {"A"}, {}, "i", "o"), InvalidArgument);
  CHECK_NOTHROW(sequence_net());
}

TEST_CASE("enabled transitions") {
  const auto net = worked_net();
  CHECK(enabled(net, Marking{{"i_W", 1}}) == std::set<std::string>{"A"});
  const auto after_a = fire(net, Marking{{"i_W", 1}}, "A");
  CHECK(enabled(net, after_a) == std::set<std::string>{"B", "C", "E"});
  CHECK(enabled(net, Marking{}).empty());
  CHECK_THROWS_AS(enabled(net, Marking{{"nowhere", 1}}), InvalidArgument);
}

TEST_CASE("firing moves tokens along arcs") {
  const auto net = worked_net();
  const auto after_a = fire(net, Marking{{"i_W", 1}}, "A");
  CHECK(after_a == Marking{{"p({A},{B,E})", 1}, {"p({A},{C,E})", 1}});
  const auto after_e = fire(net, after_a, "E");
  CHECK(after_e == Marking{{"p({B,E},{D})", 1}, {"p({C,E},{D})", 1}});
  CHECK(fire(net, after_e, "D") == Marking{{"o_W", 1}});
  CHECK_THROWS_AS(fire(net, Marking{{"i_W", 1}}, "D"), InvalidArgument);
  CHECK_THROWS_AS(fire(net, Marking{{"i_W", 1}}, "Z"), InvalidArgument);
}

TEST_CASE("marking arithmetic") {
  Marking m;
  m.add("p", 2);
  m.remove("p");
  CHECK(m["p"] == 1);
  m.remove("p");
  CHECK(m.empty());
  CHECK(m == Marking{});
  CHECK_THROWS_AS(m.remove("p"), InvalidArgument);
}

TEST_CASE("replay") {
  const auto net = worked_net();
  CHECK(replay(net, {"A", "E", "D"}).fits);
  const auto abcd = replay(net, {"A", "B", "C", "D"});
  CHECK(abcd.fits);
  CHECK(abcd.firing_sequence == ActivitySequence{"A", "B", "C", "D"});
  CHECK(abcd.final_marking == Marking{{"o_W", 1}});

  const auto abd = replay(net, {"A", "B", "D"});
  CHECK_FALSE(abd.fits);
  CHECK(abd.consumed_missing >= 1);
  CHECK(abd.produced_remaining == 1);  // the token left for C

  const auto prefix = replay(net, {"A"});
  CHECK_FALSE(prefix.fits);
  CHECK(prefix.consumed_missing == 1);  // no sink token at the end
  CHECK(prefix.produced_remaining == 2);

  CHECK_THROWS_AS(replay(net, {"A", "Z"}), InvalidArgument);
}

TEST_CASE("trace generation") {
  const auto gen = generate_traces(worked_net(), 10, 100);
  CHECK(gen.status == GenerationStatus::Complete);
  CHECK(gen.traces == std::set<ActivitySequence>{{"A", "B", "C", "D"}, {"A", "C", "B", "D"}, {"A", "E", "D"}});

  const auto seq = generate_traces(sequence_net(), 10, 100);
  CHECK(seq.traces == std::set<ActivitySequence>{{"A", "B"}});

  const WorkflowNet stuck({"i", "p", "o"}, {"A"}, {{"i", "A"}, {"A", "p"}}, "i", "o");
  const auto none = generate_traces(stuck, 10, 100);
  CHECK(none.traces.empty());
  CHECK(none.status == GenerationStatus::NoCompleteSequence);

  const auto cut = generate_traces(worked_net(), 3, 100);
  CHECK(cut.status == GenerationStatus::BoundsExceeded);
  CHECK(cut.traces == std::set<ActivitySequence>{{"A", "E", "D"}});

  const auto capped = generate_traces(worked_net(), 10, 2);
  CHECK(capped.status == GenerationStatus::BoundsExceeded);
  CHECK(capped.traces.size() == 2);

  // A livelock: B and C pass a token back and forth forever.
  const WorkflowNet loop({"i", "p", "q", "o"}, {"A", "B", "C", "D"},
                         {{"i", "A"}, {"A", "p"}, {"p", "B"}, {"B", "q"}, {"q", "C"}, {"C", "p"}, {"p", "D"}, {"D", "o"}},
                         "i", "o");
  const auto looped = generate_traces(loop, 6, 100);
  CHECK(looped.status == GenerationStatus::BoundsExceeded);
  CHECK(looped.traces.count({"A", "D"}) == 1);
  CHECK(looped.traces.count({"A", "B", "C", "D"}) == 1);
}

TEST_CASE("isomorphism") {
  const auto net = worked_net();
  CHECK(isomorphic(net, net));
  CHECK(isomorphic(net, testing::rename_places(net, "x_")));

  auto arcs = net.arcs();
  arcs.erase({"E", "p({C,E},{D})"});
  const WorkflowNet missing(net.places(), net.transitions(), arcs, net.source(), net.sink());
  CHECK_FALSE(isomorphic(net, missing));

  const WorkflowNet other({"i", "o"}, {"A", "B", "C", "D", "E"}, {}, "i", "o");
  CHECK_FALSE(isomorphic(net, other));
}

TEST_CASE("DOT rendering") {
  const auto single = alpha(EventLog::from_sequences({{"A"}})).net;
  const auto dot1 = to_dot(single);
  CHECK(count(dot1, "shape=circle") == 2);
  CHECK(count(dot1, "shape=box") == 1);
  CHECK(count(dot1, " -> ") == 2);

  const auto net = worked_net();
  const auto dot = to_dot(net);
  CHECK(count(dot, "shape=circle") == 6);
  CHECK(count(dot, "shape=box") == 5);
  CHECK(count(dot, " -> ") == 14);
  CHECK(dot == to_dot(worked_net()));
  CHECK(dot.rfind("digraph workflow_net {\n", 0) == 0);
  CHECK(count(dot, "fillcolor") == 2);
}

TEST_CASE("JSON round trip") {
  const auto net = worked_net();
  const auto json = net_to_json(net);
  CHECK(net_from_json(json) == net);
  CHECK(json.find("\"source\": \"i_W\"") != std::string::npos);
  CHECK(json.find("[\n      \"A\",\n      \"p({A},{B,E})\"\n    ]") != std::string::npos);
  CHECK_THROWS_AS(net_from_json("{}"), ParseError);
  CHECK_THROWS_AS(net_from_json("not json"), ParseError);
  CHECK_THROWS_AS(net_from_json(R"({"places":["i"],"transitions":[],"arcs":[],"source":"i","sink":"o"})"),
                  ParseError);
}

TEST_CASE("property: generated traces replay, isomorphism is an equivalence, JSON round-trips") {
  std::mt19937 rng(5);
  std::vector<WorkflowNet> nets;
  for (int round = 0; round < 60; ++round) nets.push_back(testing::random_structured_net(rng, 7));

  for (const auto& net : nets) {
    const auto gen = generate_traces(net, 16, 100000);
    CHECK(gen.status == GenerationStatus::Complete);
    for (const auto& t : gen.traces) {
      const auto r = replay(net, t);
      CHECK(r.fits);
    }
    // Random firing never drives a count negative and keeps the structure.
    Marking m{{net.source(), 1}};
    for (int step = 0; step < 20; ++step) {
      const auto en = enabled(net, m);
      if (en.empty()) break;
      auto it = en.begin();
      std::advance(it, std::uniform_int_distribution<std::size_t>(0, en.size() - 1)(rng));
      m = fire(net, m, *it);
      for (const auto& [place, n] : m.tokens()) {
        CHECK(net.is_place(place));
        CHECK(n > 0);
      }
    }
    CHECK(net_from_json(net_to_json(net)) == net);
    const auto renamed = testing::rename_places(net, "r");
    CHECK(isomorphic(net, renamed));
    CHECK(isomorphic(renamed, net));
    const auto twice = testing::rename_places(renamed, "s");
    CHECK(isomorphic(renamed, twice));
    CHECK(isomorphic(net, twice));
  }
  for (std::size_t i = 0; i + 1 < nets.size(); ++i) {
    CHECK(isomorphic(nets[i], nets[i + 1]) == isomorphic(nets[i + 1], nets[i]));
  }
}
