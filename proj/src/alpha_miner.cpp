#include "trailnet/alpha_miner.hpp"

#include <algorithm>

#include <json.hpp>

#include "trailnet/error.hpp"

namespace trailnet {

namespace {

std::string join(const ActivitySet& set) {
  std::string out;
  for (const auto& a : set) {
    if (!out.empty()) out += ',';
    out += a;
  }
  return out;
}

bool subset_of(const ActivitySet& inner, const ActivitySet& outer) {
  return std::includes(outer.begin(), outer.end(), inner.begin(), inner.end());
}

void require_non_empty(const EventLog& log) {
  if (log.empty()) throw InvalidArgument("event log is empty");
}

// Backtracking over index sets. `members` holds alphabet indices; every new
// index must be unrelated to itself and to every member already chosen.
class UnrelatedSubsets {
 public:
  UnrelatedSubsets(const FootprintMatrix& fp, std::vector<std::size_t> pool)
      : fp_(fp), pool_(std::move(pool)) {}

  template <typename Visit>
  void for_each(Visit&& visit) {
    std::vector<std::size_t> members;
    extend(0, members, visit);
  }

 private:
  template <typename Visit>
  void extend(std::size_t from, std::vector<std::size_t>& members, Visit& visit) {
    for (std::size_t k = from; k < pool_.size(); ++k) {
      const std::size_t candidate = pool_[k];
      bool ok = fp_.at_index(candidate, candidate) == Relation::Unrelated;
      for (std::size_t m : members) {
        if (!ok) break;
        ok = fp_.at_index(m, candidate) == Relation::Unrelated;
      }
      if (!ok) continue;
      members.push_back(candidate);
      // visit returns false when no superset of `members` can qualify.
      if (visit(members)) extend(k + 1, members, visit);
      members.pop_back();
    }
  }

  const FootprintMatrix& fp_;
  std::vector<std::size_t> pool_;
};

}  // namespace

std::string place_name(const PlacePair& pair) {
  return "p({" + join(pair.inputs) + "},{" + join(pair.outputs) + "})";
}

ActivitySet initial_tasks(const EventLog& log) {
  require_non_empty(log);
  ActivitySet out;
  for (const auto& t : log.traces()) out.insert(t.events().front().activity);
  return out;
}

ActivitySet final_tasks(const EventLog& log) {
  require_non_empty(log);
  ActivitySet out;
  for (const auto& t : log.traces()) out.insert(t.events().back().activity);
  return out;
}

PlacePairSet candidate_pairs(const FootprintMatrix& fp) {
  const std::size_t n = fp.size();
  const auto& names = fp.alphabet();

  std::vector<std::vector<char>> successors(n, std::vector<char>(n, 0));
  std::vector<std::size_t> sources;
  for (std::size_t i = 0; i < n; ++i) {
    bool any = false;
    for (std::size_t j = 0; j < n; ++j) {
      if (fp.at_index(i, j) == Relation::CausalForward) {
        successors[i][j] = 1;
        any = true;
      }
    }
    if (any) sources.push_back(i);
  }

  PlacePairSet out;
  UnrelatedSubsets(fp, sources).for_each([&](const std::vector<std::size_t>& inputs) {
    std::vector<std::size_t> common;
    for (std::size_t j = 0; j < n; ++j) {
      bool all = true;
      for (std::size_t a : inputs) all = all && successors[a][j];
      if (all) common.push_back(j);
    }
    if (common.empty()) return false;

    ActivitySet input_names;
    for (std::size_t a : inputs) input_names.insert(names[a]);
    UnrelatedSubsets(fp, common).for_each([&](const std::vector<std::size_t>& outputs) {
      ActivitySet output_names;
      for (std::size_t b : outputs) output_names.insert(names[b]);
      out.insert(PlacePair{input_names, std::move(output_names)});
      return true;
    });
    return true;
  });
  return out;
}

PlacePairSet maximal_pairs(const PlacePairSet& candidates) {
  PlacePairSet out;
  for (const auto& pair : candidates) {
    bool dominated = false;
    for (const auto& other : candidates) {
      if (other != pair && subset_of(pair.inputs, other.inputs) && subset_of(pair.outputs, other.outputs)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) out.insert(pair);
  }
  return out;
}

AlphaResult alpha(const EventLog& log, const AlphaOptions& options) {
  require_non_empty(log);
  AlphaIntermediates im;
  im.all_tasks = log.alphabet();
  if (im.all_tasks.size() > options.alphabet_limit) {
    throw AlphabetLimitError(im.all_tasks.size(), options.alphabet_limit);
  }
  im.initial_tasks = initial_tasks(log);
  im.final_tasks = final_tasks(log);
  im.candidates = candidate_pairs(footprint(log));
  im.maximal = maximal_pairs(im.candidates);

  std::set<std::string> places{kSourcePlace, kSinkPlace};
  std::set<Arc> arcs;
  for (const auto& pair : im.maximal) {
    const std::string p = place_name(pair);
    places.insert(p);
    for (const auto& a : pair.inputs) arcs.emplace(a, p);
    for (const auto& b : pair.outputs) arcs.emplace(p, b);
  }
  for (const auto& t : im.initial_tasks) arcs.emplace(kSourcePlace, t);
  for (const auto& t : im.final_tasks) arcs.emplace(t, kSinkPlace);

  for (const auto& t : im.all_tasks) {
    if (places.count(t)) {
      throw InvalidArgument("activity '" + t + "' collides with a generated place name");
    }
  }

  WorkflowNet net(std::move(places), im.all_tasks, std::move(arcs), kSourcePlace, kSinkPlace);
  std::vector<std::string> warnings;
  for (const auto& t : net.transitions()) {
    if (net.preset(t).empty()) warnings.push_back("transition '" + t + "' has no input place");
    if (net.postset(t).empty()) warnings.push_back("transition '" + t + "' has no output place");
  }
  return AlphaResult{std::move(net), std::move(im), std::move(warnings)};
}

std::string intermediates_to_json(const AlphaIntermediates& im) {
  auto pairs = [](const PlacePairSet& set) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& p : set) arr.push_back({p.inputs, p.outputs});
    return arr;
  };
  nlohmann::ordered_json j;
  j["T_W"] = im.all_tasks;
  j["T_I"] = im.initial_tasks;
  j["T_O"] = im.final_tasks;
  j["X_W"] = pairs(im.candidates);
  j["Y_W"] = pairs(im.maximal);
  return j.dump(2) + "\n";
}

}  // namespace trailnet
