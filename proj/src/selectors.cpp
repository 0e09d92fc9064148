#include "srake/selectors.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

#include <spdlog/spdlog.h>

namespace srake {

std::uint64_t binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  unsigned __int128 c = 1;
  for (int i = 1; i <= k; ++i) {
    c = c * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    if (c > kMax) return kMax;
  }
  return static_cast<std::uint64_t>(c);
}

namespace {

std::string limit_message(std::uint64_t subsets, std::uint64_t cap) {
  std::ostringstream os;
  os << "exhaustive search refused: C(L, M) = " << subsets << " exceeds the enumeration cap of " << cap;
  return os.str();
}

// Advances a sorted k-combination of {0..n-1} in lexicographic order.
bool next_combination(std::vector<int>& c, int n) {
  const int k = static_cast<int>(c.size());
  int i = k - 1;
  while (i >= 0 && c[i] == n - k + i) --i;
  if (i < 0) return false;
  ++c[i];
  for (int j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
  return true;
}

Assignment random_subset(int num_fingers, int num_paths, Rng& rng) {
  std::vector<int> perm(num_paths);
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = 0; i < num_fingers; ++i) {
    std::uniform_int_distribution<int> pick(i, num_paths - 1);
    std::swap(perm[i], perm[pick(rng)]);
  }
  perm.resize(num_fingers);
  return Assignment::from_indices(std::move(perm), num_paths);
}

int pick_uniform(int lo, int hi, Rng& rng) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

}  // namespace

EnumerationLimitError::EnumerationLimitError(std::uint64_t subsets, std::uint64_t cap)
    : std::runtime_error(limit_message(subsets, cap)), subsets_(subsets) {}

Assignment conventional_select(const SinrObjective& objective, int num_fingers) {
  const int paths = objective.num_paths();
  std::vector<std::pair<double, int>> ranked(paths);
  for (int l = 0; l < paths; ++l) ranked[l] = {objective.per_path(l), l};
  std::stable_sort(ranked.begin(), ranked.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
  std::vector<int> idx;
  idx.reserve(num_fingers);
  for (int i = 0; i < num_fingers; ++i) idx.push_back(ranked[i].second);
  return Assignment::from_indices(std::move(idx), paths);
}

Selection exhaustive_select(const SinrObjective& objective, int num_fingers, std::uint64_t cap) {
  const int paths = objective.num_paths();
  const std::uint64_t subsets = binomial(paths, num_fingers);
  if (subsets == 0) throw std::invalid_argument("need 1 <= fingers <= paths");
  if (subsets > cap) throw EnumerationLimitError(subsets, cap);

  std::vector<int> combo(num_fingers);
  std::iota(combo.begin(), combo.end(), 0);
  Selection best{Assignment::from_indices(combo, paths), -1.0, 0};
  do {
    Assignment a = Assignment::from_indices(combo, paths);
    const double s = objective(a);
    ++best.eval_count;
    if (s > best.sinr) {
      best.sinr = s;
      best.assignment = std::move(a);
    }
  } while (next_combination(combo, paths));
  return best;
}

void GaParams::validate(int num_paths, int num_fingers) const {
  if (n_good < 2 || n_good % 2 != 0) throw std::invalid_argument("ga parents (n_good) must be even and >= 2");
  if (n_pop != 2 * n_good) throw std::invalid_argument("ga population (n_pop) must equal 2 * parents (n_good)");
  if (n_ipop < n_pop) throw std::invalid_argument("ga initial population (n_ipop) must be >= population (n_pop)");
  if (n_mut < 0) throw std::invalid_argument("ga mutations must be >= 0");
  if (n_iter < 0) throw std::invalid_argument("ga iterations must be >= 0");
  const std::uint64_t space = binomial(num_paths, num_fingers);
  if (static_cast<std::uint64_t>(n_ipop) > space) {
    std::ostringstream os;
    os << "ga initial population (" << n_ipop << ") exceeds the number of distinct assignments C(" << num_paths
       << ", " << num_fingers << ") = " << space;
    throw std::invalid_argument(os.str());
  }
}

void ScoredPopulation::sort() {
  std::sort(members.begin(), members.end(), [](const Scored& x, const Scored& y) {
    if (x.sinr != y.sinr) return x.sinr > y.sinr;
    return x.assignment < y.assignment;
  });
}

ScoredPopulation ga_init(const SinrObjective& objective, int num_fingers, const GaParams& params, Rng& rng) {
  const int paths = objective.num_paths();
  const std::uint64_t space = binomial(paths, num_fingers);
  if (static_cast<std::uint64_t>(params.n_ipop) > space) {
    throw std::invalid_argument("cannot draw n_ipop distinct assignments");
  }

  std::vector<Assignment> drawn;
  drawn.reserve(params.n_ipop);
  std::set<Assignment> seen;
  if (params.inject_conventional && params.n_ipop > 0) {
    drawn.push_back(conventional_select(objective, num_fingers));
    seen.insert(drawn.back());
  }

  if (space <= 4 * static_cast<std::uint64_t>(params.n_ipop)) {
    // Dense regime: sample without replacement from the enumerated space.
    std::vector<Assignment> all;
    std::vector<int> combo(num_fingers);
    std::iota(combo.begin(), combo.end(), 0);
    do {
      Assignment a = Assignment::from_indices(combo, paths);
      if (!seen.contains(a)) all.push_back(std::move(a));
    } while (next_combination(combo, paths));
    for (std::size_t i = 0; drawn.size() < static_cast<std::size_t>(params.n_ipop); ++i) {
      const int j = pick_uniform(static_cast<int>(i), static_cast<int>(all.size()) - 1, rng);
      std::swap(all[i], all[j]);
      drawn.push_back(all[i]);
    }
  } else {
    while (drawn.size() < static_cast<std::size_t>(params.n_ipop)) {
      Assignment a = random_subset(num_fingers, paths, rng);
      if (seen.insert(a).second) drawn.push_back(std::move(a));
    }
  }

  ScoredPopulation pop;
  pop.members.reserve(drawn.size());
  for (auto& a : drawn) {
    const double s = objective(a);
    pop.members.push_back({std::move(a), s});
    ++pop.eval_count;
  }
  pop.sort();
  if (pop.members.size() > static_cast<std::size_t>(params.n_pop)) pop.members.erase(pop.members.begin() + params.n_pop, pop.members.end());
  return pop;
}

std::vector<std::pair<int, int>> ga_pair(const ScoredPopulation& population, const GaParams& params, Rng& rng) {
  if (population.members.size() < static_cast<std::size_t>(params.n_good)) {
    throw std::invalid_argument("population smaller than the parent count");
  }
  std::vector<int> pool(params.n_good);
  std::iota(pool.begin(), pool.end(), 0);

  auto draw = [&]() {
    double total = 0.0;
    for (int i : pool) total += population.members[i].sinr;
    std::size_t chosen = pool.size() - 1;
    if (total > 0.0) {
      const double u = std::uniform_real_distribution<double>(0.0, total)(rng);
      double acc = 0.0;
      for (std::size_t i = 0; i < pool.size(); ++i) {
        acc += population.members[pool[i]].sinr;
        if (u < acc) {
          chosen = i;
          break;
        }
      }
    } else {
      chosen = static_cast<std::size_t>(pick_uniform(0, static_cast<int>(pool.size()) - 1, rng));
    }
    const int member = pool[chosen];
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(chosen));
    return member;
  };

  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(params.n_good / 2);
  while (pool.size() >= 2) {
    const int first = draw();
    const int second = draw();
    pairs.emplace_back(first, second);
  }
  return pairs;
}

Assignment swap_mutation(const Assignment& a, Rng& rng) {
  if (a.size() == a.num_paths()) {
    spdlog::debug("swap mutation skipped: every path is selected");
    return a;
  }
  std::vector<int> unselected;
  unselected.reserve(a.num_paths() - a.size());
  for (int l = 0; l < a.num_paths(); ++l) {
    if (!a.contains(l)) unselected.push_back(l);
  }
  const int out = a.indices()[pick_uniform(0, a.size() - 1, rng)];
  const int in = unselected[pick_uniform(0, static_cast<int>(unselected.size()) - 1, rng)];
  return a.swapped(out, in);
}

std::pair<Assignment, Assignment> ga_mate(const Assignment& a, const Assignment& b, Rng& rng) {
  if (a.size() != b.size() || a.num_paths() != b.num_paths()) {
    throw std::invalid_argument("parents must have the same finger count and path count");
  }
  std::vector<int> pool(a.indices().begin(), a.indices().end());
  pool.insert(pool.end(), b.indices().begin(), b.indices().end());
  const int last = static_cast<int>(pool.size()) - 1;

  auto draw_child = [&]() {
    std::vector<int> child;
    child.reserve(a.size());
    while (static_cast<int>(child.size()) < a.size()) {
      const int path = pool[pick_uniform(0, last, rng)];
      if (std::find(child.begin(), child.end(), path) == child.end()) child.push_back(path);
    }
    return Assignment::from_indices(std::move(child), a.num_paths());
  };

  auto make_child = [&]() {
    Assignment child = draw_child();
    for (int attempt = 1; attempt < kMateRetryCap && (child == a || child == b); ++attempt) child = draw_child();
    if (child == a || child == b) child = swap_mutation(child, rng);
    return child;
  };

  Assignment first = make_child();
  Assignment second = make_child();
  return {std::move(first), std::move(second)};
}

void ga_mutate(ScoredPopulation& population, const SinrObjective& objective, const GaParams& params, Rng& rng) {
  if (params.n_mut == 0) return;
  if (population.members.size() < 2) throw std::invalid_argument("mutation needs at least two members");
  const int last = static_cast<int>(population.members.size()) - 1;
  for (int i = 0; i < params.n_mut; ++i) {
    // members[0] is the current best and is never mutated.
    Scored& victim = population.members[pick_uniform(1, last, rng)];
    if (victim.assignment.size() == victim.assignment.num_paths()) {
      spdlog::debug("mutation skipped: every path is selected");
      continue;
    }
    victim.assignment = swap_mutation(victim.assignment, rng);
    victim.sinr = objective(victim.assignment);
    ++population.eval_count;
    population.sort();
  }
}

Selection ga_select(const SinrObjective& objective, int num_fingers, const GaParams& params,
                    const GaObserver& observer) {
  params.validate(objective.num_paths(), num_fingers);
  Rng rng(params.seed);

  ScoredPopulation pop = ga_init(objective, num_fingers, params, rng);
  Selection best{pop.best().assignment, pop.best().sinr, pop.eval_count};

  for (int iter = 1; iter <= params.n_iter; ++iter) {
    const auto pairs = ga_pair(pop, params, rng);

    ScoredPopulation next;
    next.eval_count = pop.eval_count;
    next.members.reserve(2 * params.n_good);
    next.members.insert(next.members.end(), pop.members.begin(), pop.members.begin() + params.n_good);
    for (const auto& [i, j] : pairs) {
      auto [c1, c2] = ga_mate(pop.members[i].assignment, pop.members[j].assignment, rng);
      for (Assignment* c : {&c1, &c2}) {
        const double s = objective(*c);
        ++next.eval_count;
        next.members.push_back({std::move(*c), s});
      }
    }
    next.sort();
    ga_mutate(next, objective, params, rng);
    pop = std::move(next);

    if (pop.best().sinr > best.sinr) {
      best.assignment = pop.best().assignment;
      best.sinr = pop.best().sinr;
    }
    if (observer) observer(iter, pop);
  }
  best.eval_count = pop.eval_count;
  return best;
}

}  // namespace srake
