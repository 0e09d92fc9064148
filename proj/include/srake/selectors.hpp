#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "srake/rng.hpp"
#include "srake/sinr.hpp"

namespace srake {

/// C(n, k), saturating at UINT64_MAX.
std::uint64_t binomial(int n, int k);

/// Thrown when exhaustive search would exceed its enumeration cap.
class EnumerationLimitError : public std::runtime_error {
 public:
  EnumerationLimitError(std::uint64_t subsets, std::uint64_t cap);
  std::uint64_t subsets() const { return subsets_; }

 private:
  std::uint64_t subsets_;
};

struct Selection {
  Assignment assignment;
  double sinr = 0.0;
  std::uint64_t eval_count = 0;
};

/// The M paths with the largest single-path SINR; ties go to the lower index.
Assignment conventional_select(const SinrObjective& objective, int num_fingers);

inline constexpr std::uint64_t kDefaultEnumerationCap = 1'000'000;

/// Scores every M-subset in lexicographic order and keeps the first maximum.
/// eval_count is C(L, M).
Selection exhaustive_select(const SinrObjective& objective, int num_fingers,
                            std::uint64_t cap = kDefaultEnumerationCap);

// --- genetic algorithm ------------------------------------------------------

struct GaParams {
  int n_ipop = 32;   // initial random assignments
  int n_pop = 16;    // kept after the initial truncation
  int n_good = 8;    // parents per generation
  int n_mut = 8;     // swap mutations per generation
  int n_iter = 10;
  std::uint64_t seed = 1;
  /// Seeds the initial population with the conventional assignment, so the
  /// result never falls below the conventional baseline.
  bool inject_conventional = true;

  /// Throws std::invalid_argument. Needs L and M to check that n_ipop
  /// distinct assignments exist.
  void validate(int num_paths, int num_fingers) const;

  friend bool operator==(const GaParams&, const GaParams&) = default;
};

/// Retry budget for a child that reproduces a parent.
inline constexpr int kMateRetryCap = 16;

struct Scored {
  Assignment assignment;
  double sinr = 0.0;
};

/// Chromosomes sorted by descending SINR (ties: lexicographically smaller
/// index list first), plus the running count of objective evaluations.
struct ScoredPopulation {
  std::vector<Scored> members;
  std::uint64_t eval_count = 0;

  void sort();
  const Scored& best() const { return members.front(); }
};

/// Draws n_ipop distinct uniform M-subsets (one of them the conventional
/// assignment when injection is on), scores them and keeps the best n_pop.
ScoredPopulation ga_init(const SinrObjective& objective, int num_fingers, const GaParams& params, Rng& rng);

/// Pairs the fittest n_good members. Members are drawn without replacement
/// with probability proportional to linear SINR; consecutive draws form a
/// pair. Returns indices into population.members.
std::vector<std::pair<int, int>> ga_pair(const ScoredPopulation& population, const GaParams& params, Rng& rng);

/// Two children whose indices are drawn from the concatenated index lists of
/// both parents. A path held by both parents is twice as likely to be drawn.
std::pair<Assignment, Assignment> ga_mate(const Assignment& a, const Assignment& b, Rng& rng);

/// Random swap of one selected and one unselected path. Returns the input
/// unchanged when every path is selected.
Assignment swap_mutation(const Assignment& a, Rng& rng);

/// n_mut rounds of: pick a random member other than the current best, apply
/// swap_mutation, re-score it, re-sort.
void ga_mutate(ScoredPopulation& population, const SinrObjective& objective, const GaParams& params, Rng& rng);

/// Called after each generation with the 1-based iteration number.
using GaObserver = std::function<void(int, const ScoredPopulation&)>;

/// Full GA: init, then n_iter generations of pairing, mating, replacement by
/// parents + children and mutation. Returns the best assignment found.
Selection ga_select(const SinrObjective& objective, int num_fingers, const GaParams& params,
                    const GaObserver& observer = {});

}  // namespace srake
