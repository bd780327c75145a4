#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "morsegraded/cancellation.hpp"

namespace mg {

// One interval [0, lambda] after matching and cancellation.
struct IntervalRun {
  Multidegree lambda;
  int degree = 0;
  std::shared_ptr<const MorseComplex> complex;
  CancellationResult result;
  std::vector<long> initial_morse;  // reduced, index dim + 1
  std::vector<long> final_morse;
  std::vector<int> survivor_dimensions;
};

// Morse numbers without the empty face: m_0 .. m_dim.
std::vector<long> unreduced_morse_numbers(const std::vector<long>& reduced, bool empty_interval);

IntervalRun run_interval(const Semigroup& s, const GroebnerBasis& gb, const FacetOrderConfig& cfg,
                         const Multidegree& lambda, const CancellationOptions& options);

// Cells of the bar resolution surviving the Morse matching: a surviving
// face F of the order complex below lambda sits in homological degree
// |F| + 1; the zero multidegree contributes the degree-0 cell.
struct ResolutionCell {
  Multidegree lambda;
  int face = -1;  // face id in the interval complex, -1 for the zero cell
  int homological_index = 0;
};

struct ResolutionTerm {
  int target;
  Multidegree coefficient;  // lambda minus the target multidegree
  long long weight;
  std::uint64_t paths;
};

struct MorseResolution {
  std::vector<IntervalRun> runs;  // sorted by (degree, coordinates); zero first
  std::vector<ResolutionCell> cells;
  std::vector<std::vector<ResolutionTerm>> boundary;  // per cell, by target
  std::size_t equal_multidegree_incidences = 0;       // nonzero weight
  std::size_t equal_multidegree_paths = 0;
  std::size_t square_violations = 0;                   // entries of d o d that are nonzero
  std::map<std::pair<Multidegree, int>, long> cell_counts;

  const IntervalRun* run_for(const Multidegree& lambda) const;
};

// The window is closed downward before building.
MorseResolution build_morse_resolution(const Semigroup& s, const GroebnerBasis& gb, const FacetOrderConfig& cfg,
                                       const std::vector<Multidegree>& window, const CancellationOptions& options);

}  // namespace mg
