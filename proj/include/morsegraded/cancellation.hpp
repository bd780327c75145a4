#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "morsegraded/groebner.hpp"
#include "morsegraded/morse.hpp"

namespace mg {

// Alternating cells tau, a0, b0, a1, ..., sigma: down steps to a_i, up
// steps along the matching to b_i.
struct GradientPath {
  std::vector<int> cells;
};

struct PathTally {
  std::uint64_t count = 0;  // saturates at UINT64_MAX
  long long weight = 0;     // signed sum of path incidences
};

// Gradient paths leaving the critical cell tau, grouped by the critical
// cell they end at.
std::map<int, PathTally> gradient_path_tally(const MorseComplex& mc, const std::vector<int>& partner, int tau);

// Throws PathCapExceeded when more than `cap` paths exist.
std::vector<GradientPath> enumerate_gradient_paths(const MorseComplex& mc, const std::vector<int>& partner, int tau,
                                                   int sigma, std::size_t cap);

void reverse_path(std::vector<int>& partner, const GradientPath& path);

enum class UniquenessVerdict { unique_by_theorem, needs_enumeration };
UniquenessVerdict check_321_uniqueness(const LabelSequence& tau, const LabelSequence& sigma);
bool contains_321(const std::vector<int>& permutation);
// Positions mapping tau onto sigma (repeated labels matched in order);
// empty when the contents differ.
std::vector<int> transforming_permutation(const LabelSequence& tau, const LabelSequence& sigma);

struct MultigraphEdge {
  int upper;
  int lower;
  PathTally paths;
};

// Gradient-path multigraph on the critical cells of a matching.
std::vector<MultigraphEdge> critical_multigraph(const MorseComplex& mc, const std::vector<int>& partner);

enum class MemberKind { interior, below };

struct NonEssentialMember {
  int label;
  MemberKind kind;
  int position;         // current 0-based position in the word
  int target_position;  // position after toggling, in the toggled word
};

struct NonEssentialSet {
  RankInterval interval;
  int first;  // label positions spanned by the syzygy interval
  int last;
  std::vector<NonEssentialMember> members;
};

// True when the word labels a facet contributing a critical cell.
bool is_critical_word(const GroebnerBasis& gb, const FacetOrderConfig& cfg, const LabelSequence& word);

std::vector<NonEssentialSet> non_essential_sets(const GroebnerBasis& gb, const FacetOrderConfig& cfg,
                                                const LabelSequence& word);

// Word obtained by toggling a non-essential member in or out of its
// syzygy interval.
LabelSequence toggle_member(const LabelSequence& word, const NonEssentialSet& set, const NonEssentialMember& member);

// A saturated critical word whose non-essential sets are all empty.
bool predicted_survivor(const GroebnerBasis& gb, const FacetOrderConfig& cfg, const LabelSequence& word);

struct LedgerEntry {
  int upper;
  int lower;
  std::string rule;         // "boolean-algebra" or "generic"
  std::string certificate;  // "unique-by-theorem" or "enumerated"
};

struct CancellationOptions {
  std::size_t path_cap = 10000;
  // Cells of dimension below this bound are cancelled first.
  int target_dimension_bound = -2;
  bool guided = true;
};

struct CancellationResult {
  std::vector<int> partner;
  std::vector<int> survivors;  // face ids
  std::vector<LedgerEntry> ledger;
  std::vector<std::string> discrepancies;
  int guided_pairs = 0;
  int generic_pairs = 0;
};

CancellationResult cancel_quadratic(const MorseComplex& mc, const GroebnerBasis& gb,
                                    const CancellationOptions& options = {});
CancellationResult cancel_degree_d(const MorseComplex& mc, const GroebnerBasis& gb,
                                   const CancellationOptions& options = {});

// Dimension bound ceil((deg - 1) / (d - 1)) - 1 of the vanishing theorem.
int survivor_dimension_bound(int degree, int d);

// Morse boundary inside one interval complex: incidences between surviving
// cells of consecutive dimension.
std::vector<MultigraphEdge> morse_boundary(const MorseComplex& mc, const CancellationResult& result);

}  // namespace mg
