#pragma once

#include <optional>
#include <string>
#include <vector>

#include "morsegraded/groebner.hpp"
#include "morsegraded/semigroup.hpp"

namespace mg {

// Labels of a saturated chain, read from the bottom cover to the top cover.
struct LabelSequence {
  std::vector<int> labels;
  bool operator==(const LabelSequence&) const = default;
  std::size_t length() const { return labels.size(); }
};

struct FacetOrderConfig {
  TermOrder order;
  // label_rank[i] = position of label i in the label order.
  std::vector<int> label_rank;

  static FacetOrderConfig from_order(const TermOrder& order);
  bool label_less(int a, int b) const { return label_rank[static_cast<std::size_t>(a)] < label_rank[static_cast<std::size_t>(b)]; }
};

Monomial content(const LabelSequence& seq, std::size_t nvars);

// Content by term order first, then label-lex bottom-up.
int compare_facets(const FacetOrderConfig& cfg, const LabelSequence& a, const LabelSequence& b);

// All maximal chains of the interval, sorted by compare_facets.
std::vector<LabelSequence> saturated_chains(const Semigroup& s, const IntervalData& ivl, const FacetOrderConfig& cfg);

// Element ids of the chain strictly between bottom and top, bottom-up.
std::vector<int> chain_interior(const Semigroup& s, const IntervalData& ivl, const LabelSequence& seq);

struct CrossingReport {
  bool holds = true;
  int facet = -1;
  int earlier = -1;
  std::string witness;
};

CrossingReport check_crossing_condition(const Semigroup& s, const IntervalData& ivl, const FacetOrderConfig& cfg);
// Same check for an arbitrary facet order given explicitly.
CrossingReport check_crossing_condition(const Semigroup& s, const IntervalData& ivl,
                                        const std::vector<LabelSequence>& ordered_facets);

struct LeastIncreasingReport {
  bool holds = true;
  std::string witness;
};

LeastIncreasingReport is_least_content_increasing(const Semigroup& s, const IntervalData& ivl,
                                                  const FacetOrderConfig& cfg);

}  // namespace mg
