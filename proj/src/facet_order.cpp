#include "morsegraded/facet_order.hpp"

#include <algorithm>
#include <cstdint>

#include "morsegraded/error.hpp"

namespace mg {

FacetOrderConfig FacetOrderConfig::from_order(const TermOrder& order) {
  return FacetOrderConfig{order, order.label_ranks()};
}

Monomial content(const LabelSequence& seq, std::size_t nvars) { return multiset_to_monomial(seq.labels, nvars); }

int compare_facets(const FacetOrderConfig& cfg, const LabelSequence& a, const LabelSequence& b) {
  const std::size_t n = cfg.order.nvars();
  int c = cfg.order.compare(content(a, n), content(b, n));
  if (c != 0) return c;
  const std::size_t len = std::min(a.labels.size(), b.labels.size());
  for (std::size_t i = 0; i < len; ++i) {
    int ra = cfg.label_rank[static_cast<std::size_t>(a.labels[i])];
    int rb = cfg.label_rank[static_cast<std::size_t>(b.labels[i])];
    if (ra != rb) return ra < rb ? -1 : 1;
  }
  if (a.labels.size() != b.labels.size()) return a.labels.size() < b.labels.size() ? -1 : 1;
  return 0;
}

std::vector<LabelSequence> saturated_chains(const Semigroup& s, const IntervalData& ivl, const FacetOrderConfig& cfg) {
  std::vector<LabelSequence> out;
  auto diff = ivl.top.checked_minus(ivl.bottom);
  if (!diff) return out;
  for (const Monomial& u : s.factorizations(*diff)) {
    std::vector<int> word = monomial_to_multiset(u);
    do {
      out.push_back(LabelSequence{word});
    } while (std::next_permutation(word.begin(), word.end()));
  }
  std::sort(out.begin(), out.end(),
            [&](const LabelSequence& a, const LabelSequence& b) { return compare_facets(cfg, a, b) < 0; });
  return out;
}

std::vector<int> chain_interior(const Semigroup& s, const IntervalData& ivl, const LabelSequence& seq) {
  std::vector<int> ids;
  Multidegree cur = ivl.bottom;
  for (std::size_t i = 0; i + 1 < seq.labels.size(); ++i) {
    cur += s.generator(static_cast<std::size_t>(seq.labels[i]));
    int id = ivl.index_of(cur);
    if (id < 0) throw Error(ErrorCode::invariant_breach, "chain leaves its interval");
    ids.push_back(id);
  }
  return ids;
}

namespace {

// Bit r-1 set when rank r of `f` is an element of the chain `g`.
std::uint32_t overlap_mask(const std::vector<int>& f, const std::vector<int>& g) {
  std::uint32_t m = 0;
  std::size_t a = 0, b = 0;
  while (a < f.size() && b < g.size()) {
    if (f[a] == g[b]) {
      m |= (1u << a);
      ++a;
      ++b;
    } else if (f[a] < g[b]) {
      ++a;
    } else {
      ++b;
    }
  }
  return m;
}

bool complement_is_interval(std::uint32_t mask, std::size_t ranks) {
  std::uint32_t full = ranks >= 32 ? 0xffffffffu : ((1u << ranks) - 1);
  std::uint32_t c = full & ~mask;
  if (c == 0) return true;
  std::uint32_t shifted = c >> __builtin_ctz(c);
  return (shifted & (shifted + 1)) == 0;
}

std::string seq_str(const LabelSequence& s) {
  std::string r = "(";
  for (std::size_t i = 0; i < s.labels.size(); ++i) {
    if (i) r += ",";
    r += std::to_string(s.labels[i]);
  }
  return r + ")";
}

}  // namespace

CrossingReport check_crossing_condition(const Semigroup& s, const IntervalData& ivl,
                                        const std::vector<LabelSequence>& facets) {
  std::vector<std::vector<int>> interiors;
  interiors.reserve(facets.size());
  for (const auto& f : facets) interiors.push_back(chain_interior(s, ivl, f));
  for (std::size_t j = 0; j < facets.size(); ++j) {
    const std::size_t ranks = interiors[j].size();
    if (ranks > 31) throw Error(ErrorCode::invalid_input, "chains longer than 32 covers are not supported");
    std::vector<std::uint32_t> masks(j);
    for (std::size_t i = 0; i < j; ++i) masks[i] = overlap_mask(interiors[j], interiors[i]);
    for (std::size_t i = 0; i < j; ++i) {
      if (complement_is_interval(masks[i], ranks)) continue;
      bool rescued = false;
      for (std::size_t k = 0; k < j && !rescued; ++k)
        if ((masks[k] & masks[i]) == masks[i] && masks[k] != masks[i]) rescued = true;
      if (!rescued) {
        CrossingReport r;
        r.holds = false;
        r.facet = static_cast<int>(j);
        r.earlier = static_cast<int>(i);
        r.witness = "facet " + seq_str(facets[j]) + " meets earlier facet " + seq_str(facets[i]) +
                    " in a face skipping a disconnected rank set, and no earlier facet extends that overlap";
        return r;
      }
    }
  }
  return {};
}

CrossingReport check_crossing_condition(const Semigroup& s, const IntervalData& ivl, const FacetOrderConfig& cfg) {
  return check_crossing_condition(s, ivl, saturated_chains(s, ivl, cfg));
}

LeastIncreasingReport is_least_content_increasing(const Semigroup& s, const IntervalData& ivl,
                                                  const FacetOrderConfig& cfg) {
  for (std::size_t x = 0; x < ivl.elements.size(); ++x) {
    for (std::size_t y = x + 1; y < ivl.elements.size(); ++y) {
      if (!s.leq(ivl.elements[x], ivl.elements[y])) continue;
      IntervalData sub = s.interval(ivl.elements[x], ivl.elements[y]);
      std::vector<LabelSequence> chains = saturated_chains(s, sub, cfg);
      const LabelSequence& least = chains.front();
      for (std::size_t i = 0; i + 1 < least.labels.size(); ++i) {
        if (cfg.label_less(least.labels[i + 1], least.labels[i])) {
          return {false, "least chain " + seq_str(least) + " on [" + ivl.elements[x].str() + "," +
                             ivl.elements[y].str() + "] is not weakly increasing"};
        }
      }
      for (const LabelSequence& c : chains) {
        LabelSequence sorted = c;
        std::sort(sorted.labels.begin(), sorted.labels.end(),
                  [&](int a, int b) { return cfg.label_less(a, b); });
        if (compare_facets(cfg, least, sorted) > 0) {
          return {false, "least chain " + seq_str(least) + " follows the content of " + seq_str(c)};
        }
      }
    }
  }
  return {};
}

}  // namespace mg
