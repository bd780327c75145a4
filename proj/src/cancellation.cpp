#include "morsegraded/cancellation.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <unordered_map>

#include "morsegraded/error.hpp"

namespace mg {

namespace {

int sign_at(std::size_t i) { return (i % 2 == 0) ? 1 : -1; }

std::uint64_t sat_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = a + b;
  return r < a ? std::numeric_limits<std::uint64_t>::max() : r;
}

using Tally = std::vector<std::pair<int, PathTally>>;

void accumulate(std::map<int, PathTally>& into, const Tally& t, int coef) {
  for (const auto& [cell, tl] : t) {
    PathTally& dst = into[cell];
    dst.count = sat_add(dst.count, tl.count);
    dst.weight += coef * tl.weight;
  }
}

// Memoized path sums from a cell reached by a down step.
class PathDP {
 public:
  PathDP(const MorseComplex& mc, const std::vector<int>& partner) : mc_(mc), partner_(partner) {}

  const Tally& from(int alpha) {
    auto it = memo_.find(alpha);
    if (it != memo_.end()) return it->second;
    std::map<int, PathTally> acc;
    int beta = partner_[static_cast<std::size_t>(alpha)];
    if (beta < 0) {
      acc[alpha] = PathTally{1, 1};
    } else if (mc_.dimension_of(beta) == mc_.dimension_of(alpha) + 1) {
      const auto& bd = mc_.boundary[static_cast<std::size_t>(beta)];
      int back = 0;
      for (std::size_t i = 0; i < bd.size(); ++i)
        if (bd[i] == alpha) back = sign_at(i);
      for (std::size_t i = 0; i < bd.size(); ++i) {
        if (bd[i] == alpha) continue;
        const Tally& sub = from(bd[i]);
        accumulate(acc, sub, -back * sign_at(i));
      }
    }
    Tally t(acc.begin(), acc.end());
    return memo_.emplace(alpha, std::move(t)).first->second;
  }

  std::uint64_t count_to(int alpha, int sigma) {
    for (const auto& [c, tl] : from(alpha))
      if (c == sigma) return tl.count;
    return 0;
  }

 private:
  const MorseComplex& mc_;
  const std::vector<int>& partner_;
  std::unordered_map<int, Tally> memo_;
};

}  // namespace

std::map<int, PathTally> gradient_path_tally(const MorseComplex& mc, const std::vector<int>& partner, int tau) {
  PathDP dp(mc, partner);
  std::map<int, PathTally> out;
  const auto& bd = mc.boundary[static_cast<std::size_t>(tau)];
  for (std::size_t i = 0; i < bd.size(); ++i) accumulate(out, dp.from(bd[i]), sign_at(i));
  return out;
}

std::vector<GradientPath> enumerate_gradient_paths(const MorseComplex& mc, const std::vector<int>& partner, int tau,
                                                   int sigma, std::size_t cap) {
  PathDP dp(mc, partner);
  std::vector<GradientPath> out;
  std::vector<int> cur{tau};
  auto down = [&](auto&& self, int from, int exclude) -> void {
    for (int a : mc.boundary[static_cast<std::size_t>(from)]) {
      if (a == exclude || dp.count_to(a, sigma) == 0) continue;
      cur.push_back(a);
      if (a == sigma) {
        if (out.size() >= cap)
          throw Error(ErrorCode::path_cap_exceeded, "more than " + std::to_string(cap) + " gradient paths");
        out.push_back(GradientPath{cur});
      } else {
        int b = partner[static_cast<std::size_t>(a)];
        cur.push_back(b);
        self(self, b, a);
        cur.pop_back();
      }
      cur.pop_back();
    }
  };
  down(down, tau, -1);
  return out;
}

void reverse_path(std::vector<int>& partner, const GradientPath& path) {
  const auto& c = path.cells;
  if (c.size() < 2 || c.size() % 2 != 0) throw Error(ErrorCode::invariant_breach, "malformed gradient path");
  for (std::size_t i = 0; i + 1 < c.size(); i += 2) {
    partner[static_cast<std::size_t>(c[i])] = c[i + 1];
    partner[static_cast<std::size_t>(c[i + 1])] = c[i];
  }
}

std::vector<int> transforming_permutation(const LabelSequence& tau, const LabelSequence& sigma) {
  if (tau.labels.size() != sigma.labels.size()) return {};
  std::vector<int> perm;
  std::vector<bool> used(tau.labels.size(), false);
  for (int l : sigma.labels) {
    bool found = false;
    for (std::size_t j = 0; j < tau.labels.size(); ++j)
      if (!used[j] && tau.labels[j] == l) {
        used[j] = true;
        perm.push_back(static_cast<int>(j));
        found = true;
        break;
      }
    if (!found) return {};
  }
  return perm;
}

bool contains_321(const std::vector<int>& p) {
  const std::size_t n = p.size();
  for (std::size_t j = 1; j + 1 < n; ++j) {
    bool left = false, right = false;
    for (std::size_t i = 0; i < j; ++i)
      if (p[i] > p[j]) left = true;
    for (std::size_t k = j + 1; k < n; ++k)
      if (p[k] < p[j]) right = true;
    if (left && right) return true;
  }
  return false;
}

namespace {

bool is_block_shift_up(const std::vector<int>& a, const std::vector<int>& b) {
  const std::size_t n = a.size();
  for (std::size_t s = 0; s < n; ++s) {
    for (std::size_t e = s; e < n; ++e) {
      bool ascending = true;
      for (std::size_t x = s; x < e; ++x)
        if (a[x] > a[x + 1]) ascending = false;
      if (!ascending) break;
      std::vector<int> block(a.begin() + static_cast<long>(s), a.begin() + static_cast<long>(e) + 1);
      std::vector<int> rest;
      for (std::size_t x = 0; x < n; ++x)
        if (x < s || x > e) rest.push_back(a[x]);
      for (std::size_t t = s + 1; t <= rest.size(); ++t) {
        std::vector<int> w(rest.begin(), rest.begin() + static_cast<long>(t));
        w.insert(w.end(), block.begin(), block.end());
        w.insert(w.end(), rest.begin() + static_cast<long>(t), rest.end());
        if (w == b) return true;
      }
    }
  }
  return false;
}

bool is_single_shift_down(const std::vector<int>& a, const std::vector<int>& b) {
  const std::size_t n = a.size();
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t t = 0; t < x; ++t) {
      std::vector<int> w = a;
      int l = w[x];
      w.erase(w.begin() + static_cast<long>(x));
      w.insert(w.begin() + static_cast<long>(t), l);
      if (w == b) return true;
    }
  }
  return false;
}

}  // namespace

UniquenessVerdict check_321_uniqueness(const LabelSequence& tau, const LabelSequence& sigma) {
  std::vector<int> perm = transforming_permutation(tau, sigma);
  if (perm.empty() && !tau.labels.empty()) return UniquenessVerdict::needs_enumeration;
  if (contains_321(perm)) return UniquenessVerdict::needs_enumeration;
  if (is_block_shift_up(tau.labels, sigma.labels) || is_single_shift_down(tau.labels, sigma.labels))
    return UniquenessVerdict::unique_by_theorem;
  return UniquenessVerdict::needs_enumeration;
}

std::vector<MultigraphEdge> critical_multigraph(const MorseComplex& mc, const std::vector<int>& partner) {
  std::vector<MultigraphEdge> edges;
  for (std::size_t f = 0; f < partner.size(); ++f) {
    if (partner[f] >= 0 || mc.dimension_of(static_cast<int>(f)) < 0) continue;
    for (const auto& [sigma, tl] : gradient_path_tally(mc, partner, static_cast<int>(f)))
      edges.push_back({static_cast<int>(f), sigma, tl});
  }
  return edges;
}

namespace {

struct Span {
  int first;
  int last;
  RankInterval interval;
};

std::vector<Span> syzygy_spans(const GroebnerBasis& gb, const FacetOrderConfig& cfg, const LabelSequence& w) {
  std::vector<Span> out;
  for (const auto& r : msi_characterization(gb, cfg, w))
    if (r.kind == IntervalKind::syzygy) out.push_back({r.lo - 1, r.hi, r});
  return out;
}

bool commute(const GroebnerBasis& gb, int a, int b) {
  Monomial m = Monomial::zero(gb.nvars());
  m[static_cast<std::size_t>(a)] += 1;
  m[static_cast<std::size_t>(b)] += 1;
  return !in_initial_ideal(gb, m);
}

LabelSequence move_label(const LabelSequence& w, int from, int to) {
  LabelSequence r = w;
  int l = r.labels[static_cast<std::size_t>(from)];
  r.labels.erase(r.labels.begin() + from);
  r.labels.insert(r.labels.begin() + to, l);
  return r;
}

bool strictly_inside_some_span(const std::vector<Span>& spans, int pos) {
  for (const auto& s : spans)
    if (s.first < pos && pos < s.last) return true;
  return false;
}

// Whether the labels at positions `first`..`last` other than `skip` still
// carry a leading term of the basis.
bool removable(const GroebnerBasis& gb, const LabelSequence& w, const Span& s, int skip) {
  Monomial m = Monomial::zero(gb.nvars());
  for (int x = s.first; x <= s.last; ++x)
    if (x != skip) m[static_cast<std::size_t>(w.labels[static_cast<std::size_t>(x)])] += 1;
  return in_initial_ideal(gb, m);
}

int insertion_into_span(const FacetOrderConfig& cfg, const LabelSequence& w, const Span& s, int from) {
  // Positions after removing `from` (which lies below the span).
  int first = s.first - 1, last = s.last - 1;
  LabelSequence removed = w;
  int l = removed.labels[static_cast<std::size_t>(from)];
  removed.labels.erase(removed.labels.begin() + from);
  for (int x = first + 1; x <= last; ++x)
    if (cfg.label_less(l, removed.labels[static_cast<std::size_t>(x)])) return x;
  return last;
}

}  // namespace

bool is_critical_word(const GroebnerBasis& gb, const FacetOrderConfig& cfg, const LabelSequence& word) {
  if (word.labels.empty()) return false;
  IntervalSystem sys = make_interval_system(msi_characterization(gb, cfg, word), static_cast<int>(word.labels.size()) - 1);
  return sys.covers_all_ranks;
}

std::vector<NonEssentialSet> non_essential_sets(const GroebnerBasis& gb, const FacetOrderConfig& cfg,
                                                const LabelSequence& w) {
  std::vector<Span> spans = syzygy_spans(gb, cfg, w);
  std::vector<NonEssentialSet> sets;
  for (const auto& s : spans) sets.push_back({s.interval, s.first, s.last, {}});
  const int len = static_cast<int>(w.labels.size());
  auto label = [&](int pos) { return w.labels[static_cast<std::size_t>(pos)]; };

  for (std::size_t k = 0; k < spans.size(); ++k) {
    const Span& s = spans[k];
    std::set<int> values;
    for (int x = s.first + 1; x < s.last; ++x) {
      int l = label(x);
      if (values.count(l) || !removable(gb, w, s, x)) continue;
      for (int t = s.first; t >= 0; --t) {
        int sep = label(t);
        if (!commute(gb, l, sep) || !cfg.label_less(sep, l)) break;
        LabelSequence moved = move_label(w, x, t);
        if (!is_critical_word(gb, cfg, moved)) continue;
        if (strictly_inside_some_span(syzygy_spans(gb, cfg, moved), t)) continue;
        sets[k].members.push_back({l, MemberKind::interior, x, t});
        values.insert(l);
        break;
      }
    }
  }

  std::vector<bool> assigned(static_cast<std::size_t>(len), false);
  for (std::size_t k = 0; k < spans.size(); ++k) {
    const Span& s = spans[k];
    const int a1 = label(s.first), a2 = label(s.last);
    std::set<int> values;
    for (const auto& m : sets[k].members) values.insert(m.label);
    for (int y = s.first - 1; y >= 0; --y) {
      int l = label(y);
      if (assigned[static_cast<std::size_t>(y)] || values.count(l)) continue;
      if (!(cfg.label_less(a1, l) && cfg.label_less(l, a2))) continue;
      bool ok = true;
      for (int x = y + 1; x < s.first && ok; ++x)
        if (!cfg.label_less(label(x), l) || !commute(gb, l, label(x))) ok = false;
      for (int x = s.first; x <= s.last && ok; ++x)
        if (!commute(gb, l, label(x))) ok = false;
      for (const auto& o : spans) {
        if (!ok) break;
        if (o.last != y) continue;
        if (o.last - o.first > 1) {
          ok = false;
        } else {
          int mu = label(o.first), nu = label(y + 1);
          bool descent = cfg.label_less(nu, mu);
          bool ilt = !cfg.label_less(nu, mu) && !commute(gb, mu, nu);
          if (!descent && !ilt) ok = false;
        }
      }
      if (!ok) continue;
      sets[k].members.push_back({l, MemberKind::below, y, insertion_into_span(cfg, w, s, y)});
      values.insert(l);
      assigned[static_cast<std::size_t>(y)] = true;
    }
  }
  return sets;
}

LabelSequence toggle_member(const LabelSequence& word, const NonEssentialSet&, const NonEssentialMember& member) {
  return move_label(word, member.position, member.target_position);
}

bool predicted_survivor(const GroebnerBasis& gb, const FacetOrderConfig& cfg, const LabelSequence& word) {
  IntervalSystem sys =
      make_interval_system(msi_characterization(gb, cfg, word), static_cast<int>(word.labels.size()) - 1);
  if (!sys.covers_all_ranks) return false;
  if (sys.j_intervals.size() + 1 != word.labels.size()) return false;
  for (const auto& s : non_essential_sets(gb, cfg, word))
    if (!s.members.empty()) return false;
  return true;
}

int survivor_dimension_bound(int degree, int d) {
  if (d < 2) d = 2;
  int num = degree - 1, den = d - 1;
  int ceil = num <= 0 ? 0 : (num + den - 1) / den;
  return ceil - 1;
}

namespace {

struct Engine {
  const MorseComplex& mc;
  const GroebnerBasis& gb;
  const CancellationOptions& opt;
  CancellationResult res;
  std::map<std::vector<int>, int> facet_of_word;
  std::vector<int> critical_face_of_facet;
  std::vector<bool> protect;

  Engine(const MorseComplex& m, const GroebnerBasis& g, const CancellationOptions& o) : mc(m), gb(g), opt(o) {
    res.partner = mc.partner;
    for (std::size_t j = 0; j < mc.facets.size(); ++j) facet_of_word.emplace(mc.facets[j].labels, static_cast<int>(j));
    critical_face_of_facet.assign(mc.facets.size(), -1);
    for (const auto& c : mc.critical) critical_face_of_facet[static_cast<std::size_t>(c.facet)] = c.face;
    protect.assign(mc.faces.size(), false);
  }

  const LabelSequence& word_of(int face) const {
    return mc.facets[static_cast<std::size_t>(mc.owner[static_cast<std::size_t>(face)])];
  }
  bool critical(int f) const { return res.partner[static_cast<std::size_t>(f)] < 0; }
  int dim(int f) const { return mc.dimension_of(f); }

  bool try_cancel(int upper, int lower, const std::string& rule, std::uint64_t known_count) {
    if (known_count != 1) return false;
    auto paths = enumerate_gradient_paths(mc, res.partner, upper, lower, opt.path_cap);
    if (paths.size() != 1) throw Error(ErrorCode::invariant_breach, "path tally and enumeration disagree");
    reverse_path(res.partner, paths.front());
    std::string cert = check_321_uniqueness(word_of(upper), word_of(lower)) == UniquenessVerdict::unique_by_theorem
                           ? "unique-by-theorem"
                           : "enumerated";
    res.ledger.push_back({upper, lower, rule, cert});
    return true;
  }

  void guided_phase() {
    std::set<std::pair<int, int>> proposals;
    for (const auto& c : mc.critical) {
      const LabelSequence& w = mc.facets[static_cast<std::size_t>(c.facet)];
      if (c.dimension < 0) continue;
      if (predicted_survivor(gb, mc.cfg, w)) {
        protect[static_cast<std::size_t>(c.face)] = true;
        continue;
      }
      auto sets = non_essential_sets(gb, mc.cfg, w);
      const NonEssentialSet* expanding = nullptr;
      for (const auto& s : sets)
        if (!s.members.empty() && (!expanding || s.first > expanding->first)) expanding = &s;
      if (!expanding) continue;
      const NonEssentialMember* best = nullptr;
      auto height = [](const NonEssentialMember& m) {
        return m.kind == MemberKind::interior ? m.target_position : m.position;
      };
      for (const auto& m : expanding->members)
        if (!best || height(m) > height(*best)) best = &m;
      LabelSequence other = toggle_member(w, *expanding, *best);
      auto it = facet_of_word.find(other.labels);
      if (it == facet_of_word.end()) {
        res.discrepancies.push_back("guided partner word is not a facet");
        continue;
      }
      int of = critical_face_of_facet[static_cast<std::size_t>(it->second)];
      if (of < 0) {
        res.discrepancies.push_back("guided partner facet contributes no critical cell");
        continue;
      }
      int dd = dim(c.face) - dim(of);
      if (dd == 1)
        proposals.insert({c.face, of});
      else if (dd == -1)
        proposals.insert({of, c.face});
      else
        res.discrepancies.push_back("guided partner differs in dimension by " + std::to_string(dd));
    }
    std::vector<std::pair<int, int>> pending(proposals.begin(), proposals.end());
    std::sort(pending.begin(), pending.end(), [&](const auto& a, const auto& b) {
      int fa = mc.owner[static_cast<std::size_t>(a.first)], fb = mc.owner[static_cast<std::size_t>(b.first)];
      return fa < fb;
    });
    bool progress = true;
    while (progress && !pending.empty()) {
      progress = false;
      std::vector<std::pair<int, int>> next;
      for (const auto& [u, l] : pending) {
        if (!critical(u) || !critical(l)) continue;
        auto tally = gradient_path_tally(mc, res.partner, u);
        auto it = tally.find(l);
        std::uint64_t count = it == tally.end() ? 0 : it->second.count;
        if (try_cancel(u, l, "boolean-algebra", count)) {
          ++res.guided_pairs;
          progress = true;
        } else {
          next.push_back({u, l});
        }
      }
      pending = std::move(next);
    }
    for (const auto& [u, l] : pending)
      if (critical(u) && critical(l))
        res.discrepancies.push_back("guided pair (" + std::to_string(u) + "," + std::to_string(l) +
                                    ") has no unique gradient path");
  }

  void generic_phase(bool respect_protection) {
    bool changed = true;
    while (changed) {
      changed = false;
      std::vector<int> uppers;
      for (int f : mc.critical_faces())
        if (critical(f) && dim(f) >= 0) uppers.push_back(f);
      std::stable_sort(uppers.begin(), uppers.end(), [&](int a, int b) {
        bool la = dim(a) - 1 < opt.target_dimension_bound, lb = dim(b) - 1 < opt.target_dimension_bound;
        if (la != lb) return la;
        return mc.owner[static_cast<std::size_t>(a)] < mc.owner[static_cast<std::size_t>(b)];
      });
      for (int u : uppers) {
        if (!critical(u) || dim(u) < 0) continue;
        if (respect_protection && protect[static_cast<std::size_t>(u)]) continue;
        auto tally = gradient_path_tally(mc, res.partner, u);
        int choice = -1;
        int choice_key = 0;
        const Monomial cu = content(word_of(u), gb.nvars());
        for (const auto& [l, tl] : tally) {
          if (tl.count != 1 || !critical(l)) continue;
          if (respect_protection && protect[static_cast<std::size_t>(l)]) continue;
          int key = (content(word_of(l), gb.nvars()) == cu) ? 0 : 1;
          if (choice < 0 || key < choice_key ||
              (key == choice_key && mc.owner[static_cast<std::size_t>(l)] > mc.owner[static_cast<std::size_t>(choice)])) {
            choice = l;
            choice_key = key;
          }
        }
        if (choice >= 0 && try_cancel(u, choice, "generic", 1)) {
          ++res.generic_pairs;
          changed = true;
        }
      }
    }
  }

  CancellationResult finish() {
    if (!verify_acyclic(mc.boundary, res.partner))
      throw Error(ErrorCode::invariant_breach, "matching became cyclic after path reversal");
    for (std::size_t f = 0; f < res.partner.size(); ++f)
      if (res.partner[f] < 0) res.survivors.push_back(static_cast<int>(f));
    return std::move(res);
  }
};

}  // namespace

CancellationResult cancel_quadratic(const MorseComplex& mc, const GroebnerBasis& gb, const CancellationOptions& options) {
  Engine e(mc, gb, options);
  if (options.guided) e.guided_phase();
  e.generic_phase(true);
  e.generic_phase(false);
  CancellationResult r = e.finish();
  for (int f : r.survivors) {
    int d = mc.dimension_of(f);
    const auto& w = mc.facets[static_cast<std::size_t>(mc.owner[static_cast<std::size_t>(f)])];
    if (d + 2 != static_cast<int>(w.labels.size()))
      r.discrepancies.push_back("UnmatchedUnsaturatedCell: surviving cell of dimension " + std::to_string(d) +
                                " on a facet of length " + std::to_string(w.labels.size()));
  }
  return r;
}

CancellationResult cancel_degree_d(const MorseComplex& mc, const GroebnerBasis& gb, const CancellationOptions& options) {
  Engine e(mc, gb, options);
  if (options.guided) e.guided_phase();
  e.generic_phase(true);
  e.generic_phase(false);
  CancellationResult r = e.finish();
  for (int f : r.survivors) {
    int d = mc.dimension_of(f);
    if (d < options.target_dimension_bound)
      r.discrepancies.push_back("ResidualLowCell: surviving cell of dimension " + std::to_string(d) +
                                " below the bound " + std::to_string(options.target_dimension_bound));
  }
  return r;
}

std::vector<MultigraphEdge> morse_boundary(const MorseComplex& mc, const CancellationResult& result) {
  return critical_multigraph(mc, result.partner);
}

}  // namespace mg
