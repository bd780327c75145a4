#include "morsegraded/automaton.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

#include "morsegraded/error.hpp"

namespace mg {

int MorseAutomaton::symbol_id(const Symbol& s) const {
  auto it = std::find(alphabet.begin(), alphabet.end(), s);
  return it == alphabet.end() ? -1 : static_cast<int>(it - alphabet.begin());
}

int MorseAutomaton::step(int state, int symbol) const {
  if (state < 0 || symbol < 0) return -1;
  const auto& t = transitions[static_cast<std::size_t>(state)];
  auto it = t.find(symbol);
  return it == t.end() ? -1 : it->second;
}

bool MorseAutomaton::accepts(const Word& w) const {
  int s = initial;
  for (const auto& sym : w) {
    s = step(s, symbol_id(sym));
    if (s < 0) return false;
  }
  return states[static_cast<std::size_t>(s)].final;
}

std::size_t MorseAutomaton::transition_count() const {
  std::size_t n = 0;
  for (const auto& t : transitions) n += t.size();
  return n;
}

bool labels_commute(const GroebnerBasis& gb, int a, int b) {
  Monomial m = Monomial::zero(gb.nvars());
  m[static_cast<std::size_t>(a)] += 1;
  m[static_cast<std::size_t>(b)] += 1;
  return !in_initial_ideal(gb, m);
}

std::string word_str(const Word& w) {
  std::ostringstream out;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out << ' ';
    if (w[i].size() == 1) {
      out << w[i][0];
    } else {
      out << '{';
      for (std::size_t j = 0; j < w[i].size(); ++j) out << (j ? "," : "") << w[i][j];
      out << '}';
    }
  }
  return out.str();
}

namespace {

std::string items_str(const std::vector<int>& items, int n) {
  std::ostringstream out;
  out << '[';
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out << ' ';
    if (items[i] < n)
      out << items[i];
    else
      out << "I" << (items[i] - n);
  }
  out << ']';
  return out.str();
}

// Breadth-first construction over hashable state keys.
template <class Key>
class StateTable {
 public:
  StateTable(MorseAutomaton& a, std::size_t budget) : a_(a), budget_(budget) {}

  std::pair<int, bool> intern(const Key& k, bool final, const std::string& description) {
    auto it = ids_.find(k);
    if (it != ids_.end()) return {it->second, false};
    if (a_.states.size() >= budget_)
      throw Error(ErrorCode::state_budget_exceeded, "automaton exceeds " + std::to_string(budget_) + " states");
    int id = static_cast<int>(a_.states.size());
    ids_.emplace(k, id);
    a_.states.push_back({final, description});
    a_.transitions.emplace_back();
    keys_.push_back(k);
    return {id, true};
  }
  const Key& key(int id) const { return keys_[static_cast<std::size_t>(id)]; }

 private:
  MorseAutomaton& a_;
  std::size_t budget_;
  std::map<Key, int> ids_;
  std::vector<Key> keys_;
};

// Recency list helpers for the quadratic automaton. Items below n are
// labels; n + hi * n + lo is the increasing leading term read as hi, lo.
struct Recency {
  const GroebnerBasis& gb;
  const FacetOrderConfig& cfg;
  int n;

  bool in(int a, int b) const { return !labels_commute(gb, a, b); }
  bool less(int a, int b) const { return cfg.label_less(a, b); }
  bool is_label(int item) const { return item < n; }
  int ilt(int hi, int lo) const { return n + hi * n + lo; }
  int ilt_hi(int item) const { return (item - n) / n; }
  int ilt_lo(int item) const { return (item - n) % n; }

  int last_label(const std::vector<int>& r) const {
    for (auto it = r.rbegin(); it != r.rend(); ++it)
      if (is_label(*it)) return *it;
    return -1;
  }

  // Index of the most recent increasing leading term whose non-essential
  // set would contain lambda, or -1.
  int non_essential_owner(const std::vector<int>& r, int lambda) const {
    int owner = -1;
    for (std::size_t p = 0; p < r.size(); ++p) {
      if (is_label(r[p])) continue;
      int a2 = ilt_hi(r[p]), a1 = ilt_lo(r[p]);
      if (!(less(a1, lambda) && less(lambda, a2))) continue;
      bool escaped = in(lambda, a1) || in(lambda, a2);
      for (std::size_t q = p + 1; q < r.size() && !escaped; ++q)
        if (is_label(r[q]) && (in(lambda, r[q]) || less(lambda, r[q]))) escaped = true;
      if (!escaped) owner = static_cast<int>(p);
    }
    return owner;
  }

  // A previously read mu' that could shift down into the new leading term
  // (lambda read after mu).
  bool shiftable_into(const std::vector<int>& r, int lambda, int mu) const {
    std::size_t mu_at = r.size();
    for (std::size_t q = r.size(); q-- > 0;)
      if (r[q] == mu) {
        mu_at = q;
        break;
      }
    for (std::size_t q = 0; q < mu_at; ++q) {
      int m = r[q];
      if (!is_label(m) || !(less(lambda, m) && less(m, mu))) continue;
      bool ok = true;
      for (std::size_t k = q + 1; k < r.size() && ok; ++k)
        if (is_label(r[k]) && (!less(m, r[k]) || in(m, r[k]))) ok = false;
      if (!ok) continue;
      std::vector<int> without;
      for (std::size_t k = 0; k < mu_at; ++k) {
        if (k == q) continue;
        if (!is_label(r[k]) && (ilt_hi(r[k]) == m || ilt_lo(r[k]) == m)) continue;
        without.push_back(r[k]);
      }
      if (non_essential_owner(without, mu) >= 0) return true;
    }
    return false;
  }

  std::vector<int> push(std::vector<int> r, int lambda, int mu, bool forms_ilt) const {
    auto drop = [&](int item) { r.erase(std::remove(r.begin(), r.end(), item), r.end()); };
    drop(lambda);
    r.push_back(lambda);
    if (forms_ilt) {
      drop(ilt(mu, lambda));
      r.push_back(ilt(mu, lambda));
    }
    return r;
  }
};

struct QuadKey {
  std::vector<int> recency;
  bool final;
  int pending;
  int prev;
  auto operator<=>(const QuadKey&) const = default;
};

}  // namespace

MorseAutomaton build_quadratic_automaton(const GroebnerBasis& gb, const FacetOrderConfig& cfg,
                                         const AutomatonOptions& options) {
  if (gb.degree() > 2) throw Error(ErrorCode::invalid_input, "quadratic automaton needs a basis of degree at most 2");
  const int n = static_cast<int>(gb.nvars());
  MorseAutomaton a;
  a.kind = "quadratic";
  for (int l = 0; l < n; ++l) a.alphabet.push_back({l});
  Recency rc{gb, cfg, n};
  StateTable<QuadKey> table(a, options.state_budget);
  auto describe = [&](const QuadKey& k) {
    std::string d = items_str(k.recency, n);
    if (!k.final) d += " pending " + std::to_string(k.pending);
    return d;
  };
  QuadKey start{{}, true, -1, -1};
  table.intern(start, true, describe(start));
  std::deque<int> queue{0};
  auto add = [&](int from, int label, const QuadKey& k) {
    auto [id, fresh] = table.intern(k, k.final, describe(k));
    a.transitions[static_cast<std::size_t>(from)][label] = id;
    if (fresh) queue.push_back(id);
  };
  while (!queue.empty()) {
    int id = queue.front();
    queue.pop_front();
    const QuadKey cur = table.key(id);
    if (cur.final) {
      const int mu = rc.last_label(cur.recency);
      for (int lambda = 0; lambda < n; ++lambda) {
        bool forms_ilt = false;
        if (mu >= 0) {
          bool descent = rc.less(mu, lambda);
          forms_ilt = !rc.less(mu, lambda) && rc.in(lambda, mu);
          if (!descent && !forms_ilt) continue;
          if (forms_ilt && rc.shiftable_into(cur.recency, lambda, mu)) continue;
        }
        auto next = rc.push(cur.recency, lambda, mu, forms_ilt);
        if (rc.non_essential_owner(cur.recency, lambda) < 0)
          add(id, lambda, QuadKey{next, true, -1, -1});
        else
          add(id, lambda, QuadKey{next, false, lambda, mu});
      }
      continue;
    }
    // Non-final: only a leading term with the pending label can release it.
    const int lambda = cur.pending, mu = cur.prev;
    std::vector<int> before;
    for (int item : cur.recency)
      if (item != lambda && !(mu >= 0 && item == rc.ilt(mu, lambda))) before.push_back(item);
    int owner = rc.non_essential_owner(before, lambda);
    std::vector<int> shifted = before;
    if (owner >= 0) {
      int a1 = rc.ilt_lo(before[static_cast<std::size_t>(owner)]);
      std::size_t at = static_cast<std::size_t>(owner);
      if (at > 0 && before[at - 1] == a1) --at;
      shifted.insert(shifted.begin() + static_cast<long>(at), lambda);
    }
    for (int next_label = 0; next_label < n; ++next_label) {
      if (rc.less(lambda, next_label) || !rc.in(next_label, lambda)) continue;
      bool below_mu = options.below_predecessor_escape && mu >= 0 && rc.less(next_label, mu) && !rc.in(next_label, mu);
      bool also_non_essential = rc.non_essential_owner(shifted, next_label) >= 0;
      if (!below_mu && !also_non_essential) continue;
      if (rc.shiftable_into(cur.recency, next_label, lambda)) continue;
      auto next = rc.push(cur.recency, next_label, lambda, true);
      if (rc.non_essential_owner(cur.recency, next_label) < 0)
        add(id, next_label, QuadKey{next, true, -1, -1});
      else
        add(id, next_label, QuadKey{next, false, next_label, lambda});
    }
  }
  return a;
}

MorseAutomaton build_lex_normal_form_automaton(const GroebnerBasis& gb, const FacetOrderConfig& cfg,
                                               const AutomatonOptions& options) {
  const int n = static_cast<int>(gb.nvars());
  if (n > 64) throw Error(ErrorCode::invalid_input, "lex normal form automaton supports at most 64 labels");
  MorseAutomaton a;
  a.kind = "lex-normal-form";
  for (int l = 0; l < n; ++l) a.alphabet.push_back({l});
  using Key = std::pair<std::uint64_t, std::uint64_t>;  // forbidden letters, stuttering letters
  StateTable<Key> table(a, options.state_budget);
  auto describe = [&](const Key& k) {
    std::ostringstream out;
    out << "P{";
    for (int l = 0; l < n; ++l)
      if (k.first >> l & 1) out << ' ' << l;
    out << " } Q{";
    for (int l = 0; l < n; ++l)
      if (k.second >> l & 1) out << ' ' << l;
    out << " }";
    return out.str();
  };
  table.intern({0, 0}, true, describe({0, 0}));
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int id = queue.front();
    queue.pop_front();
    const Key cur = table.key(id);
    for (int x = 0; x < n; ++x) {
      if ((cur.first >> x & 1) || (cur.second >> x & 1)) continue;
      Key next{0, 0};
      for (int l = 0; l < n; ++l) {
        if (!labels_commute(gb, l, x)) continue;
        if ((cur.first >> l & 1) || cfg.label_less(l, x)) next.first |= std::uint64_t{1} << l;
        if (cur.second >> l & 1) next.second |= std::uint64_t{1} << l;
      }
      if (labels_commute(gb, x, x)) next.second |= std::uint64_t{1} << x;
      auto [nid, fresh] = table.intern(next, true, describe(next));
      a.transitions[static_cast<std::size_t>(id)][x] = nid;
      if (fresh) queue.push_back(nid);
    }
  }
  return a;
}

Word cell_word(const MorseComplex& mc, int face) {
  const auto& verts = mc.faces[static_cast<std::size_t>(face)];
  const int owner = mc.owner[static_cast<std::size_t>(face)];
  const auto& labels = mc.facets[static_cast<std::size_t>(owner)].labels;
  const auto& interior = mc.facet_interior[static_cast<std::size_t>(owner)];
  std::vector<std::size_t> cuts{0};
  for (int v : verts) {
    auto it = std::find(interior.begin(), interior.end(), v);
    if (it == interior.end()) throw Error(ErrorCode::invariant_breach, "face vertex outside its owning facet");
    cuts.push_back(static_cast<std::size_t>(it - interior.begin()) + 1);
  }
  cuts.push_back(labels.size());
  Word w;
  for (std::size_t g = cuts.size() - 1; g-- > 0;) {
    Symbol s(labels.begin() + static_cast<long>(cuts[g]), labels.begin() + static_cast<long>(cuts[g + 1]));
    std::reverse(s.begin(), s.end());
    w.push_back(std::move(s));
  }
  return w;
}

std::vector<Word> survivor_words(const IntervalRun& run) {
  if (run.lambda.is_zero() || !run.complex) return {Word{}};
  std::vector<Word> out;
  for (int f : run.result.survivors) out.push_back(cell_word(*run.complex, f));
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Nondeterministic transitions collected from survivors, determinized by
// subset construction.
MorseAutomaton learned_automaton(const GroebnerBasis& gb, const FacetOrderConfig& cfg,
                                 const std::vector<IntervalRun>& runs, const AutomatonOptions& options) {
  const int n = static_cast<int>(gb.nvars());
  std::set<Word> survivors;
  for (const auto& run : runs)
    for (auto& w : survivor_words(run)) survivors.insert(std::move(w));

  std::vector<Symbol> alphabet;
  for (int l = 0; l < n; ++l) alphabet.push_back({l});
  std::map<Symbol, int> symbol_ids;
  for (int l = 0; l < n; ++l) symbol_ids[{l}] = l;
  std::map<std::vector<int>, int> ilt_ids;  // previous label followed by the block

  using Key = std::pair<std::vector<int>, bool>;
  std::map<Key, int> nfa_ids{{Key{{}, true}, 0}};
  std::vector<Key> nfa_keys{Key{{}, true}};
  std::vector<std::map<int, std::set<int>>> nfa(1);
  auto nfa_state = [&](const Key& k) {
    auto [it, fresh] = nfa_ids.emplace(k, static_cast<int>(nfa_keys.size()));
    if (fresh) {
      nfa_keys.push_back(k);
      nfa.emplace_back();
    }
    return it->second;
  };
  for (const auto& w : survivors) {
    std::vector<int> recency;
    int state = 0;
    Word prefix;
    for (const auto& sym : w) {
      int mu = -1;
      for (auto it = recency.rbegin(); it != recency.rend(); ++it)
        if (*it < n) {
          mu = *it;
          break;
        }
      auto [sit, fresh] = symbol_ids.emplace(sym, static_cast<int>(alphabet.size()));
      if (fresh) alphabet.push_back(sym);
      std::optional<int> ilt_item;
      if (mu >= 0) {
        bool forms = sym.size() > 1 || (!cfg.label_less(mu, sym[0]) && !labels_commute(gb, sym[0], mu));
        if (forms) {
          std::vector<int> key{mu};
          key.insert(key.end(), sym.begin(), sym.end());
          auto [iit, ifresh] = ilt_ids.emplace(key, static_cast<int>(ilt_ids.size()));
          (void)ifresh;
          ilt_item = n + iit->second;
        }
      }
      for (int l : sym) {
        recency.erase(std::remove(recency.begin(), recency.end(), l), recency.end());
        recency.push_back(l);
      }
      if (ilt_item) {
        recency.erase(std::remove(recency.begin(), recency.end(), *ilt_item), recency.end());
        recency.push_back(*ilt_item);
      }
      prefix.push_back(sym);
      int next = nfa_state(Key{recency, survivors.count(prefix) > 0});
      nfa[static_cast<std::size_t>(state)][sit->second].insert(next);
      state = next;
    }
  }

  MorseAutomaton a;
  a.kind = "degree-d";
  a.alphabet = alphabet;
  a.notes.push_back("transitions collected from " + std::to_string(survivors.size()) + " surviving cells");
  std::size_t conflicts = 0;
  for (const auto& per_state : nfa)
    for (const auto& [sym, targets] : per_state)
      if (targets.size() > 1) ++conflicts;
  if (conflicts) a.notes.push_back(std::to_string(conflicts) + " nondeterministic transitions before subset construction");
  StateTable<std::set<int>> table(a, options.state_budget);
  auto describe = [&](const std::set<int>& subset) {
    std::string d;
    for (int s : subset) d += (d.empty() ? "" : " | ") + items_str(nfa_keys[static_cast<std::size_t>(s)].first, n);
    return d;
  };
  auto is_final = [&](const std::set<int>& subset) {
    for (int s : subset)
      if (nfa_keys[static_cast<std::size_t>(s)].second) return true;
    return false;
  };
  table.intern({0}, true, describe({0}));
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int id = queue.front();
    queue.pop_front();
    std::map<int, std::set<int>> moves;
    for (int s : table.key(id))
      for (const auto& [sym, targets] : nfa[static_cast<std::size_t>(s)]) moves[sym].insert(targets.begin(), targets.end());
    for (const auto& [sym, subset] : moves) {
      auto [nid, fresh] = table.intern(subset, is_final(subset), describe(subset));
      a.transitions[static_cast<std::size_t>(id)][sym] = nid;
      if (fresh) queue.push_back(nid);
    }
  }
  return a;
}

}  // namespace

MorseAutomaton build_degree_d_automaton(const GroebnerBasis& gb, const FacetOrderConfig& cfg,
                                        const std::vector<IntervalRun>& runs, const AutomatonOptions& options) {
  if (gb.degree() <= 2) {
    auto a = build_quadratic_automaton(gb, cfg, options);
    a.kind = "degree-d";
    a.notes.push_back("quadratic basis: no block transitions");
    return a;
  }
  return learned_automaton(gb, cfg, runs, options);
}

std::vector<Word> accepted_words(const MorseAutomaton& a, std::size_t max_length) {
  std::vector<Word> out;
  Word cur;
  auto walk = [&](auto&& self, int state) -> void {
    if (a.states[static_cast<std::size_t>(state)].final) out.push_back(cur);
    if (cur.size() == max_length) return;
    for (const auto& [sym, next] : a.transitions[static_cast<std::size_t>(state)]) {
      cur.push_back(a.alphabet[static_cast<std::size_t>(sym)]);
      self(self, next);
      cur.pop_back();
    }
  };
  walk(walk, a.initial);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<mpz_class> word_counts(const MorseAutomaton& a, std::size_t max_length) {
  std::vector<mpz_class> ways(a.states.size(), 0), counts;
  ways[static_cast<std::size_t>(a.initial)] = 1;
  for (std::size_t len = 0; len <= max_length; ++len) {
    mpz_class total = 0;
    for (std::size_t s = 0; s < ways.size(); ++s)
      if (a.states[s].final) total += ways[s];
    counts.push_back(total);
    if (len == max_length) break;
    std::vector<mpz_class> next(a.states.size(), 0);
    for (std::size_t s = 0; s < ways.size(); ++s) {
      if (ways[s] == 0) continue;
      for (const auto& [sym, t] : a.transitions[s]) next[static_cast<std::size_t>(t)] += ways[s];
    }
    ways = std::move(next);
  }
  return counts;
}

namespace {

// Moore partition refinement on the states that can reach a final state.
std::size_t minimized_size(const MorseAutomaton& a) {
  const std::size_t n = a.states.size();
  std::vector<std::vector<int>> reverse(n);
  for (std::size_t s = 0; s < n; ++s)
    for (const auto& [sym, t] : a.transitions[s]) reverse[static_cast<std::size_t>(t)].push_back(static_cast<int>(s));
  std::vector<bool> live(n, false);
  std::deque<int> queue;
  for (std::size_t s = 0; s < n; ++s)
    if (a.states[s].final) {
      live[s] = true;
      queue.push_back(static_cast<int>(s));
    }
  while (!queue.empty()) {
    int s = queue.front();
    queue.pop_front();
    for (int p : reverse[static_cast<std::size_t>(s)])
      if (!live[static_cast<std::size_t>(p)]) {
        live[static_cast<std::size_t>(p)] = true;
        queue.push_back(p);
      }
  }
  std::vector<int> cls(n);
  for (std::size_t s = 0; s < n; ++s) cls[s] = live[s] ? (a.states[s].final ? 1 : 2) : 0;
  std::size_t classes = 0;
  for (;;) {
    std::map<std::vector<int>, int> sig_ids;
    std::vector<int> next(n);
    for (std::size_t s = 0; s < n; ++s) {
      std::vector<int> sig{cls[s]};
      if (live[s])
        for (const auto& [sym, t] : a.transitions[s])
          if (live[static_cast<std::size_t>(t)]) {
            sig.push_back(sym);
            sig.push_back(cls[static_cast<std::size_t>(t)]);
          }
      next[s] = sig_ids.emplace(sig, static_cast<int>(sig_ids.size())).first->second;
    }
    if (sig_ids.size() == classes) break;
    classes = sig_ids.size();
    cls = std::move(next);
  }
  return classes;
}

std::vector<mpz_class> multiply_truncated(const std::vector<mpz_class>& p, const std::vector<mpz_class>& q,
                                          std::size_t terms) {
  std::vector<mpz_class> r(terms, 0);
  for (std::size_t i = 0; i < p.size() && i < terms; ++i)
    for (std::size_t j = 0; j < q.size() && i + j < terms; ++j) r[i + j] += p[i] * q[j];
  return r;
}

std::string poly_str(const std::vector<mpz_class>& p) {
  std::ostringstream out;
  bool first = true;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] == 0) continue;
    mpz_class c = p[i];
    if (first) {
      if (c < 0) out << "-";
    } else {
      out << (c < 0 ? " - " : " + ");
    }
    c = abs(c);
    if (i == 0 || c != 1) out << c.get_str();
    if (i > 0) out << "t" << (i > 1 ? "^" + std::to_string(i) : "");
    first = false;
  }
  return first ? "0" : out.str();
}

}  // namespace

std::vector<mpz_class> RationalSeries::coefficients(std::size_t count) const {
  // c = N / D with D(0) = 1.
  std::vector<mpz_class> c(count, 0);
  for (std::size_t k = 0; k < count; ++k) {
    mpz_class v = k < numerator.size() ? numerator[k] : mpz_class(0);
    for (std::size_t i = 1; i < denominator.size() && i <= k; ++i) v -= denominator[i] * c[k - i];
    c[k] = v;
  }
  return c;
}

std::string RationalSeries::str() const { return "(" + poly_str(numerator) + ") / (" + poly_str(denominator) + ")"; }

RationalSeries rational_series(const MorseAutomaton& a) {
  const std::size_t order = minimized_size(a) + 1;
  const std::size_t terms = 2 * order + 2;
  auto counts = word_counts(a, terms - 1);
  // Berlekamp-Massey over the rationals.
  std::vector<mpq_class> c{1}, b{1};
  std::size_t len = 0, shift = 1;
  mpq_class last = 1;
  for (std::size_t k = 0; k < terms; ++k) {
    mpq_class d = counts[k];
    for (std::size_t i = 1; i <= len && i < c.size(); ++i) d += c[i] * counts[k - i];
    if (d == 0) {
      ++shift;
      continue;
    }
    auto t = c;
    mpq_class f = d / last;
    if (c.size() < b.size() + shift) c.resize(b.size() + shift, 0);
    for (std::size_t i = 0; i < b.size(); ++i) c[i + shift] -= f * b[i];
    if (2 * len <= k) {
      len = k + 1 - len;
      b = std::move(t);
      last = d;
      shift = 1;
    } else {
      ++shift;
    }
  }
  c.resize(len + 1, 0);
  RationalSeries series;
  for (auto& q : c) {
    q.canonicalize();
    if (q.get_den() != 1) throw Error(ErrorCode::invariant_breach, "non-integral series denominator");
    series.denominator.push_back(q.get_num());
  }
  while (series.denominator.size() > 1 && series.denominator.back() == 0) series.denominator.pop_back();
  series.numerator = multiply_truncated(series.denominator, counts, std::max<std::size_t>(len, 1));
  while (series.numerator.size() > 1 && series.numerator.back() == 0) series.numerator.pop_back();
  auto check = series.coefficients(terms);
  for (std::size_t k = 0; k < terms; ++k)
    if (check[k] != counts[k]) throw Error(ErrorCode::invariant_breach, "series expansion differs from word counts");
  return series;
}

std::vector<JPrimeClass> jprime_classes(const GroebnerBasis& gb, const FacetOrderConfig& cfg, const Monomial& content,
                                        bool include_stuttering) {
  std::vector<int> letters;
  for (std::size_t l = 0; l < content.size(); ++l)
    for (int k = 0; k < content[l]; ++k) letters.push_back(static_cast<int>(l));
  auto rank_less = [&](const std::vector<int>& x, const std::vector<int>& y) {
    return std::lexicographical_compare(x.begin(), x.end(), y.begin(), y.end(),
                                        [&](int p, int q) { return cfg.label_less(p, q); });
  };
  std::sort(letters.begin(), letters.end());
  std::set<std::vector<int>> seen;
  std::vector<JPrimeClass> out;
  do {
    if (seen.count(letters)) continue;
    JPrimeClass cls;
    cls.content = content;
    cls.representative = letters;
    std::vector<std::vector<int>> stack{letters};
    seen.insert(letters);
    while (!stack.empty()) {
      auto w = std::move(stack.back());
      stack.pop_back();
      ++cls.size;
      if (rank_less(w, cls.representative)) cls.representative = w;
      for (std::size_t i = 0; i + 1 < w.size(); ++i) {
        if (!labels_commute(gb, w[i], w[i + 1])) continue;
        if (w[i] == w[i + 1]) {
          cls.non_stuttering = false;
          continue;
        }
        auto v = w;
        std::swap(v[i], v[i + 1]);
        if (seen.insert(v).second) stack.push_back(std::move(v));
      }
    }
    if (cls.non_stuttering || include_stuttering) out.push_back(std::move(cls));
  } while (std::next_permutation(letters.begin(), letters.end()));
  std::sort(out.begin(), out.end(),
            [&](const JPrimeClass& x, const JPrimeClass& y) { return rank_less(x.representative, y.representative); });
  return out;
}

}  // namespace mg
