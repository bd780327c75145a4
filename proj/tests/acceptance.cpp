#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "morsegraded/automaton.hpp"
#include "morsegraded/homology.hpp"
#include "morsegraded/resolution.hpp"
#include "support.hpp"

using namespace mg;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Ring {
  std::string name;
  Semigroup s;
};

struct Setup {
  GroebnerBasis gb;
  FacetOrderConfig cfg;
};

Setup setup(const Semigroup& s, int window, OrderKind kind = OrderKind::lex) {
  TermOrder order(kind, TermOrder::default_lex(s.rank()).priority());
  return {toric_groebner_for_window(s, order, s.elements_up_to_degree(window)), FacetOrderConfig::from_order(order)};
}

MorseComplex complex_at(const Semigroup& s, const FacetOrderConfig& cfg, const Multidegree& lambda) {
  return build_face_matching(s, s.interval(Multidegree::zero(s.dimension()), lambda), cfg);
}

int critical_face(const MorseComplex& mc, const std::vector<int>& labels) {
  for (const auto& c : mc.critical)
    if (mc.facets[static_cast<std::size_t>(c.facet)].labels == labels) return c.face;
  return -1;
}

const CriticalCell* critical_cell(const MorseComplex& mc, const std::vector<int>& labels) {
  for (const auto& c : mc.critical)
    if (mc.facets[static_cast<std::size_t>(c.facet)].labels == labels) return &c;
  return nullptr;
}

std::string join(const std::vector<long>& v) {
  std::ostringstream out;
  out << "(";
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
  out << ")";
  return out.str();
}

Outcome criterion1() {
  auto s = mgtest::e1();
  auto st = setup(s, 4);
  const Multidegree lambda{2, 2, 1, 1};
  auto mc = complex_at(s, st.cfg, lambda);
  Outcome o;
  const auto* tau = critical_cell(mc, {3, 2, 1, 4});
  const auto* sigma = critical_cell(mc, {2, 1, 3, 4});
  if (!tau || !sigma) return {false, "example facets do not contribute critical cells"};
  bool cells = tau->ranks == std::vector<int>{1, 2, 3} && tau->dimension == 2 &&
               sigma->ranks == std::vector<int>{1, 2} && sigma->dimension == 1;
  auto paths = enumerate_gradient_paths(mc, mc.partner, tau->face, sigma->face, 100);
  CancellationOptions opt;
  opt.target_dimension_bound = survivor_dimension_bound(s.degree(lambda), 2);
  auto result = cancel_quadratic(mc, st.gb, opt);
  std::vector<int> dims;
  for (int f : result.survivors) dims.push_back(mc.dimension_of(f));
  auto survivors = unreduced_morse_numbers(morse_numbers(dims), false);
  mgtest::Oracle oracle(s.generators());
  auto betti = oracle.reduced_betti(lambda, 0);
  std::vector<long> betti_from0(betti.begin() + 1, betti.end());
  o.pass = cells && paths.size() == 1 && survivors == std::vector<long>{1, 0, 2} &&
           betti_from0 == std::vector<long>{0, 0, 2};
  o.detail = "cells " + std::string(cells ? "ok" : "wrong") + ", paths " + std::to_string(paths.size()) +
             ", survivors " + join(survivors) + ", oracle reduced Betti " + join(betti_from0);
  return o;
}

Outcome criterion2() {
  auto s = mgtest::e2();
  auto st = setup(s, 5);
  auto mc = complex_at(s, st.cfg, Multidegree{2, 2, 1, 1, 1});
  const auto* sigma = critical_cell(mc, {3, 2, 1, 4, 5});
  if (!sigma) return {false, "facet 3 2 1 4 5 has no critical cell"};
  bool sigma_ok = sigma->ranks == std::vector<int>{1, 2, 3};
  auto sets = non_essential_sets(st.gb, st.cfg, LabelSequence{{3, 2, 1, 4, 5}});
  std::set<int> members;
  if (sets.size() == 1)
    for (const auto& m : sets[0].members) members.insert(m.label);
  bool set_ok = sets.size() == 1 && members == std::set<int>{2, 3, 4};
  auto facet_of = [](unsigned mask) {
    std::vector<int> out;
    for (int l : {4, 3, 2})
      if (!(mask & (1u << (l - 2)))) out.push_back(l);
    out.push_back(1);
    for (int l : {2, 3, 4})
      if (mask & (1u << (l - 2))) out.push_back(l);
    out.push_back(5);
    return out;
  };
  std::vector<int> cell(8);
  for (unsigned t = 0; t < 8; ++t) {
    cell[t] = critical_face(mc, facet_of(t));
    if (cell[t] < 0) return {false, "Crit(T) missing"};
  }
  int covers = 0, wrong = 0;
  for (unsigned t = 0; t < 8; ++t) {
    auto tally = gradient_path_tally(mc, mc.partner, cell[t]);
    for (unsigned u = 0; u < 8; ++u) {
      if (t == u) continue;
      auto it = tally.find(cell[u]);
      std::uint64_t count = it == tally.end() ? 0 : it->second.count;
      bool cover = (t & u) == t && __builtin_popcount(u) == __builtin_popcount(t) + 1;
      if (cover) ++covers;
      if (count != (cover ? 1u : 0u)) ++wrong;
    }
  }
  Outcome o;
  o.pass = sigma_ok && set_ok && covers == 12 && wrong == 0;
  o.detail = std::string("sigma ranks ") + (sigma_ok ? "{1,2,3}" : "wrong") + ", non-essential set " +
             (set_ok ? "{z3,z4,z5}" : "wrong") + ", " + std::to_string(covers) + " covering pairs with one path, " +
             std::to_string(wrong) + " mismatches";
  return o;
}

Outcome criterion3() {
  auto start = Clock::now();
  std::vector<Ring> rings{{"E1", mgtest::e1()}, {"E2", mgtest::e2()}, {"E3", mgtest::e3()},
                          {"sharp3", mgtest::sharpness_ring(3)}};
  auto random = mgtest::random_semigroups(20, 2024);
  for (std::size_t i = 0; i < random.size(); ++i) rings.push_back({"random" + std::to_string(i), random[i]});
  std::size_t checks = 0, violations = 0;
  for (const auto& r : rings) {
    auto window = r.s.elements_up_to_degree(6);
    auto gb = toric_groebner_for_window(r.s, TermOrder::default_lex(r.s.rank()), window);
    for (int p : {0, 2, 3}) {
      auto report = verify_vanishing(r.s, gb.bound_degree(), window, Field{p});
      checks += report.checks;
      violations += report.violations.size();
    }
  }
  double seconds = std::chrono::duration<double>(Clock::now() - start).count();
  Outcome o;
  o.pass = violations == 0 && seconds <= 600.0;
  std::ostringstream d;
  d << rings.size() << " rings (" << random.size() << " random), degree <= 6, Q/F2/F3: " << checks << " checks, "
    << violations << " violations, " << static_cast<long>(seconds) << " s of 600 s";
  o.detail = d.str();
  return o;
}

Outcome criterion4() {
  Outcome o;
  std::ostringstream d;
  for (int dd : {2, 3}) {
    auto s = mgtest::sharpness_ring(dd);
    auto complex = order_complex(s, Multidegree::zero(s.dimension()), mgtest::sharpness_relation(dd));
    auto b = reduced_betti(complex, Field{0});
    long b0 = b.size() > 1 ? b[1] : 0;
    if (b0 < 1) o.pass = false;
    d << "d=" << dd << ": b0~=" << b0 << " ";
  }
  o.detail = d.str() + "(interval below the relation is disconnected)";
  return o;
}

Outcome criterion5() {
  std::vector<Ring> rings{{"E1", mgtest::e1()}, {"E2", mgtest::e2()}, {"E3", mgtest::e3()},
                          {"twisted", mgtest::twisted_cubic()}, {"sharp3", mgtest::sharpness_ring(3)}};
  std::size_t intervals = 0, failures = 0;
  for (const auto& r : rings) {
    auto st = setup(r.s, 5);
    auto window = r.s.elements_up_to_degree(5);
    auto res = build_morse_resolution(r.s, st.gb, st.cfg, window, {});
    std::map<int, BettiTable> tables;
    for (int p : {0, 2, 3}) tables[p] = tor_ranks(r.s, window, Field{p});
    for (const auto& run : res.runs) {
      if (run.lambda.is_zero()) continue;
      ++intervals;
      long chi = euler_characteristic_from_faces(order_complex(r.s, Multidegree::zero(r.s.dimension()), run.lambda));
      for (const auto* m : {&run.initial_morse, &run.final_morse}) {
        long alt = 0;
        for (std::size_t k = 0; k < m->size(); ++k) alt += (k % 2 == 1 ? 1 : -1) * (*m)[k];
        if (alt != chi) ++failures;
        for (int p : {0, 2, 3}) {
          const auto& b = tables[p].reduced.at(run.lambda);
          for (std::size_t k = 0; k < b.size(); ++k)
            if ((k < m->size() ? (*m)[k] : 0) < b[k]) ++failures;
        }
      }
    }
  }
  return {failures == 0, std::to_string(intervals) + " intervals, initial and final matchings, Q/F2/F3: " +
                             std::to_string(failures) + " failures"};
}

Outcome criterion6() {
  Outcome o;
  std::ostringstream d;
  for (const auto& r : {Ring{"E1", mgtest::e1()}, Ring{"E3", mgtest::e3()}}) {
    auto st = setup(r.s, 5);
    auto window = r.s.elements_up_to_degree(5);
    auto res = build_morse_resolution(r.s, st.gb, st.cfg, window, {});
    auto table = tor_ranks(r.s, window, Field{0});
    std::size_t mismatches = 0;
    std::set<std::pair<Multidegree, int>> keys;
    for (const auto& [k, v] : res.cell_counts) keys.insert(k);
    for (const auto& [k, v] : table.entries) keys.insert(k);
    for (const auto& k : keys) {
      auto it = res.cell_counts.find(k);
      if ((it == res.cell_counts.end() ? 0 : it->second) != table.rank(k.first, k.second)) ++mismatches;
    }
    if (mismatches || res.equal_multidegree_incidences || res.square_violations) o.pass = false;
    d << r.name << ": " << keys.size() << " (lambda,i) entries, " << mismatches << " m!=beta, "
      << res.equal_multidegree_incidences << " equal-multidegree incidences, " << res.square_violations
      << " nonzero d o d entries; ";
  }
  o.detail = d.str();
  return o;
}

Outcome criterion7() {
  Outcome o;
  std::ostringstream d;
  std::vector<Ring> rings{{"E1", mgtest::e1()}, {"E2", mgtest::e2()}, {"E3", mgtest::e3()},
                          {"twisted", mgtest::twisted_cubic()}, {"sharp3", mgtest::sharpness_ring(3)}};
  for (const auto& r : rings) {
    const int window = 5;
    auto st = setup(r.s, window);
    auto elems = r.s.elements_up_to_degree(window);
    auto res = build_morse_resolution(r.s, st.gb, st.cfg, elems, {});
    auto a = st.gb.degree() <= 2 ? build_quadratic_automaton(st.gb, st.cfg)
                                 : build_degree_d_automaton(st.gb, st.cfg, res.runs);
    std::set<Word> survivors;
    for (const auto& run : res.runs)
      for (auto& w : survivor_words(run)) survivors.insert(w);
    std::set<Word> accepted;
    for (auto& w : accepted_words(a, static_cast<std::size_t>(window) + 1)) {
      Multidegree m = Multidegree::zero(r.s.dimension());
      for (const auto& sym : w)
        for (int l : sym) m += r.s.generator(static_cast<std::size_t>(l));
      if (r.s.degree(m) <= window) accepted.insert(w);
    }
    auto series = rational_series(a);
    auto coeffs = series.coefficients(9);
    auto counts = word_counts(a, 8);
    bool series_ok = true;
    for (std::size_t l = 0; l <= 8; ++l) series_ok = series_ok && coeffs[l] == counts[l];
    bool sets_ok = accepted == survivors;
    if (!sets_ok || !series_ok) o.pass = false;
    d << r.name << (sets_ok ? " sets equal" : " SETS DIFFER") << (series_ok ? "" : " SERIES DIFFERS") << "; ";
    if (r.name == "E1") {
      auto totals = tor_ranks(r.s, elems, Field{0}).totals();
      bool e1_ok = coeffs[1] == 5 && coeffs[2] == 11 && totals[1] == 5 && totals[2] == 11;
      if (!e1_ok) o.pass = false;
      d << "E1 t^1=" << coeffs[1].get_str() << " t^2=" << coeffs[2].get_str() << " Tor totals " << totals[1] << ","
        << totals[2] << "; ";
    }
  }
  o.detail = d.str() + "series checked to t^8";
  return o;
}

// Canonical member of a commutation class: least word reachable by swaps.
std::vector<int> class_key(const GroebnerBasis& gb, const std::vector<int>& word, bool& stuttering) {
  std::set<std::vector<int>> seen{word};
  std::vector<std::vector<int>> stack{word};
  while (!stack.empty()) {
    auto w = stack.back();
    stack.pop_back();
    for (std::size_t i = 0; i + 1 < w.size(); ++i) {
      if (!labels_commute(gb, w[i], w[i + 1])) continue;
      if (w[i] == w[i + 1]) {
        stuttering = true;
        continue;
      }
      auto v = w;
      std::swap(v[i], v[i + 1]);
      if (seen.insert(v).second) stack.push_back(v);
    }
  }
  return *seen.begin();
}

Outcome criterion8() {
  Outcome o;
  std::ostringstream d;
  for (const auto& r : {Ring{"E1", mgtest::e1()}, Ring{"E2", mgtest::e2()}}) {
    auto st = setup(r.s, 6);
    auto elems = r.s.elements_up_to_degree(6);
    auto res = build_morse_resolution(r.s, st.gb, st.cfg, elems, {});
    std::map<Monomial, std::vector<std::vector<int>>> by_content;
    for (const auto& run : res.runs)
      for (const auto& w : survivor_words(run)) {
        std::vector<int> letters;
        for (const auto& sym : w)
          for (int l : sym) letters.push_back(l);
        by_content[multiset_to_monomial(letters, r.s.rank())].push_back(letters);
      }
    std::size_t contents = 0, count_mismatch = 0, not_one = 0;
    for (const auto& lambda : elems)
      for (const auto& u : r.s.factorizations(lambda)) {
        ++contents;
        auto classes = jprime_classes(st.gb, st.cfg, u);
        const auto& surv = by_content[u];
        if (classes.size() != surv.size()) ++count_mismatch;
        std::map<std::vector<int>, int> hits;
        for (const auto& c : classes) {
          bool stutter = false;
          hits[class_key(st.gb, c.representative, stutter)] = 0;
        }
        for (const auto& w : surv) {
          bool stutter = false;
          auto key = class_key(st.gb, w, stutter);
          if (stutter || !hits.count(key))
            ++not_one;
          else
            ++hits[key];
        }
        for (const auto& [k, n] : hits)
          if (n != 1) ++not_one;
      }
    if (count_mismatch || not_one) o.pass = false;
    d << r.name << ": " << contents << " contents, " << count_mismatch << " count mismatches, " << not_one
      << " classes without exactly one survivor; ";
  }
  o.detail = d.str();
  return o;
}

Outcome criterion9() {
  std::vector<Ring> rings{{"E1", mgtest::e1()},         {"E2", mgtest::e2()},
                          {"E3", mgtest::e3()},         {"twisted", mgtest::twisted_cubic()},
                          {"sharp2", mgtest::sharpness_ring(2)}, {"sharp3", mgtest::sharpness_ring(3)}};
  auto random = mgtest::random_semigroups(10, 99);
  for (std::size_t i = 0; i < random.size(); ++i) rings.push_back({"random" + std::to_string(i), random[i]});
  std::size_t intervals = 0, facets = 0, crossing = 0, discrepancies = 0;
  for (const auto& r : rings)
    for (auto kind : {OrderKind::lex, OrderKind::graded_lex, OrderKind::graded_revlex}) {
      const int window = r.name.rfind("random", 0) == 0 ? 4 : 5;
      auto st = setup(r.s, window, kind);
      for (const auto& lambda : r.s.elements_up_to_degree(window)) {
        if (lambda.is_zero()) continue;
        ++intervals;
        auto ivl = r.s.interval(Multidegree::zero(r.s.dimension()), lambda);
        if (!check_crossing_condition(r.s, ivl, st.cfg).holds) ++crossing;
        auto mc = build_face_matching(r.s, ivl, st.cfg);
        for (std::size_t f = 0; f < mc.facets.size(); ++f) {
          ++facets;
          std::vector<std::vector<int>> earlier(mc.facet_interior.begin(),
                                                mc.facet_interior.begin() + static_cast<long>(f));
          auto direct = direct_interval_system(mc.facet_interior[f], earlier, mc.facets[f], st.cfg);
          auto msi = msi_characterization(st.gb, st.cfg, mc.facets[f]);
          std::set<std::pair<int, int>> a, b;
          for (const auto& x : direct) a.insert({x.lo, x.hi});
          for (const auto& x : msi) b.insert({x.lo, x.hi});
          if (a != b) ++discrepancies;
        }
      }
    }
  return {crossing == 0 && discrepancies == 0,
          std::to_string(rings.size()) + " rings x 3 orders, " + std::to_string(intervals) + " intervals, " +
              std::to_string(facets) + " facets: " + std::to_string(crossing) + " crossing failures, " +
              std::to_string(discrepancies) + " discrepancies"};
}

Outcome criterion10() {
  std::size_t certified = 0, certified_bad = 0, pattern = 0, pattern_bad = 0;
  std::vector<Ring> rings{{"E1", mgtest::e1()}, {"E2", mgtest::e2()}, {"twisted", mgtest::twisted_cubic()},
                          {"sharp3", mgtest::sharpness_ring(3)}};
  for (const auto& r : rings) {
    auto st = setup(r.s, 5);
    for (const auto& lambda : r.s.elements_up_to_degree(5)) {
      if (r.s.degree(lambda) < 2) continue;
      auto mc = complex_at(r.s, st.cfg, lambda);
      std::map<int, int> facet_of;
      for (const auto& c : mc.critical) facet_of[c.face] = c.facet;
      for (const auto& c : mc.critical)
        for (const auto& [target, tally] : gradient_path_tally(mc, mc.partner, c.face)) {
          const auto& a = mc.facets[static_cast<std::size_t>(c.facet)];
          const auto& b = mc.facets[static_cast<std::size_t>(facet_of[target])];
          auto paths = enumerate_gradient_paths(mc, mc.partner, c.face, target, 10000).size();
          if (check_321_uniqueness(a, b) == UniquenessVerdict::unique_by_theorem) {
            ++certified;
            if (paths != 1) ++certified_bad;
          } else if (contains_321(transforming_permutation(a, b))) {
            ++pattern;
            if (paths > 2) ++pattern_bad;
          }
        }
    }
  }
  return {certified_bad == 0 && pattern >= 5 && pattern_bad == 0,
          std::to_string(certified) + " pairs unique by theorem (" + std::to_string(certified_bad) +
              " without exactly one path), " + std::to_string(pattern) + " 321-containing pairs (" +
              std::to_string(pattern_bad) + " with more than 2 paths)"};
}

}  // namespace

int main() {
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"E1 example cells, path and survivors", criterion1},
      {"E2 Boolean algebra of critical cells", criterion2},
      {"vanishing theorem", criterion3},
      {"sharpness", criterion4},
      {"Morse inequalities and Euler characteristic", criterion5},
      {"quadratic minimality", criterion6},
      {"automaton and series consistency", criterion7},
      {"J' class bijection", criterion8},
      {"crossing condition and characterization", criterion9},
      {"path uniqueness", criterion10},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    auto start = Clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (!o.pass) ++failed;
    std::printf("%s criterion %zu: %s | %s | tolerance exact | %.1f s\n", o.pass ? "PASS" : "FAIL", i + 1,
                criteria[i].first.c_str(), o.detail.c_str(), seconds);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
