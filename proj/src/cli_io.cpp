#include "morsegraded/cli_io.hpp"

#include <gmp.h>

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "morsegraded/automaton.hpp"
#include "morsegraded/error.hpp"
#include "morsegraded/homology.hpp"
#include "morsegraded/resolution.hpp"

namespace mg {

using Json = nlohmann::ordered_json;

const char* version_string() { return "0.1.0"; }

namespace {

[[noreturn]] void parse_fail(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::parse_error, path + ": " + what);
}

const Json& require(const Json& obj, const std::string& key, const std::string& path) {
  auto it = obj.find(key);
  if (it == obj.end()) parse_fail(path, "missing field \"" + key + "\"");
  return *it;
}

int as_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) parse_fail(path, "expected an integer");
  return j.get<int>();
}

std::vector<int> as_int_vector(const Json& j, const std::string& path, std::optional<std::size_t> length = std::nullopt) {
  if (!j.is_array()) parse_fail(path, "expected an array of integers");
  if (length && j.size() != *length)
    parse_fail(path, "expected " + std::to_string(*length) + " entries, found " + std::to_string(j.size()));
  std::vector<int> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(as_int(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<int> as_exponents(const Json& j, const std::string& path, std::size_t length) {
  auto v = as_int_vector(j, path, length);
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] < 0) parse_fail(path + "[" + std::to_string(i) + "]", "expected a non-negative integer");
  return v;
}

std::string line_column(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

TermOrder parse_term_order(const Json& j, std::size_t n, const std::string& path) {
  if (j.is_string()) {
    auto kind = parse_order_kind(j.get<std::string>());
    if (kind == OrderKind::weight_matrix) parse_fail(path, "weight-matrix order needs an object with weights");
    return TermOrder(kind, TermOrder::default_lex(n).priority());
  }
  if (!j.is_object()) parse_fail(path, "expected a string or an object");
  const auto& k = require(j, "kind", path);
  if (!k.is_string()) parse_fail(path + ".kind", "expected a string");
  OrderKind kind;
  try {
    kind = parse_order_kind(k.get<std::string>());
  } catch (const Error& e) {
    parse_fail(path + ".kind", e.what());
  }
  std::vector<int> priority = TermOrder::default_lex(n).priority();
  if (j.contains("priority")) priority = as_int_vector(j["priority"], path + ".priority", n);
  std::vector<std::vector<int>> weights;
  if (j.contains("weights")) {
    const auto& w = j["weights"];
    if (!w.is_array()) parse_fail(path + ".weights", "expected an array of rows");
    for (std::size_t r = 0; r < w.size(); ++r)
      weights.push_back(as_int_vector(w[r], path + ".weights[" + std::to_string(r) + "]", n));
  }
  try {
    return TermOrder(kind, priority, weights);
  } catch (const Error& e) {
    parse_fail(path, e.what());
  }
}

Json order_json(const TermOrder& o) {
  Json j;
  j["kind"] = order_kind_name(o.kind());
  j["priority"] = o.priority();
  if (!o.weights().empty()) j["weights"] = o.weights();
  return j;
}

Json vec_json(const Multidegree& v) { return Json(v.values()); }
Json vec_json(const Monomial& v) { return Json(v.values()); }

Json word_json(const Word& w) {
  Json out = Json::array();
  for (const auto& s : w) {
    if (s.size() == 1)
      out.push_back(s[0]);
    else
      out.push_back(Json(s));
  }
  return out;
}

Json longs_json(const std::vector<long>& v) { return Json(v); }

Json mpz_vector_json(const std::vector<mpz_class>& v) {
  Json out = Json::array();
  for (const auto& x : v) {
    if (x.fits_slong_p())
      out.push_back(x.get_si());
    else
      out.push_back(x.get_str());
  }
  return out;
}

Json interval_json(const RankInterval& r) {
  Json j;
  j["lo"] = r.lo;
  j["hi"] = r.hi;
  j["kind"] = r.kind == IntervalKind::descent ? "descent" : "syzygy";
  if (r.witness >= 0) j["witness"] = r.witness;
  return j;
}

std::string field_name(int characteristic) { return Field{characteristic}.name(); }

struct Check {
  explicit Check(std::string n) : name(std::move(n)) {}
  std::string name;
  bool pass = true;
  std::size_t cases = 0;
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    ++cases;
    if (!ok) {
      pass = false;
      if (failures.size() < 20) failures.push_back(what);
    }
  }
  Json json() const {
    Json j;
    j["name"] = name;
    j["pass"] = pass;
    j["cases"] = cases;
    j["failures"] = failures;
    return j;
  }
};

class Pipeline {
 public:
  Pipeline(const InputDocument& doc, const RunConfig& cfg) : doc_(doc), cfg_(cfg), s_(doc.semigroup) {
    const std::size_t n = s_.rank();
    TermOrder order = doc.term_order ? *doc.term_order : TermOrder::default_lex(n);
    if (cfg.term_order) {
      auto kind = parse_order_kind(*cfg.term_order);
      if (kind == OrderKind::weight_matrix)
        throw Error(ErrorCode::invalid_input, "weight-matrix orders must be given in the input document");
      TermOrder override_order(kind, order.priority());
      if (doc.groebner_basis && override_order.kind() != doc.groebner_basis->order.kind())
        throw Error(ErrorCode::invalid_input, "term order override conflicts with the supplied basis");
      order = override_order;
    }
    fcfg_ = FacetOrderConfig::from_order(order);
    if (!doc.targets.empty()) {
      window_ = doc.targets;
    } else {
      window_ = s_.elements_up_to_degree(cfg.degree_window);
    }
    for (const auto& lambda : window_)
      if (!s_.contains(lambda)) throw Error(ErrorCode::invalid_input, "target " + lambda.str() + " is not in the semigroup");
    timed("groebner", [&] {
      if (doc.groebner_basis) {
        gb_ = *doc.groebner_basis;
        verify_groebner_basis(s_, gb_, down_closure(s_, window_));
        gb_source_ = "supplied";
      } else {
        gb_ = toric_groebner_for_window(s_, order, window_);
        gb_source_ = "computed";
      }
    });
  }

  const Semigroup& s() const { return s_; }
  const FacetOrderConfig& fcfg() const { return fcfg_; }
  const GroebnerBasis& gb() const { return gb_; }
  const std::vector<Multidegree>& window() const { return window_; }

  std::vector<Multidegree> targets() const {
    std::vector<Multidegree> out;
    for (const auto& l : window_)
      if (!l.is_zero()) out.push_back(l);
    return out;
  }

  CancellationOptions cancel_options() const {
    CancellationOptions o;
    o.path_cap = cfg_.path_cap;
    return o;
  }

  const MorseResolution& resolution() {
    if (!res_) timed("cancellation", [&] { res_ = build_morse_resolution(s_, gb_, fcfg_, window_, cancel_options()); });
    return *res_;
  }

  const BettiTable& table(int characteristic) {
    auto it = tables_.find(characteristic);
    if (it != tables_.end()) return it->second;
    BettiTable t;
    timed("homology-" + field_name(characteristic), [&] { t = tor_ranks(s_, window_, Field{characteristic}); });
    return tables_.emplace(characteristic, std::move(t)).first->second;
  }

  const MorseAutomaton& automaton() {
    if (!automaton_) {
      AutomatonOptions o;
      o.state_budget = cfg_.state_budget;
      timed("automaton", [&] {
        if (gb_.degree() <= 2)
          automaton_ = build_quadratic_automaton(gb_, fcfg_, o);
        else
          automaton_ = build_degree_d_automaton(gb_, fcfg_, resolution().runs, o);
      });
    }
    return *automaton_;
  }

  // Survivor words of every multidegree in the window.
  std::set<Word> window_survivor_words() {
    std::set<Word> out;
    std::set<Multidegree> in_window(window_.begin(), window_.end());
    for (const auto& run : resolution().runs)
      if (in_window.count(run.lambda))
        for (auto& w : survivor_words(run)) out.insert(std::move(w));
    return out;
  }

  // Accepted words whose multidegree lies in the window.
  std::set<Word> window_accepted_words() {
    std::set<Multidegree> in_window(window_.begin(), window_.end());
    int longest = 0;
    for (const auto& lambda : window_)
      for (const auto& u : s_.factorizations(lambda)) longest = std::max(longest, u.total());
    std::set<Word> out;
    for (auto& w : accepted_words(automaton(), static_cast<std::size_t>(longest))) {
      Multidegree m = Multidegree::zero(s_.dimension());
      for (const auto& sym : w)
        for (int l : sym) m += s_.generator(static_cast<std::size_t>(l));
      if (in_window.count(m)) out.insert(std::move(w));
    }
    return out;
  }

  void timed(const std::string& stage, const std::function<void()>& f) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    auto t1 = std::chrono::steady_clock::now();
    timing_[stage] = std::chrono::duration<double, std::milli>(t1 - t0).count();
  }
  Json timing_json() const {
    Json j = Json::object();
    for (const auto& [k, v] : timing_) j[k] = v;
    return j;
  }
  const std::string& gb_source() const { return gb_source_; }

 private:
  const InputDocument& doc_;
  const RunConfig& cfg_;
  Semigroup s_;
  FacetOrderConfig fcfg_;
  GroebnerBasis gb_;
  std::string gb_source_;
  std::vector<Multidegree> window_;
  std::optional<MorseResolution> res_;
  std::map<int, BettiTable> tables_;
  std::optional<MorseAutomaton> automaton_;
  std::map<std::string, double> timing_;
};

Json gb_json(Pipeline& p) {
  Json j;
  j["source"] = p.gb_source();
  j["order"] = order_json(p.gb().order);
  j["degree"] = p.gb().degree();
  j["bound_degree"] = p.gb().bound_degree();
  Json elements = Json::array();
  for (const auto& b : p.gb().elements) {
    Json e;
    e["plus"] = vec_json(b.plus);
    e["minus"] = vec_json(b.minus);
    elements.push_back(e);
  }
  j["elements"] = elements;
  j["verified"] = true;
  return j;
}

Json interval_report(Pipeline& p) {
  Json out = Json::array();
  for (const auto& lambda : p.targets()) {
    auto ivl = p.s().interval(Multidegree::zero(p.s().dimension()), lambda);
    Json j;
    j["lambda"] = vec_json(lambda);
    j["degree"] = p.s().degree(lambda);
    Json elements = Json::array();
    for (const auto& e : ivl.elements) elements.push_back(vec_json(e));
    j["elements"] = elements;
    j["covers"] = ivl.covers.size();
    auto crossing = check_crossing_condition(p.s(), ivl, p.fcfg());
    j["crossing_condition"] = crossing.holds;
    if (!crossing.holds) j["crossing_witness"] = crossing.witness;
    auto least = is_least_content_increasing(p.s(), ivl, p.fcfg());
    j["least_content_increasing"] = least.holds;
    out.push_back(j);
  }
  return out;
}

Json chains_report(Pipeline& p) {
  Json out = Json::array();
  for (const auto& lambda : p.targets()) {
    auto ivl = p.s().interval(Multidegree::zero(p.s().dimension()), lambda);
    Json j;
    j["lambda"] = vec_json(lambda);
    Json facets = Json::array();
    for (const auto& f : saturated_chains(p.s(), ivl, p.fcfg())) facets.push_back(f.labels);
    j["facets"] = facets;
    out.push_back(j);
  }
  return out;
}

// Brute-force systems from maximal overlaps against the Groebner
// characterization, facet by facet.
void compare_characterizations(const MorseComplex& mc, const GroebnerBasis& gb, Check& check, const Multidegree& lambda) {
  for (std::size_t f = 0; f < mc.facets.size(); ++f) {
    std::vector<std::vector<int>> earlier(mc.facet_interior.begin(), mc.facet_interior.begin() + static_cast<long>(f));
    auto direct = direct_interval_system(mc.facet_interior[f], earlier, mc.facets[f], mc.cfg);
    auto msi = msi_characterization(gb, mc.cfg, mc.facets[f]);
    auto key = [](const std::vector<RankInterval>& v) {
      std::set<std::pair<int, int>> k;
      for (const auto& r : v) k.insert({r.lo, r.hi});
      return k;
    };
    check.expect(key(direct) == key(msi), "facet " + std::to_string(f) + " of " + lambda.str());
  }
}

Json morse_report(Pipeline& p) {
  Json out = Json::array();
  for (const auto& lambda : p.targets()) {
    auto ivl = p.s().interval(Multidegree::zero(p.s().dimension()), lambda);
    auto mc = build_face_matching(p.s(), ivl, p.fcfg());
    Json j;
    j["lambda"] = vec_json(lambda);
    j["faces"] = mc.faces.size();
    j["facets"] = mc.facets.size();
    j["acyclic"] = verify_acyclic(mc);
    auto m = morse_numbers(mc);
    j["morse_numbers_reduced"] = longs_json(m);
    j["morse_numbers"] = longs_json(unreduced_morse_numbers(m, ivl.elements.size() == 2));
    j["reduced_euler_characteristic"] = reduced_euler_characteristic(mc);
    Json cells = Json::array();
    for (const auto& c : mc.critical) {
      Json cj;
      cj["facet"] = c.facet;
      cj["labels"] = mc.facets[static_cast<std::size_t>(c.facet)].labels;
      cj["ranks"] = c.ranks;
      cj["dimension"] = c.dimension;
      Json systems = Json::array();
      for (const auto& r : mc.systems[static_cast<std::size_t>(c.facet)].i_intervals) systems.push_back(interval_json(r));
      cj["i_intervals"] = systems;
      Json js = Json::array();
      for (const auto& r : mc.systems[static_cast<std::size_t>(c.facet)].j_intervals) js.push_back(interval_json(r));
      cj["j_intervals"] = js;
      cells.push_back(cj);
    }
    j["critical_cells"] = cells;
    Check equivalence("msi_equals_direct");
    compare_characterizations(mc, p.gb(), equivalence, lambda);
    j["characterization_check"] = equivalence.json();
    out.push_back(j);
  }
  return out;
}

Json run_json(const IntervalRun& run, bool with_boundary) {
  const auto& mc = *run.complex;
  Json j;
  j["lambda"] = vec_json(run.lambda);
  j["degree"] = run.degree;
  j["initial_morse_reduced"] = longs_json(run.initial_morse);
  j["final_morse_reduced"] = longs_json(run.final_morse);
  j["final_morse"] = longs_json(unreduced_morse_numbers(run.final_morse, mc.ivl.elements.size() == 2));
  Json survivors = Json::array();
  for (int f : run.result.survivors) {
    Json s;
    s["dimension"] = mc.dimension_of(f);
    s["word"] = word_json(cell_word(mc, f));
    survivors.push_back(s);
  }
  j["survivors"] = survivors;
  j["guided_pairs"] = run.result.guided_pairs;
  j["generic_pairs"] = run.result.generic_pairs;
  Json ledger = Json::array();
  for (const auto& e : run.result.ledger) {
    Json le;
    le["upper"] = word_json(cell_word(mc, e.upper));
    le["upper_dimension"] = mc.dimension_of(e.upper);
    le["lower"] = word_json(cell_word(mc, e.lower));
    le["rule"] = e.rule;
    le["certificate"] = e.certificate;
    ledger.push_back(le);
  }
  j["ledger"] = ledger;
  j["discrepancies"] = run.result.discrepancies;
  if (with_boundary) {
    Json edges = Json::array();
    for (const auto& e : morse_boundary(mc, run.result)) {
      Json ej;
      ej["upper"] = word_json(cell_word(mc, e.upper));
      ej["lower"] = word_json(cell_word(mc, e.lower));
      ej["paths"] = e.paths.count;
      ej["weight"] = e.paths.weight;
      edges.push_back(ej);
    }
    j["morse_boundary"] = edges;
  }
  return j;
}

Json resolution_json(const MorseResolution& res) {
  Json j;
  j["cells"] = res.cells.size();
  j["equal_multidegree_incidences"] = res.equal_multidegree_incidences;
  j["equal_multidegree_paths"] = res.equal_multidegree_paths;
  j["square_violations"] = res.square_violations;
  Json counts = Json::array();
  for (const auto& [key, n] : res.cell_counts) {
    Json c;
    c["lambda"] = vec_json(key.first);
    c["index"] = key.second;
    c["cells"] = n;
    counts.push_back(c);
  }
  j["cell_counts"] = counts;
  return j;
}

Json cancel_report(Pipeline& p) {
  const auto& res = p.resolution();
  std::set<Multidegree> wanted;
  for (const auto& l : p.targets()) wanted.insert(l);
  Json runs = Json::array();
  for (const auto& run : res.runs)
    if (wanted.count(run.lambda)) runs.push_back(run_json(run, true));
  Json j;
  j["intervals"] = runs;
  j["resolution"] = resolution_json(res);
  return j;
}

Json betti_table_json(const BettiTable& t) {
  Json j;
  j["field"] = t.field.name();
  Json entries = Json::array();
  for (const auto& [key, r] : t.entries) {
    Json e;
    e["lambda"] = vec_json(key.first);
    e["index"] = key.second;
    e["rank"] = r;
    entries.push_back(e);
  }
  j["entries"] = entries;
  Json totals = Json::object();
  for (const auto& [i, r] : t.totals()) totals[std::to_string(i)] = r;
  j["totals"] = totals;
  Json reduced = Json::array();
  for (const auto& [lambda, b] : t.reduced) {
    Json r;
    r["lambda"] = vec_json(lambda);
    r["reduced_betti"] = longs_json(b);
    reduced.push_back(r);
  }
  j["reduced"] = reduced;
  return j;
}

std::string betti_tsv(Pipeline& p, const std::vector<int>& fields) {
  std::ostringstream out;
  for (int ch : fields) {
    const auto& t = p.table(ch);
    int top = 0;
    for (const auto& [key, r] : t.entries) top = std::max(top, key.second);
    out << "# field " << t.field.name() << "\n";
    out << "lambda\tdegree";
    for (int i = 0; i <= top; ++i) out << "\t" << i;
    out << "\n";
    std::set<Multidegree> lambdas;
    for (const auto& [key, r] : t.entries) lambdas.insert(key.first);
    for (const auto& lambda : p.window()) {
      if (!lambdas.count(lambda) && !lambda.is_zero() && !t.reduced.count(lambda)) continue;
      out << lambda.str() << "\t" << p.s().degree(lambda);
      for (int i = 0; i <= top; ++i) out << "\t" << t.rank(lambda, i);
      out << "\n";
    }
  }
  return out.str();
}

Json automaton_json(const MorseAutomaton& a) {
  Json j;
  j["kind"] = a.kind;
  Json alphabet = Json::array();
  for (const auto& s : a.alphabet) alphabet.push_back(s.size() == 1 ? Json(s[0]) : Json(s));
  j["alphabet"] = alphabet;
  j["initial"] = a.initial;
  Json states = Json::array();
  for (std::size_t s = 0; s < a.states.size(); ++s) {
    Json sj;
    sj["id"] = s;
    sj["final"] = a.states[s].final;
    sj["data"] = a.states[s].description;
    Json tr = Json::array();
    for (const auto& [sym, t] : a.transitions[s]) tr.push_back(Json::array({sym, t}));
    sj["transitions"] = tr;
    states.push_back(sj);
  }
  j["states"] = states;
  j["transition_count"] = a.transition_count();
  j["notes"] = a.notes;
  return j;
}

Json series_json(Pipeline& p, int terms) {
  const auto& a = p.automaton();
  auto series = rational_series(a);
  auto counts = word_counts(a, static_cast<std::size_t>(terms));
  auto coeffs = series.coefficients(static_cast<std::size_t>(terms) + 1);
  Json j;
  j["series"] = series.str();
  j["numerator"] = mpz_vector_json(series.numerator);
  j["denominator"] = mpz_vector_json(series.denominator);
  Json table = Json::array();
  bool agree = true;
  for (int l = 0; l <= terms; ++l) {
    Json row;
    row["length"] = l;
    row["coefficient"] = coeffs[static_cast<std::size_t>(l)].get_str();
    row["word_count"] = counts[static_cast<std::size_t>(l)].get_str();
    agree = agree && coeffs[static_cast<std::size_t>(l)] == counts[static_cast<std::size_t>(l)];
    table.push_back(row);
  }
  j["expansion"] = table;
  j["expansion_matches_counts"] = agree;
  return j;
}

Json vanishing_json(const VanishingReport& r) {
  Json j;
  j["field"] = r.field.name();
  j["d"] = r.d;
  j["checks"] = r.checks;
  auto entries = [](const std::vector<VanishingCheck>& v) {
    Json a = Json::array();
    for (const auto& c : v) {
      Json e;
      e["lambda"] = vec_json(c.lambda);
      e["degree"] = c.degree;
      e["dimension"] = c.homological_dim;
      e["reduced_betti"] = c.value;
      a.push_back(e);
    }
    return a;
  };
  j["violations"] = entries(r.violations);
  j["sharp_witnesses"] = entries(r.sharp_witnesses);
  return j;
}

std::map<Multidegree, std::vector<int>> survivor_dimensions(const MorseResolution& res) {
  std::map<Multidegree, std::vector<int>> out;
  for (const auto& run : res.runs)
    if (!run.lambda.is_zero()) out[run.lambda] = run.survivor_dimensions;
  return out;
}

Json verify_bounds_report(Pipeline& p, const std::vector<int>& fields) {
  Json j;
  Json reports = Json::array();
  for (int ch : fields) reports.push_back(vanishing_json(verify_vanishing(p.s(), p.gb().bound_degree(), p.table(ch))));
  j["vanishing"] = reports;
  auto cm = cm_koszul_witness(p.s(), p.table(fields.front()), survivor_dimensions(p.resolution()));
  Json c;
  c["homology_top_concentrated"] = cm.homology_top_concentrated;
  c["morse_witness"] = cm.morse_witness;
  c["koszul_checked"] = cm.koszul_checked;
  c["koszul"] = cm.koszul;
  c["notes"] = cm.notes;
  j["cm_koszul"] = c;
  return j;
}

// Cross-module consistency suite.
Json consistency_suite(Pipeline& p, const RunConfig& cfg) {
  std::vector<Check> checks;
  const auto& s = p.s();
  const auto& res = p.resolution();
  const bool quadratic = p.gb().degree() <= 2;
  std::set<Multidegree> in_window(p.window().begin(), p.window().end());

  Check crossing("crossing_condition"), equivalence("msi_equals_direct"), acyclic("acyclic_matchings");
  Check inequalities("morse_inequalities"), euler("euler_characteristic"), bound("survivor_dimension_bound");
  Check discrepancy("cancellation_discrepancies");
  for (const auto& run : res.runs) {
    if (run.lambda.is_zero() || !in_window.count(run.lambda)) continue;
    const auto& mc = *run.complex;
    crossing.expect(check_crossing_condition(s, mc.ivl, p.fcfg()).holds, run.lambda.str());
    compare_characterizations(mc, p.gb(), equivalence, run.lambda);
    acyclic.expect(verify_acyclic(mc) && verify_acyclic(mc.boundary, run.result.partner), run.lambda.str());
    auto complex = order_complex(s, Multidegree::zero(s.dimension()), run.lambda);
    long chi = euler_characteristic_from_faces(complex);
    for (const auto* m : {&run.initial_morse, &run.final_morse}) {
      long alt = 0;
      for (std::size_t k = 0; k < m->size(); ++k) alt += (k % 2 == 1 ? 1 : -1) * (*m)[k];
      euler.expect(alt == chi, run.lambda.str());
    }
    for (int ch : cfg.fields) {
      const auto& b = p.table(ch).reduced.at(run.lambda);
      for (std::size_t k = 0; k < b.size(); ++k) {
        long m = k < run.final_morse.size() ? run.final_morse[k] : 0;
        inequalities.expect(m >= b[k], run.lambda.str() + " dim " + std::to_string(static_cast<int>(k) - 1));
      }
    }
    const int lower = survivor_dimension_bound(run.degree, p.gb().bound_degree());
    for (int dim : run.survivor_dimensions) {
      bound.expect(dim >= lower, run.lambda.str() + " survivor dim " + std::to_string(dim));
      if (quadratic && s.is_standard_graded())
        bound.expect(dim == run.degree - 2, run.lambda.str() + " survivor off the diagonal");
    }
    discrepancy.expect(run.result.discrepancies.empty(), run.lambda.str());
  }
  for (auto* c : {&crossing, &equivalence, &acyclic, &inequalities, &euler, &bound, &discrepancy}) checks.push_back(*c);

  Check vanishing("vanishing_bound");
  for (int ch : cfg.fields) {
    auto r = verify_vanishing(s, p.gb().bound_degree(), p.table(ch));
    vanishing.expect(r.violations.empty(), field_name(ch) + ": " + std::to_string(r.violations.size()) + " violations");
  }
  checks.push_back(vanishing);

  Check minimal("resolution_minimality"), square("resolution_square_zero"), tight(quadratic ? "morse_equals_betti" : "morse_bounds_betti");
  square.expect(res.square_violations == 0, std::to_string(res.square_violations) + " nonzero entries of d o d");
  if (quadratic) minimal.expect(res.equal_multidegree_incidences == 0, "equal-multidegree incidences");
  const auto& table = p.table(cfg.fields.front());
  for (const auto& lambda : p.window()) {
    std::set<int> indices;
    for (const auto& [key, n] : res.cell_counts)
      if (key.first == lambda) indices.insert(key.second);
    for (const auto& [key, r] : table.entries)
      if (key.first == lambda) indices.insert(key.second);
    for (int i : indices) {
      auto it = res.cell_counts.find({lambda, i});
      long m = it == res.cell_counts.end() ? 0 : it->second;
      long b = table.rank(lambda, i);
      tight.expect(quadratic ? m == b : m >= b, lambda.str() + " Tor_" + std::to_string(i));
    }
  }
  checks.push_back(square);
  if (quadratic) checks.push_back(minimal);
  checks.push_back(tight);

  Check language("automaton_language");
  auto survivors = p.window_survivor_words();
  auto accepted = p.window_accepted_words();
  for (const auto& w : survivors) language.expect(accepted.count(w) > 0, "survivor not accepted: " + word_str(w));
  for (const auto& w : accepted) language.expect(survivors.count(w) > 0, "accepted non-survivor: " + word_str(w));
  checks.push_back(language);

  Check series("series_expansion");
  const auto& a = p.automaton();
  auto rs = rational_series(a);
  auto counts = word_counts(a, static_cast<std::size_t>(cfg.series_terms));
  auto coeffs = rs.coefficients(static_cast<std::size_t>(cfg.series_terms) + 1);
  for (int l = 0; l <= cfg.series_terms; ++l)
    series.expect(coeffs[static_cast<std::size_t>(l)] == counts[static_cast<std::size_t>(l)], "length " + std::to_string(l));
  checks.push_back(series);

  Check series_tor("series_bounds_tor");
  auto totals = table.totals();
  for (const auto& [i, r] : totals)
    if (i <= cfg.degree_window && static_cast<std::size_t>(i) < counts.size())
      series_tor.expect(counts[static_cast<std::size_t>(i)] >= r, "t^" + std::to_string(i));
  checks.push_back(series_tor);

  if (quadratic) {
    Check oracle("lex_oracle_language");
    AutomatonOptions o;
    o.state_budget = cfg.state_budget;
    auto lex = build_lex_normal_form_automaton(p.gb(), p.fcfg(), o);
    auto lex_counts = word_counts(lex, static_cast<std::size_t>(cfg.series_terms));
    for (int l = 0; l <= cfg.series_terms; ++l)
      oracle.expect(lex_counts[static_cast<std::size_t>(l)] == counts[static_cast<std::size_t>(l)], "length " + std::to_string(l));
    for (const auto& w : accepted_words(a, std::min<std::size_t>(static_cast<std::size_t>(cfg.series_terms), 6)))
      oracle.expect(lex.accepts(w), "not a lex normal form: " + word_str(w));
    checks.push_back(oracle);

    Check classes("jprime_bijection");
    for (const auto& run : res.runs) {
      if (!in_window.count(run.lambda) || run.lambda.is_zero()) continue;
      std::map<Monomial, std::vector<std::vector<int>>> by_content;
      for (const auto& w : survivor_words(run)) {
        std::vector<int> letters;
        Monomial c = Monomial::zero(s.rank());
        for (const auto& sym : w)
          for (int l : sym) {
            letters.push_back(l);
            c[static_cast<std::size_t>(l)] += 1;
          }
        by_content[c].push_back(letters);
      }
      for (const auto& u : s.factorizations(run.lambda)) {
        auto cls = jprime_classes(p.gb(), p.fcfg(), u);
        const auto& surv = by_content[u];
        classes.expect(cls.size() == surv.size(), run.lambda.str() + " content " + u.str());
        std::set<std::vector<int>> reps;
        for (const auto& c : cls) reps.insert(c.representative);
        std::set<std::vector<int>> got(surv.begin(), surv.end());
        classes.expect(reps == got, run.lambda.str() + " representatives of " + u.str());
      }
    }
    checks.push_back(classes);
  }

  Check axioms("term_order_axioms");
  std::mt19937_64 rng(cfg.seed);
  std::uniform_int_distribution<int> exp_dist(0, 3);
  const std::size_t n = s.rank();
  auto random_monomial = [&] {
    std::vector<int> e(n);
    for (auto& x : e) x = exp_dist(rng);
    return Monomial(e);
  };
  for (int trial = 0; trial < 200; ++trial) {
    auto m1 = random_monomial(), m2 = random_monomial(), m3 = random_monomial();
    axioms.expect(!p.gb().order.less(m1, Monomial::zero(n)), "1 is not minimal");
    int c = p.gb().order.compare(m1, m2);
    axioms.expect(p.gb().order.compare(m1 + m3, m2 + m3) == c, "not multiplicative");
  }
  checks.push_back(axioms);

  Json j = Json::array();
  for (const auto& c : checks) j.push_back(c.json());
  return j;
}

}  // namespace

InputDocument parse_input(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::parse_error, "invalid JSON at " + line_column(text, e.byte > 0 ? e.byte - 1 : 0));
  }
  if (!j.is_object()) parse_fail("$", "expected an object");
  std::string name = j.contains("name") && j["name"].is_string() ? j["name"].get<std::string>() : "";
  const auto& dim_json = require(j, "dimension", "$");
  int e = as_int(dim_json, "$.dimension");
  if (e < 1) parse_fail("$.dimension", "must be at least 1");
  const auto& gens = require(j, "generators", "$");
  if (!gens.is_array()) parse_fail("$.generators", "expected an array");
  std::vector<Multidegree> generators;
  for (std::size_t i = 0; i < gens.size(); ++i)
    generators.emplace_back(as_exponents(gens[i], "$.generators[" + std::to_string(i) + "]", static_cast<std::size_t>(e)));
  Semigroup s = [&] {
    try {
      return Semigroup(static_cast<std::size_t>(e), generators);
    } catch (const Error& err) {
      throw Error(ErrorCode::invalid_input, std::string("$.generators: ") + err.what());
    }
  }();
  InputDocument doc{name, s, std::nullopt, std::nullopt, {}};
  const std::size_t n = generators.size();
  if (j.contains("term_order")) doc.term_order = parse_term_order(j["term_order"], n, "$.term_order");
  if (j.contains("targets")) {
    const auto& t = j["targets"];
    if (!t.is_array()) parse_fail("$.targets", "expected an array");
    for (std::size_t i = 0; i < t.size(); ++i) {
      std::string path = "$.targets[" + std::to_string(i) + "]";
      Multidegree lambda(as_exponents(t[i], path, static_cast<std::size_t>(e)));
      if (!s.contains(lambda)) throw Error(ErrorCode::invalid_input, path + ": not an element of the semigroup");
      doc.targets.push_back(lambda);
    }
  }
  if (j.contains("groebner_basis")) {
    const auto& g = j["groebner_basis"];
    if (!g.is_array()) parse_fail("$.groebner_basis", "expected an array");
    GroebnerBasis gb;
    gb.order = doc.term_order ? *doc.term_order : TermOrder::default_lex(n);
    for (std::size_t i = 0; i < g.size(); ++i) {
      std::string path = "$.groebner_basis[" + std::to_string(i) + "]";
      if (!g[i].is_object()) parse_fail(path, "expected an object with plus and minus");
      Binomial b{Monomial(as_exponents(require(g[i], "plus", path), path + ".plus", n)),
                 Monomial(as_exponents(require(g[i], "minus", path), path + ".minus", n))};
      gb.elements.push_back(b);
    }
    // Every S-pair lcm and every leading term lies below twice the degree.
    int reach = std::max(4, 2 * gb.degree());
    std::vector<Multidegree> check_window = s.elements_up_to_degree(reach);
    try {
      verify_groebner_basis(s, gb, check_window);
    } catch (const Error& err) {
      throw Error(ErrorCode::invalid_basis, std::string("$.groebner_basis: ") + err.what());
    }
    doc.groebner_basis = gb;
  }
  return doc;
}

void RunConfig::validate() const {
  if (degree_window < 1) throw Error(ErrorCode::invalid_input, "degree window must be at least 1");
  if (path_cap == 0) throw Error(ErrorCode::invalid_input, "path cap must be positive");
  if (state_budget == 0) throw Error(ErrorCode::invalid_input, "state budget must be positive");
  if (series_terms < 1) throw Error(ErrorCode::invalid_input, "series terms must be positive");
  if (fields.empty()) throw Error(ErrorCode::invalid_input, "at least one field is required");
  for (int f : fields) {
    if (f < 0) throw Error(ErrorCode::invalid_input, "field characteristic must be 0 or a prime");
    if (f == 0) continue;
    bool prime = f >= 2;
    for (int q = 2; q * q <= f && prime; ++q)
      if (f % q == 0) prime = false;
    if (!prime || f > 46337) throw Error(ErrorCode::invalid_input, "field characteristic " + std::to_string(f) + " is not a usable prime");
  }
  if (format != "json" && format != "tsv") throw Error(ErrorCode::invalid_input, "format must be json or tsv");
  const auto& names = command_names();
  if (std::find(names.begin(), names.end(), command) == names.end())
    throw Error(ErrorCode::unknown_command, "unknown command " + command);
}

RunConfig parse_run_config(const std::string& json_text) {
  RunConfig cfg;
  if (json_text.empty()) return cfg;
  Json j;
  try {
    j = Json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::parse_error, "invalid config JSON at " + line_column(json_text, e.byte > 0 ? e.byte - 1 : 0));
  }
  if (!j.is_object()) parse_fail("config", "expected an object");
  try {
    if (j.contains("input")) cfg.input_path = j["input"].get<std::string>();
    if (j.contains("command")) cfg.command = j["command"].get<std::string>();
    if (j.contains("term_order")) cfg.term_order = j["term_order"].get<std::string>();
    if (j.contains("degree_window")) cfg.degree_window = j["degree_window"].get<int>();
    if (j.contains("fields")) cfg.fields = j["fields"].get<std::vector<int>>();
    if (j.contains("path_cap")) cfg.path_cap = j["path_cap"].get<std::size_t>();
    if (j.contains("state_budget")) cfg.state_budget = j["state_budget"].get<std::size_t>();
    if (j.contains("format")) cfg.format = j["format"].get<std::string>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("series_terms")) cfg.series_terms = j["series_terms"].get<int>();
    if (j.contains("timing")) cfg.timing = j["timing"].get<bool>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::parse_error, std::string("config: ") + e.what());
  }
  cfg.validate();
  return cfg;
}

std::string run_config_json(const RunConfig& cfg) {
  Json j;
  j["input"] = cfg.input_path;
  j["command"] = cfg.command;
  if (cfg.term_order) j["term_order"] = *cfg.term_order;
  j["degree_window"] = cfg.degree_window;
  j["fields"] = cfg.fields;
  j["path_cap"] = cfg.path_cap;
  j["state_budget"] = cfg.state_budget;
  j["format"] = cfg.format;
  j["seed"] = cfg.seed;
  j["series_terms"] = cfg.series_terms;
  j["timing"] = cfg.timing;
  return j.dump();
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"gb",    "interval",  "chains", "morse",         "cancel", "betti",
                                              "automaton", "series", "verify-bounds", "full"};
  return names;
}

std::string run_command(const InputDocument& doc, const RunConfig& cfg) {
  cfg.validate();
  Pipeline p(doc, cfg);
  const std::string& cmd = cfg.command;
  if (cfg.format == "tsv") {
    if (cmd != "betti") throw Error(ErrorCode::invalid_input, "tsv output is only available for betti");
    return betti_tsv(p, cfg.fields);
  }
  Json report;
  report["command"] = cmd;
  report["config"] = Json::parse(run_config_json(cfg));
  report["versions"] = {{"morsegraded", version_string()}, {"gmp", gmp_version}};
  Json input;
  input["name"] = doc.name;
  input["dimension"] = p.s().dimension();
  Json gens = Json::array();
  for (const auto& g : p.s().generators()) gens.push_back(vec_json(g));
  input["generators"] = gens;
  input["standard_graded"] = p.s().is_standard_graded();
  input["window_size"] = p.window().size();
  report["input"] = input;
  report["groebner_basis"] = gb_json(p);
  if (cmd == "interval") report["intervals"] = interval_report(p);
  if (cmd == "chains") report["chains"] = chains_report(p);
  if (cmd == "morse") report["morse"] = morse_report(p);
  if (cmd == "cancel") report["cancellation"] = cancel_report(p);
  if (cmd == "betti" || cmd == "full") {
    Json tables = Json::array();
    for (int ch : cfg.fields) tables.push_back(betti_table_json(p.table(ch)));
    report["betti"] = tables;
  }
  if (cmd == "automaton") report["automaton"] = automaton_json(p.automaton());
  if (cmd == "series" || cmd == "full") report["series"] = series_json(p, cfg.series_terms);
  if (cmd == "verify-bounds" || cmd == "full") report["bounds"] = verify_bounds_report(p, cfg.fields);
  if (cmd == "full") {
    Json runs = Json::array();
    std::set<Multidegree> wanted;
    for (const auto& l : p.targets()) wanted.insert(l);
    for (const auto& run : p.resolution().runs)
      if (wanted.count(run.lambda)) runs.push_back(run_json(run, false));
    report["cancellation"] = {{"intervals", runs}, {"resolution", resolution_json(p.resolution())}};
    Json automaton;
    automaton["kind"] = p.automaton().kind;
    automaton["states"] = p.automaton().states.size();
    automaton["transitions"] = p.automaton().transition_count();
    automaton["notes"] = p.automaton().notes;
    report["automaton"] = automaton;
    auto suite = consistency_suite(p, cfg);
    bool all = true;
    for (const auto& c : suite) all = all && c["pass"].get<bool>();
    report["consistency"] = {{"pass", all}, {"checks", suite}};
  }
  if (cfg.timing) report["timing_ms"] = p.timing_json();
  return report.dump(2) + "\n";
}

}  // namespace mg
