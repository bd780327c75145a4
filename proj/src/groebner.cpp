#include "morsegraded/groebner.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <unordered_set>

#include "morsegraded/error.hpp"

namespace mg {

const char* order_kind_name(OrderKind kind) {
  switch (kind) {
    case OrderKind::lex: return "lex";
    case OrderKind::graded_lex: return "graded-lex";
    case OrderKind::graded_revlex: return "graded-revlex";
    case OrderKind::weight_matrix: return "weight-matrix";
  }
  return "lex";
}

OrderKind parse_order_kind(const std::string& name) {
  if (name == "lex") return OrderKind::lex;
  if (name == "graded-lex" || name == "grlex") return OrderKind::graded_lex;
  if (name == "graded-revlex" || name == "grevlex") return OrderKind::graded_revlex;
  if (name == "weight-matrix" || name == "weight") return OrderKind::weight_matrix;
  throw Error(ErrorCode::parse_error, "unknown term order kind '" + name + "'");
}

TermOrder::TermOrder(OrderKind kind, std::vector<int> priority, std::vector<std::vector<int>> weights)
    : kind_(kind), priority_(std::move(priority)), weights_(std::move(weights)) {
  const std::size_t n = priority_.size();
  std::vector<bool> seen(n, false);
  for (int p : priority_) {
    if (p < 0 || static_cast<std::size_t>(p) >= n || seen[static_cast<std::size_t>(p)])
      throw Error(ErrorCode::invalid_input, "term order priority is not a permutation of 0..n-1");
    seen[static_cast<std::size_t>(p)] = true;
  }
  if (kind_ == OrderKind::weight_matrix) {
    if (weights_.empty()) throw Error(ErrorCode::invalid_input, "weight-matrix order needs at least one row");
    for (const auto& row : weights_)
      if (row.size() != n) throw Error(ErrorCode::invalid_input, "weight row length differs from variable count");
    for (std::size_t c = 0; c < n; ++c) {
      for (const auto& row : weights_) {
        if (row[c] == 0) continue;
        if (row[c] < 0)
          throw Error(ErrorCode::invalid_input,
                      "weight matrix is not a term order: z" + std::to_string(c) + " would precede 1");
        break;
      }
    }
  } else if (!weights_.empty()) {
    throw Error(ErrorCode::invalid_input, "weight rows given for a non-weight order");
  }
}

TermOrder TermOrder::default_lex(std::size_t nvars) {
  std::vector<int> p;
  for (std::size_t i = nvars; i-- > 0;) p.push_back(static_cast<int>(i));
  return TermOrder(OrderKind::lex, p);
}

int TermOrder::compare_lex(const Monomial& a, const Monomial& b) const {
  for (int v : priority_) {
    int x = a[static_cast<std::size_t>(v)], y = b[static_cast<std::size_t>(v)];
    if (x != y) return x < y ? -1 : 1;
  }
  return 0;
}

int TermOrder::compare(const Monomial& a, const Monomial& b) const {
  switch (kind_) {
    case OrderKind::lex:
      return compare_lex(a, b);
    case OrderKind::graded_lex: {
      int da = a.total(), db = b.total();
      if (da != db) return da < db ? -1 : 1;
      return compare_lex(a, b);
    }
    case OrderKind::graded_revlex: {
      int da = a.total(), db = b.total();
      if (da != db) return da < db ? -1 : 1;
      for (std::size_t k = priority_.size(); k-- > 0;) {
        std::size_t v = static_cast<std::size_t>(priority_[k]);
        if (a[v] != b[v]) return a[v] < b[v] ? 1 : -1;
      }
      return 0;
    }
    case OrderKind::weight_matrix: {
      for (const auto& row : weights_) {
        long wa = 0, wb = 0;
        for (std::size_t i = 0; i < row.size(); ++i) {
          wa += static_cast<long>(row[i]) * a[i];
          wb += static_cast<long>(row[i]) * b[i];
        }
        if (wa != wb) return wa < wb ? -1 : 1;
      }
      return compare_lex(a, b);
    }
  }
  return 0;
}

std::vector<int> TermOrder::label_ranks() const {
  const std::size_t n = priority_.size();
  std::vector<int> vars(n);
  for (std::size_t i = 0; i < n; ++i) vars[i] = static_cast<int>(i);
  std::sort(vars.begin(), vars.end(), [&](int a, int b) {
    return less(Monomial::unit(n, static_cast<std::size_t>(a)), Monomial::unit(n, static_cast<std::size_t>(b)));
  });
  std::vector<int> rank(n);
  for (std::size_t k = 0; k < n; ++k) rank[static_cast<std::size_t>(vars[k])] = static_cast<int>(k);
  return rank;
}

int GroebnerBasis::degree() const {
  int d = 0;
  for (const Binomial& b : elements) d = std::max(d, b.plus.total());
  return d;
}

int GroebnerBasis::bound_degree() const { return std::max(2, degree()); }

Binomial orient(const Binomial& b, const TermOrder& order) {
  if (order.less(b.plus, b.minus)) return {b.minus, b.plus};
  return b;
}

bool divides(const Monomial& a, const Monomial& b) { return a.dominated_by(b); }
Monomial monomial_gcd(const Monomial& a, const Monomial& b) { return a.min_with(b); }
Monomial monomial_lcm(const Monomial& a, const Monomial& b) { return a.max_with(b); }

Monomial normal_form(const Monomial& m, const std::vector<Binomial>& elements) {
  Monomial cur = m;
  for (;;) {
    bool changed = false;
    for (const Binomial& g : elements) {
      if (divides(g.plus, cur)) {
        cur = cur - g.plus + g.minus;
        changed = true;
        break;
      }
    }
    if (!changed) return cur;
  }
}

namespace {

std::optional<Binomial> reduce_pair(const Monomial& a, const Monomial& b, const std::vector<Binomial>& elements,
                                    const TermOrder& order, bool saturate) {
  Monomial x = normal_form(a, elements);
  Monomial y = normal_form(b, elements);
  if (x == y) return std::nullopt;
  if (saturate) {
    Monomial g = monomial_gcd(x, y);
    x = x - g;
    y = y - g;
  }
  return orient({x, y}, order);
}

void interreduce(std::vector<Binomial>& g, const TermOrder& order, bool saturate) {
  std::vector<Binomial> minimal;
  for (std::size_t i = 0; i < g.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < g.size() && !redundant; ++j) {
      if (i == j) continue;
      if (divides(g[j].plus, g[i].plus) && (g[j].plus != g[i].plus || j < i)) redundant = true;
    }
    if (!redundant) minimal.push_back(g[i]);
  }
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<Binomial> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    Monomial tail = normal_form(minimal[i].minus, others);
    minimal[i].minus = tail;
    if (saturate) {
      Monomial c = monomial_gcd(minimal[i].plus, minimal[i].minus);
      minimal[i].plus = minimal[i].plus - c;
      minimal[i].minus = minimal[i].minus - c;
    }
  }
  std::sort(minimal.begin(), minimal.end(),
            [&](const Binomial& a, const Binomial& b) { return order.less(a.plus, b.plus); });
  g = std::move(minimal);
}

}  // namespace

GroebnerBasis buchberger(const std::vector<Binomial>& gens, const TermOrder& order,
                         const BuchbergerOptions& options) {
  std::vector<Binomial> g;
  for (const Binomial& b : gens) {
    if (b.plus.size() != order.nvars() || b.minus.size() != order.nvars())
      throw Error(ErrorCode::invalid_input, "binomial length differs from variable count");
    auto r = reduce_pair(b.plus, b.minus, g, order, options.saturate);
    if (r) g.push_back(*r);
  }
  std::deque<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t j = 0; j < g.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) pairs.emplace_back(i, j);
  while (!pairs.empty()) {
    auto [i, j] = pairs.front();
    pairs.pop_front();
    const Monomial& ui = g[i].plus;
    const Monomial& uj = g[j].plus;
    Monomial l = monomial_lcm(ui, uj);
    if (monomial_gcd(ui, uj).is_zero()) continue;
    if (options.admit && !options.admit(l)) continue;
    Monomial a = l - ui + g[i].minus;
    Monomial b = l - uj + g[j].minus;
    auto r = reduce_pair(a, b, g, order, options.saturate);
    if (!r) continue;
    if (r->plus.total() > options.degree_ceiling)
      throw Error(ErrorCode::degree_explosion,
                  "Buchberger produced a leading term of degree " + std::to_string(r->plus.total()) +
                      " above the ceiling " + std::to_string(options.degree_ceiling));
    g.push_back(*r);
    for (std::size_t k = 0; k + 1 < g.size(); ++k) pairs.emplace_back(k, g.size() - 1);
  }
  interreduce(g, order, options.saturate);
  return GroebnerBasis{order, std::move(g)};
}

std::optional<std::size_t> dividing_leading_term(const GroebnerBasis& gb, const Monomial& m) {
  for (std::size_t i = 0; i < gb.elements.size(); ++i)
    if (divides(gb.elements[i].plus, m)) return i;
  return std::nullopt;
}

bool in_initial_ideal(const GroebnerBasis& gb, const Monomial& m) {
  return dividing_leading_term(gb, m).has_value();
}

std::optional<std::string> check_s_pairs(const GroebnerBasis& gb) {
  const auto& g = gb.elements;
  for (std::size_t j = 0; j < g.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      Monomial l = monomial_lcm(g[i].plus, g[j].plus);
      Monomial a = normal_form(l - g[i].plus + g[i].minus, g);
      Monomial b = normal_form(l - g[j].plus + g[j].minus, g);
      if (a != b)
        return "S-pair of elements " + std::to_string(i) + " and " + std::to_string(j) +
               " does not reduce to zero";
    }
  }
  return std::nullopt;
}

namespace {

void monomials_up_to(std::size_t n, int cap, const std::function<void(const Monomial&)>& f) {
  Monomial cur = Monomial::zero(n);
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i == n) {
      f(cur);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      cur[i] = k;
      self(self, i + 1, left - k);
    }
    cur[i] = 0;
  };
  rec(rec, 0, cap);
}

}  // namespace

std::vector<Binomial> toric_ideal_basis(const Semigroup& s, int cap, const std::optional<TermOrder>& order) {
  if (cap < 2) throw Error(ErrorCode::invalid_input, "toric generator cap must be at least 2");
  TermOrder ord = order ? *order : TermOrder::default_lex(s.rank());
  std::map<Multidegree, std::vector<Monomial>> fibers;
  monomials_up_to(s.rank(), cap, [&](const Monomial& u) {
    if (!u.is_zero()) fibers[s.image(u)].push_back(u);
  });
  std::vector<Binomial> out;
  for (auto& [deg, mons] : fibers) {
    for (std::size_t j = 0; j < mons.size(); ++j)
      for (std::size_t i = 0; i < j; ++i)
        if (monomial_gcd(mons[i], mons[j]).is_zero()) out.push_back(orient({mons[i], mons[j]}, ord));
  }
  std::sort(out.begin(), out.end(), [&](const Binomial& a, const Binomial& b) {
    int c = ord.compare(a.plus, b.plus);
    if (c != 0) return c < 0;
    return ord.less(a.minus, b.minus);
  });
  return out;
}

std::vector<Multidegree> down_closure(const Semigroup& s, const std::vector<Multidegree>& window) {
  std::set<Multidegree> all;
  Multidegree zero = Multidegree::zero(s.dimension());
  for (const Multidegree& l : window) {
    if (all.count(l)) continue;
    IntervalData ivl = s.interval(zero, l);
    all.insert(ivl.elements.begin(), ivl.elements.end());
  }
  return {all.begin(), all.end()};
}

namespace {

void check_fibers(const Semigroup& s, const GroebnerBasis& gb, const std::vector<Multidegree>& multidegrees) {
  for (const Multidegree& g : multidegrees) {
    int standard = 0;
    for (const Monomial& u : s.factorizations(g))
      if (!in_initial_ideal(gb, u)) ++standard;
    if (standard != 1)
      throw Error(ErrorCode::invalid_basis, "multidegree " + g.str() + " has " + std::to_string(standard) +
                                                " standard monomials; the basis does not generate the toric ideal there");
  }
}

}  // namespace

GroebnerBasis toric_groebner_for_window(const Semigroup& s, const TermOrder& order,
                                        const std::vector<Multidegree>& window) {
  std::vector<Multidegree> closed = down_closure(s, window);
  std::unordered_set<Multidegree, VectorHash> inside(closed.begin(), closed.end());
  std::vector<Binomial> gens;
  for (const Multidegree& g : closed) {
    std::vector<Monomial> fiber = s.factorizations(g);
    for (std::size_t i = 1; i < fiber.size(); ++i)
      if (monomial_gcd(fiber[0], fiber[i]).is_zero()) gens.push_back(orient({fiber[0], fiber[i]}, order));
  }
  BuchbergerOptions opts;
  opts.saturate = true;
  opts.admit = [&](const Monomial& l) { return inside.count(s.image(l)) > 0; };
  opts.degree_ceiling = 1 << 20;
  GroebnerBasis gb = buchberger(gens, order, opts);
  check_fibers(s, gb, closed);
  return gb;
}

void verify_groebner_basis(const Semigroup& s, const GroebnerBasis& gb, const std::vector<Multidegree>& multidegrees) {
  for (std::size_t i = 0; i < gb.elements.size(); ++i) {
    const Binomial& b = gb.elements[i];
    if (b.plus.size() != s.rank() || b.minus.size() != s.rank())
      throw Error(ErrorCode::invalid_basis, "basis element " + std::to_string(i) + " has the wrong length");
    if (b.plus == b.minus) throw Error(ErrorCode::invalid_basis, "basis element " + std::to_string(i) + " is zero");
    if (s.image(b.plus) != s.image(b.minus))
      throw Error(ErrorCode::invalid_basis, "basis element " + std::to_string(i) + " is not homogeneous");
    if (!gb.order.less(b.minus, b.plus))
      throw Error(ErrorCode::invalid_basis,
                  "basis element " + std::to_string(i) + ": plus is not the leading term under the term order");
  }
  if (auto err = check_s_pairs(gb)) throw Error(ErrorCode::invalid_basis, *err);
  check_fibers(s, gb, multidegrees);
}

}  // namespace mg
