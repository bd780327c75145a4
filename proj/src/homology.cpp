#include "morsegraded/homology.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <mutex>
#include <numeric>
#include <set>
#include <stdexcept>
#include <unordered_map>

#include "morsegraded/error.hpp"
#include "morsegraded/parallel.hpp"

namespace mg {

std::size_t OrderComplex::face_count(int dim) const {
  auto k = static_cast<std::size_t>(dim + 1);
  return k < faces_by_dim.size() ? faces_by_dim[k].size() : 0;
}

std::vector<std::vector<int>> OrderComplex::facets() const {
  // A chain is maximal when no vertex can be inserted anywhere.
  std::set<std::vector<int>> non_maximal;
  for (std::size_t k = 1; k < faces_by_dim.size(); ++k)
    for (const auto& f : faces_by_dim[k])
      for (std::size_t drop = 0; drop < f.size(); ++drop) {
        auto g = f;
        g.erase(g.begin() + static_cast<long>(drop));
        non_maximal.insert(g);
      }
  std::vector<std::vector<int>> out;
  for (const auto& layer : faces_by_dim)
    for (const auto& f : layer)
      if (!non_maximal.count(f)) out.push_back(f);
  std::sort(out.begin(), out.end());
  return out;
}

OrderComplex order_complex(const Semigroup& s, const Multidegree& bottom, const Multidegree& top, int max_dim) {
  if (!s.leq(bottom, top)) throw Error(ErrorCode::not_comparable, "order_complex: bottom is not below top");
  // Elements of [bottom, top] reached by adding generators, filtered by leq.
  std::set<Multidegree> seen{bottom};
  std::vector<Multidegree> frontier{bottom};
  while (!frontier.empty()) {
    std::vector<Multidegree> next;
    for (const auto& v : frontier)
      for (const auto& g : s.generators()) {
        Multidegree w = v + g;
        if (!seen.count(w) && s.leq(w, top)) {
          seen.insert(w);
          next.push_back(w);
        }
      }
    frontier = std::move(next);
  }
  OrderComplex c;
  for (const auto& v : seen)
    if (v != bottom && v != top) c.vertices.push_back(v);
  std::sort(c.vertices.begin(), c.vertices.end(), [](const Multidegree& a, const Multidegree& b) {
    if (a.total() != b.total()) return a.total() < b.total();
    return a < b;
  });
  const int n = static_cast<int>(c.vertices.size());
  std::vector<std::vector<int>> above(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (s.leq(c.vertices[static_cast<std::size_t>(i)], c.vertices[static_cast<std::size_t>(j)]))
        above[static_cast<std::size_t>(i)].push_back(j);
  c.faces_by_dim.push_back({{}});
  std::vector<int> chain;
  auto extend = [&](auto&& self, int last) -> void {
    const auto& next = last < 0 ? std::vector<int>{} : above[static_cast<std::size_t>(last)];
    auto visit = [&](int v) {
      chain.push_back(v);
      if (c.faces_by_dim.size() <= chain.size()) c.faces_by_dim.emplace_back();
      c.faces_by_dim[chain.size()].push_back(chain);
      if (static_cast<long>(chain.size()) <= static_cast<long>(max_dim)) self(self, v);
      chain.pop_back();
    };
    if (last < 0)
      for (int v = 0; v < n; ++v) visit(v);
    else
      for (int v : next) visit(v);
  };
  extend(extend, -1);
  for (auto& layer : c.faces_by_dim) std::sort(layer.begin(), layer.end());
  return c;
}

std::string Field::name() const { return characteristic == 0 ? "Q" : "F" + std::to_string(characteristic); }

namespace {

struct Overflow {};

long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
  return r;
}
long long checked_sub(long long a, long long b) {
  long long r;
  if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
  return r;
}

long long gcd_of(long long a, long long b) { return std::gcd(a, b); }
mpz_class gcd_of(const mpz_class& a, const mpz_class& b) {
  mpz_class g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}
long long mul(long long a, long long b) { return checked_mul(a, b); }
mpz_class mul(const mpz_class& a, const mpz_class& b) { return a * b; }
long long sub(long long a, long long b) { return checked_sub(a, b); }
mpz_class sub(const mpz_class& a, const mpz_class& b) { return a - b; }

template <class T>
using SparseRow = std::vector<std::pair<int, T>>;

// Fraction-free integer elimination; the rank over Q.
template <class T>
std::size_t rank_integral(const std::vector<SparseRow<T>>& rows) {
  std::unordered_map<int, SparseRow<T>> pivots;
  std::size_t rank = 0;
  for (auto row : rows) {
    while (!row.empty()) {
      auto it = pivots.find(row.front().first);
      if (it == pivots.end()) break;
      const auto& p = it->second;
      T a = p.front().second;
      T b = row.front().second;
      T g = gcd_of(a, b);
      a /= g;
      b /= g;
      SparseRow<T> out;
      std::size_t i = 0, j = 0;
      while (i < row.size() || j < p.size()) {
        if (j == p.size() || (i < row.size() && row[i].first < p[j].first)) {
          out.emplace_back(row[i].first, mul(a, row[i].second));
          ++i;
        } else if (i == row.size() || p[j].first < row[i].first) {
          out.emplace_back(p[j].first, sub(T(0), mul(b, p[j].second)));
          ++j;
        } else {
          T v = sub(mul(a, row[i].second), mul(b, p[j].second));
          if (v != 0) out.emplace_back(row[i].first, v);
          ++i;
          ++j;
        }
      }
      T content = 0;
      for (const auto& [col, v] : out) content = gcd_of(content, v < 0 ? T(-v) : v);
      if (content > 1)
        for (auto& e : out) e.second /= content;
      row = std::move(out);
    }
    if (!row.empty()) {
      pivots.emplace(row.front().first, std::move(row));
      ++rank;
    }
  }
  return rank;
}

long long inverse_mod(long long a, long long p) {
  long long t = 0, nt = 1, r = p, nr = ((a % p) + p) % p;
  while (nr != 0) {
    long long q = r / nr;
    std::tie(t, nt) = std::make_pair(nt, t - q * nt);
    std::tie(r, nr) = std::make_pair(nr, r - q * nr);
  }
  return ((t % p) + p) % p;
}

std::size_t rank_mod_p(const std::vector<SparseRow<long long>>& rows, long long p) {
  std::unordered_map<int, SparseRow<long long>> pivots;
  std::size_t rank = 0;
  for (const auto& original : rows) {
    SparseRow<long long> row;
    for (const auto& [col, v] : original) {
      long long r = ((v % p) + p) % p;
      if (r != 0) row.emplace_back(col, r);
    }
    while (!row.empty()) {
      auto it = pivots.find(row.front().first);
      if (it == pivots.end()) break;
      const auto& piv = it->second;  // normalized: leading entry 1
      long long f = row.front().second;
      SparseRow<long long> out;
      std::size_t i = 0, j = 0;
      while (i < row.size() || j < piv.size()) {
        if (j == piv.size() || (i < row.size() && row[i].first < piv[j].first)) {
          out.push_back(row[i++]);
        } else if (i == row.size() || piv[j].first < row[i].first) {
          out.emplace_back(piv[j].first, (p - f * piv[j].second % p) % p);
          ++j;
        } else {
          long long v = ((row[i].second - f * piv[j].second) % p + p) % p;
          if (v != 0) out.emplace_back(row[i].first, v);
          ++i;
          ++j;
        }
      }
      row = std::move(out);
    }
    if (!row.empty()) {
      long long inv = inverse_mod(row.front().second, p);
      for (auto& e : row) e.second = e.second * inv % p;
      pivots.emplace(row.front().first, std::move(row));
      ++rank;
    }
  }
  return rank;
}

// Boundary of dimension-k faces into dimension-(k-1) faces, rows indexed by
// the k-faces.
std::vector<SparseRow<long long>> boundary_rows(const OrderComplex& c, int k) {
  const auto& upper = c.faces_by_dim[static_cast<std::size_t>(k + 1)];
  const auto& lower = c.faces_by_dim[static_cast<std::size_t>(k)];
  std::vector<SparseRow<long long>> rows;
  rows.reserve(upper.size());
  for (const auto& f : upper) {
    SparseRow<long long> row;
    for (std::size_t i = 0; i < f.size(); ++i) {
      auto g = f;
      g.erase(g.begin() + static_cast<long>(i));
      auto pos = std::lower_bound(lower.begin(), lower.end(), g);
      row.emplace_back(static_cast<int>(pos - lower.begin()), i % 2 == 0 ? 1 : -1);
    }
    std::sort(row.begin(), row.end());
    rows.push_back(std::move(row));
  }
  return rows;
}

std::size_t boundary_rank(const OrderComplex& c, int k, Field field) {
  if (k < 0 || static_cast<std::size_t>(k + 1) >= c.faces_by_dim.size()) return 0;
  auto rows = boundary_rows(c, k);
  if (field.characteristic != 0) return rank_mod_p(rows, field.characteristic);
  try {
    return rank_integral<long long>(rows);
  } catch (const Overflow&) {
    std::vector<SparseRow<mpz_class>> big;
    big.reserve(rows.size());
    for (const auto& r : rows) {
      SparseRow<mpz_class> b;
      for (const auto& [col, v] : r) b.emplace_back(col, mpz_class(static_cast<long>(v)));
      big.push_back(std::move(b));
    }
    return rank_integral<mpz_class>(big);
  }
}

// Diagonal entries of the Smith normal form (nonzero ones only).
std::vector<mpz_class> smith_diagonal(std::vector<std::vector<mpz_class>> a) {
  std::vector<mpz_class> diag;
  const std::size_t m = a.size();
  const std::size_t n = m == 0 ? 0 : a[0].size();
  std::size_t t = 0;
  while (t < m && t < n) {
    // Smallest nonzero entry of the remaining block.
    std::size_t pr = m, pc = n;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (a[i][j] != 0 && (pr == m || abs(a[i][j]) < abs(a[pr][pc]))) {
          pr = i;
          pc = j;
        }
    if (pr == m) break;
    std::swap(a[t], a[pr]);
    for (auto& row : a) std::swap(row[t], row[pc]);
    bool clean = false;
    while (!clean) {
      clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (a[i][t] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a[i][t].get_mpz_t(), a[t][t].get_mpz_t());
        for (std::size_t j = t; j < n; ++j) a[i][j] -= q * a[t][j];
        if (a[i][t] != 0) {
          std::swap(a[t], a[i]);
          clean = false;
        }
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (a[t][j] == 0) continue;
        mpz_class q;
        mpz_fdiv_q(q.get_mpz_t(), a[t][j].get_mpz_t(), a[t][t].get_mpz_t());
        for (std::size_t i = t; i < m; ++i) a[i][j] -= q * a[i][t];
        if (a[t][j] != 0) {
          for (auto& row : a) std::swap(row[t], row[j]);
          clean = false;
        }
      }
      if (clean) {
        // Enforce divisibility of the remaining block.
        for (std::size_t i = t + 1; i < m && clean; ++i)
          for (std::size_t j = t + 1; j < n; ++j)
            if (a[i][j] % a[t][t] != 0) {
              for (std::size_t k = t; k < n; ++k) a[t][k] += a[i][k];
              clean = false;
              break;
            }
      }
    }
    diag.push_back(abs(a[t][t]));
    ++t;
  }
  return diag;
}

}  // namespace

std::vector<long> reduced_betti(const OrderComplex& complex, Field field) {
  const int top = complex.dimension();
  std::vector<std::size_t> ranks(static_cast<std::size_t>(top + 3), 0);
  for (int k = 0; k <= top; ++k) ranks[static_cast<std::size_t>(k + 1)] = boundary_rank(complex, k, field);
  std::vector<long> betti;
  for (int k = -1; k <= top; ++k) {
    long faces = static_cast<long>(complex.face_count(k));
    long out_rank = static_cast<long>(ranks[static_cast<std::size_t>(k + 1)]);
    long in_rank = static_cast<long>(ranks[static_cast<std::size_t>(k + 2)]);
    betti.push_back(faces - out_rank - in_rank);
  }
  return betti;
}

IntegralHomology integral_homology(const OrderComplex& complex) {
  const int top = complex.dimension();
  std::vector<std::vector<mpz_class>> diagonals(static_cast<std::size_t>(top + 3));
  for (int k = 0; k <= top; ++k) {
    auto rows = boundary_rows(complex, k);
    std::size_t cols = complex.face_count(k - 1);
    std::vector<std::vector<mpz_class>> dense(rows.size(), std::vector<mpz_class>(cols, 0));
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (const auto& [col, v] : rows[r]) dense[r][static_cast<std::size_t>(col)] = static_cast<long>(v);
    diagonals[static_cast<std::size_t>(k + 1)] = smith_diagonal(std::move(dense));
  }
  IntegralHomology h;
  for (int k = -1; k <= top; ++k) {
    long faces = static_cast<long>(complex.face_count(k));
    const auto& out = diagonals[static_cast<std::size_t>(k + 1)];
    const auto& in = diagonals[static_cast<std::size_t>(k + 2)];
    h.free_ranks.push_back(faces - static_cast<long>(out.size()) - static_cast<long>(in.size()));
    std::vector<std::string> torsion;
    for (const auto& d : in)
      if (d > 1) torsion.push_back(d.get_str());
    h.torsion.push_back(std::move(torsion));
  }
  return h;
}

long euler_characteristic_from_faces(const OrderComplex& complex) {
  long chi = 0;
  for (int k = -1; k <= complex.dimension(); ++k)
    chi += (k % 2 == 0 ? 1 : -1) * static_cast<long>(complex.face_count(k));
  return chi;
}

long BettiTable::rank(const Multidegree& lambda, int i) const {
  auto it = entries.find({lambda, i});
  return it == entries.end() ? 0 : it->second;
}

std::map<int, long> BettiTable::totals() const {
  std::map<int, long> t;
  for (const auto& [key, r] : entries) t[key.second] += r;
  return t;
}

BettiTable tor_ranks(const Semigroup& s, const std::vector<Multidegree>& window, Field field) {
  BettiTable table;
  table.field = field;
  std::vector<std::vector<long>> reduced(window.size());
  parallel_for(window.size(), [&](std::size_t w) {
    const auto& lambda = window[w];
    if (lambda.is_zero()) return;
    auto complex = order_complex(s, Multidegree::zero(s.dimension()), lambda);
    reduced[w] = reduced_betti(complex, field);
  });
  for (std::size_t w = 0; w < window.size(); ++w) {
    const auto& lambda = window[w];
    if (lambda.is_zero()) {
      table.entries[{lambda, 0}] = 1;
      continue;
    }
    table.reduced[lambda] = reduced[w];
    for (std::size_t k = 0; k < reduced[w].size(); ++k)
      if (reduced[w][k] != 0) table.entries[{lambda, static_cast<int>(k) + 1}] = reduced[w][k];
  }
  return table;
}

VanishingReport verify_vanishing(const Semigroup& s, int d, const BettiTable& table) {
  VanishingReport report;
  report.field = table.field;
  report.d = d;
  for (const auto& [lambda, betti] : table.reduced) {
    const int deg = s.degree(lambda);
    int i = -1;
    // i < -1 + (deg - 1)/(d - 1)  <=>  (i + 1)(d - 1) < deg - 1
    for (; (i + 1) * (d - 1) < deg - 1; ++i) {
      ++report.checks;
      auto k = static_cast<std::size_t>(i + 1);
      long value = k < betti.size() ? betti[k] : 0;
      if (value != 0) report.violations.push_back({lambda, deg, i, value});
    }
    auto k = static_cast<std::size_t>(i + 1);
    if (i >= 0 && (i + 1) * (d - 1) == deg - 1 && k < betti.size() && betti[k] != 0)
      report.sharp_witnesses.push_back({lambda, deg, i, betti[k]});
  }
  return report;
}

VanishingReport verify_vanishing(const Semigroup& s, int d, const std::vector<Multidegree>& window, Field field) {
  // Dimensions up to the first unchecked one (the sharpness dimension) are
  // needed, so chains one dimension higher suffice.
  BettiTable table;
  table.field = field;
  std::vector<std::vector<long>> reduced(window.size());
  parallel_for(window.size(), [&](std::size_t w) {
    const auto& lambda = window[w];
    if (lambda.is_zero()) return;
    const int deg = s.degree(lambda);
    int needed = -1;
    while ((needed + 1) * (d - 1) < deg - 1) ++needed;
    auto complex = order_complex(s, Multidegree::zero(s.dimension()), lambda, needed + 1);
    auto betti = reduced_betti(complex, field);
    betti.resize(std::min(betti.size(), static_cast<std::size_t>(needed + 2)));
    reduced[w] = std::move(betti);
  });
  for (std::size_t w = 0; w < window.size(); ++w)
    if (!window[w].is_zero()) table.reduced[window[w]] = std::move(reduced[w]);
  return verify_vanishing(s, d, table);
}

CmKoszulReport cm_koszul_witness(const Semigroup& s, const BettiTable& table,
                                 const std::map<Multidegree, std::vector<int>>& survivor_dims) {
  CmKoszulReport report;
  std::size_t omitted = 0;
  auto note = [&](std::string text) {
    if (report.notes.size() < 12)
      report.notes.push_back(std::move(text));
    else
      ++omitted;
  };
  for (const auto& [lambda, betti] : table.reduced) {
    const int top = static_cast<int>(betti.size()) - 2;
    for (int k = -1; k < top; ++k)
      if (betti[static_cast<std::size_t>(k + 1)] != 0) {
        report.homology_top_concentrated = false;
        note("homology below top dimension at " + lambda.str());
        break;
      }
    auto it = survivor_dims.find(lambda);
    if (it == survivor_dims.end()) {
      report.morse_witness = false;
      note("no Morse run for " + lambda.str());
      continue;
    }
    for (int dim : it->second)
      if (dim != top) {
        report.morse_witness = false;
        note("survivor below top dimension at " + lambda.str());
        break;
      }
  }
  if (!s.is_standard_graded()) {
    report.notes.push_back("NotStandardGraded: Koszul diagonal check skipped");
    if (omitted) report.notes.push_back(std::to_string(omitted) + " further notes omitted");
    return report;
  }
  report.koszul_checked = true;
  for (const auto& [key, r] : table.entries)
    if (r != 0 && s.degree(key.first) != key.second) {
      report.koszul = false;
      note("off-diagonal Tor_" + std::to_string(key.second) + " at " + key.first.str());
    }
  if (omitted) report.notes.push_back(std::to_string(omitted) + " further notes omitted");
  return report;
}

}  // namespace mg
