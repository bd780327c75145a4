#include "morsegraded/semigroup.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <deque>
#include <mutex>
#include <set>
#include <shared_mutex>
#include <unordered_set>

#include "morsegraded/error.hpp"

namespace mg {

struct Semigroup::Memo {
  std::shared_mutex mutex;
  std::unordered_map<Multidegree, bool, VectorHash> member;
  std::unordered_map<Multidegree, int, VectorHash> degree;
};

namespace {

bool representable(const Multidegree& v, const std::vector<const Multidegree*>& gens,
                   std::unordered_map<Multidegree, bool, VectorHash>& memo) {
  if (v.is_zero()) return true;
  auto it = memo.find(v);
  if (it != memo.end()) return it->second;
  bool ok = false;
  for (const Multidegree* g : gens) {
    if (auto rest = v.checked_minus(*g)) {
      if (representable(*rest, gens, memo)) {
        ok = true;
        break;
      }
    }
  }
  memo.emplace(v, ok);
  return ok;
}

bool sort_key_less(const Multidegree& a, const Multidegree& b) {
  int ta = a.total(), tb = b.total();
  if (ta != tb) return ta < tb;
  return a < b;
}

}  // namespace

bool is_graded_by_positive_hyperplane(const std::vector<Multidegree>& generators) {
  // Solve w . alpha_i = 1 for all i over Q.
  const std::size_t n = generators.size();
  if (n == 0) return true;
  const std::size_t e = generators[0].size();
  std::vector<std::vector<mpq_class>> rows(n, std::vector<mpq_class>(e + 1));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t c = 0; c < e; ++c) rows[i][c] = generators[i][c];
    rows[i][e] = 1;
  }
  std::size_t r = 0;
  for (std::size_t c = 0; c < e && r < n; ++c) {
    std::size_t p = r;
    while (p < n && rows[p][c] == 0) ++p;
    if (p == n) continue;
    std::swap(rows[p], rows[r]);
    for (std::size_t i = 0; i < n; ++i) {
      if (i == r || rows[i][c] == 0) continue;
      mpq_class f = rows[i][c] / rows[r][c];
      for (std::size_t k = c; k <= e; ++k) rows[i][k] -= f * rows[r][k];
    }
    ++r;
  }
  for (std::size_t i = r; i < n; ++i)
    if (rows[i][e] != 0) return false;
  return true;
}

Semigroup::Semigroup(std::size_t dimension, std::vector<Multidegree> generators)
    : dimension_(dimension), generators_(std::move(generators)), memo_(std::make_shared<Memo>()) {
  if (dimension_ == 0) throw Error(ErrorCode::invalid_input, "dimension must be positive");
  if (generators_.empty()) throw Error(ErrorCode::invalid_input, "at least one generator is required");
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    const Multidegree& g = generators_[i];
    if (g.size() != dimension_)
      throw Error(ErrorCode::invalid_input, "generator " + std::to_string(i) + " has length " +
                                                std::to_string(g.size()) + ", expected " +
                                                std::to_string(dimension_));
    for (std::size_t c = 0; c < g.size(); ++c)
      if (g[c] < 0)
        throw Error(ErrorCode::invalid_input, "generator " + std::to_string(i) + " has a negative coordinate");
    if (g.is_zero())
      throw Error(ErrorCode::invalid_input, "generator " + std::to_string(i) + " is zero (semigroup not pointed)");
    for (std::size_t j = 0; j < i; ++j)
      if (generators_[j] == g)
        throw Error(ErrorCode::invalid_input,
                    "generators " + std::to_string(j) + " and " + std::to_string(i) + " coincide");
  }
  for (std::size_t i = 0; i < generators_.size(); ++i) {
    std::vector<const Multidegree*> others;
    for (std::size_t j = 0; j < generators_.size(); ++j)
      if (j != i) others.push_back(&generators_[j]);
    std::unordered_map<Multidegree, bool, VectorHash> memo;
    if (representable(generators_[i], others, memo))
      throw Error(ErrorCode::invalid_input,
                  "generator " + std::to_string(i) + " is a sum of other generators (not a minimal generating set)");
  }
}

bool Semigroup::contains_uncached(const Multidegree& v) const {
  if (v.is_zero()) return true;
  for (std::size_t c = 0; c < v.size(); ++c)
    if (v[c] < 0) return false;
  for (const Multidegree& g : generators_) {
    if (auto rest = v.checked_minus(g))
      if (contains(*rest)) return true;
  }
  return false;
}

bool Semigroup::contains(const Multidegree& v) const {
  if (v.size() != dimension_) return false;
  {
    std::shared_lock lock(memo_->mutex);
    auto it = memo_->member.find(v);
    if (it != memo_->member.end()) return it->second;
  }
  bool r = contains_uncached(v);
  std::unique_lock lock(memo_->mutex);
  memo_->member.emplace(v, r);
  return r;
}

bool Semigroup::leq(const Multidegree& mu, const Multidegree& lambda) const {
  auto d = lambda.checked_minus(mu);
  return d && contains(*d);
}

std::vector<Monomial> Semigroup::factorizations(const Multidegree& lambda) const {
  std::vector<Monomial> out;
  if (lambda.size() != dimension_ || !contains(lambda)) return out;
  const std::size_t n = generators_.size();
  Monomial cur = Monomial::zero(n);
  auto rec = [&](auto&& self, std::size_t i, const Multidegree& rest) -> void {
    if (rest.is_zero()) {
      out.push_back(cur);
      return;
    }
    if (i == n) return;
    Multidegree r = rest;
    int k = 0;
    std::vector<Multidegree> stack{r};
    while (auto next = r.checked_minus(generators_[i])) {
      r = *next;
      ++k;
      stack.push_back(r);
    }
    for (int m = k; m >= 0; --m) {
      if (!contains(stack[static_cast<std::size_t>(m)])) continue;
      cur[i] = m;
      self(self, i + 1, stack[static_cast<std::size_t>(m)]);
    }
    cur[i] = 0;
  };
  rec(rec, 0, lambda);
  std::sort(out.begin(), out.end());
  return out;
}

int Semigroup::degree(const Multidegree& lambda) const {
  if (lambda.size() != dimension_ || lambda.is_zero() || !contains(lambda)) return 0;
  {
    std::shared_lock lock(memo_->mutex);
    auto it = memo_->degree.find(lambda);
    if (it != memo_->degree.end()) return it->second;
  }
  int best = -1;
  for (const Multidegree& g : generators_) {
    if (auto rest = lambda.checked_minus(g)) {
      if (!contains(*rest)) continue;
      int d = rest->is_zero() ? 0 : degree(*rest);
      if (best < 0 || d + 1 < best) best = d + 1;
    }
  }
  std::unique_lock lock(memo_->mutex);
  memo_->degree.emplace(lambda, best);
  return best;
}

Multidegree Semigroup::image(const Monomial& u) const {
  Multidegree r = Multidegree::zero(dimension_);
  for (std::size_t i = 0; i < generators_.size() && i < u.size(); ++i)
    for (std::size_t c = 0; c < dimension_; ++c) r[c] += u[i] * generators_[i][c];
  return r;
}

IntervalData Semigroup::interval(const Multidegree& mu, const Multidegree& lambda) const {
  if (!leq(mu, lambda))
    throw Error(ErrorCode::not_comparable, mu.str() + " is not below " + lambda.str());
  std::set<Multidegree, decltype(&sort_key_less)> seen(&sort_key_less);
  std::deque<Multidegree> queue{mu};
  seen.insert(mu);
  while (!queue.empty()) {
    Multidegree g = queue.front();
    queue.pop_front();
    for (const Multidegree& a : generators_) {
      Multidegree h = g + a;
      if (!h.dominated_by(lambda) || seen.count(h)) continue;
      if (!leq(h, lambda)) continue;
      seen.insert(h);
      queue.push_back(h);
    }
  }
  IntervalData ivl;
  ivl.bottom = mu;
  ivl.top = lambda;
  ivl.elements.assign(seen.begin(), seen.end());
  for (std::size_t i = 0; i < ivl.elements.size(); ++i) ivl.index.emplace(ivl.elements[i], static_cast<int>(i));
  for (std::size_t i = 0; i < ivl.elements.size(); ++i) {
    for (std::size_t l = 0; l < generators_.size(); ++l) {
      int j = ivl.index_of(ivl.elements[i] + generators_[l]);
      if (j >= 0) ivl.covers.push_back({static_cast<int>(i), j, static_cast<int>(l)});
    }
  }
  return ivl;
}

bool Semigroup::is_standard_graded() const { return is_graded_by_positive_hyperplane(generators_); }

std::vector<Multidegree> Semigroup::elements_up_to_degree(int max_degree) const {
  std::unordered_map<Multidegree, int, VectorHash> level;
  std::vector<Multidegree> frontier{Multidegree::zero(dimension_)};
  level.emplace(frontier[0], 0);
  for (int d = 1; d <= max_degree; ++d) {
    std::vector<Multidegree> next;
    for (const Multidegree& g : frontier)
      for (const Multidegree& a : generators_) {
        Multidegree h = g + a;
        if (level.emplace(h, d).second) next.push_back(h);
      }
    frontier = std::move(next);
  }
  std::vector<Multidegree> out;
  out.reserve(level.size());
  for (auto& kv : level) out.push_back(kv.first);
  std::sort(out.begin(), out.end(), [&](const Multidegree& a, const Multidegree& b) {
    int da = level.at(a), db = level.at(b);
    if (da != db) return da < db;
    return sort_key_less(a, b);
  });
  return out;
}

}  // namespace mg
