#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "morsegraded/semigroup.hpp"

namespace mgtest {

using mg::Monomial;
using mg::Multidegree;
using mg::Semigroup;

inline Semigroup e1() {
  return Semigroup(4, {Multidegree{1, 1, 0, 0}, Multidegree{2, 0, 0, 0}, Multidegree{0, 0, 1, 0},
                       Multidegree{0, 0, 0, 1}, Multidegree{0, 2, 0, 0}});
}

inline Semigroup e2() {
  return Semigroup(5, {Multidegree{1, 1, 0, 0, 0}, Multidegree{2, 0, 0, 0, 0}, Multidegree{0, 0, 1, 0, 0},
                       Multidegree{0, 0, 0, 1, 0}, Multidegree{0, 0, 0, 0, 1}, Multidegree{0, 2, 0, 0, 0}});
}

inline Semigroup e3() {
  return Semigroup(4, {Multidegree{1, 0, 1, 0}, Multidegree{0, 1, 0, 1}, Multidegree{1, 0, 0, 1},
                       Multidegree{0, 1, 1, 0}});
}

// z_i = e_i + e_{d+i}, z_{d+j} = e_j + e_{d+(j+1) mod d}; one relation of degree d.
inline Semigroup sharpness_ring(int d) {
  std::vector<Multidegree> gens;
  const auto e = static_cast<std::size_t>(2 * d);
  for (int i = 0; i < d; ++i) {
    Multidegree g = Multidegree::zero(e);
    g[static_cast<std::size_t>(i)] = 1;
    g[static_cast<std::size_t>(d + i)] = 1;
    gens.push_back(g);
  }
  for (int j = 0; j < d; ++j) {
    Multidegree g = Multidegree::zero(e);
    g[static_cast<std::size_t>(j)] = 1;
    g[static_cast<std::size_t>(d + (j + 1) % d)] = 1;
    gens.push_back(g);
  }
  return Semigroup(e, gens);
}

inline Multidegree sharpness_relation(int d) {
  return Multidegree(std::vector<int>(static_cast<std::size_t>(2 * d), 1));
}

inline Semigroup twisted_cubic() {
  return Semigroup(2, {Multidegree{3, 0}, Multidegree{2, 1}, Multidegree{1, 2}, Multidegree{0, 3}});
}

inline Semigroup free_plane() { return Semigroup(2, {Multidegree{1, 0}, Multidegree{0, 1}}); }

// Brute-force semigroup arithmetic from the generator list alone.
class Oracle {
 public:
  explicit Oracle(std::vector<Multidegree> gens) : gens_(std::move(gens)) {}

  bool member(const Multidegree& v) {
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] < 0) return false;
    if (v.is_zero()) return true;
    auto it = memo_.find(v);
    if (it != memo_.end()) return it->second;
    bool r = false;
    for (const auto& g : gens_) {
      auto rest = v.checked_minus(g);
      if (rest && member(*rest)) {
        r = true;
        break;
      }
    }
    memo_[v] = r;
    return r;
  }

  bool leq(const Multidegree& a, const Multidegree& b) { return member(b - a); }

  // Number of exponent vectors u with sum u_i g_i = v.
  long factorization_count(const Multidegree& v, std::size_t from = 0) {
    if (v.is_zero()) return 1;
    long total = 0;
    for (std::size_t i = from; i < gens_.size(); ++i) {
      auto rest = v.checked_minus(gens_[i]);
      if (rest) total += factorization_count(*rest, i);
    }
    return total;
  }

  std::vector<Monomial> factorizations(const Multidegree& v) {
    std::vector<Monomial> out;
    Monomial u = Monomial::zero(gens_.size());
    std::function<void(const Multidegree&, std::size_t)> rec = [&](const Multidegree& rest, std::size_t from) {
      if (rest.is_zero()) {
        out.push_back(u);
        return;
      }
      for (std::size_t i = from; i < gens_.size(); ++i) {
        auto r = rest.checked_minus(gens_[i]);
        if (!r) continue;
        u[i] += 1;
        rec(*r, i);
        u[i] -= 1;
      }
    };
    rec(v, 0);
    return out;
  }

  int min_length(const Multidegree& v) {
    int best = -1;
    for (const auto& u : factorizations(v))
      if (best < 0 || u.total() < best) best = u.total();
    return best;
  }

  // Elements strictly between 0 and top, in the box below top.
  std::vector<Multidegree> open_interval(const Multidegree& top) {
    std::vector<Multidegree> out;
    Multidegree v = Multidegree::zero(top.size());
    std::function<void(std::size_t)> rec = [&](std::size_t k) {
      if (k == top.size()) {
        if (!v.is_zero() && v != top && member(v) && leq(v, top)) out.push_back(v);
        return;
      }
      for (int x = 0; x <= top[k]; ++x) {
        v[k] = x;
        rec(k + 1);
      }
      v[k] = 0;
    };
    rec(0);
    return out;
  }

  // Chains of the open interval (0, top), grouped by dimension + 1.
  std::vector<std::vector<std::vector<int>>> chains(const Multidegree& top) {
    auto verts = open_interval(top);
    std::sort(verts.begin(), verts.end(), [](const Multidegree& a, const Multidegree& b) {
      return a.total() != b.total() ? a.total() < b.total() : a < b;
    });
    const int n = static_cast<int>(verts.size());
    std::vector<std::vector<char>> less(verts.size(), std::vector<char>(verts.size(), 0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j && leq(verts[static_cast<std::size_t>(i)], verts[static_cast<std::size_t>(j)])) less[i][j] = 1;
    std::vector<std::vector<std::vector<int>>> by_dim(1, {{}});
    std::vector<int> chain;
    std::function<void(int)> rec = [&](int last) {
      for (int j = last + 1; j < n; ++j) {
        if (last >= 0 && !less[static_cast<std::size_t>(last)][static_cast<std::size_t>(j)]) continue;
        chain.push_back(j);
        if (by_dim.size() <= chain.size()) by_dim.resize(chain.size() + 1);
        by_dim[chain.size()].push_back(chain);
        rec(j);
        chain.pop_back();
      }
    };
    rec(-1);
    return by_dim;
  }

  // Reduced Betti numbers of the order complex of (0, top), index dim + 1.
  // characteristic 0 uses exact rationals.
  std::vector<long> reduced_betti(const Multidegree& top, int characteristic) {
    auto faces = chains(top);
    const std::size_t levels = faces.size();
    std::vector<std::map<std::vector<int>, std::size_t>> index(levels);
    for (std::size_t k = 0; k < levels; ++k)
      for (std::size_t f = 0; f < faces[k].size(); ++f) index[k][faces[k][f]] = f;
    // rank of the boundary from level k to k - 1
    std::vector<long> rank(levels + 1, 0);
    for (std::size_t k = 1; k < levels; ++k) {
      std::vector<std::vector<mpq_class>> m(faces[k].size(), std::vector<mpq_class>(faces[k - 1].size(), 0));
      for (std::size_t f = 0; f < faces[k].size(); ++f)
        for (std::size_t i = 0; i < faces[k][f].size(); ++i) {
          auto sub = faces[k][f];
          sub.erase(sub.begin() + static_cast<long>(i));
          m[f][index[k - 1].at(sub)] = (i % 2 == 0) ? 1 : -1;
        }
      rank[k] = dense_rank(m, characteristic);
    }
    std::vector<long> betti(levels, 0);
    for (std::size_t k = 0; k < levels; ++k)
      betti[k] = static_cast<long>(faces[k].size()) - rank[k] - rank[k + 1];
    return betti;
  }

  static long dense_rank(std::vector<std::vector<mpq_class>> m, int characteristic) {
    if (m.empty()) return 0;
    const std::size_t rows = m.size(), cols = m[0].size();
    auto reduce = [&](mpq_class& x) {
      if (characteristic == 0) return;
      mpz_class v = x.get_num() % characteristic;
      if (v < 0) v += characteristic;
      x = v;
    };
    auto inverse = [&](const mpq_class& x) -> mpq_class {
      if (characteristic == 0) return 1 / x;
      mpz_class r;
      mpz_class p = characteristic;
      mpz_invert(r.get_mpz_t(), mpz_class(x.get_num()).get_mpz_t(), p.get_mpz_t());
      return mpq_class(r);
    };
    for (auto& row : m)
      for (auto& x : row) reduce(x);
    long r = 0;
    std::size_t pivot_row = 0;
    for (std::size_t c = 0; c < cols && pivot_row < rows; ++c) {
      std::size_t p = pivot_row;
      while (p < rows && m[p][c] == 0) ++p;
      if (p == rows) continue;
      std::swap(m[p], m[pivot_row]);
      mpq_class inv = inverse(m[pivot_row][c]);
      for (std::size_t i = pivot_row + 1; i < rows; ++i) {
        if (m[i][c] == 0) continue;
        mpq_class f = m[i][c] * inv;
        reduce(f);
        for (std::size_t j = c; j < cols; ++j) {
          m[i][j] -= f * m[pivot_row][j];
          reduce(m[i][j]);
        }
      }
      ++pivot_row;
      ++r;
    }
    return r;
  }

  // Tor_i(k, k)_top = reduced H_{i-2} of (0, top); Tor_0 lives at 0.
  long tor(const Multidegree& top, int i, int characteristic) {
    if (top.is_zero()) return i == 0 ? 1 : 0;
    auto b = reduced_betti(top, characteristic);
    auto k = static_cast<std::size_t>(i - 1);
    return i >= 1 && k < b.size() ? b[k] : 0;
  }

 private:
  std::vector<Multidegree> gens_;
  std::map<Multidegree, bool> memo_;
};

// Pointed semigroups with n <= 6 generators in dimension e <= 5, coordinates
// <= 3. Samples with a decomposable generator or a repeated one are redrawn.
inline std::vector<Semigroup> random_semigroups(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dim_dist(2, 5), gen_dist(2, 6), coord(0, 3);
  std::vector<Semigroup> out;
  while (out.size() < count) {
    const auto e = static_cast<std::size_t>(dim_dist(rng));
    const auto n = static_cast<std::size_t>(gen_dist(rng));
    std::vector<Multidegree> gens;
    for (std::size_t i = 0; i < n; ++i) {
      Multidegree g = Multidegree::zero(e);
      for (std::size_t k = 0; k < e; ++k) g[k] = coord(rng);
      gens.push_back(g);
    }
    try {
      out.emplace_back(e, gens);
    } catch (const std::exception&) {
    }
  }
  return out;
}

}  // namespace mgtest
