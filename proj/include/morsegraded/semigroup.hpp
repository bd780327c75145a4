#pragma once

#include <memory>
#include <unordered_map>
#include <vector>

#include "morsegraded/vectors.hpp"

namespace mg {

struct CoverEdge {
  int from;
  int to;
  int label;
};

// Closed interval [bottom, top] of the semigroup poset.
struct IntervalData {
  Multidegree bottom;
  Multidegree top;
  // Sorted by (coordinate sum, coordinates); bottom first, top last.
  std::vector<Multidegree> elements;
  std::vector<CoverEdge> covers;
  std::unordered_map<Multidegree, int, VectorHash> index;

  int index_of(const Multidegree& g) const {
    auto it = index.find(g);
    return it == index.end() ? -1 : it->second;
  }
  int bottom_index() const { return 0; }
  int top_index() const { return static_cast<int>(elements.size()) - 1; }
};

class Semigroup {
 public:
  // Validates: e >= 1, n >= 1, generators nonzero, distinct, of length e,
  // non-negative, and minimal (no generator is a sum of the others).
  Semigroup(std::size_t dimension, std::vector<Multidegree> generators);

  std::size_t dimension() const { return dimension_; }
  std::size_t rank() const { return generators_.size(); }
  const Multidegree& generator(std::size_t i) const { return generators_[i]; }
  const std::vector<Multidegree>& generators() const { return generators_; }

  bool contains(const Multidegree& v) const;
  bool leq(const Multidegree& mu, const Multidegree& lambda) const;
  // All exponent vectors u with phi(u) = lambda, sorted ascending.
  std::vector<Monomial> factorizations(const Multidegree& lambda) const;
  // Minimal factorization size; 0 for the zero element and for non-members.
  int degree(const Multidegree& lambda) const;
  Multidegree image(const Monomial& u) const;
  IntervalData interval(const Multidegree& mu, const Multidegree& lambda) const;
  // True when all generators lie on a common affine hyperplane with
  // positive normal, i.e. every fiber has a single factorization size.
  bool is_standard_graded() const;

  // Every lambda with degree(lambda) <= max_degree, sorted by
  // (degree, coordinate sum, coordinates). Includes the zero element.
  std::vector<Multidegree> elements_up_to_degree(int max_degree) const;

 private:
  bool contains_uncached(const Multidegree& v) const;

  struct Memo;
  std::size_t dimension_;
  std::vector<Multidegree> generators_;
  std::shared_ptr<Memo> memo_;
};

bool is_graded_by_positive_hyperplane(const std::vector<Multidegree>& generators);

}  // namespace mg
