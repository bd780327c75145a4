#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

namespace mg {

// Non-negative integer vector with a tag so multidegrees and monomials
// cannot be mixed up.
template <class Tag>
class ExponentVector {
 public:
  ExponentVector() = default;
  explicit ExponentVector(std::vector<int> v) : v_(std::move(v)) {}
  ExponentVector(std::initializer_list<int> v) : v_(v) {}

  static ExponentVector zero(std::size_t n) { return ExponentVector(std::vector<int>(n, 0)); }
  static ExponentVector unit(std::size_t n, std::size_t i) {
    ExponentVector r = zero(n);
    r.v_[i] = 1;
    return r;
  }

  std::size_t size() const { return v_.size(); }
  int operator[](std::size_t i) const { return v_[i]; }
  int& operator[](std::size_t i) { return v_[i]; }
  const std::vector<int>& values() const { return v_; }

  int total() const {
    int s = 0;
    for (int x : v_) s += x;
    return s;
  }
  bool is_zero() const {
    for (int x : v_)
      if (x != 0) return false;
    return true;
  }
  bool dominated_by(const ExponentVector& o) const {
    for (std::size_t i = 0; i < v_.size(); ++i)
      if (v_[i] > o.v_[i]) return false;
    return true;
  }

  ExponentVector operator+(const ExponentVector& o) const {
    ExponentVector r = *this;
    for (std::size_t i = 0; i < v_.size(); ++i) r.v_[i] += o.v_[i];
    return r;
  }
  ExponentVector& operator+=(const ExponentVector& o) {
    for (std::size_t i = 0; i < v_.size(); ++i) v_[i] += o.v_[i];
    return *this;
  }
  // Componentwise difference; may have negative entries.
  ExponentVector operator-(const ExponentVector& o) const {
    ExponentVector r = *this;
    for (std::size_t i = 0; i < v_.size(); ++i) r.v_[i] -= o.v_[i];
    return r;
  }
  std::optional<ExponentVector> checked_minus(const ExponentVector& o) const {
    ExponentVector r = *this - o;
    for (int x : r.v_)
      if (x < 0) return std::nullopt;
    return r;
  }
  ExponentVector max_with(const ExponentVector& o) const {
    ExponentVector r = *this;
    for (std::size_t i = 0; i < v_.size(); ++i) r.v_[i] = std::max(v_[i], o.v_[i]);
    return r;
  }
  ExponentVector min_with(const ExponentVector& o) const {
    ExponentVector r = *this;
    for (std::size_t i = 0; i < v_.size(); ++i) r.v_[i] = std::min(v_[i], o.v_[i]);
    return r;
  }

  auto operator<=>(const ExponentVector&) const = default;
  bool operator==(const ExponentVector&) const = default;

  std::string str() const {
    std::string s = "(";
    for (std::size_t i = 0; i < v_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(v_[i]);
    }
    return s + ")";
  }

 private:
  std::vector<int> v_;
};

struct MultidegreeTag;
struct MonomialTag;
using Multidegree = ExponentVector<MultidegreeTag>;
using Monomial = ExponentVector<MonomialTag>;

struct VectorHash {
  template <class Tag>
  std::size_t operator()(const ExponentVector<Tag>& v) const {
    return (*this)(v.values());
  }
  std::size_t operator()(const std::vector<int>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (int x : v) {
      h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h *= 1099511628211ull;
    }
    return h;
  }
};

// Monomial z^u as a sorted multiset of variable indices and back.
inline std::vector<int> monomial_to_multiset(const Monomial& m) {
  std::vector<int> r;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (int k = 0; k < m[i]; ++k) r.push_back(static_cast<int>(i));
  return r;
}
inline Monomial multiset_to_monomial(const std::vector<int>& labels, std::size_t n) {
  Monomial m = Monomial::zero(n);
  for (int l : labels) m[static_cast<std::size_t>(l)] += 1;
  return m;
}

}  // namespace mg
