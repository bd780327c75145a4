#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "morsegraded/semigroup.hpp"

namespace mg {

enum class OrderKind { lex, graded_lex, graded_revlex, weight_matrix };

const char* order_kind_name(OrderKind kind);
OrderKind parse_order_kind(const std::string& name);

class TermOrder {
 public:
  TermOrder() = default;
  // priority lists variables from most to least significant. Weight rows
  // are compared first for weight_matrix, then lex by priority.
  TermOrder(OrderKind kind, std::vector<int> priority, std::vector<std::vector<int>> weights = {});

  // Lex with z_{n-1} > ... > z_0.
  static TermOrder default_lex(std::size_t nvars);

  int compare(const Monomial& a, const Monomial& b) const;
  bool less(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }

  // rank[i] = position of z_i among variables sorted ascending.
  std::vector<int> label_ranks() const;

  OrderKind kind() const { return kind_; }
  const std::vector<int>& priority() const { return priority_; }
  const std::vector<std::vector<int>>& weights() const { return weights_; }
  std::size_t nvars() const { return priority_.size(); }

 private:
  int compare_lex(const Monomial& a, const Monomial& b) const;

  OrderKind kind_ = OrderKind::lex;
  std::vector<int> priority_;
  std::vector<std::vector<int>> weights_;
};

struct Binomial {
  Monomial plus;
  Monomial minus;
  bool operator==(const Binomial&) const = default;
};

struct GroebnerBasis {
  TermOrder order;
  std::vector<Binomial> elements;

  // Maximal total degree of a leading term; 0 when empty.
  int degree() const;
  // The degree used in the vanishing bound: max(2, degree()).
  int bound_degree() const;
  std::size_t nvars() const { return order.nvars(); }
};

struct BuchbergerOptions {
  int degree_ceiling = 64;
  // Divide out the gcd of the two terms (valid for prime binomial ideals).
  bool saturate = false;
  // S-pairs whose lcm is rejected are skipped (truncated computation).
  std::function<bool(const Monomial&)> admit;
};

Binomial orient(const Binomial& b, const TermOrder& order);
bool divides(const Monomial& a, const Monomial& b);
Monomial monomial_gcd(const Monomial& a, const Monomial& b);
Monomial monomial_lcm(const Monomial& a, const Monomial& b);

Monomial normal_form(const Monomial& m, const std::vector<Binomial>& elements);
GroebnerBasis buchberger(const std::vector<Binomial>& gens, const TermOrder& order,
                         const BuchbergerOptions& options = {});

// First element whose leading term divides m.
std::optional<std::size_t> dividing_leading_term(const GroebnerBasis& gb, const Monomial& m);
bool in_initial_ideal(const GroebnerBasis& gb, const Monomial& m);

// Exhaustive S-pair criterion; returns a diagnostic on failure.
std::optional<std::string> check_s_pairs(const GroebnerBasis& gb);

// All z^u - z^v with phi(u) = phi(v), coprime, total degree <= cap.
std::vector<Binomial> toric_ideal_basis(const Semigroup& s, int cap,
                                        const std::optional<TermOrder>& order = std::nullopt);

// Union of the intervals [0, lambda] over the window.
std::vector<Multidegree> down_closure(const Semigroup& s, const std::vector<Multidegree>& window);

// Groebner basis of the toric ideal, exact in every multidegree of the
// down-closure of the window.
GroebnerBasis toric_groebner_for_window(const Semigroup& s, const TermOrder& order,
                                        const std::vector<Multidegree>& window);

// Checks a basis against the semigroup: homogeneity, orientation, S-pairs,
// and exactly one standard monomial in every fiber of the given
// multidegrees. Throws InvalidBasis.
void verify_groebner_basis(const Semigroup& s, const GroebnerBasis& gb,
                           const std::vector<Multidegree>& multidegrees);

}  // namespace mg
