#pragma once

#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "morsegraded/semigroup.hpp"

namespace mg {

// Chains of the open interval (bottom, top), built from comparability
// alone. Faces of each dimension are sorted lists of vertex indices.
struct OrderComplex {
  std::vector<Multidegree> vertices;  // sorted by a linear extension
  std::vector<std::vector<std::vector<int>>> faces_by_dim;  // index dim + 1

  int dimension() const { return static_cast<int>(faces_by_dim.size()) - 2; }
  std::size_t face_count(int dim) const;
  std::vector<std::vector<int>> facets() const;
};

// With max_dim >= -1 only faces up to that dimension are built; Betti numbers
// below max_dim are then exact.
OrderComplex order_complex(const Semigroup& s, const Multidegree& bottom, const Multidegree& top,
                           int max_dim = std::numeric_limits<int>::max());

// Characteristic 0 means the rationals.
struct Field {
  int characteristic = 0;
  std::string name() const;
};

// Reduced Betti numbers, index dim + 1 for dim = -1 .. dimension().
std::vector<long> reduced_betti(const OrderComplex& complex, Field field);

struct IntegralHomology {
  std::vector<long> free_ranks;               // index dim + 1
  std::vector<std::vector<std::string>> torsion;  // torsion coefficients, index dim + 1
};
// Smith normal form over the integers; intended for small complexes.
IntegralHomology integral_homology(const OrderComplex& complex);

long euler_characteristic_from_faces(const OrderComplex& complex);

struct BettiTable {
  Field field;
  // (multidegree, homological index) -> rank of Tor_i(k,k)_lambda
  std::map<std::pair<Multidegree, int>, long> entries;
  std::map<Multidegree, std::vector<long>> reduced;  // per-interval reduced Betti vectors

  long rank(const Multidegree& lambda, int i) const;
  std::map<int, long> totals() const;
};

BettiTable tor_ranks(const Semigroup& s, const std::vector<Multidegree>& window, Field field);

struct VanishingCheck {
  Multidegree lambda;
  int degree;
  int homological_dim;
  long value;
};

struct VanishingReport {
  Field field;
  int d = 2;
  std::size_t checks = 0;
  std::vector<VanishingCheck> violations;
  // Lambda with nonzero reduced homology in a dimension i >= 0 where the
  // bound is attained exactly: (i + 1)(d - 1) = deg - 1.
  std::vector<VanishingCheck> sharp_witnesses;
};

// Vanishing below -1 + (deg - 1)/(d - 1) for every nonzero lambda. The window
// form only builds the chains needed for the checked dimensions.
VanishingReport verify_vanishing(const Semigroup& s, int d, const std::vector<Multidegree>& window, Field field);
VanishingReport verify_vanishing(const Semigroup& s, int d, const BettiTable& table);

struct CmKoszulReport {
  bool homology_top_concentrated = true;
  bool morse_witness = true;
  bool koszul_checked = false;
  bool koszul = true;
  std::vector<std::string> notes;
};

// survivor_dims: per lambda, the dimensions of surviving Morse cells (if
// a Morse run is available).
CmKoszulReport cm_koszul_witness(const Semigroup& s, const BettiTable& table,
                                 const std::map<Multidegree, std::vector<int>>& survivor_dims);

}  // namespace mg
