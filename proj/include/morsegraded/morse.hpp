#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "morsegraded/facet_order.hpp"
#include "morsegraded/groebner.hpp"
#include "morsegraded/semigroup.hpp"

namespace mg {

enum class IntervalKind { descent, syzygy };

// Ranks are 1-based positions of interior chain elements. The interval
// [lo, hi] skips ranks lo..hi; it spans labels lo..hi+1 (1-based).
struct RankInterval {
  int lo = 1;
  int hi = 1;
  IntervalKind kind = IntervalKind::descent;
  int witness = -1;  // Groebner element index for syzygy intervals

  int height() const { return hi - lo + 1; }
  bool same_ranks(const RankInterval& o) const { return lo == o.lo && hi == o.hi; }
};

struct IntervalSystem {
  std::vector<RankInterval> i_intervals;  // sorted by lo
  std::vector<RankInterval> j_intervals;
  bool covers_all_ranks = false;
};

struct CriticalCell {
  int facet = -1;
  std::vector<int> ranks;
  int dimension = -1;
  std::vector<int> elements;  // interval element ids at those ranks
  int face = -1;
};

// Brute-force system from maximal overlaps with earlier facets.
// Throws CrossingViolation if an overlap skips a disconnected rank set.
std::vector<RankInterval> direct_interval_system(const std::vector<int>& facet_interior,
                                                 const std::vector<std::vector<int>>& earlier_interiors,
                                                 const LabelSequence& labels, const FacetOrderConfig& cfg);

// Descents and minimal syzygy runs from the Groebner basis.
std::vector<RankInterval> msi_characterization(const GroebnerBasis& gb, const FacetOrderConfig& cfg,
                                               const LabelSequence& labels);

std::vector<RankInterval> truncate_to_j_intervals(std::vector<RankInterval> i_intervals);

IntervalSystem make_interval_system(std::vector<RankInterval> i_intervals, int interior_ranks);

std::optional<std::vector<int>> critical_ranks(const IntervalSystem& system);

// Order complex of an open interval with the facet-wise lexicographic
// matching. Faces are chains of interior element ids sorted ascending
// (element ids follow a linear extension), including the empty face.
struct MorseComplex {
  IntervalData ivl;
  FacetOrderConfig cfg;
  std::vector<LabelSequence> facets;
  std::vector<std::vector<int>> facet_interior;
  std::vector<IntervalSystem> systems;

  std::vector<std::vector<int>> faces;
  std::unordered_map<std::vector<int>, int, VectorHash> face_index;
  std::vector<std::vector<int>> boundary;  // boundary[f][i] removes vertex i, sign (-1)^i
  std::vector<std::vector<int>> cofaces;
  std::vector<int> owner;
  std::vector<std::uint32_t> owner_mask;
  std::vector<int> partner;  // -1 when critical
  std::vector<CriticalCell> critical;

  int dimension_of(int face) const { return static_cast<int>(faces[static_cast<std::size_t>(face)].size()) - 1; }
  int face_of(const std::vector<int>& verts) const {
    auto it = face_index.find(verts);
    return it == face_index.end() ? -1 : it->second;
  }
  int max_dimension() const;
  bool is_critical(int face) const { return partner[static_cast<std::size_t>(face)] < 0; }
  // Coefficient of `lower` in the boundary of `upper`, or 0.
  int incidence(int upper, int lower) const;
  std::vector<int> critical_faces() const;
};

MorseComplex build_face_matching(const Semigroup& s, const IntervalData& ivl, const FacetOrderConfig& cfg);

bool verify_acyclic(const std::vector<std::vector<int>>& boundary, const std::vector<int>& partner);
bool verify_acyclic(const MorseComplex& mc);

// Counts indexed by dimension + 1, starting at dimension -1.
std::vector<long> morse_numbers(const std::vector<int>& dimensions);
std::vector<long> morse_numbers(const MorseComplex& mc);
// Euler characteristic of the reduced complex: sum over faces of (-1)^dim,
// the empty face counting -1.
long reduced_euler_characteristic(const MorseComplex& mc);

}  // namespace mg
