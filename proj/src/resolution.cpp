#include "morsegraded/resolution.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <unordered_map>

#include "morsegraded/error.hpp"
#include "morsegraded/parallel.hpp"

namespace mg {

std::vector<long> unreduced_morse_numbers(const std::vector<long>& reduced, bool empty_interval) {
  if (empty_interval || reduced.size() < 2) return {};
  std::vector<long> out(reduced.begin() + 1, reduced.end());
  // A matched empty face leaves its vertex critical once it is removed.
  if (reduced[0] == 0) out[0] += 1;
  return out;
}

IntervalRun run_interval(const Semigroup& s, const GroebnerBasis& gb, const FacetOrderConfig& cfg,
                         const Multidegree& lambda, const CancellationOptions& options) {
  IntervalRun run;
  run.lambda = lambda;
  run.degree = s.degree(lambda);
  auto ivl = s.interval(Multidegree::zero(s.dimension()), lambda);
  auto mc = std::make_shared<MorseComplex>(build_face_matching(s, ivl, cfg));
  run.initial_morse = morse_numbers(*mc);
  CancellationOptions o = options;
  const int d = gb.bound_degree();
  o.target_dimension_bound = survivor_dimension_bound(run.degree, d);
  run.result = d == 2 ? cancel_quadratic(*mc, gb, o) : cancel_degree_d(*mc, gb, o);
  for (int f : run.result.survivors) run.survivor_dimensions.push_back(mc->dimension_of(f));
  run.final_morse = morse_numbers(run.survivor_dimensions);
  run.complex = std::move(mc);
  return run;
}

const IntervalRun* MorseResolution::run_for(const Multidegree& lambda) const {
  for (const auto& r : runs)
    if (r.lambda == lambda) return &r;
  return nullptr;
}

namespace {

struct Tally {
  long long weight = 0;
  std::uint64_t paths = 0;
};
using TallyMap = std::map<int, Tally>;

void add_scaled(TallyMap& into, const TallyMap& from, int sign) {
  for (const auto& [cell, t] : from) {
    auto& dst = into[cell];
    dst.weight += sign * t.weight;
    dst.paths = t.paths > std::numeric_limits<std::uint64_t>::max() - dst.paths
                    ? std::numeric_limits<std::uint64_t>::max()
                    : dst.paths + t.paths;
  }
}

class Builder {
 public:
  Builder(MorseResolution& res, const Semigroup& s) : res_(res), s_(s) {
    for (std::size_t r = 0; r < res.runs.size(); ++r) run_index_.emplace(res.runs[r].lambda, static_cast<int>(r));
    cell_of_.resize(res.runs.size());
    memo_.resize(res.runs.size());
  }

  void make_cells() {
    for (std::size_t r = 0; r < res_.runs.size(); ++r) {
      const auto& run = res_.runs[r];
      if (run.lambda.is_zero()) {
        cell_of_[r][-1] = static_cast<int>(res_.cells.size());
        res_.cells.push_back({run.lambda, -1, 0});
        continue;
      }
      for (int f : run.result.survivors) {
        int index = static_cast<int>(run.complex->faces[static_cast<std::size_t>(f)].size()) + 1;
        cell_of_[r][f] = static_cast<int>(res_.cells.size());
        res_.cells.push_back({run.lambda, f, index});
      }
    }
    for (const auto& c : res_.cells) res_.cell_counts[{c.lambda, c.homological_index}] += 1;
  }

  TallyMap boundary_of(int cell) {
    const auto& c = res_.cells[static_cast<std::size_t>(cell)];
    if (c.face < 0) return {};
    return down_from(run_index_.at(c.lambda), c.face);
  }

 private:
  // Down steps of face f in run r (skipping its partner), followed by
  // matched up steps until critical cells are reached.
  TallyMap down_from(int r, int f) {
    const auto& run = res_.runs[static_cast<std::size_t>(r)];
    const auto& mc = *run.complex;
    const auto& partner = run.result.partner;
    const int skip = partner[static_cast<std::size_t>(f)];
    TallyMap out;
    const auto& bd = mc.boundary[static_cast<std::size_t>(f)];
    for (std::size_t i = 0; i < bd.size(); ++i) {
      if (bd[i] == skip) continue;
      add_scaled(out, through(r, bd[i]), i % 2 == 0 ? 1 : -1);
    }
    const auto& verts = mc.faces[static_cast<std::size_t>(f)];
    const int sign = verts.size() % 2 == 0 ? 1 : -1;
    if (verts.empty()) {
      add_scaled(out, through(zero_run(), -1), sign);
    } else {
      const Multidegree& mu = mc.ivl.elements[static_cast<std::size_t>(verts.back())];
      auto it = run_index_.find(mu);
      if (it == run_index_.end()) throw Error(ErrorCode::invariant_breach, "window not closed below " + mu.str());
      const auto& lower = *res_.runs[static_cast<std::size_t>(it->second)].complex;
      std::vector<int> face;
      for (std::size_t k = 0; k + 1 < verts.size(); ++k)
        face.push_back(lower.ivl.index_of(mc.ivl.elements[static_cast<std::size_t>(verts[k])]));
      int g = lower.face_of(face);
      if (g < 0) throw Error(ErrorCode::invariant_breach, "missing face below " + mu.str());
      add_scaled(out, through(it->second, g), sign);
    }
    return out;
  }

  // Contribution of arriving at face g of run r by a down step.
  TallyMap through(int r, int g) {
    if (g < 0) return {{cell_of_[static_cast<std::size_t>(r)].at(-1), Tally{1, 1}}};
    const auto& run = res_.runs[static_cast<std::size_t>(r)];
    const auto& mc = *run.complex;
    int p = run.result.partner[static_cast<std::size_t>(g)];
    if (p < 0) return {{cell_of_[static_cast<std::size_t>(r)].at(g), Tally{1, 1}}};
    if (mc.dimension_of(p) < mc.dimension_of(g)) return {};
    auto& memo = memo_[static_cast<std::size_t>(r)];
    auto it = memo.find(p);
    if (it != memo.end()) return it->second;
    TallyMap out;
    add_scaled(out, down_from(r, p), -mc.incidence(p, g));
    memo.emplace(p, out);
    return out;
  }

  int zero_run() const { return run_index_.at(Multidegree::zero(s_.dimension())); }

  MorseResolution& res_;
  const Semigroup& s_;
  std::unordered_map<Multidegree, int, VectorHash> run_index_;
  std::vector<std::unordered_map<int, int>> cell_of_;
  std::vector<std::unordered_map<int, TallyMap>> memo_;
};

}  // namespace

MorseResolution build_morse_resolution(const Semigroup& s, const GroebnerBasis& gb, const FacetOrderConfig& cfg,
                                       const std::vector<Multidegree>& window, const CancellationOptions& options) {
  std::set<Multidegree> closed;
  closed.insert(Multidegree::zero(s.dimension()));
  for (const auto& lambda : window) {
    if (!s.contains(lambda)) throw Error(ErrorCode::invalid_input, "multidegree " + lambda.str() + " not in semigroup");
    auto ivl = s.interval(Multidegree::zero(s.dimension()), lambda);
    closed.insert(ivl.elements.begin(), ivl.elements.end());
  }
  std::vector<Multidegree> order(closed.begin(), closed.end());
  std::vector<int> degrees(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) degrees[i] = s.degree(order[i]);
  std::vector<std::size_t> idx(order.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    if (degrees[a] != degrees[b]) return degrees[a] < degrees[b];
    return order[a] < order[b];
  });

  MorseResolution res;
  res.runs.resize(order.size());
  parallel_for(idx.size(), [&](std::size_t k) {
    const auto& lambda = order[idx[k]];
    if (lambda.is_zero()) {
      res.runs[k].lambda = lambda;
      return;
    }
    res.runs[k] = run_interval(s, gb, cfg, lambda, options);
  });

  Builder builder(res, s);
  builder.make_cells();
  res.boundary.resize(res.cells.size());
  for (std::size_t c = 0; c < res.cells.size(); ++c) {
    for (const auto& [target, t] : builder.boundary_of(static_cast<int>(c))) {
      const auto& tc = res.cells[static_cast<std::size_t>(target)];
      if (t.weight == 0 && t.paths == 0) continue;
      if (tc.lambda == res.cells[c].lambda) {
        if (t.weight != 0) ++res.equal_multidegree_incidences;
        res.equal_multidegree_paths += t.paths;
      }
      if (t.weight != 0)
        res.boundary[c].push_back({target, res.cells[c].lambda - tc.lambda, t.weight, t.paths});
    }
  }
  for (std::size_t c = 0; c < res.cells.size(); ++c) {
    std::map<int, long long> square;
    for (const auto& t1 : res.boundary[c])
      for (const auto& t2 : res.boundary[static_cast<std::size_t>(t1.target)]) square[t2.target] += t1.weight * t2.weight;
    for (const auto& [target, v] : square)
      if (v != 0) ++res.square_violations;
  }
  return res;
}

}  // namespace mg
