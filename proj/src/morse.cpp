#include "morsegraded/morse.hpp"

#include <algorithm>
#include <deque>

#include "morsegraded/error.hpp"

namespace mg {

namespace {

std::uint32_t overlap_mask(const std::vector<int>& f, const std::vector<int>& g) {
  std::uint32_t m = 0;
  std::size_t a = 0, b = 0;
  while (a < f.size() && b < g.size()) {
    if (f[a] == g[b]) {
      m |= (1u << a);
      ++a;
      ++b;
    } else if (f[a] < g[b]) {
      ++a;
    } else {
      ++b;
    }
  }
  return m;
}

std::uint32_t interval_mask(const RankInterval& r) {
  std::uint32_t m = 0;
  for (int x = r.lo; x <= r.hi; ++x) m |= (1u << (x - 1));
  return m;
}

bool interval_less(const RankInterval& a, const RankInterval& b) {
  if (a.lo != b.lo) return a.lo < b.lo;
  return a.hi < b.hi;
}

IntervalKind classify(const RankInterval& r, const LabelSequence& labels, const FacetOrderConfig& cfg) {
  if (r.height() == 1 && cfg.label_less(labels.labels[static_cast<std::size_t>(r.lo)],
                                        labels.labels[static_cast<std::size_t>(r.lo - 1)]))
    return IntervalKind::descent;
  return IntervalKind::syzygy;
}

// Keeps only intervals not containing another one; drops duplicates.
std::vector<RankInterval> minimal_intervals(std::vector<RankInterval> v) {
  std::sort(v.begin(), v.end(), interval_less);
  std::vector<RankInterval> out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    bool keep = true;
    for (std::size_t j = 0; j < v.size() && keep; ++j) {
      if (i == j) continue;
      bool contains = v[i].lo <= v[j].lo && v[j].hi <= v[i].hi;
      if (contains && (!v[i].same_ranks(v[j]) || j < i)) keep = false;
    }
    if (keep) out.push_back(v[i]);
  }
  return out;
}

}  // namespace

std::vector<RankInterval> direct_interval_system(const std::vector<int>& interior,
                                                 const std::vector<std::vector<int>>& earlier,
                                                 const LabelSequence& labels, const FacetOrderConfig& cfg) {
  const std::size_t k = interior.size();
  if (k > 31) throw Error(ErrorCode::invalid_input, "chains longer than 32 covers are not supported");
  const std::uint32_t full = (k == 0) ? 0u : ((1u << k) - 1);
  std::vector<std::uint32_t> masks;
  for (const auto& e : earlier) masks.push_back(overlap_mask(interior, e));
  std::sort(masks.begin(), masks.end());
  masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
  std::vector<RankInterval> out;
  for (std::uint32_t m : masks) {
    bool maximal = true;
    for (std::uint32_t o : masks)
      if (o != m && (o & m) == m) {
        maximal = false;
        break;
      }
    if (!maximal) continue;
    std::uint32_t c = full & ~m;
    if (c == 0) throw Error(ErrorCode::invariant_breach, "two facets share every interior element");
    int lo = __builtin_ctz(c) + 1;
    int hi = 32 - __builtin_clz(c);
    std::uint32_t expect = 0;
    for (int x = lo; x <= hi; ++x) expect |= (1u << (x - 1));
    if (expect != c) throw Error(ErrorCode::crossing_violation, "maximal overlap skips a disconnected rank set");
    RankInterval r{lo, hi, IntervalKind::descent, -1};
    r.kind = classify(r, labels, cfg);
    out.push_back(r);
  }
  std::sort(out.begin(), out.end(), interval_less);
  return out;
}

std::vector<RankInterval> msi_characterization(const GroebnerBasis& gb, const FacetOrderConfig& cfg,
                                               const LabelSequence& labels) {
  const auto& l = labels.labels;
  const std::size_t len = l.size();
  const std::size_t n = gb.nvars();
  std::vector<RankInterval> out;
  for (std::size_t r = 1; r < len; ++r)
    if (cfg.label_less(l[r], l[r - 1])) out.push_back({static_cast<int>(r), static_cast<int>(r), IntervalKind::descent, -1});
  for (std::size_t i = 0; i < len; ++i) {
    Monomial prod = Monomial::zero(n);
    prod[static_cast<std::size_t>(l[i])] += 1;
    for (std::size_t j = i + 1; j < len; ++j) {
      if (cfg.label_less(l[j], l[j - 1])) break;
      prod[static_cast<std::size_t>(l[j])] += 1;
      auto w = dividing_leading_term(gb, prod);
      if (!w) continue;
      Monomial prefix = prod;
      prefix[static_cast<std::size_t>(l[j])] -= 1;
      Monomial suffix = prod;
      suffix[static_cast<std::size_t>(l[i])] -= 1;
      if (!in_initial_ideal(gb, prefix) && !in_initial_ideal(gb, suffix))
        out.push_back({static_cast<int>(i) + 1, static_cast<int>(j), IntervalKind::syzygy, static_cast<int>(*w)});
      break;
    }
  }
  std::sort(out.begin(), out.end(), interval_less);
  return out;
}

std::vector<RankInterval> truncate_to_j_intervals(std::vector<RankInterval> list) {
  list = minimal_intervals(std::move(list));
  std::vector<RankInterval> out;
  while (!list.empty()) {
    RankInterval first = list.front();
    out.push_back(first);
    std::vector<RankInterval> rest;
    for (std::size_t i = 1; i < list.size(); ++i) {
      RankInterval r = list[i];
      r.lo = std::max(r.lo, first.hi + 1);
      if (r.lo <= r.hi) rest.push_back(r);
    }
    list = minimal_intervals(std::move(rest));
  }
  return out;
}

IntervalSystem make_interval_system(std::vector<RankInterval> i_intervals, int interior_ranks) {
  IntervalSystem sys;
  std::sort(i_intervals.begin(), i_intervals.end(), interval_less);
  sys.i_intervals = i_intervals;
  std::vector<bool> covered(static_cast<std::size_t>(interior_ranks) + 1, false);
  for (const auto& r : i_intervals)
    for (int x = r.lo; x <= r.hi; ++x) covered[static_cast<std::size_t>(x)] = true;
  sys.covers_all_ranks = true;
  for (int x = 1; x <= interior_ranks; ++x)
    if (!covered[static_cast<std::size_t>(x)]) sys.covers_all_ranks = false;
  sys.j_intervals = truncate_to_j_intervals(i_intervals);
  return sys;
}

std::optional<std::vector<int>> critical_ranks(const IntervalSystem& system) {
  if (!system.covers_all_ranks) return std::nullopt;
  std::vector<int> r;
  for (const auto& j : system.j_intervals) r.push_back(j.lo);
  return r;
}

int MorseComplex::max_dimension() const {
  int d = -1;
  for (const auto& f : faces) d = std::max(d, static_cast<int>(f.size()) - 1);
  return d;
}

int MorseComplex::incidence(int upper, int lower) const {
  const auto& b = boundary[static_cast<std::size_t>(upper)];
  for (std::size_t i = 0; i < b.size(); ++i)
    if (b[i] == lower) return (i % 2 == 0) ? 1 : -1;
  return 0;
}

std::vector<int> MorseComplex::critical_faces() const {
  std::vector<int> r;
  for (std::size_t f = 0; f < faces.size(); ++f)
    if (partner[f] < 0) r.push_back(static_cast<int>(f));
  return r;
}

MorseComplex build_face_matching(const Semigroup& s, const IntervalData& ivl, const FacetOrderConfig& cfg) {
  MorseComplex mc;
  mc.ivl = ivl;
  mc.cfg = cfg;
  mc.facets = saturated_chains(s, ivl, cfg);
  for (const auto& f : mc.facets) mc.facet_interior.push_back(chain_interior(s, ivl, f));
  for (std::size_t j = 0; j < mc.facets.size(); ++j) {
    std::vector<std::vector<int>> earlier(mc.facet_interior.begin(), mc.facet_interior.begin() + static_cast<long>(j));
    auto i_ivls = direct_interval_system(mc.facet_interior[j], earlier, mc.facets[j], cfg);
    mc.systems.push_back(make_interval_system(std::move(i_ivls), static_cast<int>(mc.facet_interior[j].size())));
  }

  auto subset = [&](std::size_t j, std::uint32_t mask) {
    std::vector<int> v;
    const auto& in = mc.facet_interior[j];
    for (std::size_t r = 0; r < in.size(); ++r)
      if (mask & (1u << r)) v.push_back(in[r]);
    return v;
  };

  for (std::size_t j = 0; j < mc.facets.size(); ++j) {
    const std::size_t k = mc.facet_interior[j].size();
    std::vector<std::uint32_t> imasks;
    for (const auto& r : mc.systems[j].i_intervals) imasks.push_back(interval_mask(r));
    for (std::uint32_t m = 0; m < (1u << k); ++m) {
      bool hits = true;
      for (std::uint32_t im : imasks)
        if ((m & im) == 0) hits = false;
      std::vector<int> verts = subset(j, m);
      auto it = mc.face_index.find(verts);
      if (it == mc.face_index.end()) {
        if (!hits) throw Error(ErrorCode::invariant_breach, "new face misses an I-interval");
        int id = static_cast<int>(mc.faces.size());
        mc.face_index.emplace(verts, id);
        mc.faces.push_back(std::move(verts));
        mc.owner.push_back(static_cast<int>(j));
        mc.owner_mask.push_back(m);
      } else if (hits) {
        throw Error(ErrorCode::invariant_breach, "face hitting every I-interval was already present");
      }
    }
  }

  const std::size_t nf = mc.faces.size();
  mc.partner.assign(nf, -1);
  mc.boundary.resize(nf);
  mc.cofaces.resize(nf);
  for (std::size_t f = 0; f < nf; ++f) {
    const auto& v = mc.faces[f];
    for (std::size_t i = 0; i < v.size(); ++i) {
      std::vector<int> w = v;
      w.erase(w.begin() + static_cast<long>(i));
      int g = mc.face_of(w);
      if (g < 0) throw Error(ErrorCode::invariant_breach, "face complex not closed under subsets");
      mc.boundary[f].push_back(g);
      mc.cofaces[static_cast<std::size_t>(g)].push_back(static_cast<int>(f));
    }
  }

  std::vector<std::optional<std::uint32_t>> crit_mask(mc.facets.size());
  for (std::size_t j = 0; j < mc.facets.size(); ++j) {
    if (auto ranks = critical_ranks(mc.systems[j])) {
      std::uint32_t m = 0;
      for (int r : *ranks) m |= (1u << (r - 1));
      crit_mask[j] = m;
    }
  }
  for (std::size_t f = 0; f < nf; ++f) {
    const std::size_t j = static_cast<std::size_t>(mc.owner[f]);
    const std::uint32_t m = mc.owner_mask[f];
    const auto& sys = mc.systems[j];
    std::uint32_t toggle = 0;
    if (crit_mask[j]) {
      if (m == *crit_mask[j]) {
        CriticalCell c;
        c.facet = static_cast<int>(j);
        for (std::size_t r = 0; r < mc.facet_interior[j].size(); ++r)
          if (m & (1u << r)) {
            c.ranks.push_back(static_cast<int>(r) + 1);
            c.elements.push_back(mc.facet_interior[j][r]);
          }
        c.dimension = static_cast<int>(c.ranks.size()) - 1;
        c.face = static_cast<int>(f);
        mc.critical.push_back(c);
        continue;
      }
      for (const auto& jr : sys.j_intervals) {
        std::uint32_t jm = interval_mask(jr);
        std::uint32_t low = 1u << (jr.lo - 1);
        if ((m & jm) != low) {
          toggle = low;
          break;
        }
      }
    } else {
      std::uint32_t covered = 0;
      for (const auto& r : sys.i_intervals) covered |= interval_mask(r);
      for (std::size_t r = 0; r < mc.facet_interior[j].size(); ++r)
        if (!(covered & (1u << r))) {
          toggle = 1u << r;
          break;
        }
    }
    if (toggle == 0) throw Error(ErrorCode::invariant_breach, "face left unmatched outside the critical cell");
    int p = mc.face_of(subset(j, m ^ toggle));
    if (p < 0 || mc.owner[static_cast<std::size_t>(p)] != static_cast<int>(j))
      throw Error(ErrorCode::invariant_breach, "matching partner belongs to another facet");
    mc.partner[f] = p;
  }
  for (std::size_t f = 0; f < nf; ++f) {
    int p = mc.partner[f];
    if (p >= 0 && mc.partner[static_cast<std::size_t>(p)] != static_cast<int>(f))
      throw Error(ErrorCode::invariant_breach, "matching is not an involution");
  }
  std::sort(mc.critical.begin(), mc.critical.end(), [](const CriticalCell& a, const CriticalCell& b) {
    return a.facet < b.facet;
  });
  return mc;
}

bool verify_acyclic(const std::vector<std::vector<int>>& boundary, const std::vector<int>& partner) {
  const std::size_t n = boundary.size();
  std::vector<std::vector<int>> out(n);
  std::vector<int> indeg(n, 0);
  for (std::size_t f = 0; f < n; ++f) {
    for (int b : boundary[f]) {
      if (partner[static_cast<std::size_t>(b)] == static_cast<int>(f)) {
        out[static_cast<std::size_t>(b)].push_back(static_cast<int>(f));
        ++indeg[f];
      } else {
        out[f].push_back(b);
        ++indeg[static_cast<std::size_t>(b)];
      }
    }
  }
  std::deque<int> q;
  for (std::size_t f = 0; f < n; ++f)
    if (indeg[f] == 0) q.push_back(static_cast<int>(f));
  std::size_t seen = 0;
  while (!q.empty()) {
    int f = q.front();
    q.pop_front();
    ++seen;
    for (int g : out[static_cast<std::size_t>(f)])
      if (--indeg[static_cast<std::size_t>(g)] == 0) q.push_back(g);
  }
  return seen == n;
}

bool verify_acyclic(const MorseComplex& mc) { return verify_acyclic(mc.boundary, mc.partner); }

std::vector<long> morse_numbers(const std::vector<int>& dimensions) {
  std::vector<long> m;
  for (int d : dimensions) {
    std::size_t idx = static_cast<std::size_t>(d + 1);
    if (m.size() <= idx) m.resize(idx + 1, 0);
    ++m[idx];
  }
  return m;
}

std::vector<long> morse_numbers(const MorseComplex& mc) {
  std::vector<int> dims;
  for (int f : mc.critical_faces()) dims.push_back(mc.dimension_of(f));
  return morse_numbers(dims);
}

long reduced_euler_characteristic(const MorseComplex& mc) {
  long chi = 0;
  for (const auto& f : mc.faces) {
    long dim = static_cast<long>(f.size()) - 1;
    chi += (dim % 2 == 0) ? 1 : -1;
  }
  return chi;
}

}  // namespace mg
