#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "morsegraded/homology.hpp"
#include "morsegraded/resolution.hpp"
#include "support.hpp"

using namespace mg;
using mgtest::Oracle;

namespace {

MorseResolution resolve(const Semigroup& s, int window) {
  auto order = TermOrder::default_lex(s.rank());
  auto elems = s.elements_up_to_degree(window);
  auto gb = toric_groebner_for_window(s, order, elems);
  return build_morse_resolution(s, gb, FacetOrderConfig::from_order(order), elems, {});
}

}  // namespace

TEST_CASE("quadratic rings: Morse numbers equal Tor ranks per multidegree") {
  for (const auto& s : {mgtest::e1(), mgtest::e3(), mgtest::twisted_cubic()}) {
    auto res = resolve(s, 5);
    CHECK(res.square_violations == 0);
    CHECK(res.equal_multidegree_incidences == 0);
    Oracle o(s.generators());
    for (const auto& lambda : s.elements_up_to_degree(4))
      for (int i = 0; i <= 5; ++i) {
        auto it = res.cell_counts.find({lambda, i});
        long m = it == res.cell_counts.end() ? 0 : it->second;
        CHECK(m == o.tor(lambda, i, 0));
      }
  }
}

TEST_CASE("E1 at (2,2,1,1)") {
  auto res = resolve(mgtest::e1(), 4);
  const auto* run = res.run_for(Multidegree{2, 2, 1, 1});
  REQUIRE(run != nullptr);
  CHECK(run->final_morse == std::vector<long>{0, 0, 0, 2});
  CHECK(unreduced_morse_numbers(run->final_morse, false) == std::vector<long>{1, 0, 2});
  CHECK(run->initial_morse == std::vector<long>{0, 1, 4, 5});
  CHECK(unreduced_morse_numbers(run->initial_morse, false) == std::vector<long>{2, 4, 5});
  CHECK(res.cell_counts.at({Multidegree{2, 2, 1, 1}, 4}) == 2);
}

TEST_CASE("unreduced Morse numbers") {
  CHECK(unreduced_morse_numbers({1}, true) == std::vector<long>{});
  CHECK(unreduced_morse_numbers({0, 2}, false) == std::vector<long>{3});
  CHECK(unreduced_morse_numbers({1, 0}, false) == std::vector<long>{0});
}

TEST_CASE("degree 3: the resolution is a complex bounding Tor") {
  auto s = mgtest::sharpness_ring(3);
  auto res = resolve(s, 4);
  CHECK(res.square_violations == 0);
  auto t = tor_ranks(s, s.elements_up_to_degree(4), Field{0});
  for (const auto& [key, r] : t.entries) {
    auto it = res.cell_counts.find(key);
    CHECK((it == res.cell_counts.end() ? 0 : it->second) >= r);
  }
  for (const auto& run : res.runs)
    for (int dim : run.survivor_dimensions) CHECK(dim >= survivor_dimension_bound(run.degree, 3));
}

TEST_CASE("boundary terms go down in multidegree") {
  auto s = mgtest::e1();
  auto res = resolve(s, 4);
  for (std::size_t c = 0; c < res.cells.size(); ++c)
    for (const auto& term : res.boundary[c]) {
      const auto& target = res.cells[static_cast<std::size_t>(term.target)];
      CHECK(target.homological_index + 1 == res.cells[c].homological_index);
      CHECK(target.lambda + term.coefficient == res.cells[c].lambda);
    }
}
