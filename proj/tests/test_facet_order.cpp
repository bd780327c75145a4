#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "morsegraded/facet_order.hpp"
#include "support.hpp"

using namespace mg;
using mgtest::Oracle;

namespace {

long multinomial(const Monomial& u) {
  long r = 1;
  int n = 0;
  for (std::size_t i = 0; i < u.size(); ++i)
    for (int k = 1; k <= u[i]; ++k) {
      ++n;
      r = r * n / k;
    }
  return r;
}

std::vector<Semigroup> rings() {
  std::vector<Semigroup> out{mgtest::e1(), mgtest::e2(), mgtest::e3(), mgtest::twisted_cubic(),
                             mgtest::sharpness_ring(2), mgtest::sharpness_ring(3)};
  for (const auto& s : mgtest::random_semigroups(8, 5)) out.push_back(s);
  return out;
}

}  // namespace

TEST_CASE("saturated chains are the orderings of factorizations") {
  for (const auto& s : rings()) {
    Oracle o(s.generators());
    auto cfg = FacetOrderConfig::from_order(TermOrder::default_lex(s.rank()));
    for (const auto& lambda : s.elements_up_to_degree(4)) {
      auto ivl = s.interval(Multidegree::zero(s.dimension()), lambda);
      auto facets = saturated_chains(s, ivl, cfg);
      long expected = 0;
      for (const auto& u : o.factorizations(lambda)) expected += multinomial(u);
      CHECK(static_cast<long>(facets.size()) == expected);
      for (std::size_t i = 1; i < facets.size(); ++i) CHECK(compare_facets(cfg, facets[i - 1], facets[i]) < 0);
      for (const auto& f : facets) {
        Multidegree sum = Multidegree::zero(s.dimension());
        for (int l : f.labels) sum += s.generator(static_cast<std::size_t>(l));
        CHECK(sum == lambda);
      }
    }
  }
}

TEST_CASE("content-lex orders satisfy the crossing condition") {
  for (const auto& s : rings())
    for (auto kind : {OrderKind::lex, OrderKind::graded_lex, OrderKind::graded_revlex}) {
      auto cfg = FacetOrderConfig::from_order(TermOrder(kind, TermOrder::default_lex(s.rank()).priority()));
      for (const auto& lambda : s.elements_up_to_degree(4)) {
        auto ivl = s.interval(Multidegree::zero(s.dimension()), lambda);
        auto report = check_crossing_condition(s, ivl, cfg);
        CHECK_MESSAGE(report.holds, report.witness);
        CHECK(is_least_content_increasing(s, ivl, cfg).holds);
      }
    }
}

TEST_CASE("within a fiber facets are label-lex bottom-up") {
  auto s = mgtest::e1();
  auto cfg = FacetOrderConfig::from_order(TermOrder::default_lex(5));
  auto ivl = s.interval(Multidegree::zero(4), Multidegree{2, 2, 1, 1});
  auto facets = saturated_chains(s, ivl, cfg);
  // content z0^2 z2 z3 precedes z1 z2 z3 z4 under lex
  REQUIRE(facets.size() == 12 + 24);
  CHECK(facets.front().labels == std::vector<int>{0, 0, 2, 3});
  CHECK(facets[12].labels == std::vector<int>{1, 2, 3, 4});
  CHECK(facets.back().labels == std::vector<int>{4, 3, 2, 1});
}

TEST_CASE("chain interiors follow the labels") {
  auto s = mgtest::e3();
  auto cfg = FacetOrderConfig::from_order(TermOrder::default_lex(4));
  Multidegree top{2, 1, 1, 2};
  auto ivl = s.interval(Multidegree::zero(4), top);
  for (const auto& f : saturated_chains(s, ivl, cfg)) {
    auto interior = chain_interior(s, ivl, f);
    CHECK(interior.size() == f.labels.size() - 1);
    Multidegree running = Multidegree::zero(4);
    for (std::size_t i = 0; i < interior.size(); ++i) {
      running += s.generator(static_cast<std::size_t>(f.labels[i]));
      CHECK(ivl.elements[static_cast<std::size_t>(interior[i])] == running);
    }
  }
}
