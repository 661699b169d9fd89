#include <doctest.h>

#include <random>

#include "qgk/errors.hpp"
#include "qgk/roots.hpp"

using namespace qgk;

namespace {

std::vector<DimVector> phi_list(const RootTables& t) {
  std::vector<DimVector> out;
  for (const auto& e : t.phi_plus()) out.push_back(e.d);
  return out;
}

const std::vector<Quiver>& reference_quivers() {
  static const std::vector<Quiver> qs{quivers::a2(), quivers::kronecker(), quivers::loops(2)};
  return qs;
}

}  // namespace

TEST_CASE("Cartan datum validation") {
  CHECK_THROWS_AS(CartanDatum({{2, -1}, {0, 2}}), InvalidInput);
  CHECK_THROWS_AS(CartanDatum(std::vector<std::vector<int>>{{1}}), InvalidInput);
  CHECK_THROWS_AS(CartanDatum({{2, -1}}), InvalidInput);
  const CartanDatum k = CartanDatum::of(quivers::kronecker());
  CHECK(k.entry(0, 1) == -2);
  CHECK(k.real_capable(0));
  CHECK_FALSE(CartanDatum::of(quivers::jordan()).real_capable(0));
}

TEST_CASE("Sigma membership examples") {
  const CartanDatum a2 = CartanDatum::of(quivers::a2());
  CHECK_FALSE(sigma_membership(a2, DimVector{1, 1}));
  CHECK(sigma_membership(a2, DimVector{1, 0}));
  CHECK(sigma_membership(CartanDatum::of(quivers::jordan()), DimVector{1}));
  CHECK_FALSE(sigma_membership(CartanDatum::of(quivers::jordan()), DimVector{2}));
  const CartanDatum g2 = CartanDatum::of(quivers::loops(2));
  for (int d = 1; d <= 5; ++d) CHECK(sigma_membership(g2, DimVector{d}));
  CHECK_THROWS_AS(sigma_membership(a2, DimVector{0, 0}), InvalidInput);
}

TEST_CASE("Phi+ examples") {
  const RootTables j = phi_plus(CartanDatum::of(quivers::jordan()), 5);
  CHECK(phi_list(j) == std::vector<DimVector>{{1}, {2}, {3}, {4}, {5}});
  for (const auto& e : j.phi_plus()) {
    CHECK(e.cls == RootClass::kIsotropic);
    CHECK(e.primitive == DimVector{1});
    CHECK(e.multiplier == e.d[0]);
  }
  CHECK(j.sigma() == std::vector<DimVector>{{1}});

  const RootTables a2 = phi_plus(CartanDatum::of(quivers::a2()), 4);
  CHECK(phi_list(a2) == std::vector<DimVector>{{0, 1}, {1, 0}});
  for (const auto& e : a2.phi_plus()) CHECK(e.cls == RootClass::kReal);

  const RootTables k = phi_plus(CartanDatum::of(quivers::kronecker()), 4);
  CHECK(phi_list(k) == std::vector<DimVector>{{0, 1}, {1, 0}, {1, 1}, {2, 2}});
  CHECK(k.find(DimVector{2, 2})->cls == RootClass::kIsotropic);
  CHECK(k.find(DimVector{2, 2})->primitive == DimVector{1, 1});
  CHECK(k.find(DimVector{2, 2})->multiplier == 2);
  CHECK_FALSE(k.in_sigma(DimVector{2, 2}));
  CHECK(k.in_phi_plus(DimVector{2, 2}));

  const RootTables g2 = phi_plus(CartanDatum::of(quivers::loops(2)), 3);
  for (const auto& e : g2.phi_plus()) {
    CHECK(e.cls == RootClass::kHyperbolic);
    CHECK(e.p == 2 + 2 * e.d[0] * e.d[0]);
  }
}

TEST_CASE("Weyl reflections") {
  const Quiver a2 = quivers::a2();
  CHECK(weyl_reflect(a2, 0, DimVector{1, 1}) == DimVector{0, 1});
  CHECK(weyl_reflect(a2, 0, DimVector{1, 0}) == DimVector{-1, 0});
  CHECK(weyl_reflect(quivers::kronecker(), 1, DimVector{0, 1}) == DimVector{0, -1});
  CHECK_THROWS_AS(weyl_reflect(quivers::jordan(), 0, DimVector{1}), InvalidInput);

  std::mt19937 rng(55);
  std::uniform_int_distribution<int> entry(-3, 5);
  for (int trial = 0; trial < 100; ++trial) {
    const Quiver& q = trial % 2 ? quivers::a2() : quivers::kronecker();
    const DimVector d{entry(rng), entry(rng)}, e{entry(rng), entry(rng)};
    const auto i = static_cast<std::size_t>(trial % 2);
    CHECK(weyl_reflect(q, i, weyl_reflect(q, i, d)) == d);
    DimVector wd = d, we = e;
    for (int k = 0; k < 3; ++k) {
      const auto v = static_cast<std::size_t>((trial + k) % 2);
      wd = weyl_reflect(q, v, wd);
      we = weyl_reflect(q, v, we);
    }
    CHECK(sym_form(q, wd, we) == sym_form(q, d, e));
  }
}

TEST_CASE("fundamental cone") {
  CHECK(fundamental_cone_membership(quivers::kronecker(), DimVector{1, 1}));
  CHECK_FALSE(fundamental_cone_membership(quivers::a2(), DimVector{1, 0}));
  const Quiver a3({"0", "1", "2"}, std::vector<Quiver::Arrow>{{0, 1}, {1, 2}});
  CHECK_FALSE(fundamental_cone_membership(quivers::kronecker(), DimVector{1, 0}));
  CHECK_FALSE(fundamental_cone_membership(a3, DimVector{1, 0, 1}));
  CHECK_THROWS_AS(fundamental_cone_membership(a3, DimVector{0, 0, 0}), InvalidInput);
}

TEST_CASE("positive roots") {
  CHECK(positive_roots(quivers::a2(), 3) == std::vector<DimVector>{{0, 1}, {1, 0}, {1, 1}});
  CHECK(positive_roots(quivers::jordan(), 3) == std::vector<DimVector>{{1}, {2}, {3}});
  CHECK(positive_roots(quivers::loops(2), 3) == std::vector<DimVector>{{1}, {2}, {3}});
  const auto kr = positive_roots(quivers::kronecker(), 5);
  const std::vector<DimVector> expected{{0, 1}, {1, 0}, {1, 1}, {1, 2}, {2, 1}, {2, 2}, {2, 3}, {3, 2}};
  CHECK(kr == expected);
}

TEST_CASE("units are primitive and Sigma members are connected") {
  const Quiver a3({"0", "1", "2"}, std::vector<Quiver::Arrow>{{0, 1}, {1, 2}, {1, 1}});
  for (const Quiver& q : {quivers::a2(), quivers::kronecker(), quivers::loops(2), a3}) {
    const CartanDatum c = CartanDatum::of(q);
    for (std::size_t i = 0; i < q.num_vertices(); ++i)
      CHECK(sigma_membership(c, DimVector::unit(q.num_vertices(), i)));
    const RootTables t(c, 5);
    for (const auto& d : t.sigma()) {
      if (d.total() >= 2) CHECK(q.connected_support(d));
      // The p(d) >= 0 clause is implied by the strict inequality.
      CHECK(c.p(d) >= 0);
      const SigmaOracle& o = t.oracle();
      if (d.total() >= 2) CHECK(o.best_split(d) >= 0);
    }
  }
}

TEST_CASE("Sigma equals Sigma' up to the bound") {
  const Quiver a3({"0", "1", "2"}, std::vector<Quiver::Arrow>{{0, 1}, {1, 2}});
  for (const Quiver& q : {quivers::a2(), quivers::kronecker(), quivers::loops(2), quivers::jordan(), a3}) {
    const int bound = 5;
    const auto roots = positive_roots(q, bound);
    const CartanDatum c = CartanDatum::of(q);
    for (const auto& d : dimvectors_up_to(q.num_vertices(), bound))
      CHECK_MESSAGE(sigma_membership(c, d) == sigma_prime_membership(q, d, roots), d.str());
  }
}

TEST_CASE("canonical decomposition examples") {
  const Decomposition a2 = canonical_decomposition(quivers::a2(), DimVector{2, 1});
  CHECK(a2 == Decomposition{{DimVector{0, 1}, 1}, {DimVector{1, 0}, 2}});
  CHECK(canonical_decomposition(quivers::jordan(), DimVector{3}) == Decomposition{{DimVector{1}, 3}});
  CHECK(canonical_decomposition(quivers::kronecker(), DimVector{2, 2}) ==
        Decomposition{{DimVector{1, 1}, 2}});
  CHECK(canonical_decomposition(quivers::loops(2), DimVector{4}) == Decomposition{{DimVector{4}, 1}});
  CHECK(to_string(a2) == "(0,1)x1 + (1,0)x2");
}

TEST_CASE("canonical decomposition: scan-order independence and refinement") {
  for (const Quiver& q : reference_quivers()) {
    SigmaOracle sigma(CartanDatum::of(q));
    for (const auto& d : dimvectors_up_to(q.num_vertices(), 5)) {
      const Decomposition canon = canonical_decomposition(sigma, d);
      for (unsigned seed = 1; seed <= 4; ++seed)
        CHECK_MESSAGE(canonical_decomposition(sigma, d, seed) == canon, d.str());
      for (const auto& dec : sigma_decompositions(sigma, d))
        CHECK_MESSAGE(refines(dec, canon), d.str());
    }
  }
}

TEST_CASE("refinement helper") {
  const Decomposition coarse{{DimVector{1, 1}, 2}};
  CHECK(refines({DimVector{1, 0}, DimVector{0, 1}, DimVector{1, 1}}, coarse));
  CHECK_FALSE(refines({DimVector{2, 0}, DimVector{0, 2}}, coarse));
}
