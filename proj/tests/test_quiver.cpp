#include <doctest.h>

#include <random>

#include "qgk/errors.hpp"
#include "qgk/quiver.hpp"

using namespace qgk;

TEST_CASE("euler form examples") {
  CHECK(euler_form(quivers::jordan(), DimVector{2}, DimVector{3}) == 0);
  CHECK(euler_form(quivers::a2(), DimVector{1, 0}, DimVector{0, 1}) == -1);
  CHECK(euler_form(quivers::a2(), DimVector{1, 0}, DimVector{1, 0}) == 1);
  CHECK_THROWS_AS(euler_form(quivers::a2(), DimVector{1}, DimVector{1, 0}), InvalidInput);
}

TEST_CASE("symmetrised form examples") {
  CHECK(sym_form(quivers::kronecker(), DimVector{1, 1}, DimVector{1, 1}) == 0);
  CHECK(sym_form(quivers::jordan(), DimVector{1}, DimVector{1}) == 0);
  CHECK(sym_form(quivers::loops(2), DimVector{1}, DimVector{1}) == -2);
  CHECK_THROWS_AS(sym_form(quivers::jordan(), DimVector{1, 0}, DimVector{1}), InvalidInput);
}

TEST_CASE("derived quivers") {
  const Quiver empty = quivers::a1();
  CHECK(double_quiver(quivers::a2()).num_arrows() == 2);
  CHECK(double_quiver(quivers::a2()).arrow_count(0, 1) == 1);
  CHECK(double_quiver(quivers::a2()).arrow_count(1, 0) == 1);
  CHECK(double_quiver(quivers::jordan()).loops(0) == 2);
  CHECK(double_quiver(empty) == empty);

  CHECK(triple_quiver(quivers::jordan()).loops(0) == 3);
  const Quiver ta2 = triple_quiver(quivers::a2());
  CHECK(ta2.num_arrows() == 4);
  CHECK(ta2.loops(0) == 1);
  CHECK(ta2.loops(1) == 1);
  CHECK(triple_quiver(empty).loops(0) == 1);

  for (const Quiver& q : {quivers::jordan(), quivers::a2(), quivers::kronecker(), quivers::loops(2)}) {
    CHECK(double_quiver(q).vertices() == q.vertices());
    CHECK(triple_quiver(q).vertices() == q.vertices());
    CHECK(double_quiver(q).num_arrows() == 2 * q.num_arrows());
    CHECK(triple_quiver(q).num_arrows() == 2 * q.num_arrows() + q.num_vertices());
  }
}

TEST_CASE("framing") {
  const Quiver fj = frame(quivers::jordan(), DimVector{1});
  const Quiver adhm = double_quiver(fj);
  CHECK(adhm.num_vertices() == 2);
  CHECK(adhm.loops(0) == 2);
  CHECK(adhm.arrow_count(1, 0) == 1);
  CHECK(adhm.arrow_count(0, 1) == 1);

  const Quiver fa2 = frame(quivers::a2(), DimVector{1, 0});
  CHECK(fa2.num_vertices() == 3);
  CHECK(fa2.num_arrows() == 2);

  const Quiver f0 = frame(quivers::kronecker(), DimVector{0, 0});
  CHECK(f0.num_vertices() == 3);
  CHECK(f0.num_arrows() == 2);
  CHECK(f0.arrow_count(2, 0) == 0);

  CHECK(framed_vector(DimVector{2, 3}, 1) == DimVector{2, 3, 1});
  CHECK(unframed_part(DimVector{2, 3, 1}) == DimVector{2, 3});
}

TEST_CASE("framing picks a fresh vertex name") {
  const Quiver q({"inf", "x"}, std::vector<std::pair<std::string, std::string>>{{"inf", "x"}});
  const Quiver f = frame(q, DimVector{1, 1});
  CHECK(f.num_vertices() == 3);
  CHECK(f.vertices()[2] != "inf");
  CHECK(f.arrow_count(2, 0) == 1);
}

TEST_CASE("quiver validation") {
  using Named = std::vector<std::pair<std::string, std::string>>;
  CHECK_THROWS_AS(Quiver({"0"}, Named{{"0", "1"}}), InvalidInput);
  CHECK_THROWS_AS(Quiver({"0", "0"}, Named{}), InvalidInput);
  const Quiver q({"a", "b"}, Named{{"a", "b"}, {"a", "b"}, {"b", "b"}});
  CHECK(q.arrow_count(0, 1) == 2);
  CHECK(q.loops(1) == 1);
  CHECK(q.loops(0) == 0);
}

TEST_CASE("quiver json parsing") {
  const Quiver q = parse_quiver_json(R"({"vertices": ["0", "1"], "arrows": [["0", "1"], ["0", "1"]]})");
  CHECK(q == quivers::kronecker());
  CHECK(parse_quiver_json(quiver_to_json(q)) == q);
  CHECK(parse_quiver_json(R"({"vertices": ["0"], "arrows": [["0", "0"]]})") == quivers::jordan());
  CHECK_THROWS_AS(parse_quiver_json(R"({"vertices": ["0"], "arrows": [], "name": "x"})"), InvalidInput);
  CHECK_THROWS_AS(parse_quiver_json(R"({"vertices": ["0"]})"), InvalidInput);
  CHECK_THROWS_AS(parse_quiver_json(R"({"vertices": ["0"], "arrows": [["0", "2"]]})"), InvalidInput);
  CHECK_THROWS_AS(parse_quiver_json(R"({"vertices": [0], "arrows": []})"), InvalidInput);
  CHECK_THROWS_AS(parse_quiver_json("not json"), InvalidInput);
  CHECK_THROWS_AS(load_quiver("/nonexistent/quiver.json"), InvalidInput);
}

TEST_CASE("reference quiver files load") {
  const std::string dir = QGK_TEST_DATA_DIR;
  CHECK(load_quiver(dir + "/jordan.json") == quivers::jordan());
  CHECK(load_quiver(dir + "/a2.json") == quivers::a2());
  CHECK(load_quiver(dir + "/kronecker.json") == quivers::kronecker());
  CHECK(load_quiver(dir + "/loops2.json") == quivers::loops(2));
  CHECK(load_quiver(dir + "/a1.json") == quivers::a1());
}

TEST_CASE("dimension vectors") {
  const DimVector d{2, 0, 1};
  CHECK(d.total() == 3);
  CHECK(d.support() == std::vector<std::size_t>{0, 2});
  CHECK(DimVector{4, 6}.content() == 2);
  CHECK(d.str() == "2,0,1");
  CHECK(DimVector::parse("2,0,1", 3) == d);
  CHECK_THROWS_AS(DimVector::parse("2,0", 3), InvalidInput);
  CHECK_THROWS_AS(DimVector::parse("2,x,1", 3), InvalidInput);
  CHECK(DimVector{0, 2} < DimVector{3, 3});
  CHECK(DimVector{1, 0} > DimVector{0, 1});
  CHECK(DimVector{0, 2} > DimVector{1, 0});
  CHECK(leq(DimVector{1, 0}, DimVector{1, 1}));
  CHECK_FALSE(leq(DimVector{2, 0}, DimVector{1, 1}));

  const auto all = dimvectors_up_to(2, 2);
  const std::vector<DimVector> expected{{0, 1}, {1, 0}, {0, 2}, {1, 1}, {2, 0}};
  CHECK(all == expected);
  CHECK(dimvectors_up_to(2, 1, true).front() == DimVector{0, 0});
  CHECK(dimvectors_below(DimVector{1, 1}).size() == 3);
}

TEST_CASE("connected support") {
  const Quiver a3({"0", "1", "2"}, std::vector<Quiver::Arrow>{{0, 1}, {1, 2}});
  CHECK(a3.connected_support(DimVector{1, 1, 1}));
  CHECK_FALSE(a3.connected_support(DimVector{1, 0, 1}));
  CHECK(a3.connected_support(DimVector{0, 0, 3}));
}

TEST_CASE("form properties on random inputs") {
  std::mt19937 rng(20240517);
  std::uniform_int_distribution<int> entry(0, 4);
  const std::vector<Quiver> qs{quivers::jordan(), quivers::a2(), quivers::kronecker(),
                               quivers::loops(2),
                               Quiver({"0", "1", "2"},
                                      std::vector<Quiver::Arrow>{{0, 1}, {1, 2}, {2, 2}, {2, 0}})};
  for (int trial = 0; trial < 100; ++trial) {
    const Quiver& q = qs[static_cast<std::size_t>(trial) % qs.size()];
    DimVector d(q.num_vertices()), e(q.num_vertices());
    for (std::size_t i = 0; i < q.num_vertices(); ++i) {
      d[i] = entry(rng);
      e[i] = entry(rng);
    }
    CHECK(sym_form(q, d, e) == sym_form(q, e, d));
    CHECK(sym_form(q, d, d) % 2 == 0);
    for (std::size_t a = 0; a < q.num_arrows(); ++a)
      CHECK(sym_form(reverse_arrow(q, a), d, e) == sym_form(q, d, e));

    DimVector f(q.num_vertices());
    for (std::size_t i = 0; i < q.num_vertices(); ++i) f[i] = entry(rng) % 3;
    const Quiver qf = frame(q, f);
    CHECK(sym_form(qf, framed_vector(d, 0), framed_vector(e, 0)) == sym_form(q, d, e));
    int fe = 0;
    for (std::size_t i = 0; i < q.num_vertices(); ++i) fe += f[i] * e[i];
    CHECK(sym_form(qf, framed_vector(d, 1), framed_vector(e, 0)) == sym_form(q, d, e) - fe);
  }
}
