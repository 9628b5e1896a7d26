#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fillinglab/rng.hpp"
#include "fillinglab/tree_boundary.hpp"

#include <algorithm>
#include <vector>

using namespace fillinglab;

namespace {

ReducedWord W(const std::string& text, int rank = 2) {
  return ReducedWord::parse(text, rank);
}

ClopenSet cyl(const std::string& text, int rank = 2) {
  return ClopenSet::cylinder(W(text, rank), rank);
}

ClopenSet set_of(std::vector<std::string> prefixes, int rank = 2) {
  std::vector<ReducedWord> ws;
  for (const auto& p : prefixes) ws.push_back(W(p, rank));
  return ClopenSet::from_prefixes(std::move(ws), rank);
}

ReducedWord random_word(Rng& rng, int rank, int max_len) {
  std::vector<Letter> letters;
  int len = static_cast<int>(rng.range(0, max_len));
  for (int i = 0; i < len; ++i) {
    int idx = static_cast<int>(rng.range(1, rank));
    letters.push_back(rng.coin() ? idx : -idx);
  }
  return ReducedWord::reduce(letters);
}

ClopenSet random_clopen(Rng& rng, int rank, int max_depth) {
  std::vector<ReducedWord> ps;
  int count = static_cast<int>(rng.range(1, 4));
  for (int i = 0; i < count; ++i) {
    ReducedWord w = random_word(rng, rank, max_depth);
    if (!w.empty()) ps.push_back(w);
  }
  if (ps.empty()) ps.push_back(W("x"));
  return ClopenSet::from_prefixes(std::move(ps), rank);
}

// All partitions of the boundary into cylinders of depth <= max_depth,
// as leaf lists of the refinement tree.
std::vector<std::vector<ReducedWord>> enumerate_partitions(
    const ReducedWord& node, int rank, int depth_left) {
  // The subtree below node is either one piece or refined below each child.
  std::vector<std::vector<ReducedWord>> out{{node}};
  if (depth_left == 0) return out;
  std::vector<std::vector<ReducedWord>> combined{{}};
  for (const auto& c : reduced_extensions(node, rank)) {
    auto parts = enumerate_partitions(c, rank, depth_left - 1);
    std::vector<std::vector<ReducedWord>> next;
    for (const auto& base : combined) {
      for (const auto& p : parts) {
        auto merged = base;
        merged.insert(merged.end(), p.begin(), p.end());
        next.push_back(std::move(merged));
      }
    }
    combined = std::move(next);
  }
  out.insert(out.end(), combined.begin(), combined.end());
  return out;
}

std::vector<std::vector<ReducedWord>> boundary_partitions(int rank,
                                                          int max_depth) {
  return enumerate_partitions(ReducedWord(), rank, max_depth);
}

}  // namespace

TEST_CASE("free reduction and parsing") {
  CHECK(ReducedWord::reduce({1, -1}).empty());
  CHECK(W("xX").empty());
  CHECK(W("xyYx") == W("xx"));
  CHECK(W("e").empty());
  CHECK(W("xyX").str() == "xyX");
  CHECK(W("x").inverse().str() == "X");
  CHECK(W("xyX").inverse() == W("xYX"));
  CHECK(W("xy").concat(W("Yx")) == W("xx"));
  CHECK(W("x").is_prefix_of(W("xy")));
  CHECK(W("x").is_prefix_of(W("x")));
  CHECK_FALSE(W("y").is_prefix_of(W("xy")));
  CHECK_THROWS_AS(W("z", 2), std::invalid_argument);
  CHECK_THROWS_AS(W("q", 8), std::invalid_argument);
  // Indices up to 8 render as letters even when tokens appear alongside.
  CHECK(ReducedWord::parse("x1 x9^-1", 9).str() == "x x9^-1");
  CHECK(ReducedWord::parse("x x9^-1", 9).str() == "x x9^-1");
  CHECK(ReducedWord::parse("x1 x1^-1", 9).empty());
  CHECK_THROWS_AS(ReducedWord::parse("y2", 9), std::invalid_argument);
}

TEST_CASE("shortlex order runs x before the inverse of x") {
  CHECK(letter_order(1) < letter_order(-1));
  CHECK(letter_order(-1) < letter_order(2));
  std::vector<ReducedWord> ws{W("y"), W("X"), W("e"), W("xx"), W("x"), W("Y")};
  std::sort(ws.begin(), ws.end());
  std::vector<std::string> got;
  for (const auto& w : ws) got.push_back(w.str());
  CHECK(got == std::vector<std::string>{"e", "x", "X", "y", "Y", "xx"});

  auto ball = word_ball(2, 2);
  CHECK(ball.size() == 17);
  CHECK(ball[0].empty());
  CHECK(std::is_sorted(ball.begin(), ball.end(),
                       [](const ReducedWord& a, const ReducedWord& b) {
                         return a < b;
                       }));
  CHECK(word_ball(2, 3).size() == 53);

  CHECK(reduced_extensions(ReducedWord(), 2).size() == 4);
  CHECK(reduced_extensions(W("x"), 2).size() == 3);
  auto ext = reduced_extensions(W("x"), 2);
  CHECK(std::find(ext.begin(), ext.end(), W("xX")) == ext.end());
}

TEST_CASE("clopen sets canonicalize to merged antichains") {
  CHECK(set_of({"xx", "xy", "xY"}) == cyl("x"));
  CHECK(set_of({"x", "X", "y", "Y"}).is_whole());
  CHECK(set_of({"x", "xy"}) == cyl("x"));
  CHECK(set_of({"y", "x"}).prefixes() ==
        std::vector<ReducedWord>{W("x"), W("y")});
  CHECK(ClopenSet::empty_set(2).is_empty());
  CHECK(ClopenSet::whole(2).is_whole());
  // At the root all 2k children are needed to merge; one level down, 2k-1.
  CHECK(set_of({"xx", "xy", "xY", "X", "y", "Y"}).is_whole());
  CHECK_FALSE(set_of({"xx", "xy", "X", "y", "Y"}).is_whole());
}

TEST_CASE("boundary measure") {
  CHECK(cyl("x").mass() == make_rational(1, 4));
  CHECK(cyl("xy").mass() == make_rational(1, 12));
  CHECK(ClopenSet::whole(2).mass() == Rational(1));
  CHECK(ClopenSet::empty_set(2).mass() == Rational(0));
  CHECK(cyl("x", 3).mass() == make_rational(1, 6));

  Rng rng(3);
  for (int iter = 0; iter < 300; ++iter) {
    ClopenSet a = random_clopen(rng, 2, 3);
    ClopenSet b = random_clopen(rng, 2, 3);
    CHECK(a.unite(b).mass() + a.intersect(b).mass() == a.mass() + b.mass());
    CHECK(a.complement().mass() == Rational(1) - a.mass());
    CHECK(a.unite(b) == b.unite(a));
    CHECK(a.intersect(b).complement() ==
          a.complement().unite(b.complement()));
    CHECK(a.unite(a.complement()).is_whole());
    CHECK(a.intersect(a.complement()).is_empty());
  }
}

TEST_CASE("boundary action on clopen sets") {
  CHECK(act_on_clopen(W("x"), cyl("x")) == cyl("xx"));
  // Full cancellation folds the complementary branches back in.
  CHECK(act_on_clopen(W("x"), cyl("X")) == set_of({"X", "y", "Y"}));
  CHECK(act_on_clopen(W("x"), cyl("X")) == cyl("x").complement());
  CHECK(act_on_clopen(W("X"), cyl("x")) == set_of({"x", "y", "Y"}));
  CHECK(act_on_clopen(ReducedWord(), cyl("xy")) == cyl("xy"));
  CHECK(act_on_clopen(W("xy"), ClopenSet::whole(2)).is_whole());
  CHECK(act_on_clopen(W("xy"), ClopenSet::empty_set(2)).is_empty());

  Rng rng(8);
  for (int iter = 0; iter < 400; ++iter) {
    ReducedWord g = random_word(rng, 2, 6);
    ClopenSet s = random_clopen(rng, 2, 4);
    CHECK(act_on_clopen(g.inverse(), act_on_clopen(g, s)) == s);
    ClopenSet t = random_clopen(rng, 2, 4);
    CHECK(act_on_clopen(g, s.unite(t)) ==
          act_on_clopen(g, s).unite(act_on_clopen(g, t)));
    CHECK(act_on_clopen(g, s.complement()) ==
          act_on_clopen(g, s).complement());
  }
}

TEST_CASE("cover check decides exactly") {
  CHECK(cover_check(2, {set_of({"x", "X"}), set_of({"y", "Y"})}).covered);
  CHECK(cover_check(2, {cyl("x"), cyl("x").complement()}).covered);
  // One translate per generator suffices: x^-1 Cyl(x) u y^-1 Cyl(y).
  ClopenSet left = act_on_clopen(W("X"), cyl("x"));
  ClopenSet right = act_on_clopen(W("Y"), cyl("y"));
  CHECK(cover_check(2, {left, right}).covered);

  CoverResult miss = cover_check(2, {cyl("x")});
  CHECK_FALSE(miss.covered);
  REQUIRE(miss.missed.has_value());
  CHECK(*miss.missed == W("X"));

  CoverResult deep = cover_check(2, {set_of({"x", "X", "y", "Yx", "YX"})});
  CHECK_FALSE(deep.covered);
  REQUIRE(deep.missed.has_value());
  CHECK(*deep.missed == W("YY"));
}

TEST_CASE("every cylinder partition passes the cover check") {
  auto parts = boundary_partitions(2, 2);
  CHECK(parts.size() == 17);
  for (const auto& leaves : parts) {
    std::vector<ClopenSet> sets;
    for (const auto& leaf : leaves)
      sets.push_back(ClopenSet::cylinder(leaf, 2));
    CHECK(cover_check(2, sets).covered);
    if (leaves.size() > 1) {
      // Dropping any single piece leaves a hole inside that piece.
      for (size_t drop = 0; drop < leaves.size(); ++drop) {
        std::vector<ClopenSet> rest;
        for (size_t i = 0; i < leaves.size(); ++i)
          if (i != drop) rest.push_back(ClopenSet::cylinder(leaves[i], 2));
        CoverResult res = cover_check(2, rest);
        CHECK_FALSE(res.covered);
        REQUIRE(res.missed.has_value());
        CHECK(leaves[drop].is_prefix_of(*res.missed));
      }
    }
  }
  CHECK(boundary_partitions(2, 3).size() == 6562);
  CHECK(boundary_partitions(3, 1).size() == 2);
}

TEST_CASE("common refinement search") {
  auto both_whole =
      reduce_to_common_set({ClopenSet::whole(2), ClopenSet::whole(2)}, 2);
  CHECK(both_whole.found);
  CHECK(both_whole.words.size() == 2);
  CHECK(both_whole.words[0].empty());
  CHECK(both_whole.common.is_whole());

  auto disjoint = reduce_to_common_set({cyl("x"), cyl("y")}, 2);
  CHECK(disjoint.found);
  CHECK(disjoint.words[0].empty());
  ClopenSet expected =
      cyl("x").intersect(act_on_clopen(disjoint.words[1], cyl("y")));
  CHECK_FALSE(expected.is_empty());
  CHECK(disjoint.common == expected);

  auto stuck = reduce_to_common_set({cyl("x"), cyl("y")}, 0);
  CHECK_FALSE(stuck.found);

  CHECK_THROWS_AS(
      reduce_to_common_set({ClopenSet::empty_set(2), cyl("x")}, 2),
      std::invalid_argument);
}

TEST_CASE("boundary points in canonical form") {
  BoundaryPoint xinf = BoundaryPoint::periodic(ReducedWord(), W("x"));
  CHECK(xinf.head().empty());
  CHECK(xinf.cycle() == std::vector<Letter>{1});
  CHECK(BoundaryPoint::periodic(ReducedWord(), W("xx")) == xinf);
  CHECK(BoundaryPoint::periodic(W("xy"), W("yy")) ==
        BoundaryPoint::periodic(W("x"), W("y")));
  CHECK(BoundaryPoint::periodic(W("x"), W("yx")) ==
        BoundaryPoint::periodic(ReducedWord(), W("xy")));
  CHECK_THROWS_AS(BoundaryPoint::periodic(W("x"), ReducedWord()),
                  std::invalid_argument);
  CHECK_THROWS_AS(BoundaryPoint::periodic(ReducedWord(), W("xyX")),
                  std::invalid_argument);
  CHECK_THROWS_AS(BoundaryPoint::periodic(W("xY"), W("y")),
                  std::invalid_argument);

  CHECK(xinf.in_cylinder(W("xx")));
  CHECK(xinf.in_cylinder(ReducedWord()));
  CHECK_FALSE(xinf.in_cylinder(W("xy")));
  BoundaryPoint yx = BoundaryPoint::periodic(W("y"), W("x"));
  CHECK(yx.in_cylinder(W("yx")));
  CHECK_FALSE(yx.in_cylinder(W("yy")));
  CHECK(yx.truncate(3) == std::vector<Letter>{2, 1, 1});
}

TEST_CASE("action on boundary points") {
  BoundaryPoint xinf = BoundaryPoint::periodic(ReducedWord(), W("x"));
  CHECK(apply_word(W("x"), xinf) == xinf);
  CHECK(apply_word(W("X"), xinf) == xinf);
  CHECK(apply_word(W("y"), xinf) == BoundaryPoint::periodic(W("y"), W("x")));
  BoundaryPoint Xinf = BoundaryPoint::periodic(ReducedWord(), W("X"));
  CHECK(apply_word(W("x"), Xinf) == Xinf);

  Rng rng(12);
  for (int iter = 0; iter < 300; ++iter) {
    ReducedWord g = random_word(rng, 2, 5);
    ReducedWord h = random_word(rng, 2, 5);
    ReducedWord c = random_word(rng, 2, 4);
    if (c.empty() || c.front() == -c.back()) continue;
    BoundaryPoint xi =
        apply_word(h, BoundaryPoint::periodic(ReducedWord(), c));
    CHECK(apply_word(g.inverse(), apply_word(g, xi)) == xi);
    CHECK(apply_word(g, apply_word(h, xi)) == apply_word(g.concat(h), xi));
  }
}

TEST_CASE("endpoints of group elements") {
  CHECK(attracting_endpoint(W("x")) ==
        BoundaryPoint::periodic(ReducedWord(), W("x")));
  CHECK(attracting_endpoint(W("yxY")) ==
        BoundaryPoint::periodic(W("y"), W("x")));
  CHECK(attracting_endpoint(W("xy")) ==
        BoundaryPoint::periodic(ReducedWord(), W("xy")));
  CHECK_THROWS_AS(attracting_endpoint(ReducedWord()), std::invalid_argument);

  FixedEndpoints fx = fixed_endpoints(W("x"));
  CHECK_FALSE(fx.identity_all_fixed);
  CHECK(*fx.attracting == BoundaryPoint::periodic(ReducedWord(), W("x")));
  CHECK(*fx.repelling == BoundaryPoint::periodic(ReducedWord(), W("X")));

  FixedEndpoints fc = fixed_endpoints(W("xyX"));
  CHECK(*fc.attracting == BoundaryPoint::periodic(W("x"), W("y")));
  CHECK(*fc.repelling == BoundaryPoint::periodic(W("x"), W("Y")));

  FixedEndpoints fid = fixed_endpoints(ReducedWord());
  CHECK(fid.identity_all_fixed);
  CHECK_FALSE(fid.attracting.has_value());

  // The fixed endpoints really are fixed, and attracting pulls nearby points.
  Rng rng(21);
  for (int iter = 0; iter < 200; ++iter) {
    ReducedWord g = random_word(rng, 2, 5);
    if (g.empty()) continue;
    FixedEndpoints fe = fixed_endpoints(g);
    CHECK(apply_word(g, *fe.attracting) == *fe.attracting);
    CHECK(apply_word(g, *fe.repelling) == *fe.repelling);
  }
}

TEST_CASE("moved points witness topological freeness") {
  BoundaryPoint m = moved_point(W("x"), W("y"), 2);
  CHECK(m.in_cylinder(W("y")));
  CHECK(apply_word(W("x"), m) != m);
  CHECK_THROWS_AS(moved_point(ReducedWord(), W("y"), 2),
                  std::invalid_argument);

  for (const auto& g : word_ball(2, 3)) {
    if (g.empty()) continue;
    for (const auto& w : word_ball(2, 2)) {
      BoundaryPoint xi = moved_point(g, w, 2);
      CHECK(xi.in_cylinder(w));
      CHECK(apply_word(g, xi) != xi);
    }
  }
}

TEST_CASE("translate covers of a single clopen set") {
  TranslateCoverResult whole = translate_cover(ClopenSet::whole(2), 2);
  CHECK(whole.found);
  CHECK(whole.translates.size() == 1);
  CHECK(whole.translates[0].empty());

  TranslateCoverResult res = translate_cover(cyl("x"), 3);
  REQUIRE(res.found);
  std::vector<ClopenSet> images;
  for (const auto& h : res.translates)
    images.push_back(act_on_clopen(h, cyl("x")));
  CHECK(cover_check(2, images).covered);
  CHECK(res.checked_candidates > 0);

  CHECK_FALSE(translate_cover(cyl("xy"), 0).found);
  CHECK_THROWS_AS(translate_cover(ClopenSet::empty_set(2), 2),
                  std::invalid_argument);
}

TEST_CASE("two translates fill the boundary") {
  TreeWitness w = two_filling_witness(cyl("x"), cyl("y"), 8);
  REQUIRE(w.found);
  CHECK(w.certified);
  ClopenSet c1 = act_on_clopen(w.t1, cyl("x"));
  ClopenSet c2 = act_on_clopen(w.t2, cyl("y"));
  CoverResult cover = cover_check(2, {c1, c2});
  CHECK(cover.covered);
  CHECK(cover.depth == w.cover_depth);

  TreeWitness ww = two_filling_witness(ClopenSet::whole(2), cyl("y"), 8);
  CHECK(ww.found);
  CHECK(ww.certified);

  CHECK_THROWS_AS(
      two_filling_witness(ClopenSet::empty_set(2), cyl("y"), 8),
      std::invalid_argument);

  Rng rng(33);
  for (int iter = 0; iter < 10; ++iter) {
    ClopenSet u = random_clopen(rng, 2, 3);
    ClopenSet v = random_clopen(rng, 2, 3);
    if (u.is_empty() || v.is_empty()) continue;
    TreeWitness tw = two_filling_witness(u, v, 8);
    REQUIRE(tw.found);
    CHECK(tw.certified);
    CHECK(cover_check(
              2, {act_on_clopen(tw.t1, u), act_on_clopen(tw.t2, v)})
              .covered);
  }
  // Rank 3 works the same way.
  TreeWitness r3 = two_filling_witness(cyl("z", 3), cyl("y", 3), 8);
  CHECK(r3.found);
  CHECK(r3.certified);
}
