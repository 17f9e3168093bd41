#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "ising_pbw/nahm.hpp"
#include "ising_pbw/reduction.hpp"

using namespace ising_pbw;

namespace {

const ModuleSpec& spec_for(ModuleLabel label) {
  static const ModuleSpec h0 = ModuleSpec::for_label(ModuleLabel::h0);
  static const ModuleSpec half = ModuleSpec::for_label(ModuleLabel::h1_2);
  static const ModuleSpec sixteenth = ModuleSpec::for_label(ModuleLabel::h1_16);
  switch (label) {
    case ModuleLabel::h0:
      return h0;
    case ModuleLabel::h1_2:
      return half;
    default:
      return sixteenth;
  }
}

SparseRow dense_row(std::initializer_list<Rational> xs) {
  SparseRow r;
  int j = 0;
  for (const auto& x : xs) {
    if (x != 0) r.emplace_back(j, x);
    ++j;
  }
  return r;
}

PBWVector vec(const VermaSpec& spec, int w, std::initializer_list<std::pair<Partition, Rational>> terms) {
  PBWVector v(spec, w);
  for (const auto& [lambda, c] : terms) v.add_term(lambda, c);
  return v;
}

}  // namespace

TEST_CASE("exact rref on small matrices") {
  CHECK(rref(std::vector<SparseRow>{}, 3).rows.empty());
  CHECK(rref(std::vector<SparseRow>{SparseRow{}, SparseRow{}}, 3).pivot_columns.empty());

  auto single = rref({dense_row({2, 6})}, 2);
  REQUIRE(single.rows.size() == 1);
  CHECK(single.pivot_columns == std::vector<int>{0});
  CHECK(single.rows[0] == dense_row({1, 3}));

  // Rank-2 3×3 with a dependent row.
  auto r = rref({dense_row({0, 2, 4}), dense_row({1, 1, 1}), dense_row({2, 4, 6})}, 3);
  CHECK(r.pivot_columns == std::vector<int>{0, 1});
  CHECK(r.rows[0] == dense_row({1, 0, -1}));
  CHECK(r.rows[1] == dense_row({0, 1, 2}));

  auto ns = nullspace({dense_row({1, 1, 1})}, 3);
  CHECK(ns.size() == 2);
  CHECK(ns[0] == dense_row({-1, 1, 0}));
  CHECK(ns[1] == dense_row({-1, 0, 1}));
}

TEST_CASE("A_n shapes") {
  const auto& half = spec_for(ModuleLabel::h1_2);
  const auto& sixteenth = spec_for(ModuleLabel::h1_16);
  auto a2 = build_An(half, 2);
  CHECK(a2.rows.size() == 1);
  CHECK(a2.columns.size() == 2);
  auto a4 = build_An(half, 4);
  CHECK(a4.rows.size() == 3);
  CHECK(a4.columns.size() == 5);
  CHECK(a4.labels[2].generator == 1);
  auto b4 = build_An(sixteenth, 4);
  CHECK(b4.rows.size() == 3);
  CHECK(b4.columns.size() == 5);
  CHECK(build_An(half, 1).rows.empty());
  CHECK(build_An(half, 0).columns == std::vector<Partition>{Partition{}});
}

TEST_CASE("A^W_4 for h = 1/2") {
  const auto& half = spec_for(ModuleLabel::h1_2);
  auto e = rref(half, build_An(half, 4));
  CHECK(e.column_order == std::vector<Partition>{{2, 2}, {2, 1, 1}, {1, 1, 1, 1}, {3, 1}, {4}});
  CHECK(e.pivots == std::vector<Partition>{{2, 2}, {2, 1, 1}, {1, 1, 1, 1}});
  CHECK(e.non_pivots == std::vector<Partition>{{3, 1}, {4}});
  REQUIRE(e.rows.size() == 3);
  const std::vector<std::vector<Rational>> expected{
      {1, 0, 0, Rational(-3, 16), Rational(-15, 8)}, {0, 1, 0, Rational(-1, 4), Rational(-5, 2)}, {0, 0, 1, -3, -6}};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 5; ++j) {
      CAPTURE(i);
      CAPTURE(j);
      CHECK(e.rows[i].coefficient(e.column_order[j]) == expected[i][j]);
    }
}

TEST_CASE("RREF canonicity and row-permutation invariance") {
  std::mt19937 rng(7);
  for (auto label : {ModuleLabel::h0, ModuleLabel::h1_2, ModuleLabel::h1_16}) {
    const auto& spec = spec_for(label);
    for (int n = 0; n <= 11; ++n) {
      CAPTURE(n);
      auto a = build_An(spec, n);
      const int ncols = static_cast<int>(a.columns.size());
      auto r = rref(a.rows, ncols);
      CHECK(rref(r.rows, ncols).rows == r.rows);
      auto shuffled = a.rows;
      std::shuffle(shuffled.begin(), shuffled.end(), rng);
      CHECK(rref(shuffled, ncols).rows == r.rows);
      CHECK(pivot_columns(shuffled, ncols) == r.pivot_columns);
      // Each reduced row lies in the row space of A_n.
      for (const auto& row : r.rows) {
        auto extended = a.rows;
        extended.push_back(row);
        CHECK(pivot_columns(extended, ncols).size() == r.pivot_columns.size());
      }
    }
  }
}

TEST_CASE("MatrixBuilder reuse matches fresh builds") {
  const auto& spec = spec_for(ModuleLabel::h1_16);
  MatrixBuilder builder(spec);
  for (int n = 0; n <= 12; ++n) {
    auto a = builder.build(n);
    auto b = build_An(spec, n);
    CHECK(a.rows == b.rows);
    CHECK(a.columns == b.columns);
  }
}

TEST_CASE("rank + non-pivots = p(n) and pivot sets partition the columns") {
  for (auto label : {ModuleLabel::h0, ModuleLabel::h1_2, ModuleLabel::h1_16}) {
    for (const auto& [n, s] : pivots_up_to(spec_for(label), 14)) {
      CAPTURE(n);
      CHECK(s.pivots.size() + s.non_pivots.size() == partition_count(n));
      std::set<Partition> all(s.pivots.begin(), s.pivots.end());
      all.insert(s.non_pivots.begin(), s.non_pivots.end());
      CHECK(all.size() == partition_count(n));
    }
  }
}

TEST_CASE("pivots at weight 0 and small quotient bases") {
  const auto& half = spec_for(ModuleLabel::h1_2);
  auto piv = pivots_up_to(half, 4);
  CHECK(piv.at(0).pivots.empty());
  CHECK(piv.at(0).non_pivots == std::vector<Partition>{Partition{}});
  auto qb = quotient_basis(half, 4);
  CHECK(qb.at(0) == std::vector<Partition>{Partition{}});
  CHECK(qb.at(2) == std::vector<Partition>{{1, 1}});
  CHECK(qb.at(4) == std::vector<Partition>{{3, 1}, {4}});
}

TEST_CASE("threaded pivots equal sequential pivots") {
  const auto& spec = spec_for(ModuleLabel::h1_16);
  auto seq = pivots_up_to(spec, 14, 1);
  auto par = pivots_up_to(spec, 14, 3);
  REQUIRE(seq.size() == par.size());
  for (const auto& [n, s] : seq) {
    CHECK(par.at(n).pivots == s.pivots);
    CHECK(par.at(n).non_pivots == s.non_pivots);
  }
}

TEST_CASE("exceptional partitions of R^{1/2} are pivots at their weights") {
  auto piv = pivots_up_to(spec_for(ModuleLabel::h1_2), 15);
  for (const auto& lambda : spec_for(ModuleLabel::h1_2).patterns.exceptional) {
    CAPTURE(lambda.str());
    const auto& p = piv.at(weight(lambda)).pivots;
    CHECK(std::find(p.begin(), p.end(), lambda) != p.end());
  }
}

TEST_CASE("pivot monotonicity for n <= 12") {
  constexpr int kTop = 16;
  for (auto label : {ModuleLabel::h0, ModuleLabel::h1_2, ModuleLabel::h1_16}) {
    auto piv = pivots_up_to(spec_for(label), kTop);
    std::map<int, std::set<Partition>> sets;
    for (const auto& [n, s] : piv) sets[n] = {s.pivots.begin(), s.pivots.end()};
    for (int n = 0; n <= 12; ++n)
      for (const auto& lambda : sets[n]) {
        CAPTURE(lambda.str());
        for (int v = 2; n + v <= kTop; ++v) CHECK(sets[n + v].count(lambda.with_part(v)) == 1);
        CHECK(sets[n + 1].count(lambda.with_part(1)) == 1);
      }
  }
}

TEST_CASE("vacuum module basis has no part 1") {
  auto qb = quotient_basis(spec_for(ModuleLabel::h0), 15);
  for (const auto& [n, basis] : qb)
    for (const auto& lambda : basis) CHECK(lambda.ones() == 0);
  CHECK(qb.at(4) == std::vector<Partition>{{2, 2}, {4}});
}

TEST_CASE("refined characters") {
  const auto& half = spec_for(ModuleLabel::h1_2);
  auto ch0 = refined_character(half, 0);
  CHECK(ch0.q_denominator() == 16);
  CHECK(ch0.str() == "q^(1/2)");

  auto piv = pivots_up_to(half, 15);
  auto ch = refined_character(half, piv, 15);
  CHECK_FALSE(first_difference(ch, theorem_rhs(CharacterFormula::T3, 15)));

  // t = 1 recovers the graded dimensions.
  BiPoly dims(16, 15);
  for (const auto& [n, s] : piv) dims.add_term(0, 16L * n, static_cast<long>(s.non_pivots.size()));
  CHECK_FALSE(first_difference(ch.at_t_one(), dims.shifted(0, Rational(1, 2))));

  const auto& h0 = spec_for(ModuleLabel::h0);
  CHECK_FALSE(first_difference(refined_character(h0, 15), theorem_rhs(CharacterFormula::T1, 15)));
  const auto& sixteenth = spec_for(ModuleLabel::h1_16);
  CHECK_FALSE(first_difference(refined_character(sixteenth, 16), theorem_rhs(CharacterFormula::T5, 16)));
}

TEST_CASE("cross_check report") {
  auto report = cross_check(spec_for(ModuleLabel::h1_2), 12);
  CHECK(report.pass());
  CHECK(report.rows.size() == 13);
  CHECK(report.tsv().rfind("n\tp(n)\trank", 0) == 0);
  auto j = report.to_json();
  CHECK(j["label"] == "h1/2");
  CHECK(j["pass"] == true);
  CHECK(j["rows"][4]["rank"] == 3);
  CHECK(cross_check(spec_for(ModuleLabel::h0), 12).pass());
  CHECK(cross_check(spec_for(ModuleLabel::h1_16), 14).pass());
}

TEST_CASE("u^K fixtures") {
  const auto& half = spec_for(ModuleLabel::h1_2);
  const VermaSpec& V = half.verma;
  const std::vector<std::pair<Partition, PBWVector>> expected{
      {{2}, vec(V, 2, {{{2}, 1}, {{1, 1}, Rational(-3, 4)}})},
      {{1, 1, 1}, vec(V, 3, {{{1, 1, 1}, 1}})},
      {{3, 1, 1}, vec(V, 5, {{{3, 1, 1}, 1}})},
      {{3, 3}, vec(V, 6, {{{3, 3}, 1}, {{4, 1, 1}, Rational(1, 3)}})},
      {{4, 3, 1}, vec(V, 8, {{{4, 3, 1}, 1}})},
      {{4, 4, 1}, vec(V, 9, {{{4, 4, 1}, 1}, {{5, 3, 1}, Rational(9, 8)}})},
      {{5, 4, 1, 1}, vec(V, 11, {{{5, 4, 1, 1}, 1}})},
      {{6, 5, 3, 1}, vec(V, 15, {{{6, 5, 3, 1}, 1}})},
  };
  auto got = uK_fixtures(half);
  REQUIRE(got.size() == expected.size());
  for (std::size_t i = 0; i < got.size(); ++i) {
    CAPTURE(got[i].first.str());
    CAPTURE(got[i].second.str());
    CHECK(got[i].first == expected[i].first);
    CHECK(got[i].second == expected[i].second);
  }
  CHECK_THROWS_AS(uK_fixtures(spec_for(ModuleLabel::h1_16)), std::invalid_argument);
}

TEST_CASE("generators are checked for singularity") {
  auto spec = spec_for(ModuleLabel::h1_2);
  VermaModule m(spec.verma);
  for (const auto& g : spec.generators) {
    CHECK(m.apply_mode(1, g).is_zero());
    CHECK(m.apply_mode(2, g).is_zero());
  }
  // The weight-6 vacuum generator is the solver's output, leading coefficient 1.
  const auto& h0 = spec_for(ModuleLabel::h0);
  CHECK(h0.generators.size() == 2);
  CHECK(h0.generators[1].weight() == 6);
  CHECK(h0.generators[1].coefficient(h0.generators[1].leading_monomial()) == 1);
}
