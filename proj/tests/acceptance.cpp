// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ising_pbw/nahm.hpp"
#include "ising_pbw/reduction.hpp"
#include "ising_pbw/virasoro.hpp"

using namespace ising_pbw;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

// Collects the reasons a criterion failed; an empty list means it passed.
struct Findings {
  std::vector<std::string> problems;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    if (!ok) problems.push_back(what);
  }
  void note(const std::string& s) { notes.push_back(s); }
};

PBWVector vec(const VermaSpec& spec, int w, std::initializer_list<std::pair<Partition, Rational>> terms) {
  PBWVector v(spec, w);
  for (const auto& [lambda, c] : terms) v.add_term(lambda, c);
  return v;
}

bool proportional(const PBWVector& a, const PBWVector& b) {
  return !a.is_zero() && !b.is_zero() && a.normalized() == b.normalized();
}

bool has(const std::vector<Partition>& v, const Partition& p) { return std::find(v.begin(), v.end(), p) != v.end(); }

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2fs", s);
  return buf;
}

class Harness {
 public:
  void run(int k, const std::string& title, const std::function<void(Findings&)>& body) {
    Findings f;
    const auto t0 = Clock::now();
    try {
      body(f);
    } catch (const std::exception& e) {
      f.problems.push_back(std::string("exception: ") + e.what());
    }
    const double dt = seconds_since(t0);
    const bool pass = f.problems.empty();
    failed_ += pass ? 0 : 1;
    std::cout << (pass ? "PASS" : "FAIL") << " criterion " << k << ": " << title << " [" << fmt_seconds(dt) << "]";
    for (const auto& n : f.notes) std::cout << "; " << n;
    std::cout << '\n';
    for (const auto& p : f.problems) std::cout << "     - " << p << '\n';
    std::cout << std::flush;
  }
  int failed() const { return failed_; }

 private:
  int failed_ = 0;
};

}  // namespace

int main() {
  const ModuleSpec h0 = ModuleSpec::for_label(ModuleLabel::h0);
  const ModuleSpec half = ModuleSpec::for_label(ModuleLabel::h1_2);
  const ModuleSpec sixteenth = ModuleSpec::for_label(ModuleLabel::h1_16);

  std::map<int, PivotSets> piv_half;
  std::map<int, PivotSets> piv_sixteenth;
  std::map<int, PivotSets> piv_h0;

  Harness h;

  h.run(1, "A^W_4 golden matrix and pivots (h1/2)", [&](Findings& f) {
    const auto t0 = Clock::now();
    const auto e = rref(half, build_An(half, 4));
    const double dt = seconds_since(t0);
    f.require(e.column_order == std::vector<Partition>{{2, 2}, {2, 1, 1}, {1, 1, 1, 1}, {3, 1}, {4}},
              "column order differs");
    f.require(e.pivots == std::vector<Partition>{{2, 2}, {2, 1, 1}, {1, 1, 1, 1}}, "pivots differ");
    const std::vector<std::vector<Rational>> expected{{1, 0, 0, Rational(-3, 16), Rational(-15, 8)},
                                                      {0, 1, 0, Rational(-1, 4), Rational(-5, 2)},
                                                      {0, 0, 1, -3, -6}};
    f.require(e.rows.size() == 3, "expected 3 rows, got " + std::to_string(e.rows.size()));
    for (std::size_t i = 0; i < std::min<std::size_t>(3, e.rows.size()); ++i)
      for (std::size_t j = 0; j < 5; ++j)
        f.require(e.rows[i].coefficient(e.column_order[j]) == expected[i][j],
                  "entry (" + std::to_string(i) + "," + std::to_string(j) + ") = " +
                      to_string(e.rows[i].coefficient(e.column_order[j])));
    f.require(dt < 1.0, "took " + fmt_seconds(dt) + ", limit 1s");
  });

  h.run(2, "exceptional partitions are pivots at their weights", [&](Findings& f) {
    auto t0 = Clock::now();
    piv_half = pivots_up_to(half, 15, 0);
    const double t_half = seconds_since(t0);
    t0 = Clock::now();
    piv_sixteenth = pivots_up_to(sixteenth, 25, 0);
    const double t_sixteenth = seconds_since(t0);

    const std::vector<int> w_half{2, 3, 5, 6, 8, 9, 11, 15};
    const std::vector<int> w_sixteenth{2, 4, 6, 7, 8, 10, 12, 13, 16, 17, 20, 25};
    auto check = [&](const ModuleSpec& spec, const std::map<int, PivotSets>& piv, const std::vector<int>& ws) {
      const auto& ex = spec.patterns.exceptional;
      f.require(ex.size() == ws.size(), to_string(spec.label) + ": wrong number of exceptional partitions");
      for (std::size_t i = 0; i < std::min(ex.size(), ws.size()); ++i) {
        f.require(weight(ex[i]) == ws[i], ex[i].str() + " has weight " + std::to_string(weight(ex[i])));
        f.require(piv.count(ws[i]) && has(piv.at(ws[i]).pivots, ex[i]),
                  to_string(spec.label) + ": " + ex[i].str() + " is not a pivot at weight " + std::to_string(ws[i]));
      }
    };
    check(half, piv_half, w_half);
    check(sixteenth, piv_sixteenth, w_sixteenth);
    f.note("h1/2 to 15 in " + fmt_seconds(t_half) + ", h1/16 to 25 in " + fmt_seconds(t_sixteenth));
    f.require(t_half < 10.0, "h1/2 took " + fmt_seconds(t_half) + ", limit 10s");
    f.require(t_sixteenth < 600.0, "h1/16 took " + fmt_seconds(t_sixteenth) + ", limit 600s");
  });

  h.run(3, "non-pivots equal P(n) (n <= 15, 15, 25)", [&](Findings& f) {
    piv_h0 = pivots_up_to(h0, 15, 0);
    for (const auto* r : {&piv_h0, &piv_half, &piv_sixteenth})
      f.require(!r->empty(), "missing pivot data");
    const std::vector<std::pair<const ModuleSpec*, const std::map<int, PivotSets>*>> runs{
        {&h0, &piv_h0}, {&half, &piv_half}, {&sixteenth, &piv_sixteenth}};
    for (const auto& [spec, piv] : runs) {
      const auto report = cross_check(*spec, *piv);
      for (const auto& row : report.rows)
        f.require(row.pass(), to_string(spec->label) + " weight " + std::to_string(row.n) + ": basis " +
                                  std::to_string(row.basis) + " vs |P(n)| " + std::to_string(row.pattern_avoiding));
      f.note(to_string(spec->label) + " n <= " + std::to_string(report.max_weight));
    }
  });

  h.run(4, "refined characters equal T1, T3, T5", [&](Findings& f) {
    const std::vector<std::tuple<const ModuleSpec*, const std::map<int, PivotSets>*, CharacterFormula, int>> runs{
        {&h0, &piv_h0, CharacterFormula::T1, 15},
        {&half, &piv_half, CharacterFormula::T3, 15},
        {&sixteenth, &piv_sixteenth, CharacterFormula::T5, 25}};
    for (const auto& [spec, piv, formula, N] : runs) {
      const auto lhs = refined_character(*spec, *piv, N);
      const auto rhs = theorem_rhs(formula, N);
      const auto d = first_difference(lhs, rhs);
      f.require(!d, to_string(spec->label) + ": " + (d ? d->str() : ""));
      f.require(lhs.q_truncation() == rhs.q_truncation(),
                to_string(spec->label) + ": precision " + to_string(lhs.q_truncation()) + " vs " +
                    to_string(rhs.q_truncation()));
    }
  });

  h.run(5, "tail closed forms and transformation rules at q^25", [&](Findings& f) {
    const auto t0 = Clock::now();
    std::size_t checks = 0;
    for (auto l : {TailLemma::L2, TailLemma::L3, TailLemma::L4, TailLemma::L12, TailLemma::L13})
      for (const auto& r : check_tail_closed_forms(l, 25)) {
        ++checks;
        f.require(r.pass, r.name + ": " + (r.first ? r.first->str() : ""));
      }
    auto instances = catalogued_lemma1_instances();
    const auto random = random_lemma1_instances(50, 2024);
    instances.insert(instances.end(), random.begin(), random.end());
    for (const auto& inst : instances) {
      ++checks;
      const auto r = check_lemma1(inst, 25);
      f.require(r.pass, r.name + ": " + (r.first ? r.first->str() : ""));
    }
    const double dt = seconds_since(t0);
    f.note(std::to_string(checks) + " identities");
    f.require(dt < 30.0, "took " + fmt_seconds(dt) + ", limit 30s");
  });

  h.run(6, "singular vectors at levels 2, 4 and 6", [&](Findings& f) {
    const VermaSpec& vh = half.verma;
    const VermaSpec& vs = sixteenth.verma;
    const VermaSpec& v0 = h0.verma;

    const auto s_half = singular_vectors(vh, 2);
    f.require(s_half.size() == 1 && proportional(s_half[0], vec(vh, 2, {{{1, 1}, 1}, {{2}, Rational(-4, 3)}})),
              "(1/2,1/2) level 2");

    const auto u2 = vec(vs, 2, {{{2}, 1}, {{1, 1}, Rational(-4, 3)}});
    const auto s2 = singular_vectors(vs, 2);
    f.require(s2.size() == 1 && proportional(s2[0], u2), "(1/2,1/16) level 2");

    const auto u4 = vec(vs, 4,
                        {{{2, 2}, 1},
                         {{2, 1, 1}, Rational(-600, 49)},
                         {{1, 1, 1, 1}, Rational(144, 49)},
                         {{3, 1}, Rational(264, 49)},
                         {{4}, Rational(-36, 49)}});
    const auto s4 = singular_vectors(vs, 4);
    f.require(apply_mode(1, u4).is_zero() && apply_mode(2, u4).is_zero(), "u4 is not singular");
    f.require(s4.size() == 1 && proportional(s4[0], u4),
              "(1/2,1/16) level 4: " + std::to_string(s4.size()) + " vectors, expected one multiple of u4");

    const auto s6 = singular_vectors(v0, 6);
    f.require(s6.size() == 1, "(1/2,0) level 6 has " + std::to_string(s6.size()) + " vectors");
    if (s6.size() == 1) {
      PBWVector reduced(v0, 6);
      for (const auto& [lambda, c] : s6[0].terms())
        if (lambda.ones() == 0) reduced.add_term(lambda, c);
      const auto a34 = vec(v0, 6,
                           {{{2, 2, 2}, 1}, {{3, 3}, Rational(93, 64)}, {{6}, Rational(-27, 16)}, {{4, 2}, Rational(-33, 8)}});
      f.require(proportional(reduced, a34), "(1/2,0) level 6 does not reduce to a_{3,4}: " + reduced.str());
    }
  });

  h.run(7, "u^K fixtures for the eight exceptional pivots", [&](Findings& f) {
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
    const auto got = uK_fixtures(half);
    f.require(got.size() == expected.size(), "got " + std::to_string(got.size()) + " fixtures");
    for (std::size_t i = 0; i < std::min(got.size(), expected.size()); ++i)
      f.require(got[i].first == expected[i].first && got[i].second == expected[i].second,
                expected[i].first.str() + ": got " + got[i].second.str());
  });

  h.run(8, "property suites", [&](Findings& f) {
    // Commutator consistency on M(1/2,1/2).
    {
      VermaModule M(half.verma);
      const auto& c = half.verma.c;
      std::size_t bad = 0;
      for (int n = 0; n <= 8; ++n)
        for (const auto& lambda : partitions_of(n)) {
          const auto v = PBWVector::monomial(half.verma, lambda);
          for (int m = -4; m <= 4; ++m)
            for (int k = -4; k <= 4; ++k) {
              auto lhs = M.apply_mode(m, M.apply_mode(k, v)) - M.apply_mode(k, M.apply_mode(m, v));
              auto rhs = Rational(m - k) * M.apply_mode(m + k, v);
              if (m == -k) rhs += ratio(m * m * m - m, 12) * c * v;
              bad += lhs == rhs ? 0 : 1;
            }
        }
      f.require(bad == 0, std::to_string(bad) + " commutator violations");
    }
    // compare_pbw is a strict total order on weights <= 12.
    {
      std::vector<Partition> all;
      for (int n = 0; n <= 12; ++n) {
        auto ps = partitions_of(n);
        all.insert(all.end(), ps.begin(), ps.end());
      }
      bool ok = true;
      for (const auto& a : all)
        for (const auto& b : all) {
          const auto ab = compare_pbw(a, b);
          ok = ok && ((ab == 0) == (a == b)) && ((ab < 0) == (compare_pbw(b, a) > 0));
        }
      sort_pbw_descending(all);
      for (std::size_t i = 0; i < all.size() && ok; ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j) ok = ok && compare_pbw(all[i], all[j]) > 0;
      f.require(ok, "compare_pbw order axioms");
    }
    // λ ∈ P^{1/2} iff no pattern-containing η has u_η | u_λ, for n <= 30.
    {
      const auto& R = half.patterns;
      for (int n = 0; n <= 30; ++n) {
        std::set<Partition> alternative;
        for (const auto& lambda : partitions_of(n)) {
          std::vector<std::pair<int, int>> mult;
          for (int x : lambda.parts()) {
            if (x == 1) break;
            if (mult.empty() || mult.back().first != x)
              mult.push_back({x, 1});
            else
              ++mult.back().second;
          }
          bool divisible = false;
          std::vector<int> pick(mult.size(), 0);
          while (!divisible) {
            std::vector<int> parts;
            for (std::size_t i = 0; i < mult.size(); ++i) parts.insert(parts.end(), pick[i], mult[i].first);
            parts.insert(parts.end(), lambda.ones(), 1);
            const Partition eta(parts);
            if (contains_pattern(eta, R) && u_divides(eta, lambda)) divisible = true;
            std::size_t i = 0;
            while (i < pick.size() && pick[i] == mult[i].second) pick[i++] = 0;
            if (i == pick.size()) break;
            ++pick[i];
          }
          if (!divisible) alternative.insert(lambda);
        }
        const auto P = enumerate_P(R, n);
        f.require(std::set<Partition>(P.begin(), P.end()) == alternative,
                  "divisibility description of P^{1/2} fails at n = " + std::to_string(n));
      }
    }
    // Pivots persist when a part is inserted.
    {
      constexpr int kTop = 16;
      for (const auto* spec : {&h0, &half, &sixteenth}) {
        const auto piv = pivots_up_to(*spec, kTop, 0);
        std::map<int, std::set<Partition>> sets;
        for (const auto& [n, s] : piv) sets[n] = {s.pivots.begin(), s.pivots.end()};
        std::size_t bad = 0;
        for (int n = 0; n <= 12; ++n)
          for (const auto& lambda : sets[n]) {
            for (int v = 2; n + v <= kTop; ++v) bad += sets[n + v].count(lambda.with_part(v)) ? 0 : 1;
            bad += sets[n + 1].count(lambda.with_part(1)) ? 0 : 1;
          }
        f.require(bad == 0, to_string(spec->label) + ": " + std::to_string(bad) + " monotonicity violations");
      }
    }
    // Ring axioms and truncation coherence of BiPoly.
    {
      std::mt19937 rng(12345);
      auto random_poly = [&](int den, long trunc) {
        std::uniform_int_distribution<int> count(0, 6), t(0, 3), q(0, static_cast<int>(trunc * den)), c(-5, 5);
        BiPoly p(den, trunc);
        for (int i = count(rng); i > 0; --i) p.add_term(t(rng), q(rng), ratio(c(rng), 1 + (i % 3)));
        return p;
      };
      std::size_t bad = 0;
      for (int iter = 0; iter < 200; ++iter) {
        const int den = iter % 3 == 0 ? 2 : 1;
        const BiPoly x = random_poly(den, 8), y = random_poly(1, 8), z = random_poly(den, 8);
        bad += first_difference(x + y, y + x) ? 1 : 0;
        bad += first_difference((x + y) + z, x + (y + z)) ? 1 : 0;
        bad += first_difference(x * (y + z), x * y + x * z) ? 1 : 0;
        bad += first_difference(x * y, y * x) ? 1 : 0;
        bad += first_difference((x * y) * z, x * (y * z)) ? 1 : 0;
        bad += first_difference(x - x, BiPoly(den, 8)) ? 1 : 0;
        const Rational N(5);
        bad += first_difference((x * y).truncated(N), (x.truncated(N) * y.truncated(N)).truncated(N)) ? 1 : 0;
      }
      f.require(bad == 0, std::to_string(bad) + " series axiom violations");
    }
  });

  std::cout << (h.failed() == 0 ? "all 8 acceptance criteria passed" : std::to_string(h.failed()) + " criteria failed")
            << '\n';
  return h.failed() == 0 ? 0 : 1;
}
