#include "ising_pbw/nahm.hpp"

#include <random>
#include <stdexcept>

namespace ising_pbw {

namespace {

using Series = std::vector<Integer>;

// Coefficients of 1/(q)_k up to q^N for k = 0..k_max, via
// 1/(1-q^k) · s  ⇔  out[i] = s[i] + out[i-k].
std::vector<Series> inverse_pochhammers(int k_max, int N) {
  std::vector<Series> inv;
  inv.reserve(static_cast<std::size_t>(k_max) + 1);
  Series one(static_cast<std::size_t>(N) + 1, 0);
  one[0] = 1;
  inv.push_back(one);
  for (int k = 1; k <= k_max; ++k) {
    Series s = inv.back();
    for (int i = k; i <= N; ++i) s[i] += s[i - k];
    inv.push_back(std::move(s));
  }
  return inv;
}

long quadratic_exponent(const NahmParams& p, long k1, long k2) {
  return 4 * k1 * k1 + 3 * k1 * k2 + k2 * k2 + p.a * k1 + p.b * k2 + p.c;
}

}  // namespace

std::string NahmParams::str() const {
  return "f_{" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + "," + std::to_string(d) + "}";
}

BiPoly eval_f(const NahmParams& p, int N) {
  if (p.a < 0 || p.b < 0 || p.c < 0 || p.d < 0) throw std::invalid_argument("Nahm parameters must be natural");
  BiPoly out(1, N);
  // k ≤ √N bounds both indices since 4k1² ≤ N and k2² ≤ N.
  int k_max = 0;
  while ((k_max + 1) * (k_max + 1) <= N) ++k_max;
  const auto inv = inverse_pochhammers(k_max, N);
  for (long k1 = 0; quadratic_exponent(p, k1, 0) <= N; ++k1) {
    for (long k2 = 0;; ++k2) {
      const long e = quadratic_exponent(p, k1, k2);
      if (e > N) break;
      const int t = static_cast<int>(4 * k1 + 2 * k2 + p.d);
      const Series& x = inv[k1];
      const Series& y = inv[k2];
      const long room = N - e;
      for (long i = 0; i <= room; ++i) {
        Integer acc = 0;
        for (long j = 0; j <= i; ++j) acc += x[j] * y[i - j];
        out.add_term(t, e + i, Rational(acc));
      }
    }
  }
  return out;
}

BiPoly eval_f_sum(const std::vector<NahmParams>& ps, int q_truncation) {
  BiPoly out(1, q_truncation);
  for (const auto& p : ps) out += eval_f(p, q_truncation);
  return out;
}

BiPoly p_series(const PatternSet& patterns, const std::optional<TailPattern>& tail, int q_truncation) {
  BiPoly out(1, q_truncation);
  for (int n = 0; n <= q_truncation; ++n)
    for (const auto& lambda : enumerate_P(patterns, n))
      if (!tail || tail->matches(lambda)) out.add_term(length(lambda), n, 1);
  return out;
}

IdentityCheck compare_series(std::string name, const BiPoly& lhs, const BiPoly& rhs) {
  IdentityCheck check{std::move(name), false, first_difference(lhs, rhs)};
  check.pass = !check.first.has_value();
  return check;
}

std::string Lemma1Instance::str() const {
  static const char* names[] = {"i", "ii", "iii", "iv"};
  std::string s = std::string("(") + names[static_cast<int>(variant)] + ") " + params.str();
  if (variant == Lemma1Variant::i) s += " m=" + std::to_string(m);
  return s + " n=" + n.get_str();
}

IdentityCheck check_lemma1(const Lemma1Instance& inst, int N) {
  const NahmParams& p = inst.params;
  const Rational& n = inst.n;
  auto require_natural = [&](const Rational& x, const char* what) {
    if (x < 0 || x.get_den() != 1) throw std::invalid_argument(std::string(what) + " must be a natural number");
    return static_cast<int>(x.get_num().get_si());
  };

  BiPoly lhs, rhs;
  switch (inst.variant) {
    case Lemma1Variant::i: {
      if (inst.m < 0) throw std::invalid_argument("variant i: m must be a natural number");
      const int ni = require_natural(n, "variant i: n");
      lhs = eval_f(p, N).shifted(inst.m, n);
      rhs = eval_f({p.a, p.b, p.c + ni, p.d + inst.m}, N + ni);
      break;
    }
    case Lemma1Variant::ii: {
      Rational twice = 2 * n;
      if (n < 0 || twice.get_den() != 1) throw std::invalid_argument("variant ii: n must lie in (1/2)N");
      if (p.d % 2 != 0) throw std::invalid_argument("variant ii: d must be even");
      const Rational shift_a = 4 * n, shift_b = 2 * n, shift_c = p.d * n;
      lhs = eval_f(p, N).rescaled(static_cast<int>(n.get_den().get_si())).substitute_t(n);
      rhs = eval_f({p.a + static_cast<int>(shift_a.get_num().get_si()), p.b + static_cast<int>(shift_b.get_num().get_si()),
                    p.c + static_cast<int>(shift_c.get_num().get_si()), p.d},
                   N);
      break;
    }
    case Lemma1Variant::iii: {
      const int ni = require_natural(n, "variant iii: n");
      if (ni < 1) throw std::invalid_argument("variant iii: n must be positive");
      lhs = eval_f(p, N) - eval_f({p.a + ni, p.b, p.c, p.d}, N);
      rhs = BiPoly(1, N);
      for (int k = 0; k < ni; ++k) rhs += eval_f({p.a + 8 + k, p.b + 3, p.a + p.c + 4 + k, p.d + 4}, N);
      break;
    }
    case Lemma1Variant::iv: {
      const int ni = require_natural(n, "variant iv: n");
      if (ni < 1) throw std::invalid_argument("variant iv: n must be positive");
      lhs = eval_f(p, N) - eval_f({p.a, p.b + ni, p.c, p.d}, N);
      rhs = BiPoly(1, N);
      for (int k = 0; k < ni; ++k) rhs += eval_f({p.a + 3, p.b + 2 + k, p.b + p.c + 1 + k, p.d + 2}, N);
      break;
    }
  }
  return compare_series(inst.str(), lhs, rhs);
}

std::vector<Lemma1Instance> catalogued_lemma1_instances() {
  using V = Lemma1Variant;
  const Rational half(1, 2);
  return {
      // p_{4,3} = f_{3,2,0,0} - f_{4,2,0,0}
      {V::iii, {3, 2, 0, 0}, 0, 1},
      {V::iii, {3, 2, 0, 0}, 0, 3},
      {V::iv, {6, 2, 0, 0}, 0, 2},
      // substitutions t ↦ t q^{1/2}, t ↦ t q in the recurrences
      {V::ii, {6, 4, 0, 0}, 0, half},
      {V::ii, {9, 5, 4, 2}, 0, half},
      {V::ii, {11, 5, 7, 4}, 0, half},
      {V::ii, {13, 6, 9, 4}, 0, half},
      {V::ii, {12, 6, 8, 4}, 0, half},
      {V::ii, {8, 5, 3, 2}, 0, 1},
      {V::ii, {11, 6, 8, 4}, 0, 1},
      // multiplication by t^2 q^3 and t q
      {V::i, {8, 5, 0, 0}, 2, 3},
      {V::i, {11, 6, 5, 2}, 2, 3},
      {V::i, {15, 7, 11, 4}, 2, 3},
      {V::i, {6, 4, 0, 0}, 1, 1},
      {V::i, {9, 5, 4, 2}, 1, 1},
      {V::i, {13, 6, 9, 4}, 1, 1},
      {V::i, {8, 5, 3, 2}, 1, 1},
      {V::i, {11, 6, 8, 4}, 1, 1},
      {V::i, {6, 4, 1, 1}, 1, 1},
      {V::i, {9, 5, 5, 3}, 1, 1},
      // splitting f_{5,2,1,1} and f_{6,3,2,2}
      {V::iii, {5, 2, 1, 1}, 0, 1},
      {V::iv, {5, 2, 1, 1}, 0, 2},
      {V::iv, {6, 3, 2, 2}, 0, 1},
      {V::iii, {2, 2, 0, 0}, 0, 1},
      {V::iv, {1, 1, 0, 0}, 0, 1},
  };
}

std::vector<Lemma1Instance> random_lemma1_instances(int count, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> param(0, 10);
  std::uniform_int_distribution<int> shift(1, 4);
  std::vector<Lemma1Instance> out;
  for (int i = 0; i < count; ++i) {
    Lemma1Instance inst;
    inst.variant = i % 2 == 0 ? Lemma1Variant::iii : Lemma1Variant::iv;
    inst.params = {param(rng), param(rng), param(rng), param(rng)};
    inst.n = shift(rng);
    out.push_back(inst);
  }
  return out;
}

BiPoly theorem_rhs(CharacterFormula which, int N) {
  constexpr int kScale = 16;
  switch (which) {
    case CharacterFormula::T1:
      return (eval_f({0, 0, 0, 0}, N) - eval_f({1, 0, 0, 0}, N) + eval_f({1, 1, 0, 0}, N)).rescaled(kScale);
    case CharacterFormula::T3:
      return eval_f_sum({{3, 2, 0, 0}, {5, 2, 1, 1}, {6, 3, 2, 2}}, N).rescaled(kScale).shifted(0, Rational(1, 2));
    case CharacterFormula::T5:
      return eval_f_sum({{1, 1, 0, 0}, {4, 2, 1, 1}, {7, 3, 3, 3}}, N).rescaled(kScale).shifted(0, Rational(1, 16));
  }
  throw std::invalid_argument("unknown character formula");
}

std::string to_string(TailLemma which) {
  switch (which) {
    case TailLemma::L2: return "L2";
    case TailLemma::L3: return "L3";
    case TailLemma::L4: return "L4";
    case TailLemma::L5: return "L5";
    case TailLemma::L12: return "L12";
    case TailLemma::L13: return "L13";
  }
  return "?";
}

TailLemma parse_tail_lemma(const std::string& text) {
  for (auto l : {TailLemma::L2, TailLemma::L3, TailLemma::L4, TailLemma::L5, TailLemma::L12, TailLemma::L13})
    if (to_string(l) == text) return l;
  throw std::invalid_argument("unknown lemma '" + text + "'");
}

namespace {

TailPattern tail(std::initializer_list<TailItem> items) { return TailPattern{items}; }
TailItem gt(int v) { return TailItem::gt(v); }
TailItem eq(int v) { return TailItem::eq(v); }

}  // namespace

std::vector<TailClosedForm> tail_closed_forms(TailLemma which) {
  const auto half = ModuleLabel::h1_2;
  const auto sixteenth = ModuleLabel::h1_16;
  switch (which) {
    case TailLemma::L2:
      return {
          {half, tail({gt(2)}), {{3, 2, 0, 0}}},
          {half, tail({gt(4)}), {{6, 4, 0, 0}}},
          {half, tail({gt(5), eq(4)}), {{9, 5, 4, 2}}},
          {half, tail({eq(5), eq(4)}), {{13, 6, 9, 4}}},
          {half, tail({eq(4), eq(4)}), {{12, 6, 8, 4}}},
          {half, tail({gt(5), eq(3)}), {{8, 5, 3, 2}}},
          {half, tail({gt(6), eq(5), eq(3)}), {{11, 6, 8, 4}}},
          {half, tail({eq(6), eq(5), eq(3)}), {{15, 7, 14, 6}}},
          {half, tail({eq(4), eq(3)}), {{11, 5, 7, 4}}},
      };
    case TailLemma::L3:
      return {
          {half, tail({gt(2), eq(1)}), {{5, 2, 1, 1}}},
          {half, tail({gt(4), eq(1)}), {{6, 4, 1, 1}}},
          {half, tail({gt(5), eq(4), eq(1)}), {{9, 5, 5, 3}}},
          {half, tail({eq(5), eq(4), eq(1)}), {{13, 6, 10, 5}}},
          {half, tail({gt(5), eq(3), eq(1)}), {{8, 5, 4, 3}}},
          {half, tail({eq(5), eq(3), eq(1)}), {{11, 6, 9, 5}}},
      };
    case TailLemma::L4:
      // The header and the displayed formula name different tails; both are checked.
      return {
          {half, tail({gt(3), eq(1), eq(1)}), {{6, 3, 2, 2}}},
          {half, tail({gt(2), eq(1), eq(1)}), {{6, 3, 2, 2}}},
          {half, tail({gt(4), eq(1), eq(1)}), {{6, 4, 2, 2}}},
          {half, tail({eq(4), eq(1), eq(1)}), {{9, 5, 6, 4}}},
      };
    case TailLemma::L5:
      return {{half, std::nullopt, {{3, 2, 0, 0}, {5, 2, 1, 1}, {6, 3, 2, 2}}}};
    case TailLemma::L12:
      return {
          {sixteenth, tail({gt(2)}), {{2, 2, 0, 0}}},
          {sixteenth, tail({gt(2), eq(1)}), {{4, 2, 1, 1}}},
          {sixteenth, tail({gt(2), eq(1), eq(1)}), {{9, 4, 5, 4}, {5, 3, 2, 2}}},
          {sixteenth, tail({gt(3), eq(1), eq(1), eq(1)}), {{7, 3, 3, 3}}},
      };
    case TailLemma::L13:
      return {{sixteenth, std::nullopt, {{1, 1, 0, 0}, {4, 2, 1, 1}, {7, 3, 3, 3}}}};
  }
  return {};
}

namespace {

// The eight recurrences among the tail series of P^{1/2} with tails ending in 3 or 4.
std::vector<IdentityCheck> lemma2_recurrences(int N) {
  const auto R = PatternSet::for_module(ModuleLabel::h1_2);
  auto ps = [&](std::initializer_list<TailItem> items) { return p_series(R, tail(items), N).rescaled(2); };
  const BiPoly gt4 = ps({gt(4)});
  const BiPoly gt54 = ps({gt(5), eq(4)});
  const BiPoly p54 = ps({eq(5), eq(4)});
  const BiPoly p44 = ps({eq(4), eq(4)});
  const BiPoly gt53 = ps({gt(5), eq(3)});
  const BiPoly gt653 = ps({gt(6), eq(5), eq(3)});
  const BiPoly p653 = ps({eq(6), eq(5), eq(3)});
  const BiPoly p43 = ps({eq(4), eq(3)});
  const Rational half(1, 2);
  auto s = [&](const BiPoly& x) { return x.substitute_t(half); };
  auto s1 = [&](const BiPoly& x) { return x.substitute_t(1); };
  auto t2q = [](const BiPoly& x, int qe) { return x.shifted(2, qe); };

  std::vector<IdentityCheck> out;
  out.push_back(compare_series("recurrence p_{>4}", gt4, s(p44) + s(p54) + s(gt54) + s(gt4)));
  out.push_back(compare_series("recurrence p_{>5,4}", gt54, s(p653) + s(gt653) + s(gt53)));
  out.push_back(compare_series("recurrence p_{5,4}", p54, s(p43)));
  out.push_back(compare_series("recurrence p_{4,4}", p44, t2q(s1(gt653), 3) + t2q(s1(gt53), 3)));
  out.push_back(compare_series("recurrence p_{>5,3}", gt53, t2q(s(gt4), 3)));
  out.push_back(compare_series("recurrence p_{>6,5,3}", gt653, t2q(s(gt54), 3)));
  out.push_back(compare_series("recurrence p_{6,5,3}", p653, t2q(s(p54), 3)));
  out.push_back(compare_series("recurrence p_{4,3}", p43, t2q(s(p44), 3) + t2q(s(gt54), 2)));
  out.push_back(compare_series("disjoint union p_{>2}", ps({gt(2)}),
                               p43 + p653 + gt653 + gt53 + p44 + p54 + gt54 + gt4));
  return out;
}

}  // namespace

std::vector<IdentityCheck> check_tail_closed_forms(TailLemma which, int N) {
  std::vector<IdentityCheck> out;
  for (const auto& form : tail_closed_forms(which)) {
    const auto R = PatternSet::for_module(form.module);
    std::string lhs_name = "p" + (form.tail ? "_{" + form.tail->str() + "}" : std::string());
    std::string rhs_name;
    for (const auto& p : form.rhs) rhs_name += (rhs_name.empty() ? "" : " + ") + p.str();
    out.push_back(compare_series(to_string(which) + " " + to_string(form.module) + " " + lhs_name + " = " + rhs_name,
                                 p_series(R, form.tail, N), eval_f_sum(form.rhs, N)));
  }
  if (which == TailLemma::L2) {
    auto rec = lemma2_recurrences(N);
    out.insert(out.end(), rec.begin(), rec.end());
  }
  return out;
}

}  // namespace ising_pbw
