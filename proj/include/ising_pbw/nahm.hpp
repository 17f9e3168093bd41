#pragma once

// The two-variable Nahm-type sums
//
//   f_{a,b,c,d}(t,q) = Σ_{k1,k2 ≥ 0} t^{4k1+2k2+d} q^{4k1²+3k1k2+k2²+a·k1+b·k2+c} / ((q)_{k1} (q)_{k2})
//
// and the identity checks built on them: the four transformation rules, the
// closed forms of the tail-restricted partition series, and the refined
// character right-hand sides of the three Ising modules.

#include <optional>
#include <string>
#include <vector>

#include "ising_pbw/partitions.hpp"
#include "ising_pbw/qseries.hpp"

namespace ising_pbw {

struct NahmParams {
  int a = 0;
  int b = 0;
  int c = 0;
  int d = 0;

  friend bool operator==(const NahmParams&, const NahmParams&) = default;
  /// "f_{a,b,c,d}"
  std::string str() const;
};

/// f_{a,b,c,d} known up to q^{q_truncation}.
BiPoly eval_f(const NahmParams& p, int q_truncation);

/// Σ of eval_f over a list of parameter tuples.
BiPoly eval_f_sum(const std::vector<NahmParams>& ps, int q_truncation);

/// Σ_{λ ∈ P(R), tail matches} t^{len λ} q^{Δ λ}, up to q^{q_truncation}.
BiPoly p_series(const PatternSet& patterns, const std::optional<TailPattern>& tail, int q_truncation);

/// Outcome of one coefficientwise identity check.
struct IdentityCheck {
  std::string name;
  bool pass = false;
  std::optional<Discrepancy> first;
};

IdentityCheck compare_series(std::string name, const BiPoly& lhs, const BiPoly& rhs);

enum class Lemma1Variant { i, ii, iii, iv };

/// One instance of the transformation rules:
///   (i)   t^m q^n f_{a,b,c,d} = f_{a,b,c+n,d+m}
///   (ii)  f_{a,b,c,d}(t q^n, q) = f_{a+4n,b+2n,c+dn,d}      (n ∈ ½ℕ, d even)
///   (iii) f_{a,b,c,d} - f_{a+n,b,c,d} = Σ_{k<n} f_{a+8+k,b+3,a+c+4+k,d+4}
///   (iv)  f_{a,b,c,d} - f_{a,b+n,c,d} = Σ_{k<n} f_{a+3,b+2+k,b+c+1+k,d+2}
struct Lemma1Instance {
  Lemma1Variant variant = Lemma1Variant::i;
  NahmParams params;
  int m = 0;     // t-shift, variant i only
  Rational n{0};  // q-shift / substitution exponent / index range

  std::string str() const;
};

/// Both sides computed independently and compared up to q_truncation.
/// Throws std::invalid_argument when the instance violates the variant's hypotheses.
IdentityCheck check_lemma1(const Lemma1Instance& inst, int q_truncation);

/// Instances used in deriving the closed forms of the tail series.
std::vector<Lemma1Instance> catalogued_lemma1_instances();
/// `count` instances of (iii)/(iv) with a,b,c,d ≤ 10 and 1 ≤ n ≤ 4 from a fixed seed.
std::vector<Lemma1Instance> random_lemma1_instances(int count, unsigned seed);

enum class CharacterFormula { T1, T3, T5 };

/// Right-hand side of the refined character formula, over q_denominator 16,
/// known up to q^{h + q_truncation}.
BiPoly theorem_rhs(CharacterFormula which, int q_truncation);

enum class TailLemma { L2, L3, L4, L5, L12, L13 };

std::string to_string(TailLemma which);
TailLemma parse_tail_lemma(const std::string& text);

/// One displayed closed form: p_{tail}(t,q) = Σ f_{params}.
struct TailClosedForm {
  ModuleLabel module;
  std::optional<TailPattern> tail;  // nullopt: the whole series p(t,q)
  std::vector<NahmParams> rhs;
};

std::vector<TailClosedForm> tail_closed_forms(TailLemma which);

/// Compares each catalogued closed form of `which` by enumeration vs eval_f.
/// For L2 the eight recurrences of the proof are checked as well.
std::vector<IdentityCheck> check_tail_closed_forms(TailLemma which, int q_truncation);

}  // namespace ising_pbw
