#pragma once

// Truncated bivariate series in (t, q) with exact rational coefficients.
//
// q-exponents are stored scaled by a global denominator so that the q^{1/2}
// and q^{1/16} offsets stay exact. Every series carries the q-precision up to
// which it is known; terms beyond it are absent by contract.

#include <climits>
#include <compare>
#include <map>
#include <optional>
#include <string>

#include <json.hpp>

#include "ising_pbw/rational.hpp"

namespace ising_pbw {

struct SeriesKey {
  long q_scaled = 0;
  int t = 0;
  friend auto operator<=>(const SeriesKey&, const SeriesKey&) = default;
};

/// First coefficient where two series disagree (q in real units).
struct Discrepancy {
  int t = 0;
  Rational q;
  Rational lhs;
  Rational rhs;
  std::string str() const;
};

class BiPoly {
 public:
  static constexpr long kExact = LONG_MAX / 4;

  /// Zero series known exactly up to q^{q_truncation}.
  explicit BiPoly(int q_denominator = 1, long q_truncation = 0);

  static BiPoly exact_zero(int q_denominator = 1);
  static BiPoly constant(const Rational& value, int q_denominator, long q_truncation);

  int q_denominator() const { return den_; }
  /// Largest scaled q-exponent that is known.
  long limit_scaled() const { return limit_; }
  Rational q_truncation() const;
  bool exact() const { return limit_ >= kExact; }

  const std::map<SeriesKey, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Coefficient of t^t q^q; q must be representable in this scale.
  Rational coefficient(int t, const Rational& q) const;
  /// Adds c·t^t q^{q_scaled/den}; dropped if beyond the precision.
  void add_term(int t, long q_scaled, const Rational& c);

  /// Same series over a finer scale; new_den must be a multiple of the current one.
  BiPoly rescaled(int new_den) const;
  /// Drops everything above q^{limit} (in real units).
  BiPoly truncated(const Rational& limit) const;

  /// Multiplication by t^t_shift q^q_shift; the precision moves with it.
  BiPoly shifted(int t_shift, const Rational& q_shift) const;
  /// t ↦ t·q^n. Throws std::domain_error if some exponent is not
  /// representable at the current scale.
  BiPoly substitute_t(const Rational& n) const;
  /// Specialization t = 1.
  BiPoly at_t_one() const;

  BiPoly& operator+=(const BiPoly& other);
  BiPoly& operator-=(const BiPoly& other);
  BiPoly& operator*=(const Rational& scalar);
  friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
  friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
  friend BiPoly operator*(BiPoly a, const Rational& s) { return a *= s; }
  friend BiPoly operator*(const BiPoly& a, const BiPoly& b);

  /// Coefficientwise equality up to the common precision.
  friend std::optional<Discrepancy> first_difference(const BiPoly& a, const BiPoly& b);

  /// {"q_denominator": d, "terms": [[t, q_scaled, "num/den"], ...]} sorted by (q_scaled, t).
  nlohmann::json to_json() const;
  /// Human-readable "1 + t^2 q^3 - ...".
  std::string str() const;

 private:
  void reconcile(BiPoly& other);
  void drop_beyond_limit();

  int den_ = 1;
  long limit_ = 0;
  std::map<SeriesKey, Rational> terms_;
};

/// (q)_n = ∏_{j=1}^n (1 - q^j), known up to q^{q_truncation}.
BiPoly poch(int n, int q_truncation);

}  // namespace ising_pbw
