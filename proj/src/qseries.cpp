#include "ising_pbw/qseries.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace ising_pbw {

namespace {

long saturating_add(long a, long b) {
  if (a >= BiPoly::kExact || b >= BiPoly::kExact) return BiPoly::kExact;
  return std::min(a + b, BiPoly::kExact);
}

// q as a scaled exponent; throws if q·den is not an integer.
long scale_exponent(const Rational& q, int den) {
  Rational scaled = q * den;
  if (scaled.get_den() != 1)
    throw std::domain_error("q-exponent " + to_string(q) + " not representable with q_denominator " +
                            std::to_string(den));
  return scaled.get_num().get_si();
}

}  // namespace

std::string Discrepancy::str() const {
  return "t^" + std::to_string(t) + " q^" + to_string(q) + ": " + to_string(lhs) + " vs " + to_string(rhs);
}

BiPoly::BiPoly(int q_denominator, long q_truncation) : den_(q_denominator) {
  if (q_denominator < 1) throw std::invalid_argument("q_denominator must be positive");
  if (q_truncation < 0) throw std::invalid_argument("q_truncation must be non-negative");
  limit_ = q_truncation >= kExact / q_denominator ? kExact : q_truncation * q_denominator;
}

BiPoly BiPoly::exact_zero(int q_denominator) {
  BiPoly z(q_denominator, 0);
  z.limit_ = kExact;
  return z;
}

BiPoly BiPoly::constant(const Rational& value, int q_denominator, long q_truncation) {
  BiPoly p(q_denominator, q_truncation);
  p.add_term(0, 0, value);
  return p;
}

Rational BiPoly::q_truncation() const {
  Rational r(limit_, den_);
  r.canonicalize();
  return r;
}

Rational BiPoly::coefficient(int t, const Rational& q) const {
  auto it = terms_.find({scale_exponent(q, den_), t});
  return it == terms_.end() ? Rational(0) : it->second;
}

void BiPoly::add_term(int t, long q_scaled, const Rational& c) {
  if (q_scaled < 0) throw std::domain_error("negative q-exponent");
  if (q_scaled > limit_ || c == 0) return;
  Rational value = c;
  value.canonicalize();
  auto [it, inserted] = terms_.try_emplace({q_scaled, t}, value);
  if (!inserted) {
    it->second += value;
    if (it->second == 0) terms_.erase(it);
  }
}

BiPoly BiPoly::rescaled(int new_den) const {
  if (new_den % den_ != 0) throw std::invalid_argument("rescale target must be a multiple of q_denominator");
  const long factor = new_den / den_;
  BiPoly out(new_den, 0);
  out.limit_ = exact() ? kExact : limit_ * factor;
  for (const auto& [key, c] : terms_) out.terms_.emplace(SeriesKey{key.q_scaled * factor, key.t}, c);
  return out;
}

BiPoly BiPoly::truncated(const Rational& limit) const {
  BiPoly out = *this;
  Rational scaled = limit * den_;
  mpz_class floor_val;
  mpz_fdiv_q(floor_val.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  out.limit_ = std::min(limit_, floor_val.get_si());
  out.drop_beyond_limit();
  return out;
}

BiPoly BiPoly::shifted(int t_shift, const Rational& q_shift) const {
  if (t_shift < 0 || q_shift < 0) throw std::domain_error("shift exponents must be non-negative");
  const long qs = scale_exponent(q_shift, den_);
  BiPoly out(den_, 0);
  out.limit_ = saturating_add(limit_, qs);
  for (const auto& [key, c] : terms_) out.terms_.emplace(SeriesKey{key.q_scaled + qs, key.t + t_shift}, c);
  return out;
}

BiPoly BiPoly::substitute_t(const Rational& n) const {
  if (n < 0) throw std::domain_error("substitute_t needs n >= 0");
  BiPoly out(den_, 0);
  out.limit_ = limit_;
  for (const auto& [key, c] : terms_) {
    const long extra = scale_exponent(n * key.t, den_);
    out.add_term(key.t, key.q_scaled + extra, c);
  }
  return out;
}

BiPoly BiPoly::at_t_one() const {
  BiPoly out(den_, 0);
  out.limit_ = limit_;
  for (const auto& [key, c] : terms_) out.add_term(0, key.q_scaled, c);
  return out;
}

void BiPoly::reconcile(BiPoly& other) {
  if (den_ == other.den_) return;
  const int l = std::lcm(den_, other.den_);
  if (den_ != l) *this = rescaled(l);
  if (other.den_ != l) other = other.rescaled(l);
}

void BiPoly::drop_beyond_limit() {
  if (exact()) return;
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (it->first.q_scaled > limit_)
      it = terms_.erase(it);
    else
      ++it;
  }
}

BiPoly& BiPoly::operator+=(const BiPoly& other_in) {
  BiPoly other = other_in;
  reconcile(other);
  limit_ = std::min(limit_, other.limit_);
  drop_beyond_limit();
  for (const auto& [key, c] : other.terms_) add_term(key.t, key.q_scaled, c);
  return *this;
}

BiPoly& BiPoly::operator-=(const BiPoly& other) { return *this += other * Rational(-1); }

BiPoly& BiPoly::operator*=(const Rational& scalar) {
  if (scalar == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [key, c] : terms_) c *= scalar;
  return *this;
}

BiPoly operator*(const BiPoly& a_in, const BiPoly& b_in) {
  BiPoly a = a_in;
  BiPoly b = b_in;
  a.reconcile(b);
  auto valuation = [](const BiPoly& p) {
    return p.terms_.empty() ? BiPoly::kExact : p.terms_.begin()->first.q_scaled;
  };
  BiPoly out(a.den_, 0);
  out.limit_ = std::min(saturating_add(a.limit_, valuation(b)), saturating_add(b.limit_, valuation(a)));
  for (const auto& [ka, ca] : a.terms_) {
    if (ka.q_scaled > out.limit_) break;
    for (const auto& [kb, cb] : b.terms_) {
      const long q = ka.q_scaled + kb.q_scaled;
      if (q > out.limit_) break;
      out.add_term(ka.t + kb.t, q, ca * cb);
    }
  }
  return out;
}

std::optional<Discrepancy> first_difference(const BiPoly& a_in, const BiPoly& b_in) {
  BiPoly a = a_in;
  BiPoly b = b_in;
  a.reconcile(b);
  const long limit = std::min(a.limit_, b.limit_);
  auto ia = a.terms_.begin();
  auto ib = b.terms_.begin();
  auto report = [&](const SeriesKey& k, const Rational& x, const Rational& y) {
    Rational q(k.q_scaled, a.den_);
    q.canonicalize();
    return Discrepancy{k.t, q, x, y};
  };
  while (ia != a.terms_.end() || ib != b.terms_.end()) {
    const bool take_a = ib == b.terms_.end() || (ia != a.terms_.end() && ia->first < ib->first);
    const bool take_b = ia == a.terms_.end() || (ib != b.terms_.end() && ib->first < ia->first);
    const SeriesKey key = take_a ? ia->first : ib->first;
    if (key.q_scaled > limit) break;
    if (take_a) return report(key, ia->second, Rational(0));
    if (take_b) return report(key, Rational(0), ib->second);
    if (ia->second != ib->second) return report(key, ia->second, ib->second);
    ++ia;
    ++ib;
  }
  return std::nullopt;
}

nlohmann::json BiPoly::to_json() const {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [key, c] : terms_) terms.push_back({key.t, key.q_scaled, to_string(c)});
  return {{"q_denominator", den_}, {"terms", std::move(terms)}};
}

std::string BiPoly::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [key, c] : terms_) {
    Rational mag = abs(c);
    if (first)
      s += c < 0 ? "-" : "";
    else
      s += c < 0 ? " - " : " + ";
    first = false;
    const bool unit = key.t == 0 && key.q_scaled == 0;
    std::string mono;
    if (key.t == 1) mono += "t";
    if (key.t > 1) mono += "t^" + std::to_string(key.t);
    if (key.q_scaled != 0) {
      Rational q(key.q_scaled, den_);
      q.canonicalize();
      if (!mono.empty()) mono += " ";
      mono += q == 1 ? std::string("q") : "q^" + (q.get_den() == 1 ? q.get_num().get_str() : "(" + q.get_str() + ")");
    }
    if (mag != 1 || unit) s += mag.get_str() + (unit ? "" : " ");
    s += mono;
  }
  return s;
}

BiPoly poch(int n, int q_truncation) {
  BiPoly out = BiPoly::constant(1, 1, q_truncation);
  for (int j = 1; j <= n; ++j) {
    BiPoly factor = BiPoly::constant(1, 1, q_truncation);
    factor.add_term(0, j, -1);
    out = out * factor;
  }
  return out;
}

}  // namespace ising_pbw
