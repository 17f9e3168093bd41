#pragma once

// Virasoro modes acting on Verma modules M(c,h) in the PBW basis
// L_λ|h⟩ = L_{-λ1}...L_{-λm}|h⟩, with
//   [L_m, L_n] = (m-n) L_{m+n} + δ_{m,-n} (m³-m)/12 · c.

#include <cstddef>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ising_pbw/partitions.hpp"
#include "ising_pbw/rational.hpp"

namespace ising_pbw {

struct VermaSpec {
  Rational c;
  Rational h;

  friend bool operator==(const VermaSpec& a, const VermaSpec& b) { return a.c == b.c && a.h == b.h; }
  /// "(c,h) = (1/2,1/16)"
  std::string str() const;
};

/// A vector of M(c,h)_{h+weight}. Zero vectors keep their weight; a negative
/// weight is allowed only for the zero vector.
class PBWVector {
 public:
  using Terms = std::unordered_map<Partition, Rational, PartitionHash>;

  PBWVector(VermaSpec spec, int weight);

  /// |h⟩
  static PBWVector highest_weight(const VermaSpec& spec);
  /// coeff · L_λ|h⟩
  static PBWVector monomial(const VermaSpec& spec, const Partition& lambda, const Rational& coeff = 1);

  const VermaSpec& spec() const { return spec_; }
  int weight() const { return weight_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  Rational coefficient(const Partition& lambda) const;

  /// Throws std::invalid_argument if λ is not a partition of weight().
  void add_term(const Partition& lambda, const Rational& coeff);

  /// Throws std::invalid_argument on a weight or module mismatch.
  PBWVector& operator+=(const PBWVector& other);
  PBWVector& operator-=(const PBWVector& other);
  PBWVector& operator*=(const Rational& scalar);
  friend PBWVector operator+(PBWVector a, const PBWVector& b) { return a += b; }
  friend PBWVector operator-(PBWVector a, const PBWVector& b) { return a -= b; }
  friend PBWVector operator*(const Rational& s, PBWVector v) { return v *= s; }

  friend bool operator==(const PBWVector& a, const PBWVector& b);

  /// Terms descending by compare_pbw.
  std::vector<std::pair<Partition, Rational>> sorted_terms() const;
  /// compare_pbw-largest monomial; throws std::logic_error on the zero vector.
  Partition leading_monomial() const;
  /// Scaled so the leading coefficient is 1.
  PBWVector normalized() const;

  /// {"h","c","weight","terms":[[[parts...],"num/den"],...]} with terms descending.
  nlohmann::json to_json() const;
  /// e.g. "L_{-1}^2 - 4/3 L_{-2}" or "0".
  std::string str() const;

 private:
  friend class VermaModule;

  VermaSpec spec_;
  int weight_;
  Terms terms_;
};

/// Mode action on one Verma module, with an optional memo of L_k on
/// monomials. Not thread-safe; use one instance per thread.
class VermaModule {
 public:
  explicit VermaModule(VermaSpec spec, bool memoize = true);

  const VermaSpec& spec() const { return spec_; }

  /// PBW-normal form of L_k v.
  PBWVector apply_mode(int k, const PBWVector& v);
  /// L_μ v = L_{-μ1}(...(L_{-μm} v)).
  PBWVector apply_word(const Partition& mu, const PBWVector& v);

  std::size_t cache_size() const { return cache_.size(); }

 private:
  using TermList = std::vector<std::pair<Partition, Rational>>;
  struct Key {
    int k;
    Partition lambda;
    friend bool operator==(const Key&, const Key&) = default;
  };
  struct KeyHash {
    std::size_t operator()(const Key& key) const noexcept;
  };

  TermList mode_on_monomial(int k, const Partition& lambda);
  void accumulate(PBWVector::Terms& acc, int k, const Partition& lambda, const Rational& scale);

  VermaSpec spec_;
  bool memoize_;
  std::unordered_map<Key, TermList, KeyHash> cache_;
};

/// Convenience wrappers using a temporary VermaModule.
PBWVector apply_mode(int k, const PBWVector& v);
PBWVector apply_word(const Partition& mu, const PBWVector& v);

/// All partitions of n, descending by compare_pbw (the same for every spec).
std::vector<Partition> weight_basis(const VermaSpec& spec, int n);

/// Canonical basis of the vectors of weight n killed by L_1 and L_2: the
/// reduced echelon form of the kernel, each vector with leading coefficient 1.
/// Throws std::invalid_argument for n < 1.
std::vector<PBWVector> singular_vectors(const VermaSpec& spec, int n);

}  // namespace ising_pbw
