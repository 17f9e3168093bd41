#pragma once

// Partitions as PBW monomial labels: length/weight, contiguous containment,
// forbidden-pattern sets and the monomial order used for echelon pivots.

#include <compare>
#include <cstddef>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace ising_pbw {

/// Weakly decreasing list of positive integers. L_λ = L_{-λ1}...L_{-λm}.
class Partition {
 public:
  Partition() = default;
  Partition(std::initializer_list<int> parts);
  explicit Partition(std::vector<int> parts);

  const std::vector<int>& parts() const { return parts_; }
  std::size_t size() const { return parts_.size(); }
  bool empty() const { return parts_.empty(); }
  int operator[](std::size_t i) const { return parts_[i]; }
  int largest() const { return parts_.empty() ? 0 : parts_.front(); }

  /// Number of parts equal to 1 (the L_{-1} exponent).
  int ones() const;

  /// Copy with `part` inserted at its sorted position.
  Partition with_part(int part) const;
  /// Copy without the first (largest) part.
  Partition without_first() const;

  friend bool operator==(const Partition&, const Partition&) = default;
  // Lexicographic on parts; for containers only, not the PBW order.
  friend auto operator<=>(const Partition&, const Partition&) = default;

  /// "[3,2,1]" / "[]".
  std::string str() const;
  /// "3+2+1" / "0" (matrix dump header form).
  std::string plus_str() const;

 private:
  std::vector<int> parts_;
};

struct PartitionHash {
  std::size_t operator()(const Partition& p) const noexcept;
};

/// Parses "6,5,3,1" ("" is ∅); throws std::invalid_argument unless weakly decreasing positive integers.
Partition parse_partition(const std::string& text);

/// 2·#(parts ≥ 2) + #(parts = 1).
int length(const Partition& p);
/// Sum of parts.
int weight(const Partition& p);

/// True iff `pattern` occurs as a contiguous window of `p` (∅ is always contained).
bool contains(const Partition& p, const Partition& pattern);

/// Divisibility of u_pattern into u_p in ⊕_k C[L_{-2},L_{-3},...]L_{-1}^k:
/// equal count of ones and the parts ≥ 2 of `pattern` form a sub-multiset of those of `p`.
bool u_divides(const Partition& pattern, const Partition& p);

/// Order on PBW monomials: length, then degrevlex with L_{-2} > L_{-3} > ...,
/// then TOP with L_{-1}^0 < L_{-1}^1 < ...
std::strong_ordering compare_pbw(const Partition& a, const Partition& b);

/// Sorts descending by compare_pbw (the column order of weight spaces).
void sort_pbw_descending(std::vector<Partition>& ps);

/// All partitions of n, descending by compare_pbw.
std::vector<Partition> partitions_of(int n);

/// Number of partitions of n.
std::size_t partition_count(int n);

enum class ModuleLabel { h0, h1_2, h1_16 };

std::string to_string(ModuleLabel label);
/// Accepts "h0", "h1/2", "h1/16"; throws std::invalid_argument.
ModuleLabel parse_module_label(const std::string& text);

/// Infinite family [r+o1, r+o2, ...] for r ≥ min_r.
struct OrdinaryFamily {
  std::vector<int> offsets;
  int min_r = 0;

  Partition instantiate(int r) const;
  int weight_at(int r) const;
};

/// A forbidden-pattern set R: ordinary families plus exceptional partitions.
struct PatternSet {
  ModuleLabel label = ModuleLabel::h1_2;
  std::vector<OrdinaryFamily> ordinary;
  std::vector<Partition> exceptional;

  static PatternSet for_module(ModuleLabel label);

  /// Every member of R of weight ≤ max_weight.
  std::vector<Partition> members_up_to(int max_weight) const;
};

/// True iff λ contains no member of R (and, for h0, has no part equal to 1).
bool in_P(const Partition& p, const PatternSet& patterns);

/// True iff some member of R is contained in λ (membership in R̄).
bool contains_pattern(const Partition& p, const PatternSet& patterns);

/// P(n), descending by compare_pbw.
std::vector<Partition> enumerate_P(const PatternSet& patterns, int n);

/// One constraint on a trailing part: equal to v, or greater than v.
struct TailItem {
  enum class Kind { eq, gt };
  Kind kind = Kind::eq;
  int value = 0;

  static TailItem eq(int v) { return {Kind::eq, v}; }
  static TailItem gt(int v) { return {Kind::gt, v}; }
  bool holds(int part) const { return kind == Kind::eq ? part == value : part > value; }
};

/// Constraints on the final |items| parts, e.g. {gt(6), eq(5), eq(3)} is the
/// family P_{>6,5,3}. A leading gt item is also satisfied when the partition
/// has exactly |items|-1 parts, so ∅ matches only a single gt item.
struct TailPattern {
  std::vector<TailItem> items;

  bool matches(const Partition& p) const;
  /// ">6,5,3"
  std::string str() const;
};

/// Parses ">6,5,3" (a '>' prefix marks a gt item); throws std::invalid_argument.
TailPattern parse_tail_pattern(const std::string& text);

std::vector<Partition> enumerate_tail(const PatternSet& patterns, const TailPattern& tail, int n);

}  // namespace ising_pbw
