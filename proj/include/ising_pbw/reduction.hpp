#pragma once

// Graded linear algebra for the maximal submodule W ⊂ M(c,h): at each weight
// n the rows L_μ u_k (u_k the singular generators) span W_n; their reduced
// row-echelon form has pivots = leading monomials of W_n, and the non-pivot
// monomials give a basis of the irreducible quotient.

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ising_pbw/linalg.hpp"
#include "ising_pbw/partitions.hpp"
#include "ising_pbw/qseries.hpp"
#include "ising_pbw/virasoro.hpp"

namespace ising_pbw {

struct ModuleSpec {
  ModuleLabel label = ModuleLabel::h1_2;
  VermaSpec verma;
  std::vector<PBWVector> generators;  // in stacking order
  PatternSet patterns;

  /// The built-in configuration for one Ising module:
  ///   h1/2:  u2 = (L_{-1}^2 - 4/3 L_{-2})|1/2⟩, u3 = (L_{-1}^3 - 3 L_{-2}L_{-1} + 3/4 L_{-3})|1/2⟩
  ///   h1/16: u2 = (L_{-2} - 4/3 L_{-1}^2)|1/16⟩, u4 (weight 4)
  ///   h0:    L_{-1}|0⟩ and the weight-6 singular vector of M(1/2,0)
  /// Throws std::logic_error if a generator is not annihilated by L_1 and L_2.
  static ModuleSpec for_label(ModuleLabel label);
};

/// Stacked rows L_μ u_k at one weight, expanded in weight_basis(n).
struct MatrixA {
  struct RowLabel {
    int generator;
    Partition mu;
  };
  int weight = 0;
  std::vector<Partition> columns;
  std::vector<RowLabel> labels;
  std::vector<SparseRow> rows;
};

struct EchelonResult {
  int weight = 0;
  std::vector<Partition> column_order;
  std::vector<PBWVector> rows;  // pivot coefficient 1, pivot columns cleared elsewhere
  std::vector<Partition> pivots;
  std::vector<Partition> non_pivots;
};

struct PivotSets {
  std::vector<Partition> pivots;      // descending by compare_pbw
  std::vector<Partition> non_pivots;  // descending by compare_pbw
};

/// Builds A_n for several weights, reusing word images L_μ u_k across weights.
/// Not thread-safe; use one instance per thread.
class MatrixBuilder {
 public:
  explicit MatrixBuilder(const ModuleSpec& spec);
  MatrixA build(int n);

 private:
  const PBWVector& word_image(std::size_t k, const Partition& mu);

  const ModuleSpec& spec_;
  VermaModule module_;
  std::vector<std::unordered_map<Partition, PBWVector, PartitionHash>> words_;
};

MatrixA build_An(const ModuleSpec& spec, int n);

/// Canonical RREF of A_n with rows as vectors of M(c,h).
EchelonResult rref(const ModuleSpec& spec, const MatrixA& a);

/// Pivot / non-pivot partitions for n = 0..N. Weights are independent and are
/// distributed over `threads` workers (0: hardware concurrency).
std::map<int, PivotSets> pivots_up_to(const ModuleSpec& spec, int N, int threads = 1);

/// Non-pivots for n = 0..N. For h0 throws std::runtime_error if any basis
/// partition contains a part 1.
std::map<int, std::vector<Partition>> quotient_basis(const ModuleSpec& spec, int N, int threads = 1);

/// Σ_{n ≤ N} Σ_{λ basis at n} t^{len λ} q^{h+n}, over q_denominator 16.
BiPoly refined_character(const ModuleSpec& spec, int N, int threads = 1);
BiPoly refined_character(const ModuleSpec& spec, const std::map<int, PivotSets>& pivots, int N);

struct CrossCheckRow {
  int n = 0;
  std::size_t partitions = 0;  // p(n)
  std::size_t rank = 0;
  std::size_t basis = 0;       // |non_pivots|
  std::size_t pattern_avoiding = 0;
  bool non_pivots_match = false;  // non_pivots = enumerate_P
  bool pivots_match = false;      // pivots = {λ ⊢ n : λ ∉ P}
  bool count_match = false;       // |non_pivots| = p(n) - rank
  std::vector<Partition> unexpected_pivots;   // pivots that lie in P
  std::vector<Partition> unexpected_basis;    // non-pivots outside P

  bool pass() const { return non_pivots_match && pivots_match && count_match; }
};

struct CrossCheckReport {
  ModuleLabel label = ModuleLabel::h1_2;
  int max_weight = 0;
  std::vector<CrossCheckRow> rows;

  bool pass() const;
  std::string tsv() const;
  nlohmann::json to_json() const;
};

CrossCheckReport cross_check(const ModuleSpec& spec, const std::map<int, PivotSets>& pivots);
CrossCheckReport cross_check(const ModuleSpec& spec, int N, int threads = 1);

/// For each exceptional pivot λ of R^{1/2}: the RREF row with pivot λ,
/// restricted to monomials of length len(λ). Throws std::invalid_argument for
/// modules other than h1/2.
std::vector<std::pair<Partition, PBWVector>> uK_fixtures(const ModuleSpec& spec);

}  // namespace ising_pbw
