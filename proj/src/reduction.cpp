#include "ising_pbw/reduction.hpp"

#include <algorithm>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace ising_pbw {

namespace {

PBWVector from_terms(const VermaSpec& spec, int w, std::initializer_list<std::pair<Partition, Rational>> terms) {
  PBWVector v(spec, w);
  for (const auto& [lambda, c] : terms) v.add_term(lambda, c);
  return v;
}

bool is_singular(VermaModule& m, const PBWVector& v) {
  return m.apply_mode(1, v).is_zero() && m.apply_mode(2, v).is_zero();
}

std::vector<Partition> sorted_lex(std::vector<Partition> ps) {
  std::sort(ps.begin(), ps.end());
  return ps;
}

int resolve_threads(int threads) {
  if (threads > 0) return threads;
  const unsigned hc = std::thread::hardware_concurrency();
  return hc == 0 ? 1 : static_cast<int>(hc);
}

nlohmann::json partitions_json(const std::vector<Partition>& ps) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& p : ps) out.push_back(p.parts());
  return out;
}

}  // namespace

ModuleSpec ModuleSpec::for_label(ModuleLabel label) {
  ModuleSpec s;
  s.label = label;
  s.patterns = PatternSet::for_module(label);
  const Rational c(1, 2);
  switch (label) {
    case ModuleLabel::h1_2:
      s.verma = {c, Rational(1, 2)};
      s.generators = {from_terms(s.verma, 2, {{{1, 1}, 1}, {{2}, Rational(-4, 3)}}),
                      from_terms(s.verma, 3, {{{1, 1, 1}, 1}, {{2, 1}, -3}, {{3}, Rational(3, 4)}})};
      break;
    case ModuleLabel::h1_16:
      s.verma = {c, Rational(1, 16)};
      s.generators = {from_terms(s.verma, 2, {{{2}, 1}, {{1, 1}, Rational(-4, 3)}}),
                      from_terms(s.verma, 4,
                                 {{{2, 2}, 1},
                                  {{2, 1, 1}, Rational(-600, 49)},
                                  {{1, 1, 1, 1}, Rational(144, 49)},
                                  {{3, 1}, Rational(264, 49)},
                                  {{4}, Rational(-36, 49)}})};
      break;
    case ModuleLabel::h0: {
      s.verma = {c, Rational(0)};
      auto s6 = singular_vectors(s.verma, 6);
      if (s6.size() != 1) throw std::logic_error("expected a single weight-6 singular vector in M(1/2,0)");
      s.generators = {PBWVector::monomial(s.verma, {1}), s6.front()};
      break;
    }
  }
  VermaModule m(s.verma);
  for (const auto& g : s.generators)
    if (!is_singular(m, g)) throw std::logic_error("generator " + g.str() + " is not singular");
  return s;
}

MatrixBuilder::MatrixBuilder(const ModuleSpec& spec)
    : spec_(spec), module_(spec.verma), words_(spec.generators.size()) {}

const PBWVector& MatrixBuilder::word_image(std::size_t k, const Partition& mu) {
  if (mu.empty()) return spec_.generators[k];
  auto& cache = words_[k];
  if (auto it = cache.find(mu); it != cache.end()) return it->second;
  const PBWVector& inner = word_image(k, mu.without_first());
  PBWVector v = module_.apply_mode(-mu[0], inner);
  return cache.emplace(mu, std::move(v)).first->second;
}

MatrixA MatrixBuilder::build(int n) {
  MatrixA a;
  a.weight = n;
  a.columns = weight_basis(spec_.verma, n);
  std::unordered_map<Partition, int, PartitionHash> index;
  index.reserve(a.columns.size());
  for (std::size_t j = 0; j < a.columns.size(); ++j) index.emplace(a.columns[j], static_cast<int>(j));

  for (std::size_t k = 0; k < spec_.generators.size(); ++k) {
    const int wk = spec_.generators[k].weight();
    if (wk > n) continue;
    for (const auto& mu : partitions_of(n - wk)) {
      const PBWVector& v = word_image(k, mu);
      SparseRow row;
      row.reserve(v.terms().size());
      for (const auto& [lambda, x] : v.terms()) row.emplace_back(index.at(lambda), x);
      std::sort(row.begin(), row.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
      a.labels.push_back({static_cast<int>(k), mu});
      a.rows.push_back(std::move(row));
    }
  }
  return a;
}

MatrixA build_An(const ModuleSpec& spec, int n) { return MatrixBuilder(spec).build(n); }

EchelonResult rref(const ModuleSpec& spec, const MatrixA& a) {
  EchelonResult out;
  out.weight = a.weight;
  out.column_order = a.columns;
  const RrefResult r = rref(a.rows, static_cast<int>(a.columns.size()));
  std::vector<bool> is_pivot(a.columns.size(), false);
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    const int p = r.pivot_columns[i];
    is_pivot[p] = true;
    out.pivots.push_back(a.columns[p]);
    PBWVector v(spec.verma, a.weight);
    for (const auto& [j, x] : r.rows[i]) v.add_term(a.columns[j], x);
    out.rows.push_back(std::move(v));
  }
  for (std::size_t j = 0; j < a.columns.size(); ++j)
    if (!is_pivot[j]) out.non_pivots.push_back(a.columns[j]);
  return out;
}

std::map<int, PivotSets> pivots_up_to(const ModuleSpec& spec, int N, int threads) {
  std::map<int, PivotSets> out;
  if (N < 0) return out;
  const int workers = std::min(resolve_threads(threads), N + 1);
  std::mutex mu;
  auto work = [&](int first) {
    MatrixBuilder builder(spec);
    for (int n = first; n <= N; n += workers) {
      const MatrixA a = builder.build(n);
      const auto piv = pivot_columns(a.rows, static_cast<int>(a.columns.size()));
      PivotSets s;
      std::vector<bool> is_pivot(a.columns.size(), false);
      for (int p : piv) {
        is_pivot[p] = true;
        s.pivots.push_back(a.columns[p]);
      }
      for (std::size_t j = 0; j < a.columns.size(); ++j)
        if (!is_pivot[j]) s.non_pivots.push_back(a.columns[j]);
      std::lock_guard lock(mu);
      out.emplace(n, std::move(s));
    }
  };
  if (workers <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }
  return out;
}

std::map<int, std::vector<Partition>> quotient_basis(const ModuleSpec& spec, int N, int threads) {
  std::map<int, std::vector<Partition>> out;
  for (auto& [n, s] : pivots_up_to(spec, N, threads)) {
    if (spec.label == ModuleLabel::h0)
      for (const auto& lambda : s.non_pivots)
        if (lambda.ones() > 0)
          throw std::runtime_error("vacuum-module basis partition " + lambda.str() + " contains a part 1");
    out.emplace(n, std::move(s.non_pivots));
  }
  return out;
}

BiPoly refined_character(const ModuleSpec& spec, const std::map<int, PivotSets>& pivots, int N) {
  BiPoly p(16, N);
  for (const auto& [n, s] : pivots) {
    if (n > N) break;
    for (const auto& lambda : s.non_pivots) p.add_term(length(lambda), 16L * n, 1);
  }
  return p.shifted(0, spec.verma.h);
}

BiPoly refined_character(const ModuleSpec& spec, int N, int threads) {
  return refined_character(spec, pivots_up_to(spec, N, threads), N);
}

CrossCheckReport cross_check(const ModuleSpec& spec, const std::map<int, PivotSets>& pivots) {
  CrossCheckReport report;
  report.label = spec.label;
  report.max_weight = pivots.empty() ? -1 : pivots.rbegin()->first;
  for (const auto& [n, s] : pivots) {
    CrossCheckRow row;
    row.n = n;
    row.partitions = partition_count(n);
    row.rank = s.pivots.size();
    row.basis = s.non_pivots.size();
    const auto P = enumerate_P(spec.patterns, n);
    row.pattern_avoiding = P.size();
    row.non_pivots_match = sorted_lex(s.non_pivots) == sorted_lex(P);

    std::vector<Partition> outside_P;
    for (const auto& lambda : partitions_of(n))
      if (!in_P(lambda, spec.patterns)) outside_P.push_back(lambda);
    row.pivots_match = sorted_lex(s.pivots) == sorted_lex(outside_P);
    row.count_match = row.basis == row.partitions - row.rank;

    for (const auto& lambda : s.pivots)
      if (in_P(lambda, spec.patterns)) row.unexpected_pivots.push_back(lambda);
    for (const auto& lambda : s.non_pivots)
      if (!in_P(lambda, spec.patterns)) row.unexpected_basis.push_back(lambda);
    report.rows.push_back(std::move(row));
  }
  return report;
}

CrossCheckReport cross_check(const ModuleSpec& spec, int N, int threads) {
  return cross_check(spec, pivots_up_to(spec, N, threads));
}

bool CrossCheckReport::pass() const {
  return std::all_of(rows.begin(), rows.end(), [](const CrossCheckRow& r) { return r.pass(); });
}

std::string CrossCheckReport::tsv() const {
  std::ostringstream os;
  os << "n\tp(n)\trank\tbasis\t|P(n)|\tnon_pivots=P\tpivots=complement\tcount\tstatus\n";
  auto yn = [](bool b) { return b ? "yes" : "no"; };
  for (const auto& r : rows)
    os << r.n << '\t' << r.partitions << '\t' << r.rank << '\t' << r.basis << '\t' << r.pattern_avoiding << '\t'
       << yn(r.non_pivots_match) << '\t' << yn(r.pivots_match) << '\t' << yn(r.count_match) << '\t'
       << (r.pass() ? "pass" : "FAIL") << '\n';
  return os.str();
}

nlohmann::json CrossCheckReport::to_json() const {
  nlohmann::json rs = nlohmann::json::array();
  for (const auto& r : rows)
    rs.push_back({{"n", r.n},
                  {"partitions", r.partitions},
                  {"rank", r.rank},
                  {"basis", r.basis},
                  {"pattern_avoiding", r.pattern_avoiding},
                  {"non_pivots_match", r.non_pivots_match},
                  {"pivots_match", r.pivots_match},
                  {"count_match", r.count_match},
                  {"unexpected_pivots", partitions_json(r.unexpected_pivots)},
                  {"unexpected_basis", partitions_json(r.unexpected_basis)},
                  {"pass", r.pass()}});
  return {{"label", to_string(label)}, {"max_weight", max_weight}, {"pass", pass()}, {"rows", std::move(rs)}};
}

std::vector<std::pair<Partition, PBWVector>> uK_fixtures(const ModuleSpec& spec) {
  if (spec.label != ModuleLabel::h1_2) throw std::invalid_argument("uK_fixtures is defined for h1/2 only");
  MatrixBuilder builder(spec);
  std::map<int, EchelonResult> by_weight;
  std::vector<std::pair<Partition, PBWVector>> out;
  for (const auto& lambda : spec.patterns.exceptional) {
    const int n = weight(lambda);
    auto it = by_weight.find(n);
    if (it == by_weight.end()) it = by_weight.emplace(n, rref(spec, builder.build(n))).first;
    const EchelonResult& e = it->second;
    auto pos = std::find(e.pivots.begin(), e.pivots.end(), lambda);
    if (pos == e.pivots.end()) throw std::runtime_error(lambda.str() + " is not a pivot at weight " + std::to_string(n));
    const PBWVector& row = e.rows[static_cast<std::size_t>(pos - e.pivots.begin())];
    PBWVector leading(spec.verma, n);
    for (const auto& [mu, x] : row.terms())
      if (length(mu) == length(lambda)) leading.add_term(mu, x);
    out.emplace_back(lambda, std::move(leading));
  }
  return out;
}

}  // namespace ising_pbw
