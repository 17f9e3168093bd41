#include "ising_pbw/virasoro.hpp"

#include <algorithm>
#include <stdexcept>

#include "ising_pbw/linalg.hpp"

namespace ising_pbw {

namespace {

void check_partition_weight(const Partition& lambda, int w) {
  if (weight(lambda) != w)
    throw std::invalid_argument("monomial " + lambda.str() + " does not have weight " + std::to_string(w));
}

void drop_zeros(PBWVector::Terms& terms) {
  std::erase_if(terms, [](const auto& kv) { return kv.second == 0; });
}

std::string monomial_str(const Partition& lambda) {
  if (lambda.empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < lambda.size();) {
    std::size_t j = i;
    while (j < lambda.size() && lambda[j] == lambda[i]) ++j;
    s += "L_{-" + std::to_string(lambda[i]) + "}";
    if (j - i > 1) s += "^" + std::to_string(j - i);
    i = j;
  }
  return s;
}

}  // namespace

std::string VermaSpec::str() const { return "(c,h) = (" + to_string(c) + "," + to_string(h) + ")"; }

PBWVector::PBWVector(VermaSpec spec, int weight) : spec_(std::move(spec)), weight_(weight) {}

PBWVector PBWVector::highest_weight(const VermaSpec& spec) { return monomial(spec, Partition{}); }

PBWVector PBWVector::monomial(const VermaSpec& spec, const Partition& lambda, const Rational& coeff) {
  PBWVector v(spec, ising_pbw::weight(lambda));
  v.add_term(lambda, coeff);
  return v;
}

Rational PBWVector::coefficient(const Partition& lambda) const {
  auto it = terms_.find(lambda);
  return it == terms_.end() ? Rational(0) : it->second;
}

void PBWVector::add_term(const Partition& lambda, const Rational& coeff) {
  check_partition_weight(lambda, weight_);
  if (coeff == 0) return;
  Rational value = coeff;
  value.canonicalize();
  auto [it, inserted] = terms_.try_emplace(lambda, value);
  if (!inserted) {
    it->second += value;
    if (it->second == 0) terms_.erase(it);
  }
}

PBWVector& PBWVector::operator+=(const PBWVector& other) {
  if (!(spec_ == other.spec_)) throw std::invalid_argument("adding vectors of different Verma modules");
  if (weight_ != other.weight_)
    throw std::invalid_argument("adding vectors of weights " + std::to_string(weight_) + " and " +
                                std::to_string(other.weight_));
  for (const auto& [lambda, c] : other.terms_) {
    auto [it, inserted] = terms_.try_emplace(lambda, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

PBWVector& PBWVector::operator-=(const PBWVector& other) { return *this += Rational(-1) * other; }

PBWVector& PBWVector::operator*=(const Rational& scalar) {
  if (scalar == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [lambda, c] : terms_) c *= scalar;
  return *this;
}

bool operator==(const PBWVector& a, const PBWVector& b) {
  return a.spec_ == b.spec_ && a.weight_ == b.weight_ && a.terms_ == b.terms_;
}

std::vector<std::pair<Partition, Rational>> PBWVector::sorted_terms() const {
  std::vector<std::pair<Partition, Rational>> out(terms_.begin(), terms_.end());
  std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) { return compare_pbw(x.first, y.first) > 0; });
  return out;
}

Partition PBWVector::leading_monomial() const {
  if (terms_.empty()) throw std::logic_error("zero vector has no leading monomial");
  const Partition* best = nullptr;
  for (const auto& [lambda, c] : terms_)
    if (!best || compare_pbw(lambda, *best) > 0) best = &lambda;
  return *best;
}

PBWVector PBWVector::normalized() const {
  if (is_zero()) return *this;
  PBWVector out = *this;
  out *= 1 / coefficient(leading_monomial());
  return out;
}

nlohmann::json PBWVector::to_json() const {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [lambda, c] : sorted_terms()) terms.push_back({lambda.parts(), to_string(c)});
  return {{"h", to_string(spec_.h)}, {"c", to_string(spec_.c)}, {"weight", weight_}, {"terms", std::move(terms)}};
}

std::string PBWVector::str() const {
  if (is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& [lambda, c] : sorted_terms()) {
    if (first)
      s += c < 0 ? "-" : "";
    else
      s += c < 0 ? " - " : " + ";
    first = false;
    const Rational mag = abs(c);
    if (lambda.empty())
      s += mag.get_str();
    else
      s += (mag == 1 ? std::string() : mag.get_str() + " ") + monomial_str(lambda);
  }
  return s;
}

std::size_t VermaModule::KeyHash::operator()(const Key& key) const noexcept {
  return PartitionHash{}(key.lambda) * 31 + static_cast<std::size_t>(key.k + 1000);
}

VermaModule::VermaModule(VermaSpec spec, bool memoize) : spec_(std::move(spec)), memoize_(memoize) {}

void VermaModule::accumulate(PBWVector::Terms& acc, int k, const Partition& lambda, const Rational& scale) {
  auto add = [&](const TermList& terms) {
    for (const auto& [nu, x] : terms) {
      auto [it, inserted] = acc.try_emplace(nu, scale * x);
      if (!inserted) it->second += scale * x;
    }
  };
  if (!memoize_) {
    add(mode_on_monomial(k, lambda));
    return;
  }
  Key key{k, lambda};
  auto it = cache_.find(key);
  if (it == cache_.end()) {
    TermList terms = mode_on_monomial(k, lambda);
    it = cache_.emplace(std::move(key), std::move(terms)).first;
  }
  add(it->second);
}

VermaModule::TermList VermaModule::mode_on_monomial(int k, const Partition& lambda) {
  const int w = weight(lambda);
  if (w - k < 0) return {};
  if (k == 0) {
    Rational e = spec_.h + w;
    return e == 0 ? TermList{} : TermList{{lambda, e}};
  }
  if (lambda.empty()) return TermList{{Partition{-k}, Rational(1)}};  // k < 0 here
  const int a = lambda[0];
  if (-k >= a) {
    std::vector<int> parts;
    parts.reserve(lambda.size() + 1);
    parts.push_back(-k);
    parts.insert(parts.end(), lambda.parts().begin(), lambda.parts().end());
    return TermList{{Partition(std::move(parts)), Rational(1)}};
  }

  // L_k L_{-a} rest = L_{-a} L_k rest + (k+a) L_{k-a} rest + δ_{k,a} (k³-k)/12 c rest
  const Partition rest = lambda.without_first();
  PBWVector::Terms acc;
  if (w - a - k >= 0) {
    PBWVector::Terms inner;
    accumulate(inner, k, rest, Rational(1));
    for (const auto& [nu, x] : inner)
      if (x != 0) accumulate(acc, -a, nu, x);
  }
  accumulate(acc, k - a, rest, Rational(k + a));
  if (k == a && spec_.c != 0) {
    Rational central = ratio(k * k * k - k, 12) * spec_.c;
    auto [it, inserted] = acc.try_emplace(rest, central);
    if (!inserted) it->second += central;
  }
  TermList out;
  out.reserve(acc.size());
  for (auto& [nu, x] : acc)
    if (x != 0) {
      x.canonicalize();
      out.emplace_back(nu, std::move(x));
    }
  return out;
}

PBWVector VermaModule::apply_mode(int k, const PBWVector& v) {
  if (!(v.spec() == spec_)) throw std::invalid_argument("vector belongs to a different Verma module");
  PBWVector out(spec_, v.weight() - k);
  if (out.weight() < 0) return out;
  for (const auto& [lambda, c] : v.terms()) accumulate(out.terms_, k, lambda, c);
  drop_zeros(out.terms_);
  return out;
}

PBWVector VermaModule::apply_word(const Partition& mu, const PBWVector& v) {
  PBWVector out = v;
  for (std::size_t i = mu.size(); i-- > 0;) out = apply_mode(-mu[i], out);
  return out;
}

PBWVector apply_mode(int k, const PBWVector& v) { return VermaModule(v.spec()).apply_mode(k, v); }

PBWVector apply_word(const Partition& mu, const PBWVector& v) { return VermaModule(v.spec()).apply_word(mu, v); }

std::vector<Partition> weight_basis(const VermaSpec&, int n) {
  if (n < 0) return {};
  return partitions_of(n);
}

std::vector<PBWVector> singular_vectors(const VermaSpec& spec, int n) {
  if (n < 1) throw std::invalid_argument("singular_vectors needs level n >= 1");
  VermaModule module(spec);
  const auto basis = weight_basis(spec, n);
  const int ncols = static_cast<int>(basis.size());

  // Rows of the stacked matrix (L_1 ; L_2), indexed by target monomials.
  std::unordered_map<Partition, int, PartitionHash> row_index[2];
  std::vector<SparseRow> rows;
  for (int j = 0; j < ncols; ++j) {
    const PBWVector e = PBWVector::monomial(spec, basis[j]);
    for (int k = 1; k <= 2; ++k) {
      const PBWVector image = module.apply_mode(k, e);
      for (const auto& [nu, x] : image.terms()) {
        auto [it, inserted] = row_index[k - 1].try_emplace(nu, static_cast<int>(rows.size()));
        if (inserted) rows.emplace_back();
        rows[it->second].emplace_back(j, x);
      }
    }
  }

  std::vector<SparseRow> kernel = nullspace(rows, ncols);
  std::vector<PBWVector> out;
  for (const auto& row : rref(kernel, ncols).rows) {
    PBWVector v(spec, n);
    for (const auto& [j, x] : row) v.add_term(basis[j], x);
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace ising_pbw
