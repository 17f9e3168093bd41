#include "ising_pbw/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace ising_pbw {

namespace {

// ra·r − rb·b, dropping cancelled entries.
IntRow combine(const IntRow& r, const Integer& ra, const IntRow& b, const Integer& rb) {
  IntRow out;
  out.reserve(r.size() + b.size());
  auto i = r.begin();
  auto j = b.begin();
  Integer v;
  while (i != r.end() || j != b.end()) {
    if (j == b.end() || (i != r.end() && i->first < j->first)) {
      out.emplace_back(i->first, ra * i->second);
      ++i;
    } else if (i == r.end() || j->first < i->first) {
      out.emplace_back(j->first, -rb * j->second);
      ++j;
    } else {
      v = ra * i->second - rb * j->second;
      if (v != 0) out.emplace_back(i->first, v);
      ++i;
      ++j;
    }
  }
  return out;
}

std::size_t cost(const IntRow& r) {
  std::size_t limbs = 0;
  for (const auto& [c, v] : r) limbs += mpz_size(v.get_mpz_t());
  return limbs;
}

// Removes the entry of `r` at column `col` using `b`, whose entry there is nonzero.
void eliminate(IntRow& r, const IntRow& b, int col) {
  auto ri = std::lower_bound(r.begin(), r.end(), col, [](const auto& e, int c) { return e.first < c; });
  auto bi = std::lower_bound(b.begin(), b.end(), col, [](const auto& e, int c) { return e.first < c; });
  Integer g = gcd(ri->second, bi->second);
  Integer ra = bi->second / g;
  Integer rb = ri->second / g;
  r = combine(r, ra, b, rb);
  make_primitive(r);
}

// Row echelon form by columns, left to right. Among the rows whose leading
// entry sits in the current column the cheapest one (fewest entries, then
// fewest limbs) becomes the pivot row and is used to clear that column from
// the others, which then move on to their new leading column.
class Echelon {
 public:
  Echelon(std::vector<IntRow> rows, int ncols) : slot_(static_cast<std::size_t>(ncols), -1) {
    std::vector<std::vector<IntRow>> bucket(static_cast<std::size_t>(ncols));
    auto file = [&](IntRow&& r) {
      if (r.empty()) return;
      const int lead = r.front().first;
      if (lead < 0 || lead >= ncols) throw std::out_of_range("column index out of range");
      bucket[static_cast<std::size_t>(lead)].push_back(std::move(r));
    };
    for (auto& r : rows) file(std::move(r));
    for (int col = 0; col < ncols; ++col) {
      auto& here = bucket[static_cast<std::size_t>(col)];
      if (here.empty()) continue;
      auto best = std::min_element(here.begin(), here.end(), [](const IntRow& a, const IntRow& b) {
        if (a.size() != b.size()) return a.size() < b.size();
        return cost(a) < cost(b);
      });
      std::swap(*best, here.front());
      for (std::size_t i = 1; i < here.size(); ++i) {
        eliminate(here[i], here.front(), col);
        file(std::move(here[i]));
      }
      slot_[static_cast<std::size_t>(col)] = static_cast<int>(rows_.size());
      rows_.push_back(std::move(here.front()));
      std::vector<IntRow>().swap(here);
    }
  }

  std::vector<int> pivots() const {
    std::vector<int> out;
    for (std::size_t c = 0; c < slot_.size(); ++c)
      if (slot_[c] >= 0) out.push_back(static_cast<int>(c));
    return out;
  }

  // Clears every pivot column except a row's own, working from the right so
  // that each row used for clearing is already reduced.
  RrefResult reduce() {
    const auto piv = pivots();
    for (auto it = piv.rbegin(); it != piv.rend(); ++it) {
      IntRow& r = rows_[slot_[*it]];
      int from = *it + 1;
      while (true) {
        auto e = std::find_if(r.begin(), r.end(), [&](const auto& x) { return x.first >= from && slot_[x.first] >= 0; });
        if (e == r.end()) break;
        const int col = e->first;
        eliminate(r, rows_[slot_[col]], col);
        from = col + 1;
      }
    }
    RrefResult out;
    out.pivot_columns = piv;
    for (int p : piv) {
      const IntRow& r = rows_[slot_[p]];
      SparseRow row;
      row.reserve(r.size());
      const Integer& lead = r.front().second;
      for (const auto& [c, v] : r) {
        Rational x(v, lead);
        x.canonicalize();
        row.emplace_back(c, x);
      }
      out.rows.push_back(std::move(row));
    }
    return out;
  }

 private:
  std::vector<int> slot_;
  std::vector<IntRow> rows_;
};

}  // namespace

void make_primitive(IntRow& row) {
  if (row.empty()) return;
  Integer g = 0;
  for (const auto& [c, v] : row) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (g == 1) break;
  }
  if (row.front().second < 0) g = -g;
  if (g != 1)
    for (auto& [c, v] : row) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
}

IntRow to_primitive(const SparseRow& row) {
  Integer l = 1;
  for (const auto& [c, v] : row) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), v.get_den_mpz_t());
  IntRow out;
  out.reserve(row.size());
  for (const auto& [c, v] : row) {
    if (v == 0) continue;
    out.emplace_back(c, v.get_num() * (l / v.get_den()));
  }
  make_primitive(out);
  return out;
}

std::vector<IntRow> to_primitive_rows(const std::vector<SparseRow>& rows) {
  std::vector<IntRow> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(to_primitive(r));
  return out;
}

RrefResult rref(const std::vector<SparseRow>& rows, int ncols) {
  return Echelon(to_primitive_rows(rows), ncols).reduce();
}

std::vector<int> pivot_columns(const std::vector<SparseRow>& rows, int ncols) {
  return Echelon(to_primitive_rows(rows), ncols).pivots();
}

std::vector<SparseRow> nullspace(const std::vector<SparseRow>& rows, int ncols) {
  const RrefResult r = rref(rows, ncols);
  std::vector<bool> is_pivot(static_cast<std::size_t>(ncols), false);
  for (int p : r.pivot_columns) is_pivot[p] = true;
  std::vector<SparseRow> out;
  for (int f = 0; f < ncols; ++f) {
    if (is_pivot[f]) continue;
    SparseRow x;
    for (std::size_t i = 0; i < r.rows.size(); ++i) {
      const auto& row = r.rows[i];
      auto it = std::lower_bound(row.begin(), row.end(), f, [](const auto& e, int c) { return e.first < c; });
      if (it != row.end() && it->first == f) x.emplace_back(r.pivot_columns[i], -it->second);
    }
    x.emplace_back(f, Rational(1));
    std::sort(x.begin(), x.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    out.push_back(std::move(x));
  }
  return out;
}

}  // namespace ising_pbw
