#include "ising_pbw/partitions.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace ising_pbw {

Partition::Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] < 1) throw std::invalid_argument("partition parts must be positive");
    if (i > 0 && parts_[i] > parts_[i - 1])
      throw std::invalid_argument("partition parts must be weakly decreasing");
  }
}

int Partition::ones() const {
  return static_cast<int>(std::count(parts_.begin(), parts_.end(), 1));
}

Partition Partition::with_part(int part) const {
  Partition out = *this;
  auto pos = std::find_if(out.parts_.begin(), out.parts_.end(), [&](int x) { return x < part; });
  out.parts_.insert(pos, part);
  return out;
}

Partition Partition::without_first() const {
  Partition out;
  if (!parts_.empty()) out.parts_.assign(parts_.begin() + 1, parts_.end());
  return out;
}

std::string Partition::str() const {
  std::string s = "[";
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(parts_[i]);
  }
  return s + "]";
}

std::string Partition::plus_str() const {
  if (parts_.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) s += '+';
    s += std::to_string(parts_[i]);
  }
  return s;
}

std::size_t PartitionHash::operator()(const Partition& p) const noexcept {
  std::size_t h = 0xcbf29ce484222325ULL;
  for (int x : p.parts()) {
    h ^= static_cast<std::size_t>(x);
    h *= 0x100000001b3ULL;
  }
  return h ^ p.size();
}

namespace {

std::vector<std::string> split_fields(const std::string& text) {
  std::vector<std::string> out;
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = text.find(',', start);
    std::string field = text.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
    while (!field.empty() && field.front() == ' ') field.erase(field.begin());
    while (!field.empty() && field.back() == ' ') field.pop_back();
    out.push_back(std::move(field));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

int parse_positive(const std::string& field) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size() || v < 1)
    throw std::invalid_argument("expected a positive integer, got '" + field + "'");
  return v;
}

}  // namespace

Partition parse_partition(const std::string& text) {
  std::vector<int> parts;
  for (const auto& field : split_fields(text)) parts.push_back(parse_positive(field));
  return Partition(std::move(parts));
}

int length(const Partition& p) {
  int len = 0;
  for (int x : p.parts()) len += x >= 2 ? 2 : 1;
  return len;
}

int weight(const Partition& p) {
  int w = 0;
  for (int x : p.parts()) w += x;
  return w;
}

bool contains(const Partition& p, const Partition& pattern) {
  if (pattern.empty()) return true;
  const auto& hay = p.parts();
  const auto& needle = pattern.parts();
  return std::search(hay.begin(), hay.end(), needle.begin(), needle.end()) != hay.end();
}

bool u_divides(const Partition& pattern, const Partition& p) {
  if (pattern.ones() != p.ones()) return false;
  // Both descending: sub-multiset test by merge.
  const auto& a = pattern.parts();
  const auto& b = p.parts();
  std::size_t j = 0;
  for (int x : a) {
    if (x == 1) break;
    while (j < b.size() && b[j] > x) ++j;
    if (j == b.size() || b[j] != x) return false;
    ++j;
  }
  return true;
}

std::strong_ordering compare_pbw(const Partition& a, const Partition& b) {
  if (auto c = length(a) <=> length(b); c != 0) return c;

  const int ones_a = a.ones();
  const int ones_b = b.ones();
  const int deg_a = static_cast<int>(a.size()) - ones_a;
  const int deg_b = static_cast<int>(b.size()) - ones_b;
  if (auto c = deg_a <=> deg_b; c != 0) return c;

  // Reverse lexicographic: the smallest variable (largest part value) with a
  // differing exponent decides; the smaller exponent there is the larger
  // monomial. Parts are stored descending, so walk forward skipping ones.
  auto fa = a.parts().begin();
  auto fb = b.parts().begin();
  const auto ea = a.parts().end() - ones_a;
  const auto eb = b.parts().end() - ones_b;
  while (fa != ea || fb != eb) {
    const int va = fa != ea ? *fa : 0;
    const int vb = fb != eb ? *fb : 0;
    const int v = std::max(va, vb);
    int ca = 0, cb = 0;
    while (fa != ea && *fa == v) ++ca, ++fa;
    while (fb != eb && *fb == v) ++cb, ++fb;
    if (ca != cb) return ca < cb ? std::strong_ordering::greater : std::strong_ordering::less;
  }
  return ones_a <=> ones_b;
}

void sort_pbw_descending(std::vector<Partition>& ps) {
  std::sort(ps.begin(), ps.end(),
            [](const Partition& x, const Partition& y) { return compare_pbw(x, y) > 0; });
}

namespace {

template <class Visit>
void generate_partitions(int remaining, int max_part, std::vector<int>& acc, Visit&& visit) {
  if (remaining == 0) {
    visit(acc);
    return;
  }
  for (int part = std::min(remaining, max_part); part >= 1; --part) {
    acc.push_back(part);
    generate_partitions(remaining - part, part, acc, visit);
    acc.pop_back();
  }
}

// Does some member of R occupy the window ending at index `end`?
bool window_hits(const std::vector<int>& parts, std::size_t end, const PatternSet& R) {
  const std::size_t len = end + 1;
  for (const auto& fam : R.ordinary) {
    const std::size_t k = fam.offsets.size();
    if (k > len) continue;
    const std::size_t start = len - k;
    const int r = parts[start] - fam.offsets[0];
    if (r < fam.min_r) continue;
    bool ok = true;
    for (std::size_t j = 1; j < k && ok; ++j) ok = parts[start + j] - fam.offsets[j] == r;
    if (ok) return true;
  }
  for (const auto& ex : R.exceptional) {
    const std::size_t k = ex.size();
    if (k > len) continue;
    if (std::equal(ex.parts().begin(), ex.parts().end(), parts.begin() + (len - k))) return true;
  }
  return false;
}

}  // namespace

std::vector<Partition> partitions_of(int n) {
  std::vector<Partition> out;
  if (n < 0) return out;
  std::vector<int> acc;
  generate_partitions(n, n, acc, [&](const std::vector<int>& p) { out.emplace_back(p); });
  sort_pbw_descending(out);
  return out;
}

std::size_t partition_count(int n) {
  if (n < 0) return 0;
  std::vector<std::size_t> dp(static_cast<std::size_t>(n) + 1, 0);
  dp[0] = 1;
  for (int part = 1; part <= n; ++part)
    for (int s = part; s <= n; ++s) dp[s] += dp[s - part];
  return dp[n];
}

std::string to_string(ModuleLabel label) {
  switch (label) {
    case ModuleLabel::h0: return "h0";
    case ModuleLabel::h1_2: return "h1/2";
    case ModuleLabel::h1_16: return "h1/16";
  }
  return "?";
}

ModuleLabel parse_module_label(const std::string& text) {
  if (text == "h0") return ModuleLabel::h0;
  if (text == "h1/2") return ModuleLabel::h1_2;
  if (text == "h1/16") return ModuleLabel::h1_16;
  throw std::invalid_argument("unknown module label '" + text + "' (expected h0, h1/2 or h1/16)");
}

Partition OrdinaryFamily::instantiate(int r) const {
  std::vector<int> parts;
  parts.reserve(offsets.size());
  for (int o : offsets) parts.push_back(r + o);
  return Partition(std::move(parts));
}

int OrdinaryFamily::weight_at(int r) const {
  int w = 0;
  for (int o : offsets) w += r + o;
  return w;
}

PatternSet PatternSet::for_module(ModuleLabel label) {
  // The ordinary families are shared by all three modules; only the lower
  // bound on r differs (2 for the vacuum module, 3 otherwise).
  const int r0 = label == ModuleLabel::h0 ? 2 : 3;
  PatternSet R;
  R.label = label;
  R.ordinary = {
      {{0, 0, 0}, r0},       {{1, 0, 0}, r0},          {{1, 1, 0}, r0},
      {{2, 1, 0}, r0},       {{2, 2, 0}, r0},          {{2, 0, 0}, 3},
      {{3, 3, 0, 0}, r0},    {{4, 3, 0, 0}, r0},       {{4, 3, 1, 0}, r0},
      {{4, 4, 1, 0}, r0},    {{6, 5, 3, 1, 0}, r0},
  };
  switch (label) {
    case ModuleLabel::h0:
      R.exceptional = {{5, 4, 2, 2}, {7, 6, 4, 2, 2}, {7, 7, 4, 2, 2}, {9, 8, 6, 4, 2, 2}};
      break;
    case ModuleLabel::h1_2:
      R.exceptional = {{2}, {1, 1, 1}, {3, 1, 1}, {3, 3}, {4, 3, 1}, {4, 4, 1}, {5, 4, 1, 1}, {6, 5, 3, 1}};
      break;
    case ModuleLabel::h1_16:
      R.exceptional = {{2},          {1, 1, 1, 1},    {3, 1, 1, 1},    {3, 3, 1},
                       {4, 3, 1},    {4, 4, 1, 1},    {5, 4, 1, 1, 1}, {5, 5, 1, 1, 1},
                       {6, 5, 3, 1, 1}, {6, 6, 3, 1, 1}, {7, 6, 4, 1, 1, 1}, {8, 7, 5, 3, 1, 1}};
      break;
  }
  return R;
}

std::vector<Partition> PatternSet::members_up_to(int max_weight) const {
  std::vector<Partition> out;
  for (const auto& fam : ordinary)
    for (int r = fam.min_r; fam.weight_at(r) <= max_weight; ++r) out.push_back(fam.instantiate(r));
  for (const auto& ex : exceptional)
    if (weight(ex) <= max_weight) out.push_back(ex);
  return out;
}

bool contains_pattern(const Partition& p, const PatternSet& patterns) {
  for (std::size_t end = 0; end < p.size(); ++end)
    if (window_hits(p.parts(), end, patterns)) return true;
  return false;
}

bool in_P(const Partition& p, const PatternSet& patterns) {
  if (patterns.label == ModuleLabel::h0 && p.ones() > 0) return false;
  return !contains_pattern(p, patterns);
}

std::vector<Partition> enumerate_P(const PatternSet& patterns, int n) {
  std::vector<Partition> out;
  if (n < 0) return out;
  const int min_part = patterns.label == ModuleLabel::h0 ? 2 : 1;
  std::vector<int> acc;
  // Depth-first with pruning: a window can only newly appear at the tail.
  auto rec = [&](auto&& self, int remaining, int max_part) -> void {
    if (remaining == 0) {
      out.emplace_back(acc);
      return;
    }
    for (int part = std::min(remaining, max_part); part >= min_part; --part) {
      acc.push_back(part);
      if (!window_hits(acc, acc.size() - 1, patterns)) self(self, remaining - part, part);
      acc.pop_back();
    }
  };
  rec(rec, n, n);
  sort_pbw_descending(out);
  return out;
}

bool TailPattern::matches(const Partition& p) const {
  const std::size_t k = items.size();
  // A leading gt item also accepts "no such part": [4] is in P_{>5,4}, ∅ in P_{>2}.
  const bool open_front = items[0].kind == TailItem::Kind::gt;
  if (p.size() + (open_front ? 1 : 0) < k) return false;
  const std::size_t skip = p.size() < k ? 1 : 0;
  const std::size_t start = p.size() + skip - k;
  for (std::size_t i = skip; i < k; ++i)
    if (!items[i].holds(p[start + i - skip])) return false;
  return true;
}

std::string TailPattern::str() const {
  std::string s;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) s += ',';
    if (items[i].kind == TailItem::Kind::gt) s += '>';
    s += std::to_string(items[i].value);
  }
  return s;
}

TailPattern parse_tail_pattern(const std::string& text) {
  TailPattern tp;
  for (const auto& field : split_fields(text)) {
    const bool gt = !field.empty() && field.front() == '>';
    const int v = parse_positive(gt ? field.substr(1) : field);
    tp.items.push_back(gt ? TailItem::gt(v) : TailItem::eq(v));
  }
  if (tp.items.empty()) throw std::invalid_argument("empty tail pattern");
  return tp;
}

std::vector<Partition> enumerate_tail(const PatternSet& patterns, const TailPattern& tail, int n) {
  auto all = enumerate_P(patterns, n);
  std::vector<Partition> out;
  for (auto& p : all)
    if (tail.matches(p)) out.push_back(std::move(p));
  return out;
}

}  // namespace ising_pbw
