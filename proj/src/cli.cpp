#include "ising_pbw/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "ising_pbw/nahm.hpp"
#include "ising_pbw/reduction.hpp"
#include "ising_pbw/virasoro.hpp"

namespace ising_pbw {

namespace {

constexpr int kSchema = 1;
constexpr unsigned kLemma1Seed = 2024;
constexpr int kLemma1RandomCount = 50;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class Logger {
 public:
  explicit Logger(std::ostream& err) : err_(err), start_(std::chrono::steady_clock::now()) {}
  void operator()(const std::string& msg) const {
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    std::ostringstream line;
    line.setf(std::ios::fixed);
    line.precision(2);
    line << "[ising_pbw " << s << "s] " << msg << '\n';
    err_ << line.str() << std::flush;
  }

 private:
  std::ostream& err_;
  std::chrono::steady_clock::time_point start_;
};

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

nlohmann::json parts_json(const std::vector<Partition>& ps) {
  nlohmann::json a = nlohmann::json::array();
  for (const auto& p : ps) a.push_back(p.parts());
  return a;
}

std::string join_partitions(const std::vector<Partition>& ps) {
  std::string s;
  for (const auto& p : ps) s += (s.empty() ? "" : " ") + p.str();
  return s.empty() ? "-" : s;
}

CharacterFormula formula_for(ModuleLabel label) {
  switch (label) {
    case ModuleLabel::h0:
      return CharacterFormula::T1;
    case ModuleLabel::h1_2:
      return CharacterFormula::T3;
    case ModuleLabel::h1_16:
      return CharacterFormula::T5;
  }
  return CharacterFormula::T3;
}

std::string formula_name(CharacterFormula f) {
  switch (f) {
    case CharacterFormula::T1:
      return "f_{0,0,0,0} - f_{1,0,0,0} + f_{1,1,0,0}";
    case CharacterFormula::T3:
      return "q^{1/2}(f_{3,2,0,0} + f_{5,2,1,1} + f_{6,3,2,2})";
    case CharacterFormula::T5:
      return "q^{1/16}(f_{1,1,0,0} + f_{4,2,1,1} + f_{7,3,3,3})";
  }
  return "?";
}

NahmParams parse_params(const std::string& text) {
  std::vector<int> v;
  std::stringstream ss(text);
  std::string field;
  while (std::getline(ss, field, ',')) {
    try {
      std::size_t used = 0;
      const int x = std::stoi(field, &used);
      if (used != field.size() || x < 0) throw std::invalid_argument("");
      v.push_back(x);
    } catch (const std::exception&) {
      throw UsageError("--params expects four non-negative integers a,b,c,d");
    }
  }
  if (v.size() != 4) throw UsageError("--params expects four non-negative integers a,b,c,d");
  return {v[0], v[1], v[2], v[3]};
}

nlohmann::json discrepancy_json(const std::optional<Discrepancy>& d) {
  if (!d) return nullptr;
  return {{"t", d->t}, {"q", to_string(d->q)}, {"lhs", to_string(d->lhs)}, {"rhs", to_string(d->rhs)}};
}

void series_csv(std::ostream& os, const BiPoly& p) {
  os << "t,q,coefficient\n";
  for (const auto& [key, c] : p.terms()) {
    const Rational q = ratio(key.q_scaled, p.q_denominator());
    os << key.t << ',' << to_string(q) << ',' << to_string(c) << '\n';
  }
}

// State shared by the subcommand handlers.
struct Session {
  RunConfig cfg;
  Logger log;
  std::ostream& sink;

  std::optional<ModuleSpec> spec_cache;
  std::optional<std::map<int, PivotSets>> pivot_cache;

  const ModuleSpec& spec() {
    if (!spec_cache) spec_cache = ModuleSpec::for_label(cfg.module_label);
    return *spec_cache;
  }

  const std::map<int, PivotSets>& pivots() {
    if (!pivot_cache) {
      log("row-reducing A_n for " + to_string(cfg.module_label) + ", n <= " + std::to_string(cfg.max_weight));
      pivot_cache = pivots_up_to(spec(), cfg.max_weight, cfg.threads);
      log("done");
    }
    return *pivot_cache;
  }

  nlohmann::json header(const std::string& command) const {
    return {{"schema", kSchema}, {"command", command}};
  }
};

int cmd_pivots(Session& s, bool basis_only, const std::optional<std::string>& partition_text) {
  const auto fmt = s.cfg.output_format;
  const std::string label = to_string(s.cfg.module_label);
  if (partition_text) {
    const Partition lambda = parse_partition(*partition_text);
    const int n = weight(lambda);
    const auto a = MatrixBuilder(s.spec()).build(n);
    const auto piv = pivot_columns(a.rows, static_cast<int>(a.columns.size()));
    bool is_pivot = false;
    for (int p : piv) is_pivot = is_pivot || a.columns[p] == lambda;
    const bool inP = in_P(lambda, s.spec().patterns);
    if (fmt == OutputFormat::json) {
      auto j = s.header(basis_only ? "basis" : "pivots");
      j.update({{"label", label}, {"partition", lambda.parts()}, {"n", n}, {"pivot", is_pivot}, {"in_P", inP}});
      s.sink << j.dump(2) << '\n';
    } else if (fmt == OutputFormat::csv) {
      s.sink << "label,partition,n,pivot,in_P\n"
             << label << ',' << lambda.plus_str() << ',' << n << ',' << is_pivot << ',' << inP << '\n';
    } else {
      s.sink << lambda.str() << " at weight " << n << " (" << label << "): " << (is_pivot ? "pivot" : "not a pivot")
             << "; " << (inP ? "avoids" : "contains") << " the patterns of R\n";
    }
    return 0;
  }

  const auto& data = s.pivots();
  if (basis_only && s.cfg.module_label == ModuleLabel::h0) {
    for (const auto& [n, sets] : data)
      for (const auto& lambda : sets.non_pivots)
        if (lambda.ones() > 0) {
          s.log("inconsistency: vacuum-module basis partition " + lambda.str() + " contains a part 1");
          return 1;
        }
  }

  if (fmt == OutputFormat::json) {
    auto j = s.header(basis_only ? "basis" : "pivots");
    nlohmann::json results = nlohmann::json::array();
    for (const auto& [n, sets] : data)
      results.push_back({{"label", label}, {"n", n}, {"pivots", parts_json(sets.pivots)}, {"basis", parts_json(sets.non_pivots)}});
    j.update({{"label", label}, {"max_weight", s.cfg.max_weight}, {"results", std::move(results)}});
    s.sink << j.dump(2) << '\n';
  } else if (fmt == OutputFormat::csv) {
    s.sink << "label,n,kind,partition\n";
    for (const auto& [n, sets] : data) {
      if (!basis_only)
        for (const auto& p : sets.pivots) s.sink << label << ',' << n << ",pivot," << p.plus_str() << '\n';
      for (const auto& p : sets.non_pivots) s.sink << label << ',' << n << ",basis," << p.plus_str() << '\n';
    }
  } else {
    for (const auto& [n, sets] : data) {
      s.sink << label << " weight " << n << '\n';
      if (!basis_only) s.sink << "  pivots: " << join_partitions(sets.pivots) << '\n';
      s.sink << "  basis:  " << join_partitions(sets.non_pivots) << '\n';
    }
  }
  return 0;
}

int cmd_matrix(Session& s, int n, bool dump, bool unreduced) {
  if (n < 0) throw UsageError("--weight must be non-negative");
  const auto a = MatrixBuilder(s.spec()).build(n);
  const std::size_t ncols = a.columns.size();
  std::vector<std::vector<Rational>> dense;
  std::vector<Partition> pivots;
  if (unreduced) {
    for (const auto& row : a.rows) {
      std::vector<Rational> d(ncols, Rational(0));
      for (const auto& [j, x] : row) d[static_cast<std::size_t>(j)] = x;
      dense.push_back(std::move(d));
    }
  } else {
    const auto e = rref(s.spec(), a);
    pivots = e.pivots;
    for (const auto& row : e.rows) {
      std::vector<Rational> d;
      for (const auto& col : e.column_order) d.push_back(row.coefficient(col));
      dense.push_back(std::move(d));
    }
  }

  const auto fmt = dump ? OutputFormat::csv : s.cfg.output_format;
  if (fmt == OutputFormat::csv) {
    for (std::size_t j = 0; j < ncols; ++j) s.sink << (j ? ", " : "") << a.columns[j].plus_str();
    s.sink << '\n';
    for (const auto& row : dense) {
      for (std::size_t j = 0; j < ncols; ++j) s.sink << (j ? ", " : "") << to_string(row[j]);
      s.sink << '\n';
    }
  } else if (fmt == OutputFormat::json) {
    auto j = s.header("matrix");
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : dense) {
      nlohmann::json r = nlohmann::json::array();
      for (const auto& x : row) r.push_back(to_string(x));
      rows.push_back(std::move(r));
    }
    j.update({{"label", to_string(s.cfg.module_label)},
              {"n", n},
              {"reduced", !unreduced},
              {"columns", parts_json(a.columns)},
              {"rows", std::move(rows)}});
    if (!unreduced) j["pivots"] = parts_json(pivots);
    s.sink << j.dump(2) << '\n';
  } else {
    s.sink << (unreduced ? "A_" : "RREF of A_") << n << " (" << to_string(s.cfg.module_label) << "): " << dense.size()
           << " x " << ncols << '\n';
    s.sink << "columns: " << join_partitions(a.columns) << '\n';
    for (const auto& row : dense) {
      for (std::size_t j = 0; j < ncols; ++j) s.sink << "  " << row[j].get_str();
      s.sink << '\n';
    }
    if (!unreduced) s.sink << "pivots: " << join_partitions(pivots) << '\n';
  }
  return 0;
}

struct CheckLine {
  std::string suite;
  std::string name;
  bool pass = false;
  std::string detail;
  std::optional<Discrepancy> discrepancy;
};

int cmd_verify(Session& s, const std::string& suite) {
  const bool all = suite == "all";
  const bool do_characters = all || suite == "characters" || suite == "theorems";
  const bool do_cross = all || suite == "theorems";
  const bool do_lemma1 = all || suite == "lemma1";
  const bool do_tails = all || suite == "tails";
  const int qt = s.cfg.q_truncation;
  const ModuleLabel label = s.cfg.module_label;

  std::vector<CheckLine> lines;
  auto add = [&](const std::string& suite_name, const IdentityCheck& r) {
    lines.push_back({suite_name, r.name, r.pass, r.first ? r.first->str() : "", r.first});
  };

  if (do_lemma1) {
    s.log("checking transformation-rule instances at q-truncation " + std::to_string(qt));
    for (const auto& inst : catalogued_lemma1_instances()) add("lemma1", check_lemma1(inst, qt));
    for (const auto& inst : random_lemma1_instances(kLemma1RandomCount, kLemma1Seed)) add("lemma1", check_lemma1(inst, qt));
  }

  if (do_tails) {
    s.log("checking closed forms of the tail series at q-truncation " + std::to_string(qt));
    std::vector<TailLemma> lemmas;
    if (label == ModuleLabel::h1_2) lemmas = {TailLemma::L2, TailLemma::L3, TailLemma::L4, TailLemma::L5};
    if (label == ModuleLabel::h1_16) lemmas = {TailLemma::L12, TailLemma::L13};
    for (auto l : lemmas)
      for (const auto& r : check_tail_closed_forms(l, qt)) add("tails", r);
    if (label == ModuleLabel::h0) {
      const auto R = PatternSet::for_module(label);
      add("tails", compare_series("h0 p(t,q) = " + formula_name(CharacterFormula::T1), p_series(R, std::nullopt, qt),
                                  theorem_rhs(CharacterFormula::T1, qt)));
    }
  }

  std::optional<CrossCheckReport> report;
  if (do_cross) {
    report = cross_check(s.spec(), s.pivots());
    for (const auto& row : report->rows) {
      std::string detail;
      if (!row.pass()) {
        detail = "rank " + std::to_string(row.rank) + ", basis " + std::to_string(row.basis) + ", |P(n)| " +
                 std::to_string(row.pattern_avoiding);
        if (!row.unexpected_pivots.empty()) detail += "; pivots in P: " + join_partitions(row.unexpected_pivots);
        if (!row.unexpected_basis.empty()) detail += "; basis outside P: " + join_partitions(row.unexpected_basis);
      }
      lines.push_back({"theorems", to_string(label) + " weight " + std::to_string(row.n) + ": non-pivots = P(n)",
                       row.pass(), detail, std::nullopt});
    }
  }

  if (do_characters) {
    const auto f = formula_for(label);
    const BiPoly lhs = refined_character(s.spec(), s.pivots(), s.cfg.max_weight);
    const BiPoly rhs = theorem_rhs(f, qt);
    add("characters", compare_series("refined character of " + to_string(label) + " up to q^{h+" +
                                         std::to_string(s.cfg.max_weight) + "} = " + formula_name(f),
                                     lhs, rhs));
  }

  std::size_t failed = 0;
  for (const auto& l : lines) failed += l.pass ? 0 : 1;

  const auto fmt = s.cfg.output_format;
  if (fmt == OutputFormat::json) {
    auto j = s.header("verify");
    nlohmann::json checks = nlohmann::json::array();
    for (const auto& l : lines)
      checks.push_back({{"suite", l.suite},
                        {"name", l.name},
                        {"pass", l.pass},
                        {"detail", l.detail},
                        {"discrepancy", discrepancy_json(l.discrepancy)}});
    j.update({{"suite", suite},
              {"label", to_string(label)},
              {"max_weight", s.cfg.max_weight},
              {"q_truncation", qt},
              {"pass", failed == 0},
              {"checks", std::move(checks)}});
    if (report) j["cross_check"] = report->to_json();
    s.sink << j.dump(2) << '\n';
  } else if (fmt == OutputFormat::csv) {
    s.sink << "suite,name,status,detail\n";
    for (const auto& l : lines)
      s.sink << l.suite << ',' << csv_field(l.name) << ',' << (l.pass ? "pass" : "FAIL") << ',' << csv_field(l.detail)
             << '\n';
  } else {
    for (const auto& l : lines)
      s.sink << (l.pass ? "PASS  " : "FAIL  ") << '[' << l.suite << "] " << l.name
             << (l.detail.empty() ? "" : ": " + l.detail) << '\n';
    if (report) s.sink << '\n' << report->tsv() << '\n';
    s.sink << lines.size() << " checks, " << failed << " failed\n";
  }
  return failed == 0 ? 0 : 1;
}

int cmd_singular(Session& s, const std::string& c_text, const std::string& h_text, int level) {
  if (level < 1) throw UsageError("--level must be at least 1");
  const VermaSpec spec{parse_rational(c_text), parse_rational(h_text)};
  s.log("solving L_1 v = L_2 v = 0 at level " + std::to_string(level) + " for " + spec.str());
  const auto vs = singular_vectors(spec, level);
  const auto fmt = s.cfg.output_format;
  if (fmt == OutputFormat::json) {
    auto j = s.header("singular");
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& v : vs) arr.push_back(v.to_json());
    j.update({{"c", to_string(spec.c)}, {"h", to_string(spec.h)}, {"level", level}, {"vectors", std::move(arr)}});
    s.sink << j.dump(2) << '\n';
  } else if (fmt == OutputFormat::csv) {
    s.sink << "index,partition,coefficient\n";
    for (std::size_t i = 0; i < vs.size(); ++i)
      for (const auto& [lambda, x] : vs[i].sorted_terms())
        s.sink << i << ',' << lambda.plus_str() << ',' << to_string(x) << '\n';
  } else {
    s.sink << vs.size() << " singular vector(s) at level " << level << " for " << spec.str() << '\n';
    for (const auto& v : vs) s.sink << "  (" << v.str() << ")|h>\n";
  }
  return 0;
}

int cmd_series(Session& s, const std::string& kind, const std::string& params, const std::optional<std::string>& tail) {
  BiPoly p(1, 0);
  std::string name;
  const int qt = s.cfg.q_truncation;
  if (kind == "nahm") {
    if (params.empty()) throw UsageError("--kind nahm needs --params a,b,c,d");
    const NahmParams np = parse_params(params);
    p = eval_f(np, qt);
    name = np.str();
  } else if (kind == "tail") {
    const auto R = PatternSet::for_module(s.cfg.module_label);
    std::optional<TailPattern> tp;
    if (tail) tp = parse_tail_pattern(*tail);
    p = p_series(R, tp, qt);
    name = "p" + (tp ? "_{" + tp->str() + "}" : std::string()) + " for " + to_string(s.cfg.module_label);
  } else if (kind == "character") {
    const auto f = formula_for(s.cfg.module_label);
    p = theorem_rhs(f, qt);
    name = formula_name(f);
  } else {
    p = refined_character(s.spec(), s.pivots(), s.cfg.max_weight);
    name = "refined character of " + to_string(s.cfg.module_label);
  }

  const auto fmt = s.cfg.output_format;
  if (fmt == OutputFormat::json) {
    auto j = s.header("series");
    j.update({{"kind", kind}, {"name", name}, {"q_truncation", to_string(p.q_truncation())}, {"series", p.to_json()}});
    s.sink << j.dump(2) << '\n';
  } else if (fmt == OutputFormat::csv) {
    series_csv(s.sink, p);
  } else {
    s.sink << name << " = " << p.str() << "  (exact through q^" << p.q_truncation().get_str() << ")\n";
  }
  return 0;
}

int resolve_threads(const std::optional<int>& flag) {
  if (flag) {
    if (*flag < 0) throw UsageError("--threads must be non-negative");
    return *flag;
  }
  if (const char* env = std::getenv("ISING_PBW_THREADS"); env && *env) {
    try {
      std::size_t used = 0;
      const int t = std::stoi(env, &used);
      if (used != std::string(env).size() || t < 0) throw std::invalid_argument("");
      return t;
    } catch (const std::exception&) {
      throw UsageError(std::string("ISING_PBW_THREADS must be a non-negative integer, got '") + env + "'");
    }
  }
  return 0;
}

}  // namespace

int default_max_weight(ModuleLabel label) { return label == ModuleLabel::h1_16 ? 25 : 15; }

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact PBW-basis computations for the three irreducible Ising modules", "ising_pbw"};
  app.require_subcommand(1, 1);
  app.fallthrough();

  std::string module = "h1/2";
  std::optional<int> max_weight;
  std::optional<int> q_trunc;
  std::string format = "text";
  std::string output;
  std::optional<int> threads;
  app.add_option("--module", module, "h0, h1/2 or h1/16")->check(CLI::IsMember({"h0", "h1/2", "h1/16"}));
  app.add_option("--max-weight", max_weight, "largest weight n (default 15, or 25 for h1/16)");
  app.add_option("--q-trunc", q_trunc, "series truncation, at least --max-weight (default max(25, max-weight))");
  app.add_option("--output-format", format, "text, json or csv")->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--output", output, "write results to this file instead of standard output");
  app.add_option("--threads", threads, "worker threads, 0 = all cores (default: $ISING_PBW_THREADS or 0)");

  std::optional<std::string> partition_text;
  auto* pivots = app.add_subcommand("pivots", "pivot and non-pivot partitions of A_n for n <= max-weight");
  pivots->add_option("--partition", partition_text, "report only this partition, e.g. 6,5,3,1");
  auto* basis = app.add_subcommand("basis", "quotient-module basis partitions for n <= max-weight");

  int matrix_weight = -1;
  bool dump = false;
  bool unreduced = false;
  auto* matrix = app.add_subcommand("matrix", "A_n or its reduced row-echelon form at one weight");
  matrix->add_option("--weight", matrix_weight, "weight n")->required();
  matrix->add_flag("--dump", dump, "CSV with a header row of column partitions");
  matrix->add_flag("--unreduced", unreduced, "print A_n itself");

  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "run a verification suite; exit 1 on any failure");
  verify->add_option("--suite", suite, "characters, lemma1, tails, theorems or all")
      ->check(CLI::IsMember({"characters", "lemma1", "tails", "theorems", "all"}));

  std::string c_text;
  std::string h_text;
  int level = 0;
  auto* singular = app.add_subcommand("singular", "basis of singular vectors of M(c,h) at one level");
  singular->set_help_flag("--help", "print this help message and exit");
  singular->add_option("--c", c_text, "central charge, e.g. 1/2")->required();
  singular->add_option("--h", h_text, "highest weight, e.g. 1/16")->required();
  singular->add_option("--level", level, "level n >= 1")->required();

  std::string kind = "character";
  std::string params;
  std::optional<std::string> tail;
  auto* series = app.add_subcommand("series", "print a truncated series");
  series->add_option("--kind", kind, "nahm, tail, character or refined")
      ->check(CLI::IsMember({"nahm", "tail", "character", "refined"}));
  series->add_option("--params", params, "a,b,c,d for --kind nahm");
  series->add_option("--tail", tail, "tail pattern for --kind tail, e.g. '>5,4' (omit for the whole series)");


  std::vector<const char*> argv{"ising_pbw"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  Logger log(err);
  try {
    RunConfig cfg;
    cfg.module_label = parse_module_label(module);
    cfg.max_weight = max_weight.value_or(default_max_weight(cfg.module_label));
    if (cfg.max_weight < 0) throw UsageError("--max-weight must be non-negative");
    cfg.q_truncation = q_trunc.value_or(std::max(25, cfg.max_weight));
    if (cfg.q_truncation < 0) throw UsageError("--q-trunc must be non-negative");
    cfg.output_format = format == "json" ? OutputFormat::json : format == "csv" ? OutputFormat::csv : OutputFormat::text;
    cfg.threads = resolve_threads(threads);
    if (!output.empty()) cfg.output_path = output;

    const bool uses_both = (verify->parsed() && suite != "lemma1" && suite != "tails") ||
                           (series->parsed() && kind == "refined");
    if (uses_both && cfg.q_truncation < cfg.max_weight)
      throw UsageError("--q-trunc (" + std::to_string(cfg.q_truncation) + ") must be at least --max-weight (" +
                       std::to_string(cfg.max_weight) + ")");

    std::ofstream file;
    if (cfg.output_path) {
      file.open(*cfg.output_path);
      if (!file) throw UsageError("cannot write to " + *cfg.output_path);
    }
    std::ostringstream buffer;
    Session session{cfg, log, buffer, std::nullopt, std::nullopt};

    int code = 0;
    if (pivots->parsed()) code = cmd_pivots(session, false, partition_text);
    if (basis->parsed()) code = cmd_pivots(session, true, std::nullopt);
    if (matrix->parsed()) code = cmd_matrix(session, matrix_weight, dump, unreduced);
    if (verify->parsed()) code = cmd_verify(session, suite);
    if (singular->parsed()) code = cmd_singular(session, c_text, h_text, level);
    if (series->parsed()) code = cmd_series(session, kind, params, tail);

    if (cfg.output_path) {
      file << buffer.str();
      if (!file.flush()) throw UsageError("cannot write to " + *cfg.output_path);
    } else {
      out << buffer.str() << std::flush;
    }
    if (code != 0) log("finished with failures");
    return code;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace ising_pbw
