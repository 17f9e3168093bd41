#pragma once

// Command-line front end. Results go to `out` (or --output), progress and
// errors to `err`.
//
//   ising_pbw pivots   [--partition 6,5,3,1]
//   ising_pbw basis
//   ising_pbw matrix   --weight N [--dump] [--unreduced]
//   ising_pbw verify   --suite characters|lemma1|tails|theorems|all
//   ising_pbw singular --c 1/2 --h 1/16 --level 4
//   ising_pbw series   --kind nahm|tail|character|refined [--params a,b,c,d] [--tail '>5,4']
//
// Common flags: --module h0|h1/2|h1/16, --max-weight, --q-trunc,
// --output-format text|json|csv, --output PATH, --threads N (fallback
// ISING_PBW_THREADS; 0 = all cores).

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ising_pbw/partitions.hpp"

namespace ising_pbw {

enum class OutputFormat { text, json, csv };

struct RunConfig {
  ModuleLabel module_label = ModuleLabel::h1_2;
  int max_weight = 15;
  int q_truncation = 25;
  OutputFormat output_format = OutputFormat::text;
  std::optional<std::string> output_path;
  int threads = 0;
};

/// 15 for h0 and h1/2, 25 for h1/16.
int default_max_weight(ModuleLabel label);

/// Exit codes: 0 success, 1 a requested check failed, 2 usage or I/O error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ising_pbw
