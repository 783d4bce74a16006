#include "p2race/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "p2race/arith.hpp"
#include "p2race/charsum.hpp"
#include "p2race/errors.hpp"
#include "p2race/polyprimes.hpp"
#include "p2race/race.hpp"
#include "p2race/records.hpp"
#include "p2race/search.hpp"
#include "p2race/sieve.hpp"

namespace p2race {
namespace {

using nlohmann::json;
using u64 = std::uint64_t;

constexpr int kSchemaVersion = 1;

struct CommonOpts {
  std::string output = "table";
  unsigned threads = 0;
  u64 sieve_limit = 0;  // 0: derive from the request
  std::string prime_cache;
  u64 trial_bound = 100000;
};

std::string fmt_g(double v, int prec = 10) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", prec, v);
  return buf;
}

void print_table(std::ostream& out, const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
  for (const auto& row : rows)
    for (std::size_t c = 0; c < row.size() && c < width.size(); ++c)
      width[c] = std::max(width[c], row[c].size());
  auto emit = [&](const std::vector<std::string>& cells) {
    for (std::size_t c = 0; c < cells.size(); ++c) {
      out << (c == 0 ? "" : "  ");
      out.width((std::streamsize)width[c]);
      out << cells[c];
    }
    out << "\n";
  };
  out << std::right;
  emit(header);
  std::vector<std::string> dashes;
  dashes.reserve(header.size());
  for (std::size_t c = 0; c < header.size(); ++c)
    dashes.emplace_back(std::string(width[c], '-'));
  emit(dashes);
  for (const auto& row : rows) emit(row);
}

json estimate_json(const LEstimate& e) {
  return json{
      {"value", e.value}, {"cutoff", e.cutoff}, {"oscillation", e.oscillation}};
}

const char* validation_name(DiscriminantStatus s) {
  switch (s) {
    case DiscriminantStatus::fundamental:
      return "fundamental";
    case DiscriminantStatus::trial_checked:
      return "trial_checked";
    case DiscriminantStatus::not_fundamental:
      break;
  }
  return "not_fundamental";
}

BigInt parse_bigint(const std::string& text, const char* what) {
  try {
    return BigInt::from_string(text);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument(std::string(what) + " is not a valid integer: '" +
                                text + "'");
  }
}

// Resolves --d / --preset for character-based subcommands.
BigInt resolve_d(const std::string& d_text, const std::string& preset) {
  if (!preset.empty()) {
    if (preset == "euler") return BigInt{kEulerDiscriminant};
    return BigInt::from_string(kRecordDiscriminant);  // dgk-record
  }
  return parse_bigint(d_text, "--d");
}

BigInt resolve_a(const std::string& a_text, const std::string& preset) {
  if (!preset.empty()) {
    if (preset == "euler") return BigInt{kEulerA};
    return BigInt::from_string(kRecordA);  // dgk-record
  }
  return parse_bigint(a_text, "--A");
}

// Builds or loads the prime table covering `needed`.  An explicit
// --sieve-limit below the requirement is a usage error; a larger one wins.
// The cache path comes from --prime-cache, then $P2RACE_CACHE.  All cache
// chatter goes to err so stdout stays deterministic for fixed flags.
PrimeTable acquire_table(u64 needed, const CommonOpts& opts, std::ostream& err) {
  needed = std::max<u64>(needed, 2);
  u64 limit = needed;
  if (opts.sieve_limit != 0) {
    if (opts.sieve_limit < needed) {
      throw std::invalid_argument(
          "--sieve-limit " + std::to_string(opts.sieve_limit) +
          " is below the " + std::to_string(needed) +
          " required by the requested quantities");
    }
    limit = opts.sieve_limit;
  }
  std::string cache = opts.prime_cache;
  if (cache.empty()) {
    if (const char* env = std::getenv("P2RACE_CACHE")) cache = env;
  }
  if (!cache.empty() && std::filesystem::exists(cache)) {
    try {
      PrimeTable table = load_prime_table(cache);
      if (table.limit >= limit) {
        err << "prime cache: loaded " << cache << " (limit " << table.limit
            << ")\n";
        return table;
      }
      err << "prime cache: limit " << table.limit << " below required "
          << limit << "; rebuilding\n";
    } catch (const CacheFormatError& e) {
      err << "prime cache: " << e.what() << "; rebuilding\n";
    }
  }
  SieveOptions sopts;
  sopts.threads = opts.threads;
  PrimeTable table = build_prime_table(limit, sopts);
  if (!cache.empty()) {
    save_prime_table(table, cache);
    err << "prime cache: wrote " << cache << " (limit " << table.limit
        << ")\n";
  }
  return table;
}

void emit(std::ostream& out, const CommonOpts& opts, const json& doc,
          const std::string& csv,
          const std::function<void(std::ostream&)>& table_fn) {
  if (opts.output == "json") {
    out << doc.dump(2) << "\n";
  } else if (opts.output == "csv") {
    out << csv;
  } else {
    table_fn(out);
  }
}

// --- race ---------------------------------------------------------------

struct RaceArgs {
  std::string d_text, preset, convention = "ordered_with_equal";
  std::vector<u64> xs;
  int eta = -1;
  u64 cutoff = 0;  // 0: max(xs)
};

PairConvention parse_convention(const std::string& name) {
  if (name == "ordered_with_equal") return PairConvention::ordered_with_equal;
  if (name == "ordered_strict") return PairConvention::ordered_strict;
  return PairConvention::unordered;
}

int run_race(const RaceArgs& args, const CommonOpts& opts, std::ostream& out,
             std::ostream& err) {
  const BigInt d = resolve_d(args.d_text, args.preset);
  const u64 max_x = *std::max_element(args.xs.begin(), args.xs.end());
  const u64 cutoff = args.cutoff != 0 ? args.cutoff : max_x;
  const PrimeTable table =
      acquire_table(std::max(max_x, cutoff), opts, err);

  const CharacterSpec chi(d, opts.trial_bound);
  if (chi.validation() == DiscriminantStatus::trial_checked) {
    err << "note: d squarefree-checked only up to trial bound "
        << opts.trial_bound << "\n";
  }
  const SignCache cache = chi_on_primes(chi, table, opts.threads);
  const LEstimate curly = curly_l(cache, table, cutoff);
  const PairConvention conv = parse_convention(args.convention);
  const auto rows =
      race_series(cache, table, args.xs, args.eta, conv, curly, opts.threads);

  json doc{{"schema_version", kSchemaVersion},
           {"command", "race"},
           {"d", d.to_string()},
           {"d_validation", validation_name(chi.validation())},
           {"eta", args.eta},
           {"convention", args.convention},
           {"curly_l", estimate_json(curly)},
           {"rows", json::array()}};
  std::ostringstream csv;
  csv << "x,n_pp,n_pm,n_mp,n_mm,n_coprime,r_minus,r_plus,predicted_minus,"
         "cutoff,oscillation\n";
  std::vector<std::vector<std::string>> cells;
  for (const auto& row : rows) {
    const double r_minus = bias_ratio(row.tally, -1);
    const double r_plus = bias_ratio(row.tally, +1);
    const double predicted_minus = predicted_bias(curly, row.tally.x, -1);
    doc["rows"].push_back(json{{"x", row.tally.x},
                               {"n_pp", row.tally.n_pp},
                               {"n_pm", row.tally.n_pm},
                               {"n_mp", row.tally.n_mp},
                               {"n_mm", row.tally.n_mm},
                               {"n_coprime", row.tally.n_coprime},
                               {"r_minus", r_minus},
                               {"r_plus", r_plus},
                               {"predicted_minus", predicted_minus}});
    csv << row.tally.x << ',' << row.tally.n_pp << ',' << row.tally.n_pm << ','
        << row.tally.n_mp << ',' << row.tally.n_mm << ','
        << row.tally.n_coprime << ',' << fmt_g(r_minus) << ','
        << fmt_g(r_plus) << ',' << fmt_g(predicted_minus) << ','
        << curly.cutoff << ',' << fmt_g(curly.oscillation) << "\n";
    cells.push_back({std::to_string(row.tally.x),
                     std::to_string(row.tally.n_pp),
                     std::to_string(row.tally.n_pm),
                     std::to_string(row.tally.n_mp),
                     std::to_string(row.tally.n_mm),
                     std::to_string(row.tally.n_coprime), fmt_g(row.r, 6),
                     fmt_g(row.predicted, 6)});
  }
  emit(out, opts, doc, csv.str(), [&](std::ostream& o) {
    o << "d = " << d.to_string() << "   eta = " << args.eta
      << "   convention = " << args.convention << "\n";
    o << "curly_l = " << fmt_g(curly.value) << " at cutoff " << curly.cutoff
      << " (oscillation " << fmt_g(curly.oscillation, 3) << ")\n\n";
    print_table(o,
                {"x", "n_pp", "n_pm", "n_mp", "n_mm", "n_coprime", "r",
                 "predicted"},
                cells);
  });
  return 0;
}

// --- lsum / l1 ------------------------------------------------------------

struct CharArgs {
  std::string d_text, preset;
  u64 cutoff = 10000000;
};

int run_lsum(const CharArgs& args, const CommonOpts& opts, std::ostream& out,
             std::ostream& err) {
  const BigInt d = resolve_d(args.d_text, args.preset);
  const PrimeTable table = acquire_table(args.cutoff, opts, err);
  const CharacterSpec chi(d, opts.trial_bound);
  const SignCache cache = chi_on_primes(chi, table, opts.threads);
  const LEstimate curly = curly_l(cache, table, args.cutoff);
  const LEstimate e = e_chi(cache, table, args.cutoff);
  const auto interval = l1_interval_from_curly_l(curly);

  json doc{{"schema_version", kSchemaVersion},
           {"command", "lsum"},
           {"d", d.to_string()},
           {"d_validation", validation_name(chi.validation())},
           {"curly_l", estimate_json(curly)},
           {"e_chi", estimate_json(e)},
           {"l1_interval", json{{"low", interval.first},
                                {"high", interval.second}}}};
  std::ostringstream csv;
  csv << "quantity,value,cutoff,oscillation\n";
  csv << "curly_l," << fmt_g(curly.value) << ',' << curly.cutoff << ','
      << fmt_g(curly.oscillation) << "\n";
  csv << "e_chi," << fmt_g(e.value) << ',' << e.cutoff << ','
      << fmt_g(e.oscillation) << "\n";
  csv << "l1_interval_low," << fmt_g(interval.first) << ",,\n";
  csv << "l1_interval_high," << fmt_g(interval.second) << ",,\n";
  emit(out, opts, doc, csv.str(), [&](std::ostream& o) {
    o << "d = " << d.to_string() << "\n";
    print_table(o, {"quantity", "value", "cutoff", "oscillation"},
                {{"curly_l", fmt_g(curly.value), std::to_string(curly.cutoff),
                  fmt_g(curly.oscillation, 3)},
                 {"e_chi", fmt_g(e.value), std::to_string(e.cutoff),
                  fmt_g(e.oscillation, 3)},
                 {"l1_low", fmt_g(interval.first), "", ""},
                 {"l1_high", fmt_g(interval.second), "", ""}});
  });
  return 0;
}

int run_l1(const CharArgs& args, const CommonOpts& opts, std::ostream& out,
           std::ostream& err) {
  const BigInt d = resolve_d(args.d_text, args.preset);
  const PrimeTable table = acquire_table(args.cutoff, opts, err);
  const CharacterSpec chi(d, opts.trial_bound);
  const SignCache cache = chi_on_primes(chi, table, opts.threads);
  const LEstimate l1 = l1_euler_product(cache, table, args.cutoff);

  json doc{{"schema_version", kSchemaVersion},
           {"command", "l1"},
           {"d", d.to_string()},
           {"d_validation", validation_name(chi.validation())},
           {"l1", estimate_json(l1)}};
  std::ostringstream csv;
  csv << "quantity,value,cutoff,oscillation\n";
  csv << "l1," << fmt_g(l1.value) << ',' << l1.cutoff << ','
      << fmt_g(l1.oscillation) << "\n";
  emit(out, opts, doc, csv.str(), [&](std::ostream& o) {
    o << "d = " << d.to_string() << "\n";
    print_table(o, {"quantity", "value", "cutoff", "oscillation"},
                {{"l1", fmt_g(l1.value), std::to_string(l1.cutoff),
                  fmt_g(l1.oscillation, 3)}});
  });
  return 0;
}

// --- search -----------------------------------------------------------------

struct SearchArgs {
  u64 bound = 0;
  std::string signs = "both", side = "ge";
  u64 cutoff = 10000;
  std::size_t top_k = 10;
  double tau = 0.0;
  bool tau_set = false;
};

int run_search(const SearchArgs& args, const CommonOpts& opts,
               std::ostream& out, std::ostream& err) {
  const SignPolicy policy = args.signs == "positive" ? SignPolicy::positive
                            : args.signs == "negative" ? SignPolicy::negative
                                                       : SignPolicy::both;
  const PrimeTable table = acquire_table(args.cutoff, opts, err);
  const ScanResult scan = scan_discriminants(args.bound, policy, table,
                                             args.cutoff, args.top_k,
                                             opts.threads);
  json doc{{"schema_version", kSchemaVersion},
           {"command", "search"},
           {"bound", args.bound},
           {"signs", args.signs},
           {"cutoff", args.cutoff},
           {"scanned", scan.discriminants.size()},
           {"most_negative", json::array()},
           {"most_positive", json::array()}};
  for (const auto& rec : scan.most_negative) {
    doc["most_negative"].push_back(
        json{{"d", rec.d}, {"curly_l", estimate_json(rec.curly)}});
  }
  for (const auto& rec : scan.most_positive) {
    doc["most_positive"].push_back(
        json{{"d", rec.d}, {"curly_l", estimate_json(rec.curly)}});
  }
  if (args.tau_set) {
    const TailSide side = args.side == "le" ? TailSide::le : TailSide::ge;
    const double proportion = tail_proportion(scan, args.tau, side);
    doc["tail"] = json{
        {"tau", args.tau}, {"side", args.side}, {"proportion", proportion}};
  }

  std::ostringstream csv;
  csv << "list,rank,d,value,cutoff,oscillation\n";
  auto csv_list = [&](const char* name,
                      const std::vector<DiscriminantRecord>& recs) {
    for (std::size_t i = 0; i < recs.size(); ++i) {
      csv << name << ',' << (i + 1) << ',' << recs[i].d << ','
          << fmt_g(recs[i].curly.value) << ',' << recs[i].curly.cutoff << ','
          << fmt_g(recs[i].curly.oscillation) << "\n";
    }
  };
  csv_list("most_negative", scan.most_negative);
  csv_list("most_positive", scan.most_positive);

  emit(out, opts, doc, csv.str(), [&](std::ostream& o) {
    o << "scanned " << scan.discriminants.size()
      << " fundamental discriminants with |d| <= " << args.bound
      << " (signs: " << args.signs << ", cutoff " << args.cutoff << ")\n\n";
    auto table_list = [&](const char* title,
                          const std::vector<DiscriminantRecord>& recs) {
      o << title << "\n";
      std::vector<std::vector<std::string>> cells;
      for (std::size_t i = 0; i < recs.size(); ++i) {
        cells.push_back({std::to_string(i + 1), std::to_string(recs[i].d),
                         fmt_g(recs[i].curly.value, 6),
                         fmt_g(recs[i].curly.oscillation, 3)});
      }
      print_table(o, {"rank", "d", "curly_l", "oscillation"}, cells);
      o << "\n";
    };
    table_list("most negative", scan.most_negative);
    table_list("most positive", scan.most_positive);
    if (args.tau_set) {
      const TailSide side = args.side == "le" ? TailSide::le : TailSide::ge;
      o << "proportion with curly_l " << (side == TailSide::ge ? ">=" : "<=")
        << " " << fmt_g(args.tau, 6) << ": "
        << fmt_g(tail_proportion(scan, args.tau, side), 6) << "\n";
    }
  });
  return 0;
}

// --- hl (Conjecture F) --------------------------------------------------

struct HlArgs {
  std::string a_text, preset;
  u64 n = 0;
  u64 cutoff = 10000000;
  int rounds = 32;
};

int run_hl(const HlArgs& args, const CommonOpts& opts, std::ostream& out,
           std::ostream& err) {
  const BigInt a = resolve_a(args.a_text, args.preset);
  const PolySpec poly = make_poly(a);
  const PrimeTable table = acquire_table(args.cutoff, opts, err);
  const ConjectureFReport report = conjecture_f_report(
      poly, args.n, table, args.cutoff, args.rounds, opts.threads);

  json doc{{"schema_version", kSchemaVersion},
           {"command", "hl"},
           {"a", poly.a.to_string()},
           {"delta", poly.delta.to_string()},
           {"n", args.n},
           {"rounds", args.rounds},
           {"prime_count", report.prime_count},
           {"li", report.li},
           {"hl_constant", estimate_json(report.hl)},
           {"ratio", report.ratio}};
  std::ostringstream csv;
  csv << "a,n,prime_count,li,hl_value,hl_cutoff,hl_oscillation,ratio\n";
  csv << poly.a.to_string() << ',' << args.n << ',' << report.prime_count
      << ',' << fmt_g(report.li) << ',' << fmt_g(report.hl.value) << ','
      << report.hl.cutoff << ',' << fmt_g(report.hl.oscillation) << ','
      << fmt_g(report.ratio) << "\n";
  emit(out, opts, doc, csv.str(), [&](std::ostream& o) {
    o << "f(x) = x^2 + x + a,  a = " << poly.a.to_string() << "\n";
    o << "discriminant = " << poly.delta.to_string() << "\n\n";
    print_table(o, {"quantity", "value"},
                {{"prime_count", std::to_string(report.prime_count)},
                 {"li", fmt_g(report.li, 8)},
                 {"hl_constant", fmt_g(report.hl.value, 8)},
                 {"hl_oscillation", fmt_g(report.hl.oscillation, 3)},
                 {"hl_cutoff", std::to_string(report.hl.cutoff)},
                 {"ratio", fmt_g(report.ratio, 8)}});
  });
  return 0;
}

// --- landau ---------------------------------------------------------------

int run_landau(const std::vector<u64>& xs, const CommonOpts& opts,
               std::ostream& out, std::ostream& err) {
  const u64 max_x = *std::max_element(xs.begin(), xs.end());
  const PrimeTable table = acquire_table(max_x, opts, err);
  json doc{{"schema_version", kSchemaVersion},
           {"command", "landau"},
           {"rows", json::array()}};
  std::ostringstream csv;
  csv << "x,count,residual\n";
  std::vector<std::vector<std::string>> cells;
  for (u64 x : xs) {
    const auto [count, residual] = landau_residual(table, x);
    doc["rows"].push_back(
        json{{"x", x}, {"count", count}, {"residual", residual}});
    csv << x << ',' << count << ',' << fmt_g(residual) << "\n";
    cells.push_back(
        {std::to_string(x), std::to_string(count), fmt_g(residual, 6)});
  }
  emit(out, opts, doc, csv.str(), [&](std::ostream& o) {
    print_table(o, {"x", "count", "residual"}, cells);
  });
  return 0;
}

void add_common(CLI::App* sub, CommonOpts& opts) {
  sub->add_option("-o,--output", opts.output, "Output format")
      ->check(CLI::IsMember({"table", "csv", "json"}))
      ->capture_default_str();
  sub->add_option("--threads", opts.threads,
                  "Worker threads (0 = machine parallelism)")
      ->capture_default_str();
  sub->add_option("--sieve-limit", opts.sieve_limit,
                  "Sieve at least this far (0 = derive from the request)");
  sub->add_option("--prime-cache", opts.prime_cache,
                  "Prime table cache file (default: $P2RACE_CACHE)");
}

void add_trial_bound(CLI::App* sub, CommonOpts& opts) {
  sub->add_option("--trial-bound", opts.trial_bound,
                  "Trial-division bound for discriminant validation")
      ->capture_default_str();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"prime races among products of two primes, character sums over "
               "primes, and prime-generating quadratics"};
  app.name("p2race");
  app.require_subcommand(1);

  CommonOpts race_common, lsum_common, l1_common, search_common, hl_common,
      landau_common;
  RaceArgs race_args;
  CharArgs lsum_args, l1_args;
  SearchArgs search_args;
  HlArgs hl_args;
  std::vector<u64> landau_xs;

  CLI::App* race_sub = app.add_subcommand(
      "race", "Semiprime sign-class tallies, bias ratios, and predictions");
  auto* race_d = race_sub->add_option("--d", race_args.d_text,
                                      "Fundamental discriminant (decimal)");
  auto* race_preset =
      race_sub->add_option("--preset", race_args.preset, "Named discriminant")
          ->check(CLI::IsMember({"euler", "dgk-record"}));
  race_preset->excludes(race_d);
  race_sub->add_option("--xs", race_args.xs, "Tally bounds x (comma separated)")
      ->required()
      ->delimiter(',');
  race_sub->add_option("--eta", race_args.eta, "Race sign: -1 or +1")
      ->check(CLI::IsMember({-1, 1}))
      ->capture_default_str();
  race_sub
      ->add_option("--convention", race_args.convention, "Pair convention")
      ->check(CLI::IsMember(
          {"ordered_with_equal", "ordered_strict", "unordered"}))
      ->capture_default_str();
  race_sub->add_option("--cutoff", race_args.cutoff,
                       "curly-L cutoff (default: max of --xs)");
  add_common(race_sub, race_common);
  add_trial_bound(race_sub, race_common);

  CLI::App* lsum_sub = app.add_subcommand(
      "lsum", "Truncated curly-L and E(chi) with an L(1,chi) interval");
  auto* lsum_d = lsum_sub->add_option("--d", lsum_args.d_text,
                                      "Fundamental discriminant (decimal)");
  lsum_sub->add_option("--preset", lsum_args.preset, "Named discriminant")
      ->check(CLI::IsMember({"euler", "dgk-record"}))
      ->excludes(lsum_d);
  lsum_sub->add_option("--cutoff", lsum_args.cutoff, "Prime cutoff")
      ->capture_default_str();
  add_common(lsum_sub, lsum_common);
  add_trial_bound(lsum_sub, lsum_common);

  CLI::App* l1_sub =
      app.add_subcommand("l1", "Truncated Euler product for L(1, chi)");
  auto* l1_d = l1_sub->add_option("--d", l1_args.d_text,
                                  "Fundamental discriminant (decimal)");
  l1_sub->add_option("--preset", l1_args.preset, "Named discriminant")
      ->check(CLI::IsMember({"euler", "dgk-record"}))
      ->excludes(l1_d);
  l1_sub->add_option("--cutoff", l1_args.cutoff, "Prime cutoff")
      ->capture_default_str();
  add_common(l1_sub, l1_common);
  add_trial_bound(l1_sub, l1_common);

  CLI::App* search_sub = app.add_subcommand(
      "search", "Scan fundamental discriminants for extreme curly-L");
  search_sub->add_option("--D,--bound", search_args.bound, "Scan |d| <= D")
      ->required();
  search_sub->add_option("--signs", search_args.signs, "Sign policy")
      ->check(CLI::IsMember({"positive", "negative", "both"}))
      ->capture_default_str();
  search_sub->add_option("--cutoff", search_args.cutoff, "Prime cutoff")
      ->capture_default_str();
  search_sub->add_option("--top", search_args.top_k, "Extremes to keep")
      ->capture_default_str();
  auto* tau_opt = search_sub->add_option("--tau", search_args.tau,
                                         "Tail threshold for curly-L values");
  search_sub->add_option("--side", search_args.side, "Tail side")
      ->check(CLI::IsMember({"ge", "le"}))
      ->needs(tau_opt)
      ->capture_default_str();
  add_common(search_sub, search_common);

  CLI::App* hl_sub = app.add_subcommand(
      "hl", "Conjecture F report for f(x) = x^2 + x + A");
  auto* hl_a =
      hl_sub->add_option("--A", hl_args.a_text, "Coefficient A (decimal)");
  hl_sub->add_option("--preset", hl_args.preset, "Named coefficient")
      ->check(CLI::IsMember({"euler", "dgk-record"}))
      ->excludes(hl_a);
  hl_sub->add_option("--n", hl_args.n, "Evaluate over 0 <= x <= n")
      ->required();
  hl_sub->add_option("--cutoff", hl_args.cutoff,
                     "Prime cutoff for the Hardy-Littlewood constant")
      ->capture_default_str();
  hl_sub->add_option("--rounds", hl_args.rounds,
                     "Miller-Rabin rounds above 2^64")
      ->capture_default_str();
  add_common(hl_sub, hl_common);

  CLI::App* landau_sub = app.add_subcommand(
      "landau", "Ordered prime-pair counts and the Landau residual");
  landau_sub->add_option("--xs", landau_xs, "Bounds x (comma separated)")
      ->required()
      ->delimiter(',');
  add_common(landau_sub, landau_common);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "p2race: " << e.what() << "\n";
    return 2;
  }

  try {
    if (race_sub->parsed()) {
      if (race_args.d_text.empty() && race_args.preset.empty())
        throw std::invalid_argument("one of --d or --preset is required");
      return run_race(race_args, race_common, out, err);
    }
    if (lsum_sub->parsed()) {
      if (lsum_args.d_text.empty() && lsum_args.preset.empty())
        throw std::invalid_argument("one of --d or --preset is required");
      return run_lsum(lsum_args, lsum_common, out, err);
    }
    if (l1_sub->parsed()) {
      if (l1_args.d_text.empty() && l1_args.preset.empty())
        throw std::invalid_argument("one of --d or --preset is required");
      return run_l1(l1_args, l1_common, out, err);
    }
    if (search_sub->parsed()) {
      search_args.tau_set = tau_opt->count() > 0;
      return run_search(search_args, search_common, out, err);
    }
    if (hl_sub->parsed()) {
      if (hl_args.a_text.empty() && hl_args.preset.empty())
        throw std::invalid_argument("one of --A or --preset is required");
      return run_hl(hl_args, hl_common, out, err);
    }
    if (landau_sub->parsed())
      return run_landau(landau_xs, landau_common, out, err);
    err << "p2race: no subcommand selected\n";
    return 2;
  } catch (const InvalidDiscriminantError& e) {
    err << "p2race: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "p2race: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    err << "p2race: " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    err << "p2race: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "p2race: unexpected error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace p2race
