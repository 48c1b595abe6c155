#include "cli/commands.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <mutex>
#include <new>
#include <ostream>
#include <sstream>

#include "cli/verify.hpp"
#include "gdet/cache.hpp"
#include "gdet/determinant.hpp"
#include "gdet/number_theory.hpp"
#include "gdet/partitions.hpp"
#include "gdet/serialize.hpp"
#include "gdet/wolstenholme.hpp"

namespace gdet::cli {
namespace {

using json = nlohmann::json;

class ProgressPrinter {
public:
  explicit ProgressPrinter(std::ostream* err) : err_(err) {}

  std::function<void(const Progress&)> callback() {
    if (err_ == nullptr) return {};
    return [this](const Progress& p) { report(p); };
  }

  void line(const std::string& text) {
    if (err_ == nullptr) return;
    std::lock_guard lock(mutex_);
    *err_ << text << '\n' << std::flush;
  }

private:
  void report(const Progress& p) {
    std::lock_guard lock(mutex_);
    const auto now = std::chrono::steady_clock::now();
    if (now - last_ < std::chrono::seconds(2)) return;
    last_ = now;
    *err_ << "[" << p.stage << "] " << p.done << "/" << p.total << ", " << p.terms << " terms\n" << std::flush;
  }

  std::ostream* err_;
  std::mutex mutex_;
  std::chrono::steady_clock::time_point last_{};
};

ComputeOptions make_options(const RunConfig& config, ComputeStats* stats, ProgressPrinter& printer) {
  ComputeOptions options;
  options.memory_budget = config.memory_budget;
  options.jobs = config.jobs;
  options.stats = stats;
  options.progress = printer.callback();
  return options;
}

template <class Scalar>
void fill_row(const FiniteGroup& g, unsigned k_max, const RunConfig& config, const ComputeOptions& options,
              ProgressPrinter& printer, TermsRow& row) {
  using Poly = SparsePoly<Scalar>;
  constexpr CoefficientMode mode = mode_of_v<Scalar>;
  std::optional<PolyCache> cache;
  if (config.cache_dir) cache.emplace(*config.cache_dir);
  auto key = [&](unsigned j) { return CacheKey::for_group(g, j, mode); };

  std::optional<Poly> theta;
  auto get_theta = [&]() -> const Poly& {
    if (!theta && cache) theta = cache->load<Scalar>(key(1));
    if (!theta) {
      theta = group_determinant<Scalar>(g, options);
      if (cache) cache->store(key(1), *theta);
    }
    return *theta;
  };

  std::optional<Poly> current;
  unsigned current_k = 0;
  for (unsigned j = 1; j <= k_max; ++j) {
    std::optional<std::uint64_t> count;
    if (cache) count = cache->peek_count(key(j));
    if (!count) {
      Poly next;
      if (j == 1) {
        next = get_theta();
      } else {
        if (current_k != j - 1) {
          current.reset();
          if (cache) current = cache->load<Scalar>(key(j - 1));
          if (!current) current = poly_pow(get_theta(), j - 1, options);
        }
        next = poly_mul(*current, get_theta(), options);
      }
      if (cache) cache->store(key(j), next);
      count = next.size();
      current = std::move(next);
      current_k = j;
      printer.line(g.name() + ": N(Theta^" + std::to_string(j) + ") = " + std::to_string(*count));
    }
    TermCell cell;
    cell.value = *count;
    cell.exact = !is_monte_carlo_v<Scalar>;
    if (!cell.exact) cell.failure_bound = monte_carlo_failure_bound(*count, coefficient_bit_bound(g.order(), j));
    row.cells[j - 1] = cell;
  }
}

std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(3) << v;
  return os.str();
}

// Shared layout for the n-by-k tables.
struct TextTable {
  std::size_t columns = 0;
  std::vector<std::pair<std::uint64_t, std::vector<std::string>>> rows;
};

void write_text_table(std::ostream& out, const TextTable& t, OutputFormat format) {
  if (format == OutputFormat::Csv) {
    out << "n\\k";
    for (std::size_t k = 1; k <= t.columns; ++k) out << ',' << k;
    out << '\n';
    for (const auto& [n, cells] : t.rows) {
      out << n;
      for (std::size_t k = 0; k < t.columns; ++k) out << ',' << (k < cells.size() ? cells[k] : "*");
      out << '\n';
    }
    return;
  }
  std::vector<std::size_t> width(t.columns + 1, 5);
  for (std::size_t k = 1; k <= t.columns; ++k) width[k] = std::max<std::size_t>(width[k], std::to_string(k).size());
  for (const auto& [n, cells] : t.rows) {
    width[0] = std::max(width[0], std::to_string(n).size());
    for (std::size_t k = 0; k < cells.size(); ++k) width[k + 1] = std::max(width[k + 1], cells[k].size());
  }
  out << std::setw(static_cast<int>(width[0])) << "n \\ k";
  for (std::size_t k = 1; k <= t.columns; ++k) out << "  " << std::setw(static_cast<int>(width[k])) << k;
  out << '\n';
  for (const auto& [n, cells] : t.rows) {
    out << std::setw(static_cast<int>(width[0])) << n;
    for (std::size_t k = 0; k < t.columns; ++k) {
      out << "  " << std::setw(static_cast<int>(width[k + 1])) << (k < cells.size() ? cells[k] : "*");
    }
    out << '\n';
  }
}

OutputFormat parse_format(const std::string& s) {
  if (s == "csv") return OutputFormat::Csv;
  if (s == "json") return OutputFormat::Json;
  return OutputFormat::Human;
}

GapId parse_gap(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw std::invalid_argument("--gap expects ORDER,NUMBER");
  try {
    return GapId{static_cast<unsigned>(std::stoul(s.substr(0, comma))),
                 static_cast<unsigned>(std::stoul(s.substr(comma + 1)))};
  } catch (const std::logic_error&) {
    throw std::invalid_argument("--gap expects ORDER,NUMBER");
  }
}

std::string gap_text(const std::optional<GapId>& gap) {
  if (!gap) return "-";
  return std::to_string(gap->order) + "," + std::to_string(gap->number);
}

json report_json(const PrimeReport& r) {
  json residues = {{"p2", u128_to_string(r.residue_p2)},
                   {"p3", u128_to_string(r.residue_p3)},
                   {"p4", u128_to_string(r.residue_p4)},
                   {"n_theta_p3", u128_to_string(r.n_theta_residue_p3)}};
  residues["harmonic_p3"] = r.harmonic_residue_p3 ? json(u128_to_string(*r.harmonic_residue_p3)) : json(nullptr);
  json j = {{"p", r.p},
            {"residues", residues},
            {"flags",
             {{"wolstenholme_prime", r.is_wolstenholme_prime},
              {"wolstenholme_theorem", r.satisfies_wolstenholme_theorem}}}};
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

constexpr const char* kReportCsvHeader =
    "p,residue_p2,residue_p3,residue_p4,n_theta_residue_p3,harmonic_residue_p3,wolstenholme_prime,"
    "wolstenholme_theorem";

void write_report_csv(std::ostream& out, const PrimeReport& r) {
  out << r.p << ',' << u128_to_string(r.residue_p2) << ',' << u128_to_string(r.residue_p3) << ','
      << u128_to_string(r.residue_p4) << ',' << u128_to_string(r.n_theta_residue_p3) << ','
      << (r.harmonic_residue_p3 ? u128_to_string(*r.harmonic_residue_p3) : "") << ','
      << (r.is_wolstenholme_prime ? 1 : 0) << ',' << (r.satisfies_wolstenholme_theorem ? 1 : 0) << '\n';
}

void write_report_human(std::ostream& out, const PrimeReport& r) {
  out << "p = " << r.p << '\n'
      << "  C(2p-1,p-1) mod p^2  = " << u128_to_string(r.residue_p2) << '\n'
      << "  C(2p-1,p-1) mod p^3  = " << u128_to_string(r.residue_p3) << '\n'
      << "  C(2p-1,p-1) mod p^4  = " << u128_to_string(r.residue_p4) << '\n'
      << "  N(Theta(C_p)) mod p^3 = " << u128_to_string(r.n_theta_residue_p3) << '\n';
  if (r.harmonic_residue_p3) out << "  H_{p-1} mod p^3      = " << u128_to_string(*r.harmonic_residue_p3) << '\n';
  out << "  Wolstenholme theorem (mod p^3): " << (r.satisfies_wolstenholme_theorem ? "holds" : "fails") << '\n'
      << "  Wolstenholme prime: " << (r.is_wolstenholme_prime ? "yes" : "no") << '\n';
  if (!r.note.empty()) out << "  note: " << r.note << '\n';
}

int cmd_terms(const std::vector<unsigned>& ns, unsigned k_max, const RunConfig& config, std::ostream& out,
              std::ostream& err) {
  std::vector<TermsRow> rows;
  for (unsigned n : ns) {
    if (n == 0 || n > kMaxDeterminantOrder) throw std::invalid_argument("terms: n must be in [1, 16]");
    rows.push_back(compute_terms_row(make_cyclic(n), k_max, config, nullptr, config.quiet ? nullptr : &err));
  }
  write_terms_table(out, rows, config.format);
  const bool exhausted = std::any_of(rows.begin(), rows.end(), [](const auto& r) { return r.exhausted.has_value(); });
  return exhausted ? 3 : 0;
}

int cmd_group_terms(std::vector<FiniteGroup> groups, unsigned k, const RunConfig& config, std::ostream& out,
                    std::ostream& err) {
  json array = json::array();
  bool exhausted = false;
  if (config.format == OutputFormat::Csv) out << "gap,group,order,k,terms,exact,method,failure_bound\n";
  for (const auto& g : groups) {
    const TermsRow row = compute_terms_row(g, k, config, nullptr, config.quiet ? nullptr : &err);
    const std::string method = find_generator(g) ? "character" : "subset-dp";
    const auto& cell = row.cells[k - 1];
    exhausted = exhausted || row.exhausted.has_value();
    const std::string value = cell ? std::to_string(cell->value) : "*";
    switch (config.format) {
      case OutputFormat::Csv:
        out << '"' << gap_text(g.gap_id()) << "\"," << g.name() << ',' << g.order() << ',' << k << ',' << value
            << ',' << (cell && cell->exact ? 1 : 0) << ',' << method << ','
            << (cell ? format_double(cell->failure_bound) : "") << '\n';
        break;
      case OutputFormat::Json: {
        json j = {{"group", g.name()}, {"order", g.order()}, {"k", k}, {"method", method}};
        j["gap_id"] = g.gap_id() ? json::array({g.gap_id()->order, g.gap_id()->number}) : json(nullptr);
        j["value"] = cell ? json(cell->value) : json(nullptr);
        j["exact"] = cell && cell->exact;
        if (cell && !cell->exact) j["failure_bound"] = cell->failure_bound;
        if (row.exhausted) j["error"] = *row.exhausted;
        array.push_back(j);
        break;
      }
      case OutputFormat::Human:
        out << g.name() << "  [GAP " << gap_text(g.gap_id()) << "]  order " << g.order() << "  N(Theta";
        if (k > 1) out << "^" << k;
        out << ") = " << value;
        if (cell) {
          out << "  (" << (cell->exact ? "exact" : "Monte Carlo mod 2^61-1") << ", " << method;
          if (!cell->exact) out << ", failure bound " << format_double(cell->failure_bound);
          out << ")";
        }
        out << '\n';
        if (row.exhausted) out << "  not computed: " << *row.exhausted << '\n';
        break;
    }
  }
  if (config.format == OutputFormat::Json) out << array.dump(2) << '\n';
  return exhausted ? 3 : 0;
}

int cmd_partitions(const std::vector<unsigned>& ns, unsigned k_max, const RunConfig& config, std::ostream& out) {
  if (config.format == OutputFormat::Json) {
    json array = json::array();
    for (unsigned n : ns) {
      for (unsigned k = 1; k <= k_max; ++k) {
        const auto c = card_lambda(n, k);
        array.push_back({{"n", n}, {"k", k}, {"value", c.value.get_str()}, {"exact", true},
                         {"method", std::string(to_string(c.method))}});
      }
    }
    out << array.dump(2) << '\n';
    return 0;
  }
  TextTable t;
  t.columns = k_max;
  for (unsigned n : ns) {
    std::vector<std::string> cells;
    for (unsigned k = 1; k <= k_max; ++k) cells.push_back(card_lambda(n, k).value.get_str());
    t.rows.emplace_back(n, std::move(cells));
  }
  write_text_table(out, t, config.format);
  return 0;
}

int cmd_check(const std::vector<std::uint64_t>& ps, const RunConfig& config, std::ostream& out) {
  std::vector<PrimeReport> reports;
  for (std::uint64_t p : ps) {
    if (!is_prime(p)) throw std::invalid_argument("check: " + std::to_string(p) + " is not prime");
    reports.push_back(classify_prime(p));
  }
  if (config.format == OutputFormat::Json) {
    json array = json::array();
    for (const auto& r : reports) array.push_back(report_json(r));
    out << array.dump(2) << '\n';
  } else if (config.format == OutputFormat::Csv) {
    out << kReportCsvHeader << '\n';
    for (const auto& r : reports) write_report_csv(out, r);
  } else {
    for (const auto& r : reports) write_report_human(out, r);
  }
  return 0;
}

struct ScanArgs {
  std::uint64_t lo = 2;
  std::uint64_t hi = 0;
  std::string checkpoint;
  bool resume = false;
  std::size_t every = 1000;
  std::size_t harmonic_sample = 100;
  bool all = false;
};

int cmd_scan(const ScanArgs& a, const RunConfig& config, std::ostream& out, std::ostream& err) {
  ScanOptions options;
  options.jobs = config.jobs;
  if (!a.checkpoint.empty()) options.checkpoint = a.checkpoint;
  options.resume = a.resume;
  options.checkpoint_every = a.every;
  options.harmonic_sample = a.harmonic_sample;
  ProgressPrinter printer(config.quiet ? nullptr : &err);
  auto last = std::chrono::steady_clock::now();
  options.progress = [&](std::uint64_t p, std::size_t done, std::size_t total) {
    const auto now = std::chrono::steady_clock::now();
    if (now - last < std::chrono::seconds(2) && done != total) return;
    last = now;
    printer.line("[scan] " + std::to_string(done) + "/" + std::to_string(total) + " primes, at " + std::to_string(p));
  };
  const ScanResult result = scan_range(a.lo, a.hi, options);

  // sampled harmonic residues must agree with the binomial criterion
  std::size_t sampled = 0, disagreements = 0;
  for (const auto& r : result.reports) {
    if (!r.harmonic_residue_p3 || r.p < 5) continue;
    ++sampled;
    if ((*r.harmonic_residue_p3 == 0) != r.is_wolstenholme_prime) ++disagreements;
  }

  std::string found;
  for (std::size_t i = 0; i < result.wolstenholme_primes.size(); ++i) {
    found += (i ? ";" : "") + std::to_string(result.wolstenholme_primes[i]);
  }
  switch (config.format) {
    case OutputFormat::Csv:
      if (a.all) {
        out << kReportCsvHeader << '\n';
        for (const auto& r : result.reports) write_report_csv(out, r);
      } else {
        out << "lo,hi,primes,wolstenholme_primes,theorem_failures,harmonic_checked,harmonic_disagreements\n"
            << a.lo << ',' << a.hi << ',' << result.reports.size() << ',' << found << ','
            << result.theorem_failures << ',' << sampled << ',' << disagreements << '\n';
      }
      break;
    case OutputFormat::Json: {
      json j = {{"lo", a.lo},
                {"hi", a.hi},
                {"primes", result.reports.size()},
                {"wolstenholme_primes", result.wolstenholme_primes},
                {"theorem_failures", result.theorem_failures},
                {"harmonic_checked", sampled},
                {"harmonic_disagreements", disagreements}};
      if (result.resumed_from) {
        j["resumed_from"] = {{"last_prime", result.resumed_from->last_prime},
                             {"count_found", result.resumed_from->count_found}};
      }
      if (a.all) {
        j["reports"] = json::array();
        for (const auto& r : result.reports) j["reports"].push_back(report_json(r));
      }
      out << j.dump(2) << '\n';
      break;
    }
    case OutputFormat::Human:
      if (result.resumed_from) {
        out << "resumed after p = " << result.resumed_from->last_prime << " ("
            << result.resumed_from->count_found << " found earlier)\n";
      }
      out << "range [" << a.lo << ", " << a.hi << "]: " << result.reports.size() << " primes scanned\n"
          << "Wolstenholme primes: " << (found.empty() ? "none" : found) << '\n'
          << "primes p >= 5 failing C(2p-1,p-1) = 1 mod p^3: " << result.theorem_failures << '\n'
          << "harmonic cross-checks: " << sampled << ", disagreements: " << disagreements << '\n';
      if (a.all) {
        for (const auto& r : result.reports) write_report_human(out, r);
      }
      break;
  }
  return result.theorem_failures == 0 && disagreements == 0 ? 0 : 1;
}

std::optional<std::uint64_t> cyclic_order_of(const std::string& name) {
  if (name.size() < 3 || name.compare(0, 2, "C_") != 0) return std::nullopt;
  std::uint64_t n = 0;
  for (std::size_t i = 2; i < name.size(); ++i) {
    if (name[i] < '0' || name[i] > '9') return std::nullopt;
    n = n * 10 + static_cast<std::uint64_t>(name[i] - '0');
  }
  return n;
}

int cmd_verify(const std::string& suite, unsigned n_max, unsigned k_max, const RunConfig& config, std::ostream& out,
               std::ostream& err) {
  ProgressPrinter printer(config.quiet ? nullptr : &err);
  const ComputeOptions options = make_options(config, nullptr, printer);
  std::vector<CheckResult> results;
  if (suite == "theorems") {
    results = verify_theorems(options);
  } else if (suite == "oracle") {
    results = verify_oracle();
  } else if (suite == "crossval") {
    results = verify_crossval(std::min<unsigned>(n_max, 8), options);
  } else {
    CyclicCounts counts;
    for (unsigned n = 1; n <= n_max; ++n) {
      const TermsRow row = compute_terms_row(make_cyclic(n), k_max, config, nullptr, config.quiet ? nullptr : &err);
      for (unsigned k = 1; k <= k_max; ++k) {
        if (row.cells[k - 1]) counts[{n, k}] = row.cells[k - 1]->value;
      }
    }
    if (config.cache_dir) {
      const PolyCache cache(*config.cache_dir);
      for (const auto& key : cache.entries()) {
        const auto n = cyclic_order_of(key.group);
        if (!n || *n == 0) continue;
        if (const auto c = cache.peek_count(key)) counts.emplace(std::make_pair(*n, key.k), *c);
      }
    }
    results = verify_questions(counts, options);
  }
  return report(out, results) ? 0 : 1;
}

int cmd_catalog(const RunConfig& config, std::ostream& out) {
  const auto groups = catalog_order16();
  if (config.format == OutputFormat::Json) {
    json array = json::array();
    for (const auto& g : groups) {
      json j = group_to_json(g);
      j["abelian"] = is_abelian(g);
      array.push_back(j);
    }
    out << array.dump() << '\n';
    return 0;
  }
  if (config.format == OutputFormat::Csv) out << "gap,group,order,abelian,involutions,max_element_order\n";
  for (const auto& g : groups) {
    const auto stats = order_statistics(g);
    const std::size_t involutions = stats.count(2) ? stats.at(2) : 0;
    const std::size_t exponent = stats.empty() ? 1 : stats.rbegin()->first;
    if (config.format == OutputFormat::Csv) {
      out << '"' << gap_text(g.gap_id()) << "\"," << g.name() << ',' << g.order() << ',' << (is_abelian(g) ? 1 : 0)
          << ',' << involutions << ',' << exponent << '\n';
    } else {
      out << std::left << std::setw(8) << gap_text(g.gap_id()) << std::setw(14) << g.name()
          << (is_abelian(g) ? "abelian     " : "nonabelian  ") << "involutions " << std::setw(4) << involutions
          << "max order " << exponent << '\n'
          << std::right;
    }
  }
  return 0;
}

}  // namespace

TermsRow compute_terms_row(const FiniteGroup& g, unsigned k_max, const RunConfig& config, ComputeStats* stats,
                           std::ostream* progress) {
  if (k_max == 0) throw std::invalid_argument("k_max must be at least 1");
  TermsRow row;
  row.n = g.order();
  row.cells.resize(k_max);
  ProgressPrinter printer(progress);
  const ComputeOptions options = make_options(config, stats, printer);
  const CoefficientMode mode = config.mode.value_or(default_mode_for_order(g.order()));
  try {
    if (mode == CoefficientMode::Exact) {
      fill_row<Integer>(g, k_max, config, options, printer, row);
    } else {
      fill_row<ModP61>(g, k_max, config, options, printer, row);
    }
  } catch (const BudgetExceeded& e) {
    row.exhausted = e.what();
  } catch (const std::bad_alloc&) {
    row.exhausted = "out of memory";
  }
  return row;
}

void write_terms_table(std::ostream& out, const std::vector<TermsRow>& rows, OutputFormat format) {
  if (format == OutputFormat::Json) {
    json array = json::array();
    for (const auto& r : rows) {
      for (std::size_t k = 0; k < r.cells.size(); ++k) {
        if (!r.cells[k]) continue;
        json j = {{"n", r.n}, {"k", k + 1}, {"value", r.cells[k]->value}, {"exact", r.cells[k]->exact}};
        if (!r.cells[k]->exact) j["failure_bound"] = r.cells[k]->failure_bound;
        array.push_back(j);
      }
    }
    out << array.dump(2) << '\n';
    return;
  }
  TextTable t;
  bool monte_carlo = false;
  double worst = 0.0;
  for (const auto& r : rows) {
    t.columns = std::max(t.columns, r.cells.size());
    std::vector<std::string> cells;
    for (const auto& c : r.cells) {
      if (!c) {
        cells.emplace_back("*");
        continue;
      }
      cells.push_back((c->exact ? "" : "~") + std::to_string(c->value));
      if (!c->exact) {
        monte_carlo = true;
        worst = std::max(worst, c->failure_bound);
      }
    }
    t.rows.emplace_back(r.n, std::move(cells));
  }
  write_text_table(out, t, format);
  if (format == OutputFormat::Human) {
    if (monte_carlo) {
      out << "~ Monte Carlo count (coefficients mod 2^61-1), largest failure bound " << format_double(worst) << '\n';
    }
    for (const auto& r : rows) {
      if (r.exhausted) out << "* n = " << r.n << " not computed: " << *r.exhausted << '\n';
    }
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Term counts of group determinants, restricted partitions and Wolstenholme primes", "gdet"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig config;
  std::string mode_text = "auto";
  std::string format_text = "human";
  std::string cache_text;
  app.add_option("--mode", mode_text, "Coefficient arithmetic: auto, exact or modprime")
      ->check(CLI::IsMember({"auto", "exact", "modprime"}));
  app.add_option("--budget", config.memory_budget, "Memory budget in bytes (suffixes K, M, G accepted)")
      ->transform(CLI::AsSizeValue(false));
  app.add_option("--cache", cache_text, "Directory for cached polynomial powers");
  app.add_option("--format", format_text, "Output format: csv, json or human")
      ->check(CLI::IsMember({"csv", "json", "human"}));
  app.add_option("--jobs", config.jobs, "Worker threads")->check(CLI::Range(1U, 1024U));
  app.add_flag("--quiet", config.quiet, "Suppress progress output");

  auto* terms = app.add_subcommand("terms", "N(Theta(C_n)^k) table");
  std::vector<unsigned> terms_n;
  unsigned terms_k = 1;
  terms->add_option("--n", terms_n, "Group orders (comma separated)")->required()->delimiter(',');
  terms->add_option("--k-max", terms_k, "Largest power")->check(CLI::Range(1U, 255U));

  auto* group_terms = app.add_subcommand("group-terms", "N(Theta(G)^k) for one group");
  std::string gap_text_arg, group_name;
  unsigned group_k = 1;
  bool all16 = false;
  auto* gap_opt = group_terms->add_option("--gap", gap_text_arg, "GAP id as ORDER,NUMBER");
  auto* name_opt = group_terms->add_option("--name", group_name, "Group name, e.g. C_8, D_16, Q_8");
  auto* all_opt = group_terms->add_flag("--all-order16", all16, "Every group of order 16");
  gap_opt->excludes(name_opt)->excludes(all_opt);
  name_opt->excludes(all_opt);
  group_terms->add_option("--k", group_k, "Power")->check(CLI::Range(1U, 255U));

  auto* partitions = app.add_subcommand("partitions", "|Lambda_n^k| table");
  unsigned part_n_min = 1, part_n_max = 9, part_k = 10;
  std::vector<unsigned> part_n;
  partitions->add_option("--n-min", part_n_min)->check(CLI::Range(1U, 1000000U));
  partitions->add_option("--n-max", part_n_max)->check(CLI::Range(1U, 1000000U));
  partitions->add_option("--n", part_n, "Explicit orders (comma separated)")->delimiter(',');
  partitions->add_option("--k-max", part_k)->check(CLI::Range(1U, 1000U));

  auto* check_cmd = app.add_subcommand("check", "Wolstenholme report for primes");
  std::vector<std::uint64_t> check_p;
  std::uint64_t check_lo = 0, check_hi = 0;
  check_cmd->add_option("--p", check_p, "Primes (comma separated)")->delimiter(',');
  check_cmd->add_option("--lo", check_lo);
  check_cmd->add_option("--hi", check_hi);

  auto* scan = app.add_subcommand("scan", "Search a range for Wolstenholme primes");
  ScanArgs scan_args;
  scan->add_option("--lo", scan_args.lo)->check(CLI::Range(std::uint64_t{2}, std::uint64_t{1} << 40));
  scan->add_option("--hi", scan_args.hi)->required();
  scan->add_option("--checkpoint", scan_args.checkpoint, "Checkpoint file");
  scan->add_flag("--resume", scan_args.resume, "Continue after the checkpointed prime");
  scan->add_option("--every", scan_args.every, "Primes per checkpoint")->check(CLI::PositiveNumber);
  scan->add_option("--harmonic-sample", scan_args.harmonic_sample,
                   "Cross-check the harmonic criterion on every N-th prime (0: candidates only)");
  scan->add_flag("--all", scan_args.all, "Print every prime report");

  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  std::string suite;
  unsigned verify_n = 7, verify_k = 3;
  verify->add_option("suite", suite, "theorems, questions, oracle or crossval")
      ->required()
      ->check(CLI::IsMember({"theorems", "questions", "oracle", "crossval"}));
  verify->add_option("--n-max", verify_n, "Largest n for questions and crossval")->check(CLI::Range(1U, 16U));
  verify->add_option("--k-max", verify_k, "Largest k for questions")->check(CLI::Range(1U, 255U));

  auto* catalog = app.add_subcommand("catalog", "List the groups of order 16");

  std::vector<const char*> argv{"gdet"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    if (mode_text != "auto") config.mode = parse_coefficient_mode(mode_text);
    config.format = parse_format(format_text);
    if (!cache_text.empty()) config.cache_dir = cache_text;
    if (config.memory_budget < kMinimumBudget) throw std::invalid_argument("--budget must be at least 64 MiB");
    if (config.cache_dir) (void)PolyCache(*config.cache_dir);

    if (*terms) return cmd_terms(terms_n, terms_k, config, out, err);
    if (*group_terms) {
      std::vector<FiniteGroup> groups;
      if (all16) {
        groups = catalog_order16();
      } else if (!gap_text_arg.empty()) {
        const GapId id = parse_gap(gap_text_arg);
        auto g = group_by_gap_id(id);
        if (!g) throw std::invalid_argument("unknown group: GAP id " + gap_text_arg);
        groups.push_back(std::move(*g));
      } else if (!group_name.empty()) {
        auto g = group_by_name(group_name);
        if (!g) throw std::invalid_argument("unknown group: " + group_name);
        groups.push_back(std::move(*g));
      } else {
        throw std::invalid_argument("group-terms needs --gap, --name or --all-order16");
      }
      for (const auto& g : groups) {
        if (g.order() > kMaxDeterminantOrder) throw std::invalid_argument("group-terms: order exceeds 16");
      }
      return cmd_group_terms(std::move(groups), group_k, config, out, err);
    }
    if (*partitions) {
      std::vector<unsigned> ns = part_n;
      if (ns.empty()) {
        for (unsigned n = part_n_min; n <= part_n_max; ++n) ns.push_back(n);
      }
      return cmd_partitions(ns, part_k, config, out);
    }
    if (*check_cmd) {
      std::vector<std::uint64_t> ps = check_p;
      if (check_hi != 0) {
        const auto range = primes_in_range(check_lo, check_hi);
        ps.insert(ps.end(), range.begin(), range.end());
      }
      if (ps.empty()) throw std::invalid_argument("check needs --p or --lo/--hi");
      return cmd_check(ps, config, out);
    }
    if (*scan) {
      if (scan_args.hi < scan_args.lo) throw std::invalid_argument("scan: --hi must be at least --lo");
      return cmd_scan(scan_args, config, out, err);
    }
    if (*verify) return cmd_verify(suite, verify_n, verify_k, config, out, err);
    if (*catalog) return cmd_catalog(config, out);
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 2;
}

}  // namespace gdet::cli
