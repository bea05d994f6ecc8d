// Command line front end: every library operation behind one binary with
// machine-readable output.  Data goes to stdout (JSON or CSV), diagnostics
// to stderr.  Exit codes: 0 success, 1 bad arguments, 2 budget exhausted,
// 3 validation failure.
#include <CLI11.hpp>
#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "fordiff/cascade.hpp"
#include "fordiff/formulas.hpp"
#include "fordiff/modular.hpp"
#include "fordiff/sets.hpp"

namespace {

using nlohmann::ordered_json;

constexpr int kExitOk = 0;
constexpr int kExitArgs = 1;
constexpr int kExitBudget = 2;
constexpr int kExitValidation = 3;

int default_threads() {
  unsigned h = std::thread::hardware_concurrency();
  return h == 0 ? 1 : static_cast<int>(h);
}

// "<count>" node budget or "<seconds>s" wall-clock budget.
fordiff::SearchBudget parse_budget(const std::string& text) {
  fordiff::SearchBudget b;
  if (text.empty()) throw std::invalid_argument("budget must not be empty");
  try {
    if (text.back() == 's') {
      std::size_t used = 0;
      double secs = std::stod(text.substr(0, text.size() - 1), &used);
      if (used + 1 != text.size() || secs <= 0.0)
        throw std::invalid_argument("bad seconds value");
      b.max_seconds = secs;
    } else {
      std::size_t used = 0;
      unsigned long long nodes = std::stoull(text, &used);
      if (used != text.size() || nodes == 0) throw std::invalid_argument("bad node count");
      b.max_nodes = nodes;
    }
  } catch (const std::exception&) {
    throw std::invalid_argument("budget '" + text +
                                "' is neither a node count nor a seconds value like '30s'");
  }
  return b;
}

// A witness argument is either a readable file (whitespace/comma separated
// integers, # comments) or an inline comma-separated list.
std::vector<std::int64_t> parse_witness_arg(const std::string& arg) {
  std::string text;
  if (std::filesystem::exists(arg) && std::filesystem::is_regular_file(arg)) {
    std::ifstream f(arg);
    if (!f) throw std::invalid_argument("cannot read witness file: " + arg);
    std::string line;
    while (std::getline(f, line)) {
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      text += line + " ";
    }
  } else {
    text = arg;
  }
  for (char& c : text)
    if (c == ',' || c == '\t' || c == '\r' || c == ';') c = ' ';
  std::vector<std::int64_t> values;
  std::istringstream in(text);
  std::string token;
  while (in >> token) {
    try {
      std::size_t used = 0;
      values.push_back(std::stoll(token, &used));
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw std::invalid_argument("witness entry '" + token + "' is not an integer");
    }
  }
  return values;
}

void emit(const ordered_json& j) { std::cout << j.dump() << "\n"; }

ordered_json rows_json(const std::vector<fordiff::CascadeRecord>& rows) {
  ordered_json arr = ordered_json::array();
  for (const auto& r : rows)
    arr.push_back(ordered_json{
        {"n_lo", r.n_lo}, {"n_hi", r.n_hi}, {"d", r.d}, {"witness", r.witness}});
  return arr;
}

struct Options {
  std::string spec;
  std::int64_t n = 0;
  std::int64_t n_min = 0;
  std::int64_t n_max = 0;
  std::int64_t m = 0;
  std::int64_t max_m = 0;
  std::int64_t cap = fordiff::kDefaultDensityCap;
  std::string budget;
  std::string log_path;
  std::string format = "csv";
  std::string formula;
  std::string witness;
  int threads = default_threads();
  bool resume = false;
  bool oracle = false;
  bool all = false;
};

fordiff::SearchOptions search_options(const Options& o) {
  fordiff::SearchOptions s;
  s.threads = o.threads;
  if (!o.budget.empty()) {
    s.budget = parse_budget(o.budget);
  } else if (const char* env = std::getenv("FORDIFF_BUDGET")) {
    if (*env) s.budget = parse_budget(env);
  }
  return s;
}

int cmd_compute(const Options& o) {
  auto x = fordiff::parse_set_spec(o.spec);
  auto opts = search_options(o);
  try {
    auto dv = o.oracle ? fordiff::compute_d_oracle(x, o.n) : fordiff::compute_d(x, o.n, opts);
    emit(ordered_json{{"set", x.spec()},
                      {"n", dv.n},
                      {"d", dv.d},
                      {"witness", dv.witness},
                      {"exact", true},
                      {"stats",
                       {{"nodes_expanded", dv.nodes_expanded}, {"seconds", dv.seconds}}}});
    return kExitOk;
  } catch (const fordiff::BudgetExhausted& e) {
    const auto& best = e.best();
    std::vector<std::int64_t> witness = {1};
    for (std::int64_t w : best.witness) witness.push_back(w + 1);
    emit(ordered_json{{"set", x.spec()},
                      {"n", o.n},
                      {"d", best.size + 1},
                      {"witness", witness},
                      {"exact", false},
                      {"stats",
                       {{"nodes_expanded", best.nodes_expanded}, {"seconds", best.seconds}}}});
    std::cerr << "budget exhausted; reporting best lower bound: " << e.what() << "\n";
    return kExitBudget;
  }
}

// Shared by `cascade` (JSON records) and `table` (formatted rows).
int run_sweep(const Options& o, bool as_table) {
  auto x = fordiff::parse_set_spec(o.spec);
  auto opts = search_options(o);
  std::vector<fordiff::CascadeRecord> rows;
  bool interrupted = false;
  fordiff::CascadeResult res;
  try {
    res = fordiff::cascade(x, o.n_min, o.n_max, opts, o.log_path, o.resume);
    rows = res.records;
  } catch (const fordiff::CascadeInterrupted& e) {
    rows = e.completed();
    interrupted = true;
    std::cerr << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    // A present-but-unusable log is a data problem, not an argument problem.
    if (o.resume) {
      std::cerr << e.what() << "\n";
      return kExitValidation;
    }
    throw;
  }
  if (as_table) {
    if (o.format == "md")
      fordiff::write_table_markdown(rows, std::cout);
    else
      fordiff::write_table_csv(rows, std::cout);
  } else {
    emit(ordered_json{{"set", x.spec()},
                      {"n_min", o.n_min},
                      {"n_max", o.n_max},
                      {"interrupted", interrupted},
                      {"solves", res.solves},
                      {"nodes_expanded", res.nodes_expanded},
                      {"seconds", res.seconds},
                      {"rows", rows_json(rows)}});
  }
  return interrupted ? kExitBudget : kExitOk;
}

int cmd_density(const Options& o) {
  auto x = fordiff::parse_set_spec(o.spec);
  auto rec = fordiff::local_density(x, o.m, search_options(o), o.cap);
  emit(ordered_json{{"set", x.spec()},
                    {"m", rec.m},
                    {"d", rec.d},
                    {"ratio", rec.ratio.str()},
                    {"residues", rec.residues},
                    {"witness", rec.witness}});
  return kExitOk;
}

int cmd_mu_lower(const Options& o) {
  auto x = fordiff::parse_set_spec(o.spec);
  auto opts = search_options(o);
  if (o.all) {
    fordiff::write_density_csv(fordiff::scan_densities(x, o.max_m, opts, o.cap), std::cout);
    return kExitOk;
  }
  auto best = fordiff::mu_lower_scan(x, o.max_m, opts, o.cap);
  auto report = fordiff::locally_intersective_up_to(x, o.max_m);
  ordered_json j{{"set", x.spec()},
                 {"max_m", o.max_m},
                 {"m", best.m},
                 {"d", best.d},
                 {"ratio", best.ratio.str()},
                 {"witness", best.witness}};
  if (report.first_failing_m)
    j["m_star"] = *report.first_failing_m;
  else
    j["m_star"] = nullptr;
  emit(j);
  return kExitOk;
}

int cmd_verify(const Options& o) {
  auto rows = fordiff::verify_formula(o.formula, o.n_min, o.n_max, search_options(o));
  fordiff::write_verify_csv(rows, std::cout);
  for (const auto& r : rows)
    if (r.status == fordiff::VerifyStatus::Mismatch) {
      std::cerr << "formula disagrees with the exact value at n=" << r.n << "\n";
      return kExitValidation;
    }
  return kExitOk;
}

int cmd_greedy(const Options& o) {
  auto x = fordiff::parse_set_spec(o.spec);
  auto a = fordiff::greedy_construct(x, o.n);
  emit(ordered_json{{"set", x.spec()},
                    {"n", o.n},
                    {"size", a.size()},
                    {"witness", a}});
  return kExitOk;
}

int cmd_validate_witness(const Options& o) {
  auto x = fordiff::parse_set_spec(o.spec);
  if (o.n < 1) throw std::invalid_argument("n must be at least 1");
  auto w = parse_witness_arg(o.witness);
  std::sort(w.begin(), w.end());
  std::string reason;
  if (w.empty())
    reason = "witness is empty";
  else if (w.front() < 1 || w.back() > o.n)
    reason = "witness leaves the range [1, n]";
  else if (std::adjacent_find(w.begin(), w.end()) != w.end())
    reason = "witness has repeated elements";
  else if (!fordiff::difference_free(x, w))
    reason = "two witness elements differ by a forbidden value";
  ordered_json j{{"set", x.spec()}, {"n", o.n}, {"size", w.size()}, {"valid", reason.empty()}};
  if (!reason.empty()) j["reason"] = reason;
  emit(j);
  return reason.empty() ? kExitOk : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Exact sizes of difference-avoiding subsets of [1, n]"};
  app.require_subcommand(1);

  auto add_solver_flags = [&](CLI::App* sub) {
    sub->add_option("--threads", o.threads, "worker threads for the clique search")
        ->capture_default_str();
    sub->add_option("--budget", o.budget,
                    "per-solve budget: node count or seconds like '30s' "
                    "(default from FORDIFF_BUDGET)");
  };

  auto* compute = app.add_subcommand("compute", "exact value and witness for one n");
  compute->add_option("spec", o.spec, "forbidden set, e.g. squares, primes-1, list:1,4")
      ->required();
  compute->add_option("n", o.n, "right end of [1, n]")->required();
  compute->add_flag("--oracle", o.oracle, "use the exhaustive reference solver (tiny n only)");
  add_solver_flags(compute);

  auto* casc = app.add_subcommand("cascade", "sweep [n_min, n_max] and emit certified rows");
  casc->add_option("spec", o.spec, "forbidden set")->required();
  casc->add_option("n_min", o.n_min, "left end of the sweep")->required();
  casc->add_option("n_max", o.n_max, "right end of the sweep")->required();
  casc->add_option("--log", o.log_path, "append each record to this JSON-lines file");
  casc->add_flag("--resume", o.resume, "validate and extend an existing log");
  add_solver_flags(casc);

  auto* table = app.add_subcommand("table", "sweep a range and print the merged table");
  table->add_option("spec", o.spec, "forbidden set")->required();
  table->add_option("n_min", o.n_min, "left end")->required();
  table->add_option("n_max", o.n_max, "right end")->required();
  table->add_option("--log", o.log_path, "append records to this JSON-lines file");
  table->add_flag("--resume", o.resume, "validate and extend an existing log");
  table->add_option("--format", o.format, "csv or md")
      ->check(CLI::IsMember({"csv", "md"}))
      ->capture_default_str();
  add_solver_flags(table);

  auto* density = app.add_subcommand("density", "modular density of one modulus");
  density->add_option("spec", o.spec, "forbidden set")->required();
  density->add_option("m", o.m, "modulus")->required();
  density->add_option("--cap", o.cap, "largest modulus accepted")->capture_default_str();
  add_solver_flags(density);

  auto* mu = app.add_subcommand("mu-lower", "best density ratio over moduli 1..max_m");
  mu->add_option("spec", o.spec, "forbidden set")->required();
  mu->add_option("--max-m", o.max_m, "scan moduli up to this value")->required();
  mu->add_option("--cap", o.cap, "largest modulus accepted")->capture_default_str();
  mu->add_flag("--all", o.all, "print the whole scan as CSV instead of the best record");
  add_solver_flags(mu);

  auto* verify = app.add_subcommand("verify", "grade a closed formula against the solver");
  verify->add_option("--formula", o.formula, "primes, squares+1, or squares+2-lb")->required();
  verify->add_option("--min", o.n_min, "first n")->required();
  verify->add_option("--max", o.n_max, "last n")->required();
  add_solver_flags(verify);

  auto* greedy = app.add_subcommand("greedy", "first-fit construction for one n");
  greedy->add_option("spec", o.spec, "forbidden set")->required();
  greedy->add_option("n", o.n, "right end of [1, n]")->required();

  auto* validate = app.add_subcommand("validate-witness", "check a claimed subset of [1, n]");
  validate->add_option("spec", o.spec, "forbidden set")->required();
  validate->add_option("n", o.n, "right end of [1, n]")->required();
  validate->add_option("witness", o.witness, "comma-separated values or a file of integers")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitArgs;
  }

  try {
    if (*compute) return cmd_compute(o);
    if (*casc) return run_sweep(o, false);
    if (*table) return run_sweep(o, true);
    if (*density) return cmd_density(o);
    if (*mu) return cmd_mu_lower(o);
    if (*verify) return cmd_verify(o);
    if (*greedy) return cmd_greedy(o);
    if (*validate) return cmd_validate_witness(o);
  } catch (const fordiff::BudgetExhausted& e) {
    std::cerr << e.what() << "\n";
    return kExitBudget;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitArgs;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitArgs;
  }
  return kExitArgs;
}
