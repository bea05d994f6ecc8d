#include "fordiff/cascade.hpp"

#include <algorithm>
#include <fstream>
#include <json.hpp>
#include <ostream>
#include <string>
#include <utility>

#include "fordiff/graph.hpp"

namespace fordiff {

namespace {

// Vertex counts are bounded so the dense adjacency matrix stays sane.
constexpr std::int64_t kMaxInstance = 1 << 16;

DValue assemble(std::int64_t n, const CliqueOutcome& out) {
  DValue dv;
  dv.n = n;
  dv.d = out.size + 1;
  dv.witness.reserve(static_cast<std::size_t>(out.size) + 1);
  dv.witness.push_back(1);
  for (std::int64_t label : out.witness) dv.witness.push_back(label + 1);
  dv.nodes_expanded = out.nodes_expanded;
  dv.seconds = out.seconds;
  return dv;
}

void check_n(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("instance size must be at least 1");
  if (n > kMaxInstance) throw std::invalid_argument("instance size too large for dense search");
}

// Seed members are set elements (with the base element removed); they map to
// offsets and then to vertex indices of g, which must all exist.
std::vector<int> seed_indices(const DiffGraph& g, const std::vector<std::int64_t>& members) {
  std::vector<int> idx;
  idx.reserve(members.size());
  const auto& labels = g.labels();
  for (std::int64_t a : members) {
    auto it = std::lower_bound(labels.begin(), labels.end(), a - 1);
    if (it == labels.end() || *it != a - 1)
      throw std::invalid_argument("seed member has no matching vertex");
    idx.push_back(static_cast<int>(it - labels.begin()));
  }
  return idx;
}

void validate_loaded_record(const ForbiddenSet& x, const CascadeRecord& r) {
  auto fail = [&](const std::string& why) {
    throw std::invalid_argument("corrupt cascade record for [" + std::to_string(r.n_lo) + ", " +
                                std::to_string(r.n_hi) + "]: " + why);
  };
  if (r.n_lo < 1 || r.n_lo > r.n_hi) fail("bad range");
  if (r.d < 1) fail("bad value");
  if (static_cast<std::int64_t>(r.witness.size()) != r.d) fail("witness size differs from d");
  if (!std::is_sorted(r.witness.begin(), r.witness.end()) ||
      std::adjacent_find(r.witness.begin(), r.witness.end()) != r.witness.end())
    fail("witness not strictly increasing");
  if (r.witness.front() != 1 || r.witness.back() != r.n_lo) fail("witness not in normal form");
  if (!difference_free(x, r.witness)) fail("witness contains a forbidden difference");
}

void append_record(std::ofstream& log, const CascadeRecord& r) {
  if (!log.is_open()) return;
  nlohmann::ordered_json j;
  j["set"] = r.set_spec;
  j["n_lo"] = r.n_lo;
  j["n_hi"] = r.n_hi;
  j["d"] = r.d;
  j["witness"] = r.witness;
  log << j.dump() << '\n';
  log.flush();
}

}  // namespace

DValue compute_d(const ForbiddenSet& x, std::int64_t n, const SearchOptions& opts) {
  check_n(n);
  DiffGraph g = zero_neighborhood_graph(n, x);
  return assemble(n, max_clique(g, opts));
}

DValue compute_d_oracle(const ForbiddenSet& x, std::int64_t n) {
  check_n(n);
  DiffGraph g = zero_neighborhood_graph(n, x);
  return assemble(n, brute_force_max_clique(g));
}

CascadeResult cascade(const ForbiddenSet& x, std::int64_t n_min, std::int64_t n_max,
                      const SearchOptions& solver, const std::string& log_path, bool resume) {
  if (n_min < 1 || n_min >= n_max)
    throw std::invalid_argument("cascade needs 1 <= n_min < n_max");
  check_n(n_max);

  std::vector<CascadeRecord> chain;  // descending n_lo, contiguous from n_max
  if (resume) {
    if (log_path.empty()) throw std::invalid_argument("resume needs a log path");
    std::int64_t expect_hi = n_max;
    for (auto& r : load_cascade_log(log_path)) {
      if (r.set_spec != x.spec())
        throw std::invalid_argument("cascade log was written for set '" + r.set_spec +
                                    "', not '" + x.spec() + "'");
      if (r.n_hi != expect_hi)
        throw std::invalid_argument("cascade log is not contiguous from n_max=" +
                                    std::to_string(n_max) + ": found range ending at " +
                                    std::to_string(r.n_hi) + " where " +
                                    std::to_string(expect_hi) + " was expected");
      validate_loaded_record(x, r);
      expect_hi = r.n_lo - 1;
      chain.push_back(std::move(r));
    }
  }

  std::ofstream log;
  if (!log_path.empty()) {
    log.open(log_path, resume ? std::ios::app : std::ios::trunc);
    if (!log) throw std::runtime_error("cannot open cascade log: " + log_path);
  }

  CascadeResult result;
  while (true) {
    std::int64_t covered_to = chain.empty() ? n_max + 1 : chain.back().n_lo;
    if (covered_to <= n_min) break;
    std::int64_t n = covered_to - 1;

    DiffGraph g = zero_neighborhood_graph(n, x);
    SearchOptions opts = solver;
    opts.seed_clique.clear();
    opts.stop_at = 0;
    if (!chain.empty() && chain.back().d >= 2) {
      // The value here is either d or d-1; a clique of size d-1 is optimal.
      const auto& w = chain.back().witness;
      std::vector<std::int64_t> members(w.begin() + 1, w.end() - 1);
      opts.seed_clique = seed_indices(g, members);
      opts.stop_at = chain.back().d - 1;
    }

    DValue dv;
    try {
      dv = assemble(n, max_clique(g, opts));
    } catch (const BudgetExhausted& e) {
      throw CascadeInterrupted(std::string("cascade interrupted at n=") + std::to_string(n) +
                                   ": " + e.what(),
                               compress_table(chain));
    }
    ++result.solves;
    result.nodes_expanded += dv.nodes_expanded;
    result.seconds += dv.seconds;

    CascadeRecord rec{x.spec(), dv.witness.back(), n, dv.d, dv.witness};
    append_record(log, rec);
    chain.push_back(std::move(rec));
  }

  result.records = compress_table(std::move(chain));
  return result;
}

std::vector<CascadeRecord> load_cascade_log(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot read cascade log: " + path);
  std::vector<CascadeRecord> out;
  std::string line;
  int line_no = 0;
  while (std::getline(f, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      auto j = nlohmann::json::parse(line);
      CascadeRecord r;
      r.set_spec = j.at("set").get<std::string>();
      r.n_lo = j.at("n_lo").get<std::int64_t>();
      r.n_hi = j.at("n_hi").get<std::int64_t>();
      r.d = j.at("d").get<int>();
      r.witness = j.at("witness").get<std::vector<std::int64_t>>();
      out.push_back(std::move(r));
    } catch (const nlohmann::json::exception& e) {
      throw std::invalid_argument("cascade log line " + std::to_string(line_no) +
                                  " is not a valid record: " + e.what());
    }
  }
  return out;
}

std::vector<CascadeRecord> compress_table(std::vector<CascadeRecord> records) {
  if (records.empty()) return records;
  std::sort(records.begin(), records.end(),
            [](const CascadeRecord& a, const CascadeRecord& b) { return a.n_lo < b.n_lo; });
  std::vector<CascadeRecord> out;
  out.push_back(std::move(records.front()));
  for (std::size_t i = 1; i < records.size(); ++i) {
    auto& cur = out.back();
    auto& r = records[i];
    if (r.n_lo != cur.n_hi + 1)
      throw std::invalid_argument(r.n_lo <= cur.n_hi ? "table rows overlap" : "table rows have a gap");
    if (r.d == cur.d)
      cur.n_hi = r.n_hi;  // extend; the lower row keeps its witness
    else
      out.push_back(std::move(r));
  }
  return out;
}

std::vector<CascadeRecord> compress_table(const std::string& set_spec, std::int64_t n_lo,
                                          const std::vector<int>& values) {
  std::vector<CascadeRecord> out;
  if (values.empty()) return out;
  if (n_lo < 1) throw std::invalid_argument("table must start at n >= 1");
  std::int64_t start = n_lo;
  for (std::size_t i = 1; i <= values.size(); ++i) {
    if (i == values.size() || values[i] != values[i - 1]) {
      out.push_back({set_spec, start, n_lo + static_cast<std::int64_t>(i) - 1, values[i - 1], {}});
      start = n_lo + static_cast<std::int64_t>(i);
    }
  }
  return out;
}

void write_table_csv(const std::vector<CascadeRecord>& rows, std::ostream& os) {
  os << "n_lo,n_hi,d\n";
  for (const auto& r : rows) os << r.n_lo << ',' << r.n_hi << ',' << r.d << '\n';
}

void write_table_markdown(const std::vector<CascadeRecord>& rows, std::ostream& os) {
  os << "| N | D |\n| --- | --- |\n";
  for (const auto& r : rows) {
    if (r.n_lo == r.n_hi)
      os << "| " << r.n_lo << " | " << r.d << " |\n";
    else
      os << "| " << r.n_lo << " <= N <= " << r.n_hi << " | " << r.d << " |\n";
  }
}

}  // namespace fordiff
