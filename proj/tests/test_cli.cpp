#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "fordiff/cascade.hpp"
#include "fordiff/sets.hpp"

#ifndef FORDIFF_CLI_PATH
#error "FORDIFF_CLI_PATH must point at the built command line binary"
#endif

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

// Run the binary through the shell, capturing stdout; stderr is dropped.
RunResult run(const std::string& args, const std::string& env_prefix = "") {
  std::string cmd = env_prefix + std::string(FORDIFF_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  std::size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) r.out.append(buf, got);
  int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

nlohmann::json parse(const std::string& text) { return nlohmann::json::parse(text); }

std::string temp_path(const char* tag) {
  auto p = std::filesystem::temp_directory_path() / (std::string("fordiff_cli_") + tag);
  std::filesystem::remove(p);
  return p.string();
}

}  // namespace

TEST_CASE("compute: exact value with a checkable witness") {
  auto r = run("compute squares 30");
  REQUIRE(r.code == 0);
  auto j = parse(r.out);
  CHECK(j["n"] == 30);
  CHECK(j["d"] == 10);
  CHECK(j["exact"] == true);
  auto w = j["witness"].get<std::vector<std::int64_t>>();
  REQUIRE(w.size() == 10);
  CHECK(w.front() == 1);
  CHECK(w.back() <= 30);
  CHECK(fordiff::difference_free(fordiff::ForbiddenSet::squares(), w));

  // The exhaustive reference path agrees.
  auto o = run("compute --oracle primes 12");
  REQUIRE(o.code == 0);
  CHECK(parse(o.out)["d"] == 4);
  CHECK(parse(run("compute primes 12").out)["d"] == 4);

  CHECK(run("compute primes 12 --threads 2").code == 0);
  CHECK(parse(run("compute primes 12 --threads 2").out)["d"] == 4);
}

TEST_CASE("compute: argument failures exit with 1") {
  CHECK(run("compute").code == 1);
  CHECK(run("compute no-such-spec 5").code == 1);
  CHECK(run("compute squares 0").code == 1);
  CHECK(run("compute squares 10 --budget nonsense").code == 1);
  CHECK(run("").code == 1);  // a subcommand is required
  CHECK(run("--help").code == 0);
}

TEST_CASE("compute: budgets cut the search and exit with 2") {
  auto r = run("compute squares 140 --budget 10");
  REQUIRE(r.code == 2);
  auto j = parse(r.out);
  CHECK(j["exact"] == false);
  CHECK(j["d"].get<int>() >= 1);
  auto w = j["witness"].get<std::vector<std::int64_t>>();
  CHECK(static_cast<int>(w.size()) == j["d"].get<int>());
  CHECK(fordiff::difference_free(fordiff::ForbiddenSet::squares(), w));

  // The environment supplies a default budget; an explicit flag wins.
  CHECK(run("compute squares 140", "FORDIFF_BUDGET=10 ").code == 2);
  CHECK(run("compute squares 40 --budget 100000000", "FORDIFF_BUDGET=10 ").code == 0);
}

TEST_CASE("cascade: certified rows, log, resume") {
  std::string log = temp_path("sweep.jsonl");
  auto r = run("cascade primes-1 1 35 --log " + log);
  REQUIRE(r.code == 0);
  auto j = parse(r.out);
  CHECK(j["interrupted"] == false);
  auto rows = j["rows"];
  REQUIRE(rows.size() == 5);
  const std::int64_t expect[5][3] = {{1, 3, 1}, {4, 8, 2}, {9, 11, 3}, {12, 32, 4}, {33, 35, 5}};
  auto x = fordiff::ForbiddenSet::primes(-1);
  for (int i = 0; i < 5; ++i) {
    CHECK(rows[i]["n_lo"] == expect[i][0]);
    CHECK(rows[i]["n_hi"] == expect[i][1]);
    CHECK(rows[i]["d"] == expect[i][2]);
    auto w = rows[i]["witness"].get<std::vector<std::int64_t>>();
    CHECK(static_cast<std::int64_t>(w.size()) == expect[i][2]);
    CHECK(fordiff::difference_free(x, w));
  }

  // The flushed log holds the same table.
  auto reloaded = fordiff::compress_table(fordiff::load_cascade_log(log));
  REQUIRE(reloaded.size() == 5);
  for (int i = 0; i < 5; ++i) {
    CHECK(reloaded[static_cast<std::size_t>(i)].n_lo == expect[i][0]);
    CHECK(reloaded[static_cast<std::size_t>(i)].n_hi == expect[i][1]);
    CHECK(reloaded[static_cast<std::size_t>(i)].d == expect[i][2]);
  }

  // Resuming a complete log re-reports without solving.
  auto again = run("cascade primes-1 1 35 --log " + log + " --resume");
  REQUIRE(again.code == 0);
  CHECK(parse(again.out)["solves"] == 0);

  // A log tampered with fails validation: exit 3.
  {
    std::ifstream in(log);
    std::string first;
    std::getline(in, first);
    in.close();
    auto rec = nlohmann::json::parse(first);
    rec["d"] = rec["d"].get<int>() + 1;
    std::ofstream out(log, std::ios::trunc);
    out << rec.dump() << "\n";
  }
  CHECK(run("cascade primes-1 1 35 --log " + log + " --resume").code == 3);
  std::filesystem::remove(log);
}

TEST_CASE("cascade: interrupted sweeps exit with 2") {
  auto r = run("cascade squares 1 60 --budget 5");
  REQUIRE(r.code == 2);
  auto j = parse(r.out);
  CHECK(j["interrupted"] == true);
  CHECK(j["rows"].empty());  // the very first solve was over budget
}

TEST_CASE("table: formatted output matches the library emitters") {
  auto res = fordiff::cascade(fordiff::ForbiddenSet::squares(), 1, 20);
  std::ostringstream want_csv;
  fordiff::write_table_csv(res.records, want_csv);
  // Witnesses do not appear in tables, so the text is fully deterministic.
  CHECK(run("table squares 1 20").out == want_csv.str());
  CHECK(run("table squares 1 20 --format csv").out == want_csv.str());

  std::ostringstream want_md;
  fordiff::write_table_markdown(res.records, want_md);
  CHECK(run("table squares 1 20 --format md").out == want_md.str());

  CHECK(run("table squares 1 20 --format html").code == 1);
  CHECK(run("table squares 20 1").code == 1);
}

TEST_CASE("density and the ratio scan") {
  auto r = run("density primes 4");
  REQUIRE(r.code == 0);
  auto j = parse(r.out);
  CHECK(j["m"] == 4);
  CHECK(j["d"] == 1);
  CHECK(j["ratio"] == "1/4");
  CHECK(run("density primes 0").code == 1);
  CHECK(run("density primes 9999").code == 1);  // above the default cap

  auto mu = parse(run("mu-lower primes --max-m 16").out);
  CHECK(mu["m"] == 4);
  CHECK(mu["ratio"] == "1/4");
  CHECK(mu["m_star"] == 4);

  auto sq = parse(run("mu-lower squares --max-m 10").out);
  CHECK(sq["d"] == 0);
  CHECK(sq["m_star"].is_null());

  auto all = run("mu-lower primes --max-m 16 --all");
  REQUIRE(all.code == 0);
  std::istringstream lines(all.out);
  std::string header;
  std::getline(lines, header);
  CHECK(header == "m,d,ratio,witness");
  int count = 0;
  std::string line;
  while (std::getline(lines, line))
    if (!line.empty()) ++count;
  CHECK(count == 16);
}

TEST_CASE("verify: formula grading and exit codes") {
  auto r = run("verify --formula primes --min 1 --max 25");
  REQUIRE(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  std::getline(lines, line);
  CHECK(line == "n,formula_value,computed_d,status");
  int rows = 0;
  while (std::getline(lines, line))
    if (!line.empty()) {
      CHECK(line.find("match") != std::string::npos);
      ++rows;
    }
  CHECK(rows == 25);

  // The stated bound overshoots at n = 1; that must surface as exit 3.
  CHECK(run("verify --formula squares+2-lb --min 1 --max 1").code == 3);
  CHECK(run("verify --formula squares+2-lb --min 51 --max 55").code == 0);
  CHECK(run("verify --formula no-such --min 1 --max 5").code == 1);
}

TEST_CASE("greedy: constructive lower bound") {
  auto r = run("greedy squares 50");
  REQUIRE(r.code == 0);
  auto j = parse(r.out);
  auto w = j["witness"].get<std::vector<std::int64_t>>();
  CHECK(j["size"].get<std::size_t>() == w.size());
  CHECK(fordiff::difference_free(fordiff::ForbiddenSet::squares(), w));
  // At most 7 squares lie in [1, 50], so greedy keeps at least 49/8 > 6.
  CHECK(w.size() >= 7);
}

TEST_CASE("validate-witness: inline and file forms") {
  CHECK(run("validate-witness primes 12 1,2,10,11").code == 0);
  CHECK(parse(run("validate-witness primes 12 1,2,10,11").out)["valid"] == true);

  auto bad = run("validate-witness primes 12 1,2,4");
  CHECK(bad.code == 3);
  CHECK(parse(bad.out)["valid"] == false);

  CHECK(run("validate-witness primes 12 1,2,13").code == 3);   // out of range
  CHECK(run("validate-witness primes 12 1,2,2,10").code == 3); // repeated
  CHECK(run("validate-witness primes 12 1,2,x").code == 1);    // not integers

  std::string file = temp_path("witness.txt");
  {
    std::ofstream f(file);
    f << "# the best subset of [1, 12]\n1 2\n10, 11 # trailing comment\n";
  }
  auto fromfile = run("validate-witness primes 12 " + file);
  CHECK(fromfile.code == 0);
  CHECK(parse(fromfile.out)["size"] == 4);
  std::filesystem::remove(file);
}
