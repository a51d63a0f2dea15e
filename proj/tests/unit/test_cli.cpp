#include <doctest.h>

#include <chrono>
#include <cstdlib>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "ptspec/cli/app.hpp"
#include "ptspec/cli/cache.hpp"
#include "ptspec/cli/output.hpp"
#include "ptspec/semiclassical.hpp"

using namespace ptspec;
using namespace ptspec::cli;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run_cli(std::initializer_list<std::string> args) {
  std::vector<std::string> store{"ptspec"};
  store.insert(store.end(), args);
  std::vector<const char*> argv;
  for (const auto& s : store) argv.push_back(s.c_str());
  std::ostringstream out, err;
  Run r;
  r.code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> row;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, ',')) row.push_back(field);
    rows.push_back(row);
  }
  return rows;
}

fs::path fresh_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  return dir;
}

}  // namespace

TEST_CASE("cwkb csv matches the closed form") {
  auto r = run_cli({"cwkb", "--N", "3", "--levels", "5", "--method", "mxtp",
                    "--format", "csv"});
  REQUIRE(r.code == kExitOk);
  auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0] == std::vector<std::string>{"N", "n", "method", "energy"});
  for (int k = 0; k < 5; ++k) {
    const auto& row = rows[static_cast<std::size_t>(k) + 1];
    CHECK(std::stoi(row[1]) == k);
    CHECK(std::stod(row[3]) == energy_mxtp(3.0, k).energy);
  }
  CHECK(r.out.find('\r') == std::string::npos);
}

TEST_CASE("json and csv encode identical values") {
  auto csv = run_cli({"cwkb", "--N", "4.7", "--levels", "4", "--format", "csv"});
  auto js = run_cli({"cwkb", "--N", "4.7", "--levels", "4", "--format", "json"});
  REQUIRE(csv.code == 0);
  REQUIRE(js.code == 0);
  auto rows = parse_csv(csv.out);
  auto doc = nlohmann::json::parse(js.out);
  REQUIRE(doc.size() == rows.size() - 1);
  for (std::size_t i = 0; i < doc.size(); ++i) {
    CHECK(doc[i]["energy"].get<double>() == std::stod(rows[i + 1][3]));
    CHECK(doc[i]["n"].get<long>() == std::stol(rows[i + 1][1]));
  }
}

TEST_CASE("render formats") {
  ResultTable t;
  t.columns = {"a", "b", "c"};
  t.add({1.0 / 3.0, std::monostate{}, std::string("x")});
  t.add({2L, true, 0.5});
  CHECK(render(t, Format::kCsv) ==
        "a,b,c\n0.33333333333333331,GAP,x\n2,1,0.5\n");
  auto j = nlohmann::json::parse(render(t, Format::kJson));
  CHECK(j[0]["b"].is_null());
  CHECK(j[0]["a"].get<double>() == 1.0 / 3.0);
  CHECK(j[1]["b"].get<bool>());
  const auto table = render(t, Format::kTable);
  CHECK(table.find("GAP") != std::string::npos);
  CHECK(parse_format("json") == Format::kJson);
  CHECK_FALSE(parse_format("xml").has_value());
}

TEST_CASE("usage errors exit 2") {
  CHECK(run_cli({}).code == kExitUsage);
  auto bad_n = run_cli({"cwkb", "--N", "1.5"});
  CHECK(bad_n.code == kExitUsage);
  CHECK(bad_n.err.rfind("ptspec: error: usage:", 0) == 0);
  CHECK(run_cli({"cwkb", "--N", "3", "--method", "nope"}).code == kExitUsage);
  CHECK(run_cli({"cwkb", "--N", "3", "--format", "xml"}).code == kExitUsage);
  CHECK(run_cli({"sweep", "--grid", "2:1:0.5"}).code == kExitUsage);
  CHECK(run_cli({"toy", "--model", "Q", "--lambda", "1"}).code == kExitUsage);
  CHECK(run_cli({"bogus"}).code == kExitUsage);
}

TEST_CASE("help and version exit 0") {
  CHECK(run_cli({"--help"}).code == kExitOk);
  auto v = run_cli({"--version"});
  CHECK(v.code == kExitOk);
  CHECK_FALSE(v.out.empty());
}

TEST_CASE("shoot reports non-convergence with exit 3") {
  auto ok = run_cli({"shoot", "--N", "2", "--levels", "3"});
  CHECK(ok.code == kExitOk);
  auto rows = parse_csv(ok.out);
  REQUIRE(rows.size() == 4);
  CHECK(std::stod(rows[1][2]) == doctest::Approx(1.0).epsilon(1e-6));

  auto at_ip = run_cli({"shoot", "--N", "4", "--levels", "3"});
  CHECK(at_ip.code == kExitNonConvergence);
  CHECK(at_ip.err.find("ptspec: error: convergence:") != std::string::npos);
}

TEST_CASE("shoot with fixed d reproduces N = 6") {
  auto r = run_cli({"shoot", "--N", "6", "--emax", "23", "--d", "10"});
  REQUIRE(r.code == kExitOk);
  auto rows = parse_csv(r.out);
  const std::vector<double> ref{1.1448, 4.3386, 9.0731, 14.9352, 21.7142};
  REQUIRE(rows.size() == ref.size() + 1);
  for (std::size_t k = 0; k < ref.size(); ++k)
    CHECK(std::abs(std::stod(rows[k + 1][2]) - ref[k]) < 1e-2);
}

TEST_CASE("other subcommands run") {
  CHECK(run_cli({"turning-points", "--N", "5", "--E", "2"}).code == 0);
  CHECK(run_cli({"diag", "--N", "3", "--size", "60", "--levels", "3"}).code == 0);
  CHECK(run_cli({"diag", "--N", "3", "--size", "40", "--raw"}).code == 0);
  auto cls = run_cli({"toy", "--model", "B", "--lambda", "2", "--classify",
                      "--format", "json"});
  REQUIRE(cls.code == 0);
  auto j = nlohmann::json::parse(cls.out);
  CHECK(j[0]["kind"] == "IP");
  CHECK(run_cli({"toy", "--model", "B", "--lambda", "0", "--hft"}).code == 0);
  auto ip = run_cli({"sweep", "--methods", "M1", "--grid", "3:5:0.02",
                     "--levels", "1", "--ip"});
  REQUIRE(ip.code == 0);
  auto rows = parse_csv(ip.out);
  REQUIRE(rows.size() == 2);
  CHECK(std::abs(std::stod(rows[1][2]) - 4.0) <= 0.02);
}

TEST_CASE("figures write files") {
  const auto dir = fresh_dir("ptspec_cli_figs");
  auto r = run_cli({"figures", "--which", "fig1,fig3", "--out", dir.string(),
                    "--json-mirror"});
  CHECK(r.code == 0);
  CHECK(fs::exists(dir / "fig1.csv"));
  CHECK(fs::exists(dir / "fig3.csv"));
  CHECK(fs::exists(dir / "fig3.json"));
  fs::remove_all(dir);
}

TEST_CASE("cache: hit, miss on changed flags, corrupt eviction") {
  const auto dir = fresh_dir("ptspec_cli_cache");
  const std::string d = dir.string();
  auto first = run_cli({"shoot", "--N", "3", "--levels", "2", "--cache-dir", d});
  REQUIRE(first.code == 0);
  const auto key_files = [&] {
    std::vector<fs::path> files;
    for (const auto& e : fs::recursive_directory_iterator(dir))
      if (e.is_regular_file() && e.path().extension() == ".entry")
        files.push_back(e.path());
    return files;
  };
  auto files = key_files();
  REQUIRE(files.size() == 1);
  const auto stamp = fs::last_write_time(files[0]);
  std::this_thread::sleep_for(std::chrono::milliseconds(20));

  auto second = run_cli({"shoot", "--N", "3", "--levels", "2", "--cache-dir", d});
  CHECK(second.code == first.code);
  CHECK(second.out == first.out);
  CHECK(fs::last_write_time(files[0]) == stamp);

  // The thread count does not change the key.
  run_cli({"shoot", "--N", "3", "--levels", "2", "--cache-dir", d,
           "--threads", "1"});
  CHECK(key_files().size() == 1);

  run_cli({"shoot", "--N", "3", "--levels", "2", "--d", "9", "--cache-dir", d});
  CHECK(key_files().size() == 2);

  // Truncate and check the entry is rebuilt.
  fs::resize_file(files[0], 20);
  auto third = run_cli({"shoot", "--N", "3", "--levels", "2", "--cache-dir", d});
  CHECK(third.out == first.out);
  std::ifstream in(files[0]);
  std::string header;
  std::getline(in, header);
  CHECK(header.rfind("ptspec-cache 1 ", 0) == 0);

  auto bypass = run_cli({"shoot", "--N", "3", "--levels", "2", "--cache-dir",
                         d, "--no-cache"});
  CHECK(bypass.out == first.out);
  fs::remove_all(dir);
}

TEST_CASE("cache store and lookup") {
  const auto dir = fresh_dir("ptspec_cache_unit");
  std::ostringstream warn;
  Cache cache(dir, warn);
  const auto key = Cache::make_key("request text");
  CHECK(key.size() == 32);
  CHECK(Cache::make_key("request text") == key);
  CHECK(Cache::make_key("request text!") != key);
  CHECK_FALSE(cache.lookup(key).has_value());
  cache.store({key, 3, 1234, "payload\nline"});
  auto hit = cache.lookup(key);
  REQUIRE(hit.has_value());
  CHECK(hit->exit_code == 3);
  CHECK(hit->created_at == 1234);
  CHECK(hit->payload == "payload\nline");
  CHECK(cache.path_for(key).parent_path().filename() == key.substr(0, 2));

  // Flip one payload byte: checksum mismatch evicts the entry.
  {
    std::fstream f(cache.path_for(key), std::ios::in | std::ios::out);
    f.seekp(-1, std::ios::end);
    f.put('X');
  }
  CHECK_FALSE(cache.lookup(key).has_value());
  CHECK_FALSE(fs::exists(cache.path_for(key)));
  CHECK(warn.str().empty());
  fs::remove_all(dir);

  CHECK(fnv1a("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a("a") == 0xaf63dc4c8601ec8cULL);
}

TEST_CASE("unusable cache directory disables the cache with a warning") {
  const auto file = fs::temp_directory_path() / "ptspec_cache_is_a_file";
  std::ofstream(file) << "x";
  auto r = run_cli({"cwkb", "--N", "3", "--cache-dir", (file / "sub").string()});
  CHECK(r.code == 0);
  CHECK(r.err.find("cache disabled") != std::string::npos);
  fs::remove(file);
}

TEST_CASE("PTSPEC_THREADS: empty means unset, garbage is a usage error") {
  const char* old = std::getenv("PTSPEC_THREADS");
  const std::string saved = old ? old : "";
  ::setenv("PTSPEC_THREADS", "", 1);
  CHECK(run_cli({"cwkb", "--N", "3"}).code == kExitOk);
  ::setenv("PTSPEC_THREADS", "many", 1);
  CHECK(run_cli({"cwkb", "--N", "3"}).code == kExitUsage);
  CHECK(run_cli({"cwkb", "--N", "3", "--threads", "1"}).code == kExitOk);
  if (old) ::setenv("PTSPEC_THREADS", saved.c_str(), 1);
  else ::unsetenv("PTSPEC_THREADS");
}
