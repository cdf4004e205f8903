#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "zumm/io.hpp"

using zumm::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("zumm_cli_test_" + name)).string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const std::string kZeros = ZUMM_ZEROS_FILE;

// Cells as numbers: CSV cannot tell the double 0 from the integer 0.
std::vector<std::vector<double>> numbers(const zumm::io::Table& t) {
  std::vector<std::vector<double>> out;
  for (const auto& row : t.rows) {
    out.emplace_back();
    for (const auto& c : row) {
      if (const auto* d = std::get_if<double>(&c))
        out.back().push_back(*d);
      else if (const auto* i = std::get_if<long long>(&c))
        out.back().push_back(double(*i));
      else
        out.back().push_back(std::stod(std::get<std::string>(c)));
    }
  }
  return out;
}

zumm::io::Table parse_json(const std::string& s) {
  std::istringstream in(s);
  auto t = zumm::io::read_json(in);
  std::erase_if(t.metadata, [](const auto& kv) { return kv.first == "param.out"; });
  return t;
}

}  // namespace

TEST_CASE("exit codes") {
  CHECK(call({"betas", "--model", "local", "--prime", "2", "--mmax", "5"}).code == 0);
  CHECK(call({"betas", "--bogus"}).code == 1);
  CHECK(call({}).code == 1);
  CHECK(call({"betas", "--model", "nonsense"}).code == 1);
  // missing zero table is a validation error
  const auto missing = call({"trace-check"});
  CHECK(missing.code == 1);
  CHECK(missing.err.find("--zeros") != std::string::npos);
  CHECK(call({"trace-check", "--zeros", "/nonexistent/zeros.txt"}).code == 1);
  CHECK(call({"li", "--method", "zeros", "--zeros", kZeros, "--nzeros", "100000000"}).code == 1);
  // prime 4 is not prime
  CHECK(call({"density", "--prime", "4"}).code == 1);

  // Li methods with too few zeros cannot agree to 1e-9: output is written, exit is 2.
  const auto li = call({"li", "--method", "both", "--nmax", "3", "--zeros", kZeros, "--nzeros", "100",
                        "--tolerance", "1e-9"});
  CHECK(li.code == 2);
  CHECK(li.out.find("status=inconsistent") != std::string::npos);

  const auto v = call({"--version"});
  CHECK(v.code == 0);
  CHECK(v.out.find(zumm::cli::kVersion) != std::string::npos);
}

TEST_CASE("CSV and JSON hold the same numbers") {
  const auto csv = call({"betas", "--model", "gamma", "--mmax", "6"});
  const auto json = call({"betas", "--model", "gamma", "--mmax", "6", "--format", "json"});
  REQUIRE(csv.code == 0);
  REQUIRE(json.code == 0);
  std::istringstream a(csv.out), b(json.out);
  const auto ta = zumm::io::read_csv(a);
  const auto tb = zumm::io::read_json(b);
  CHECK(ta.columns == tb.columns);
  CHECK(numbers(ta) == numbers(tb));
  REQUIRE(ta.find_meta("command"));
  CHECK(*ta.find_meta("command") == "betas");
  CHECK(*ta.find_meta("status") == "ok");
}

TEST_CASE("metadata records every parameter") {
  const auto r = call({"comb", "--prime", "3", "--qmax", "4"});
  REQUIRE(r.code == 0);
  std::istringstream in(r.out);
  const auto t = zumm::io::read_csv(in);
  for (const char* key : {"tool", "version", "boost", "param.prime", "param.qmax", "param.format", "param.threads"})
    CHECK_MESSAGE(t.find_meta(key), key);
  CHECK(*t.find_meta("param.prime") == "3");
}

TEST_CASE("seeded runs are bit-identical and replayable") {
  const std::vector<std::string> args = {"cue-sample", "--n", "6", "--samples", "200", "--seed", "3", "--format", "json"};
  const auto a = call(args);
  const auto b = call(args);
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  auto threaded = args;
  threaded.insert(threaded.end(), {"--threads", "2"});
  const auto c = call(threaded);
  std::istringstream ia(a.out), ic(c.out);
  CHECK(zumm::io::read_json(ia).rows == zumm::io::read_json(ic).rows);

  const std::string path = temp_path("replay.json");
  auto to_file = args;
  to_file.insert(to_file.end(), {"--out", path});
  REQUIRE(call(to_file).code == 0);
  const auto replayed = call({"--replay", path});
  REQUIRE(replayed.code == 0);
  // identical apart from where the output went
  const auto original = parse_json(slurp(path));
  const auto again = parse_json(replayed.out);
  CHECK(original.metadata == again.metadata);
  CHECK(original.rows == again.rows);

  const auto other_seed = call({"--replay", path, "--seed", "4"});
  REQUIRE(other_seed.code == 0);
  CHECK(other_seed.out != replayed.out);
  std::remove(path.c_str());
}

TEST_CASE("config file supplies defaults, flags override") {
  const std::string cfg = temp_path("config.txt");
  {
    std::ofstream f(cfg);
    f << "# defaults\nmmax = 3\nprime=3\n";
  }
  const auto from_cfg = call({"betas", "--config", cfg});
  REQUIRE(from_cfg.code == 0);
  std::istringstream in(from_cfg.out);
  const auto t = zumm::io::read_csv(in);
  CHECK(t.rows.size() == 3);
  CHECK(*t.find_meta("param.prime") == "3");

  const auto overridden = call({"betas", "--config", cfg, "--mmax", "5"});
  std::istringstream in2(overridden.out);
  CHECK(zumm::io::read_csv(in2).rows.size() == 5);

  {
    std::ofstream f(cfg);
    f << "not a pair\n";
  }
  CHECK(call({"betas", "--config", cfg}).code == 1);
  std::remove(cfg.c_str());
}

TEST_CASE("each subcommand runs on small inputs") {
  CHECK(call({"padic-check", "--prime", "2", "--s-re", "2", "--shells", "20"}).code == 0);
  CHECK(call({"wavelet-check", "--prime", "2", "--states", "4", "--coset-level", "6", "--domain-exponent", "6"}).code == 0);
  CHECK(call({"density", "--prime", "3", "--points", "20"}).code == 0);
  CHECK(call({"li", "--method", "cauchy", "--nmax", "4"}).code == 0);
  CHECK(call({"beta-ren", "--method", "xi_decomposition", "--mmax", "5"}).code == 0);
  CHECK(call({"beta-ren", "--method", "compare", "--mmax", "4", "--primes-max", "1000000", "--tolerance", "1e-5"}).code == 0);
  CHECK(call({"trace-check", "--zeros", kZeros, "--width", "1"}).code == 0);
  CHECK(call({"explicit-formula", "--kind", "psi", "--zeros", kZeros, "--nzeros", "100"}).code == 0);
  CHECK(call({"explicit-formula", "--kind", "jlocal", "--prime", "2", "--x", "10"}).code == 0);
  CHECK(call({"plaquette-mc", "--n", "8", "--sweeps", "200", "--burn-in", "50", "--chains", "1", "--bins", "16"}).code == 0);
  CHECK(call({"comb", "--mu", "0.5", "--qmax", "2"}).code == 0);
}
