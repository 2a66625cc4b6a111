#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "vdw/certificate.hpp"
#include "vdw/cli.hpp"

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "vdw");
  std::ostringstream out, err;
  const int code = vdw::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "vdw_cli_test";
  fs::create_directories(dir);
  return dir / name;
}

void write_file(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

}  // namespace

TEST_CASE("radix") {
  Run r = run({"radix", "--value", "1132", "--base", "6"});
  CHECK(r.code == 0);
  CHECK(r.out.find("digits: 5 1 2 4") != std::string::npos);
  CHECK(r.out.find("exponent: 3") != std::string::npos);

  r = run({"radix", "--value", "9", "--base", "3", "--format", "json"});
  const Json j = Json::parse(r.out);
  CHECK(j["digits"] == Json::array({1, 0, 0}));
  CHECK(j["exponent"] == 2);

  r = run({"radix", "--value", "1", "--base", "2", "--format", "csv"});
  CHECK(r.out == "value,base,digits,exponent\n1,2,1,0\n");

  CHECK(run({"radix", "--value", "0", "--base", "2"}).code == 2);
  CHECK(run({"radix", "--value", "10", "--base", "1"}).code == 2);
  CHECK(run({"radix", "--value", "abc", "--base", "2"}).code == 2);
  CHECK(run({"radix", "--base", "2"}).code == 2);
}

TEST_CASE("tables") {
  Run t1 = run({"table", "--which", "1"});
  CHECK(t1.code == 0);
  CHECK(count_lines(t1.out) == 8);
  for (const char* cell : {"W(2, 3) = 9", "W(2, 4) = 35", "W(2, 5) = 178", "W(2, 6) = 1132", "W(3, 3) = 27",
                           "W(3, 4) = 293", "W(4, 3) = 76", "27 = 3^3.00000"}) {
    CHECK(t1.out.find(cell) != std::string::npos);
  }

  Run t2 = run({"table", "--which", "2", "--format", "csv"});
  CHECK(t2.code == 0);
  CHECK(count_lines(t2.out) == 8);
  CHECK(t2.out.rfind("r,k,sqrt_n_plus_1,n,ln_r,ln_k,r_pow_n,W,r_pow_n_plus_1,r_pow_k_squared\n", 0) == 0);
  CHECK(t2.out.find("2,6,3.316,10,0.6931,1.7917,2^10,1132,2^11,2^36\n") != std::string::npos);

  CHECK(run({"table", "--which", "3"}).code == 2);

  const Json places = Json::parse(run({"table", "--which", "1", "--places", "3", "--format", "json"}).out);
  CHECK(places[0]["exponent"] == "3.170");
}

TEST_CASE("theorem") {
  Run a = run({"theorem", "--r", "2", "--k", "6", "--k-prime", "3", "--format", "json"});
  CHECK(a.code == 0);
  const Json j = Json::parse(a.out);
  CHECK(j["n"] == 10);
  CHECK(j["condition1"]["verdict"] == "holds");
  CHECK(j["condition2"]["verdict"] == "holds");
  CHECK(j["condition3"]["verdict"] == "holds");
  CHECK(j["k_lower_bound_holds"]["holds"] == true);
  CHECK(j["conclusion_holds"]["holds"] == true);
  CHECK(j["conclusion_holds"]["r_pow_k_squared"] == "2^36");

  const Json b = Json::parse(run({"theorem", "--r", "2", "--k", "3", "--format", "json"}).out);
  CHECK(b["condition3"]["verdict"] == "vacuous");
  CHECK(b["conclusion_holds"]["holds"] == true);

  CHECK(run({"theorem", "--r", "2", "--k", "6", "--k-prime", "7"}).code == 2);
  CHECK(run({"theorem", "--r", "2", "--k", "7"}).code == 2);
  CHECK(run({"theorem", "--r", "2", "--k", "3", "--w", "600"}).code == 1);
  CHECK(run({"theorem", "--r", "2", "--k", "7", "--w", "100"}).code == 0);
}

TEST_CASE("ratio") {
  Run a = run({"ratio", "--r", "2", "--k", "4", "--format", "json"});
  CHECK(a.code == 0);
  const Json j = Json::parse(a.out);
  CHECK(j["exact"]["numerator"] == 178);
  CHECK(j["exact"]["denominator"] == 35);
  CHECK(j["gap"] == 1);
  CHECK(j["residual"]["numerator"] == 89);
  CHECK(j["residual"]["denominator"] == 35);
  CHECK(j["residual"]["decimal"] == "2.542857");
  CHECK(j["identity_holds"] == true);

  const Json b = Json::parse(run({"ratio", "--r", "3", "--k", "3", "--format", "json"}).out);
  CHECK(b["exact"]["numerator"] == 293);
  CHECK(b["exact"]["denominator"] == 27);
  CHECK(b["gap"] == 1);

  const Json c = Json::parse(run({"ratio", "--r", "2", "--k", "3", "--format", "json"}).out);
  CHECK(c["binomial_estimate"].is_null());

  Run missing = run({"ratio", "--r", "2", "--k", "6"});
  CHECK(missing.code == 2);
  CHECK(missing.err.find("W(2,7)") != std::string::npos);
}

TEST_CASE("search and verify") {
  const fs::path cert = scratch("w24.crt");
  Run s = run({"search", "--r", "2", "--k", "4", "--cert", cert.string(), "--format", "json"});
  CHECK(s.code == 0);
  const Json j = Json::parse(s.out);
  CHECK(j["status"] == "exact");
  CHECK(j["value"] == 35);
  CHECK(j["provenance"] == "paper-table+search-derived");
  CHECK(j["certificate"]["length"] == 34);
  CHECK(run({"verify", cert.string()}).code == 0);

  const fs::path good = scratch("w23.crt");
  write_file(good, "2 3 8\n0 0 1 1 0 0 1 1\n");
  CHECK(run({"verify", good.string()}).code == 0);

  const fs::path flipped = scratch("w23_bad.crt");
  write_file(flipped, "2 3 8\n0 0 0 1 0 0 1 1\n");
  Run bad = run({"verify", flipped.string(), "--format", "json"});
  CHECK(bad.code == 1);
  const Json bj = Json::parse(bad.out);
  CHECK(bj["valid"] == false);
  CHECK(bj["progression"]["start"] == 1);
  CHECK(bj["progression"]["step"] == 1);

  const fs::path truncated = scratch("w23_trunc.crt");
  write_file(truncated, "2 3 8\n0 0 1\n");
  CHECK(run({"verify", truncated.string()}).code == 2);
  CHECK(run({"verify", scratch("absent.crt").string()}).code == 2);

  Run budget = run({"search", "--r", "2", "--k", "6", "--max-seconds", "1", "--cert", scratch("w26.crt").string()});
  CHECK(budget.code == 3);
  CHECK(run({"verify", scratch("w26.crt").string()}).code == 0);

  Run capped = run({"search", "--r", "2", "--k", "5", "--max-length", "100", "--format", "json"});
  CHECK(capped.code == 0);
  CHECK(Json::parse(capped.out)["status"] == "lower-bound-only");

  CHECK(run({"search", "--r", "2", "--k", "4", "--mode", "sideways"}).code == 2);
  CHECK(run({"search", "--r", "1", "--k", "4"}).code == 2);
}

TEST_CASE("registry file") {
  const fs::path ext = scratch("extra.reg");
  write_file(ext, "# extra\n5 3 170 user-supplied\n");
  Run a = run({"lookup", "--r", "5", "--k", "3", "--registry", ext.string()});
  CHECK(a.code == 0);
  CHECK(a.out.find("170") != std::string::npos);
  CHECK(run({"lookup", "--r", "5", "--k", "3"}).code == 1);

  const fs::path conflict = scratch("conflict.reg");
  write_file(conflict, "2 3 10 user-supplied\n");
  CHECK(run({"table", "--which", "1", "--registry", conflict.string()}).code == 1);

  const fs::path broken = scratch("broken.reg");
  write_file(broken, "2 3\n");
  Run b = run({"table", "--which", "1", "--registry", broken.string()});
  CHECK(b.code == 2);
  CHECK(b.err.find("line 1") != std::string::npos);

  const fs::path added = scratch("added.reg");
  write_file(added, "2 7 4000 user-supplied\n");
  Run r = run({"ratio", "--r", "2", "--k", "6", "--registry", added.string(), "--format", "json"});
  CHECK(r.code == 0);
  CHECK(Json::parse(r.out)["exact"]["numerator"] == 1000);
  CHECK(Json::parse(r.out)["exact"]["denominator"] == 283);
}

TEST_CASE("json output round-trips byte for byte") {
  const fs::path cert = scratch("rt.crt");
  write_file(cert, "2 3 8\n0 0 1 1 0 0 1 1\n");
  const std::vector<std::vector<std::string>> commands{
      {"radix", "--value", "1132", "--base", "6"},
      {"table", "--which", "1"},
      {"table", "--which", "2"},
      {"theorem", "--r", "2", "--k", "6", "--k-prime", "3"},
      {"theorem", "--r", "3", "--k", "3"},
      {"ratio", "--r", "2", "--k", "4"},
      {"ratio", "--r", "2", "--k", "3"},
      {"gaps"},
      {"lookup", "--r", "2", "--k", "9"},
      {"search", "--r", "3", "--k", "3"},
      {"verify", cert.string()},
  };
  for (auto args : commands) {
    args.push_back("--format");
    args.push_back("json");
    const Run first = run(args);
    CAPTURE(args[0]);
    CHECK(first.out == Json::parse(first.out).dump(2) + "\n");
    CHECK(run(args).out == first.out);
  }
}

TEST_CASE("installed binary exit codes") {
  const fs::path truncated = scratch("bin_trunc.crt");
  write_file(truncated, "2 3 8\n0 0\n");
  auto status = [](const std::string& cmd) {
    const int raw = std::system((cmd + " >/dev/null 2>&1").c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  const std::string tool = VDW_TOOL;
  CHECK(status(tool + " radix --value 35 --base 4") == 0);
  CHECK(status(tool + " verify " + truncated.string()) == 2);
  CHECK(status(tool + " table --which 3") == 2);
  CHECK(status(tool) == 2);
  CHECK(status(tool + " --help") == 0);
}
