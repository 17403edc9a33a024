#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Result {
  int code = -1;
  std::string out;
  std::string err;
};

const fs::path& work() {
  static const fs::path dir = [] {
    fs::path d(CONVSEQ_WORK);
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Runs the CLI through the shell with single-quoted arguments.
Result cli(const std::string& args) {
  const fs::path err = work() / "stderr.txt";
  const std::string command = std::string("'") + CONVSEQ_EXE + "' " + args + " 2>'" + err.string() + "'";
  Result r;
  FILE* pipe = ::popen(command.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buffer[4096];
  std::size_t n;
  while ((n = std::fread(buffer, 1, sizeof buffer, pipe)) > 0) r.out.append(buffer, n);
  const int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.err = slurp(err);
  return r;
}

fs::path write_config(const std::string& name, const std::string& text) {
  const fs::path path = work() / name;
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST_CASE("alpha table from flags") {
  const auto r = cli("alpha -b '[5,-4,-3,3]' -m 2 -n 7");
  CHECK(r.code == 0);
  CHECK(r.out ==
        "n,alpha_0,alpha_1\n0,1,0\n1,0,1\n2,4/5,4/5\n3,1/25,36/25\n4,84/125,149/125\n5,56/625,1016/625\n"
        "6,1829/3125,4344/3125\n7,2136/15625,26521/15625\n");
  CHECK(cli("alpha -b '[5,-4,-3,3]' -m 2 -n 7 --route series").out == r.out);
}

TEST_CASE("run a config") {
  const auto config = write_config("pell.json", R"({"b":[1,-1,-1],"m":1,"N":6,"initials":[1],"commands":["a"]})");
  const auto r = cli("run '" + config.string() + "'");
  CHECK(r.code == 0);
  CHECK(r.out == "n,a\n0,1\n1,2\n2,5\n3,12\n4,29\n5,70\n6,169\n");
}

TEST_CASE("exit codes") {
  const auto zero = write_config("zero.json", R"({"b":[0,1],"m":1,"N":4,"commands":["alpha"]})");
  const auto r = cli("run '" + zero.string() + "'");
  CHECK(r.code == 2);
  CHECK(r.err.find("b0 must be nonzero") != std::string::npos);

  CHECK(cli("alpha -b '[0,1]' -n 4").code == 2);
  CHECK(cli("run '" + write_config("bad.json", R"({"b":[1],"N":3,"commands":["alpha"],"x":1})").string() + "'").code == 2);
  CHECK(cli("run '" + (work() / "missing.json").string() + "'").code == 2);
  CHECK(cli("solve -b '[1,-1,1]' -m 1").code == 2);
  CHECK(cli("constants --target zeta_direct --a-re 0.5 -n 10").code == 2);
  CHECK(cli("frobnicate").code == 2);
  CHECK(cli("--help").code == 0);
}

TEST_CASE("solve and limits emit parseable JSON") {
  const auto solve = cli("solve -b '[5,-4,-3,3]' -m 2");
  REQUIRE(solve.code == 0);
  const auto j = nlohmann::json::parse(solve.out);
  CHECK(std::abs(j.at("solution").at(0).at("re").get<double>() - (11 - std::sqrt(61.0)) / 10) < 1e-10);

  const auto limits = cli("limits -b '[5,-4,-3,3]' -m 2 -n 100");
  REQUIRE(limits.code == 0);
  const auto l = nlohmann::json::parse(limits.out);
  CHECK(l.at("limits").at(0).at("closed") == nlohmann::json{{"num", "1"}, {"den", "3"}});
}

TEST_CASE("constants") {
  const auto r = cli("constants --target pi_leibniz -n 3 --format csv");
  CHECK(r.code == 0);
  CHECK(r.out.rfind("n,alpha_0,weighted_b\n0,1,0\n1,2/3,1/3\n2,13/15,-23/45\n", 0) == 0);
  const auto zeta = cli("constants --target zeta_direct --a-re 2 -n 3");
  CHECK(zeta.code == 0);
  const auto j = nlohmann::json::parse(zeta.out);
  CHECK(j.at("alpha_partial").at(3) == nlohmann::json{{"num", "205"}, {"den", "144"}});
}

TEST_CASE("plot data is byte-identical across runs") {
  const auto first = work() / "fig1_a.csv";
  const auto second = work() / "fig1_b.csv";
  CHECK(cli("plotdata -b '[-3,2,-1,3]' -n 50 --dim 2 -o '" + first.string() + "'").code == 0);
  CHECK(cli("plotdata -b '[-3,2,-1,3]' -n 50 --dim 2 -o '" + second.string() + "'").code == 0);
  const auto text = slurp(first);
  CHECK(text == slurp(second));
  CHECK(std::count(text.begin(), text.end(), '\n') == 52);

  const auto triple = cli("plotdata -b '[3,0,-3,-2,3]' -n 200 --dim 3");
  CHECK(triple.code == 0);
  CHECK(triple.out.rfind("n,x,y,z\n", 0) == 0);
  CHECK(std::count(triple.out.begin(), triple.out.end(), '\n') == 202);

  CHECK(cli("plotdata -b sine -n 50").code == 0);
}

TEST_CASE("config with an output directory") {
  const auto out = work() / "out";
  const auto config = write_config(
      "multi.json", R"({"b":{"kind":"catalog","name":"fibonacci_geometric"},"N":60,"commands":["alpha","limits",{"plotdata":{"dim":3}}],"output":{"path":")" +
                        out.string() + R"("}})");
  CHECK(cli("run '" + config.string() + "'").code == 0);
  CHECK(fs::exists(out / "alpha.csv"));
  CHECK(fs::exists(out / "limits.json"));
  CHECK(fs::exists(out / "plotdata.csv"));
  CHECK(nlohmann::json::parse(slurp(out / "limits.json")).at("m") == 1);
}

TEST_CASE("catalog listing") {
  const auto r = cli("catalog");
  CHECK(r.code == 0);
  CHECK(r.out.find("zeta_hasse\n") != std::string::npos);
}
