#include "doctest.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "gdyn/cli.hpp"
#include "gdyn/errors.hpp"
#include "gdyn/generators.hpp"
#include "gdyn/io.hpp"

using namespace gdyn;
namespace fs = std::filesystem;

namespace {
fs::path scratch() {
  const auto d = fs::temp_directory_path() / "gdyn_io_test";
  fs::create_directories(d);
  return d;
}
void write(const fs::path& p, const std::string& s) { std::ofstream(p) << s; }
std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}
int cli(std::vector<std::string> args) {
  args.insert(args.begin(), "gdyn");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  return run(static_cast<int>(argv.size()), argv.data());
}
}  // namespace

TEST_CASE("graph round trip") {
  const auto g = graphs::wheel(6);
  const auto h = graph_from_json(json::parse(to_json(g).dump()));
  CHECK(h.edges() == g.edges());
  CHECK(h.n() == g.n());
  std::istringstream el("# comment\nn 5\n0 1\n1 2  # trailing\n2 0\n");
  const auto t = parse_edge_list(el);
  CHECK(t.n() == 5);
  CHECK(t.m() == 3);
  CHECK_THROWS_AS(graph_from_json(json::parse(R"({"edges":[[0,0]]})")), Error);
}

TEST_CASE("coupling round trip") {
  for (const auto& f : {Coupling::odd_polynomial({-1.0, 1.0}), Coupling::sine_sum({{1, 1.0}, {3, -1.0}}),
                        Coupling::sine_series(2.5, {{1, 1.0}, {5, 0.2}})}) {
    const auto g = coupling_from_json(json::parse(to_json(f).dump()));
    for (double x : {-1.3, 0.2, 2.9}) CHECK(g(x) == f(x));
  }
  CHECK_THROWS_AS(load_coupling(R"({"family":"bogus"})"), Error);
  CHECK(load_coupling(R"({"family":"sine_sum","terms":{"1":1.0}})")(1.0) == std::sin(1.0));
}

TEST_CASE("numbers round trip exactly") {
  Vec v(4);
  v << 0.1, 1.0 / 3.0, std::numbers::pi, -2.718281828459045e-300;
  const auto back = vec_from_json(json::parse(to_json(v).dump()));
  CHECK(back == v);
}

TEST_CASE("cli exit codes and outputs") {
  const auto d = scratch();
  write(d / "k4.json", to_json(graphs::complete(4)).dump());
  write(d / "book5.json", to_json(graphs::book(5)).dump());
  write(d / "sin.json", R"({"family":"sine_series","P":3.141592653589793,"terms":{"1":1.0}})");

  CHECK(cli({"bounds", "--graph", (d / "book5.json").string(), "--coupling", (d / "sin.json").string(), "--out",
             (d / "b.json").string()}) == 0);
  const auto b = json::parse(slurp(d / "b.json"));
  CHECK(b["dim_H1"] == 5);
  CHECK(b["cc"] == 2);
  CHECK(b["bounds"]["chain_bound"] == 4);

  CHECK(cli({"bounds", "--graph", (d / "missing.json").string(), "--coupling", (d / "sin.json").string()}) == 2);
  CHECK(cli({"nosuch"}) == 2);
  CHECK(cli({"bounds", "--graph", (d / "k4.json").string()}) == 2);
  CHECK(cli({"solve", "--graph", (d / "k4.json").string(), "--coupling", (d / "sin.json").string(), "--t-eq", "-1"}) == 2);
  CHECK(cli({"stability", "--graph", (d / "k4.json").string(), "--coupling", (d / "sin.json").string(), "--x",
             "[0, 0.3, 0.1, 0.2]"}) == 2);
  write(d / "sq.json", R"({"family":"odd_poly","coeffs":[1.0, 1.0]})");
  CHECK(cli({"simulate", "--graph", (d / "k4.json").string(), "--coupling", (d / "sq.json").string(), "--x0",
             "[0, 1, 2, 3]", "--t-end", "5", "--csv", (d / "traj.csv").string(), "--out", (d / "traj.json").string()}) == 0);
  CHECK(slurp(d / "traj.csv").rfind("t,x0,x1,x2,x3,energy\n", 0) == 0);

  CHECK(cli({"continue", "--graph", (d / "k4.json").string(), "--coupling", (d / "sin.json").string(), "--x0",
             "[0, 0.7, 3.141592653589793, 3.841592653589793]", "--csv", (d / "m.csv").string(), "--spectrum-csv",
             (d / "spec.csv").string(), "--out", (d / "m.json").string()}) == 0);
  CHECK(json::parse(slurp(d / "m.json"))["closed"] == true);
  CHECK(slurp(d / "spec.csv").rfind("index,lambda0,lambda1,lambda2,lambda3,zero_multiplicity,verdict\n", 0) == 0);
  CHECK(cli({"continue", "--graph", (d / "k4.json").string(), "--coupling", (d / "sin.json").string(), "--x0",
             "[0, 0, 0, 0]"}) == 2);
}

TEST_CASE("cli numerical failure exit code") {
  const auto d = scratch();
  write(d / "p2.json", to_json(graphs::path(2)).dump());
  // f = -x^3 blows up in finite time
  write(d / "blow.json", R"({"family":"odd_poly","coeffs":[0.0, -1.0]})");
  CHECK(cli({"simulate", "--graph", (d / "p2.json").string(), "--coupling", (d / "blow.json").string(), "--x0",
             "[0, 10]", "--t-end", "10"}) == 3);
}

TEST_CASE("cli solve is deterministic") {
  const auto d = scratch();
  write(d / "k4.json", to_json(graphs::complete(4)).dump());
  write(d / "s.json", R"({"family":"sine_sum","terms":{"1":1.0}})");
  for (const char* out : {"a.json", "b.json"})
    REQUIRE(cli({"solve", "--graph", (d / "k4.json").string(), "--coupling", (d / "s.json").string(), "--starts",
                 "300", "--seed", "7", "--out", (d / out).string()}) == 0);
  CHECK(slurp(d / "a.json") == slurp(d / "b.json"));
}

TEST_CASE("cover and blocks subcommands") {
  const auto d = scratch();
  write(d / "g.json", to_json(graphs::asymmetric7()).dump());
  write(d / "h.json", to_json(graphs::complete(3)).dump());
  write(d / "bow.json", to_json(graphs::glue(graphs::cycle(3), 0, graphs::cycle(3), 0)).dump());
  write(d / "s.json", R"({"family":"sine_sum","terms":{"1":1.0}})");
  json phi = graphs::asymmetric7_cover();
  CHECK(cli({"cover", "check", "--graph", (d / "g.json").string(), "--target", (d / "h.json").string(), "--phi",
             phi.dump(), "--out", (d / "c.json").string()}) == 0);
  CHECK(json::parse(slurp(d / "c.json"))["valid"] == true);
  CHECK(cli({"cover", "find", "--graph", (d / "g.json").string(), "--target", (d / "h.json").string(), "--out",
             (d / "f.json").string()}) == 0);
  CHECK(json::parse(slurp(d / "f.json"))["count"].get<int>() >= 1);
  CHECK(cli({"blocks", "--graph", (d / "bow.json").string(), "--coupling", (d / "s.json").string(), "--x0",
             "[0, 3.141592653589793, 0, 0, 0]", "--out", (d / "bl.json").string()}) == 0);
  CHECK(json::parse(slurp(d / "bl.json"))["stability"]["consistent"] == true);
  CHECK(cli({"corpus", "show", "nosuch"}) == 2);
}
