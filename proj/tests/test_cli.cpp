#include <filesystem>
#include <fstream>
#include <sstream>

#include "artifact/cli.hpp"
#include "artifact/instances.hpp"
#include "doctest.h"

using namespace artifact;
using namespace artifact::cli;
using nlohmann::json;

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("artifact_cli_test_" + name)).string();
}

json read(const std::string& path) {
  std::ifstream in(path);
  return json::parse(in);
}

void write(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

}  // namespace

TEST_CASE("cohomology on the P1 instance") {
  auto path = temp_path("coh.json");
  auto r = call({"cohomology", "--instance", "p1", "--K", "O", "--L", "O(1)", "--json-out", path});
  CHECK(r.code == kOk);
  auto j = read(path);
  CHECK(j["schema"] == 1);
  CHECK(j["dims"] == json({{"0", 2}}));
  r = call({"cohomology", "--instance", "p1", "--K", "sky:0", "--L", "O", "--json-out", path});
  CHECK(r.code == kOk);
  CHECK(read(path)["dims"] == json({{"1", 1}}));
}

TEST_CASE("growth tables from both models agree and compare as a translation") {
  auto pc = temp_path("gc.json"), pl = temp_path("gl.json"), pv = temp_path("cmp.json");
  auto rc = call({"growth", "--instance", "p1", "--divisor", "0,inf", "--model", "colimit", "--K", "O", "--L", "O",
                  "--pmax", "4", "--json-out", pc});
  REQUIRE(rc.code == kOk);
  auto rl = call({"growth", "--instance", "p1", "--divisor", "0,inf", "--model", "localization", "--K", "O", "--L",
                  "O", "--pmax", "4", "--json-out", pl});
  REQUIRE(rl.code == kOk);
  auto jc = read(pc), jl = read(pl);
  CHECK(jc["growth"]["gamma"] == json({1, 3, 5, 7, 9}));
  CHECK(jl["growth"]["gamma"] == jc["growth"]["gamma"]);
  CHECK(jc["hypotheses"]["ok"] == true);
  auto rv = call({"compare", "--a", pc, "--b", pl, "--json-out", pv});
  CHECK(rv.code == kOk);
  CHECK(rv.out.find("translation-witness(b=0)") != std::string::npos);
  CHECK(read(pv)["verdict"]["kind"] == "translation");

  auto rz = call({"growth", "--instance", "p1", "--model", "colimit", "--L", "sky:0", "--pmax", "3", "--json-out", pc});
  CHECK(rz.code == kOk);
  CHECK(read(pc)["growth"]["gamma"] == json({0, 0, 0, 0}));
}

TEST_CASE("entropy and spectral pages") {
  auto p = temp_path("ent.json");
  auto r = call({"entropy", "--instance", "p1", "--G", "O+O(1)", "--nmax", "10", "--json-out", p});
  REQUIRE(r.code == kOk);
  auto dims = read(p)["dims"].get<std::vector<std::size_t>>();
  for (std::size_t n = 0; n < dims.size(); ++n) CHECK(dims[n] == 8 * n + 4);
  auto s = call({"ss", "--random", "--seed", "7", "--rmax", "2", "--json-out", p});
  CHECK(s.code == kOk);
  CHECK(read(p)["pages"].size() == 3);
}

TEST_CASE("builtin instances round-trip through spec files") {
  for (auto cat : {instances::p1_category(), instances::build_an_quiver(3)}) {
    json j = category_to_json(*cat);
    auto back = category_from_json(json::parse(j.dump()));
    CHECK(*back.category == *cat);
    CHECK(category_to_json(*back.category) == j);
  }
  auto path = temp_path("p1.json");
  CHECK(call({"export", "--instance", "p1", "--out", path}).code == kOk);
  auto r = call({"cohomology", "--file", path, "--K", "O", "--L", "O(1)"});
  CHECK(r.code == kOk);
  CHECK(r.out.find("      0    2") != std::string::npos);
}

TEST_CASE("rationals in spec files") {
  const std::string spec = R"({"objects": ["A"], "homs": [{"source": "A", "target": "A",
    "elements": [{"name": "e", "degree": 0}]}],
    "products": [{"arity": 2, "objects": ["A", "A", "A"], "inputs": ["e", "e"], "output": "e",
                  "coefficient": "2/4"}]})";
  auto c = category_from_text(spec);
  auto v = c.category->mu({0, 0, 0}, {0, 0});
  CHECK(v.get(0) == linalg::Rational(1, 2));
}

TEST_CASE("errors map to exit codes") {
  SUBCASE("malformed JSON") {
    auto p = temp_path("bad.json");
    write(p, "{\"objects\": [\"A\",\n");
    auto r = call({"cohomology", "--file", p, "--K", "A", "--L", "A"});
    CHECK(r.code == kUsage);
    CHECK(r.err.find("line 2") != std::string::npos);
  }
  SUBCASE("unknown reference") {
    auto p = temp_path("ref.json");
    write(p, R"({"objects": ["A"], "homs": [{"source": "A", "target": "B", "elements": []}]})");
    auto r = call({"cohomology", "--file", p, "--K", "A", "--L", "A"});
    CHECK(r.code == kUsage);
    CHECK(r.err.find("/homs/0/target") != std::string::npos);
  }
  SUBCASE("A-infinity violation") {
    auto p = temp_path("nonassoc.json");
    write(p, R"({"objects": ["A"], "check_arity": 3,
      "homs": [{"source": "A", "target": "A", "elements": [{"name": "e", "degree": 0}, {"name": "a", "degree": 0}]}],
      "products": [
        {"arity": 2, "objects": ["A", "A", "A"], "inputs": ["e", "e"], "output": "e", "coefficient": "1"},
        {"arity": 2, "objects": ["A", "A", "A"], "inputs": ["e", "a"], "output": "a", "coefficient": "1"},
        {"arity": 2, "objects": ["A", "A", "A"], "inputs": ["a", "a"], "output": "e", "coefficient": "1"}]})");
    auto r = call({"cohomology", "--file", p, "--K", "A", "--L", "A"});
    CHECK(r.code == kInvariant);
    CHECK(r.err.find("violated") != std::string::npos);
  }
  SUBCASE("precondition") {
    auto r = call({"growth", "--instance", "an", "--n", "3", "--model", "colimit", "--K", "1", "--L", "3"});
    CHECK(r.code == kPrecondition);
  }
  SUBCASE("usage") {
    CHECK(call({}).code == kUsage);
    CHECK(call({"growth", "--pmax", "x"}).code == kUsage);
    CHECK(call({"cohomology", "--instance", "p1", "--K", "nonsense"}).code == kUsage);
    CHECK(call({"--help"}).code == kOk);
  }
}
