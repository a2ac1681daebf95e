#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

namespace {

struct Run {
  int code = -1;
  std::string out;
  std::vector<Json> records() const {
    std::vector<Json> recs;
    std::istringstream in(out);
    for (std::string line; std::getline(in, line);) {
      if (!line.empty()) recs.push_back(Json::parse(line));
    }
    return recs;
  }
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + ISOSLOPE_CLI_PATH + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  for (std::size_t n; (n = fread(buf, 1, sizeof buf, pipe)) > 0;) r.out.append(buf, n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

struct TempDir {
  fs::path path;
  TempDir() {
    std::random_device rd;
    path = fs::temp_directory_path() / ("isoslope-cli-" + std::to_string(rd()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("cli: quintic point") {
  const auto r = run("slopes --p 31 --c 6,12,18,24 --x 4 --strategy auto");
  REQUIRE(r.code == 0);
  const auto recs = r.records();
  REQUIRE(recs.size() == 1);
  CHECK(recs[0]["schema_version"] == "1");
  CHECK(recs[0]["slopes"] == Json::parse(R"(["5/2","5/2","1/2","1/2"])"));
  CHECK(recs[0]["max_gap"] == "2");
  CHECK(recs[0]["request"]["c"] == Json::parse("[6,12,18,24]"));
  CHECK(recs[0].contains("timing_ms"));
}

TEST_CASE("cli: every point of a datum") {
  const auto r = run("slopes --p 7 --c 1,5,1");
  REQUIRE(r.code == 0);
  const auto recs = r.records();
  CHECK(recs.size() == 5);
  std::vector<int> big;
  for (const auto& j : recs) {
    if (j["violates_small_gaps"].get<bool>()) big.push_back(j["request"]["x"].get<int>());
  }
  // x = 3 is the (1, p-2, c3) point; x = 2 is where u_{c'} vanishes.
  CHECK(big == std::vector<int>{2, 3});
}

TEST_CASE("cli: points by coefficients and extension degree") {
  const auto a = run("slopes --p 5 --c 1,2 --m 2 --x 2,1");
  const auto b = run("slopes --p 5 --c 1,2 --m 2 --x 7");
  REQUIRE(a.code == 0);
  REQUIRE(b.code == 0);
  CHECK(a.records()[0]["x_coeffs"] == Json::parse("[2,1]"));
  CHECK(a.records()[0]["slopes"] == b.records()[0]["slopes"]);
  CHECK(run("slopes --p 5 --c 1,2 --m 2").records().size() == 10);
}

TEST_CASE("cli: exit codes") {
  const auto np = run("slopes --p 4 --c 1");
  CHECK(np.code == 64);
  CHECK(np.records()[0]["error"]["kind"] == "NotPrime");
  CHECK(run("slopes --p 7").code == 64);
  CHECK(run("").code == 64);
  CHECK(run("frobnicate").code == 64);
  CHECK(run("slopes --p 7 --c 1,9").code == 64);
  CHECK(run("slopes --p 7 --c 1 --x 1").code == 64);
  CHECK(run("slopes --p 7 --c 1 --x 99").code == 64);
  CHECK(run("slopes --p 7 --c 1 --format yaml").code == 64);
  CHECK(run("hecke --n 2 --t-vals 0").code == 64);
  CHECK(run("scan --family quintic --p-range 31").code == 64);

  const auto prec = run("slopes --p 31 --c 6,12,18,24 --x 4 --precision 1");
  CHECK(prec.code == 2);
  CHECK(prec.records()[0]["error"]["kind"] == "PrecisionInsufficient");
  CHECK(prec.records()[0]["error"]["suggested_precision"] == 2);
  const auto retry = run("slopes --p 31 --c 6,12,18,24 --x 4 --precision 8");
  CHECK(retry.code == 0);

  const auto cap = run("slopes --p 7 --c 1,2 --m 2 --x 9", "ISOSLOPE_TABLE_LIMIT=10");
  CHECK(cap.code == 2);
  CHECK(cap.records()[0]["error"]["kind"] == "DegreeTooLarge");
  CHECK(run("slopes --p 7 --c 1,2 --m 2 --x 9").code == 0);

  CHECK(run("slopes --p 7 --c 1,2 --x 3 --strategy selfdual").code == 2);
  CHECK(run("coweight small-gaps --type GL2 --coweight 0,1").code == 2);
  CHECK(run("coweight leq --type GL2 --a 1,0 --b 0,0").code == 2);
}

TEST_CASE("cli: replaying a request echo reproduces the record") {
  const auto first = run("slopes --p 11 --c 2,3,9 --strategy dualpair");
  REQUIRE(first.code == 0);
  for (auto rec : first.records()) {
    const auto& q = rec["request"];
    std::string c;
    for (const auto& v : q["c"]) c += (c.empty() ? "" : ",") + std::to_string(v.get<int>());
    std::string args = "slopes --p " + std::to_string(q["p"].get<int>()) + " --c " + c + " --m " +
                       std::to_string(q["m"].get<int>()) + " --x " + std::to_string(q["x"].get<int>()) +
                       " --strategy " + q["strategy"].get<std::string>();
    if (q["precision"].is_number()) args += " --precision " + std::to_string(q["precision"].get<int>());
    const auto again = run(args);
    REQUIRE(again.code == 0);
    auto rec2 = again.records().at(0);
    rec.erase("timing_ms");
    rec2.erase("timing_ms");
    CHECK(rec == rec2);
  }
}

TEST_CASE("cli: csv and json agree") {
  const auto j = run("slopes --p 13 --c 2,6,11");
  const auto c = run("slopes --p 13 --c 2,6,11 --format csv");
  REQUIRE(j.code == 0);
  REQUIRE(c.code == 0);
  std::istringstream in(c.out);
  std::string header;
  std::getline(in, header);
  CHECK(header.rfind("p,c,m,x,x_coeffs,slopes,gaps,max_gap", 0) == 0);
  const auto recs = j.records();
  std::size_t k = 0;
  for (std::string line; std::getline(in, line); ++k) {
    REQUIRE(k < recs.size());
    std::vector<std::string> cells;
    std::istringstream ls(line);
    for (std::string cell; std::getline(ls, cell, ',');) cells.push_back(cell);
    std::string slopes;
    for (const auto& s : recs[k]["slopes"]) slopes += (slopes.empty() ? "" : ";") + s.get<std::string>();
    CHECK(cells.at(3) == std::to_string(recs[k]["request"]["x"].get<int>()));
    CHECK(cells.at(5) == slopes);
    CHECK(cells.at(7) == recs[k]["max_gap"].get<std::string>());
  }
  CHECK(k == recs.size());
}

TEST_CASE("cli: hecke and coweight") {
  auto h = run("hecke --n 3 --t-vals 0,0,0").records().at(0);
  CHECK(h["newt"] == Json::parse(R"(["0","-1","-1","0"])"));
  CHECK(h["slopes"] == Json::parse(R"(["1","0","-1"])"));
  CHECK(run("hecke --n 3 --t-vals 1/3,1/3,0 --pgl3").records().at(0)["region"] == "A&B");
  auto sg = run("coweight small-gaps --type GL4 --coweight 5/2,5/2,1/2,1/2").records().at(0);
  CHECK(sg["small_gaps"] == false);
  CHECK(sg["violating"] == Json::parse("[2]"));
  CHECK(run("coweight rho --type SL3").records().at(0)["rho_check"] == Json::parse(R"(["1","0","-1"])"));
  CHECK(run("coweight cohinterval --r 0 --s 0 --i 3 --n 3").records().at(0)["interval"] ==
        Json::parse(R"(["0","3"])"));
  CHECK(run("coweight leq --type GL3 --a 1,1,1 --b 2,1,0").records().at(0)["leq"] == true);

  TempDir tmp;
  std::ofstream(tmp.path / "b2.txt") << "2 -2\n-1 2\n";
  const auto cr = run("coweight rho --type cartan:" + (tmp.path / "b2.txt").string());
  REQUIRE(cr.code == 0);
  CHECK(cr.records().at(0)["rho_check"].size() == 2);
}

TEST_CASE("cli: scans") {
  TempDir tmp;
  const auto q = run("scan --family quintic --p-range 11..31 --out " + (tmp.path / "q.json").string());
  REQUIRE(q.code == 0);
  CHECK(q.out.find("published: (31, 4), (31, 17)") != std::string::npos);
  const auto rep = Json::parse(slurp(tmp.path / "q.json"));
  CHECK(rep["kind"] == "scan_report");
  CHECK(rep["summary"]["published"] == 2);

  const auto t = run("scan --family triplegap --p-range 5..13 --out " + (tmp.path / "t.json").string());
  REQUIRE(t.code == 0);
  CHECK(t.out.rfind("all triple-gap checks passed", 0) == 0);

  for (int w : {1, 8}) {
    const auto path = tmp.path / ("w" + std::to_string(w) + ".json");
    REQUIRE(run("scan --family explicit --c 1,2,4 --p-range 5..11 --m-max 2 --workers " + std::to_string(w) +
                " --out " + path.string())
                .code == 0);
  }
  CHECK(slurp(tmp.path / "w1.json") == slurp(tmp.path / "w8.json"));

  // Resume from a checkpoint cut short.
  const auto ck = tmp.path / "ck.ndjson";
  REQUIRE(run("scan --family explicit --c 1,2,4 --p-range 5..11 --m-max 2 --checkpoint " + ck.string() +
              " --out " + (tmp.path / "a.json").string())
              .code == 0);
  std::string text = slurp(ck);
  text.resize(text.size() / 2);
  std::ofstream(ck, std::ios::trunc) << text;
  REQUIRE(run("scan --family explicit --c 1,2,4 --p-range 5..11 --m-max 2 --checkpoint " + ck.string() +
              " --out " + (tmp.path / "b.json").string())
              .code == 0);
  CHECK(slurp(tmp.path / "a.json") == slurp(tmp.path / "w1.json"));
  CHECK(slurp(tmp.path / "b.json") == slurp(tmp.path / "w1.json"));

  const auto csv = run("scan --family quintic --p-range 31..31 --format csv --out " + (tmp.path / "q.csv").string());
  REQUIRE(csv.code == 0);
  const auto table = slurp(tmp.path / "q.csv");
  CHECK(std::count(table.begin(), table.end(), '\n') == 30);
}
