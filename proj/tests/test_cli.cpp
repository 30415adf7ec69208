#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

const std::string cli = SCATTER1D_CLI_PATH;

struct RunResult {
  int code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  static int counter = 0;
  const fs::path capture = fs::path("cli_out_" + std::to_string(counter++) + ".txt");
  const std::string cmd = cli + " " + args + " > " + capture.string() + " 2>&1";
  const int raw = std::system(cmd.c_str());
  RunResult r;
#ifdef _WIN32
  r.code = raw;
#else
  r.code = WEXITSTATUS(raw);
#endif
  std::ifstream in(capture);
  std::stringstream ss;
  ss << in.rdbuf();
  r.out = ss.str();
  fs::remove(capture);
  return r;
}

std::vector<std::vector<double>> parse_csv(const std::string& text, char sep = ',') {
  std::vector<std::vector<double>> rows;
  std::istringstream ss(text);
  std::string line;
  std::getline(ss, line);  // header
  while (std::getline(ss, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, sep)) row.push_back(std::stod(cell));
    rows.push_back(std::move(row));
  }
  return rows;
}

struct TempFile {
  fs::path path;
  explicit TempFile(const std::string& name, const std::string& contents) : path(name) {
    std::ofstream(path) << contents;
  }
  ~TempFile() { fs::remove(path); }
};

}  // namespace

TEST_CASE("forward: row count, unitarity from the emitted columns") {
  TempFile well("well5_cli.json", R"({"form":"squarewell","epsilon":5})");
  const RunResult r = run("forward --potential well5_cli.json --kmin 0.1 --kmax 10 --nk 64");
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("k,reT,imT,reL,imL,reR,imR\n", 0) == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 64);
  for (const auto& row : rows) {
    REQUIRE(row.size() == 7);
    const double t2 = row[1] * row[1] + row[2] * row[2];
    const double l2 = row[3] * row[3] + row[4] * row[4];
    CHECK(std::abs(t2 + l2 - 1.0) <= 1e-8);
  }

  const RunResult checked =
      run("forward --potential well5_cli.json --kmin 0.1 --kmax 10 --nk 8 --check-column");
  REQUIRE(checked.code == 0);
  CHECK(checked.out.rfind("k,reT,imT,reL,imL,reR,imR,unitarity\n", 0) == 0);
  for (const auto& row : parse_csv(checked.out)) CHECK(std::abs(row[7]) <= 1e-8);
}

TEST_CASE("forward: zero potential means unit transmission") {
  TempFile zero("zero_cli.json", R"({"form":"piecewise","breakpoints":[0,1],"values":[0]})");
  const RunResult r = run("forward --potential zero_cli.json --kmin 0.5 --kmax 2 --nk 4");
  REQUIRE(r.code == 0);
  for (const auto& row : parse_csv(r.out)) {
    CHECK(row[1] == 1.0);
    CHECK(row[2] == 0.0);
  }
}

TEST_CASE("forward: config invariants exit with code 2") {
  TempFile well("well_cli2.json", R"({"form":"squarewell","epsilon":5})");
  CHECK(run("forward --potential well_cli2.json --nk 1").code == 2);
  CHECK(run("forward --potential missing_file.json").code == 2);
  CHECK(run("forward --potential well_cli2.json --kmin -1").code == 2);
  TempFile bad("bad_cli.json", R"({"form":"squarewell","epsilon":5,"bogus":1})");
  CHECK(run("forward --potential bad_cli.json").code == 2);
}

TEST_CASE("forward output is deterministic") {
  TempFile well("well_det.json", R"({"form":"squarewell","epsilon":5})");
  const RunResult a = run("forward --potential well_det.json --kmin 0.2 --kmax 4 --nk 16");
  const RunResult b = run("forward --potential well_det.json --kmin 0.2 --kmax 4 --nk 16");
  CHECK(a.out == b.out);
}

TEST_CASE("darboux add/remove round trip through files") {
  TempFile zero("zero_rt.json", R"({"form":"piecewise","breakpoints":[0,1],"values":[0]})");
  REQUIRE(run("darboux add --potential zero_rt.json --kappa 1 --gamma 1 --out soliton.json")
              .code == 0);
  const RunResult removed = run("darboux remove --potential soliton.json --index 1");
  REQUIRE(removed.code == 0);
  CHECK(removed.out.find("\"form\":\"grid\"") != std::string::npos);
  fs::remove("soliton.json");

  CHECK(run("darboux remove --potential zero_rt.json --index 1").code == 2);
}

TEST_CASE("darboux verify emits the identity table, independent of gamma") {
  const RunResult a = run("darboux verify --kappa 1 --gamma 1 --n 2");
  REQUIRE(a.code == 0);
  CHECK(a.out.rfind("n\tlhs\trhs\tresidual\n", 0) == 0);
  const auto rows_a = parse_csv(a.out, '\t');
  REQUIRE(rows_a.size() == 3);
  CHECK(rows_a[0][2] == doctest::Approx(-4.0));
  CHECK(rows_a[1][2] == doctest::Approx(16.0 / 3.0));
  CHECK(rows_a[2][2] == doctest::Approx(-128.0 / 15.0));
  for (const auto& row : rows_a) CHECK(row[3] <= 1e-6);

  const RunResult b = run("darboux verify --kappa 1 --gamma 10 --n 2");
  const auto rows_b = parse_csv(b.out, '\t');
  for (std::size_t i = 0; i < rows_a.size(); ++i)
    CHECK(std::abs(rows_a[i][1] - rows_b[i][1]) <= 1e-8 * std::max(1.0, std::abs(rows_a[i][2])));

  CHECK(run("darboux verify --kappa 1 --gamma 1 --n 0").out.find("-4") != std::string::npos);
}

TEST_CASE("reconstruct tzero on the real axis") {
  const RunResult r = run("reconstruct tzero --model squarewell:5 --kmin 0.5 --kmax 3 --nk 6");
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("k,reT0,imT0,abserr\n", 0) == 0);
  for (const auto& row : parse_csv(r.out)) {
    CHECK(std::abs(row[1]) <= 1.0);
    CHECK(row[3] <= 1e-4);
  }
}

TEST_CASE("inverse resonances and enumerate") {
  const RunResult res = run("inverse resonances --model squarewell:5 --format tsv");
  REQUIRE(res.code == 0);
  const auto rows = parse_csv(res.out, '\t');
  REQUIRE(rows.size() == 2);
  CHECK(rows[0][1] == doctest::Approx(1.54334).epsilon(1e-3));
  CHECK(rows[1][1] == doctest::Approx(1.5857).epsilon(1e-3));

  const RunResult ladder = run("inverse enumerate --model squarewell:20");
  REQUIRE(ladder.code == 0);
  CHECK(ladder.out.rfind("N\tkappas\tC_N\n", 0) == 0);
  CHECK(ladder.out.find("6.2463") != std::string::npos);

  CHECK(run("inverse enumerate --model squarewell:-3").code == 2);
  CHECK(run("inverse enumerate --model nosuch:1").code == 2);
}

TEST_CASE("inverse disambiguate statuses and the plot sidecar") {
  const RunResult unique = run("inverse disambiguate --model squarewell:5 --c-bound 4.9");
  REQUIRE(unique.code == 0);
  CHECK(unique.out.find("\"status\":\"unique\"") != std::string::npos);

  CHECK(run("inverse disambiguate --model squarewell:5 --c-bound 5.0")
            .out.find("\"status\":\"ambiguous\"") != std::string::npos);
  CHECK(run("inverse disambiguate --model squarewell:5 --c-bound 1.0")
            .out.find("\"status\":\"none\"") != std::string::npos);

  REQUIRE(run("inverse disambiguate --model squarewell:5 --c-bound 4.9 --out dis.json").code == 0);
  CHECK(fs::exists("dis.json"));
  CHECK(fs::exists("dis.json.plot.csv"));
  std::ifstream plot("dis.json.plot.csv");
  std::string header;
  std::getline(plot, header);
  CHECK(header == "index,C_N");
  fs::remove("dis.json");
  fs::remove("dis.json.plot.csv");
}

TEST_CASE("example command reproduces the reference tables") {
  const RunResult ex33 = run("example --paper 3.3");
  REQUIRE(ex33.code == 0);
  CHECK(ex33.out.find("1.93021") != std::string::npos);
  CHECK(ex33.out.find("enumerated 2 candidates") != std::string::npos);

  const RunResult ex31 = run("example --paper 3.1");
  REQUIRE(ex31.code == 0);
  CHECK(ex31.out.find("1.5433") != std::string::npos);
  CHECK(ex31.out.find("4.8312") != std::string::npos);

  const RunResult ex32 = run("example --paper 3.2");
  REQUIRE(ex32.code == 0);
  CHECK(ex32.out.find("2.522588") != std::string::npos);  // the documented discrepancy
  CHECK(ex32.out.find("inconsistent") != std::string::npos);

  CHECK(run("example --paper 9.9").code == 2);

  // pi^2 is accepted literally in model specs
  const RunResult pi2 = run("inverse resonances --model squarewell:pi^2 --format tsv");
  REQUIRE(pi2.code == 0);
  CHECK(parse_csv(pi2.out, '\t').size() == 1);
}
