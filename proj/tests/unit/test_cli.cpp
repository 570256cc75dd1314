#include <doctest.h>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include <ssnreg/ssnreg.hpp>

#include "fixtures.hpp"
#include "ssnreg_cli/commands.hpp"
#include "ssnreg_cli/csv_io.hpp"
#include "ssnreg_cli/grid_file.hpp"

using namespace ssnreg;
using namespace ssnreg::cli;
using fixtures::TempDir;
using json = nlohmann::json;

namespace {

void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream(p) << text;
}

json read_json(const std::filesystem::path& p) {
  std::ifstream in(p);
  return json::parse(in);
}

std::vector<json> read_jsonl(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::vector<json> out;
  for (std::string line; std::getline(in, line);) out.push_back(json::parse(line));
  return out;
}

int run(std::vector<std::string> args) {
  args.insert(args.begin(), "ssnreg");
  return run_cli(args);
}

int gen(const TempDir& dir, const std::string& sub, const std::string& n, const std::string& p,
        const std::string& r, const std::string& sigma, const std::string& t, const std::string& seed) {
  return run({"gen", "--n", n, "--p", p, "--r", r, "--sigma", sigma, "--T", t, "--seed", seed, "--out-dir",
              (dir / sub).string()});
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("csv reading and writing") {
  TempDir dir("csv");
  write_text(dir / "h.csv", "a,b\n1,2\n3,4.5\n");
  const Matrix h = read_matrix_csv(dir / "h.csv");
  CHECK(h.rows() == 2);
  CHECK(h(1, 1) == 4.5);
  write_text(dir / "nh.csv", "1,2\n-3e-2,4\n");
  CHECK(read_matrix_csv(dir / "nh.csv")(1, 0) == -0.03);

  write_text(dir / "ragged.csv", "1,2\n3\n");
  CHECK_THROWS_AS(read_matrix_csv(dir / "ragged.csv"), CsvError);
  write_text(dir / "nan.csv", "1,2\n3,nan\n");
  try {
    read_matrix_csv(dir / "nan.csv");
    FAIL("NaN accepted");
  } catch (const CsvError& e) {
    CHECK(std::string(e.what()).find("2") != std::string::npos);
  }
  write_text(dir / "inf.csv", "x\n1\ninf\n");
  CHECK_THROWS_AS(read_vector_csv(dir / "inf.csv"), CsvError);
  write_text(dir / "wide.csv", "1,2\n");
  CHECK_THROWS_AS(read_vector_csv(dir / "wide.csv"), CsvError);
  CHECK_THROWS_AS(read_matrix_csv(dir / "missing.csv"), IoError);

  Vector v(4);
  v << 0.1, -1.0 / 3.0, 1e-300, 123456789.123456789;
  write_vector_csv(dir / "v.csv", v, "v");
  CHECK((read_vector_csv(dir / "v.csv") == v));
  const Matrix m = Matrix::Random(5, 3);
  write_matrix_csv(dir / "m.csv", m);
  CHECK((read_matrix_csv(dir / "m.csv") == m));
}

TEST_CASE("grid files") {
  std::istringstream good(
      "# comment\n"
      "\n"
      "n=50 p=100 T=3 penalty=mcp solver=ssn   # trailing\n"
      "label=x n=60 p=100 T=2 r=0.5 sigma=1 penalty=scad gamma=4 solver=cd select=hbic M=50 J=2 alpha=1e-3 "
      "cd_tol=1e-4 cd_max_iter=500\n");
  const auto cells = parse_grid(good);
  REQUIRE(cells.size() == 2);
  CHECK(cells[0].gamma == 2.7);
  CHECK(cells[0].selector == Selector::Vsc);
  CHECK(cells[1].label == "x");
  CHECK(cells[1].family == Penalty::Scad);
  CHECK(cells[1].gamma == 4.0);
  CHECK(cells[1].solver == SolverKind::Cd);
  CHECK(cells[1].selector == Selector::Hbic);
  CHECK(cells[1].path.grid_size == 50);
  CHECK(cells[1].path.max_iter == 2);
  CHECK(cells[1].path.cd.max_iter == 500);

  const auto bad = [](const std::string& text) {
    std::istringstream in(text);
    try {
      parse_grid(in, "g");
    } catch (const GridParseError& e) {
      return e.line();
    }
    return std::size_t{0};
  };
  CHECK(bad("\nn=50 p=100 T=3 penalty=mcp solver=ssn foo=1\n") == 2);
  CHECK(bad("n=50 p=100 penalty=mcp solver=ssn\n") == 1);
  CHECK(bad("n=50 p=100 T=3 penalty=mcp solver=ssn\nn=50 n=5\n") == 2);
  CHECK(bad("n=50 p=100 T=3 penalty=mcp solver=ssn select=none\n") == 1);
  CHECK(bad("n=50 p=100 T=3 penalty=mcp solver=ssn gamma=0.5\n") == 1);
  CHECK(bad("n=fifty p=100 T=3 penalty=mcp solver=ssn\n") == 1);
  CHECK(bad("n=50 p=100 T=3 penalty mcp solver=ssn\n") == 1);
  std::istringstream empty("# nothing\n\n");
  CHECK(parse_grid(empty).empty());
}

TEST_CASE("shipped grids parse") {
  const auto desk = load_grid_file(std::filesystem::path(SSNREG_DATA_DIR) / "desk.grid");
  CHECK(desk.size() == 24);
  for (const BenchCell& c : desk) {
    CHECK(c.sim.n == 200);
    CHECK(c.sim.p == 1000);
    CHECK(c.sim.sparsity == 14);
  }
  CHECK_FALSE(load_grid_file(std::filesystem::path(SSNREG_DATA_DIR) / "smoke.grid").empty());
}

TEST_CASE("gen") {
  TempDir dir("gen");
  REQUIRE(gen(dir, "a", "30", "50", "0.3", "0.1", "0", "5") == kExitOk);
  CHECK(read_vector_csv(dir / "a/beta_true.csv").isZero(0.0));
  REQUIRE(gen(dir, "b", "30", "50", "0.3", "0.1", "4", "5") == kExitOk);
  REQUIRE(gen(dir, "c", "30", "50", "0.3", "0.1", "4", "5") == kExitOk);
  for (const char* f : {"X.csv", "y.csv", "beta_true.csv"}) {
    CHECK(fixtures::slurp(dir / "b" / f) == fixtures::slurp(dir / "c" / f));
  }
  CHECK(support_size(read_vector_csv(dir / "b/beta_true.csv")) == 4);
  const json m = read_json(dir / "b/manifest.json");
  CHECK(m["command"] == "gen");
  CHECK(m["options"]["T"] == 4);
  CHECK(m["master_seed"] == 5);
  CHECK(m.contains("version"));
  CHECK(m.contains("wall_time_seconds"));

  CHECK(gen(dir, "bad", "30", "50", "1.5", "0.1", "4", "5") == kExitValidation);
  CHECK_FALSE(std::filesystem::exists(dir / "bad"));
  CHECK(gen(dir, "bad2", "30", "50", "0.3", "0.1", "60", "5") == kExitValidation);
  write_text(dir / "file", "x");
  CHECK(gen(dir, "file/sub", "30", "50", "0.3", "0.1", "4", "5") == kExitIo);
}

TEST_CASE("fit") {
  TempDir dir("fit");
  REQUIRE(gen(dir, "d", "40", "80", "0.2", "0.1", "3", "9") == kExitOk);
  const std::string x = (dir / "d/X.csv").string();
  const std::string y = (dir / "d/y.csv").string();
  LoadedData data = load_dataset({x, y, false});
  const double lmax = data.problem.lambda_max();

  REQUIRE(run({"fit", "--x", x, "--y", y, "--lambda", format_double(lmax * 1.01), "--out-dir", (dir / "zero").string()}) == kExitOk);
  CHECK(read_vector_csv(dir / "zero/beta.csv").isZero(0.0));
  const json rep = read_json(dir / "zero/report.json");
  CHECK(rep["support_size"] == 0);
  CHECK(rep["kkt_inf"] == 0.0);
  for (const char* f : {"beta_raw.csv", "dual.csv", "scale.csv", "manifest.json"}) CHECK(std::filesystem::exists(dir / "zero" / f));

  CHECK(run({"fit", "--x", x, "--y", y, "--lambda", "1", "--penalty", "mcp", "--gamma", "0.5", "--out-dir", (dir / "g").string()}) == kExitValidation);
  CHECK_FALSE(std::filesystem::exists(dir / "g"));
  CHECK(run({"fit", "--x", x, "--y", y, "--lambda", "1", "--penalty", "ridge", "--out-dir", (dir / "p").string()}) == kExitValidation);
  CHECK(run({"fit", "--x", (dir / "none.csv").string(), "--y", y, "--lambda", "1", "--out-dir", (dir / "io").string()}) == kExitIo);
  CHECK(run({"fit", "--x", x, "--y", y, "--lambda", "1", "--no-normalize", "--out-dir", (dir / "nn").string()}) == kExitValidation);
  CHECK(run({"fit", "--x", x, "--y", y, "--out-dir", (dir / "m").string()}) == kExitValidation);
  CHECK(run({"fit", "--x", x, "--y", y, "--lambda", format_double(lmax * 0.001), "--out-dir", (dir / "small").string()}) == kExitSolver);
  CHECK(read_json(dir / "small/error.json")["exit_code"] == kExitSolver);

  for (const char* solver : {"ssn", "cd"}) {
    const std::filesystem::path out = dir / (std::string("mid_") + solver);
    REQUIRE(run({"fit", "--x", x, "--y", y, "--lambda", format_double(lmax * 0.2), "--solver", solver, "--penalty", "scad", "--out-dir", out.string()}) == kExitOk);
    const Vector beta = read_vector_csv(out / "beta.csv");
    const Vector raw = read_vector_csv(out / "beta_raw.csv");
    CHECK(((raw.cwiseProduct(data.scale) - beta).lpNorm<Eigen::Infinity>() <= 1e-12));
    const json r = read_json(out / "report.json");
    CHECK(r["solver"] == solver);
    CHECK(r["support"].size() == static_cast<std::size_t>(support_size(beta)));
  }
}

TEST_CASE("path") {
  TempDir dir("path");
  REQUIRE(gen(dir, "d", "50", "120", "0.3", "0.1", "3", "10") == kExitOk);
  const std::string x = (dir / "d/X.csv").string();
  const std::string y = (dir / "d/y.csv").string();

  REQUIRE(run({"path", "--x", x, "--y", y, "--select", "none", "--out-dir", (dir / "none").string()}) == kExitOk);
  CHECK_FALSE(std::filesystem::exists(dir / "none/selected.csv"));
  CHECK(std::filesystem::exists(dir / "none/path.jsonl"));

  REQUIRE(run({"path", "--x", x, "--y", y, "--M", "1", "--alpha", "0.5", "--out-dir", (dir / "m1").string()}) == kExitOk);
  CHECK(read_jsonl(dir / "m1/path.jsonl").size() == 2);

  REQUIRE(run({"path", "--x", x, "--y", y, "--penalty", "scad", "--select", "hbic", "--store-solutions", "--out-dir", (dir / "h").string()}) == kExitOk);
  const auto recs = read_jsonl(dir / "h/path.jsonl");
  REQUIRE(recs.size() > 2);
  CHECK(recs[0]["support_size"] == 0);
  CHECK(recs[0].contains("beta"));
  CHECK(recs[1]["lambda"].get<double>() < recs[0]["lambda"].get<double>());
  const json sel = read_json(dir / "h/selected.json");
  CHECK(sel["selector"] == "hbic");
  CHECK(read_json(dir / "h/path_summary.json")["points"] == recs.size());

  CHECK(run({"path", "--x", x, "--y", y, "--alpha", "2", "--out-dir", (dir / "bad").string()}) == kExitValidation);
  CHECK(run({"path", "--x", x, "--y", y, "--select", "aic", "--out-dir", (dir / "bad2").string()}) == kExitValidation);
}

TEST_CASE("gen -> path -> fit reproduces the selected solution bit-exactly") {
  TempDir dir("roundtrip");
  REQUIRE(gen(dir, "d", "200", "1000", "0.1", "0.01", "20", "2024") == kExitOk);
  const std::string x = (dir / "d/X.csv").string();
  const std::string y = (dir / "d/y.csv").string();
  for (const std::string pen : {"scad", "mcp"}) {
    const std::filesystem::path out = dir / ("path_" + pen);
    REQUIRE(run({"path", "--x", x, "--y", y, "--penalty", pen, "--J", "3", "--store-solutions", "--out-dir", out.string()}) == kExitOk);
    const json sel = read_json(out / "selected.json");
    const std::vector<json> recs = read_jsonl(out / "path.jsonl");
    const auto t = sel["index"].get<std::size_t>();
    REQUIRE(t >= 1);
    const auto to_vec = [](const json& arr) {
      Vector v(static_cast<Index>(arr.size()));
      for (std::size_t i = 0; i < arr.size(); ++i) v[static_cast<Index>(i)] = arr[i].get<double>();
      return v;
    };
    write_vector_csv(out / "warm_beta.csv", to_vec(recs[t - 1]["beta"]), "beta");
    write_vector_csv(out / "warm_dual.csv", to_vec(recs[t - 1]["d"]), "d");
    const std::filesystem::path fit = dir / ("fit_" + pen);
    REQUIRE(run({"fit", "--x", x, "--y", y, "--penalty", pen, "--lambda", format_double(sel["lambda"].get<double>()),
                 "--warm-beta", (out / "warm_beta.csv").string(), "--warm-dual", (out / "warm_dual.csv").string(),
                 "--max-iter", "3", "--out-dir", fit.string()}) == kExitOk);
    const Vector refit = read_vector_csv(fit / "beta.csv");
    CHECK((refit == read_vector_csv(out / "selected.csv")));
    CHECK((refit == to_vec(recs[t]["beta"])));

    // The selected support is the true one, and a cold fit at the selected lambda finds it too.
    const IndexList truth = support(read_vector_csv(dir / "d/beta_true.csv"));
    CHECK(support(refit) == truth);
    const std::filesystem::path cold = dir / ("cold_" + pen);
    REQUIRE(run({"fit", "--x", x, "--y", y, "--penalty", pen, "--lambda", format_double(sel["lambda"].get<double>()), "--out-dir", cold.string()}) == kExitOk);
    CHECK(support(read_vector_csv(cold / "beta.csv")) == truth);
  }
}

TEST_CASE("bench") {
  TempDir dir("bench");
  write_text(dir / "empty.grid", "# no cells\n");
  REQUIRE(run({"bench", "--grid-file", (dir / "empty.grid").string(), "--out", (dir / "e").string()}) == kExitOk);
  std::ifstream agg(dir / "e/aggregate.csv");
  std::string header, row;
  std::getline(agg, header);
  CHECK_FALSE(header.empty());
  CHECK_FALSE(static_cast<bool>(std::getline(agg, row)));

  write_text(dir / "bad.grid", "n=10 p=20 T=1 penalty=mcp solver=ssn\nn=10 p=20 T=1 penalty=mcp solver=qr\n");
  std::ostringstream err;
  BenchArgs args;
  args.grid_file = dir / "bad.grid";
  args.out_dir = dir / "b";
  CHECK(cmd_bench(args, {}, err) == kExitValidation);
  CHECK(err.str().find(":2:") != std::string::npos);

  const auto start = std::chrono::steady_clock::now();
  REQUIRE(run({"bench", "--grid-file", std::string(SSNREG_DATA_DIR) + "/smoke.grid", "-N", "1", "--seed", "3", "--out", (dir / "s").string()}) == kExitOk);
  CHECK(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() < 60.0);
  for (const char* f : {"aggregate.csv", "timing.csv", "replications.jsonl", "manifest.json"}) CHECK(std::filesystem::exists(dir / "s" / f));
  const auto recs = read_jsonl(dir / "s/replications.jsonl");
  std::size_t aggregates = 0;
  for (const json& r : recs) aggregates += r["record"] == "aggregate";
  CHECK(aggregates == load_grid_file(std::string(SSNREG_DATA_DIR) + "/smoke.grid").size());
  CHECK(read_json(dir / "s/manifest.json")["master_seed"] == 3);
}

TEST_CASE("thread cap and argument errors") {
  ::setenv("SSNREG_THREADS", "2", 1);
  CHECK(resolve_threads(8) == 2);
  CHECK(resolve_threads(1) == 1);
  ::setenv("SSNREG_THREADS", "junk", 1);
  CHECK(resolve_threads(8) == 8);
  ::unsetenv("SSNREG_THREADS");
  CHECK(resolve_threads(3) == 3);
  CHECK(resolve_threads(0) >= 1);

  CHECK(run({"frobnicate"}) == kExitValidation);
  CHECK(run({}) == kExitValidation);
  CHECK(run({"gen", "--n", "10"}) == kExitValidation);
  CHECK(run({"--version"}) == kExitOk);
}

}  // TEST_SUITE
