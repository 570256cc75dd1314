#include "ssnreg_cli/grid_file.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "ssnreg_cli/csv_io.hpp"

namespace ssnreg::cli {

namespace {

const std::set<std::string> kKnownKeys = {"label", "n",   "p", "T", "r",      "sigma",      "penalty",
                                          "solver", "gamma", "select", "alpha", "M", "J", "cd_tol",
                                          "cd_max_iter"};

class LineReader {
 public:
  LineReader(const std::string& source, std::size_t line, std::map<std::string, std::string> kv)
      : source_(source), line_(line), kv_(std::move(kv)) {}

  bool has(const std::string& key) const { return kv_.count(key) != 0; }

  const std::string& text(const std::string& key) const {
    auto it = kv_.find(key);
    if (it == kv_.end()) fail("missing required key '" + key + "'");
    return it->second;
  }

  double real(const std::string& key) const {
    const std::string& s = text(key);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) fail("'" + key + "' is not a number: " + s);
    return v;
  }

  long long integer(const std::string& key) const {
    const std::string& s = text(key);
    long long v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) fail("'" + key + "' is not an integer: " + s);
    return v;
  }

  [[noreturn]] void fail(const std::string& what) const { throw GridParseError(source_, line_, what); }

 private:
  const std::string& source_;
  std::size_t line_;
  std::map<std::string, std::string> kv_;
};

BenchCell make_cell(const LineReader& rd) {
  BenchCell cell;
  try {
    cell.sim.n = rd.integer("n");
    cell.sim.p = rd.integer("p");
    cell.sim.sparsity = rd.integer("T");
    cell.sim.r = rd.has("r") ? rd.real("r") : 0.0;
    cell.sim.sigma = rd.has("sigma") ? rd.real("sigma") : 0.0;
    cell.sim.validate();
    cell.family = parse_penalty(rd.text("penalty"));
    cell.gamma = rd.has("gamma") ? rd.real("gamma") : PenaltySpec::default_gamma(cell.family);
    PenaltySpec(cell.family, 1.0, cell.gamma);  // validates gamma
    cell.solver = parse_solver(rd.text("solver"));
    cell.selector = rd.has("select") ? parse_selector(rd.text("select")) : Selector::Vsc;
    if (cell.selector == Selector::None) rd.fail("benchmark cells need a selector (vsc or hbic)");
    if (rd.has("alpha")) cell.path.alpha = rd.real("alpha");
    if (rd.has("M")) cell.path.grid_size = static_cast<int>(rd.integer("M"));
    if (rd.has("J")) cell.path.max_iter = static_cast<int>(rd.integer("J"));
    if (rd.has("cd_tol")) cell.path.cd.tol = rd.real("cd_tol");
    if (rd.has("cd_max_iter")) cell.path.cd.max_iter = static_cast<int>(rd.integer("cd_max_iter"));
    if (!(cell.path.alpha > 0.0 && cell.path.alpha < 1.0)) rd.fail("alpha must lie in (0, 1)");
    if (cell.path.grid_size < 1) rd.fail("M must be >= 1");
    if (cell.path.max_iter < 1) rd.fail("J must be >= 1");
    if (!(cell.path.cd.tol > 0.0)) rd.fail("cd_tol must be > 0");
    if (cell.path.cd.max_iter < 1) rd.fail("cd_max_iter must be >= 1");
  } catch (const GridParseError&) {
    throw;
  } catch (const Error& e) {
    rd.fail(e.what());
  }
  if (rd.has("label")) {
    cell.label = rd.text("label");
  } else {
    std::ostringstream name;
    name << "n" << cell.sim.n << "_p" << cell.sim.p << "_r" << cell.sim.r << "_s" << cell.sim.sigma
         << "_T" << cell.sim.sparsity << "_" << to_string(cell.family) << "_" << to_string(cell.solver);
    cell.label = name.str();
  }
  return cell;
}

}  // namespace

std::vector<BenchCell> parse_grid(std::istream& in, const std::string& source) {
  std::vector<BenchCell> cells;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream tokens(line);
    std::map<std::string, std::string> kv;
    std::string token;
    while (tokens >> token) {
      const auto eq = token.find('=');
      if (eq == std::string::npos || eq == 0 || eq + 1 == token.size()) {
        throw GridParseError(source, line_no, "expected key=value, found '" + token + "'");
      }
      std::string key = token.substr(0, eq);
      if (kKnownKeys.count(key) == 0) throw GridParseError(source, line_no, "unknown key '" + key + "'");
      if (!kv.emplace(key, token.substr(eq + 1)).second) {
        throw GridParseError(source, line_no, "duplicate key '" + key + "'");
      }
    }
    if (kv.empty()) continue;
    cells.push_back(make_cell(LineReader(source, line_no, std::move(kv))));
  }
  return cells;
}

std::vector<BenchCell> load_grid_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open grid file " + path.string());
  return parse_grid(in, path.string());
}

}  // namespace ssnreg::cli
