#include "toric/cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <optional>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "toric/errors.hpp"
#include "toric/graphs.hpp"
#include "toric/io.hpp"
#include "toric/lowerbound.hpp"
#include "toric/markov.hpp"
#include "toric/transport.hpp"

namespace toric::cli {

namespace {

using json = nlohmann::ordered_json;

struct Common {
  std::string in_path;
  std::string out_path;
  std::string report_path;
  std::string format = "text";
  std::string mode = "auto";
  std::size_t cap = kDefaultFiberCap;
  std::size_t budget = 1'000'000;
  std::size_t pair_budget = 0;
  std::uint64_t seed = 1;
  int threads = 1;
};

struct Outcome {
  json inputs = json::object();
  json results = json::object();
  json resources = json::object();
  std::string verdict = "ok";
  int code = kOk;
  std::vector<std::string> summary;
  std::optional<IntMatrix> matrix;    // pipeline output
  std::optional<std::string> artifact;  // written to --out by non-matrix commands
};

json matrix_json(const IntMatrix& m) {
  json rows = json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

json vector_json(const IntVector& v) { return json(to_std(v)); }

json histogram_json(const DegreeHistogram& h) {
  json o = json::object();
  for (const auto& [deg, count] : h) o[std::to_string(deg)] = count;
  return o;
}

std::string histogram_text(const DegreeHistogram& h) {
  std::string s = "{";
  bool first = true;
  for (const auto& [deg, count] : h) {
    s += (first ? "" : ", ") + std::to_string(deg) + ":" + std::to_string(count);
    first = false;
  }
  return s + "}";
}

std::string join_one_based(const std::vector<std::size_t>& xs) {
  std::string s = "{";
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i] + 1);
  return s + "}";
}

CertifyMode parse_mode(const std::string& s) {
  if (s == "exact") return CertifyMode::exact;
  if (s == "forcing") return CertifyMode::forcing;
  return CertifyMode::automatic;
}

MarkovOptions markov_options(const Common& c) {
  MarkovOptions o;
  o.fiber_cap = c.cap;
  o.graver.max_vectors = c.budget;
  o.graver.max_pairs = c.pair_budget;
  return o;
}

GraverOptions graver_options(const Common& c) {
  GraverOptions o;
  o.max_vectors = c.budget;
  o.max_pairs = c.pair_budget;
  return o;
}

class Session {
public:
  Session(std::istream& in, const Common& common) : in_(in), common_(common) {}

  IntMatrix read_input() {
    IntMatrix m;
    if (common_.in_path.empty()) {
      m = read_matrix(in_);
    } else {
      std::ifstream f(common_.in_path);
      if (!f) throw InvalidInput("cannot open input file " + common_.in_path);
      m = read_matrix(f);
    }
    record_input(m);
    return m;
  }

  Configuration read_configuration() { return validate_configuration(read_input()); }

  void record_input(const IntMatrix& m) {
    outcome.inputs["digest"] = matrix_digest(m);
    outcome.inputs["rows"] = m.rows();
    outcome.inputs["cols"] = m.cols();
  }

  Outcome outcome;

private:
  std::istream& in_;
  const Common& common_;
};

IntMatrix read_matrix_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InvalidInput("cannot open matrix file " + path);
  return read_matrix(f);
}

TableMultiset read_multiset_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw InvalidInput("cannot open multiset file " + path);
  return read_multiset(f);
}

IntMatrix slices_matrix(const LiftedMove& m) {
  return rows_to_matrix(m.slices, m.base_cols);
}

std::string trace_text(const IndispensabilityCertificate& cert, const std::vector<std::string>& labels) {
  std::ostringstream os;
  for (const auto& step : cert.trace) {
    const auto c = static_cast<std::size_t>(step.coordinate);
    os << "coordinate " << (c < labels.size() ? labels[c] : std::to_string(c + 1)) << " partial "
       << step.partial << " forces slices " << join_one_based(step.added) << '\n';
  }
  return os.str();
}

json certificate_json(const IndispensabilityCertificate& cert, const std::vector<std::string>& labels) {
  json o;
  o["verdict"] = to_string(cert.verdict);
  o["mode"] = to_string(cert.mode);
  json w = json::array();
  for (auto s : cert.witness) w.push_back(s + 1);
  o["witness"] = w;
  json t = json::array();
  for (const auto& step : cert.trace) {
    json js;
    const auto c = static_cast<std::size_t>(step.coordinate);
    js["coordinate"] = c < labels.size() ? labels[c] : std::to_string(c + 1);
    js["partial"] = step.partial;
    json added = json::array();
    for (auto s : step.added) added.push_back(s + 1);
    js["added"] = added;
    t.push_back(std::move(js));
  }
  o["trace"] = t;
  o["nodes"] = cert.nodes;
  return o;
}

int certificate_code(const IndispensabilityCertificate& cert) {
  return cert.verdict == IndispensabilityCertificate::Verdict::inconclusive ? kInconclusive : kOk;
}

// (I,J) with I <= J such that the matrix is the incidence matrix of K_{I,J}.
std::pair<int, int> infer_bipartite(const IntMatrix& m) {
  for (Index i = 1; i <= m.rows() / 2; ++i) {
    const Index j = m.rows() - i;
    if (i * j != m.cols()) continue;
    const auto g = complete_bipartite_config(static_cast<int>(i), static_cast<int>(j));
    if (g.cfg.matrix() == m) return {static_cast<int>(i), static_cast<int>(j)};
  }
  throw InvalidInput("input is not the incidence matrix of a complete bipartite graph K_{I,J} with I <= J");
}

// ---- commands ----

void cmd_gen_complete(Session& s, int n, bool loops) {
  auto g = complete_graph_config(n, loops);
  s.outcome.inputs["n"] = n;
  s.outcome.inputs["loops"] = loops;
  s.outcome.results["edges"] = g.edge_labels;
  s.outcome.summary.push_back("K" + std::to_string(n) + (loops ? " with loops" : "") + ": " +
                              std::to_string(g.cfg.rows()) + " x " + std::to_string(g.cfg.cols()));
  s.outcome.matrix = g.cfg.matrix();
}

void cmd_gen_bipartite(Session& s, int rows, int cols) {
  auto g = complete_bipartite_config(rows, cols);
  s.outcome.inputs["i"] = rows;
  s.outcome.inputs["j"] = cols;
  s.outcome.results["cells"] = g.edge_labels;
  s.outcome.summary.push_back("K" + std::to_string(rows) + "," + std::to_string(cols) + ": " +
                              std::to_string(g.cfg.rows()) + " x " + std::to_string(g.cfg.cols()));
  s.outcome.matrix = g.cfg.matrix();
}

void cmd_gen_ones(Session& s, int n) {
  auto cfg = all_ones_row(n);
  s.outcome.inputs["n"] = n;
  s.outcome.summary.push_back("all-ones row: 1 x " + std::to_string(n));
  s.outcome.matrix = cfg.matrix();
}

void cmd_graver(Session& s, const Common& c) {
  IntMatrix a = s.read_input();
  GraverStats stats;
  MoveSet g = graver_basis(a, graver_options(c), &stats);
  s.outcome.results["elements"] = g.size();
  s.outcome.results["signed_elements"] = g.signed_count();
  s.outcome.results["max_degree"] = g.size() ? g.max_degree() : 0;
  s.outcome.results["max_one_norm"] = g.size() ? g.max_one_norm() : 0;
  s.outcome.resources["pairs_examined"] = stats.pairs_examined;
  s.outcome.resources["intermediate_vectors"] = stats.intermediate_vectors;
  s.outcome.resources["wide_arithmetic"] = stats.used_wide;
  s.outcome.summary.push_back("graver: " + std::to_string(g.size()) + " elements up to sign, " +
                              std::to_string(g.signed_count()) + " signed elements");
  s.outcome.matrix = rows_to_matrix(g.moves, a.cols());
}

void cmd_graver_complexity(Session& s, const Common& c) {
  Configuration cfg = s.read_configuration();
  Int gc = graver_complexity(cfg, graver_options(c));
  s.outcome.results["graver_complexity"] = gc;
  s.outcome.summary.push_back("graver complexity: " + std::to_string(gc));
}

void cmd_fiber(Session& s, const Common& c, const std::string& b_text) {
  Configuration cfg = s.read_configuration();
  IntVector b = parse_vector(b_text);
  if (b.size() != cfg.rows())
    throw InvalidInput("b has " + std::to_string(b.size()) + " entries but the matrix has " +
                       std::to_string(cfg.rows()) + " rows");
  Fiber f = enumerate_fiber(cfg, b, c.cap);
  s.outcome.inputs["b"] = vector_json(b);
  s.outcome.results["size"] = f.size();
  s.outcome.results["degree"] = f.total_degree;
  s.outcome.summary.push_back("fiber: " + std::to_string(f.size()) + " elements of degree " +
                              std::to_string(f.total_degree));
  s.outcome.matrix = rows_to_matrix(f.elements, cfg.cols());
}

void cmd_fiber_config(Session& s, const Common& c, const std::string& b_text) {
  IntMatrix a;
  if (!b_text.empty()) {
    Configuration cfg = s.read_configuration();
    IntVector b = parse_vector(b_text);
    if (b.size() != cfg.rows()) throw InvalidInput("b length does not match the matrix row count");
    s.outcome.inputs["b"] = vector_json(b);
    a = fiber_configuration(cfg, b, c.cap).config.matrix();
  } else {
    a = s.read_input().transpose();
    if (a.cols() == 0) throw InvalidInput("empty fiber");
    validate_configuration(a);
  }
  s.outcome.results["rows"] = a.rows();
  s.outcome.results["cols"] = a.cols();
  s.outcome.summary.push_back("fiber configuration: " + std::to_string(a.rows()) + " x " +
                              std::to_string(a.cols()));
  s.outcome.matrix = a;
}

void cmd_markov_degree(Session& s, const Common& c) {
  Configuration cfg = s.read_configuration();
  Int md = markov_degree(cfg, markov_options(c));
  s.outcome.results["markov_degree"] = md;
  s.outcome.summary.push_back("markov degree: " + std::to_string(md));
}

void cmd_minimal_markov(Session& s, const Common& c, const std::string& strategy, Int max_degree) {
  Configuration cfg = s.read_configuration();
  MarkovOptions o = markov_options(c);
  o.max_degree = max_degree;
  if (strategy == "graver") o.strategy = MarkovStrategy::graver_fibers;
  else if (strategy == "sweep") o.strategy = MarkovStrategy::degree_sweep;
  if (o.strategy == MarkovStrategy::degree_sweep && max_degree <= 0)
    throw InvalidInput("the sweep strategy needs --max-degree > 0");
  MinimalMarkovResult r = minimal_markov_basis(cfg, o);
  s.outcome.inputs["strategy"] = strategy;
  s.outcome.results["size"] = r.basis.size();
  s.outcome.results["histogram"] = histogram_json(r.histogram);
  s.outcome.results["complete"] = r.complete;
  if (!r.complete) s.outcome.results["complete_through"] = r.complete_through;
  s.outcome.results["strategy_used"] = r.strategy;
  s.outcome.resources["fibers_examined"] = r.fibers_examined;
  s.outcome.summary.push_back("minimal markov basis: " + std::to_string(r.basis.size()) + " moves, histogram " +
                              histogram_text(r.histogram));
  if (!r.complete) {
    s.outcome.verdict = "partial";
    s.outcome.summary.push_back("complete through degree " + std::to_string(r.complete_through));
  }
  s.outcome.matrix = rows_to_matrix(r.basis.moves, cfg.cols());
}

void cmd_mc_at(Session& s, const Common& c, int copies) {
  Configuration cfg = s.read_configuration();
  if (copies < 1) throw InvalidInput("--n must be at least 1");
  Int mc = markov_complexity_at(cfg, copies, markov_options(c));
  s.outcome.inputs["n"] = copies;
  s.outcome.results["markov_complexity_at"] = mc;
  s.outcome.summary.push_back("markov complexity at N=" + std::to_string(copies) + ": " + std::to_string(mc));
}

void cmd_certify_lift(Session& s, const Common& c, const std::string& moves_path) {
  Configuration cfg = s.read_configuration();
  if (moves_path.empty()) throw InvalidInput("--moves is required");
  IntMatrix slices = read_matrix_file(moves_path);
  if (slices.cols() != cfg.cols())
    throw InvalidInput("slices have " + std::to_string(slices.cols()) + " entries but the configuration has " +
                       std::to_string(cfg.cols()) + " columns");
  LiftedMove m;
  m.base_cols = cfg.cols();
  m.slices = matrix_rows(slices);
  s.outcome.inputs["moves_digest"] = matrix_digest(slices);
  s.outcome.inputs["mode"] = c.mode;
  auto cert = certify_indispensable_lift(cfg, m, parse_mode(c.mode));
  s.outcome.results["type"] = lifted_type(m);
  s.outcome.results["certificate"] = certificate_json(cert, {});
  s.outcome.resources["nodes"] = cert.nodes;
  s.outcome.verdict = to_string(cert.verdict);
  s.outcome.code = certificate_code(cert);
  s.outcome.summary.push_back("lifted move of type " + std::to_string(lifted_type(m)) + ": " +
                              to_string(cert.verdict) + " (" + to_string(cert.mode) + ")");
  if (!cert.witness.empty()) s.outcome.summary.push_back("zero-sum subset " + join_one_based(cert.witness));
  const std::string trace = trace_text(cert, {});
  if (!trace.empty()) s.outcome.artifact = trace;
}

void cmd_zstar(Session& s, const Common& c, int rows, int cols, bool certify) {
  if (rows == 0 && cols == 0) {
    std::tie(rows, cols) = infer_bipartite(s.read_input());
  } else if (rows == 0 || cols == 0) {
    throw InvalidInput("give both --i and --j, or neither");
  }
  s.outcome.inputs["i"] = rows;
  s.outcome.inputs["j"] = cols;
  if (!certify) {
    LiftedMove z = build_zstar(rows, cols);
    auto counts = zstar_counts(rows, cols);
    s.outcome.results["type"] = lifted_type(z);
    s.outcome.results["formula_type"] = counts.formula;
    s.outcome.results["bound"] = counts.bound.str();
    s.outcome.summary.push_back("z* for " + std::to_string(rows) + "x" + std::to_string(cols) + ": N=" +
                                std::to_string(lifted_type(z)) + ", bound " + counts.bound.str());
    s.outcome.artifact = matrix_to_string(slices_matrix(z));
    return;
  }
  s.outcome.inputs["mode"] = c.mode;
  ZStarReport r = certify_zstar(rows, cols, parse_mode(c.mode));
  const auto labels = complete_bipartite_config(rows, cols).edge_labels;
  s.outcome.results["type"] = r.type;
  s.outcome.results["formula_type"] = r.counts.formula;
  s.outcome.results["bound"] = r.counts.bound.str();
  s.outcome.results["slices_indispensable"] = r.slices_indispensable;
  s.outcome.results["certificate"] = certificate_json(r.certificate, labels);
  s.outcome.results["meets_bound"] = r.meets_bound;
  s.outcome.resources["nodes"] = r.certificate.nodes;
  s.outcome.verdict = to_string(r.certificate.verdict);
  s.outcome.code = certificate_code(r.certificate);
  using V = IndispensabilityCertificate::Verdict;
  if (r.certificate.verdict == V::refuted) {
    s.outcome.code = kInternal;
    s.outcome.summary.push_back("z* refuted: zero-sum subset " + join_one_based(r.certificate.witness));
  } else if (r.certificate.verdict == V::certified) {
    s.outcome.summary.push_back("MC >= " + std::to_string(r.type) + ", certified, N=" + std::to_string(r.type));
  } else {
    s.outcome.summary.push_back("N=" + std::to_string(r.type) + ", certificate inconclusive");
  }
  s.outcome.summary.push_back("bound " + r.counts.bound.str() + (r.meets_bound ? " met" : " not met") + ", " +
                              to_string(r.certificate.mode) + " mode");
  s.outcome.artifact = matrix_to_string(slices_matrix(build_zstar(rows, cols)));
}

void cmd_remark(Session& s, const Common& c) {
  LiftedMove m = remark_move_5x5();
  auto g = complete_bipartite_config(5, 5);
  const CertifyMode mode = c.mode == "auto" ? CertifyMode::forcing : parse_mode(c.mode);
  auto cert = certify_indispensable_lift(g.cfg, m, mode);
  s.outcome.inputs["mode"] = to_string(mode);
  s.outcome.results["type"] = lifted_type(m);
  s.outcome.results["certificate"] = certificate_json(cert, g.edge_labels);
  s.outcome.verdict = to_string(cert.verdict);
  s.outcome.code = certificate_code(cert);
  s.outcome.summary.push_back("5x5 move of type " + std::to_string(lifted_type(m)) + ": " + to_string(cert.verdict) +
                              " (" + to_string(cert.mode) + ")");
  std::istringstream lines(trace_text(cert, g.edge_labels));
  for (std::string line; std::getline(lines, line);) s.outcome.summary.push_back(line);
  s.outcome.artifact = matrix_to_string(slices_matrix(m));
}

void cmd_transport(Session& s, const Common& c, const std::string& from, const std::string& to, int rows,
                   int cols, int members, Int max_margin) {
  TableMultiset p, q;
  if (!from.empty() || !to.empty()) {
    if (from.empty() || to.empty()) throw InvalidInput("give both --from and --to");
    p = read_multiset_file(from);
    q = read_multiset_file(to);
  } else {
    std::mt19937_64 rng(c.seed);
    std::tie(p, q) = random_same_fiber_pair(rows, cols, members, max_margin, rng);
    s.outcome.inputs["seed"] = c.seed;
  }
  s.outcome.inputs["members"] = p.size();
  s.outcome.inputs["rows"] = p.margins.row.size();
  s.outcome.inputs["cols"] = p.margins.col.size();
  MoveScript script = connect(p, q);
  const std::string problem = verify_script(p, q, script);
  if (!problem.empty()) throw InternalInvariantViolation("script failed verification: " + problem);
  s.outcome.results["steps"] = script.steps.size();
  s.outcome.results["max_degree"] = script.max_degree();
  s.outcome.results["verified"] = true;
  s.outcome.summary.push_back("connected in " + std::to_string(script.steps.size()) + " steps, max degree " +
                              std::to_string(script.max_degree()) + ", verified");
  s.outcome.artifact = script.to_text();
}

// ---- output ----

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw InvalidInput("cannot write " + path);
  f << text;
}

json make_report(const std::string& command, const Outcome& o, const std::string& error) {
  json r;
  r["schema"] = kReportSchema;
  r["command"] = command;
  r["inputs"] = o.inputs;
  r["results"] = o.results;
  if (o.matrix) r["results"]["matrix"] = matrix_json(*o.matrix);
  r["resources"] = o.resources;
  r["verdict"] = o.verdict;
  if (!error.empty()) r["error"] = error;
  r["exit_code"] = o.code;
  return r;
}

void emit(const std::string& command, const Common& c, const Outcome& o, const std::string& error,
          std::ostream& out, std::ostream& err) {
  const bool as_json = c.format == "json";
  if (!error.empty()) err << "error: " << error << '\n';
  if (o.matrix && !c.out_path.empty()) write_file(c.out_path, matrix_to_string(*o.matrix));
  if (!o.matrix && o.artifact && !c.out_path.empty()) write_file(c.out_path, *o.artifact);
  const json report = make_report(command, o, error);
  if (!c.report_path.empty()) write_file(c.report_path, report.dump(2) + "\n");
  if (as_json) {
    out << report.dump(2) << '\n';
    return;
  }
  if (!error.empty()) return;
  const bool matrix_on_stdout = o.matrix && c.out_path.empty();
  if (matrix_on_stdout) write_matrix(out, *o.matrix);
  std::ostream& text = matrix_on_stdout ? err : out;
  const char* prefix = matrix_on_stdout ? "# " : "";
  for (const auto& line : o.summary) text << prefix << line << '\n';
  if (!o.matrix && o.artifact && c.out_path.empty() && command == "transport-connect") out << *o.artifact;
}

void add_common(CLI::App* app, Common& c) {
  app->add_option("--in", c.in_path, "Read the input matrix from PATH instead of stdin");
  app->add_option("--out", c.out_path, "Write the output matrix or artifact to PATH");
  app->add_option("--report", c.report_path, "Also write the JSON report to PATH");
  app->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  app->add_option("--mode", c.mode, "Certificate mode")->check(CLI::IsMember({"exact", "forcing", "auto"}));
  app->add_option("--cap", c.cap, "Fiber size limit");
  app->add_option("--budget", c.budget, "Graver intermediate vector limit");
  app->add_option("--pair-budget", c.pair_budget, "Graver pair combination limit, 0 for none");
  app->add_option("--seed", c.seed, "Random seed");
  app->add_option("--threads", c.threads, "Worker threads")->check(CLI::PositiveNumber);
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Toric configurations: fibers, Graver and Markov bases, liftings, transportation moves", "toric"};
  app.require_subcommand(1);
  Common c;
  std::function<void(Session&)> action;
  std::string command;

  auto sub = [&](const std::string& name, const std::string& help) {
    auto* s = app.add_subcommand(name, help);
    add_common(s, c);
    return s;
  };

  auto* gen = app.add_subcommand("gen", "Generate a configuration matrix");
  gen->require_subcommand(1);
  int n = 0, gi = 0, gj = 0;
  bool loops = false;
  auto* kc = gen->add_subcommand("k-complete", "Incidence matrix of the complete graph");
  add_common(kc, c);
  kc->add_option("--n", n, "Vertices")->required()->check(CLI::Range(1, 64));
  kc->add_flag("--loops", loops, "Add a loop at every vertex");
  kc->callback([&] {
    command = "gen k-complete";
    action = [&](Session& s) { cmd_gen_complete(s, n, loops); };
  });
  auto* kb = gen->add_subcommand("k-bipartite", "Incidence matrix of the complete bipartite graph");
  add_common(kb, c);
  kb->add_option("--i", gi, "Row vertices")->required()->check(CLI::Range(1, 64));
  kb->add_option("--j", gj, "Column vertices")->required()->check(CLI::Range(1, 64));
  kb->callback([&] {
    command = "gen k-bipartite";
    action = [&](Session& s) { cmd_gen_bipartite(s, gi, gj); };
  });
  auto* ones = gen->add_subcommand("ones", "The 1 x n all-ones matrix");
  add_common(ones, c);
  ones->add_option("--n", n, "Columns")->required()->check(CLI::Range(1, 1024));
  ones->callback([&] {
    command = "gen ones";
    action = [&](Session& s) { cmd_gen_ones(s, n); };
  });

  sub("graver", "Graver basis of the input matrix")->callback([&] {
    command = "graver";
    action = [&](Session& s) { cmd_graver(s, c); };
  });
  sub("graver-complexity", "Graver complexity of the input configuration")->callback([&] {
    command = "graver-complexity";
    action = [&](Session& s) { cmd_graver_complexity(s, c); };
  });

  std::string b_text;
  auto* fib = sub("fiber", "Nonnegative integer points x with Ax = b");
  fib->add_option("--b", b_text, "Right-hand side, comma separated")->required();
  fib->callback([&] {
    command = "fiber";
    action = [&](Session& s) { cmd_fiber(s, c, b_text); };
  });
  auto* fc = sub("fiber-config", "Fiber configuration from fiber rows, or from A with --b");
  fc->add_option("--b", b_text, "Right-hand side, comma separated");
  fc->callback([&] {
    command = "fiber-config";
    action = [&](Session& s) { cmd_fiber_config(s, c, b_text); };
  });

  sub("markov-degree", "Markov degree of the input configuration")->callback([&] {
    command = "markov-degree";
    action = [&](Session& s) { cmd_markov_degree(s, c); };
  });
  std::string strategy = "auto";
  Int max_degree = 0;
  auto* mm = sub("minimal-markov", "Minimal Markov basis and its degree histogram");
  mm->add_option("--strategy", strategy, "Fiber source")->check(CLI::IsMember({"auto", "graver", "sweep"}));
  mm->add_option("--max-degree", max_degree, "Degree limit for the sweep")->check(CLI::NonNegativeNumber);
  mm->callback([&] {
    command = "minimal-markov";
    action = [&](Session& s) { cmd_minimal_markov(s, c, strategy, max_degree); };
  });
  int copies = 0;
  auto* mc = sub("mc-at", "Markov complexity at a fixed number of Lawrence copies");
  mc->add_option("--n", copies, "Copies")->required()->check(CLI::Range(1, 64));
  mc->callback([&] {
    command = "mc-at";
    action = [&](Session& s) { cmd_mc_at(s, c, copies); };
  });

  std::string moves_path;
  auto* cl = sub("certify-lift", "Indispensability certificate for a lifted move");
  cl->add_option("--moves", moves_path, "Slices as a matrix file, one slice per row")->required();
  cl->callback([&] {
    command = "certify-lift";
    action = [&](Session& s) { cmd_certify_lift(s, c, moves_path); };
  });

  std::string from, to;
  int ti = 3, tj = 3, tm = 3;
  Int tmargin = 4;
  auto* tc = sub("transport-connect", "Degree-3 script between two table multisets in one fiber");
  tc->add_option("--from", from, "Starting multiset file");
  tc->add_option("--to", to, "Target multiset file");
  tc->add_option("--i", ti, "Rows for a random pair")->check(CLI::Range(1, 16));
  tc->add_option("--j", tj, "Columns for a random pair")->check(CLI::Range(1, 16));
  tc->add_option("--members", tm, "Members for a random pair")->check(CLI::Range(1, 64));
  tc->add_option("--max-margin", tmargin, "Margin limit for a random pair")->check(CLI::Range(1, 64));
  tc->callback([&] {
    command = "transport-connect";
    action = [&](Session& s) { cmd_transport(s, c, from, to, ti, tj, tm, tmargin); };
  });

  int zi = 0, zj = 0;
  bool certify = false;
  auto* zs = sub("zstar", "Indispensable lifted move for K_{I,J}; reads the incidence matrix without --i/--j");
  zs->add_option("--i", zi, "Rows")->check(CLI::Range(3, 64));
  zs->add_option("--j", zj, "Columns")->check(CLI::Range(3, 64));
  zs->add_flag("--certify", certify, "Certify indispensability");
  zs->callback([&] {
    command = "zstar";
    action = [&](Session& s) { cmd_zstar(s, c, zi, zj, certify); };
  });
  sub("remark-5x5", "Certify the 32-slice move on 5 x 5 tables")->callback([&] {
    command = "remark-5x5";
    action = [&](Session& s) { cmd_remark(s, c); };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kInvalidInput;
  }
  if (!action) {
    err << "error: no command given\n";
    return kInvalidInput;
  }

  Session session(in, c);
  std::string error;
  try {
    action(session);
  } catch (const ResourceBudgetExceeded& e) {
    session.outcome.code = kBudgetExceeded;
    session.outcome.verdict = "budget_exceeded";
    session.outcome.results["best_bound"] = e.best_bound;
    error = e.what();
    if (e.best_bound > 0) error += " (certified lower bound " + std::to_string(e.best_bound) + ")";
  } catch (const FiberTooLarge& e) {
    session.outcome.code = kBudgetExceeded;
    session.outcome.verdict = "budget_exceeded";
    error = e.what();
  } catch (const OverflowDetected& e) {
    session.outcome.code = kBudgetExceeded;
    session.outcome.verdict = "overflow";
    error = e.what();
  } catch (const InternalInvariantViolation& e) {
    session.outcome.code = kInternal;
    session.outcome.verdict = "internal_error";
    error = e.what();
  } catch (const Error& e) {
    session.outcome.code = kInvalidInput;
    session.outcome.verdict = "invalid_input";
    error = e.what();
  } catch (const std::exception& e) {
    session.outcome.code = kInternal;
    session.outcome.verdict = "internal_error";
    error = e.what();
  }
  if (!error.empty()) {
    session.outcome.matrix.reset();
    session.outcome.artifact.reset();
  }
  try {
    emit(command, c, session.outcome, error, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInvalidInput;
  }
  return session.outcome.code;
}

}  // namespace toric::cli
