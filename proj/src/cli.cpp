#include "centering/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "centering/bcap.hpp"
#include "centering/constants.hpp"
#include "centering/errors.hpp"
#include "centering/interval.hpp"
#include "centering/io.hpp"
#include "centering/mixture.hpp"
#include "centering/opnorm.hpp"
#include "centering/verify.hpp"

namespace centering::cli {
namespace {

using io::Json;
using io::num;

// usage problems: missing flags, bad values for enumerations
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Doc {
  Json json = Json::object();
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  bool converged = true;
  bool failed = false;  // verify only
};

Exponent need_p(const RunConfig& cfg) {
  if (cfg.p.empty()) throw UsageError(cfg.command + " needs --p");
  return Exponent::parse(cfg.p);
}

template <typename T>
T need(const std::optional<T>& v, const char* flag, const RunConfig& cfg) {
  if (!v) throw UsageError(cfg.command + " needs " + flag);
  return *v;
}

const std::string& need_path(const std::string& v, const char* flag, const RunConfig& cfg) {
  if (v.empty()) throw UsageError(cfg.command + " needs " + flag);
  return v;
}

OptimizerOptions options(const RunConfig& cfg) {
  OptimizerOptions o;
  o.starts = cfg.starts;
  o.max_iters = cfg.max_iters;
  o.seed = cfg.seed;
  o.workers = cfg.workers;
  o.validate();
  return o;
}

std::string cell(const Json& j) {
  if (j.is_null()) return "";
  if (j.is_string()) return j.get<std::string>();
  if (j.is_boolean()) return j.get<bool>() ? "true" : "false";
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  if (j.is_number()) return io::fmt12(j.get<double>());
  return j.dump();
}

// one CSV row from the scalar fields of an object
void add_row(Doc& d, const Json& obj) {
  if (d.header.empty()) {
    for (const auto& [k, v] : obj.items()) d.header.push_back(k);
  }
  std::vector<std::string> r;
  for (const auto& k : d.header) r.push_back(obj.contains(k) ? cell(obj.at(k)) : "");
  d.rows.push_back(std::move(r));
}

Json p_json(Exponent p) { return io::exponent_json(p); }

Doc cmd_cp(const RunConfig& cfg) {
  const Exponent p = need_p(cfg);
  const CpMaximum m = max_cp(p);
  Doc d;
  Json row;
  row["p"] = p_json(p);
  row["value"] = num(m.value);
  row["alpha"] = m.argmax_alpha ? num(*m.argmax_alpha) : Json(nullptr);
  row["riesz_thorin_bound"] = num(riesz_thorin_bound(p));
  if (cfg.alpha) {
    row["input_alpha"] = num(*cfg.alpha);
    row["cp_alpha"] = num(cp_alpha(p, *cfg.alpha));
  }
  add_row(d, row);
  d.json = row;
  return d;
}

Doc cmd_cp_table(const RunConfig& cfg) {
  std::vector<Exponent> ps;
  if (!cfg.p.empty()) {
    std::stringstream ss(cfg.p);
    for (std::string tok; std::getline(ss, tok, ',');) ps.push_back(Exponent::parse(tok));
  } else {
    for (double v : {1.0, 1.1, 1.25, 1.5, 2.0, 3.0, 4.0, 8.0, 16.0}) ps.push_back(Exponent::finite(v));
    ps.push_back(Exponent::infinity());
  }
  Doc d;
  Json rows = Json::array();
  for (const Exponent& p : ps) {
    const CpMaximum m = max_cp(p);
    Json row;
    row["p"] = p_json(p);
    row["value"] = num(m.value);
    row["alpha"] = m.argmax_alpha ? num(*m.argmax_alpha) : Json(nullptr);
    row["dual_value"] = num(max_cp(p.dual()).value);
    row["riesz_thorin_bound"] = num(riesz_thorin_bound(p));
    if (cfg.n) {
      row["n"] = *cfg.n;
      if (p.is_interior()) {
        const UniformConstant u = uniform_n_constant(p, *cfg.n);
        row["uniform_n"] = num(u.value);
        row["k1"] = u.k1;
        row["k2"] = u.k2;
      } else {
        row["uniform_n"] = nullptr;
        row["k1"] = nullptr;
        row["k2"] = nullptr;
      }
    }
    add_row(d, row);
    rows.push_back(std::move(row));
  }
  d.json["rows"] = std::move(rows);
  return d;
}

Partition load_partition(const RunConfig& cfg, std::size_t atoms) {
  if (cfg.partition == "trivial") return Partition::trivial(atoms);
  if (cfg.partition == "singletons") return Partition::singletons(atoms);
  return io::partition_from_json(io::read_json_file(cfg.partition), atoms);
}

Doc report_doc(const OptReport& r, Json head) {
  Doc d;
  d.converged = r.converged;
  Json row = head;
  row["value"] = num(r.value);
  row["converged"] = r.converged;
  row["starts_used"] = r.starts_used;
  row["cross_check"] = r.cross_check ? num(*r.cross_check) : Json(nullptr);
  add_row(d, row);
  head["value"] = num(r.value);
  head["report"] = io::to_json(r);
  d.json = std::move(head);
  return d;
}

Doc cmd_opnorm(const RunConfig& cfg) {
  const Exponent p = need_p(cfg);
  const OptimizerOptions o = options(cfg);
  Json head;
  head["p"] = p_json(p);
  if (!cfg.matrix.empty()) {
    const Matrix a = io::matrix_from_json(io::read_json_file(cfg.matrix));
    const FiniteProbSpace sp = cfg.space.empty()
                                   ? FiniteProbSpace::uniform(static_cast<std::size_t>(a.rows()))
                                   : io::space_from_json(io::read_json_file(cfg.space));
    head["mode"] = "operator_norm";
    return report_doc(operator_norm(a, sp, p, o), head);
  }
  const FiniteProbSpace sp = io::space_from_json(io::read_json_file(need_path(cfg.space, "--space or --matrix", cfg)));
  head["mode"] = "cp_of_space";
  head["partition"] = cfg.partition == "trivial" || cfg.partition == "singletons" ? cfg.partition : "file";
  return report_doc(cp_of_space(sp, load_partition(cfg, sp.size()), p, o), head);
}

Doc cmd_oracle(const RunConfig& cfg) {
  const Exponent p = need_p(cfg);
  const FiniteProbSpace sp = io::space_from_json(io::read_json_file(need_path(cfg.space, "--space", cfg)));
  const TwoValueBound b = two_value_oracle(sp, p);
  // the oracle is a lower bound; equality with c_p is only conjectured
  const OptReport full = cp_of_space(sp, Partition::trivial(sp.size()), p, options(cfg));
  Doc d;
  d.converged = full.converged;
  d.json["p"] = p_json(p);
  d.json["value"] = num(b.value);
  d.json["subset_mass"] = num(b.subset_mass);
  d.json["cp_of_space"] = num(full.value);
  d.json["gap"] = num(full.value - b.value);
  d.json["gap_flagged"] = std::abs(full.value - b.value) > 1e-6;
  add_row(d, d.json);
  return d;
}

Doc cmd_mixture(const RunConfig& cfg) {
  Doc d;
  if (!cfg.dist.empty()) {
    const auto m = decompose_zero_mean(io::distribution_from_json(io::read_json_file(cfg.dist)));
    d.json = io::to_json(m);
    for (const auto& c : m.components) {
      Json row;
      row["weight"] = num(c.weight);
      row["value1"] = num(c.dist.value1);
      row["mass1"] = num(c.dist.mass1);
      row["value2"] = num(c.dist.value2);
      row["mass2"] = num(c.dist.mass2);
      add_row(d, row);
    }
    if (d.header.empty()) d.header = {"weight", "value1", "mass1", "value2", "mass2"};
    return d;
  }
  const Exponent p = need_p(cfg);
  const RandVar xi = io::randvar_from_json(io::read_json_file(need_path(cfg.xi, "--dist or --xi", cfg)));
  const FiniteProbSpace sp = io::space_from_json(io::read_json_file(need_path(cfg.space, "--space", cfg)));
  const auto r = verify_ratio_via_mixture(xi, sp, p);
  Json row;
  row["p"] = p_json(p);
  row["ratio"] = num(r.ratio);
  row["component_max"] = num(r.component_max);
  row["max_cp"] = num(max_cp(p).value);
  add_row(d, row);
  Json ratios = Json::array();
  for (double v : r.component_ratios) ratios.push_back(num(v));
  row["component_ratios"] = std::move(ratios);
  row["mixture"] = io::to_json(r.mixture);
  d.json = std::move(row);
  return d;
}

Doc cmd_gbeta(const RunConfig& cfg) {
  const Exponent p = need_p(cfg);
  const OptimizerOptions o = options(cfg);
  Doc d;
  if (!cfg.beta) {
    // sweep beta = k / cells
    const int cells = need(cfg.cells, "--beta or --cells", cfg);
    Json rows = Json::array();
    for (int k = 1; k < cells; ++k) {
      const BetaAlgebra b(static_cast<double>(k) / cells);
      const auto r = discretize_check(b, p, cells, o);
      d.converged = d.converged && r.converged;
      Json row;
      row["beta"] = num(b.beta());
      row["analytic"] = num(r.analytic_norm);
      row["numeric"] = num(r.numeric_norm);
      add_row(d, row);
      rows.push_back(std::move(row));
    }
    d.json["p"] = p_json(p);
    d.json["cells"] = cells;
    d.json["rows"] = std::move(rows);
    return d;
  }
  const BetaAlgebra b(*cfg.beta);
  Json row;
  row["p"] = p_json(p);
  row["beta"] = num(b.beta());
  row["norm"] = num(gbeta_norm(b, p));
  Json extra;
  if (p.is_interior()) {
    const auto e = gbeta_extremal(b, p);
    row["gamma_star"] = num(e.gamma_star);
    row["kappa"] = num(e.kappa);
    row["c1"] = num(e.c1);
    row["c2"] = num(e.c2);
    row["ratio"] = num(e.ratio);
  }
  if (cfg.cells) {
    const auto r = discretize_check(b, p, *cfg.cells, o);
    d.converged = r.converged;
    row["cells"] = *cfg.cells;
    row["numeric"] = num(r.numeric_norm);
    row["pieces"] = r.pieces;
  }
  add_row(d, row);
  d.json = std::move(row);
  return d;
}

Doc cmd_nu(const RunConfig& cfg) {
  const Exponent p = need_p(cfg);
  const OptimizerOptions o = options(cfg);
  const Complex gamma(cfg.gamma_re, cfg.gamma_im);
  std::vector<int> ns;
  if (cfg.n) {
    ns.push_back(*cfg.n);
  } else {
    ns = {2, 4, 8, 16, 32, 64};
  }
  Doc d;
  Json rows = Json::array();
  for (int n : ns) {
    Json row;
    row["n"] = n;
    row["gamma_re"] = num(gamma.real());
    row["gamma_im"] = num(gamma.imag());
    row["nu"] = num(nu_estimate(gamma, p, n, o));
    const bool oracle = gamma == Complex(1.0) && p.is_interior() && n <= 20;
    row["two_value_oracle"] =
        oracle ? num(two_value_oracle(FiniteProbSpace::uniform(static_cast<std::size_t>(n)), p).value)
               : Json(nullptr);
    add_row(d, row);
    rows.push_back(std::move(row));
  }
  d.json["p"] = p_json(p);
  d.json["rows"] = std::move(rows);
  return d;
}

Doc cmd_bcap(const RunConfig& cfg) {
  const Exponent p = need_p(cfg);
  const double eps = need(cfg.eps, "--eps", cfg);
  const auto fs = io::functions_from_json(io::read_json_file(need_path(cfg.functions, "--functions", cfg)));
  const auto cert = build_bcap_approximant(fs, p, eps, options(cfg));
  Doc d;
  d.json = io::to_json(cert);
  d.json["p"] = p_json(p);
  d.json["max_cp"] = num(max_cp(p).value);
  for (std::size_t i = 0; i < cert.per_function_error.size(); ++i) {
    Json row;
    row["function"] = static_cast<int>(i);
    row["error"] = num(cert.per_function_error[i]);
    row["epsilon"] = num(eps);
    row["blocks"] = static_cast<int>(cert.partition.block_count());
    row["norm_bound"] = num(cert.norm_bound);
    add_row(d, row);
  }
  return d;
}

Doc cmd_gamma_exp(const RunConfig& cfg) {
  const Exponent p = need_p(cfg);
  const OptimizerOptions o = options(cfg);
  const Complex gamma(cfg.gamma_re, cfg.gamma_im);
  Doc d;
  if (cfg.blocks) {
    Json rows = Json::array();
    for (const auto& g : gamma_refinement_sweep(*cfg.blocks, gamma, p, o)) {
      d.converged = d.converged && g.converged;
      Json row;
      row["n"] = g.n;
      row["lhs_norm"] = num(g.lhs_norm);
      row["lower"] = num(g.lower);
      row["nu"] = num(g.nu);
      row["slack"] = num(g.slack);
      add_row(d, row);
      rows.push_back(io::to_json(g));
    }
    d.json["p"] = p_json(p);
    d.json["blocks"] = *cfg.blocks;
    d.json["rows"] = std::move(rows);
    return d;
  }
  const Matrix t = io::matrix_from_json(io::read_json_file(need_path(cfg.matrix, "--matrix or --blocks", cfg)));
  const int n = cfg.n.value_or(static_cast<int>(t.rows()));
  const auto g = gamma_inequality_experiment(t, gamma, p, n, o);
  const auto e = eigen_lower_bound_check(t, p, n, o);
  d.converged = g.converged && e.converged;
  Json row;
  row["n"] = g.n;
  row["lhs_norm"] = num(g.lhs_norm);
  row["lower"] = num(g.lower);
  row["nu"] = num(g.nu);
  row["slack"] = num(g.slack);
  add_row(d, row);
  d.json["p"] = p_json(p);
  d.json["experiment"] = io::to_json(g);
  d.json["eigen_check"] = io::to_json(e);
  return d;
}

Doc cmd_verify(const RunConfig& cfg) {
  const VerifyOutcome v = run_verify(cfg.suite, cfg.seed, cfg.starts, cfg.workers);
  Doc d;
  d.failed = v.failed > 0;
  d.header = {"status", "check", "detail"};
  Json lines = Json::array();
  std::stringstream ss(v.report);
  for (std::string line; std::getline(ss, line);) {
    lines.push_back(line);
    if (line.rfind("summary", 0) == 0) continue;
    const auto a = line.find(' ');
    const auto b = line.find(' ', a + 1);
    d.rows.push_back({line.substr(0, a), line.substr(a + 1, b == std::string::npos ? b : b - a - 1),
                      b == std::string::npos ? "" : line.substr(b + 1)});
  }
  d.json["suite"] = cfg.suite;
  d.json["passed"] = v.passed;
  d.json["failed"] = v.failed;
  d.json["report"] = std::move(lines);
  return d;
}

Doc dispatch(const RunConfig& cfg) {
  const std::string& c = cfg.command;
  if (c == "cp") return cmd_cp(cfg);
  if (c == "cp-table") return cmd_cp_table(cfg);
  if (c == "opnorm") return cmd_opnorm(cfg);
  if (c == "oracle") return cmd_oracle(cfg);
  if (c == "mixture") return cmd_mixture(cfg);
  if (c == "gbeta") return cmd_gbeta(cfg);
  if (c == "nu") return cmd_nu(cfg);
  if (c == "bcap") return cmd_bcap(cfg);
  if (c == "gamma-exp") return cmd_gamma_exp(cfg);
  if (c == "verify") return cmd_verify(cfg);
  throw UsageError("unknown command '" + c + "'");
}

std::string render(const RunConfig& cfg, Doc& d) {
  if (cfg.format == "csv") {
    io::CsvWriter w;
    w.row(d.header);
    for (const auto& r : d.rows) w.row(r);
    return w.str();
  }
  Json out;
  out["command"] = cfg.command;
  for (auto& [k, v] : d.json.items()) out[k] = v;
  out["converged"] = d.converged;
  const OptimizerOptions defaults;
  out["meta"] = {{"seed", cfg.seed},
                 {"starts", cfg.starts},
                 {"max_iters", cfg.max_iters},
                 {"tol", num(defaults.tol)},
                 {"format", cfg.format},
                 {"precision", "12 significant digits"}};
  return out.dump(2) + "\n";
}

}  // namespace

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.format != "json" && cfg.format != "csv") throw UsageError("--format must be json or csv");
    Doc d = dispatch(cfg);
    const std::string text = render(cfg, d);
    if (cfg.out_path.empty()) {
      out << text;
      out.flush();
    } else {
      std::ofstream f(cfg.out_path, std::ios::binary);
      f << text;
      if (!f) throw SchemaError("cannot write " + cfg.out_path);
    }
    if (d.failed) {
      err << "verify: some checks failed\n";
      return kNotConverged;
    }
    if (!d.converged) {
      err << cfg.command << ": optimizer did not converge everywhere\n";
      return kNotConverged;
    }
    return kOk;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return kDomain;
  } catch (const SolverError& e) {
    err << "solver error: " << e.what() << "\n";
    return kNotConverged;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kIoOrSchema;
  }
}

int main(int argc, char** argv) {
  RunConfig cfg;
  CLI::App app{"centering_lab: sharp constants for conditionally centered moments"};
  app.require_subcommand(1);
  const std::pair<const char*, const char*> commands[] = {
      {"cp", "two-point constant C_p(alpha), or max over alpha"},
      {"cp-table", "C_p table over a p list (and n-point spaces with --n)"},
      {"opnorm", "||I - E^G||_p for a space/partition, or ||A||_p for --matrix"},
      {"oracle", "two-point oracle vs the optimizer"},
      {"mixture", "two-point mixture of a zero-mean law, or ratio check for --xi"},
      {"gbeta", "G_beta extremal data; --cells sweep without --beta"},
      {"nu", "nu(gamma, p, n) estimate or sweep"},
      {"bcap", "block conditional approximation certificate"},
      {"gamma-exp", "gamma inequality experiment / eigenvalue check"},
      {"verify", "randomized self-check suites"}};
  for (const auto& [name, help] : commands) {
    CLI::App* s = app.add_subcommand(name, help);
    s->add_option("--p", cfg.p, "exponent p in [1, inf]; 'inf' allowed (cp-table: comma list)");
    s->add_option("--alpha", cfg.alpha, "two-point mass alpha");
    s->add_option("--beta", cfg.beta, "G_beta parameter");
    s->add_option("--gamma-re", cfg.gamma_re, "real part of gamma")->capture_default_str();
    s->add_option("--gamma-im", cfg.gamma_im, "imaginary part of gamma")->capture_default_str();
    s->add_option("--n", cfg.n, "grid resolution / atom count");
    s->add_option("--eps", cfg.eps, "BCAP tolerance");
    s->add_option("--cells", cfg.cells, "grid cells");
    s->add_option("--blocks", cfg.blocks, "E^G blocks for the gamma refinement sweep");
    s->add_option("--starts", cfg.starts, "random optimizer starts")->capture_default_str();
    s->add_option("--max-iters", cfg.max_iters, "optimizer iteration cap per start")->capture_default_str();
    s->add_option("--seed", cfg.seed, "seed")->capture_default_str();
    s->add_option("--format", cfg.format, "json or csv")->capture_default_str();
    s->add_option("--out", cfg.out_path, "output file (default stdout)");
    s->add_option("--space", cfg.space, "space JSON {\"weights\":[...]}");
    s->add_option("--partition", cfg.partition, "trivial | singletons | partition JSON")
        ->capture_default_str();
    s->add_option("--matrix", cfg.matrix, "matrix JSON {\"rows\":[[...]]}");
    s->add_option("--dist", cfg.dist, "distribution JSON {\"atoms\":[[v,m],...]}");
    s->add_option("--xi", cfg.xi, "random variable JSON {\"values\":[...]}");
    s->add_option("--functions", cfg.functions, "grid functions JSON");
    s->add_option("--suite", cfg.suite, "verify suite")->capture_default_str();
    s->callback([&cfg, s] { cfg.command = s->get_name(); });
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kIoOrSchema;
  }

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  cfg.workers = hw;
  if (const char* env = std::getenv("CENTERING_LAB_THREADS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end == env || *end != '\0' || v == 0) {
      std::cerr << "CENTERING_LAB_THREADS must be a positive integer\n";
      return kIoOrSchema;
    }
    cfg.workers = static_cast<unsigned>(std::min<unsigned long>(v, hw));
  }
  return run(cfg, std::cout, std::cerr);
}

}  // namespace centering::cli
