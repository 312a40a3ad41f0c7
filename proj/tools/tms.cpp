#include <chrono>
#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tms/errors.hpp"
#include "tms/instance.hpp"
#include "tms/oracle.hpp"
#include "tms/reductions.hpp"
#include "tms/solver_cluster.hpp"
#include "tms/solver_fen.hpp"
#include "tms/solver_nd.hpp"
#include "tms/solver_vc.hpp"

namespace {

using namespace tms;

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitUsage = 2;
constexpr int kExitCap = 3;
constexpr int kExitVerify = 4;
constexpr int kExitInternal = 70;

std::string read_text(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path);
  if (!in) throw InvalidInstance("cannot open input file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw InvalidInstance("cannot open output file: " + path);
  out << text;
}

// Certificates on the command line use the same 0-based vertex ids as the
// solver JSON output (instance files stay 1-based).
std::vector<int> parse_id_list(const std::string& text) {
  std::vector<int> out;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    std::istringstream item(token);
    int v;
    while (item >> v) out.push_back(v);
  }
  return out;
}

Rational parse_alpha(const std::string& text) {
  const auto slash = text.find('/');
  if (slash == std::string::npos) {
    long long n = std::stoll(text);
    return Rational(n, 1);
  }
  long long p = std::stoll(text.substr(0, slash));
  long long q = std::stoll(text.substr(slash + 1));
  return Rational(p, q);
}

// Fill `into` under a prefixed key space so solver stats stay untouched.
void merge_stats(SolveResult& r, const std::map<std::string, long long>& extra) {
  for (const auto& [key, val] : extra) r.stats[key] = val;
}

SolveResult solve_with(const std::string& algo, const TmsInstance& inst, const SolveOptions& opts) {
  if (algo == "bruteforce") return brute_force_solve(inst, opts.brute_vertex_cap, opts.jobs);
  if (algo == "cluster") return solve_cluster(inst, std::nullopt, opts);
  if (algo == "nd") return solve_nd(inst, NdMode::Claim, opts);
  if (algo == "nd-kernel") return solve_nd(inst, NdMode::Kernel, opts);
  if (algo == "vc") return solve_vc(inst, std::nullopt, opts);
  if (algo == "fen") return solve_fen(inst, std::nullopt, opts);
  if (algo == "hitting-dp") {
    ElementSet universe(static_cast<size_t>(inst.graph.vertex_count()));
    for (int v = 0; v < inst.graph.vertex_count(); ++v) universe[static_cast<size_t>(v)] = v;
    SolveResult r = hs_solve_dp(HittingSetInstance(universe, pair_monitor_sets(inst), inst.k), opts.dp_family_cap);
    r.algorithm = "hitting-dp";
    return r;
  }
  throw InvalidInstance("unknown algorithm: " + algo);
}

// Parameter survey used by `params` and by `--algo auto`. A value of -1 means
// the parameter was not computed (cap exceeded).
struct ParamSurvey {
  long long cluster_q = -1;
  long long nd_t = -1;
  long long cover_t = -1;
  long long fen_t = -1;
};

ParamSurvey survey_parameters(const Graph& g, const SolveOptions& opts) {
  ParamSurvey s;
  try {
    s.cluster_q = compute_parameter(g, ParameterKind::ClusterDeletion, opts.param_branch_cap).value;
  } catch (const CapExceeded&) {
  }
  s.nd_t = compute_parameter(g, ParameterKind::NdPartition).value;
  try {
    s.cover_t = compute_parameter(g, ParameterKind::VertexCover,
                                  std::min(opts.param_branch_cap, opts.vc_cover_cap))
                    .value;
  } catch (const CapExceeded&) {
  }
  s.fen_t = compute_parameter(g, ParameterKind::FeedbackEdge).value;
  return s;
}

// Picks the specialized solver with the smallest structural parameter that
// its caps allow, falling back to the reference solvers. The survey values
// land in the result stats so the choice is auditable.
SolveResult solve_auto(const TmsInstance& inst, const SolveOptions& opts) {
  std::map<std::string, long long> audit;
  std::string choice;

  if (inst.alpha.is_zero()) {
    ParamSurvey s = survey_parameters(inst.graph, opts);
    audit["auto_cluster_q"] = s.cluster_q;
    audit["auto_nd_t"] = s.nd_t;
    audit["auto_cover_t"] = s.cover_t;
    audit["auto_fen_t"] = s.fen_t;

    // fen enumerates up to 5 bits per feedback edge; 40 bits is its own cap.
    const long long fen_gate = std::min(8, opts.param_branch_cap);
    long long best = -1;
    auto consider = [&](const char* name, long long value, long long gate) {
      if (value < 0 || value > gate) return;
      if (best < 0 || value < best) {
        best = value;
        choice = name;
      }
    };
    consider("cluster", s.cluster_q, opts.param_branch_cap);
    consider("nd", s.nd_t, opts.param_branch_cap);
    consider("vc", s.cover_t, opts.vc_cover_cap);
    consider("fen", s.fen_t, fen_gate);
  }

  if (choice.empty()) {
    if (inst.graph.vertex_count() <= opts.brute_vertex_cap)
      choice = "bruteforce";
    else if (static_cast<long long>(inst.terminals.size()) <= opts.dp_family_cap)
      choice = "hitting-dp";
    else
      throw CapExceeded("auto: no algorithm fits the configured caps");
  }

  SolveResult r = solve_with(choice, inst, opts);
  merge_stats(r, audit);
  return r;
}

struct SolveArgs {
  std::string input;
  std::string output;
  std::string algo = "auto";
  bool verify = false;
  long long timeout_ms = 0;
  SolveOptions opts;
};

int run_solve(const SolveArgs& a) {
  TmsInstance inst = parse_instance(read_text(a.input));

  auto solve_once = [&]() {
    return a.algo == "auto" ? solve_auto(inst, a.opts) : solve_with(a.algo, inst, a.opts);
  };

  SolveResult result;
  if (a.timeout_ms > 0) {
    std::promise<SolveResult> promise;
    std::future<SolveResult> done = promise.get_future();
    std::thread worker([&solve_once](std::promise<SolveResult> p) {
      try {
        p.set_value(solve_once());
      } catch (...) {
        p.set_exception(std::current_exception());
      }
    }, std::move(promise));
    if (done.wait_for(std::chrono::milliseconds(a.timeout_ms)) == std::future_status::timeout) {
      std::cerr << "timed out after " << a.timeout_ms << " ms\n";
      std::_Exit(kExitCap);  // worker cannot be joined; exit without teardown
    }
    worker.join();
    result = done.get();
  } else {
    result = solve_once();
  }

  if (result.yes && !verify_certificate(inst, *result.certificate)) {
    std::cerr << "solver returned YES but the certificate does not verify\n";
    return kExitInternal;
  }
  if (a.verify) {
    // Redundant by construction; kept as the advertised release gate.
    if (result.yes && !verify_certificate(inst, *result.certificate)) return kExitVerify;
  }

  const std::string json = result.to_json();
  std::cout << json << "\n";
  if (!a.output.empty()) write_text(a.output, json + "\n");
  return result.yes ? kExitYes : kExitNo;
}

int run_params(const std::string& input, const SolveOptions& opts) {
  TmsInstance inst = parse_instance(read_text(input));
  ParamSurvey s = survey_parameters(inst.graph, opts);
  nlohmann::json j;
  j["n"] = inst.graph.vertex_count();
  j["m"] = inst.graph.edge_count();
  j["terminals"] = inst.terminals.size();
  j["k"] = inst.k;
  auto put = [&](const char* key, long long v) {
    if (v < 0)
      j[key] = nullptr;
    else
      j[key] = v;
  };
  put("cluster_deletion", s.cluster_q);
  put("nd_classes", s.nd_t);
  put("vertex_cover", s.cover_t);
  put("feedback_edges", s.fen_t);
  std::cout << j.dump() << "\n";
  return kExitYes;
}

int run_verify(const std::string& input, const std::string& cert_text) {
  TmsInstance inst = parse_instance(read_text(input));
  std::vector<int> cert = parse_id_list(cert_text);
  if (verify_certificate(inst, cert)) {
    std::cout << "OK\n";
    return kExitYes;
  }
  std::cout << "INVALID\n";
  return kExitVerify;
}

// ---- bench ----------------------------------------------------------------

struct BenchRow {
  std::string name;
  int instances = 0;
  int mismatches = 0;
  long long millis = 0;
};

// Runs `solver` against the reference oracle over seeded random instances.
// `accept` may reject an instance (e.g. parameter out of the solver's range);
// seeds advance until `want` instances ran or the seed budget is exhausted.
template <typename Gen, typename Accept, typename Solver>
BenchRow bench_row(const std::string& name, int want, Gen gen, Accept accept, Solver solver) {
  BenchRow row;
  row.name = name;
  const auto start = std::chrono::steady_clock::now();
  for (std::uint64_t seed = 0; row.instances < want && seed < 200ULL * static_cast<std::uint64_t>(want); ++seed) {
    std::optional<TmsInstance> inst = gen(seed);
    if (!inst || !accept(*inst)) continue;
    ++row.instances;
    SolveResult expected = brute_force_solve(*inst, 128);
    SolveResult got = solver(*inst);
    const bool ok = got.yes == expected.yes &&
                    (!got.yes || verify_certificate(*inst, *got.certificate));
    if (!ok) ++row.mismatches;
  }
  row.millis = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  return row;
}

int run_bench(int want, const SolveOptions& opts) {
  std::vector<BenchRow> rows;

  auto random_instance = [](std::uint64_t seed, int n_lo, int n_hi, double prob, Weight w_max,
                            int max_pairs, long long k_max) -> TmsInstance {
    RandomSpec spec;
    spec.n = n_lo + static_cast<int>(seed % static_cast<std::uint64_t>(n_hi - n_lo + 1));
    spec.edge_prob = prob;
    spec.num_terminals = static_cast<int>((seed / 7) % static_cast<std::uint64_t>(max_pairs + 1));
    spec.k = static_cast<long long>((seed / 3) % static_cast<std::uint64_t>(k_max + 1));
    spec.weight_max = w_max;
    spec.seed = seed * 0x9E3779B97F4A7C15ULL + 1;
    return gen_random(spec);
  };

  auto param_at_most = [](const Graph& g, ParameterKind kind, int cap) {
    try {
      return compute_parameter(g, kind, cap).value <= cap;
    } catch (const CapExceeded&) {
      return false;
    }
  };

  rows.push_back(bench_row(
      "cluster", want,
      [&](std::uint64_t s) { return std::optional<TmsInstance>(random_instance(s, 4, 9, 0.5, 1, 6, 3)); },
      [&](const TmsInstance& i) { return param_at_most(i.graph, ParameterKind::ClusterDeletion, 4); },
      [&](const TmsInstance& i) { return solve_cluster(i, std::nullopt, opts); }));

  rows.push_back(bench_row(
      "nd", want,
      [&](std::uint64_t s) { return std::optional<TmsInstance>(random_instance(s, 4, 9, 0.5, 1, 6, 3)); },
      [](const TmsInstance&) { return true; },
      [&](const TmsInstance& i) { return solve_nd(i, NdMode::Claim, opts); }));

  rows.push_back(bench_row(
      "nd-kernel", want,
      [&](std::uint64_t s) { return std::optional<TmsInstance>(random_instance(s, 4, 9, 0.5, 1, 6, 3)); },
      [](const TmsInstance&) { return true; },
      [&](const TmsInstance& i) { return solve_nd(i, NdMode::Kernel, opts); }));

  rows.push_back(bench_row(
      "vc", want,
      [&](std::uint64_t s) { return std::optional<TmsInstance>(random_instance(s, 4, 7, 0.35, 3, 6, 3)); },
      [&](const TmsInstance& i) { return param_at_most(i.graph, ParameterKind::VertexCover, opts.vc_cover_cap); },
      [&](const TmsInstance& i) { return solve_vc(i, std::nullopt, opts); }));

  rows.push_back(bench_row(
      "fen", want,
      [&](std::uint64_t s) { return std::optional<TmsInstance>(random_instance(s, 4, 9, 0.25, 1, 6, 3)); },
      [](const TmsInstance& i) {
        return i.graph.edge_count() - i.graph.vertex_count() + 1 <= 4 && i.graph.unit_weights();
      },
      [&](const TmsInstance& i) { return solve_fen(i, std::nullopt, opts); }));

  rows.push_back(bench_row(
      "hitting-dp", want,
      [&](std::uint64_t s) {
        TmsInstance inst = random_instance(s, 4, 9, 0.5, 2, 6, 3);
        if (s % 3 == 1) inst.alpha = Rational(1, 4);
        if (s % 3 == 2) inst.alpha = Rational(1, 2);
        return std::optional<TmsInstance>(std::move(inst));
      },
      [](const TmsInstance&) { return true; },
      [&](const TmsInstance& i) { return solve_with("hitting-dp", i, opts); }));

  // Gadget rows check source-problem oracle vs generated-instance oracle.
  {
    BenchRow row;
    row.name = "rbds-gadget";
    const auto start = std::chrono::steady_clock::now();
    for (std::uint64_t seed = 0; row.instances < want; ++seed) {
      RbdsInstance src = gen_random_rbds(1 + static_cast<int>(seed % 3), 1 + static_cast<int>((seed / 3) % 3),
                                         0.5, static_cast<long long>(seed % 3), seed * 31 + 7);
      ++row.instances;
      const bool src_yes = rbds_brute_force(src).has_value();
      RbdsReduction red = gen_from_rbds(src);
      const bool gadget_yes = red.trivially_no ? false : brute_force_solve(*red.instance, 128).yes;
      if (src_yes != gadget_yes) ++row.mismatches;
    }
    row.millis = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    rows.push_back(row);
  }
  {
    BenchRow row;
    row.name = "mcis-gadget";
    const int gadget_want = std::max(4, want / 3);
    const auto start = std::chrono::steady_clock::now();
    for (std::uint64_t seed = 0; row.instances < gadget_want; ++seed) {
      McisInstance src = gen_random_mcis(2, 3, 0.4, seed * 17 + 3);
      Rational alpha = (seed % 2 == 0) ? Rational(1, 2) : Rational(1, 4);
      ++row.instances;
      const bool src_yes = mcis_brute_force(src).has_value();
      McisReduction red = gen_from_mcis(src, alpha);
      const bool gadget_yes = brute_force_solve(red.instance, 128).yes;
      if (src_yes != gadget_yes) ++row.mismatches;
    }
    row.millis = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    rows.push_back(row);
  }

  bool all_ok = true;
  std::cout << "name          instances  mismatches  millis  status\n";
  for (const BenchRow& row : rows) {
    const bool ok = row.mismatches == 0 && row.instances > 0;
    all_ok = all_ok && ok;
    std::cout << row.name;
    for (size_t i = row.name.size(); i < 14; ++i) std::cout << ' ';
    std::string inst_s = std::to_string(row.instances);
    std::string mis_s = std::to_string(row.mismatches);
    std::string ms_s = std::to_string(row.millis);
    std::cout << inst_s;
    for (size_t i = inst_s.size(); i < 11; ++i) std::cout << ' ';
    std::cout << mis_s;
    for (size_t i = mis_s.size(); i < 12; ++i) std::cout << ' ';
    std::cout << ms_s;
    for (size_t i = ms_s.size(); i < 8; ++i) std::cout << ' ';
    std::cout << (ok ? "PASS" : "FAIL") << "\n";
  }
  return all_ok ? kExitYes : kExitNo;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact solvers and instance tooling for terminal monitoring problems"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  CLI::App* solve = app.add_subcommand("solve", "solve an instance and print the result JSON");
  solve->add_option("-i,--input", solve_args.input, "instance file ('-' for stdin)")->required();
  solve->add_option("-o,--output", solve_args.output, "also write the result JSON to this file");
  solve->add_option("--algo", solve_args.algo, "algorithm")
      ->check(CLI::IsMember({"auto", "bruteforce", "cluster", "nd", "nd-kernel", "vc", "fen", "hitting-dp"}));
  solve->add_flag("--verify", solve_args.verify, "re-check any YES certificate before exiting");
  solve->add_option("--timeout-ms", solve_args.timeout_ms, "abort with exit 3 after this many milliseconds");
  solve->add_option("--jobs", solve_args.opts.jobs, "worker threads for solver-internal parallelism")
      ->check(CLI::Range(1, 256));
  solve->add_option("--cap-dp-family", solve_args.opts.dp_family_cap, "max hitting-set DP family size");
  solve->add_option("--cap-brute-vertex", solve_args.opts.brute_vertex_cap, "max vertex count for bruteforce");
  solve->add_option("--cap-param-branch", solve_args.opts.param_branch_cap, "max parameter-computation depth");
  solve->add_option("--cap-vc-cover", solve_args.opts.vc_cover_cap, "max vertex cover size to enumerate");

  CLI::App* generate = app.add_subcommand("generate", "emit instance files");
  generate->require_subcommand(1);

  RandomSpec rnd;
  std::string gen_output;
  CLI::App* g_random = generate->add_subcommand("random", "seeded random instance");
  g_random->add_option("-n,--n", rnd.n, "vertex count")->required();
  g_random->add_option("--edge-prob", rnd.edge_prob, "edge probability");
  g_random->add_option("--terminals", rnd.num_terminals, "number of terminal pairs");
  g_random->add_option("-k,--k", rnd.k, "budget");
  g_random->add_option("--weight-min", rnd.weight_min, "minimum edge weight");
  g_random->add_option("--weight-max", rnd.weight_max, "maximum edge weight");
  g_random->add_option("--seed", rnd.seed, "random seed");
  g_random->add_option("-o,--output", gen_output, "output file (default stdout)");

  int rbds_blue = 2, rbds_red = 2;
  double rbds_prob = 0.5;
  long long rbds_k = 1;
  std::uint64_t rbds_seed = 0;
  CLI::App* g_rbds = generate->add_subcommand("rbds", "random red-blue domination source, reduced to monitoring");
  g_rbds->add_option("--blue", rbds_blue, "blue side size")->required();
  g_rbds->add_option("--red", rbds_red, "red side size")->required();
  g_rbds->add_option("--edge-prob", rbds_prob, "edge probability");
  g_rbds->add_option("-k,--k", rbds_k, "budget");
  g_rbds->add_option("--seed", rbds_seed, "random seed");
  g_rbds->add_option("-o,--output", gen_output, "output file (default stdout)");

  int mcis_k = 2, mcis_n = 3;
  double mcis_prob = 0.4;
  std::string mcis_alpha = "1/2";
  std::uint64_t mcis_seed = 0;
  CLI::App* g_mcis = generate->add_subcommand("mcis", "random colorful-independence source, reduced to relaxed monitoring");
  g_mcis->add_option("--classes", mcis_k, "number of parts")->required();
  g_mcis->add_option("--class-size", mcis_n, "vertices per part (odd, >= 3)")->required();
  g_mcis->add_option("--edge-prob", mcis_prob, "cross-part edge probability");
  g_mcis->add_option("--alpha", mcis_alpha, "relaxation p/q in (0, 1/2]");
  g_mcis->add_option("--seed", mcis_seed, "random seed");
  g_mcis->add_option("-o,--output", gen_output, "output file (default stdout)");

  std::string params_input;
  SolveOptions params_opts;
  CLI::App* params = app.add_subcommand("params", "compute structural parameters of the instance graph");
  params->add_option("-i,--input", params_input, "instance file ('-' for stdin)")->required();
  params->add_option("--cap-param-branch", params_opts.param_branch_cap, "max parameter-computation depth");
  params->add_option("--cap-vc-cover", params_opts.vc_cover_cap, "max vertex cover size to report");

  std::string verify_input, verify_cert;
  CLI::App* verify = app.add_subcommand("verify", "check a certificate against an instance");
  verify->add_option("-i,--input", verify_input, "instance file ('-' for stdin)")->required();
  verify->add_option("-c,--certificate", verify_cert, "vertex ids, comma or space separated (0-based)")->required();

  int bench_want = 60;
  SolveOptions bench_opts;
  CLI::App* bench = app.add_subcommand("bench", "run solver-vs-oracle sweeps and print a table");
  bench->add_option("--instances", bench_want, "instances per sweep")->check(CLI::Range(1, 100000));
  bench->add_option("--jobs", bench_opts.jobs, "worker threads")->check(CLI::Range(1, 256));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*solve) return run_solve(solve_args);
    if (*g_random) {
      write_text(gen_output, write_instance(gen_random(rnd)));
      return kExitYes;
    }
    if (*g_rbds) {
      RbdsReduction red = gen_from_rbds(gen_random_rbds(rbds_blue, rbds_red, rbds_prob, rbds_k, rbds_seed));
      if (red.trivially_no) {
        std::cerr << "source instance is trivially unsatisfiable (red vertex without neighbors); "
                     "pick another seed\n";
        return kExitUsage;
      }
      write_text(gen_output, write_instance(*red.instance));
      return kExitYes;
    }
    if (*g_mcis) {
      McisReduction red = gen_from_mcis(gen_random_mcis(mcis_k, mcis_n, mcis_prob, mcis_seed),
                                        parse_alpha(mcis_alpha));
      write_text(gen_output, write_instance(red.instance));
      return kExitYes;
    }
    if (*params) return run_params(params_input, params_opts);
    if (*verify) return run_verify(verify_input, verify_cert);
    if (*bench) return run_bench(bench_want, bench_opts);
  } catch (const CapExceeded& e) {
    std::cerr << "cap exceeded: " << e.what() << "\n";
    return kExitCap;
  } catch (const InternalError& e) {
    std::cerr << "internal invariant violated: " << e.what() << "\n";
    return kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
