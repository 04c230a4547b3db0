#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>

#include "CLI11.hpp"
#include "ramlab/builders.hpp"
#include "ramlab/emit.hpp"
#include "ramlab/error.hpp"
#include "ramlab/parallel.hpp"
#include "ramlab/spectral.hpp"
#include "ramlab/theory.hpp"
#include "ramlab/tree.hpp"
#include "ramlab/walk.hpp"

namespace ramlab::cli {

namespace {

using json = nlohmann::ordered_json;

struct GraphSource {
  std::string family;
  int p = 5;
  int q = 29;
  std::size_t n = 0;
  int d = 0;
  std::uint64_t seed = 0;
  std::string name;
  std::string base;
  std::size_t cover = 2;
  std::string file;

  json to_json() const {
    json j{{"family", family}};
    if (family == "lps") {
      j["p"] = p;
      j["q"] = q;
    } else if (family == "random") {
      j["n"] = n;
      j["d"] = d;
      j["seed"] = seed;
    } else if (family == "lift") {
      j["base"] = base;
      j["cover"] = cover;
      j["seed"] = seed;
    } else if (family == "named") {
      j["name"] = name;
    } else {
      j["file"] = file;
    }
    return j;
  }

  // --family may be left out when --file or --name makes it unambiguous.
  void resolve() {
    if (!family.empty()) return;
    if (!file.empty()) {
      family = "file";
    } else if (!name.empty()) {
      family = "named";
    } else {
      throw Error(Errc::Usage, "--family is required");
    }
  }

  RegularGraph load() const {
    if (family == "lps") return build::build_lps({p, q});
    if (family == "random") {
      if (n == 0 || d == 0) throw Error(Errc::Usage, "--family random needs --n and --d");
      return build::build_random_regular(n, d, seed);
    }
    if (family == "lift") {
      if (base.empty()) throw Error(Errc::Usage, "--family lift needs --base");
      const auto b = build::build_named(base);
      return build::build_random_lift({&b, cover, seed});
    }
    if (family == "named") {
      if (name.empty()) throw Error(Errc::Usage, "--family named needs --name");
      return build::build_named(name);
    }
    if (file.empty()) throw Error(Errc::Usage, "--family file needs --file");
    return build::load_graph(file);
  }
};

struct StartOptions {
  std::size_t sample = walk::kSampledStarts;
  std::size_t cap = walk::kExactStartCap;
  std::uint64_t seed = 0;

  json to_json() const { return {{"sample", sample}, {"exact_cap", cap}, {"seed", seed}}; }
};

struct Options {
  std::string out = "ramlab-out";
  GraphSource graph;
  StartOptions starts;
  // mix / tree
  std::string kernel = "srw";
  bool lazy_first = false;
  std::vector<std::string> lp;
  int pmax = 0;
  std::size_t tmax = 30;
  std::vector<double> eps{0.25};
  // profile
  std::vector<double> s_grid{-2, -1, 0, 1, 2};
  // spectrum / certify / decompose
  std::size_t dense_cap = spectral::kDenseCap;
  bool full = false;
  spectral::CertifyOptions certify;
  // metrics
  std::size_t sources = 1;
  std::optional<double> window;
  // theory
  std::size_t n = 0;
  int d = 0;
  std::optional<double> lambda;
};

double parse_p(const std::string& s) {
  if (s == "inf" || s == "infinity") return walk::kInfinity;
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || !(v >= 1.0)) throw Error(Errc::Usage, "bad p value '" + s + "'");
  return v;
}

std::vector<double> p_list(const Options& o) {
  std::vector<double> ps;
  for (int p = 2; p <= o.pmax; ++p) ps.push_back(p);
  for (const auto& s : o.lp) {
    const double p = parse_p(s);
    // D_inf is always reported; D_1 is 2 D_tv.
    if (std::isinf(p) || std::find(ps.begin(), ps.end(), p) != ps.end()) continue;
    ps.push_back(p);
  }
  return ps;
}

json p_json(double p) { return std::isinf(p) ? json("inf") : json(p); }

json base_config(const std::string& sub, const Options& o) {
  return {{"subcommand", sub}, {"out", o.out}, {"threads", thread_count()}};
}

json null_or(std::optional<std::size_t> v) { return v ? json(*v) : json(nullptr); }

std::optional<std::size_t> try_mixing_time(const walk::MixingCurve& c, double eps, walk::Norm norm) {
  try {
    return walk::mixing_time(c, eps, norm);
  } catch (const Error& e) {
    if (e.code() == Errc::NotReached) return std::nullopt;
    throw;
  }
}

int cmd_build(const Options& o, std::ostream& out) {
  const auto g = o.graph.load();
  auto cfg = base_config("build", o);
  cfg["graph"] = o.graph.to_json();
  emit::RunWriter w(o.out, cfg);
  w.set_provenance(g.provenance());
  w.add("graph.edges", build::to_edge_list(g));
  w.add(build::provenance_path("graph.edges").string(), g.provenance().to_json().dump(2) + "\n");
  w.commit();
  out << json{{"n", g.n()}, {"d", g.d()}, {"bipartite", g.bipartite()}, {"file", (w.dir() / "graph.edges").string()}}.dump()
      << "\n";
  return kExitOk;
}

int cmd_metrics(const Options& o, std::ostream& out) {
  const auto g = o.graph.load();
  const double n = static_cast<double>(g.n());
  const double window = o.window.value_or(3.0 * theory::log_base(std::log(n), g.d() - 1.0));
  auto cfg = base_config("metrics", o);
  cfg["graph"] = o.graph.to_json();
  cfg["sources"] = o.sources;
  cfg["source_seed"] = o.starts.seed;
  cfg["window_radius"] = window;

  const auto m = graph_metrics(g);
  json profiles = json::array();
  for (auto s : walk::select_starts(g.n(), o.starts.seed, 0, o.sources)) {
    const auto p = distance_profile(g, static_cast<Vertex>(s), window);
    profiles.push_back({{"source", p.source},
                        {"histogram", p.histogram},
                        {"median", p.median},
                        {"center", p.center},
                        {"exceedance_fraction", p.exceedance_fraction()}});
  }
  json result{{"n", g.n()},
              {"d", g.d()},
              {"diameter", m.diameter},
              {"girth", m.girth},
              {"bipartite", m.bipartite},
              {"volume_lower_bound", diameter_volume_lower_bound(g.n(), g.d())},
              {"profiles", profiles}};
  emit::RunWriter w(o.out, cfg);
  w.set_provenance(g.provenance());
  w.add_json("metrics.json", result);
  w.commit();
  out << json{{"diameter", m.diameter}, {"girth", m.girth}, {"bipartite", m.bipartite}}.dump() << "\n";
  return kExitOk;
}

int cmd_mix(const Options& o, std::ostream& out) {
  const auto g = o.graph.load();
  const auto e = validate_and_index(g);
  const auto kernel = o.kernel == "nbrw" ? walk::Kernel::Nbrw : walk::Kernel::Srw;
  const auto ps = p_list(o);
  const std::size_t states = walk::space_of(kernel) == walk::Space::Vertices ? g.n() : e.size();
  const auto starts = walk::select_starts(states, o.starts.seed, o.starts.cap, o.starts.sample);
  const auto curve = walk::worst_case_curve(g, e, kernel, starts, o.tmax, ps, o.lazy_first);

  auto cfg = base_config("mix", o);
  cfg["graph"] = o.graph.to_json();
  cfg["kernel"] = o.kernel;
  cfg["lazy_first_step"] = o.lazy_first;
  json pj = json::array();
  for (double p : ps) pj.push_back(p_json(p));
  cfg["p_list"] = pj;
  cfg["tmax"] = o.tmax;
  cfg["eps"] = o.eps;
  cfg["starts"] = o.starts.to_json();

  json times = json::array();
  for (double eps : o.eps) {
    json row{{"eps", eps}, {"tv", null_or(try_mixing_time(curve, eps, walk::Norm::tv()))}};
    for (double p : ps) row["d_" + emit::format_double(p)] = null_or(try_mixing_time(curve, eps, walk::Norm::lp(p)));
    row["d_inf"] = null_or(try_mixing_time(curve, eps, walk::Norm::lp(walk::kInfinity)));
    times.push_back(row);
  }
  json summary{{"n", g.n()}, {"d", g.d()}, {"states", states}, {"starts_used", starts.size()}, {"mixing_times", times}};

  emit::RunWriter w(o.out, cfg);
  w.set_provenance(g.provenance());
  w.add("curve.csv", emit::curve_table(curve, g.provenance()).str());
  w.add_json("summary.json", summary);
  w.commit();
  out << summary.dump() << "\n";
  return kExitOk;
}

int cmd_profile(const Options& o, std::ostream& out) {
  const auto g = o.graph.load();
  std::vector<Vertex> starts;
  for (auto s : walk::select_starts(g.n(), o.starts.seed, o.starts.cap, o.starts.sample)) {
    starts.push_back(static_cast<Vertex>(s));
  }
  const auto samples = walk::empirical_cutoff_profile(g, starts, o.s_grid);
  auto cfg = base_config("profile", o);
  cfg["graph"] = o.graph.to_json();
  cfg["s_grid"] = o.s_grid;
  cfg["starts"] = o.starts.to_json();
  emit::RunWriter w(o.out, cfg);
  w.set_provenance(g.provenance());
  w.add("profile.csv", emit::profile_table(samples, g.provenance()).str());
  w.add_json("prediction.json", theory::cutoff_prediction(g.n(), g.d()).to_json());
  w.commit();
  json rows = json::array();
  for (const auto& s : samples) rows.push_back({{"s", s.s}, {"t", s.t}, {"empirical", s.empirical}, {"predicted", s.predicted}});
  out << rows.dump() << "\n";
  return kExitOk;
}

json certify_config(const Options& o) {
  return {{"dense_cap", o.dense_cap},
          {"require_full", o.full},
          {"delta_threshold", o.certify.delta_threshold},
          {"exceptional_budget", o.certify.exceptional_budget},
          {"eps_prime", o.certify.eps_prime}};
}

int cmd_spectrum(const Options& o, std::ostream& out, bool table) {
  const auto g = o.graph.load();
  const auto report = spectral::adjacency_spectrum(g, o.dense_cap, o.full, o.certify.delta_threshold);
  const auto cert = spectral::certify(report, o.certify);
  auto cfg = base_config(table ? "spectrum" : "certify", o);
  cfg["graph"] = o.graph.to_json();
  cfg["certify"] = certify_config(o);
  emit::RunWriter w(o.out, cfg);
  w.set_provenance(g.provenance());
  if (table) {
    w.add("eigenvalues.csv", emit::eigenvalue_table(report, g.provenance()).str());
    w.add_json("spectrum.json", report.to_json());
  }
  w.add_json("certificate.json", cert.to_json());
  w.commit();
  out << cert.to_json().dump() << "\n";
  return kExitOk;
}

int cmd_decompose(const Options& o, std::ostream& out, std::ostream& err) {
  const auto g = o.graph.load();
  const auto e = validate_and_index(g);
  const auto b = spectral::NonBacktracking(g, e).dense(o.dense_cap);
  const auto dec = spectral::build_decomposition(g, e, spectral::adjacency_eigensystem(g, o.dense_cap), o.dense_cap);
  const spectral::VerifyTolerances tol;
  const auto report = spectral::verify_decomposition(b, dec, tol);
  auto cfg = base_config("decompose", o);
  cfg["graph"] = o.graph.to_json();
  cfg["dense_cap"] = o.dense_cap;
  cfg["tolerances"] = {{"reconstruction", tol.reconstruction},
                       {"unitarity", tol.unitarity},
                       {"bass", tol.bass},
                       {"alpha", tol.alpha}};
  json result = report.to_json();
  result["minus_one_count"] = dec.minus_one_count;
  result["plus_one_count"] = dec.plus_one_count;
  result["blocks"] = dec.blocks.size();
  emit::RunWriter w(o.out, cfg);
  w.set_provenance(g.provenance());
  w.add_json("decomposition.json", result);
  w.add("theta.csv", emit::theta_table(dec).str());
  w.commit();
  out << result.dump() << "\n";
  if (!report.passed) {
    err << json{{"error", "VerificationFailed"}, {"message", report.failure}}.dump() << "\n";
    return kExitVerification;
  }
  return kExitOk;
}

int cmd_theory(const Options& o, std::ostream& out) {
  if (o.n < 2 || o.d < 3) throw Error(Errc::Usage, "theory needs --n >= 2 and --d >= 3");
  const double lambda = o.lambda.value_or(spectral::ramanujan_bound(o.d));
  auto cfg = base_config("theory", o);
  cfg["n"] = o.n;
  cfg["d"] = o.d;
  cfg["eps"] = o.eps;
  cfg["lambda"] = lambda;

  json result;
  result["cutoff"] = theory::cutoff_prediction(o.n, o.d).to_json();
  json lp = json::array();
  std::vector<std::string> ps = o.lp.empty() ? std::vector<std::string>{"2"} : o.lp;
  json pj = json::array();
  for (const auto& s : ps) {
    const double p = parse_p(s);
    pj.push_back(p_json(p));
    if (p > 1.0) lp.push_back(theory::lp_prediction(p, o.d, o.n).to_json());
  }
  cfg["p_list"] = pj;
  result["lp"] = lp;
  json lower = json::array();
  for (double eps : o.eps) {
    if (eps > 0 && eps < 1) lower.push_back({{"eps", eps}, {"nbrw_tmix_lower", theory::nbrw_tmix_lower(o.n, o.d, eps)}});
  }
  result["nbrw_tmix_lower"] = lower;
  result["weakly_adjusted_time"] = theory::weakly_adjusted_time(o.n, o.d, 0.0);
  result["nbrw_constant"] = theory::nbrw_constant(o.d);
  result["diameter_bounds"] = theory::diameter_bounds(o.n, o.d, lambda).to_json();
  result["l1_l2_gap"] = theory::l1_l2_gap(o.d);
  result["l2_l1_location_ratio"] = theory::l2_l1_location_ratio(o.d);

  emit::RunWriter w(o.out, cfg);
  w.add_json("prediction.json", result);
  w.commit();
  out << result.dump() << "\n";
  return kExitOk;
}

int cmd_tree(const Options& o, std::ostream& out) {
  if (o.d < 3) throw Error(Errc::Usage, "tree needs --d >= 3");
  std::vector<double> ps;
  for (const auto& s : o.lp) ps.push_back(parse_p(s));
  if (ps.empty()) ps = {2.0};
  const auto table = walk::tree_radial(o.d, o.tmax);
  auto cfg = base_config("tree", o);
  cfg["d"] = o.d;
  cfg["tmax"] = o.tmax;
  json pj = json::array();
  for (double p : ps) pj.push_back(p_json(p));
  cfg["p_list"] = pj;
  emit::RunWriter w(o.out, cfg);
  w.add("tree.csv", emit::tree_table(table, ps).str());
  w.commit();
  out << json{{"d", o.d}, {"horizon", o.tmax}, {"rows", table.rows.size()}}.dump() << "\n";
  return kExitOk;
}

void add_graph_options(CLI::App* app, Options& o) {
  app->add_option("--family", o.graph.family, "graph family (inferred from --file or --name)")
      ->check(CLI::IsMember({"lps", "random", "lift", "named", "file"}));
  app->add_option("--p", o.graph.p, "LPS generator prime");
  app->add_option("--q", o.graph.q, "LPS field prime");
  app->add_option("--n", o.graph.n, "vertices (random)");
  app->add_option("--d", o.graph.d, "degree (random)");
  app->add_option("--seed", o.graph.seed, "sampler seed (random, lift)");
  app->add_option("--name", o.graph.name, "named graph, e.g. petersen, complete(4)");
  app->add_option("--base", o.graph.base, "named base graph for lifts");
  app->add_option("--cover", o.graph.cover, "lift degree");
  app->add_option("--file", o.graph.file, "edge-list file");
}

void add_start_options(CLI::App* app, Options& o) {
  app->add_option("--starts", o.starts.sample, "sampled starts above the exact cap");
  app->add_option("--start-cap", o.starts.cap, "use every start up to this many states");
  app->add_option("--start-seed", o.starts.seed, "seed for start sampling");
}

void add_certify_options(CLI::App* app, Options& o) {
  app->add_option("--dense-cap", o.dense_cap, "largest dense eigensolve");
  app->add_flag("--full", o.full, "fail instead of falling back to a partial spectrum");
  app->add_option("--delta-threshold", o.certify.delta_threshold, "weakly Ramanujan slack");
  app->add_option("--exceptional-budget", o.certify.exceptional_budget, "allowed exceptional eigenvalues");
  app->add_option("--eps-prime", o.certify.eps_prime, "exceptions must stay below d - eps'");
}

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::Usage:
      return kExitUsage;
    case Errc::VerificationFailed:
    case Errc::InvariantViolation:
      return kExitVerification;
    default:
      return kExitComputation;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"ramlab: Ramanujan graph random-walk laboratory"};
  app.require_subcommand(1);
  Options o;

  std::string chosen;
  auto sub = [&](const std::string& name, const std::string& help) {
    auto* s = app.add_subcommand(name, help);
    s->add_option("--out", o.out, "output directory")->capture_default_str();
    s->callback([&chosen, name] { chosen = name; });
    return s;
  };

  auto* build = sub("build", "build a graph and write it as an edge list");
  add_graph_options(build, o);

  auto* metrics = sub("metrics", "diameter, girth and distance profiles");
  add_graph_options(metrics, o);
  metrics->add_option("--sources", o.sources, "number of sampled profile sources");
  metrics->add_option("--source-seed", o.starts.seed, "seed for source sampling");
  metrics->add_option("--window", o.window, "profile window radius");

  auto* mix = sub("mix", "distance-to-stationarity curves");
  add_graph_options(mix, o);
  add_start_options(mix, o);
  mix->add_option("--kernel", o.kernel, "srw or nbrw")->check(CLI::IsMember({"srw", "nbrw"}));
  mix->add_flag("--lazy-first", o.lazy_first, "average the time t and t+1 laws");
  mix->add_option("--lp", o.lp, "extra p values (inf allowed)");
  mix->add_option("--pmax", o.pmax, "add integer p from 2 to pmax");
  mix->add_option("--tmax", o.tmax, "last time step");
  mix->add_option("--eps", o.eps, "thresholds for the reported mixing times");

  auto* profile = sub("profile", "empirical SRW cutoff profile against the Gaussian prediction");
  add_graph_options(profile, o);
  add_start_options(profile, o);
  profile->add_option("--s", o.s_grid, "window offsets");

  auto* spectrum = sub("spectrum", "adjacency spectrum and certificate");
  add_graph_options(spectrum, o);
  add_certify_options(spectrum, o);

  auto* decompose = sub("decompose", "nonbacktracking block decomposition with residuals");
  add_graph_options(decompose, o);
  decompose->add_option("--dense-cap", o.dense_cap, "largest dense matrix");

  auto* certify = sub("certify", "Ramanujan / weakly Ramanujan certificate");
  add_graph_options(certify, o);
  add_certify_options(certify, o);

  auto* theory_cmd = sub("theory", "closed-form predictions");
  theory_cmd->add_option("--n", o.n, "vertices")->required();
  theory_cmd->add_option("--d", o.d, "degree")->required();
  theory_cmd->add_option("--p", o.lp, "p values for the L^p locations (inf allowed)");
  theory_cmd->add_option("--eps", o.eps, "thresholds for the NBRW lower bound");
  theory_cmd->add_option("--lambda", o.lambda, "spectral bound for the diameter bounds");

  auto* tree = sub("tree", "radial law of the walk on the d-regular tree");
  tree->add_option("--d", o.d, "degree")->required();
  tree->add_option("--tmax", o.tmax, "horizon");
  tree->add_option("--lp", o.lp, "p values for the norms (inf allowed)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << json{{"error", "Usage"}, {"message", e.what()}}.dump() << "\n";
    return kExitUsage;
  }

  try {
    if (chosen != "theory" && chosen != "tree") o.graph.resolve();
    if (chosen == "build") return cmd_build(o, out);
    if (chosen == "metrics") return cmd_metrics(o, out);
    if (chosen == "mix") return cmd_mix(o, out);
    if (chosen == "profile") return cmd_profile(o, out);
    if (chosen == "spectrum") return cmd_spectrum(o, out, true);
    if (chosen == "certify") return cmd_spectrum(o, out, false);
    if (chosen == "decompose") return cmd_decompose(o, out, err);
    if (chosen == "theory") return cmd_theory(o, out);
    return cmd_tree(o, out);
  } catch (const ParseError& e) {
    err << json{{"error", "ParseError"}, {"line", e.line()}, {"message", e.what()}}.dump() << "\n";
    return kExitComputation;
  } catch (const Error& e) {
    err << json{{"error", std::string(errc_name(e.code()))}, {"message", e.what()}}.dump() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << json{{"error", "Internal"}, {"message", e.what()}}.dump() << "\n";
    return kExitComputation;
  }
}

}  // namespace ramlab::cli
