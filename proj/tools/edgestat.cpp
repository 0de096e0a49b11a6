// edgestat: command-line front end. Every command prints one JSON report
// on stdout. Exit status: 0 clean, 1 a checked inequality or identity
// failed, 2 usage or input error.

#include <openssl/evp.h>

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "edgestat/acceptance.hpp"
#include "edgestat/anticoncentration.hpp"
#include "edgestat/cover.hpp"
#include "edgestat/discrepancy.hpp"
#include "edgestat/edge_statistics.hpp"
#include "edgestat/report.hpp"
#include "edgestat/rng.hpp"
#include "edgestat/slice_coupling.hpp"

using namespace edgestat;

namespace {

struct Run {
  std::string command;
  Json params = Json::object();
  std::string digest_source;  // bytes of all input files, in order
  bool has_inputs = false;
  std::optional<std::uint64_t> seed;
  Json results;
  std::vector<std::string> violations;
};

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_MD_CTX* ctx = EVP_MD_CTX_new();
  EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
  EVP_DigestUpdate(ctx, bytes.data(), bytes.size());
  EVP_DigestFinal_ex(ctx, md, &len);
  EVP_MD_CTX_free(ctx);
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

std::string slurp(Run& run, const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream os;
  os << in.rdbuf();
  run.digest_source += os.str();
  run.has_inputs = true;
  return os.str();
}

Hypergraph load_graph(Run& run, const std::string& path) {
  const std::string text = slurp(run, path);
  try {
    return parse_hypergraph(text);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

MultilinearPoly load_poly(Run& run, const std::string& path) {
  const std::string text = slurp(run, path);
  try {
    return parse_polynomial(text);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, sep)) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::uint32_t parse_vertex(const std::string& text) {
  try {
    std::size_t used = 0;
    const unsigned long v = std::stoul(text, &used);
    if (used != text.size() || v > UINT32_MAX) throw InputError("");
    return static_cast<std::uint32_t>(v);
  } catch (const std::exception&) {
    throw InputError("not a vertex id: '" + text + "'");
  }
}

// "1,2,7-9" -> {1,2,7,8,9}; "" -> {}
VertexSet parse_set(const std::string& text) {
  std::vector<Vertex> out;
  for (const auto& item : split(text, ',')) {
    const auto dash = item.find('-');
    if (dash == std::string::npos) {
      out.push_back(parse_vertex(item));
      continue;
    }
    const auto lo = parse_vertex(item.substr(0, dash)), hi = parse_vertex(item.substr(dash + 1));
    if (hi < lo) throw InputError("empty range '" + item + "'");
    for (Vertex v = lo; v <= hi; ++v) out.push_back(v);
  }
  return VertexSet(std::move(out));
}

// "3:1,4:2" -> ((3,1),(4,2)), minus vertex first
PairSequence parse_pairs(const std::string& text) {
  PairSequence pairs;
  for (const auto& item : split(text, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw InputError("pair '" + item + "' is not minus:plus");
    pairs.emplace_back(parse_vertex(item.substr(0, colon)), parse_vertex(item.substr(colon + 1)));
  }
  return pairs;
}

Json pairs_json(const PairSequence& pairs) {
  Json out = Json::array();
  for (const auto& [minus, plus] : pairs) out.push_back(Json::array({minus, plus}));
  return out;
}

int emit(const Run& run) {
  Json report;
  report["command"] = run.command;
  report["params"] = run.params;
  report["input_digest"] = "sha256:" + sha256_hex(run.has_inputs ? run.digest_source : run.params.dump());
  report["seed"] = run.seed ? Json(*run.seed) : Json(nullptr);
  report["results"] = run.results;
  report["violations"] = run.violations;
  std::cout << report.dump(2) << '\n';
  return run.violations.empty() ? 0 : 1;
}

// ---- commands ----------------------------------------------------------------

struct Options {
  std::string input, poly, output, part, pairs, y, table, only, w, t_set, cap;
  std::uint32_t n = 0, k = 0, s = 0, r = 0, m = 2, t = 0, sweep = 0, top = 10;
  std::uint64_t level = 0, samples = 100'000, seed = 0, step_cap = 0;
  std::optional<std::uint32_t> j, heavy_s;
  std::string p, l, threshold, tval;
  std::optional<double> gamma;
};

void cmd_profile(Run& run, const Options& o) {
  const auto g = load_graph(run, o.input);
  ProfileOptions opts;
  if (!o.cap.empty()) opts.cap = Integer(o.cap);
  run.params = Json{{"input", o.input}, {"k", o.k}, {"cap", opts.cap.get_str()}};
  const auto profile = exact_profile(g, o.k, opts);
  run.results = to_json(profile);
  run.results["mean"] = exact_json(profile.mean());
}

void cmd_estimate(Run& run, const Options& o) {
  const auto g = load_graph(run, o.input);
  run.params = Json{{"input", o.input}, {"k", o.k}, {"level", o.level}, {"samples", o.samples}};
  run.seed = o.seed;
  run.results = to_json(estimate_point(g, o.k, o.level, o.samples, o.seed));
  run.results["rng"] = kRngName;
}

Json graph_output(const Hypergraph& g, const std::string& output) {
  if (output.empty()) return to_json(g);
  write_hypergraph_file(output, g);
  return Json{{"n", g.n()}, {"r", g.r()}, {"edge_count", g.edge_count()}, {"written", output}};
}

void cmd_lift(Run& run, const Options& o) {
  run.params = Json{{"n", o.n}, {"k", o.k}, {"s", o.s}, {"r", o.r}};
  run.seed = o.seed;
  const auto lift = construct_lift(o.n, o.k, o.s, o.r, o.seed);
  run.results = Json{{"target_level", lift.target_level.get_str()},
                     {"base", to_json(lift.base)},
                     {"graph", graph_output(lift.graph, o.output)},
                     {"rng", kRngName}};
}

void cmd_split(Run& run, const Options& o) {
  const VertexSet part = parse_set(o.part);
  run.params = Json{{"n", o.n}, {"part", set_json(part)}, {"r", o.r}};
  const auto g = construct_split(o.n, part, o.r);
  run.results = Json{{"graph", graph_output(g, o.output)}};
  if (o.j) {
    if (o.k == 0) throw InputError("--j needs --k");
    run.params["k"] = o.k;
    run.params["j"] = *o.j;
    run.results["target_level"] = split_target_level(o.k, *o.j, o.r).get_str();
  }
}

MultilinearPoly load_lambda(Run& run, const Options& o) {
  if (!o.poly.empty() == !o.input.empty()) throw InputError("give exactly one of --input and --poly");
  if (!o.poly.empty()) {
    run.params["poly"] = o.poly;
    return load_poly(run, o.poly);
  }
  run.params["input"] = o.input;
  return lambda_of(load_graph(run, o.input));
}

void cmd_coupling(Run& run, const Options& o) {
  const auto lambda = load_lambda(run, o);
  Json coupling;
  PairSequence pairs;
  if (!o.pairs.empty()) {
    pairs = parse_pairs(o.pairs);
    coupling = Json{{"pairs", pairs_json(pairs)}};
  } else {
    if (o.k == 0) throw InputError("give --pairs, or --k with --seed");
    run.params["k"] = o.k;
    run.seed = o.seed;
    const auto c = sample_coupling(lambda.n(), o.k, o.seed);
    pairs = c.pairs;
    coupling = to_json(c);
  }
  run.params["pairs"] = pairs_json(pairs);
  const auto report = identity_check(lambda, pairs);
  const auto bounds = check_coefficient_bounds(lambda, report.table);
  run.results = Json{{"coupling", coupling}, {"identity", to_json(report)}, {"coefficient_bounds", to_json(bounds)}};
  if (!report.exact()) {
    run.violations.push_back("identity discrepancy " + to_fraction_string(report.max_discrepancy));
  }
  for (auto mask : bounds.violations) {
    run.violations.push_back("coefficient bound violated for index mask " + std::to_string(mask));
  }
  if (o.heavy_s) {
    const Rational threshold = o.threshold.empty() ? Rational(0) : parse_rational(o.threshold);
    run.params["heavy_s"] = *o.heavy_s;
    run.params["threshold"] = to_fraction_string(threshold);
    run.results["heavy_sets"] = to_json(heavy_disjoint_sets(lambda, pairs, *o.heavy_s, threshold));
  }
}

void cmd_discrepancy(Run& run, const Options& o) {
  const auto g = load_graph(run, o.input);
  DiscrepancyOptions opts;
  if (!o.cap.empty()) opts.cap = Integer(o.cap);
  opts.top = o.top;
  run.params = Json{{"input", o.input}, {"cap", opts.cap.get_str()}, {"top", o.top}};
  std::vector<std::uint32_t> ss;
  if (o.s != 0) {
    ss.push_back(o.s);
    run.params["s"] = o.s;
  } else {
    for (std::uint32_t s = 1; s <= g.r(); ++s) ss.push_back(s);
  }
  run.results = Json::array();
  for (auto s : ss) {
    const auto report = q_discrepancy(g, s, opts);
    run.results.push_back(to_json(report));
    if (report.bound_violations) {
      run.violations.push_back("s = " + std::to_string(s) + ": " + std::to_string(report.bound_violations) +
                               " sequences above 2^s n^(r-s)");
    }
  }
}

void cmd_ehm(Run& run, const Options& o) {
  auto row_json = [](std::uint32_t n, std::uint32_t k, std::uint32_t t, const TVReport& r) {
    Json j{{"params", Json{{"n", n}, {"k", k}, {"t", t}}}};
    const Json body = to_json(r);
    for (const auto& [key, value] : body.items()) j[key] = value;
    return j;
  };
  if (o.sweep) {
    run.params = Json{{"sweep", o.sweep}};
    run.results = Json::array();
    for (const auto& row : ehm_sweep(o.sweep)) {
      run.results.push_back(row_json(row.n, row.k, row.t, row.report));
      if (!row.report.ok()) {
        run.violations.push_back("tv above bound at (" + std::to_string(row.n) + "," + std::to_string(row.k) + "," +
                                 std::to_string(row.t) + ")");
      }
    }
    return;
  }
  if (o.n == 0) throw InputError("give --n --k --t or --sweep");
  run.params = Json{{"n", o.n}, {"k", o.k}, {"t", o.t}};
  const auto r = hypergeom_binom_tv(o.n, o.k, o.t);
  run.results = row_json(o.n, o.k, o.t, r);
  if (!r.ok()) run.violations.push_back("tv above (t-1)/(n-1)");
}

void cmd_poisson(Run& run, const Options& o) {
  const auto f = load_poly(run, o.poly);
  const Rational p = parse_rational(o.p), l = parse_rational(o.l), t = parse_rational(o.tval);
  run.params = Json{{"poly", o.poly}, {"p", to_fraction_string(p)}, {"level", to_fraction_string(l)},
                    {"t", to_fraction_string(t)}};
  if (o.gamma) run.params["gamma"] = *o.gamma;
  const auto r = poisson_check(f, p, l, t, o.gamma);
  run.results = to_json(r);
  if (!r.ok()) run.violations.push_back("point probability above max_n Pr[Bin(n,p) = 1]");
}

void cmd_junta_tv(Run& run, const Options& o) {
  std::vector<Rational> table;
  run.params = Json{{"n", o.n}, {"k", o.k}};
  if (!o.table.empty()) {
    for (const auto& item : split(o.table, ',')) table.push_back(parse_rational(item));
    run.params["table"] = o.table;
  } else if (!o.poly.empty()) {
    const auto f = load_poly(run, o.poly);
    const auto vars = f.active_variables();
    if (vars.size() > kMaxJuntaCoordinates) throw InputError("polynomial has more than 14 active variables");
    for (std::size_t mask = 0; mask < (std::size_t{1} << vars.size()); ++mask) {
      std::vector<Vertex> ones;
      for (std::size_t i = 0; i < vars.size(); ++i) {
        if ((mask >> i) & 1U) ones.push_back(vars[i]);
      }
      table.push_back(evaluate_indicator(f, VertexSet(ones)));
    }
    run.params["poly"] = o.poly;
    run.params["coordinates"] = vars;
  } else if (!o.input.empty() && !o.y.empty()) {
    const auto g = load_graph(run, o.input);
    const VertexSet y = parse_set(o.y);
    const auto junta = conditional_junta(g, o.k, y);
    if (!junta.all_feasible()) throw InputError("some subsets of Y are infeasible for this k");
    for (const auto& v : junta.values) table.push_back(*v);
    run.params["input"] = o.input;
    run.params["y"] = set_json(y);
    run.results["junta"] = to_json(junta);
  } else {
    throw InputError("give --table, --poly, or --input with --y");
  }
  const auto r = junta_tv(table, o.n, o.k);
  const Json body = to_json(r);
  for (const auto& [key, value] : body.items()) run.results[key] = value;
  if (!r.ok()) run.violations.push_back("tv above (max(s, 2n/k) - 1)/(n - 1)");
}

void cmd_moments(Run& run, const Options& o) {
  const auto lambda = load_lambda(run, o);
  const std::uint32_t n = o.n ? o.n : lambda.n();
  run.params["n"] = n;
  run.params["k"] = o.k;
  run.results = to_json(slice_moments(lambda, n, o.k));
  if (!o.w.empty() || !o.t_set.empty()) {
    const VertexSet w = parse_set(o.w), t = parse_set(o.t_set);
    run.params["w"] = set_json(w);
    run.params["t"] = set_json(t);
    run.results["covariance"] = exact_with_decimal(slice_covariance(n, o.k, w, t));
  }
}

void cmd_cover_run(Run& run, const Options& o) {
  const auto g = load_graph(run, o.input);
  run.params = Json{{"input", o.input}, {"m", o.m}, {"step_cap", o.step_cap}};
  const auto cert = greedy_cover(g, o.m, o.step_cap);
  const auto verdict = verify_cover(g, cert.y, o.m);
  run.results = Json{{"certificate", to_json(cert)}, {"verification", to_json(verdict)}};
  if (cert.step_cap_hit) run.violations.push_back("step cap reached before termination");
  if (!verdict.passed) run.violations.push_back("cover verification failed");
}

void cmd_cover_verify(Run& run, const Options& o) {
  const auto g = load_graph(run, o.input);
  const VertexSet y = parse_set(o.y);
  run.params = Json{{"input", o.input}, {"y", set_json(y)}, {"m", o.m}};
  const auto verdict = verify_cover(g, y, o.m);
  run.results = to_json(verdict);
  if (!verdict.passed) run.violations.push_back("cover verification failed");
}

void cmd_suite(Run& run, const Options& o) {
  std::vector<int> only;
  for (const auto& item : split(o.only, ',')) only.push_back(static_cast<int>(parse_vertex(item)));
  run.params = Json{{"only", only}};
  run.seed = kAcceptanceSeed;
  run.results = Json::array();
  for (const auto& c : run_acceptance(only, [](const CriterionResult& c) {
         std::cerr << format_criterion(c) << '\n';
       })) {
    // runtimes go to stderr only, so reports stay byte-identical across runs
    run.results.push_back(Json{{"id", c.id}, {"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    if (!c.passed) run.violations.push_back("criterion " + std::to_string(c.id) + " failed: " + c.detail);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact and Monte-Carlo edge statistics of hypergraphs"};
  app.require_subcommand(1);
  Options o;
  std::optional<std::uint64_t> seed;
  std::function<void(Run&, const Options&)> handler;
  std::string command;

  auto bind = [&](CLI::App* sub, std::string name, std::function<void(Run&, const Options&)> fn) {
    sub->callback([&, name, fn] {
      command = name;
      handler = fn;
    });
  };
  auto need_seed = [&](CLI::App* sub) {
    sub->add_option("--seed", o.seed, "RNG seed (required)")->required();
  };

  auto* profile = app.add_subcommand("profile", "exact distribution of e(G[U]) over k-subsets");
  profile->add_option("--input", o.input, ".hg file")->required();
  profile->add_option("--k", o.k)->required();
  profile->add_option("--cap", o.cap, "largest C(n,k) to enumerate");
  bind(profile, "profile", cmd_profile);

  auto* estimate = app.add_subcommand("estimate", "Monte-Carlo estimate of Pr[e(G[U]) = level]");
  estimate->add_option("--input", o.input)->required();
  estimate->add_option("--k", o.k)->required();
  estimate->add_option("--level", o.level)->required();
  estimate->add_option("--samples", o.samples)->capture_default_str();
  need_seed(estimate);
  bind(estimate, "estimate", cmd_estimate);

  auto* construct = app.add_subcommand("construct", "extremal constructions");
  construct->require_subcommand(1);
  auto* lift = construct->add_subcommand("lift", "r-sets containing an edge of a sparse random s-graph");
  lift->add_option("--n", o.n)->required();
  lift->add_option("--k", o.k)->required();
  lift->add_option("--s", o.s)->required();
  lift->add_option("--r", o.r)->required();
  lift->add_option("--output", o.output, "write the graph as .hg instead of listing edges");
  need_seed(lift);
  bind(lift, "construct lift", cmd_lift);
  auto* split_cmd = construct->add_subcommand("split", "r-sets meeting a vertex set in exactly one vertex");
  split_cmd->add_option("--n", o.n)->required();
  split_cmd->add_option("--part", o.part, "e.g. 1-100 or 1,4,7")->required();
  split_cmd->add_option("--r", o.r)->required();
  split_cmd->add_option("--k", o.k);
  split_cmd->add_option("--j", o.j, "report the level j C(k-j, r-1)");
  split_cmd->add_option("--output", o.output);
  bind(split_cmd, "construct split", cmd_split);

  auto* coupling = app.add_subcommand("coupling-check", "exact sign-polynomial identity for a pair coupling");
  coupling->add_option("--input", o.input);
  coupling->add_option("--poly", o.poly);
  coupling->add_option("--pairs", o.pairs, "minus:plus,... e.g. 3:1,4:2");
  coupling->add_option("--k", o.k);
  coupling->add_option("--seed", seed);
  coupling->add_option("--heavy-s", o.heavy_s, "also list heavy disjoint s-blocks");
  coupling->add_option("--threshold", o.threshold);
  bind(coupling, "coupling-check", cmd_coupling);

  auto* disc = app.add_subcommand("discrepancy", "Q_s(G) signed-sum discrepancy");
  disc->add_option("--input", o.input)->required();
  disc->add_option("--s", o.s, "default: every s in [r]");
  disc->add_option("--cap", o.cap);
  disc->add_option("--top", o.top)->capture_default_str();
  bind(disc, "discrepancy", cmd_discrepancy);

  auto* anti = app.add_subcommand("anticonc", "anticoncentration checks");
  anti->require_subcommand(1);
  auto* ehm_cmd = anti->add_subcommand("ehm", "hypergeometric vs binomial total variation");
  ehm_cmd->add_option("--n", o.n);
  ehm_cmd->add_option("--k", o.k);
  ehm_cmd->add_option("--t", o.t);
  ehm_cmd->add_option("--sweep", o.sweep, "all cells with n up to this value");
  bind(ehm_cmd, "anticonc ehm", cmd_ehm);
  auto* poisson = anti->add_subcommand("poisson", "Pr[|F - level| <= t] under Bernoulli(p) inputs");
  poisson->add_option("--poly", o.poly)->required();
  poisson->add_option("--p", o.p)->required();
  poisson->add_option("--level", o.l)->required();
  poisson->add_option("--t", o.tval)->required();
  poisson->add_option("--gamma", o.gamma);
  bind(poisson, "anticonc poisson", cmd_poisson);
  auto* junta = anti->add_subcommand("junta-tv", "slice vs product law of a junta");
  junta->add_option("--n", o.n)->required();
  junta->add_option("--k", o.k)->required();
  junta->add_option("--table", o.table, "values on subsets, bitmask order");
  junta->add_option("--poly", o.poly);
  junta->add_option("--input", o.input);
  junta->add_option("--y", o.y, "junta coordinates for --input");
  bind(junta, "anticonc junta-tv", cmd_junta_tv);
  auto* moments = anti->add_subcommand("moments", "exact slice mean, variance and covariance");
  moments->add_option("--poly", o.poly);
  moments->add_option("--input", o.input);
  moments->add_option("--n", o.n);
  moments->add_option("--k", o.k)->required();
  moments->add_option("--w", o.w);
  moments->add_option("--tset", o.t_set);
  bind(moments, "anticonc moments", cmd_moments);

  auto* cover = app.add_subcommand("cover", "greedy cover");
  cover->require_subcommand(1);
  auto* cover_run = cover->add_subcommand("run");
  cover_run->add_option("--input", o.input)->required();
  cover_run->add_option("--m", o.m)->capture_default_str();
  cover_run->add_option("--step-cap", o.step_cap, "0 = 10 (r m)^(r+2)");
  bind(cover_run, "cover run", cmd_cover_run);
  auto* cover_verify = cover->add_subcommand("verify");
  cover_verify->add_option("--input", o.input)->required();
  cover_verify->add_option("--y", o.y)->required();
  cover_verify->add_option("--m", o.m)->capture_default_str();
  bind(cover_verify, "cover verify", cmd_cover_verify);

  auto* suite = app.add_subcommand("suite", "built-in acceptance battery");
  suite->require_subcommand(1);
  auto* acceptance = suite->add_subcommand("acceptance");
  acceptance->add_option("--only", o.only, "comma-separated criterion ids");
  bind(acceptance, "suite acceptance", cmd_suite);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  Run run;
  run.command = command;
  try {
    // coupling-check takes --seed only when it samples the pairs
    if (seed) o.seed = *seed;
    if (command == "coupling-check" && !seed && o.pairs.empty()) {
      throw InputError("--seed is required when the coupling is sampled");
    }
    handler(run, o);
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return emit(run);
}
