#include <openssl/evp.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <sstream>

#include "CLI11.hpp"

#include "beurling/cli.hpp"
#include "beurling/conditions.hpp"
#include "beurling/construct.hpp"
#include "beurling/diophantine.hpp"
#include "beurling/hardy.hpp"
#include "beurling/json_io.hpp"
#include "beurling/random.hpp"
#include "beurling/zeta.hpp"

namespace beurling {

namespace {

using json = nlohmann::json;
using Params = std::map<std::string, std::string>;

// Parameters that do not influence the artifact bytes.
const std::vector<std::string> kUnrecorded = {"out", "timestamp"};

struct Context {
  std::string command;
  Params params;
  json digests = json::object();
  std::ostream& out;
  std::ostream& err;
};

class CliFailure : public Error {
 public:
  using Error::Error;
};

double to_double(const Params& p, const std::string& key) {
  const std::string& v = p.at(key);
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size() || !std::isfinite(d)) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw PreconditionError("--" + key + " expects a number, got '" + v + "'");
  }
}

long to_long(const Params& p, const std::string& key) {
  const double d = to_double(p, key);
  if (d != std::floor(d) || std::fabs(d) > 9e15) throw PreconditionError("--" + key + " expects an integer");
  return static_cast<long>(d);
}

std::vector<double> to_list(const Params& p, const std::string& key) {
  std::vector<double> out;
  std::stringstream ss(p.at(key));
  std::string item;
  while (std::getline(ss, item, ',')) {
    Params one{{key, item}};
    out.push_back(to_double(one, key));
  }
  if (out.empty()) throw PreconditionError("--" + key + " expects a comma separated list");
  return out;
}

PrecisionPolicy policy_of(const Params& p) {
  PrecisionPolicy policy{to_long(p, "precision-bits"), to_long(p, "precision-cap")};
  if (policy.start < 32 || policy.cap < policy.start)
    throw PreconditionError("precision bits must be >= 32 and <= precision cap");
  return policy;
}

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

PrimeSystem load_system(Context& ctx, const PrecisionPolicy& policy) {
  const std::string& file = ctx.params.at("primes-file");
  const std::string& classical = ctx.params.at("classical");
  if (!file.empty() && !classical.empty())
    throw PreconditionError("give either --primes-file or --classical");
  if (!file.empty()) {
    ctx.digests[file] = file_sha256(file);
    const PrimeSystem s = read_primes_file(file);
    return PrimeSystem::from_decimals(s.decimals(), s.origin(), policy);
  }
  if (!classical.empty()) {
    const PrimeSystem s = classical_primes(to_double(ctx.params, "classical"));
    return PrimeSystem::from_decimals(s.decimals(), s.origin(), policy);
  }
  throw PreconditionError("a prime system is required: --primes-file F or --classical L");
}

json manifest_of(const Context& ctx) {
  json params = json::object();
  for (const auto& [k, v] : ctx.params)
    if (std::find(kUnrecorded.begin(), kUnrecorded.end(), k) == kUnrecorded.end()) params[k] = v;
  json m{{"command", ctx.command},
         {"parameters", params},
         {"library_version", kLibraryVersion},
         {"timestamp", ctx.params.at("timestamp")},
         {"input_digests", ctx.digests}};
  if (ctx.params.count("precision-bits"))
    m["precision"] = {{"bits", to_long(ctx.params, "precision-bits")},
                      {"cap", to_long(ctx.params, "precision-cap")}};
  if (ctx.params.count("seed")) {
    m["seed"] = ctx.params.at("seed");
    m["generator"] = kGeneratorName;
  }
  return m;
}

void emit(Context& ctx, const std::string& bytes) {
  const std::string& path = ctx.params.at("out");
  if (path.empty()) {
    ctx.out << bytes;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw PreconditionError("cannot write " + path);
  f << bytes;
  f.close();
  ctx.out << "wrote " << path << " sha256=" << sha256_hex(bytes) << '\n';
}

void emit_json(Context& ctx, json result) {
  json doc{{"manifest", manifest_of(ctx)}, {"result", std::move(result)}};
  emit(ctx, doc.dump(2) + "\n");
}

void emit_csv(Context& ctx, const std::string& body) {
  emit(ctx, "# manifest " + manifest_of(ctx).dump() + "\n" + body);
}

bool csv(const Context& ctx) {
  const std::string& f = ctx.params.at("format");
  if (f != "json" && f != "csv") throw PreconditionError("--format must be json or csv");
  return f == "csv";
}

// ---------------------------------------------------------------------------
// Subcommands

void cmd_gen(Context& ctx) {
  const PrecisionPolicy policy = policy_of(ctx.params);
  const PrimeSystem system = load_system(ctx, policy);
  const double limit = to_double(ctx.params, "limit");
  const IntegerSnapshot snap = enumerate_integers(system, limit, policy);
  if (csv(ctx)) {
    std::ostringstream s;
    s << "index,exponents,value\n";
    for (std::size_t i = 0; i < snap.size(); ++i)
      s << i << ',' << to_string(snap.entry(i).exponents) << ',' << snap.entry(i).value.to_decimal(30) << '\n';
    emit_csv(ctx, s.str());
    return;
  }
  const Counts c = count_functions(snap, limit);
  emit_json(ctx, {{"N", c.integers}, {"pi", c.primes}, {"snapshot", snapshot_to_json(snap)}});
}

void cmd_conditions(Context& ctx) {
  const PrecisionPolicy policy = policy_of(ctx.params);
  const PrimeSystem system = load_system(ctx, policy);
  const IntegerSnapshot snap = enumerate_integers(system, to_double(ctx.params, "limit"), policy);
  const FrequencyView view = FrequencyView::from_snapshot(snap);
  const std::string& cond = ctx.params.at("condition");
  if (cond == "NC") {
    const auto count = std::min<std::size_t>(static_cast<std::size_t>(to_long(ctx.params, "count")),
                                             view.size() - 1);
    json rows = json::array();
    std::ostringstream s;
    s << "n,value,argmin,upper_bound_only\n";
    for (std::size_t n = 0; n < count; ++n) {
      const NcValue v = nc_profile(view, n);
      rows.push_back({{"n", n}, {"value", interval_json(v.value, 20)}, {"argmin", v.argmin},
                      {"upper_bound_only", v.upper_bound_only}});
      s << n << ',' << v.value.to_decimal(20) << ',' << v.argmin << ',' << v.upper_bound_only << '\n';
    }
    if (csv(ctx))
      emit_csv(ctx, s.str());
    else
      emit_json(ctx, {{"condition", "NC"}, {"profile", rows}});
    return;
  }
  ConditionReport r;
  if (cond == "BC")
    r = bc_margins(view, to_double(ctx.params, "c1"), to_double(ctx.params, "c2"));
  else if (cond == "LC")
    r = lc_margins(view, to_double(ctx.params, "c"), to_double(ctx.params, "delta"));
  else
    throw PreconditionError("--condition must be BC, LC or NC");
  if (csv(ctx)) {
    std::ostringstream s;
    write_margins_csv(s, view, r);
    emit_csv(ctx, s.str());
    return;
  }
  emit_json(ctx, {{"condition", to_string(r.condition)},
                  {"parameters", {r.first, r.second}},
                  {"verdict", r.verdict},
                  {"undecided", r.undecided},
                  {"worst_index", r.worst_index},
                  {"worst_margin", interval_json(r.margins.at(r.worst_index), 20)},
                  {"pairs", r.margins.size()}});
}

std::optional<PrimeEnvelope> envelope_of(const Params& p) {
  const std::string& e = p.at("envelope");
  if (e == "none") return std::nullopt;
  if (e == "rs") return PrimeEnvelope{PrimeEnvelope::Kind::RosserSchoenfeld, 0};
  if (e.rfind("li:", 0) == 0) {
    Params k{{"envelope", e.substr(3)}};
    return PrimeEnvelope{PrimeEnvelope::Kind::Li, to_double(k, "envelope")};
  }
  throw PreconditionError("--envelope must be none, rs or li:K");
}

void cmd_zeta(Context& ctx) {
  const PrecisionPolicy policy = policy_of(ctx.params);
  const PrimeSystem system = load_system(ctx, policy);
  const double sigma = to_double(ctx.params, "sigma"), t = to_double(ctx.params, "t");
  const double cutoff = to_double(ctx.params, "cutoff");
  const auto env = envelope_of(ctx.params);
  json r{{"sigma", sigma}, {"t", t}};
  r["euler"] = to_json(zeta_euler(system, sigma, t, cutoff, env, policy.start));
  r["log_zeta"] = to_json(log_zeta(system, sigma, t, cutoff, env, policy.start));
  r["Z"] = to_json(Z_eval(system, sigma, t, cutoff, env, 1e-8, policy.start));
  const double limit = to_double(ctx.params, "limit");
  if (limit >= 1) {
    std::optional<DensityEnvelope> dens;
    if (ctx.params.at("density") != "none") {
      const auto ab = to_list(ctx.params, "density");
      if (ab.size() != 2) throw PreconditionError("--density expects a,b");
      dens = DensityEnvelope{ab[0], ab[1]};
    }
    r["sum"] = to_json(zeta_sum(enumerate_integers(system, limit, policy), sigma, t, dens));
  }
  emit_json(ctx, r);
}

void cmd_perturb(Context& ctx) {
  ConstructParams p;
  p.policy = policy_of(ctx.params);
  const PrimeSystem target = load_system(ctx, p.policy);
  p.A = to_double(ctx.params, "A");
  p.epsilon = to_double(ctx.params, "epsilon");
  p.x0 = to_double(ctx.params, "x0");
  p.cutoff = to_double(ctx.params, "cutoff");
  p.sigma_step = to_double(ctx.params, "sigma-step");
  p.seed = static_cast<std::uint64_t>(to_long(ctx.params, "seed"));
  if (ctx.params.at("sigma-inf") != "auto") p.sigma_inf = to_double(ctx.params, "sigma-inf");
  const PerturbResult r = perturb_system(target, p);
  json j = to_json(r);
  j["target"] = target.decimals();
  emit_json(ctx, j);
  if (!r.certificate.valid) throw CliFailure("gap certificate failed");
}

struct SampleRun {
  PrimeSystem system;
  EventSweep sweep;
  PrimeSystem kept;
  std::size_t recheck_triggered = 0;
};

SampleRun run_sample(const Context& ctx, const PrecisionPolicy& policy) {
  SampleRun run;
  const long count = to_long(ctx.params, "count");
  if (count < 1) throw PreconditionError("--count must be >= 1");
  run.system = sample_primes(static_cast<std::uint64_t>(to_long(ctx.params, "seed")),
                             static_cast<std::size_t>(count), policy);
  const auto sweep = to_list(ctx.params, "sweep");
  if (sweep.size() != 3) throw PreconditionError("--sweep expects K,J,M");
  SweepConfig cfg{static_cast<std::size_t>(sweep[0]), static_cast<unsigned>(sweep[1]),
                  static_cast<std::size_t>(sweep[2]), to_double(ctx.params, "A"),
                  to_double(ctx.params, "cutoff")};
  run.sweep = sweep_events(run.system, cfg, policy);
  run.kept = remove_exceptional(run.system, run.sweep.events);
  const std::size_t K = cfg.K == 0 ? run.kept.size() : std::min(cfg.K, run.kept.size());
  for (std::size_t k = 1; k <= K; ++k)
    for (unsigned j = 1; j <= cfg.J; ++j)
      run.recheck_triggered += check_B_event(run.kept, k, j, cfg.A, cfg.cutoff, policy).triggered;
  return run;
}

void cmd_sample(Context& ctx) {
  const PrecisionPolicy policy = policy_of(ctx.params);
  const SampleRun run = run_sample(ctx, policy);
  const std::vector<double> ts = to_list(ctx.params, "deviation-t");
  const auto grid = sample_grid(run.system.size(), policy);
  std::vector<Deviation> profile;
  for (std::size_t k = 0; k < grid.size(); k += std::max<std::size_t>(1, grid.size() / 20))
    for (double t : ts) profile.push_back(exp_sum_deviation(run.system, grid[k].hi_double(), t, policy));
  for (double t : ts) profile.push_back(exp_sum_deviation(run.system, grid.back().hi_double(), t, policy));

  if (csv(ctx)) {
    std::ostringstream s;
    s << "x,t,statistic,ratio,rigorous\n";
    for (const Deviation& d : profile)
      s << d.x << ',' << d.t << ',' << d.statistic.to_decimal(20) << ',' << d.ratio << ',' << d.rigorous << '\n';
    emit_csv(ctx, s.str());
    return;
  }
  json events = json::array();
  double worst_a = 0;
  for (const EventRecord& e : run.sweep.events) {
    if (e.kind == 'A' && e.note != "vacuous")
      worst_a = std::max(worst_a, e.statistic.hi_double() / e.threshold.lo_double());
    if (e.triggered || e.undecided || (e.kind == 'A' && e.note != "vacuous")) events.push_back(to_json(e));
  }
  json dev = json::array();
  for (const Deviation& d : profile) dev.push_back(to_json(d));
  const double top = std::floor(run.kept.approx(run.kept.size() - 1));
  json density = nullptr;
  const IntegerSnapshot snap = enumerate_integers(run.kept, top, policy);
  if (snap.size() >= 100) density = to_json(density_fit(snap));
  emit_json(ctx, {{"system", system_to_json(run.system)},
                  {"max_pnt_deviation", max_pnt_deviation(run.system)},
                  {"events", {{"count", run.sweep.events.size()},
                              {"vacuous", run.sweep.vacuous},
                              {"underflow", run.sweep.underflow},
                              {"triggered", run.sweep.triggered},
                              {"worst_nonvacuous_A_ratio", worst_a},
                              {"records", events}}},
                  {"removed", run.system.size() - run.kept.size()},
                  {"kept", system_to_json(run.kept)},
                  {"recheck_triggered", run.recheck_triggered},
                  {"deviations", dev},
                  {"density", density}});
}

void cmd_dioph(Context& ctx) {
  const PrecisionPolicy policy = policy_of(ctx.params);
  const double limit = to_double(ctx.params, "limit");
  if (ctx.params.at("primes-file").empty() && ctx.params.at("classical").empty())
    ctx.params["classical"] = ctx.params.at("limit");
  const PrimeSystem system = load_system(ctx, policy);
  const IntegerSnapshot snap = enumerate_integers(system, limit, policy);
  const Refinable x = parse_target(ctx.params.at("target"));
  const auto top = best_approximations(x, snap, static_cast<std::size_t>(to_long(ctx.params, "top")));
  json records = json::array();
  for (const ApproxRecord& r : top) records.push_back(to_json(r));
  json mu = nullptr;
  std::string reason;
  MuEstimate est;
  try {
    est = mu_estimate(x, snap);
    mu = to_json(est);
  } catch (const PreconditionError& e) {
    reason = e.what();
  }
  if (csv(ctx)) {
    if (mu.is_null()) throw PreconditionError(reason);
    std::ostringstream s;
    s << "log_nu,exponent\n";
    s << std::setprecision(17);
    for (const auto& [l, e] : est.scatter) s << l << ',' << e << '\n';
    emit_csv(ctx, s.str());
    return;
  }
  json r{{"target", ctx.params.at("target")}, {"best", records}, {"mu", mu}};
  if (!reason.empty()) r["mu_unavailable"] = reason;
  emit_json(ctx, r);
}

void cmd_helson(Context& ctx) {
  const PrecisionPolicy policy = policy_of(ctx.params);
  const SampleRun run = run_sample(ctx, policy);
  const double eps = to_double(ctx.params, "epsilon");
  const std::vector<double> limits = to_list(ctx.params, "limits");
  const HelsonReport r = helson_demo(run.kept, eps, limits, to_list(ctx.params, "sigmas"));

  // Lift consistency on the smallest truncation: ||f||_4^4 against ||f^2||_2^2.
  const double small = *std::min_element(limits.begin(), limits.end());
  const DirichletSeries f = mobius_series(enumerate_integers(run.kept, small, policy), 0.5 + eps);
  const NormResult n4 = even_p_norm(f, 4, small * small);
  const double sq = std::pow(h2_norm(multiply(f, f, small * small).series), 2);
  json j = to_json(r);
  j["system"] = system_to_json(run.kept);
  j["removed"] = run.system.size() - run.kept.size();
  j["lift"] = {{"X", small}, {"norm4_pow4", std::pow(n4.value, 4)}, {"square_norm2_sq", sq},
               {"truncated", n4.truncated}};
  emit_json(ctx, j);
}

// ---------------------------------------------------------------------------

struct Command {
  std::string name;
  std::string help;
  std::vector<std::tuple<std::string, std::string, std::string>> options;  // name, default, help
  void (*run)(Context&);
};

const std::vector<std::tuple<std::string, std::string, std::string>> kSystemOptions = {
    {"primes-file", "", "primes file: one decimal per line, '#' comments"},
    {"classical", "", "use the ordinary primes <= L"}};
const std::vector<std::tuple<std::string, std::string, std::string>> kCommonOptions = {
    {"precision-bits", "128", "starting MPFR precision"},
    {"precision-cap", "4096", "precision cap for refinement"},
    {"format", "json", "json or csv"},
    {"out", "", "output file (stdout when empty)"},
    {"timestamp", "", "manifest timestamp (set by replay)"}};

std::vector<Command> commands() {
  auto with = [](std::vector<std::tuple<std::string, std::string, std::string>> own, bool system) {
    if (system) own.insert(own.end(), kSystemOptions.begin(), kSystemOptions.end());
    own.insert(own.end(), kCommonOptions.begin(), kCommonOptions.end());
    return own;
  };
  const std::vector<std::tuple<std::string, std::string, std::string>> sample_opts = {
      {"seed", "42", "generator seed"},
      {"count", "200", "number of sampled primes"},
      {"A", "1", "exponent of the Diophantine events"},
      {"sweep", "0,4,8", "K,J,M event ranges (K = 0: all primes)"},
      {"cutoff", "1000", "integer bound for the Diophantine events"}};
  auto helson_opts = sample_opts;
  helson_opts.push_back({"epsilon", "0.25", "shift epsilon in (0, 1/2)"});
  helson_opts.push_back({"limits", "100,1000,10000", "truncation limits X"});
  helson_opts.push_back({"sigmas", "1", "real parts for the 1/zeta cross-check"});
  auto sample_all = sample_opts;
  sample_all.push_back({"deviation-t", "0,1,7.5", "t values of the deviation profile"});
  return {
      {"gen", "enumerate Beurling integers", with({{"limit", "1000", "integer bound X"}}, true), cmd_gen},
      {"conditions", "gap conditions BC, LC, NC",
       with({{"limit", "1000", "integer bound X"},
             {"condition", "BC", "BC, LC or NC"},
             {"c1", "1", "BC constant c1"},
             {"c2", "1", "BC constant c2"},
             {"c", "1", "LC constant c"},
             {"delta", "1", "LC constant delta"},
             {"count", "100", "NC profile length"}},
            true),
       cmd_conditions},
      {"zeta", "Beurling zeta function",
       with({{"sigma", "2", "real part"},
             {"t", "0", "imaginary part"},
             {"cutoff", "1000", "Euler product prime cutoff"},
             {"limit", "0", "Dirichlet sum bound (0: skip)"},
             {"envelope", "none", "none, rs or li:K"},
             {"density", "none", "none or a,b with N(x) <= a x + b"}},
            true),
       cmd_zeta},
      {"perturb", "perturb a prime system to certified gaps",
       with({{"A", "1", "budget exponent"},
             {"epsilon", "0", "epsilon (0: (q1 - 1)/2)"},
             {"x0", "0", "x0 (0: 1 + 3 epsilon/4)"},
             {"cutoff", "10000", "integer cutoff"},
             {"sigma-inf", "auto", "auto or a value > max(2, A)"},
             {"sigma-step", "1", "grid step of the sigma_inf search"},
             {"seed", "0", "seed of the redraw path"}},
            true),
       cmd_perturb},
      {"sample", "random prime system with event sweep", with(sample_all, false), cmd_sample},
      {"dioph", "Diophantine approximation by integer ratios",
       with({{"target", "pi", "target expression"},
             {"limit", "10000", "integer bound X"},
             {"top", "10", "number of records"}},
            true),
       cmd_dioph},
      {"helson", "Helson counterexample demonstration", with(helson_opts, false), cmd_helson},
  };
}

int exit_code_of(const std::exception& e) {
  if (dynamic_cast<const PrecisionError*>(&e)) return 3;
  if (dynamic_cast<const PreconditionError*>(&e)) return 2;
  if (dynamic_cast<const nlohmann::json::exception*>(&e)) return 2;
  return 1;
}

}  // namespace

std::string sha256_hex(const std::string& bytes) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr);
  std::ostringstream s;
  for (unsigned int i = 0; i < len; ++i) s << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return s.str();
}

std::string file_sha256(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw PreconditionError("cannot read " + path);
  std::ostringstream s;
  s << f.rdbuf();
  return sha256_hex(s.str());
}

json read_manifest(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw PreconditionError("cannot read " + path);
  std::string first;
  std::getline(f, first);
  const std::string tag = "# manifest ";
  if (first.rfind(tag, 0) == 0) return json::parse(first.substr(tag.size()));
  std::ostringstream s;
  s << first << '\n' << f.rdbuf();
  const json doc = json::parse(s.str());
  if (!doc.contains("manifest")) throw PreconditionError(path + " has no manifest");
  return doc.at("manifest");
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Beurling generalized prime systems"};
  app.require_subcommand(1);
  std::map<std::string, Params> params;
  std::map<std::string, CLI::App*> subs;
  const std::vector<Command> all = commands();
  for (const Command& command : all) {
    CLI::App* sub = app.add_subcommand(command.name, command.help);
    for (const auto& [name, def, help] : command.options) {
      params[command.name][name] = def;
      sub->add_option("--" + name, params[command.name][name], help)->capture_default_str();
    }
    subs[command.name] = sub;
  }
  std::string manifest_path, replay_out;
  CLI::App* replay = app.add_subcommand("replay", "re-run the command recorded in an artifact");
  replay->add_option("--manifest", manifest_path, "artifact with embedded manifest")->required();
  replay->add_option("--out", replay_out, "output file (stdout when empty)");

  std::vector<std::string> argv_store{"beurling"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (std::string& a : argv_store) argv.push_back(a.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (replay->parsed()) {
      const json m = read_manifest(manifest_path);
      for (const auto& [file, digest] : m.at("input_digests").items())
        if (file_sha256(file) != digest.get<std::string>())
          throw PreconditionError("input " + file + " changed since the recorded run");
      if (m.at("library_version") != kLibraryVersion)
        err << "warning: artifact written by version " << m.at("library_version") << '\n';
      std::vector<std::string> again{m.at("command").get<std::string>()};
      for (const auto& [k, v] : m.at("parameters").items()) {
        again.push_back("--" + k);
        again.push_back(v.get<std::string>());
      }
      again.push_back("--timestamp");
      again.push_back(m.at("timestamp").get<std::string>());
      if (!replay_out.empty()) {
        again.push_back("--out");
        again.push_back(replay_out);
      }
      return run_cli(again, out, err);
    }
    for (const Command& command : all) {
      if (!subs[command.name]->parsed()) continue;
      Context ctx{command.name, params[command.name], json::object(), out, err};
      if (ctx.params.at("timestamp").empty()) ctx.params["timestamp"] = utc_now();
      command.run(ctx);
      return 0;
    }
  } catch (const OrderingUndecided& e) {
    err << "error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_of(e);
  }
  return 2;
}

}  // namespace beurling
