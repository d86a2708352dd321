#include "sarg/cli.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>

#include "sarg/argzeros.hpp"
#include "sarg/audit.hpp"
#include "sarg/characters.hpp"
#include "sarg/config.hpp"
#include "sarg/error.hpp"
#include "sarg/explicit_formula.hpp"
#include "sarg/format.hpp"
#include "sarg/lfunc.hpp"

#ifndef SARG_VERSION
#define SARG_VERSION "dev"
#endif

namespace sarg {

namespace {

using nlohmann::json;

struct UsageError : Error {
  using Error::Error;
};

struct Args {
  std::vector<int> q;
  std::string chi;
  std::optional<double> t, sigma, x, T, H;
  std::optional<double> t_min, t_max, step;
  std::string out;
  std::string format;
  std::string zero_cache;
  std::optional<std::uint64_t> seed;
  std::string config;
  std::optional<unsigned> threads;
  std::string method;
  int q_positional = 0;
};

void write_atomic(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw Error("cannot write " + tmp.string());
    f << text;
    if (!f.flush()) throw Error("write failed for " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

json complex_json(std::complex<double> z) { return {fmt12(z.real()), fmt12(z.imag())}; }

json report_json(const ResidualReport& r) {
  json j;
  j["check"] = r.check;
  j["character"] = r.character;
  json inputs = json::object();
  for (const auto& [k, v] : r.inputs) inputs[k] = fmt12(v);
  j["inputs"] = inputs;
  j["value"] = complex_json(r.value);
  j["residual"] = fmt12(r.residual);
  j["tail_estimate"] = fmt12(r.tail_estimate);
  j["threshold"] = fmt12(r.threshold);
  json margins = json::object();
  for (const auto& [k, v] : r.margins) margins[k] = fmt12(v);
  j["margins"] = margins;
  j["pass"] = r.pass;
  return j;
}

class Runner {
 public:
  Runner(Args a, RunConfig c, std::ostream& out) : a_(std::move(a)), cfg_(std::move(c)), out_(out) {}

  json envelope_json(json body) const {
    body["version"] = SARG_VERSION;
    body["config"] = cfg_.to_json();
    return body;
  }

  DirichletCharacter character() const {
    if (a_.chi.empty()) throw UsageError("--chi is required");
    auto chi = parse_character_label(a_.chi);
    if (!a_.q.empty() && (a_.q.size() != 1 || a_.q.front() != chi.modulus())) {
      throw UsageError("--q does not match the modulus of --chi " + a_.chi);
    }
    return chi;
  }

  double need(const std::optional<double>& v, const char* flag) const {
    if (!v) throw UsageError(std::string(flag) + " is required");
    return *v;
  }

  ZeroSet zeros_for(const DirichletCharacter& chi) const {
    std::filesystem::create_directories(cfg_.zero_cache);
    return cached_zero_set(chi, cfg_.zero_height, cfg_.zero_cache);
  }

  int emit_check(const ResidualReport& r) {
    out_ << envelope_json(report_json(r)).dump(2) << '\n' << (r.pass ? "PASS" : "FAIL") << '\n';
    return r.pass ? kExitOk : kExitFail;
  }

  int characters_cmd() {
    int q = a_.q_positional;
    if (!q && a_.q.size() == 1) q = a_.q.front();
    if (!q) throw UsageError("characters needs a modulus");
    out_ << "label,conductor,parity,primitive,real\n";
    for (const auto& chi : characters(q)) {
      out_ << chi.label() << ',' << chi.conductor() << ',' << chi.parity() << ','
           << (chi.is_primitive() ? "primitive" : "-") << ',' << (chi.is_real() ? "real" : "complex") << '\n';
    }
    return kExitOk;
  }

  int eval_cmd() {
    const auto chi = character();
    const ComplexPoint s{a_.sigma.value_or(0.5), need(a_.t, "--t")};
    const auto l = l_value(s, chi, EmConfig::tuned_for(s, cfg_.l_target));
    json j = {{"character", chi.label()}, {"sigma", fmt12(s.sigma)}, {"t", fmt12(s.t)}, {"L", complex_json(l)}};
    if (s.sigma == 0.5) j["Z"] = fmt12(hardy_z(s.t, chi));
    out_ << envelope_json(j).dump(2) << '\n';
    return kExitOk;
  }

  int s_cmd() {
    const auto chi = character();
    TraceOptions opts;
    opts.l_target = cfg_.l_target;
    const auto tr = s_value(need(a_.t, "--t"), chi, opts);
    out_ << "S(" << fmt12(tr.t) << ", " << chi.label() << ") = " << fmt12(tr.s_value) << '\n';
    out_ << "steps " << tr.samples.size() << " evaluations " << tr.evaluations
         << (tr.averaged ? " averaged" : "") << '\n';
    return kExitOk;
  }

  int zeros_cmd() {
    const auto chi = character();
    const double height = a_.T.value_or(cfg_.zero_height);
    ZeroList z;
    if (!a_.out.empty()) {
      z = find_zeros(chi, height);
      write_atomic(a_.out, format_zero_list(z));
    } else {
      std::filesystem::create_directories(cfg_.zero_cache);
      z = cached_zeros(chi, height, cfg_.zero_cache);
    }
    out_ << "# " << chi.label() << " T=" << fmt12(height) << " count=" << z.ordinates.size()
         << (z.certified() ? " certified" : " uncertified") << '\n';
    for (double g : z.ordinates) out_ << fmt12(g) << '\n';
    if (!z.certified()) out_ << "FAIL " << z.diagnostic << '\n';
    return z.certified() ? kExitOk : kExitFail;
  }

  int lemma2_cmd() {
    const auto chi = character();
    const double x = need(a_.x, "--x");
    const double t = need(a_.t, "--t");
    const double sigma = a_.sigma.value_or(0.5 + 1.0 / std::log(x));
    return emit_check(verify_lemma2({sigma, t}, chi, x, zeros_for(chi), cfg_.zero_window));
  }

  int eq3_cmd() {
    const auto chi = character();
    const double t = need(a_.t, "--t");
    bool clamped = false;
    const double x = a_.x ? *a_.x : default_audit_x(chi.modulus(), t, &clamped);
    return emit_check(verify_eq3(t, chi, x, zeros_for(chi), cfg_.zero_window));
  }

  int lemma1_cmd() {
    const auto chi = character();
    const double x = need(a_.x, "--x");
    const double t = need(a_.t, "--t");
    const double sigma1 = 0.5 + 1.0 / std::log(x);
    double sigma = 0.0;
    if (a_.sigma) {
      sigma = *a_.sigma;
    } else {
      std::mt19937_64 rng(cfg_.seed);
      sigma = sigma1 + 2.0 * std::uniform_real_distribution<double>(0.0, 1.0)(rng);
    }
    return emit_check(lemma1_inequality_check({sigma, t}, chi, x, zeros_for(chi), cfg_.zero_window));
  }

  int decomp_cmd() {
    const auto chi = character();
    const double t = need(a_.t, "--t");
    const double x = a_.x ? *a_.x : default_audit_x(chi.modulus(), t);
    const auto d = m_decomposition(t, chi, x);
    const bool pass = d.identity_residual() < 1e-6;
    json j = {{"character", d.label},       {"t", fmt12(d.t)},
              {"x", fmt12(d.x)},            {"sigma1", fmt12(d.sigma1)},
              {"M1", complex_json(d.m1)},   {"M2", complex_json(d.m2)},
              {"M3", complex_json(d.m3)},   {"S_from_parts", fmt12(d.s_from_parts)},
              {"S_direct", fmt12(d.s_direct)}, {"residual", fmt12(d.identity_residual())},
              {"pass", pass}};
    out_ << envelope_json(j).dump(2) << '\n' << (pass ? "PASS" : "FAIL") << '\n';
    return pass ? kExitOk : kExitFail;
  }

  int constant_cmd() {
    const double c = theorem_constant();
    const bool pass = c < kRoundedConstant;
    out_ << "C = " << fmt12(c) << '\n' << (pass ? "PASS" : "FAIL") << " C < 0.804\n";
    return pass ? kExitOk : kExitFail;
  }

  int audit_cmd() {
    AuditGrid grid = cfg_.grid;
    if (!a_.q.empty()) grid.moduli = a_.q;
    if (a_.t_min) grid.t_min = *a_.t_min;
    if (a_.t_max) grid.t_max = *a_.t_max;
    if (a_.step) grid.step = *a_.step;
    try {
      grid.validate();
    } catch (const DomainError& e) {
      throw UsageError(e.what());
    }
    AuditOptions opts;
    opts.method = cfg_.audit_method == "direct" ? AuditMethod::direct : AuditMethod::continuation;
    opts.checkpoints = cfg_.audit_checkpoints;
    opts.threads = cfg_.threads;
    opts.trace.l_target = cfg_.l_target;
    std::filesystem::create_directories(cfg_.zero_cache);
    opts.zero_cache = cfg_.zero_cache;

    const auto report = audit_scan(grid, opts);
    json effective = cfg_.to_json();
    effective["grid"] = {{"moduli", grid.moduli}, {"t_min", grid.t_min}, {"t_max", grid.t_max}, {"step", grid.step}};
    const json summary = report.summary_json(effective);
    if (!a_.out.empty()) {
      if (cfg_.format == "csv") {
        write_atomic(a_.out, report.csv());
        write_atomic(a_.out + ".summary.json", summary.dump(2) + "\n");
      } else {
        json rows = json::array();
        for (const auto& r : report.rows) rows.push_back(row_to_json(r));
        write_atomic(a_.out, json{{"summary", summary}, {"rows", rows}}.dump(2) + "\n");
      }
    }
    out_ << summary.dump(2) << '\n';
    const bool pass = report.summary.failed == 0 && report.summary.max_ratio < 1.0;
    out_ << (pass ? "PASS" : "FAIL") << " max ratio " << fmt12(report.summary.max_ratio) << '\n';
    return pass ? kExitOk : kExitFail;
  }

 private:
  Args a_;
  RunConfig cfg_;
  std::ostream& out_;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            const std::map<std::string, std::string>& env) {
  CLI::App app{"Numerical experiments on arg L(1/2+it, chi) for Dirichlet L-functions"};
  app.set_version_flag("--version", SARG_VERSION);
  app.require_subcommand(1);
  app.fallthrough();
  Args a;
  auto numeric = [](CLI::App* sub, const char* name, std::optional<double>& slot, const char* help) {
    sub->add_option_function<double>(name, [&slot](double v) { slot = v; }, help);
  };
  app.add_option("--config", a.config, "JSON configuration file");
  app.add_option("--zero-cache", a.zero_cache, "zero-cache directory");
  app.add_option_function<std::uint64_t>("--seed", [&a](std::uint64_t v) { a.seed = v; }, "sampling seed");
  app.add_option("--format", a.format, "report format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", a.out, "output path");
  app.add_option("--q", a.q, "modulus (audit: comma-separated list)")->delimiter(',');
  app.add_option("--chi", a.chi, "character label, e.g. 5.2");
  numeric(&app, "--t", a.t, "height t");
  numeric(&app, "--sigma", a.sigma, "real part");
  numeric(&app, "--x", a.x, "explicit-formula parameter x");
  numeric(&app, "--T", a.T, "zero height");
  numeric(&app, "--H", a.H, "zero window");
  numeric(&app, "--t-min", a.t_min, "audit grid start");
  numeric(&app, "--t-max", a.t_max, "audit grid end");
  numeric(&app, "--step", a.step, "audit grid step");
  app.add_option_function<unsigned>("--threads", [&a](unsigned v) { a.threads = v; }, "audit worker threads");
  app.add_option("--method", a.method, "audit method")->check(CLI::IsMember({"continuation", "direct"}));

  auto* characters_sub = app.add_subcommand("characters", "list the characters of a modulus");
  characters_sub->add_option("modulus", a.q_positional, "modulus q");
  app.add_subcommand("eval", "L(s, chi) and Z(t, chi)");
  app.add_subcommand("s", "S(t, chi) by continuous variation");
  app.add_subcommand("zeros", "zeros on the critical line up to --T");
  app.add_subcommand("lemma2", "explicit-formula identity for L'/L");
  app.add_subcommand("eq3", "Re L'/L(sigma_1 + it) against the zero-kernel sum");
  app.add_subcommand("lemma1", "term-wise zero-sum inequality");
  app.add_subcommand("decomp", "three-part split of S(t, chi)");
  app.add_subcommand("constant", "closed-form constant of the bound");
  app.add_subcommand("audit", "scan |S| / envelope over a grid");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << SARG_VERSION << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n' << app.help();
    return kExitUsage;
  }

  try {
    RunConfig cfg = parse_config(a.config.empty() ? std::nullopt : std::optional<std::filesystem::path>(a.config), env);
    if (!a.zero_cache.empty()) cfg.zero_cache = a.zero_cache;
    if (a.seed) cfg.seed = *a.seed;
    if (!a.format.empty()) cfg.format = a.format;
    if (a.H) cfg.zero_window = *a.H;
    if (a.T) cfg.zero_height = *a.T;
    if (a.threads) cfg.threads = *a.threads;
    if (!a.method.empty()) cfg.audit_method = a.method;
    cfg.validate();

    const std::string name = app.get_subcommands().front()->get_name();
    Runner run(std::move(a), std::move(cfg), out);
    if (name == "characters") return run.characters_cmd();
    if (name == "eval") return run.eval_cmd();
    if (name == "s") return run.s_cmd();
    if (name == "zeros") return run.zeros_cmd();
    if (name == "lemma2") return run.lemma2_cmd();
    if (name == "eq3") return run.eq3_cmd();
    if (name == "lemma1") return run.lemma1_cmd();
    if (name == "decomp") return run.decomp_cmd();
    if (name == "constant") return run.constant_cmd();
    return run.audit_cmd();
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const DomainError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFail;
  }
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::map<std::string, std::string> env;
  for (const char* name : {"SARG_ZERO_CACHE", "SARG_SEED"}) {
    if (const char* v = std::getenv(name)) env[name] = v;
  }
  return run_cli(args, out, err, env);
}

}  // namespace sarg
