#pragma once

// Command-line front end: thermo, verify, sample.

#include "report.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <future>
#include <iostream>
#include <mutex>
#include <thread>

namespace souriau::cli {

enum ExitCode : int { ok = 0, usage = 1, diverged = 2 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string model;
    double R = 1.0;
    std::string beta_text;
    std::string format = "json";
    std::string out;
    std::size_t n = 1000;
    std::uint64_t seed = 1;
    QuadratureScheme quad;
};

inline AlgVec parse_beta(const std::string& text) {
    std::vector<double> v;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t comma = std::min(text.find(',', pos), text.size());
        const std::string tok = text.substr(pos, comma - pos);
        std::size_t used = 0;
        double x = 0.0;
        try {
            x = std::stod(tok, &used);
        } catch (const std::exception&) {
            throw UsageError("malformed beta '" + text + "'");
        }
        if (used != tok.size() || !std::isfinite(x)) throw UsageError("malformed beta '" + text + "'");
        v.push_back(x);
        pos = comma + 1;
    }
    AlgVec b(Eigen::Index(v.size()));
    if (v.size() > std::size_t(max_algebra_dim)) throw UsageError("beta has too many components");
    for (std::size_t i = 0; i < v.size(); ++i) b[Eigen::Index(i)] = v[i];
    return b;
}

/// SOURIAU_GIBBS_THREADS, or the hardware concurrency when unset.
inline unsigned thread_cap() {
    const char* env = std::getenv("SOURIAU_GIBBS_THREADS");
    if (env && *env) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (*end != '\0' || v < 1) throw UsageError("SOURIAU_GIBBS_THREADS must be a positive integer");
        return unsigned(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

inline void emit(const RunConfig& cfg, const std::string& text, std::ostream& out) {
    if (cfg.out.empty()) {
        out << text;
        return;
    }
    std::ofstream f(cfg.out, std::ios::binary);
    if (!f) throw UsageError("cannot open '" + cfg.out + "' for writing");
    f << text;
}

inline GibbsModel model_of(const RunConfig& cfg) {
    const auto& ids = model_ids();
    if (std::find(ids.begin(), ids.end(), cfg.model) == ids.end()) throw UsageError("unknown model '" + cfg.model + "'");
    return make_model(cfg.model, cfg.R);
}

inline int cmd_thermo(const RunConfig& cfg, std::ostream& out) {
    const GibbsModel m = model_of(cfg);
    const AlgVec beta = parse_beta(cfg.beta_text);
    m.check_beta(beta);
    const Evaluation ev = evaluate(m, beta, cfg.quad);
    ThermoOutput o{m.name, beta, ev.verdict, ev.reason, ev.report, std::nullopt};
    if (ev.verdict == Verdict::inside && m.closed_form) o.closed_form = m.closed_form(beta);
    emit(cfg, cfg.format == "csv" ? to_csv(o) : to_json(o).dump(2) + "\n", out);
    return ev.verdict == Verdict::inside ? ok : diverged;
}

inline int cmd_sample(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    const GibbsModel m = model_of(cfg);
    const AlgVec beta = parse_beta(cfg.beta_text);
    m.check_beta(beta);
    if (!m.sampler) throw UsageError("model '" + cfg.model + "' has no sampler");
    const Evaluation ev = evaluate(m, beta, cfg.quad);
    if (ev.verdict != Verdict::inside) {
        err << "diverged: " << ev.reason << "\n";
        return diverged;
    }
    const std::vector<ChartPoint> pts = cfg.n ? m.sampler(beta, cfg.n, cfg.seed) : std::vector<ChartPoint>{};
    emit(cfg, samples_csv(m, pts, ev.report, cfg.seed), out);
    return ok;
}

inline std::string suite_text(const SuiteReport& r) {
    std::ostringstream o;
    o << "== " << r.suite << "\n";
    for (const CheckResult& c : r.checks)
        o << (c.pass ? "  PASS  " : "  FAIL  ") << c.name << "  (" << num17(c.value) << " <= " << num17(c.tol) << ")\n";
    for (const Finding& f : r.findings) {
        o << "  FINDING  " << f.title << "\n"
          << "    printed:  " << f.printed << "\n"
          << "    computed: " << f.computed << "\n"
          << "    deviation: " << num17(f.deviation) << " (" << f.measure << ")\n";
    }
    if (!r.error.empty()) o << "  ERROR  " << r.error << "\n";
    const std::size_t passed = std::size_t(
        std::count_if(r.checks.begin(), r.checks.end(), [](const CheckResult& c) { return c.pass; }));
    o << "  " << r.suite << ": " << passed << "/" << r.checks.size() << " checks passed"
      << (r.findings.empty() ? "" : ", " + std::to_string(r.findings.size()) + " findings") << "\n";
    return o.str();
}

inline int cmd_verify(const std::string& suite, const RunConfig& cfg, std::ostream& out) {
    std::vector<std::string> names;
    if (suite == "all")
        names = suite_names();
    else if (std::find(suite_names().begin(), suite_names().end(), suite) != suite_names().end())
        names = {suite};
    else
        throw UsageError("unknown suite '" + suite + "'");

    std::vector<SuiteReport> reports(names.size());
    const unsigned cap = thread_cap();
    if (cap <= 1 || names.size() == 1) {
        for (std::size_t i = 0; i < names.size(); ++i) reports[i] = run_suite(names[i]);
    } else {
        // at most `cap` suites in flight
        std::vector<std::future<SuiteReport>> running;
        std::size_t next = 0, done = 0;
        while (done < names.size()) {
            while (next < names.size() && running.size() < cap)
                running.push_back(std::async(std::launch::async, run_suite, names[next++]));
            reports[done] = running.front().get();
            running.erase(running.begin());
            ++done;
        }
    }

    bool all = true;
    std::string text;
    json j = json::array();
    for (const SuiteReport& r : reports) {
        all = all && r.passed();
        text += suite_text(r);
        json checks = json::array(), findings = json::array();
        for (const CheckResult& c : r.checks)
            checks.push_back({{"name", c.name}, {"value", c.value}, {"tol", c.tol}, {"pass", c.pass}});
        for (const Finding& f : r.findings)
            findings.push_back({{"title", f.title},
                                {"printed", f.printed},
                                {"computed", f.computed},
                                {"deviation", f.deviation},
                                {"measure", f.measure}});
        j.push_back({{"suite", r.suite}, {"passed", r.passed()}, {"checks", checks}, {"findings", findings},
                     {"error", r.error}});
    }
    text += all ? "verify: all suites passed\n" : "verify: FAILED\n";
    emit(cfg, cfg.format == "json" ? j.dump(2) + "\n" : text, out);
    return all ? ok : usage;
}

inline void add_model_options(CLI::App* sub, RunConfig& cfg) {
    sub->add_option("--model", cfg.model, "model id")->required()->check(CLI::IsMember(model_ids()));
    sub->add_option("--R", cfg.R, "orbit radius (orbit and hyperbolic models)");
    sub->add_option("--beta", cfg.beta_text, "comma-separated coefficients of beta")->required();
    sub->add_option("--out", cfg.out, "output file (default: stdout)");
    sub->add_option("--nodes-per-panel", cfg.quad.nodes_per_panel, "Gauss-Legendre order: 16, 32, 64 or 128");
    sub->add_option("--panels", cfg.quad.panels_per_segment, "panels per truncation segment");
    sub->add_option("--phi-nodes", cfg.quad.phi_nodes, "initial periodic nodes");
    sub->add_option("--max-phi-nodes", cfg.quad.max_phi_nodes, "periodic node cap");
    sub->add_option("--rel-tol", cfg.quad.rel_tol, "truncation increment tolerance");
    sub->add_option("--max-doublings", cfg.quad.max_doublings, "truncation doubling cap");
}

/// Runs the CLI; returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    CLI::App app{"Gibbs states of Hamiltonian Lie group actions on 2-D symplectic manifolds", "souriau_gibbs"};
    app.require_subcommand(1);
    RunConfig cfg;
    std::string suite;

    CLI::App* thermo_cmd = app.add_subcommand("thermo", "partition function, mean moment, entropy and metric");
    add_model_options(thermo_cmd, cfg);
    thermo_cmd->add_option("--format", cfg.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

    CLI::App* verify_cmd = app.add_subcommand("verify", "run invariant suites");
    std::vector<std::string> suites = suite_names();
    suites.push_back("all");
    verify_cmd->add_option("suite", suite, "suite name or 'all'")->required()->check(CLI::IsMember(suites));
    cfg.format = "text";
    verify_cmd->add_option("--format", cfg.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    verify_cmd->add_option("--out", cfg.out, "output file (default: stdout)");

    CLI::App* sample_cmd = app.add_subcommand("sample", "draw points from a Gibbs state");
    add_model_options(sample_cmd, cfg);
    sample_cmd->add_option("--n", cfg.n, "number of points");
    sample_cmd->add_option("--seed", cfg.seed, "random seed");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return usage;
    }
    if (*thermo_cmd && cfg.format == "text") cfg.format = "json";

    try {
        if (*thermo_cmd) return cmd_thermo(cfg, out);
        if (*sample_cmd) return cmd_sample(cfg, out, err);
        return cmd_verify(suite, cfg, out);
    } catch (const DivergenceError& e) {
        err << "diverged: " << e.what() << "\n";
        return diverged;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return usage;
    }
}

}  // namespace souriau::cli
