#pragma once

// JSON and CSV renderings of thermodynamic reports.

#include "souriau/verify.hpp"

#include <json.hpp>

#include <cstdio>
#include <optional>
#include <string>

namespace souriau::cli {

using nlohmann::json;

/// 17 significant digits, enough to read back the same double.
inline std::string num17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline json vec_json(const AlgVec& v) {
    json a = json::array();
    for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
    return a;
}

inline json mat_json(const AlgMat& m) {
    json a = json::array();
    for (int i = 0; i < m.rows(); ++i)
        for (int k = 0; k < m.cols(); ++k) a.push_back(m(i, k));
    return a;
}

struct ThermoOutput {
    std::string model;
    AlgVec beta;
    Verdict verdict = Verdict::diverged;
    std::string reason;
    ThermoReport report;
    std::optional<ThermoReport> closed_form;
};

struct Deviation {
    double P, logP, E_J, S, Gamma;
};

inline std::optional<Deviation> deviation(const ThermoOutput& o) {
    if (o.verdict != Verdict::inside || !o.closed_form) return std::nullopt;
    const ThermoReport& a = o.report;
    const ThermoReport& c = *o.closed_form;
    return Deviation{rel_err(a.P, c.P), rel_err(a.logP, c.logP), rel_err_vec(a.E_J, c.E_J), rel_err(a.S, c.S),
                     rel_err_vec(a.Gamma, c.Gamma)};
}

inline json report_json(const ThermoReport& r) {
    return {{"P", r.P}, {"logP", r.logP}, {"E_J", vec_json(r.E_J)}, {"S", r.S}, {"Gamma", mat_json(r.Gamma)}};
}

inline json to_json(const ThermoOutput& o) {
    json j;
    j["model"] = o.model;
    j["beta"] = vec_json(o.beta);
    const bool in = o.verdict == Verdict::inside;
    j["P"] = in ? json(o.report.P) : json(nullptr);
    j["logP"] = in ? json(o.report.logP) : json(nullptr);
    j["E_J"] = in ? vec_json(o.report.E_J) : json(nullptr);
    j["S"] = in ? json(o.report.S) : json(nullptr);
    j["Gamma"] = in ? mat_json(o.report.Gamma) : json(nullptr);
    j["converged"] = in && o.report.converged;
    j["est_rel_err"] = in ? json(o.report.est_rel_err) : json(nullptr);
    j["closed_form"] = in && o.closed_form ? report_json(*o.closed_form) : json(nullptr);
    if (const auto d = deviation(o))
        j["deviation"] = {{"P", d->P}, {"logP", d->logP}, {"E_J", d->E_J}, {"S", d->S}, {"Gamma", d->Gamma}};
    else
        j["deviation"] = nullptr;
    j["verdict"] = to_string(o.verdict);
    if (!in) j["reason"] = o.reason;
    return j;
}

/// One header line and one data row; absent values are empty fields.
inline std::string to_csv(const ThermoOutput& o) {
    const int n = int(o.beta.size());
    std::string head = "model,verdict,converged,est_rel_err", row;
    const auto col = [&](const std::string& h, const std::string& v) {
        head += "," + h;
        row += "," + v;
    };
    const bool in = o.verdict == Verdict::inside;
    row = o.model + "," + to_string(o.verdict) + "," + (in && o.report.converged ? "true" : "false") + "," +
          (in ? num17(o.report.est_rel_err) : "");
    const auto opt = [&](bool have, double v) { return have ? num17(v) : std::string(); };
    for (int i = 0; i < n; ++i) col("beta_" + std::to_string(i), num17(o.beta[i]));
    const auto block = [&](const std::string& prefix, bool have, const ThermoReport& r) {
        col(prefix + "P", opt(have, r.P));
        col(prefix + "logP", opt(have, r.logP));
        col(prefix + "S", opt(have, r.S));
        for (int i = 0; i < n; ++i) col(prefix + "E_J_" + std::to_string(i), opt(have, have ? r.E_J[i] : 0.0));
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k)
                col(prefix + "Gamma_" + std::to_string(i) + std::to_string(k), opt(have, have ? r.Gamma(i, k) : 0.0));
    };
    block("", in, o.report);
    const bool cf = in && o.closed_form.has_value();
    block("closed_", cf, cf ? *o.closed_form : ThermoReport{});
    const auto d = deviation(o);
    col("dev_P", opt(d.has_value(), d ? d->P : 0.0));
    col("dev_logP", opt(d.has_value(), d ? d->logP : 0.0));
    col("dev_E_J", opt(d.has_value(), d ? d->E_J : 0.0));
    col("dev_S", opt(d.has_value(), d ? d->S : 0.0));
    col("dev_Gamma", opt(d.has_value(), d ? d->Gamma : 0.0));
    return head + "\n" + row + "\n";
}

/// CSV of chart points with a '#' footer comparing the empirical mean of J with E_J.
inline std::string samples_csv(const GibbsModel& m, const std::vector<ChartPoint>& pts, const ThermoReport& r,
                               std::uint64_t seed) {
    std::string s = m.coord_names[0] + "," + m.coord_names[1] + "\n";
    if (pts.empty()) return s;
    AlgVec mean = AlgVec::Zero(m.dim_g);
    for (const ChartPoint& p : pts) {
        s += num17(p.a) + "," + num17(p.b) + "\n";
        mean += m.moment_map(p);
    }
    const double n = double(pts.size());
    mean /= n;
    const auto line = [&](const std::string& key, const AlgVec& v) {
        s += "# " + key;
        for (int i = 0; i < v.size(); ++i) s += "," + num17(v[i]);
        s += "\n";
    };
    AlgVec z(m.dim_g);
    for (int i = 0; i < m.dim_g; ++i) {
        const double sd = std::sqrt(r.Gamma(i, i) / n);
        z[i] = sd > 0.0 ? (mean[i] - r.E_J[i]) / sd : 0.0;
    }
    s += "# n," + std::to_string(pts.size()) + "\n# seed," + std::to_string(seed) + "\n";
    line("J_mean", mean);
    line("E_J", r.E_J);
    line("z_score", z);
    return s;
}

}  // namespace souriau::cli
