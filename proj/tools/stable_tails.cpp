// Command-line front end: tail bounds, samplers, Monte Carlo verification,
// densities and the Gaussian/Pareto crossover for symmetric and totally
// asymmetric stable laws.
//
// Exit codes: 0 success, 1 verification or numeric failure, 2 usage error.

#include <cmath>
#include <complex>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "stable_tails/analytic.hpp"
#include "stable_tails/bounds.hpp"
#include "stable_tails/params.hpp"
#include "stable_tails/series.hpp"
#include "stable_tails/verify.hpp"

namespace st = stable_tails;
using nlohmann::json;

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct Output {
    std::string format = "csv";
    std::string path;  // empty = stdout

    void write(const std::string& text) const {
        if (path.empty()) {
            std::cout << text;
            return;
        }
        std::ofstream os(path, std::ios::binary);
        if (!os) throw std::invalid_argument("cannot open output path: " + path);
        os << text;
    }
};

std::vector<double> parse_grid(const std::string& spec) {
    // log:lo:hi:count or lin:lo:hi:count
    std::vector<std::string> parts;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 4 || (parts[0] != "log" && parts[0] != "lin")) {
        throw std::invalid_argument("grid must be log:lo:hi:count or lin:lo:hi:count");
    }
    double lo = std::stod(parts[1]), hi = std::stod(parts[2]);
    int count = std::stoi(parts[3]);
    if (count < 1 || !(lo > 0.0) || !(hi >= lo)) {
        throw std::invalid_argument("grid endpoints must be positive and ordered");
    }
    std::vector<double> g;
    for (int i = 0; i < count; ++i) {
        double w = count == 1 ? 0.0 : static_cast<double>(i) / (count - 1);
        g.push_back(parts[0] == "log" ? lo * std::pow(hi / lo, w) : lo + (hi - lo) * w);
    }
    return g;
}

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        out += c;
        if (c == '"') out += '"';
    }
    out += '"';
    return out;
}

// Specs applicable to a (alpha, beta) pair, X-level and component-level.
std::vector<const st::TailBoundSpec*> applicable_specs(double alpha, double beta) {
    std::vector<const st::TailBoundSpec*> out;
    for (const auto* s : st::bound_registry()) {
        bool match = false;
        switch (s->law()) {
            case st::BoundLaw::asym01: match = beta == 1.0 && alpha < 1.0; break;
            case st::BoundLaw::sym01: match = beta == 0.0; break;
            case st::BoundLaw::sym12:
            case st::BoundLaw::xupper_sym:
            case st::BoundLaw::x1_sym: match = beta == 0.0 && alpha > 1.0; break;
            case st::BoundLaw::asym12:
            case st::BoundLaw::xupper_asym:
            case st::BoundLaw::x1_asym: match = beta == 1.0 && alpha > 1.0; break;
        }
        if (s->id() == "sym01.lower" && alpha > 1.0) match = false;  // = sym12.large.lower
        if (match) out.push_back(s);
    }
    return out;
}

// Default verification grid per spec: regime entry to 100x entry for the
// unbounded regimes (log, 20 points); a linear sweep across bounded windows;
// a short log grid past the entry for the remaining ones.
std::vector<double> default_grid(const st::TailBoundSpec& spec, double alpha) {
    double d = 2.0 - alpha;
    auto logspan = [](double lo, double hi, int k) {
        std::vector<double> g;
        for (int i = 0; i < k; ++i) g.push_back(lo * std::pow(hi / lo, i / double(k - 1)));
        return g;
    };
    auto linspan = [](double lo, double hi, int k) {
        std::vector<double> g;
        for (int i = 0; i < k; ++i) g.push_back(lo + (hi - lo) * i / double(k - 1));
        return g;
    };
    const std::string& id = spec.id();
    if (id.rfind("asym01.upper", 0) == 0) {
        double e = std::pow(1.0 / alpha, 1.0 / alpha);
        return logspan(e, 100.0 * e, 20);
    }
    if (id.rfind("asym01.lower", 0) == 0) return logspan(1.0, 100.0, 20);
    if (id.rfind("sym01.upper", 0) == 0) {
        double e = std::pow(4.0 / alpha, 1.0 / alpha);
        return logspan(e, 100.0 * e, 20);
    }
    if (id.rfind("sym01.lower", 0) == 0) {
        double e = alpha < 1.0 ? std::pow(4.0 / alpha, 1.0 / alpha) : 2.0 / std::sqrt(d);
        return logspan(e, 100.0 * e, 20);
    }
    if (alpha <= 1.0) return logspan(1.0, 100.0, 20);
    if (id.find(".mid.") != std::string::npos ||
        id == "lemma.asym12.x1.right.lower" || id == "lemma.asym12.x1.left.lower" ||
        id == "lemma.sym12.x1.lower") {
        double lo = 2.0 / std::sqrt(d);
        double hi = (id.rfind("asym12.right.mid", 0) == 0 ||
                     id == "lemma.asym12.x1.right.lower")
                        ? 1.0 / d
                        : 2.0 / d;
        if (!(lo <= hi)) return {lo};  // empty regime; reported as refused
        return linspan(lo, hi, 6);
    }
    if (id.find(".big.") != std::string::npos) return logspan(1.0 / d, 4.0 / d, 6);
    if (id.find(".large.") != std::string::npos || id.find(".farleft.") != std::string::npos) {
        return logspan(2.0 / d, 4.0 / d, 6);
    }
    if (id == "lemma.asym12.x1.right.upper") return linspan(0.0, 1.0 / d, 6);
    if (id == "lemma.asym12.x1.left.upper" || id == "lemma.sym12.x1.upper") {
        return linspan(0.0, 2.0 / d, 6);
    }
    if (id.rfind("lemma.", 0) == 0) return logspan(1.0, 8.0, 6);
    return logspan(1.0, 100.0, 20);
}

int cmd_bounds(double alpha, double beta, const std::vector<double>& grid,
               std::optional<double> theta, const Output& out) {
    auto specs = applicable_specs(alpha, beta);
    if (specs.empty()) throw std::invalid_argument("no bounds apply to this (alpha, beta)");
    std::ostringstream canon;
    canon << "bounds|" << alpha << '|' << beta;
    for (double y : grid) canon << '|' << y;
    std::string hash = st::config_hash(canon.str());

    std::vector<st::BoundEvaluation> rows;
    for (const auto* s : specs) {
        for (double y : grid) rows.push_back(s->evaluate(alpha, y, theta));
    }
    if (out.format == "json") {
        json j;
        j["schema"] = "stable-tails/bounds/v1";
        j["alpha"] = alpha;
        j["beta"] = beta;
        j["config_hash"] = hash;
        json arr = json::array();
        for (const auto& r : rows) {
            json q;
            q["spec_id"] = r.spec_id;
            q["y"] = r.y;
            q["valid"] = r.valid;
            q["regime"] = r.regime;
            q["side"] = st::to_string(r.side);
            q["direction"] = st::to_string(r.direction);
            q["law"] = st::to_string(r.law);
            if (r.valid) {
                q["threshold"] = r.threshold;
                q["bound"] = r.bound_value;
                q["raw_bound"] = r.raw_value;
                q["vacuous"] = r.vacuous;
            } else {
                q["refusal"] = r.refusal;
            }
            arr.push_back(std::move(q));
        }
        j["rows"] = std::move(arr);
        out.write(j.dump(2) + "\n");
    } else {
        std::ostringstream os;
        os << "spec_id,law,regime,side,direction,alpha,y,valid,vacuous,threshold,bound,"
              "raw_bound,refusal,config_hash\r\n";
        for (const auto& r : rows) {
            os << r.spec_id << ',' << st::to_string(r.law) << ',' << r.regime << ','
               << st::to_string(r.side) << ',' << st::to_string(r.direction) << ','
               << fmt(alpha) << ',' << fmt(r.y) << ',' << (r.valid ? "true" : "false") << ','
               << (r.vacuous ? "true" : "false") << ',';
            if (r.valid) {
                os << fmt(r.threshold) << ',' << fmt(r.bound_value) << ','
                   << fmt(r.raw_value);
            } else {
                os << ",,";
            }
            os << ',' << csv_escape(r.refusal) << ',' << hash << "\r\n";
        }
        out.write(os.str());
    }
    return 0;
}

int cmd_sample(double alpha, double beta, const std::string& method, std::uint64_t n,
               std::uint64_t seed, const st::SeriesConfig& cfg, const Output& out) {
    st::SamplerSpec spec{st::SourceLaw::sym_series, alpha, beta, 0.0, cfg};
    if (method == "cms") {
        spec.law = st::SourceLaw::cms;
    } else if (method == "xupper") {
        spec.law = beta == 0.0 ? st::SourceLaw::xupper_sym : st::SourceLaw::xupper_asym;
    } else if (method == "series") {
        if (beta == 0.0) {
            spec.law = st::SourceLaw::sym_series;
        } else if (alpha < 1.0) {
            spec.law = st::SourceLaw::asym01_series;
        } else {
            spec.law = st::SourceLaw::asym12_series;
        }
    } else {
        throw std::invalid_argument("method must be series, cms or xupper");
    }
    std::ostringstream canon;
    canon << "sample|" << alpha << '|' << beta << '|' << method << '|' << n << '|' << seed
          << '|' << cfg.tail_tolerance << '|' << cfg.max_terms << '|' << cfg.compensate;
    std::string hash = st::config_hash(canon.str());
    std::vector<double> draws = st::draw_batch(spec, n, seed);
    if (out.format == "json") {
        json j;
        j["schema"] = "stable-tails/sample/v1";
        j["alpha"] = alpha;
        j["beta"] = beta;
        j["method"] = method;
        j["seed"] = seed;
        j["config_hash"] = hash;
        j["values"] = draws;
        out.write(j.dump(2) + "\n");
    } else {
        std::ostringstream os;
        os << "value,config_hash\r\n";
        for (double d : draws) os << fmt(d) << ',' << hash << "\r\n";
        out.write(os.str());
    }
    return 0;
}

int cmd_verify(const std::vector<std::string>& spec_ids, double alpha,
               const std::vector<double>& grid, std::uint64_t n, double confidence,
               std::uint64_t seed, double debug_scale, std::optional<double> theta,
               const st::SeriesConfig& cfg, const Output& out) {
    std::vector<st::VerificationReport> reports;
    for (const auto& id : spec_ids) {
        const st::TailBoundSpec* spec = st::find_bound_spec(id);
        if (spec == nullptr) throw std::invalid_argument("unknown bound spec id: " + id);
        std::vector<double> g = grid.empty() ? default_grid(*spec, alpha) : grid;
        reports.push_back(
            st::verify_bound(id, alpha, g, n, confidence, seed, debug_scale, theta, &cfg));
    }
    bool any_fail = false;
    std::uint64_t pass = 0, fail = 0, vac = 0, inc = 0, ref = 0;
    for (const auto& r : reports) {
        any_fail |= r.any_fail();
        pass += r.count(st::Verdict::pass);
        fail += r.count(st::Verdict::fail);
        vac += r.count(st::Verdict::vacuous);
        inc += r.count(st::Verdict::inconclusive);
        ref += r.count(st::Verdict::refused);
    }
    if (out.format == "json") {
        json j;
        j["schema"] = "stable-tails/verify-report/v1";
        json arr = json::array();
        for (const auto& r : reports) arr.push_back(json::parse(r.to_json()));
        j["reports"] = std::move(arr);
        j["summary"] = {{"pass", pass},
                        {"fail", fail},
                        {"vacuous", vac},
                        {"inconclusive", inc},
                        {"refused", ref}};
        out.write(j.dump(2) + "\n");
    } else {
        std::ostringstream os;
        bool first = true;
        for (const auto& r : reports) {
            std::string csv = r.to_csv();
            if (!first) csv = csv.substr(csv.find("\r\n") + 2);  // drop repeated header
            os << csv;
            first = false;
        }
        out.write(os.str());
    }
    std::cerr << "verify: pass=" << pass << " fail=" << fail << " vacuous=" << vac
              << " inconclusive=" << inc << " refused=" << ref << "\n";
    return any_fail ? 1 : 0;
}

int cmd_crossover(const std::vector<double>& alphas, double A, double B, double kappa,
                  const Output& out) {
    std::ostringstream canon;
    canon << "crossover|" << A << '|' << B << '|' << kappa;
    for (double a : alphas) canon << '|' << a;
    std::string hash = st::config_hash(canon.str());
    json arr = json::array();
    std::ostringstream os;
    os << "alpha,delta,y_star,reduced_root,bracket_lo,bracket_hi,reference_scale,"
          "bracket_guaranteed,config_hash\r\n";
    for (double a : alphas) {
        if (!(2.0 - a < 1.0 / 2.718281828459045)) {
            std::cerr << "warning: alpha = " << a
                      << " has 2-alpha >= 1/e; the two-root bracket guarantee is void\n";
        }
        auto r = st::crossover(a, A, B, kappa);
        os << fmt(a) << ',' << fmt(2.0 - a) << ',' << fmt(r.y_star) << ','
           << fmt(r.reduced_root) << ',' << fmt(r.bracket_lo) << ',' << fmt(r.bracket_hi)
           << ',' << fmt(r.reference_scale) << ','
           << (r.bracket_guaranteed ? "true" : "false") << ',' << hash << "\r\n";
        arr.push_back({{"alpha", a},
                       {"delta", 2.0 - a},
                       {"y_star", r.y_star},
                       {"reduced_root", r.reduced_root},
                       {"bracket_lo", r.bracket_lo},
                       {"bracket_hi", r.bracket_hi},
                       {"reference_scale", r.reference_scale},
                       {"bracket_guaranteed", r.bracket_guaranteed}});
    }
    if (out.format == "json") {
        json j;
        j["schema"] = "stable-tails/crossover/v1";
        j["pareto_coeff"] = A;
        j["gauss_coeff"] = B;
        j["kappa"] = kappa;
        j["config_hash"] = hash;
        j["rows"] = std::move(arr);
        out.write(j.dump(2) + "\n");
    } else {
        out.write(os.str());
    }
    return 0;
}

int cmd_density(double alpha, const std::vector<double>& grid, const Output& out) {
    // sigma = 1 normalization: CF exp(-|t|^alpha)
    double c = 0.5 / st::one_minus_cos_integral(alpha);
    st::LevyCanonical canon{alpha, c, c};
    std::ostringstream canonstr;
    canonstr << "density|" << alpha;
    for (double x : grid) canonstr << '|' << x;
    std::string hash = st::config_hash(canonstr.str());

    struct Row {
        double x, series, inversion, rel;
        bool converged;
        std::string note;
    };
    std::vector<Row> rows;
    for (double x : grid) {
        Row r{x, std::nan(""), std::nan(""), std::nan(""), false, ""};
        r.inversion = st::density_inversion(canon, x);
        try {
            auto sv = st::density_series({alpha}, x);
            r.series = sv.value;
            r.converged = sv.converged;
            r.rel = std::abs(sv.value - r.inversion) / std::abs(r.inversion);
        } catch (const std::domain_error& e) {
            r.note = e.what();
        }
        rows.push_back(std::move(r));
    }
    double mass = 0.0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        mass +=
            0.5 * (rows[i].inversion + rows[i - 1].inversion) * (rows[i].x - rows[i - 1].x);
    }
    if (out.format == "json") {
        json j;
        j["schema"] = "stable-tails/density/v1";
        j["alpha"] = alpha;
        j["convention"] = "sigma=1";
        j["config_hash"] = hash;
        j["grid_mass_trapezoid"] = mass;
        json arr = json::array();
        for (const auto& r : rows) {
            json q{{"x", r.x}, {"inversion", r.inversion}, {"converged", r.converged}};
            if (std::isfinite(r.series)) {
                q["series"] = r.series;
                q["rel_disagreement"] = r.rel;
            }
            if (!r.note.empty()) q["note"] = r.note;
            arr.push_back(std::move(q));
        }
        j["rows"] = std::move(arr);
        out.write(j.dump(2) + "\n");
    } else {
        std::ostringstream os;
        os << "x,series,inversion,rel_disagreement,series_converged,grid_mass,note,"
              "config_hash\r\n";
        for (const auto& r : rows) {
            os << fmt(r.x) << ',' << (std::isfinite(r.series) ? fmt(r.series) : "") << ','
               << fmt(r.inversion) << ',' << (std::isfinite(r.rel) ? fmt(r.rel) : "") << ','
               << (r.converged ? "true" : "false") << ',' << fmt(mass) << ','
               << csv_escape(r.note) << ',' << hash << "\r\n";
        }
        out.write(os.str());
    }
    return 0;
}

int cmd_constants(double alpha, double beta, const Output& out) {
    st::LevyCanonical canon{alpha, 1.0, 1.0};
    if (beta == 1.0) {
        canon = st::LevyCanonical::totally_asymmetric(alpha);
    } else if (beta == -1.0) {
        canon = {alpha, 0.0, 1.0};
    } else if (beta != 0.0) {
        double total = 2.0;
        canon = {alpha, 0.5 * (1.0 + beta) * total, 0.5 * (1.0 - beta) * total};
    }
    st::StableParams params = st::from_levy(canon);
    st::AsymptoticConstants k = st::constants(params);
    auto regime = st::c_alpha_regime(alpha);
    std::ostringstream canonstr;
    canonstr << "constants|" << alpha << '|' << beta;
    std::string hash = st::config_hash(canonstr.str());
    if (out.format == "json") {
        json j{{"schema", "stable-tails/constants/v1"},
               {"alpha", alpha},
               {"beta", params.beta},
               {"c1", canon.c1},
               {"c2", canon.c2},
               {"sigma", params.sigma},
               {"sigma_pow_alpha", st::sigma_pow_alpha(canon)},
               {"c_alpha", k.c_alpha},
               {"kappa_alpha", k.kappa_alpha},
               {"tail_const_right", k.tail_const_right},
               {"tail_const_left", k.tail_const_left},
               {"c_alpha_regime", st::to_string(regime.regime)},
               {"c_alpha_regime_reference", regime.reference},
               {"config_hash", hash}};
        out.write(j.dump(2) + "\n");
    } else {
        std::ostringstream os;
        os << "alpha,beta,c1,c2,sigma,sigma_pow_alpha,c_alpha,kappa_alpha,"
              "tail_const_right,tail_const_left,c_alpha_regime,regime_reference,"
              "config_hash\r\n";
        os << fmt(alpha) << ',' << fmt(params.beta) << ',' << fmt(canon.c1) << ','
           << fmt(canon.c2) << ',' << fmt(params.sigma) << ','
           << fmt(st::sigma_pow_alpha(canon)) << ',' << fmt(k.c_alpha) << ','
           << fmt(k.kappa_alpha) << ',' << fmt(k.tail_const_right) << ','
           << fmt(k.tail_const_left) << ',' << st::to_string(regime.regime) << ','
           << fmt(regime.reference) << ',' << hash << "\r\n";
        out.write(os.str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tail bounds, samplers and Monte Carlo certification for symmetric and "
                 "totally asymmetric stable laws"};
    app.require_subcommand(1);

    Output out;
    double alpha = 0.5, beta = 0.0, confidence = 0.99, debug_scale = 1.0;
    double theta_val = 0.5;
    std::uint64_t n = 200000, seed = 1;
    std::string y_grid_spec, method = "series";
    std::vector<double> y_values;
    st::SeriesConfig cfg;
    double tolerance = -1.0;  // -1: per-alpha default
    bool no_compensate = false;
    std::uint64_t max_terms = 1'000'000;

    auto add_common = [&](CLI::App* sub, bool needs_beta) {
        sub->add_option("--alpha", alpha, "stability index in (0,1) or (1,2)")->required();
        if (needs_beta) sub->add_option("--beta", beta, "skewness, 0 or 1");
        sub->add_option("--format", out.format, "csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--out", out.path, "output path (default stdout)");
    };
    auto add_grid = [&](CLI::App* sub) {
        sub->add_option("--y", y_values, "probability-argument scale y (repeatable)");
        sub->add_option("--y-grid", y_grid_spec, "log:lo:hi:count or lin:lo:hi:count");
    };
    auto add_series_cfg = [&](CLI::App* sub) {
        sub->add_option("--tolerance", tolerance, "series truncation tolerance");
        sub->add_option("--max-terms", max_terms, "series term cap");
        sub->add_flag("--no-compensate", no_compensate, "disable remainder compensation");
    };

    auto* c_bounds = app.add_subcommand("bounds", "evaluate the closed-form tail bounds");
    add_common(c_bounds, true);
    add_grid(c_bounds);
    auto* theta_b = c_bounds->add_option("--theta", theta_val,
                                         "Paley-Zygmund level for asym01.lower");

    auto* c_sample = app.add_subcommand("sample", "draw random variates");
    add_common(c_sample, true);
    c_sample->add_option("--n", n, "number of draws");
    c_sample->add_option("--seed", seed, "RNG seed");
    c_sample->add_option("--method", method, "series, cms or xupper");
    add_series_cfg(c_sample);

    std::vector<std::string> spec_ids;
    bool list_specs = false;
    auto* c_verify = app.add_subcommand("verify", "Monte Carlo bound verification");
    c_verify->add_option("--spec", spec_ids, "bound spec ids (repeatable)");
    c_verify->add_flag("--list-specs", list_specs, "print the bound id vocabulary");
    c_verify->add_option("--alpha", alpha, "stability index in (0,1) or (1,2)");
    c_verify->add_option("--format", out.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    c_verify->add_option("--out", out.path, "output path (default stdout)");
    add_grid(c_verify);
    c_verify->add_option("--n", n, "baseline sample size (>= 100)");
    c_verify->add_option("--seed", seed, "RNG seed");
    c_verify->add_option("--confidence", confidence, "CI confidence in (0.5, 1)");
    c_verify->add_option("--debug-scale", debug_scale,
                         "multiply bound values (CI failure-path hook; non-semantic)");
    auto* theta_v = c_verify->add_option("--theta", theta_val, "Paley-Zygmund level");
    add_series_cfg(c_verify);

    std::vector<double> alphas;
    double xo_a = 0.0, xo_b = 0.0, xo_kappa = 0.0;
    std::string preset = "upper";
    auto* c_crossover =
        app.add_subcommand("crossover", "Gaussian-to-Pareto crossover threshold");
    c_crossover->add_option("--alpha", alphas, "alpha values (repeatable)")->required();
    c_crossover->add_option("--preset", preset, "coefficient preset: upper, lower or custom")
        ->check(CLI::IsMember({"upper", "lower", "custom"}));
    c_crossover->add_option("--pareto-coeff", xo_a, "custom Pareto coefficient A");
    c_crossover->add_option("--gauss-coeff", xo_b, "custom Gaussian coefficient B");
    c_crossover->add_option("--kappa", xo_kappa, "custom Gaussian exponent factor");
    c_crossover->add_option("--format", out.format)->check(CLI::IsMember({"csv", "json"}));
    c_crossover->add_option("--out", out.path);

    bool sigma1 = true;
    auto* c_density = app.add_subcommand("density", "symmetric density: series vs inversion");
    add_common(c_density, false);
    c_density->add_option("--x", y_values, "evaluation points (repeatable)");
    c_density->add_option("--x-grid", y_grid_spec, "log:lo:hi:count or lin:lo:hi:count");
    c_density->add_flag("--sigma1,!--no-sigma1", sigma1,
                        "sigma = 1 scale convention (the only one implemented)");

    auto* c_constants = app.add_subcommand("constants", "parametrization and tail constants");
    add_common(c_constants, true);

    CLI11_PARSE(app, argc, argv);

    try {
        bool needs_alpha_check = !c_crossover->parsed() && !(c_verify->parsed() && list_specs);
        if (needs_alpha_check && (!(alpha > 0.0 && alpha < 2.0) || alpha == 1.0)) {
            throw std::invalid_argument(
                "alpha must lie in (0,1) or (1,2); alpha = 1 is excluded from these laws");
        }
        if (c_verify->parsed() && list_specs) {
            for (const auto* s : st::bound_registry()) {
                std::cout << s->id() << "  [" << st::to_string(s->law()) << ", "
                          << st::to_string(s->side()) << " tail, "
                          << st::to_string(s->direction()) << " bound]\n";
            }
            return 0;
        }
        std::vector<double> grid = y_values;
        if (!y_grid_spec.empty()) {
            auto g = parse_grid(y_grid_spec);
            grid.insert(grid.end(), g.begin(), g.end());
        }
        if (tolerance < 0.0) {
            cfg = st::SeriesConfig::for_alpha(alpha);
        } else {
            cfg.tail_tolerance = tolerance;
        }
        cfg.max_terms = max_terms;
        cfg.compensate = !no_compensate;

        if (c_bounds->parsed()) {
            if (grid.empty()) throw std::invalid_argument("bounds needs --y or --y-grid");
            if (beta != 0.0 && beta != 1.0) {
                throw std::invalid_argument("beta must be 0 or 1");
            }
            return cmd_bounds(alpha, beta, grid,
                              theta_b->count() > 0 ? std::optional<double>(theta_val)
                                                   : std::nullopt,
                              out);
        }
        if (c_sample->parsed()) {
            if (beta != 0.0 && beta != 1.0) {
                throw std::invalid_argument("beta must be 0 or 1");
            }
            return cmd_sample(alpha, beta, method, n, seed, cfg, out);
        }
        if (c_verify->parsed()) {
            if (spec_ids.empty()) {
                throw std::invalid_argument("verify needs --spec (or --list-specs)");
            }
            if (c_verify->count("--alpha") == 0) {
                throw std::invalid_argument("verify needs --alpha");
            }
            return cmd_verify(spec_ids, alpha, grid, n, confidence, seed, debug_scale,
                              theta_v->count() > 0 ? std::optional<double>(theta_val)
                                                   : std::nullopt,
                              cfg, out);
        }
        if (c_crossover->parsed()) {
            if (preset == "custom") {
                if (!(xo_a > 0.0 && xo_b > 0.0 && xo_kappa > 0.0)) {
                    throw std::invalid_argument(
                        "custom preset needs --pareto-coeff, --gauss-coeff, --kappa > 0");
                }
            } else {
                auto p = preset == "lower" ? st::crossover_lower_preset()
                                           : st::crossover_upper_preset();
                xo_a = p.pareto_coeff;
                xo_b = p.gauss_coeff;
                xo_kappa = p.kappa;
            }
            return cmd_crossover(alphas, xo_a, xo_b, xo_kappa, out);
        }
        if (c_density->parsed()) {
            if (!sigma1) {
                throw std::invalid_argument("only the sigma = 1 convention is implemented");
            }
            if (grid.empty()) throw std::invalid_argument("density needs --x or --x-grid");
            return cmd_density(alpha, grid, out);
        }
        if (c_constants->parsed()) {
            return cmd_constants(alpha, beta, out);
        }
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
