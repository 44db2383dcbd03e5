#include "stable_tails/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <boost/math/distributions/beta.hpp>

#include <json.hpp>

namespace stable_tails {

namespace {

double beta_quantile(double a, double b, double p) {
    boost::math::beta_distribution<double> dist(a, b);
    return boost::math::quantile(dist, p);
}

}  // namespace

MCEstimate clopper_pearson(std::uint64_t hits, std::uint64_t n, double confidence,
                           std::uint64_t seed) {
    if (n == 0) throw std::invalid_argument("Clopper-Pearson needs n > 0");
    if (!(confidence > 0.5 && confidence < 1.0)) {
        throw std::invalid_argument("confidence must lie in (0.5, 1)");
    }
    MCEstimate est;
    est.hits = hits;
    est.n = n;
    est.p_hat = static_cast<double>(hits) / static_cast<double>(n);
    est.confidence = confidence;
    est.seed = seed;
    double a = 0.5 * (1.0 - confidence);
    est.ci_low = (hits == 0) ? 0.0
                             : beta_quantile(static_cast<double>(hits),
                                             static_cast<double>(n - hits + 1), a);
    est.ci_high = (hits == n) ? 1.0
                              : beta_quantile(static_cast<double>(hits + 1),
                                              static_cast<double>(n - hits), 1.0 - a);
    return est;
}

SamplerSpec SamplerSpec::series_for(BoundLaw law, double alpha, const SeriesConfig& cfg) {
    SamplerSpec spec{SourceLaw::asym01_series, alpha, 0.0, 0.0, cfg};
    switch (law) {
        case BoundLaw::asym01: spec.law = SourceLaw::asym01_series; break;
        case BoundLaw::sym01:
        case BoundLaw::sym12: spec.law = SourceLaw::sym_series; break;
        case BoundLaw::asym12: spec.law = SourceLaw::asym12_series; break;
        case BoundLaw::xupper_asym: spec.law = SourceLaw::xupper_asym; break;
        case BoundLaw::xupper_sym: spec.law = SourceLaw::xupper_sym; break;
        case BoundLaw::x1_asym:
        case BoundLaw::x1_sym:
            throw std::domain_error("the small-jump component has no exact sampler");
    }
    return spec;
}

std::uint64_t batch_shard_size() { return 1u << 18; }

unsigned worker_count() {
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("STABLE_TAILS_THREADS")) {
        long v = std::strtol(env, nullptr, 10);
        if (v >= 1) hw = std::min<long>(v, 256);
    }
    return hw;
}

namespace {

void draw_into(const SamplerSpec& spec, ArrivalStream& stream, double* out,
               std::uint64_t count) {
    switch (spec.law) {
        case SourceLaw::asym01_series:
            for (std::uint64_t i = 0; i < count; ++i) {
                out[i] = sample_asym_01(spec.alpha, spec.cfg, stream).value;
            }
            return;
        case SourceLaw::sym_series:
            for (std::uint64_t i = 0; i < count; ++i) {
                out[i] = sample_sym(spec.alpha, spec.cfg, stream).value;
            }
            return;
        case SourceLaw::asym12_series: {
            Asym12Series series = Asym12Series::calibrated(spec.alpha);
            for (std::uint64_t i = 0; i < count; ++i) {
                out[i] = sample_asym_12(series, spec.cfg, stream).value;
            }
            return;
        }
        case SourceLaw::xupper_asym: {
            TruncationSplit split = TruncationSplit::asymmetric(spec.alpha);
            for (std::uint64_t i = 0; i < count; ++i) {
                out[i] = sample_xupper(split, stream).value;
            }
            return;
        }
        case SourceLaw::xupper_sym: {
            TruncationSplit split = TruncationSplit::symmetric_split(spec.alpha);
            for (std::uint64_t i = 0; i < count; ++i) {
                out[i] = sample_xupper(split, stream).value;
            }
            return;
        }
        case SourceLaw::cms: {
            StableParams p = from_levy(spec.beta == 0.0
                                           ? LevyCanonical::symmetric(spec.alpha)
                                           : LevyCanonical::totally_asymmetric(spec.alpha));
            for (std::uint64_t i = 0; i < count; ++i) out[i] = sample_cms(p, stream);
            return;
        }
        case SourceLaw::residual:
            for (std::uint64_t i = 0; i < count; ++i) {
                out[i] = sample_residual(spec.alpha, spec.x, spec.cfg, stream).value;
            }
            return;
    }
    throw std::logic_error("unreachable SourceLaw");
}

}  // namespace

std::vector<double> draw_batch(const SamplerSpec& spec, std::uint64_t n, std::uint64_t seed) {
    if (spec.law == SourceLaw::asym12_series) {
        Asym12Series::calibrated(spec.alpha);  // resolve once before sharding
    }
    std::vector<double> out(n);
    const std::uint64_t shard = batch_shard_size();
    const std::uint64_t n_shards = (n + shard - 1) / shard;
    unsigned workers = std::min<std::uint64_t>(worker_count(), n_shards);
    std::atomic<std::uint64_t> next{0};
    auto run = [&]() {
        for (;;) {
            std::uint64_t k = next.fetch_add(1);
            if (k >= n_shards) return;
            std::uint64_t begin = k * shard;
            std::uint64_t count = std::min(shard, n - begin);
            ArrivalStream stream(seed, k);
            draw_into(spec, stream, out.data() + begin, count);
        }
    };
    if (workers <= 1) {
        run();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run);
        for (auto& t : pool) t.join();
    }
    return out;
}

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::vacuous: return "vacuous";
        case Verdict::inconclusive: return "inconclusive";
        case Verdict::refused: return "refused";
    }
    return "unknown";
}

std::uint64_t VerificationReport::count(Verdict v) const {
    std::uint64_t c = 0;
    for (const auto& p : points) c += (p.verdict == v) ? 1 : 0;
    return c;
}

MCEstimate empirical_tail(const SamplerSpec& spec, double threshold, Side side,
                          std::uint64_t n, double confidence, std::uint64_t seed) {
    if (n < 100) throw std::invalid_argument("empirical_tail needs n >= 100");
    std::vector<double> draws = draw_batch(spec, n, seed);
    std::uint64_t hits = 0;
    if (side == Side::right) {
        for (double d : draws) hits += (d >= threshold) ? 1 : 0;
    } else {
        for (double d : draws) hits += (d <= threshold) ? 1 : 0;
    }
    return clopper_pearson(hits, n, confidence, seed);
}

namespace {

Verdict judge(Direction dir, bool vacuous, double bound, const MCEstimate& est) {
    if (dir == Direction::upper) {
        if (vacuous) return Verdict::vacuous;
        if (est.ci_high <= bound) return Verdict::pass;
        if (est.ci_low > bound) return Verdict::fail;
        return Verdict::inconclusive;
    }
    if (est.ci_low >= bound) return Verdict::pass;
    if (est.ci_high < bound) return Verdict::fail;
    return Verdict::inconclusive;
}

constexpr std::uint64_t kAutoScaleCap = 10'000'000;

std::uint64_t planned_n(Direction dir, double bound, std::uint64_t n_request) {
    if (dir != Direction::lower) return n_request;
    if (!(bound > 1.0 / static_cast<double>(kAutoScaleCap))) {
        // below the cap's resolution: a handful of hits certifies the bound
        return n_request;
    }
    auto needed = static_cast<std::uint64_t>(std::ceil(100.0 / bound));
    return std::clamp(needed, n_request, kAutoScaleCap);
}

}  // namespace

namespace {

std::uint64_t batch_size_for(const TailBoundSpec& spec, double alpha,
                             const std::vector<double>& y_grid, std::uint64_t n,
                             double debug_scale, std::optional<double> theta) {
    const bool has_sampler =
        spec.law() != BoundLaw::x1_asym && spec.law() != BoundLaw::x1_sym;
    std::uint64_t batch_n = 0;
    for (double y : y_grid) {
        BoundEvaluation ev = spec.evaluate(alpha, y, theta);
        if (ev.valid && has_sampler) {
            double scaled_raw = ev.raw_value * debug_scale;
            double scaled = std::min(1.0, std::max(0.0, scaled_raw));
            bool vac = spec.direction() == Direction::upper && scaled_raw > 1.0;
            if (!vac) batch_n = std::max(batch_n, planned_n(spec.direction(), scaled, n));
        }
    }
    return batch_n;
}

VerificationReport verify_bound_impl(const TailBoundSpec& spec, double alpha,
                                     const std::vector<double>& y_grid, std::uint64_t n,
                                     double confidence, std::uint64_t seed,
                                     const std::vector<double>& draws, double debug_scale,
                                     std::optional<double> theta) {
    VerificationReport report;
    report.spec_id = spec.id();
    report.alpha = alpha;
    report.n_request = n;
    report.confidence = confidence;
    report.seed = seed;
    report.debug_scale = debug_scale;
    {
        std::ostringstream canon;
        canon << spec.id() << '|' << alpha << '|' << n << '|' << confidence << '|' << seed
              << '|' << debug_scale << '|' << batch_shard_size();
        for (double y : y_grid) canon << '|' << y;
        if (theta) canon << "|theta=" << *theta;
        report.config_hash = config_hash(canon.str());
    }

    const bool has_sampler =
        spec.law() != BoundLaw::x1_asym && spec.law() != BoundLaw::x1_sym;

    std::vector<BoundEvaluation> evals;
    evals.reserve(y_grid.size());
    for (double y : y_grid) evals.push_back(spec.evaluate(alpha, y, theta));

    for (const auto& ev : evals) {
        PointResult pr;
        pr.alpha = alpha;
        pr.y = ev.y;
        pr.side = spec.side();
        pr.direction = spec.direction();
        pr.regime = spec.regime();
        if (!ev.valid) {
            pr.verdict = Verdict::refused;
            pr.note = ev.refusal;
            report.points.push_back(std::move(pr));
            continue;
        }
        pr.threshold = ev.threshold;
        pr.raw_bound = ev.raw_value * debug_scale;
        pr.bound = std::min(1.0, std::max(0.0, pr.raw_bound));
        pr.vacuous = spec.direction() == Direction::upper && pr.raw_bound > 1.0;
        if (!has_sampler) {
            pr.verdict = Verdict::refused;
            pr.note = "no exact sampler for this component; see the envelope checks";
            report.points.push_back(std::move(pr));
            continue;
        }
        std::uint64_t n_point =
            pr.vacuous ? n : planned_n(spec.direction(), pr.bound, n);
        n_point = std::min<std::uint64_t>(n_point, draws.size());
        std::uint64_t hits = 0;
        if (spec.side() == Side::right) {
            for (std::uint64_t i = 0; i < n_point; ++i) {
                hits += (draws[i] >= pr.threshold) ? 1 : 0;
            }
        } else {
            for (std::uint64_t i = 0; i < n_point; ++i) {
                hits += (draws[i] <= pr.threshold) ? 1 : 0;
            }
        }
        pr.estimate = clopper_pearson(hits, n_point, confidence, seed);
        pr.verdict = judge(spec.direction(), pr.vacuous, pr.bound, pr.estimate);
        report.points.push_back(std::move(pr));
    }
    return report;
}

}  // namespace

std::uint64_t verify_bound_batch_size(std::string_view spec_id, double alpha,
                                      const std::vector<double>& y_grid, std::uint64_t n,
                                      double debug_scale, std::optional<double> theta) {
    const TailBoundSpec* spec = find_bound_spec(spec_id);
    if (spec == nullptr) {
        throw std::invalid_argument("unknown bound spec id: " + std::string(spec_id));
    }
    return batch_size_for(*spec, alpha, y_grid, n, debug_scale, theta);
}

VerificationReport verify_bound_with_batch(std::string_view spec_id, double alpha,
                                           const std::vector<double>& y_grid,
                                           std::uint64_t n, double confidence,
                                           std::uint64_t seed,
                                           const std::vector<double>& draws,
                                           double debug_scale,
                                           std::optional<double> theta) {
    const TailBoundSpec* spec = find_bound_spec(spec_id);
    if (spec == nullptr) {
        throw std::invalid_argument("unknown bound spec id: " + std::string(spec_id));
    }
    if (n < 100) throw std::invalid_argument("verify_bound needs n >= 100");
    return verify_bound_impl(*spec, alpha, y_grid, n, confidence, seed, draws, debug_scale,
                             theta);
}

VerificationReport verify_bound(std::string_view spec_id, double alpha,
                                const std::vector<double>& y_grid, std::uint64_t n,
                                double confidence, std::uint64_t seed, double debug_scale,
                                std::optional<double> theta,
                                const SeriesConfig* cfg_override) {
    const TailBoundSpec* spec = find_bound_spec(spec_id);
    if (spec == nullptr) {
        throw std::invalid_argument("unknown bound spec id: " + std::string(spec_id));
    }
    if (n < 100) throw std::invalid_argument("verify_bound needs n >= 100");
    std::uint64_t batch_n = batch_size_for(*spec, alpha, y_grid, n, debug_scale, theta);
    std::vector<double> draws;
    const bool has_sampler =
        spec->law() != BoundLaw::x1_asym && spec->law() != BoundLaw::x1_sym;
    if (batch_n > 0 && has_sampler) {
        SeriesConfig cfg =
            cfg_override != nullptr ? *cfg_override : SeriesConfig::for_alpha(alpha);
        draws = draw_batch(SamplerSpec::series_for(spec->law(), alpha, cfg), batch_n, seed);
    }
    return verify_bound_impl(*spec, alpha, y_grid, n, confidence, seed, draws, debug_scale,
                             theta);
}

CfReport verify_cf(const SamplerSpec& spec, const CharFn& cf,
                   const std::vector<double>& t_grid, std::uint64_t n, std::uint64_t seed) {
    for (double t : t_grid) {
        if (t == 0.0) throw std::invalid_argument("t grid must not contain 0");
    }
    std::vector<double> draws = draw_batch(spec, n, seed);
    CfReport report;
    report.n = n;
    report.seed = seed;
    for (double t : t_grid) {
        double re = 0.0, im = 0.0;
        for (double d : draws) {
            re += std::cos(t * d);
            im += std::sin(t * d);
        }
        CfPoint p;
        p.t = t;
        p.empirical = {re / static_cast<double>(n), im / static_cast<double>(n)};
        p.analytic = cf_eval(cf, t);
        p.abs_err = std::abs(p.empirical - p.analytic);
        p.error_bar = 4.0 / std::sqrt(static_cast<double>(n));
        report.sup_err = std::max(report.sup_err, p.abs_err);
        report.points.push_back(p);
    }
    return report;
}

MomentReport verify_residual_moments(double alpha, double x, std::uint64_t n,
                                     std::uint64_t seed, const SeriesConfig* cfg_override) {
    SamplerSpec spec{SourceLaw::residual, alpha, 0.0, x,
                     cfg_override != nullptr ? *cfg_override : SeriesConfig::for_alpha(alpha)};
    std::vector<double> draws = draw_batch(spec, n, seed);
    double mean = 0.0;
    for (double d : draws) mean += d;
    mean /= static_cast<double>(n);
    double m2 = 0.0, m4 = 0.0;
    for (double d : draws) {
        double c = d - mean;
        double c2 = c * c;
        m2 += c2;
        m4 += c2 * c2;
    }
    m2 /= static_cast<double>(n);
    m4 /= static_cast<double>(n);

    MomentReport rep;
    rep.alpha = alpha;
    rep.x = x;
    rep.n = n;
    rep.seed = seed;
    rep.mean_mc = mean;
    rep.var_mc = m2 * static_cast<double>(n) / static_cast<double>(n - 1);
    rep.mean_exact = residual_mean(alpha, x);
    rep.var_exact = residual_variance(alpha, x);
    rep.mean_se = std::sqrt(m2 / static_cast<double>(n));
    rep.var_se = std::sqrt(std::max(m4 - m2 * m2, 0.0) / static_cast<double>(n));
    rep.pass = std::abs(rep.mean_mc - rep.mean_exact) <= 3.0 * rep.mean_se &&
               std::abs(rep.var_mc - rep.var_exact) <= 3.0 * rep.var_se;
    return rep;
}

MgfReport verify_mgf(double alpha, double x, const std::vector<double>& lambdas,
                     std::uint64_t n, std::uint64_t seed, const SeriesConfig* cfg_override) {
    for (double l : lambdas) {
        if (l > 0.0) throw std::domain_error("MGF verification needs lambda <= 0");
    }
    SamplerSpec spec{SourceLaw::residual, alpha, 0.0, x,
                     cfg_override != nullptr ? *cfg_override : SeriesConfig::for_alpha(alpha)};
    std::vector<double> draws = draw_batch(spec, n, seed);
    MgfReport rep;
    rep.alpha = alpha;
    rep.x = x;
    rep.n = n;
    rep.seed = seed;
    for (double lambda : lambdas) {
        double s1 = 0.0, s2 = 0.0;
        for (double d : draws) {
            double e = std::exp(lambda * d);
            s1 += e;
            s2 += e * e;
        }
        MgfPoint p;
        p.lambda = lambda;
        p.mc = s1 / static_cast<double>(n);
        p.analytic = mgf_residual(alpha, x, lambda);
        p.rel_err = std::abs(p.mc - p.analytic) / p.analytic;
        double var = std::max(s2 / static_cast<double>(n) - p.mc * p.mc, 0.0);
        p.mc_rel_se = std::sqrt(var / static_cast<double>(n)) / p.mc;
        rep.max_rel_err = std::max(rep.max_rel_err, p.rel_err);
        rep.points.push_back(p);
    }
    return rep;
}

double ks_statistic(std::vector<double> samples, const std::function<double(double)>& cdf) {
    if (samples.size() < 1000) throw std::invalid_argument("KS test needs >= 1000 samples");
    std::sort(samples.begin(), samples.end());
    const double n = static_cast<double>(samples.size());
    double ks = 0.0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        double f = cdf(samples[i]);
        ks = std::max(ks, std::abs(f - static_cast<double>(i + 1) / n));
        ks = std::max(ks, std::abs(f - static_cast<double>(i) / n));
    }
    return ks;
}

double ks_two_sample(std::vector<double> a, std::vector<double> b) {
    if (a.empty() || b.empty()) throw std::invalid_argument("KS test needs nonempty samples");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    std::size_t i = 0, j = 0;
    double ks = 0.0;
    while (i < a.size() && j < b.size()) {
        if (a[i] <= b[j]) {
            ++i;
        } else {
            ++j;
        }
        ks = std::max(ks, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
    }
    return ks;
}

std::string config_hash(const std::string& canonical) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : canonical) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

std::string VerificationReport::to_csv() const {
    std::ostringstream os;
    os.precision(17);
    os << "spec_id,alpha,y,threshold,p_hat,ci_low,ci_high,bound,verdict\r\n";
    for (const auto& p : points) {
        os << spec_id << ',' << p.alpha << ',' << p.y << ',' << p.threshold << ','
           << p.estimate.p_hat << ',' << p.estimate.ci_low << ',' << p.estimate.ci_high << ','
           << p.bound << ',' << to_string(p.verdict) << "\r\n";
    }
    return os.str();
}

std::string VerificationReport::to_json() const {
    nlohmann::json j;
    j["schema"] = "stable-tails/verify-report/v1";
    j["spec_id"] = spec_id;
    j["alpha"] = alpha;
    j["n_request"] = n_request;
    j["confidence"] = confidence;
    j["seed"] = seed;
    j["debug_scale"] = debug_scale;
    j["config_hash"] = config_hash;
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : points) {
        nlohmann::json q;
        q["y"] = p.y;
        q["threshold"] = p.threshold;
        q["side"] = stable_tails::to_string(p.side);
        q["direction"] = stable_tails::to_string(p.direction);
        q["regime"] = p.regime;
        q["bound"] = p.bound;
        q["raw_bound"] = p.raw_bound;
        q["vacuous"] = p.vacuous;
        q["verdict"] = stable_tails::to_string(p.verdict);
        if (p.verdict != Verdict::refused) {
            q["n"] = p.estimate.n;
            q["hits"] = p.estimate.hits;
            q["p_hat"] = p.estimate.p_hat;
            q["ci_low"] = p.estimate.ci_low;
            q["ci_high"] = p.estimate.ci_high;
        }
        if (!p.note.empty()) q["note"] = p.note;
        pts.push_back(std::move(q));
    }
    j["points"] = std::move(pts);
    j["summary"] = {{"pass", count(Verdict::pass)},
                    {"fail", count(Verdict::fail)},
                    {"vacuous", count(Verdict::vacuous)},
                    {"inconclusive", count(Verdict::inconclusive)},
                    {"refused", count(Verdict::refused)}};
    return j.dump(2);
}

}  // namespace stable_tails
