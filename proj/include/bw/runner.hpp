#ifndef BW_RUNNER_HPP
#define BW_RUNNER_HPP

#include <chrono>
#include <cstddef>
#include <cstdlib>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <bw/document.hpp>
#include <bw/error.hpp>
#include <bw/ideals.hpp>
#include <bw/series.hpp>
#include <bw/witnesses.hpp>

namespace bw
{

inline const std::vector<std::string> &construction_names()
{
    static const std::vector<std::string> names{
        "grow-subseries", "rearrangement", "nowhere-dense-subseq", "nowhere-dense-rearr", "small-norm-block",
        "dense-open-Bm",  "dense-open-Cm", "dense-open-Am",        "limsup-subseries",    "uniform-bound",
        "i-bounded"};
    return names;
}

inline constexpr const char *horizon_env_var = "BW_DEFAULT_HORIZON";

struct run_config {
    std::string series;
    std::string construction;
    std::optional<std::size_t> m;
    std::optional<double> M;
    std::optional<double> target;
    std::optional<std::size_t> depth;
    std::optional<std::size_t> horizon;
    std::optional<std::size_t> n;
    std::optional<std::size_t> after;
    std::optional<std::size_t> length;
    std::optional<double> budget;
    std::optional<std::size_t> threshold;
    std::string ideal = "density";
    std::optional<std::string> talagrand;
    std::optional<std::string> stem;
    std::string strategy = "auto";
    std::string alphabet = "01";
    bool verify = true;
};

struct run_outcome {
    json document;
    int exit_code;
};

namespace detail
{

inline std::vector<std::size_t> parse_index_list(const std::string &text)
{
    std::vector<std::size_t> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) {
            continue;
        }
        std::size_t pos = 0;
        const auto v = std::stoull(item, &pos);
        if (pos != item.size()) {
            throw precondition_violation("bad index '" + item + "' in stem");
        }
        out.push_back(static_cast<std::size_t>(v));
    }
    return out;
}

inline std::size_t resolve_horizon(const run_config &cfg, const series_oracle &series)
{
    if (cfg.horizon) {
        return *cfg.horizon;
    }
    if (const char *env = std::getenv(horizon_env_var)) {
        try {
            return static_cast<std::size_t>(std::stoull(env));
        } catch (const std::exception &) {
            throw precondition_violation(std::string(horizon_env_var) + " is not a positive integer");
        }
    }
    return default_horizon(series);
}

inline json config_to_json(const run_config &cfg, std::size_t horizon)
{
    json j{{"series", cfg.series}, {"construction", cfg.construction}, {"horizon", horizon},
           {"strategy", cfg.strategy}};
    const auto put = [&](const char *key, const auto &opt) {
        if (opt) {
            j[key] = *opt;
        }
    };
    put("m", cfg.m);
    put("M", cfg.M);
    put("target", cfg.target);
    put("depth", cfg.depth);
    put("n", cfg.n);
    put("after", cfg.after);
    put("length", cfg.length);
    put("budget", cfg.budget);
    put("threshold", cfg.threshold);
    put("talagrand", cfg.talagrand);
    put("stem", cfg.stem);
    if (cfg.construction == "i-bounded") {
        j["ideal"] = cfg.ideal;
    }
    if (cfg.construction == "uniform-bound") {
        j["alphabet"] = cfg.alphabet;
    }
    return j;
}

inline std::vector<growth_strategy> strategies_for(const run_config &cfg, const series_oracle &series)
{
    if (cfg.strategy != "auto") {
        return {parse_strategy(cfg.strategy)};
    }
    if (series.space().is_scalar()) {
        return {growth_strategy::greedy_positive, growth_strategy::greedy_negative};
    }
    return {growth_strategy::per_coordinate};
}

// Tries each candidate strategy in turn; the last exhaustion is rethrown.
template <typename F>
auto with_strategies(const run_config &cfg, const series_oracle &series, F &&f)
{
    const auto candidates = strategies_for(cfg, series);
    for (std::size_t i = 0;; ++i) {
        try {
            return f(growth_oracle{candidates[i]});
        } catch (const exhausted &) {
            if (i + 1u == candidates.size()) {
                throw;
            }
        }
    }
}

inline std::size_t need(const std::optional<std::size_t> &v, std::size_t fallback)
{
    return v ? *v : fallback;
}

inline json run_construction(const run_config &cfg, const series_oracle &series, std::size_t horizon)
{
    const auto &c = cfg.construction;
    const auto seq = talagrand_by_name(cfg.talagrand.value_or("geometric"));
    const auto stem_values = cfg.stem ? parse_index_list(*cfg.stem) : std::vector<std::size_t>{};
    const auto m = need(cfg.m, 1);
    json doc;
    doc["outcome"] = "certificate";

    if (c == "grow-subseries") {
        const double target = cfg.target.value_or(3.);
        doc["certificate"] = certificate_to_json(with_strategies(cfg, series, [&](const growth_oracle &o) {
            return grow_unbounded_subseries(series, o, target, horizon);
        }));
    } else if (c == "rearrangement") {
        const auto depth = need(cfg.depth, 3);
        doc["certificate"] = certificate_to_json(with_strategies(cfg, series, [&](const growth_oracle &o) {
            const auto s = grown_subseries(series, o, depth, horizon);
            return subseries_to_rearrangement(series, s, depth, horizon);
        }));
    } else if (c == "nowhere-dense-subseq") {
        doc["certificate"] = certificate_to_json(with_strategies(cfg, series, [&](const growth_oracle &o) {
            const auto s = grown_subseries(series, o, 1, horizon);
            return nowhere_dense_witness_subseq(series, s, m, subseq_stem{stem_values}, horizon);
        }));
    } else if (c == "nowhere-dense-rearr") {
        const auto stages = need(cfg.depth, 1);
        doc["certificate"] = certificate_to_json(with_strategies(cfg, series, [&](const growth_oracle &o) {
            const auto s = grown_subseries(series, o, 1, horizon);
            const auto p = rearrangement_stream(series, s, 1, horizon);
            return nowhere_dense_witness_rearr(series, p, m, rearr_stem{stem_values}, horizon, stages);
        }));
    } else if (c == "small-norm-block") {
        const auto block = small_norm_block(series, need(cfg.after, 0), need(cfg.length, 1), cfg.budget.value_or(1.),
                                            horizon);
        witness_certificate cert{"small-norm-block", block, {}, {}, {}, {}};
        double total = 0.;
        for (std::size_t l = 1; l <= block.size(); ++l) {
            const double tn = series.term_norm(block[l]);
            total += tn;
            cert.checkpoints.push_back({l, measure::term, tn, cfg.budget.value_or(1.) - (total - tn), relation::le,
                                        "within-remaining-budget"});
        }
        doc["certificate"] = certificate_to_json(cert);
    } else if (c == "dense-open-Bm") {
        if (stem_values.empty()) {
            throw precondition_violation("dense-open-Bm needs --stem with more than m entries");
        }
        doc["certificate"] = certificate_to_json(with_strategies(cfg, series, [&](const growth_oracle &o) {
            const auto u = grown_subseries(series, o, 1, horizon);
            return dense_open_witness_Bm(series, seq, u, m, subseq_stem{stem_values}, horizon);
        }));
    } else if (c == "dense-open-Cm") {
        if (stem_values.empty()) {
            throw precondition_violation("dense-open-Cm needs --stem with more than m entries");
        }
        doc["certificate"] = certificate_to_json(with_strategies(cfg, series, [&](const growth_oracle &o) {
            const auto s = grown_subseries(series, o, 1, horizon);
            const auto t = rearrangement_stream(series, s, 1, horizon);
            return dense_open_witness_Cm(series, seq, t, m, rearr_stem{stem_values}, horizon);
        }));
    } else if (c == "dense-open-Am") {
        const auto word = cfg.stem.value_or("");
        doc["certificate"] = certificate_to_json(with_strategies(cfg, series, [&](const growth_oracle &o) {
            const auto u = grown_subseries(series, o, 1, horizon);
            return dense_open_witness_Am(series, seq, u, m, selection_stem::parse(word), horizon);
        }));
    } else if (c == "limsup-subseries") {
        doc["certificate"] = certificate_to_json(limsup_subseries(series, need(cfg.depth, 4), horizon));
    } else if (c == "uniform-bound") {
        const auto n = need(cfg.n, 10);
        if (cfg.alphabet != "01" && cfg.alphabet != "-101") {
            throw precondition_violation("alphabet must be 01 or -101");
        }
        const auto alpha = cfg.alphabet == "01" ? pattern_alphabet::zero_one : pattern_alphabet::signed_ternary;
        doc["outcome"] = "value";
        doc["value"] = {{"n", n}, {"alphabet", cfg.alphabet}, {"bound", uniform_bound_bruteforce(series, n, alpha)}};
    } else if (c == "i-bounded") {
        const double bound = cfg.M.value_or(1.);
        const auto ideal = cfg.talagrand ? ideal_spec::talagrand_given(seq) : ideal_by_name(cfg.ideal);
        const auto used_seq = sequence_for(ideal);
        const indexer_stem stem = cfg.stem ? indexer_stem{selection_stem::parse(*cfg.stem)}
                                           : indexer_stem{identity_selection(horizon)};
        const auto threshold = need(cfg.threshold, default_interval_threshold);
        const auto v = i_bounded_verdict(series, stem, ideal, bound, horizon, threshold);
        witness_certificate cert{"i-bounded", stem, {}, {}, {}, {}};
        const auto trace = partial_sums(series, stem, horizon);
        if (v.verdict == boundedness_verdict::kind::bounded_evidence) {
            for (const auto &cp : trace.checkpoints) {
                cert.checkpoints.push_back({cp.l, measure::partial_sum, cp.norm, bound, relation::le, "bounded"});
            }
        } else {
            for (auto k : v.report.contained_intervals) {
                const auto iv = interval(used_seq, k);
                for (auto l = iv.lo; l < iv.hi; ++l) {
                    cert.checkpoints.push_back({l, measure::partial_sum, trace.checkpoints[l - 1u].norm, bound,
                                                relation::gt, "interval-" + std::to_string(k)});
                }
            }
        }
        doc["outcome"] = "verdict";
        doc["certificate"] = certificate_to_json(cert);
        doc["verdict"] = {{"kind", verdict_name(v.verdict)},
                          {"bound", bound},
                          {"interval_count", v.interval_count},
                          {"horizon", horizon},
                          {"ideal", ideal.name()},
                          {"talagrand", used_seq.name()},
                          {"threshold", threshold},
                          {"exceed_count", v.report.exceed_set.size()},
                          {"contained_intervals", v.report.contained_intervals}};
    } else {
        throw unknown_name("unknown construction '" + c + "'");
    }
    return doc;
}

} // namespace detail

// Exit codes: 0 certificate produced (and self-verified unless disabled),
// 2 informative exhaustion, 1 error (thrown as bw::error).
inline run_outcome run(const run_config &cfg)
{
    const auto start = std::chrono::steady_clock::now();
    const auto series = catalog_series(cfg.series);
    const auto horizon = detail::resolve_horizon(cfg, series);
    json doc;
    int code = 0;
    try {
        doc = detail::run_construction(cfg, series, horizon);
    } catch (const exhausted &e) {
        doc = json{{"outcome", "exhausted"}, {"message", e.what()}};
        code = 2;
    }
    doc["schema_version"] = schema_version;
    doc["config"] = detail::config_to_json(cfg, horizon);
    const auto elapsed = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start);
    doc["timing"] = {{"elapsed_ms", elapsed.count()}};
    if (code == 0 && cfg.verify) {
        const auto res = verify_document(doc);
        if (res.outcome != verify_result::status::ok) {
            throw inconsistent_witness("self-verification failed: " + res.message);
        }
    }
    return {std::move(doc), code};
}

} // namespace bw

#endif
