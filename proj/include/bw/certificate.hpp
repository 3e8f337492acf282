#ifndef BW_CERTIFICATE_HPP
#define BW_CERTIFICATE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <bw/error.hpp>
#include <bw/ideals.hpp>
#include <bw/series.hpp>

namespace bw
{

enum class relation { gt, ge, le };

inline std::string_view relation_name(relation r)
{
    switch (r) {
        case relation::gt:
            return "gt";
        case relation::ge:
            return "ge";
        case relation::le:
            return "le";
    }
    return {};
}

inline relation parse_relation(std::string_view s)
{
    if (s == "gt") {
        return relation::gt;
    }
    if (s == "ge") {
        return relation::ge;
    }
    if (s == "le") {
        return relation::le;
    }
    throw schema_mismatch("unknown relation '" + std::string(s) + "'");
}

// Strict relations are checked with margin delta; weak ones tolerate delta.
inline bool holds(relation r, double value, double bound)
{
    switch (r) {
        case relation::gt:
            return value > bound + delta;
        case relation::ge:
            return value >= bound - delta;
        case relation::le:
            return value <= bound + delta;
    }
    return false;
}

// What a checkpoint measures at position l of the stem: the partial sum
// through l, or the single term read at l.
enum class measure { partial_sum, term };

struct checkpoint {
    std::size_t l;
    measure what;
    double norm;
    double bound;
    relation rel;
    std::string label;
};

struct witness_certificate {
    std::string construction;
    indexer_stem stem;
    std::vector<checkpoint> checkpoints;
    // Interval I_k whose every position carries a checkpoint.
    std::optional<std::size_t> interval_index;
    std::optional<int_range> interval_range;
    // Lengths at which a rearrangement stem is a bijection of {1..length}.
    std::vector<std::size_t> stage_boundaries;
};

inline constexpr double recompute_tolerance = 1e-9;

struct certificate_failure {
    std::size_t l;
    std::string reason;
    // Ordinal of the offending checkpoint, when one is to blame.
    std::optional<std::size_t> checkpoint = std::nullopt;
};

// Independent re-verification: recompute every recorded norm from the stem
// and re-check every relation, the interval coverage and the stage
// boundaries. Returns the first failure.
inline std::optional<certificate_failure> check_certificate(const series_oracle &series,
                                                            const witness_certificate &cert)
{
    const auto len = stem_size(cert.stem);
    std::size_t max_l = 0;
    for (const auto &c : cert.checkpoints) {
        if (c.l == 0u || c.l > len) {
            return certificate_failure{c.l, "checkpoint position l=" + std::to_string(c.l) + " outside the stem"};
        }
        if (c.what == measure::partial_sum) {
            max_l = std::max(max_l, c.l);
        }
    }
    std::vector<double> sums(max_l + 1u, 0.);
    for_each_partial_norm(series, cert.stem, max_l, [&](std::size_t l, double n) {
        sums[l] = n;
        return true;
    });
    for (std::size_t i = 0; i < cert.checkpoints.size(); ++i) {
        const auto &c = cert.checkpoints[i];
        const auto name = "checkpoint #" + std::to_string(i) + (c.label.empty() ? "" : " '" + c.label + "'");
        double actual = 0.;
        if (c.what == measure::partial_sum) {
            actual = sums[c.l];
        } else {
            std::size_t index = c.l;
            if (const auto *sub = std::get_if<subseq_stem>(&cert.stem)) {
                index = (*sub)[c.l];
            } else if (const auto *re = std::get_if<rearr_stem>(&cert.stem)) {
                index = (*re)[c.l];
            }
            actual = series.term_norm(index);
        }
        if (!(std::abs(actual - c.norm) <= recompute_tolerance)) {
            return certificate_failure{c.l,
                                       name + ": recorded norm " + std::to_string(c.norm) + " but recomputed "
                                           + std::to_string(actual) + " at l=" + std::to_string(c.l),
                                       i};
        }
        if (!holds(c.rel, actual, c.bound)) {
            return certificate_failure{c.l,
                                       name + ": relation " + std::string(relation_name(c.rel)) + " "
                                           + std::to_string(c.bound) + " fails at l=" + std::to_string(c.l),
                                       i};
        }
    }
    if (cert.interval_range) {
        const auto iv = *cert.interval_range;
        std::vector<bool> covered(iv.size(), false);
        for (const auto &c : cert.checkpoints) {
            if (c.what == measure::partial_sum && iv.contains(c.l)) {
                covered[c.l - iv.lo] = true;
            }
        }
        for (auto j = iv.lo; j < iv.hi; ++j) {
            if (!covered[j - iv.lo]) {
                return certificate_failure{j, "interval position l=" + std::to_string(j) + " has no checkpoint"};
            }
        }
    }
    if (!cert.stage_boundaries.empty()) {
        const auto *re = std::get_if<rearr_stem>(&cert.stem);
        if (re == nullptr) {
            return certificate_failure{0, "stage boundaries on a non-rearrangement stem"};
        }
        for (auto b : cert.stage_boundaries) {
            if (b > re->size()
                || !is_prefix_bijection(std::span<const std::size_t>(re->values().data(), b))) {
                return certificate_failure{b, "stem is not a prefix bijection at stage boundary "
                                                  + std::to_string(b)};
            }
        }
    }
    return std::nullopt;
}

} // namespace bw

#endif
