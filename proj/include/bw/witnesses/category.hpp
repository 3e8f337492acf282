#ifndef BW_WITNESSES_CATEGORY_HPP
#define BW_WITNESSES_CATEGORY_HPP

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include <bw/certificate.hpp>
#include <bw/error.hpp>
#include <bw/ideals.hpp>
#include <bw/series.hpp>
#include <bw/spaces.hpp>
#include <bw/witnesses/growth.hpp>

namespace bw
{

namespace detail
{

inline std::size_t source_value(const certified_stream &src, std::size_t pos, std::size_t horizon,
                                const std::string &what)
{
    const auto v = src.indices.at(pos);
    if (!v || *v > horizon) {
        throw exhausted("scan horizon " + std::to_string(horizon) + " reached while " + what);
    }
    return *v;
}

inline void require_kind(const certified_stream &src, certified_stream::kind k)
{
    if (src.stem_kind != k) {
        throw precondition_violation(k == certified_stream::kind::subseq ? "construction needs a subsequence source"
                                                                          : "construction needs a rearrangement source");
    }
}

// Checkpoints "> m" for every position of I_k, each recomputed from the stem
// prefix norms collected during construction.
inline void certify_interval(witness_certificate &cert, const std::vector<double> &norms, std::size_t k,
                             int_range iv, std::size_t m)
{
    for (auto j = iv.lo; j < iv.hi; ++j) {
        const double nj = norms[j - 1u];
        if (!holds(relation::gt, nj, static_cast<double>(m))) {
            throw inconsistent_witness("interval position l=" + std::to_string(j) + " does not exceed m");
        }
        cert.checkpoints.push_back({j, measure::partial_sum, nj, static_cast<double>(m), relation::gt, "interval"});
    }
    cert.interval_index = k;
    cert.interval_range = iv;
}

} // namespace detail

// Escape from A_m = {s : ||sum_{i<=n} x_{s(i)}|| <= m for all n}:
// u = U followed by the tail of s' past U's last entry.
inline witness_certificate nowhere_dense_witness_subseq(const series_oracle &series, const certified_stream &s_prime,
                                                        std::size_t m, const subseq_stem &basic_open,
                                                        std::size_t scan_horizon)
{
    detail::require_kind(s_prime, certified_stream::kind::subseq);
    verify_source(series, s_prime);
    const auto bound = static_cast<double>(m);
    std::vector<std::size_t> u = basic_open.values();
    running_sum acc(series.space());
    for (std::size_t n = 1; n <= u.size(); ++n) {
        acc.add(series.term(u[n - 1u]));
        if (holds(relation::gt, acc.norm(), bound)) {
            witness_certificate cert{"nowhere-dense-subseq", subseq_stem{u}, {}, {}, {}, {}};
            cert.checkpoints.push_back({n, measure::partial_sum, acc.norm(), bound, relation::gt, "escape"});
            return cert;
        }
    }
    // Smallest l with s'(l) > s_k.
    const std::size_t last = u.empty() ? 0u : u.back();
    std::size_t l = 1;
    while (detail::source_value(s_prime, l, scan_horizon, "looking for s'(l) > " + std::to_string(last)) <= last) {
        ++l;
    }
    while (true) {
        u.push_back(detail::source_value(s_prime, l++, scan_horizon,
                                         "looking for a partial sum above " + std::to_string(m)));
        acc.add(series.term(u.back()));
        if (holds(relation::gt, acc.norm(), bound)) {
            break;
        }
    }
    witness_certificate cert{"nowhere-dense-subseq", subseq_stem{u}, {}, {}, {}, {}};
    cert.checkpoints.push_back({u.size(), measure::partial_sum, acc.norm(), bound, relation::gt, "escape"});
    return cert;
}

// Escape from D_m for rearrangements: each stage finds the smallest l with
// p'[{1..l-1}] covering the current stem, appends p'(l..j) for the first
// j > l that pushes the norm above m, and completes to a prefix bijection.
// Stage bijections are the q_1, q_2, ... of the construction.
inline witness_certificate nowhere_dense_witness_rearr(const series_oracle &series, const certified_stream &p_prime,
                                                       std::size_t m, const rearr_stem &basic_open,
                                                       std::size_t scan_horizon, std::size_t stages = 1)
{
    detail::require_kind(p_prime, certified_stream::kind::rearr);
    if (stages == 0u) {
        throw precondition_violation("nowhere-dense rearrangement witness needs at least one stage");
    }
    verify_source(series, p_prime);
    const auto bound = static_cast<double>(m);
    std::vector<std::size_t> stem = basic_open.values();
    running_sum acc(series.space());
    for (auto v : stem) {
        acc.add(series.term(v));
    }
    witness_certificate cert{"nowhere-dense-rearr", rearr_stem{}, {}, {}, {}, {}};
    for (std::size_t stage = 1; stage <= stages; ++stage) {
        std::vector<bool> need_seen;
        std::size_t missing = 0;
        for (auto v : stem) {
            if (v >= need_seen.size()) {
                need_seen.resize(v + 1u, false);
            }
            need_seen[v] = true;
            ++missing;
        }
        std::size_t l = 1;
        for (; missing > 0u; ++l) {
            const auto v = detail::source_value(p_prime, l, scan_horizon, "covering the current stem with p'");
            if (v < need_seen.size() && need_seen[v]) {
                need_seen[v] = false;
                --missing;
            }
        }
        const std::string what = "looking for a stage-" + std::to_string(stage) + " partial sum above "
                                 + std::to_string(m);
        stem.push_back(detail::source_value(p_prime, l, scan_horizon, what));
        acc.add(series.term(stem.back()));
        for (auto j = l + 1u;; ++j) {
            stem.push_back(detail::source_value(p_prime, j, scan_horizon, what));
            acc.add(series.term(stem.back()));
            if (holds(relation::gt, acc.norm(), bound)) {
                break;
            }
        }
        cert.checkpoints.push_back({stem.size(), measure::partial_sum, acc.norm(), bound, relation::gt,
                                    "escape-stage-" + std::to_string(stage)});
        const auto full = extend_to_prefix_bijection(rearr_stem{stem});
        for (auto i = stem.size(); i < full.size(); ++i) {
            stem.push_back(full.values()[i]);
            acc.add(series.term(stem.back()));
        }
        cert.stage_boundaries.push_back(stem.size());
    }
    cert.stem = rearr_stem{std::move(stem)};
    return cert;
}

// Increasing indices past `after` whose term norms sum to less than the
// budget. The i-th pick must have norm below remaining / (slots left + 1),
// which keeps every threshold positive however long the block is.
inline subseq_stem small_norm_block(const series_oracle &series, std::size_t after, std::size_t length, double budget,
                                    std::size_t scan_horizon)
{
    if (length == 0u) {
        throw precondition_violation("small-norm block needs length >= 1");
    }
    if (!(budget > 0.)) {
        throw precondition_violation("small-norm block needs a positive budget");
    }
    std::vector<std::size_t> v;
    v.reserve(length);
    double remaining = budget;
    std::size_t i = after;
    for (std::size_t pick = 0; pick < length; ++pick) {
        const double threshold = remaining / static_cast<double>(length - pick + 1u);
        double tn = 0.;
        do {
            if (++i > scan_horizon) {
                throw exhausted("scan horizon " + std::to_string(scan_horizon) + " reached after "
                                + std::to_string(pick) + " of " + std::to_string(length)
                                + " small-norm terms (liminf of term norms not confirmed to be 0)");
            }
            tn = series.term_norm(i);
        } while (!(tn < threshold));
        v.push_back(i);
        remaining -= tn;
    }
    return subseq_stem{std::move(v)};
}

namespace detail
{

inline std::vector<double> prefix_norms(const series_oracle &series, const indexer_stem &stem)
{
    std::vector<double> out;
    out.reserve(stem_size(stem));
    for_each_partial_norm(series, stem, stem_size(stem), [&](std::size_t, double n) {
        out.push_back(n);
        return true;
    });
    return out;
}

// Pads a stem of length `lifted` (norm > m+1) with a small-norm block up to
// n_{k+1}-1 for the smallest k > m with n_k > lifted, then certifies I_k.
template <typename Stem>
witness_certificate finish_dense_open(const series_oracle &series, const talagrand_sequence &seq,
                                      std::vector<std::size_t> stem, std::size_t after, std::size_t m,
                                      std::size_t scan_horizon, std::string construction)
{
    const auto lifted = stem.size();
    const auto k = seq.first_index_above(lifted, m);
    const auto iv = interval(seq, k);
    const auto block = small_norm_block(series, after, iv.hi - 1u - lifted, 1., scan_horizon);
    stem.insert(stem.end(), block.values().begin(), block.values().end());
    witness_certificate cert{std::move(construction), Stem{std::move(stem)}, {}, {}, {}, {}};
    const auto norms = prefix_norms(series, cert.stem);
    cert.checkpoints.push_back({lifted, measure::partial_sum, norms[lifted - 1u], static_cast<double>(m) + 1.,
                                relation::gt, "lift"});
    certify_interval(cert, norms, k, iv, m);
    return cert;
}

} // namespace detail

// B_m construction: U, then u(r+1), ... until the norm exceeds m+1, then a
// small-norm block so every position of one whole interval I_k stays above m.
inline witness_certificate dense_open_witness_Bm(const series_oracle &series, const talagrand_sequence &seq,
                                                 const certified_stream &u, std::size_t m,
                                                 const subseq_stem &basic_open, std::size_t scan_horizon)
{
    detail::require_kind(u, certified_stream::kind::subseq);
    const auto r = basic_open.size();
    if (r <= m) {
        throw precondition_violation("basic open set length r=" + std::to_string(r) + " must exceed m="
                                     + std::to_string(m));
    }
    verify_source(series, u);
    std::vector<std::size_t> stem = basic_open.values();
    running_sum acc(series.space());
    for (auto v : stem) {
        acc.add(series.term(v));
    }
    const auto lift = static_cast<double>(m) + 1.;
    // u(q) for q > r, skipping entries that would break monotonicity.
    std::size_t q = r + 1u;
    while (detail::source_value(u, q, scan_horizon, "aligning u past U") <= stem.back()) {
        ++q;
    }
    do {
        stem.push_back(detail::source_value(u, q++, scan_horizon, "looking for a norm above " + std::to_string(m + 1u)));
        acc.add(series.term(stem.back()));
    } while (!holds(relation::gt, acc.norm(), lift));
    const auto after = stem.back();
    return detail::finish_dense_open<subseq_stem>(series, seq, std::move(stem), after, m, scan_horizon,
                                                  "dense-open-Bm");
}

// C_m construction: U, then t(z+1), ..., t(m_r) with z = max(r, max U) until
// the norm exceeds m+1, then small-norm values above everything used so the
// stem length lands on n_{k+1}-1. Values of t already in U are skipped.
inline witness_certificate dense_open_witness_Cm(const series_oracle &series, const talagrand_sequence &seq,
                                                 const certified_stream &t, std::size_t m,
                                                 const rearr_stem &basic_open, std::size_t scan_horizon)
{
    detail::require_kind(t, certified_stream::kind::rearr);
    const auto r = basic_open.size();
    if (r <= m) {
        throw precondition_violation("basic open set length r=" + std::to_string(r) + " must exceed m="
                                     + std::to_string(m));
    }
    verify_source(series, t);
    std::vector<std::size_t> stem = basic_open.values();
    const auto z = std::max(r, *std::max_element(stem.begin(), stem.end()));
    std::vector<bool> used(z + 1u, false);
    running_sum acc(series.space());
    for (auto v : stem) {
        used[v] = true;
        acc.add(series.term(v));
    }
    const auto lift = static_cast<double>(m) + 1.;
    std::size_t after = z;
    std::size_t i = z + 1u;
    do {
        const auto v = detail::source_value(t, i, scan_horizon, "looking for a norm above " + std::to_string(m + 1u));
        after = std::max(after, i);
        ++i;
        if (v < used.size() && used[v]) {
            continue;
        }
        stem.push_back(v);
        after = std::max(after, v);
        acc.add(series.term(v));
    } while (!holds(relation::gt, acc.norm(), lift));
    return detail::finish_dense_open<rearr_stem>(series, seq, std::move(stem), after, m, scan_horizon,
                                                 "dense-open-Cm");
}

// A_m construction for 0-1 codings: 1s at the positions u(q) past the stem
// until the norm exceeds m, then 0s through the end of an interval. Zero
// padding adds nothing, so no smallness of the terms is needed.
inline witness_certificate dense_open_witness_Am(const series_oracle &series, const talagrand_sequence &seq,
                                                 const certified_stream &u, std::size_t m, const selection_stem &stem,
                                                 std::size_t scan_horizon)
{
    detail::require_kind(u, certified_stream::kind::subseq);
    verify_source(series, u);
    auto bits = stem.bits();
    running_sum acc(series.space());
    for (std::size_t i = 1; i <= bits.size(); ++i) {
        if (bits[i - 1u] == 1u) {
            acc.add(series.term(i));
        }
    }
    const auto bound = static_cast<double>(m);
    std::size_t q = 1;
    while (!holds(relation::gt, acc.norm(), bound)) {
        const auto p = detail::source_value(u, q++, scan_horizon, "looking for a norm above " + std::to_string(m));
        if (p <= bits.size()) {
            continue;
        }
        bits.resize(p, 0u);
        bits[p - 1u] = 1u;
        acc.add(series.term(p));
    }
    const auto lifted = bits.size();
    const auto k = seq.first_index_above(lifted, m);
    const auto iv = interval(seq, k);
    bits.resize(iv.hi - 1u, 0u);
    witness_certificate cert{"dense-open-Am", selection_stem{std::move(bits)}, {}, {}, {}, {}};
    const auto norms = detail::prefix_norms(series, cert.stem);
    if (lifted > 0u) {
        cert.checkpoints.push_back({lifted, measure::partial_sum, norms[lifted - 1u], bound, relation::gt, "lift"});
    }
    detail::certify_interval(cert, norms, k, iv, m);
    return cert;
}

} // namespace bw

#endif
