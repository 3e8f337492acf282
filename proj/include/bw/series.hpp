#ifndef BW_SERIES_HPP
#define BW_SERIES_HPP

#include <algorithm>
#include <cstddef>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include <bw/error.hpp>
#include <bw/spaces.hpp>

namespace bw
{

struct series_flags {
    bool liminf_norm_zero = false;
    bool limsup_norm_infinite = false;
};

// A deterministic rule n -> x_n (n >= 1) together with the hypotheses the
// series claims to satisfy. The claims are tested by the constructions that
// rely on them, never trusted.
class series_oracle
{
public:
    using term_fn = std::function<finite_support_vector(std::size_t)>;

    series_oracle(std::string name, space_spec space, term_fn term, series_flags flags = {})
        : m_name(std::move(name)), m_space(space), m_term(std::move(term)), m_flags(flags)
    {
    }

    const std::string &name() const noexcept
    {
        return m_name;
    }
    const space_spec &space() const noexcept
    {
        return m_space;
    }
    const series_flags &flags() const noexcept
    {
        return m_flags;
    }

    finite_support_vector term(std::size_t n) const
    {
        if (n == 0u) {
            throw precondition_violation("series terms are indexed from 1");
        }
        return m_term(n);
    }
    double term_norm(std::size_t n) const
    {
        return norm(m_space, term(n));
    }

private:
    std::string m_name;
    space_spec m_space;
    term_fn m_term;
    series_flags m_flags;
};

inline const std::vector<std::string> &catalog_names()
{
    static const std::vector<std::string> names{"alt-harmonic", "unit-basis-c0", "decaying-signed-c0", "growing-real"};
    return names;
}

inline series_oracle catalog_series(std::string_view name)
{
    const auto sign = [](std::size_t n) { return n % 2u == 0u ? 1. : -1.; };
    if (name == "alt-harmonic") {
        return series_oracle{std::string(name), space_spec::real_line(),
                             [sign](std::size_t n) {
                                 return finite_support_vector::scalar(sign(n) / static_cast<double>(n));
                             },
                             {.liminf_norm_zero = true}};
    }
    if (name == "unit-basis-c0") {
        return series_oracle{std::string(name), space_spec::sequence(sup_exponent),
                             [](std::size_t n) { return finite_support_vector::basis(n); }};
    }
    if (name == "decaying-signed-c0") {
        return series_oracle{std::string(name), space_spec::sequence(sup_exponent),
                             [sign](std::size_t n) {
                                 const auto k = (n + 1u) / 2u;
                                 return finite_support_vector::basis(k, sign(n) / static_cast<double>(k));
                             },
                             {.liminf_norm_zero = true}};
    }
    if (name == "growing-real") {
        return series_oracle{std::string(name), space_spec::real_line(),
                             [sign](std::size_t n) {
                                 return finite_support_vector::scalar(sign(n) * static_cast<double>(n));
                             },
                             {.limsup_norm_infinite = true}};
    }
    throw unknown_name("unknown catalog series '" + std::string(name) + "'");
}

// Finite prefix of a 0-1 selection t in {0,1}^N.
class selection_stem
{
public:
    selection_stem() = default;
    explicit selection_stem(std::vector<unsigned char> bits) : m_bits(std::move(bits))
    {
        for (auto b : m_bits) {
            if (b > 1u) {
                throw invalid_stem("selection bits must be 0 or 1");
            }
        }
    }
    static selection_stem parse(std::string_view word)
    {
        std::vector<unsigned char> bits;
        for (char c : word) {
            if (c != '0' && c != '1') {
                throw invalid_stem("selection word must consist of 0 and 1");
            }
            bits.push_back(static_cast<unsigned char>(c - '0'));
        }
        return selection_stem{std::move(bits)};
    }

    std::size_t size() const noexcept
    {
        return m_bits.size();
    }
    // 1-based.
    unsigned char operator[](std::size_t i) const
    {
        return m_bits.at(i - 1u);
    }
    const std::vector<unsigned char> &bits() const noexcept
    {
        return m_bits;
    }

    friend bool operator==(const selection_stem &, const selection_stem &) = default;

private:
    std::vector<unsigned char> m_bits;
};

// Finite prefix of an increasing s in S.
class subseq_stem
{
public:
    subseq_stem() = default;
    explicit subseq_stem(std::vector<std::size_t> idx) : m_idx(std::move(idx))
    {
        for (std::size_t i = 0; i < m_idx.size(); ++i) {
            if (m_idx[i] == 0u || (i > 0u && m_idx[i] <= m_idx[i - 1u])) {
                throw invalid_stem("subsequence stem must be strictly increasing positive integers");
            }
        }
    }

    std::size_t size() const noexcept
    {
        return m_idx.size();
    }
    std::size_t operator[](std::size_t i) const
    {
        return m_idx.at(i - 1u);
    }
    const std::vector<std::size_t> &values() const noexcept
    {
        return m_idx;
    }

    friend bool operator==(const subseq_stem &, const subseq_stem &) = default;

private:
    std::vector<std::size_t> m_idx;
};

// Finite prefix of a bijection p in P.
class rearr_stem
{
public:
    rearr_stem() = default;
    explicit rearr_stem(std::vector<std::size_t> vals) : m_vals(std::move(vals))
    {
        auto sorted = m_vals;
        std::sort(sorted.begin(), sorted.end());
        if ((!sorted.empty() && sorted.front() == 0u)
            || std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
            throw invalid_stem("rearrangement stem must be injective positive integers");
        }
    }

    std::size_t size() const noexcept
    {
        return m_vals.size();
    }
    std::size_t operator[](std::size_t i) const
    {
        return m_vals.at(i - 1u);
    }
    const std::vector<std::size_t> &values() const noexcept
    {
        return m_vals;
    }

    friend bool operator==(const rearr_stem &, const rearr_stem &) = default;

private:
    std::vector<std::size_t> m_vals;
};

using indexer_stem = std::variant<selection_stem, subseq_stem, rearr_stem>;

inline std::size_t stem_size(const indexer_stem &s)
{
    return std::visit([](const auto &x) { return x.size(); }, s);
}

inline std::string_view stem_kind_name(const indexer_stem &s)
{
    switch (s.index()) {
        case 0:
            return "selection";
        case 1:
            return "subseq";
        default:
            return "rearr";
    }
}

struct norm_checkpoint {
    std::size_t l;
    double norm;
};

// Norms of the partial sums read through a stem, one checkpoint per l.
struct partial_sum_trace {
    indexer_stem stem;
    std::vector<norm_checkpoint> checkpoints;

    std::size_t horizon() const noexcept
    {
        return checkpoints.empty() ? 0u : checkpoints.back().l;
    }
};

// Calls f(l, norm) for l = 1..horizon; stops early when f returns false.
template <typename F>
void for_each_partial_norm(const series_oracle &series, const indexer_stem &stem, std::size_t horizon, F &&f)
{
    if (horizon > stem_size(stem)) {
        throw horizon_exceeds_stem("horizon " + std::to_string(horizon) + " exceeds stem length "
                                   + std::to_string(stem_size(stem)));
    }
    running_sum acc(series.space());
    for (std::size_t l = 1; l <= horizon; ++l) {
        if (const auto *sel = std::get_if<selection_stem>(&stem)) {
            if ((*sel)[l] == 1u) {
                acc.add(series.term(l));
            }
        } else if (const auto *sub = std::get_if<subseq_stem>(&stem)) {
            acc.add(series.term((*sub)[l]));
        } else {
            acc.add(series.term(std::get<rearr_stem>(stem)[l]));
        }
        if (!f(l, acc.norm())) {
            return;
        }
    }
}

inline partial_sum_trace partial_sums(const series_oracle &series, const indexer_stem &stem, std::size_t horizon)
{
    partial_sum_trace trace{stem, {}};
    trace.checkpoints.reserve(horizon);
    for_each_partial_norm(series, stem, horizon, [&](std::size_t l, double n) {
        trace.checkpoints.push_back({l, n});
        return true;
    });
    return trace;
}

// Shortest extension of an injective stem whose values are exactly {1..k},
// k = max(values, length); missing values are appended in increasing order.
inline rearr_stem extend_to_prefix_bijection(const rearr_stem &stem)
{
    const auto &vals = stem.values();
    std::size_t k = vals.size();
    for (auto v : vals) {
        k = std::max(k, v);
    }
    std::vector<bool> used(k + 1u, false);
    for (auto v : vals) {
        used[v] = true;
    }
    auto out = vals;
    out.reserve(k);
    for (std::size_t v = 1; v <= k; ++v) {
        if (!used[v]) {
            out.push_back(v);
        }
    }
    return rearr_stem{std::move(out)};
}

inline bool is_prefix_bijection(std::span<const std::size_t> vals)
{
    std::vector<bool> seen(vals.size() + 1u, false);
    for (auto v : vals) {
        if (v == 0u || v > vals.size() || seen[v]) {
            return false;
        }
        seen[v] = true;
    }
    return true;
}

inline subseq_stem identity_subseq(std::size_t n)
{
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) {
        idx[i] = i + 1u;
    }
    return subseq_stem{std::move(idx)};
}

inline selection_stem identity_selection(std::size_t n)
{
    return selection_stem{std::vector<unsigned char>(n, 1u)};
}

} // namespace bw

#endif
