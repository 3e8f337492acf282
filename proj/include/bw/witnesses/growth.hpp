#ifndef BW_WITNESSES_GROWTH_HPP
#define BW_WITNESSES_GROWTH_HPP

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <bw/certificate.hpp>
#include <bw/error.hpp>
#include <bw/index_stream.hpp>
#include <bw/series.hpp>
#include <bw/spaces.hpp>

namespace bw
{

inline constexpr std::size_t default_scalar_horizon = 1'000'000;
inline constexpr std::size_t default_sequence_horizon = 10'000;

inline std::size_t default_horizon(const series_oracle &series)
{
    return series.space().get_kind() == space_spec::kind::sequence ? default_sequence_horizon
                                                                    : default_scalar_horizon;
}

enum class growth_strategy { greedy_positive, greedy_negative, per_coordinate, exhaustive };

inline std::string_view strategy_name(growth_strategy s)
{
    switch (s) {
        case growth_strategy::greedy_positive:
            return "greedy-positive";
        case growth_strategy::greedy_negative:
            return "greedy-negative";
        case growth_strategy::per_coordinate:
            return "per-coordinate";
        case growth_strategy::exhaustive:
            return "exhaustive";
    }
    return {};
}

inline growth_strategy parse_strategy(std::string_view s)
{
    for (auto g : {growth_strategy::greedy_positive, growth_strategy::greedy_negative,
                   growth_strategy::per_coordinate, growth_strategy::exhaustive}) {
        if (strategy_name(g) == s) {
            return g;
        }
    }
    throw unknown_name("unknown growth strategy '" + std::string(s) + "'");
}

// Bounded search for an increasing block of indices, all past a given index,
// whose summed terms reach a target norm.
class growth_oracle
{
public:
    static constexpr std::size_t default_window = 20;

    explicit growth_oracle(growth_strategy strategy, std::size_t window = default_window)
        : m_strategy(strategy), m_window(window)
    {
        if (window == 0u || window > 24u) {
            throw precondition_violation("exhaustive window must be in [1, 24]");
        }
    }

    growth_strategy strategy() const noexcept
    {
        return m_strategy;
    }
    bool is_greedy() const noexcept
    {
        return m_strategy == growth_strategy::greedy_positive || m_strategy == growth_strategy::greedy_negative;
    }

    void check_applicable(const series_oracle &series) const
    {
        if (is_greedy() && !series.space().is_scalar()) {
            throw precondition_violation(std::string(strategy_name(m_strategy))
                                         + " needs a scalar series, got " + series.space().describe());
        }
    }

    // Index of the next term past `after` with the greedy sign.
    std::optional<std::size_t> next_signed(const series_oracle &series, std::size_t after, std::size_t horizon) const
    {
        const double sign = m_strategy == growth_strategy::greedy_positive ? 1. : -1.;
        for (auto i = after + 1u; i <= horizon; ++i) {
            if (sign * series.term(i)[1] > 0.) {
                return i;
            }
        }
        return std::nullopt;
    }

    std::optional<std::vector<std::size_t>> find_block(const series_oracle &series, std::size_t after,
                                                       double target, std::size_t horizon) const
    {
        check_applicable(series);
        switch (m_strategy) {
            case growth_strategy::greedy_positive:
            case growth_strategy::greedy_negative:
                return greedy(series, after, target, horizon);
            case growth_strategy::per_coordinate:
                return per_coordinate(series, after, target, horizon);
            case growth_strategy::exhaustive:
                return exhaustive(series, after, target, horizon);
        }
        return std::nullopt;
    }

private:
    std::optional<std::vector<std::size_t>> greedy(const series_oracle &series, std::size_t after, double target,
                                                   std::size_t horizon) const
    {
        std::vector<std::size_t> block;
        running_sum acc(series.space());
        auto i = after;
        while (const auto next = next_signed(series, i, horizon)) {
            i = *next;
            block.push_back(i);
            acc.add(series.term(i));
            if (acc.norm() >= target) {
                return block;
            }
        }
        return std::nullopt;
    }

    // Collect terms whose coefficient at one coordinate has one sign; the
    // block norm dominates that coordinate's magnitude.
    std::optional<std::vector<std::size_t>> per_coordinate(const series_oracle &series, std::size_t after,
                                                           double target, std::size_t horizon) const
    {
        struct lane {
            double value = 0.;
            std::vector<std::size_t> block;
        };
        std::map<std::pair<std::size_t, bool>, lane> lanes;
        for (auto i = after + 1u; i <= horizon; ++i) {
            const auto x = series.term(i);
            for (const auto &[c, a] : x.entries()) {
                auto &ln = lanes[{c, a > 0.}];
                ln.value += a;
                ln.block.push_back(i);
                if (std::abs(ln.value) >= target) {
                    running_sum acc(series.space());
                    for (auto j : ln.block) {
                        acc.add(series.term(j));
                    }
                    if (acc.norm() >= target) {
                        return ln.block;
                    }
                }
            }
        }
        return std::nullopt;
    }

    // All selections inside the window after+1 .. after+window, visited in
    // Gray-code order; first one reaching the target wins.
    std::optional<std::vector<std::size_t>> exhaustive(const series_oracle &series, std::size_t after,
                                                       double target, std::size_t horizon) const
    {
        if (after >= horizon) {
            return std::nullopt;
        }
        const auto width = std::min(m_window, horizon - after);
        std::vector<finite_support_vector> terms;
        for (std::size_t i = 1; i <= width; ++i) {
            terms.push_back(series.term(after + i));
        }
        running_sum acc(series.space());
        std::uint32_t in = 0;
        const std::uint64_t total = std::uint64_t{1} << width;
        for (std::uint64_t g = 1; g < total; ++g) {
            const auto bit = static_cast<unsigned>(std::countr_zero(g));
            const auto mask = std::uint32_t{1} << bit;
            acc.add(terms[bit], (in & mask) ? -1. : 1.);
            in ^= mask;
            if (acc.norm() >= target) {
                std::vector<std::size_t> block;
                for (std::size_t b = 0; b < width; ++b) {
                    if (in & (std::uint32_t{1} << b)) {
                        block.push_back(after + b + 1u);
                    }
                }
                // Recompute in index order; Gray-code toggles may drift.
                running_sum check(series.space());
                for (auto j : block) {
                    check.add(series.term(j));
                }
                if (check.norm() >= target) {
                    return block;
                }
            }
        }
        return std::nullopt;
    }

    growth_strategy m_strategy;
    std::size_t m_window;
};

// A coding element that is certified only on its materialised prefix: the
// stream itself plus checkpoints re-verifiable against that prefix.
struct certified_stream {
    enum class kind { subseq, rearr };

    kind stem_kind = kind::subseq;
    index_stream indices;
    std::vector<checkpoint> checkpoints;
};

namespace detail
{

inline indexer_stem stream_stem(const certified_stream &src, std::size_t n)
{
    auto vals = src.indices.prefix(n);
    if (vals.size() < n) {
        throw inconsistent_witness("certified stream ends before its checkpoint at l=" + std::to_string(n));
    }
    if (src.stem_kind == certified_stream::kind::subseq) {
        return subseq_stem{std::move(vals)};
    }
    return rearr_stem{std::move(vals)};
}

} // namespace detail

inline void verify_source(const series_oracle &series, const certified_stream &src)
{
    std::size_t max_l = 0;
    for (const auto &c : src.checkpoints) {
        max_l = std::max(max_l, c.l);
    }
    witness_certificate cert{"source", detail::stream_stem(src, max_l), src.checkpoints, {}, {}, {}};
    if (const auto fail = check_certificate(series, cert)) {
        throw inconsistent_witness("source checkpoint fails re-verification: " + fail->reason);
    }
}

// Doubling construction: start from a block of positive norm, then keep
// appending blocks of norm >= 3c to a stem of norm c, so by the reverse
// triangle inequality each stage at least doubles the norm. Stages are cut
// at the shortest prefix reaching 2c and only taken while they stay within
// target/2; the last stage is cut at the shortest prefix above the target
// (and above 2c), so every checkpoint at least doubles its predecessor.
inline witness_certificate grow_unbounded_subseries(const series_oracle &series, const growth_oracle &oracle,
                                                    double target, std::size_t horizon)
{
    oracle.check_applicable(series);
    std::vector<std::size_t> stem;
    running_sum acc(series.space());
    witness_certificate cert{"grow-subseries", subseq_stem{}, {}, {}, {}, {}};
    const auto exhausted_at = [&](std::string_view stage) {
        return exhausted("search horizon " + std::to_string(horizon) + " reached during " + std::string(stage)
                         + " before the partial-sum norm exceeded " + std::to_string(target)
                         + " (the series may be uniformly unconditionally bounded)");
    };
    // Shortest prefix of block that, appended to the stem, satisfies done().
    const auto cut = [&](const std::vector<std::size_t> &block, auto done) -> std::optional<std::vector<std::size_t>> {
        auto probe = acc;
        for (std::size_t i = 0; i < block.size(); ++i) {
            probe.add(series.term(block[i]));
            if (done(probe.norm())) {
                return std::vector<std::size_t>(block.begin(), block.begin() + static_cast<std::ptrdiff_t>(i + 1u));
            }
        }
        return std::nullopt;
    };
    const auto append = [&](const std::vector<std::size_t> &block) {
        for (auto i : block) {
            stem.push_back(i);
            acc.add(series.term(i));
        }
    };

    const auto first = oracle.find_block(series, 0, 2. * delta, horizon);
    if (!first) {
        throw exhausted_at("the initial block");
    }
    append(*first);
    double current = acc.norm();
    if (holds(relation::gt, current, target)) {
        cert.checkpoints.push_back({stem.size(), measure::partial_sum, current, target, relation::gt, "target"});
        cert.stem = subseq_stem{std::move(stem)};
        return cert;
    }
    cert.checkpoints.push_back({stem.size(), measure::partial_sum, current, 0., relation::gt, "initial"});

    while (true) {
        const double doubled = 2. * current;
        const auto reached_double = [&](double n) { return holds(relation::ge, n, doubled); };
        const auto block = oracle.find_block(series, stem.back(), 3. * current, horizon);
        if (!block) {
            break;
        }
        const auto stage = cut(*block, reached_double);
        if (!stage) {
            throw inconsistent_witness("doubling block does not reach twice the stem norm");
        }
        auto probe = acc;
        for (auto i : *stage) {
            probe.add(series.term(i));
        }
        if (probe.norm() > target / 2.) {
            break;
        }
        append(*stage);
        current = acc.norm();
        cert.checkpoints.push_back({stem.size(), measure::partial_sum, current, doubled, relation::ge, "doubling"});
    }

    // Final stage: try the cheapest block that could work, fall back to the
    // one the reverse triangle inequality guarantees.
    const double need = std::max(target + delta, 2. * current);
    const auto above = [&](double n) { return holds(relation::gt, n, target) && n >= 2. * current; };
    std::optional<std::vector<std::size_t>> last;
    for (const double want : {need - current + 2. * delta, need + current + 2. * delta}) {
        const auto block = oracle.find_block(series, stem.back(), want, horizon);
        if (!block) {
            throw exhausted_at("the final stage");
        }
        if ((last = cut(*block, above))) {
            break;
        }
    }
    if (!last) {
        throw exhausted_at("the final stage");
    }
    append(*last);
    current = acc.norm();
    cert.checkpoints.push_back({stem.size(), measure::partial_sum, current, target, relation::gt, "target"});
    cert.stem = subseq_stem{std::move(stem)};
    return cert;
}

// Continues an unbounded subseries past `prefix`. Greedy strategies yield the
// next same-signed term one at a time (grown stems are prefixes of this);
// the others yield whole doubling blocks.
inline index_stream growth_stream(const series_oracle &series, const growth_oracle &oracle, std::size_t horizon,
                                  std::vector<std::size_t> prefix = {})
{
    oracle.check_applicable(series);
    if (oracle.is_greedy()) {
        return index_stream{std::move(prefix), [series, oracle, horizon](std::vector<std::size_t> &out) {
                                const auto next = oracle.next_signed(series, out.empty() ? 0u : out.back(), horizon);
                                if (!next) {
                                    return false;
                                }
                                out.push_back(*next);
                                return true;
                            }};
    }
    auto acc = std::make_shared<running_sum>(series.space());
    for (auto i : prefix) {
        acc->add(series.term(i));
    }
    return index_stream{std::move(prefix), [series, oracle, horizon, acc](std::vector<std::size_t> &out) {
                            const double want = std::max(3. * acc->norm(), 2. * delta);
                            const auto block = oracle.find_block(series, out.empty() ? 0u : out.back(), want, horizon);
                            if (!block) {
                                return false;
                            }
                            for (auto i : *block) {
                                out.push_back(i);
                                acc->add(series.term(i));
                            }
                            return true;
                        }};
}

// First positions where the stream's partial sums reach 1, 2, ..., depth.
inline std::vector<checkpoint> level_checkpoints(const series_oracle &series, const index_stream &stream,
                                                 std::size_t depth, std::size_t horizon)
{
    std::vector<checkpoint> out;
    running_sum acc(series.space());
    std::size_t level = 1;
    for (std::size_t n = 1; level <= depth; ++n) {
        const auto v = stream.at(n);
        if (!v || *v > horizon) {
            throw exhausted("stream partial sums did not reach " + std::to_string(level) + " within horizon "
                            + std::to_string(horizon));
        }
        acc.add(series.term(*v));
        const double nv = acc.norm();
        while (level <= depth && nv >= static_cast<double>(level)) {
            out.push_back({n, measure::partial_sum, nv, static_cast<double>(level), relation::ge,
                           "level-" + std::to_string(level)});
            ++level;
        }
    }
    return out;
}

inline certified_stream grown_subseries(const series_oracle &series, const growth_oracle &oracle,
                                        std::size_t depth, std::size_t horizon, std::vector<std::size_t> prefix = {})
{
    auto stream = growth_stream(series, oracle, horizon, std::move(prefix));
    auto cps = level_checkpoints(series, stream, depth, horizon);
    return {certified_stream::kind::subseq, std::move(stream), std::move(cps)};
}

// Stage-wise rearrangement built from an unbounded subseries s: stage j
// appends the unused values of s, in order, until the partial sum reaches j,
// then completes the stem to a bijection of {1..k_j}.
class rearrangement_builder
{
public:
    rearrangement_builder(series_oracle series, index_stream source, std::size_t horizon)
        : m_series(std::move(series)), m_source(std::move(source)), m_horizon(horizon), m_acc(m_series.space())
    {
    }

    // Runs the next stage; the returned checkpoint certifies norm >= stage.
    checkpoint next_stage()
    {
        const double level = static_cast<double>(++m_stage);
        while (true) {
            const auto v = m_source.at(++m_pos);
            if (!v || *v > m_horizon) {
                throw exhausted("subseries source exhausted within horizon " + std::to_string(m_horizon)
                                + " during rearrangement stage " + std::to_string(m_stage));
            }
            if (used(*v)) {
                continue;
            }
            push(*v);
            if (m_acc.norm() >= level) {
                break;
            }
        }
        checkpoint cp{m_stem.size(), measure::partial_sum, m_acc.norm(), level, relation::ge,
                      "stage-" + std::to_string(m_stage)};
        const auto full = extend_to_prefix_bijection(rearr_stem{m_stem});
        for (auto i = m_stem.size(); i < full.size(); ++i) {
            push(full.values()[i]);
        }
        m_boundaries.push_back(m_stem.size());
        return cp;
    }

    const std::vector<std::size_t> &stem() const noexcept
    {
        return m_stem;
    }
    const std::vector<std::size_t> &boundaries() const noexcept
    {
        return m_boundaries;
    }

private:
    bool used(std::size_t v) const
    {
        return v < m_used.size() && m_used[v];
    }
    void push(std::size_t v)
    {
        if (v >= m_used.size()) {
            m_used.resize(std::max(v + 1u, 2u * m_used.size()), false);
        }
        m_used[v] = true;
        m_stem.push_back(v);
        m_acc.add(m_series.term(v));
    }

    series_oracle m_series;
    index_stream m_source;
    std::size_t m_horizon;
    running_sum m_acc;
    std::vector<std::size_t> m_stem;
    std::vector<bool> m_used;
    std::vector<std::size_t> m_boundaries;
    std::size_t m_pos = 0;
    std::size_t m_stage = 0;
};

namespace detail
{

inline void check_rearrangement_source(const series_oracle &series, const certified_stream &s, std::size_t depth)
{
    if (s.stem_kind != certified_stream::kind::subseq) {
        throw precondition_violation("rearrangement needs a subsequence source");
    }
    verify_source(series, s);
    for (std::size_t j = 1; j <= depth; ++j) {
        const bool reached = std::any_of(s.checkpoints.begin(), s.checkpoints.end(), [&](const auto &c) {
            return c.what == measure::partial_sum && c.norm >= static_cast<double>(j);
        });
        if (!reached) {
            throw precondition_violation("subseries is not certified to reach norm " + std::to_string(j));
        }
    }
}

} // namespace detail

inline witness_certificate subseries_to_rearrangement(const series_oracle &series, const certified_stream &s,
                                                      std::size_t depth, std::size_t horizon)
{
    witness_certificate cert{"rearrangement", rearr_stem{}, {}, {}, {}, {}};
    if (depth == 0u) {
        return cert;
    }
    detail::check_rearrangement_source(series, s, depth);
    rearrangement_builder builder(series, s.indices, horizon);
    for (std::size_t j = 1; j <= depth; ++j) {
        cert.checkpoints.push_back(builder.next_stage());
    }
    cert.stem = rearr_stem{builder.stem()};
    cert.stage_boundaries = builder.boundaries();
    return cert;
}

// The same stages continued indefinitely, as a rearrangement stream whose
// first `depth` stages are certified.
inline certified_stream rearrangement_stream(const series_oracle &series, const certified_stream &s,
                                             std::size_t depth, std::size_t horizon)
{
    detail::check_rearrangement_source(series, s, depth);
    auto builder = std::make_shared<rearrangement_builder>(series, s.indices, horizon);
    std::vector<checkpoint> cps;
    for (std::size_t j = 1; j <= depth; ++j) {
        cps.push_back(builder->next_stage());
    }
    index_stream stream{builder->stem(), [builder](std::vector<std::size_t> &out) {
                            const auto before = builder->stem().size();
                            try {
                                builder->next_stage();
                            } catch (const exhausted &) {
                                return false;
                            }
                            out.insert(out.end(), builder->stem().begin() + static_cast<std::ptrdiff_t>(before),
                                       builder->stem().end());
                            return true;
                        }};
    return {certified_stream::kind::rearr, std::move(stream), std::move(cps)};
}

// Greedy u with ||x_{u(n+1)}|| > ||x_{u(n)}|| and ||x_{u(n+1)}|| > 2||S_n||,
// so the partial-sum norms S_n increase strictly as well.
inline witness_certificate limsup_subseries(const series_oracle &series, std::size_t depth, std::size_t horizon)
{
    witness_certificate cert{"limsup-subseries", subseq_stem{}, {}, {}, {}, {}};
    if (depth == 0u) {
        return cert;
    }
    std::vector<std::size_t> u;
    running_sum acc(series.space());
    std::size_t i = 1;
    for (; i <= horizon && series.term_norm(i) == 0.; ++i) {
    }
    if (i > horizon) {
        throw exhausted("no nonzero term within horizon " + std::to_string(horizon));
    }
    u.push_back(i);
    acc.add(series.term(i));
    double last_term = series.term_norm(i);
    double last_sum = acc.norm();
    for (std::size_t n = 1; n <= depth; ++n) {
        std::size_t j = u.back() + 1u;
        double tn = 0.;
        for (; j <= horizon; ++j) {
            tn = series.term_norm(j);
            if (tn > last_term + delta && tn > 2. * last_sum + delta) {
                break;
            }
        }
        if (j > horizon) {
            throw exhausted("no term past index " + std::to_string(u.back()) + " dominates the chain within horizon "
                            + std::to_string(horizon) + " (limsup of term norms not confirmed)");
        }
        u.push_back(j);
        acc.add(series.term(j));
        const double s = acc.norm();
        const auto l = u.size();
        cert.checkpoints.push_back({l, measure::term, tn, last_term, relation::gt, "term-increase"});
        cert.checkpoints.push_back({l, measure::term, tn, 2. * last_sum, relation::gt, "term-dominates-sum"});
        cert.checkpoints.push_back({l, measure::partial_sum, s, last_sum, relation::gt, "sum-increase"});
        last_term = tn;
        last_sum = s;
    }
    cert.stem = subseq_stem{std::move(u)};
    return cert;
}

} // namespace bw

#endif
