#ifndef BW_IDEALS_HPP
#define BW_IDEALS_HPP

#include <cstddef>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <bw/error.hpp>
#include <bw/series.hpp>

namespace bw
{

// Half-open integer range [lo, hi).
struct int_range {
    std::size_t lo;
    std::size_t hi;

    std::size_t size() const noexcept
    {
        return hi - lo;
    }
    bool contains(std::size_t x) const noexcept
    {
        return lo <= x && x < hi;
    }
    friend bool operator==(const int_range &, const int_range &) = default;
};

// Increasing n_1 < n_2 < ... whose intervals I_k = [n_k, n_{k+1}) witness
// the Baire property of an ideal: no member contains infinitely many I_k.
class talagrand_sequence
{
public:
    using rule_fn = std::function<std::size_t(std::size_t)>;

    talagrand_sequence(std::string name, rule_fn rule) : m_name(std::move(name)), m_rule(std::move(rule))
    {
        if (m_rule(1) < 1u) {
            throw precondition_violation("talagrand sequence must start at n_1 >= 1");
        }
    }

    // n_k = k: every interval is a singleton.
    static talagrand_sequence linear()
    {
        return {"linear", [](std::size_t k) { return k; }};
    }
    // n_k = 2^k.
    static talagrand_sequence geometric()
    {
        return {"geometric", [](std::size_t k) {
                    if (k >= std::numeric_limits<std::size_t>::digits) {
                        throw precondition_violation("geometric talagrand index overflows");
                    }
                    return std::size_t{1} << k;
                }};
    }

    const std::string &name() const noexcept
    {
        return m_name;
    }

    std::size_t operator()(std::size_t k) const
    {
        if (k == 0u) {
            throw precondition_violation("talagrand sequence is indexed from 1");
        }
        const auto n = m_rule(k);
        if (k > 1u && n <= m_rule(k - 1u)) {
            throw precondition_violation("talagrand sequence is not strictly increasing at k="
                                         + std::to_string(k));
        }
        return n;
    }

    // Smallest k > min_k with n_k > bound.
    std::size_t first_index_above(std::size_t bound, std::size_t min_k = 0) const
    {
        std::size_t k = min_k + 1u;
        while ((*this)(k) <= bound) {
            ++k;
        }
        return k;
    }

private:
    std::string m_name;
    rule_fn m_rule;
};

inline int_range interval(const talagrand_sequence &seq, std::size_t k)
{
    return {seq(k), seq(k + 1u)};
}

class ideal_spec
{
public:
    enum class kind { fin, density, talagrand_given };

    static ideal_spec fin()
    {
        return ideal_spec{kind::fin, nullptr};
    }
    static ideal_spec density()
    {
        return ideal_spec{kind::density, nullptr};
    }
    static ideal_spec talagrand_given(talagrand_sequence seq)
    {
        return ideal_spec{kind::talagrand_given, std::make_shared<const talagrand_sequence>(std::move(seq))};
    }

    kind get_kind() const noexcept
    {
        return m_kind;
    }
    const talagrand_sequence *given_sequence() const noexcept
    {
        return m_seq.get();
    }
    std::string name() const
    {
        switch (m_kind) {
            case kind::fin:
                return "fin";
            case kind::density:
                return "density";
            case kind::talagrand_given:
                return "talagrand-given(" + m_seq->name() + ")";
        }
        return {};
    }

private:
    ideal_spec(kind k, std::shared_ptr<const talagrand_sequence> seq) : m_kind(k), m_seq(std::move(seq)) {}

    kind m_kind;
    std::shared_ptr<const talagrand_sequence> m_seq;
};

// Fin: n_k = k. Density ideal: n_k = 2^k, since a set holding infinitely
// many [2^k, 2^{k+1}) has upper density >= 1/2.
inline talagrand_sequence default_talagrand(const ideal_spec &ideal)
{
    switch (ideal.get_kind()) {
        case ideal_spec::kind::fin:
            return talagrand_sequence::linear();
        case ideal_spec::kind::density:
            return talagrand_sequence::geometric();
        case ideal_spec::kind::talagrand_given:
            break;
    }
    throw unsupported("talagrand-given ideals already carry their sequence");
}

inline talagrand_sequence sequence_for(const ideal_spec &ideal)
{
    if (const auto *seq = ideal.given_sequence()) {
        return *seq;
    }
    return default_talagrand(ideal);
}

// card(set ∩ {1..n}) / n.
inline double density_at(const std::set<std::size_t> &set, std::size_t n)
{
    if (n == 0u) {
        throw precondition_violation("density_at needs n >= 1");
    }
    const auto count = std::distance(set.lower_bound(1), set.upper_bound(n));
    return static_cast<double>(count) / static_cast<double>(n);
}

// Membership of a finite set. Both Fin and the density ideal contain every
// finite set, so the answer carries no information beyond the axioms; infinite
// behaviour is only ever judged through interval evidence.
inline bool contains_finite(const ideal_spec &ideal, const std::set<std::size_t> &)
{
    if (ideal.get_kind() == ideal_spec::kind::talagrand_given) {
        throw unsupported("membership is not decidable for a talagrand-given ideal");
    }
    return true;
}

struct exceedance_report {
    double bound;
    std::size_t horizon;
    std::vector<std::size_t> exceed_set;
    std::vector<std::size_t> contained_intervals;
};

// Positions l <= horizon whose norm exceeds M (by more than delta), and the
// intervals I_k lying entirely inside that set and inside [1, horizon].
inline exceedance_report exceedance(const partial_sum_trace &trace, double bound, const talagrand_sequence &seq)
{
    const auto &cps = trace.checkpoints;
    for (std::size_t i = 0; i < cps.size(); ++i) {
        if (cps[i].l != i + 1u) {
            throw gap_in_trace("trace checkpoints must cover 1..horizon contiguously; gap at position "
                               + std::to_string(i + 1u));
        }
    }
    exceedance_report rep{bound, cps.size(), {}, {}};
    std::vector<bool> over(cps.size() + 1u, false);
    for (const auto &c : cps) {
        if (c.norm > bound + delta) {
            over[c.l] = true;
            rep.exceed_set.push_back(c.l);
        }
    }
    for (std::size_t k = 1;; ++k) {
        const auto iv = interval(seq, k);
        if (iv.hi > rep.horizon + 1u) {
            break;
        }
        bool all = true;
        for (auto l = iv.lo; l < iv.hi && all; ++l) {
            all = over[l];
        }
        if (all) {
            rep.contained_intervals.push_back(k);
        }
    }
    return rep;
}

struct boundedness_verdict {
    enum class kind { bounded_evidence, i_unbounded_evidence, undecided };

    kind verdict;
    double bound;
    std::size_t interval_count;
    std::size_t horizon;
    exceedance_report report;
};

inline std::string verdict_name(boundedness_verdict::kind k)
{
    switch (k) {
        case boundedness_verdict::kind::bounded_evidence:
            return "bounded-evidence";
        case boundedness_verdict::kind::i_unbounded_evidence:
            return "i-unbounded-evidence";
        case boundedness_verdict::kind::undecided:
            return "undecided";
    }
    return {};
}

inline constexpr std::size_t default_interval_threshold = 3;

// Finite evidence about I-boundedness of the partial sums read through the
// stem: never a proof of the infinitary statement.
inline boundedness_verdict i_bounded_verdict(const series_oracle &series, const indexer_stem &stem,
                                             const ideal_spec &ideal, double bound, std::size_t horizon,
                                             std::size_t threshold = default_interval_threshold)
{
    const auto trace = partial_sums(series, stem, horizon);
    auto rep = exceedance(trace, bound, sequence_for(ideal));
    boundedness_verdict v{boundedness_verdict::kind::undecided, bound, rep.contained_intervals.size(), horizon,
                          {}};
    if (rep.exceed_set.empty()) {
        v.verdict = boundedness_verdict::kind::bounded_evidence;
    } else if (rep.contained_intervals.size() >= threshold) {
        v.verdict = boundedness_verdict::kind::i_unbounded_evidence;
    }
    v.report = std::move(rep);
    return v;
}

} // namespace bw

#endif
