#ifndef BW_WITNESSES_BRUTE_FORCE_HPP
#define BW_WITNESSES_BRUTE_FORCE_HPP

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <string_view>
#include <vector>

#include <bw/error.hpp>
#include <bw/series.hpp>
#include <bw/spaces.hpp>

namespace bw
{

enum class pattern_alphabet { zero_one, signed_ternary };

inline std::string_view alphabet_name(pattern_alphabet a)
{
    return a == pattern_alphabet::zero_one ? "01" : "-101";
}

inline constexpr std::size_t max_pattern_length = 14;

// max over t in alphabet^n of ||sum_{i<=n} t(i) x_i||, enumerated in
// reflected Gray order so that each word differs from the previous one by a
// single +-x_i.
inline double uniform_bound_bruteforce(const series_oracle &series, std::size_t n, pattern_alphabet alphabet)
{
    if (n > max_pattern_length) {
        throw precondition_violation("pattern length n=" + std::to_string(n) + " exceeds "
                                     + std::to_string(max_pattern_length));
    }
    if (n == 0u) {
        return 0.;
    }
    // Dense rows over the union of the supports.
    std::map<std::size_t, std::size_t> column;
    std::vector<finite_support_vector> terms;
    for (std::size_t i = 1; i <= n; ++i) {
        terms.push_back(series.term(i));
        for (const auto &[c, a] : terms.back().entries()) {
            column.emplace(c, column.size());
        }
    }
    for (const auto &t : terms) {
        norm(series.space(), t);
    }
    const auto width = column.size();
    std::vector<double> rows(n * width, 0.);
    for (std::size_t i = 0; i < n; ++i) {
        for (const auto &[c, a] : terms[i].entries()) {
            rows[i * width + column[c]] = a;
        }
    }

    const int radix = alphabet == pattern_alphabet::zero_one ? 2 : 3;
    const int lowest = alphabet == pattern_alphabet::zero_one ? 0 : -1;
    std::vector<int> digit(n, 0);
    std::vector<int> dir(n, 1);
    std::vector<double> sum(width, 0.);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t c = 0; c < width; ++c) {
            sum[c] += lowest * rows[i * width + c];
        }
    }
    double best = norm(series.space(), sum);
    while (true) {
        std::size_t i = 0;
        while (i < n && (digit[i] + dir[i] < 0 || digit[i] + dir[i] >= radix)) {
            dir[i] = -dir[i];
            ++i;
        }
        if (i == n) {
            break;
        }
        digit[i] += dir[i];
        const double step = dir[i];
        for (std::size_t c = 0; c < width; ++c) {
            sum[c] += step * rows[i * width + c];
        }
        best = std::max(best, norm(series.space(), sum));
    }
    return best;
}

// max over nonempty increasing selections within {1..n} of the norm of the
// selected sum, each evaluated through partial_sums.
inline double max_selection_norm(const series_oracle &series, std::size_t n)
{
    if (n > 20u) {
        throw precondition_violation("selection enumeration limited to n <= 20");
    }
    double best = 0.;
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (std::size_t{1} << i)) {
                idx.push_back(i + 1u);
            }
        }
        const auto len = idx.size();
        const auto trace = partial_sums(series, subseq_stem{std::move(idx)}, len);
        best = std::max(best, trace.checkpoints.back().norm);
    }
    return best;
}

// max over all permutations p of {1..n} and all l <= n of
// ||sum_{i<=l} x_{p(i)}||.
inline double max_rearrangement_prefix_norm(const series_oracle &series, std::size_t n)
{
    if (n > 10u) {
        throw precondition_violation("permutation enumeration limited to n <= 10");
    }
    std::vector<std::size_t> p(n);
    std::iota(p.begin(), p.end(), std::size_t{1});
    std::vector<finite_support_vector> terms;
    for (std::size_t i = 1; i <= n; ++i) {
        terms.push_back(series.term(i));
    }
    double best = 0.;
    do {
        running_sum acc(series.space());
        for (auto v : p) {
            acc.add(terms[v - 1u]);
            best = std::max(best, acc.norm());
        }
    } while (std::next_permutation(p.begin(), p.end()));
    return best;
}

} // namespace bw

#endif
