#ifndef BW_TESTS_ORACLES_HPP
#define BW_TESTS_ORACLES_HPP

// Independent reference computations for the catalog series. Everything here
// works on plain doubles and closed-form term formulas; nothing calls into the
// library's summation, norm or search code.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <map>
#include <vector>

namespace oracle
{

inline double alt_harmonic(std::size_t n)
{
    return (n % 2u == 0u ? 1. : -1.) / static_cast<double>(n);
}

inline double growing_real(std::size_t n)
{
    return (n % 2u == 0u ? 1. : -1.) * static_cast<double>(n);
}

// |sum of f over idx|, summed left to right.
template <typename F>
double abs_sum(F f, const std::vector<std::size_t> &idx)
{
    double s = 0.;
    for (auto i : idx) {
        s += f(i);
    }
    return std::abs(s);
}

// Prefix |sums| along idx.
template <typename F>
std::vector<double> abs_prefix_sums(F f, const std::vector<std::size_t> &idx)
{
    std::vector<double> out;
    double s = 0.;
    for (auto i : idx) {
        s += f(i);
        out.push_back(std::abs(s));
    }
    return out;
}

// Sup norm of a sum of unit basis vectors e_{idx}, counted with
// multiplicity.
inline double unit_basis_sup(const std::vector<std::size_t> &idx)
{
    std::map<std::size_t, double> v;
    for (auto i : idx) {
        v[i] += 1.;
    }
    double m = 0.;
    for (const auto &[k, a] : v) {
        m = std::max(m, std::abs(a));
    }
    return m;
}

// Smallest K with (1/2) * sum_{k<=K} 1/k > t.
inline std::size_t first_half_harmonic_above(double t)
{
    double h = 0.;
    for (std::size_t k = 1;; ++k) {
        h += 1. / static_cast<double>(k);
        if (h / 2. > t) {
            return k;
        }
    }
}

inline std::vector<std::size_t> evens(std::size_t count)
{
    std::vector<std::size_t> out;
    for (std::size_t k = 1; k <= count; ++k) {
        out.push_back(2u * k);
    }
    return out;
}

} // namespace oracle

#endif
