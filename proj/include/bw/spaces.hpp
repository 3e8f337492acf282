#ifndef BW_SPACES_HPP
#define BW_SPACES_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <limits>
#include <map>
#include <set>
#include <span>
#include <string>
#include <utility>

#include <bw/error.hpp>

namespace bw
{

// Margin applied to every strict inequality checked by a certificate.
inline constexpr double delta = 1e-9;

inline constexpr double sup_exponent = std::numeric_limits<double>::infinity();

// The ambient normed space. Only l^p / sup-norm models are supported:
// the real line, R^d with an l^p norm, and finitely supported sequences
// under an l^p or sup norm (the latter models c0).
class space_spec
{
public:
    enum class kind { real_line, euclidean, sequence };

    static space_spec real_line()
    {
        return space_spec{kind::real_line, 1, 1.};
    }
    static space_spec euclidean(std::size_t dim, double p)
    {
        if (dim == 0u) {
            throw precondition_violation("euclidean space needs dimension >= 1");
        }
        return space_spec{kind::euclidean, dim, checked_exponent(p)};
    }
    static space_spec sequence(double p)
    {
        return space_spec{kind::sequence, 0, checked_exponent(p)};
    }

    kind get_kind() const noexcept
    {
        return m_kind;
    }
    // 0 for sequence spaces.
    std::size_t dimension() const noexcept
    {
        return m_dim;
    }
    double exponent() const noexcept
    {
        return m_p;
    }
    bool is_sup() const noexcept
    {
        return std::isinf(m_p);
    }
    bool is_scalar() const noexcept
    {
        return m_kind == kind::real_line || (m_kind == kind::euclidean && m_dim == 1u);
    }

    std::string describe() const
    {
        const auto p = is_sup() ? std::string("sup") : std::to_string(m_p);
        switch (m_kind) {
            case kind::real_line:
                return "real-line";
            case kind::euclidean:
                return "euclidean(" + std::to_string(m_dim) + ", p=" + p + ")";
            case kind::sequence:
                return "sequence(p=" + p + ")";
        }
        return {};
    }

    friend bool operator==(const space_spec &, const space_spec &) = default;

private:
    space_spec(kind k, std::size_t d, double p) : m_kind(k), m_dim(d), m_p(p) {}

    static double checked_exponent(double p)
    {
        if (!(p >= 1.)) {
            throw precondition_violation("norm exponent must be >= 1 or infinite");
        }
        return p;
    }

    kind m_kind;
    std::size_t m_dim;
    double m_p;
};

// Sparse vector: 1-based coordinate -> nonzero coefficient.
class finite_support_vector
{
public:
    using map_type = std::map<std::size_t, double>;

    finite_support_vector() = default;
    finite_support_vector(std::initializer_list<std::pair<const std::size_t, double>> il)
    {
        for (const auto &[i, a] : il) {
            set(i, a);
        }
    }

    static finite_support_vector scalar(double a)
    {
        finite_support_vector v;
        v.set(1, a);
        return v;
    }
    static finite_support_vector basis(std::size_t i, double a = 1.)
    {
        finite_support_vector v;
        v.set(i, a);
        return v;
    }

    void set(std::size_t i, double a)
    {
        if (i == 0u) {
            throw precondition_violation("coordinate indices are 1-based");
        }
        if (a == 0.) {
            m_entries.erase(i);
        } else {
            m_entries[i] = a;
        }
    }
    double operator[](std::size_t i) const
    {
        const auto it = m_entries.find(i);
        return it == m_entries.end() ? 0. : it->second;
    }

    const map_type &entries() const noexcept
    {
        return m_entries;
    }
    bool is_zero() const noexcept
    {
        return m_entries.empty();
    }
    std::size_t max_index() const noexcept
    {
        return m_entries.empty() ? 0u : m_entries.rbegin()->first;
    }

    friend bool operator==(const finite_support_vector &, const finite_support_vector &) = default;

private:
    map_type m_entries;
};

namespace detail
{

inline void check_fits(const space_spec &space, std::size_t max_index)
{
    switch (space.get_kind()) {
        case space_spec::kind::real_line:
            if (max_index > 1u) {
                throw dimension_mismatch("coordinate " + std::to_string(max_index) + " on the real line");
            }
            break;
        case space_spec::kind::euclidean:
            if (max_index > space.dimension()) {
                throw dimension_mismatch("coordinate " + std::to_string(max_index) + " exceeds dimension "
                                         + std::to_string(space.dimension()));
            }
            break;
        case space_spec::kind::sequence:
            break;
    }
}

// l^p norm of a range of coefficients, scaled by the largest magnitude so
// that large exponents do not overflow.
template <typename Range, typename Proj>
double lp_norm(const Range &r, double p, Proj proj)
{
    double big = 0.;
    for (const auto &x : r) {
        big = std::max(big, std::abs(proj(x)));
    }
    if (big == 0. || std::isinf(p)) {
        return big;
    }
    if (p == 1.) {
        double s = 0.;
        for (const auto &x : r) {
            s += std::abs(proj(x));
        }
        return s;
    }
    if (p == 2.) {
        double s = 0.;
        for (const auto &x : r) {
            s += proj(x) * proj(x);
        }
        return std::sqrt(s);
    }
    double s = 0.;
    for (const auto &x : r) {
        s += std::pow(std::abs(proj(x)) / big, p);
    }
    return big * std::pow(s, 1. / p);
}

} // namespace detail

inline double norm(const space_spec &space, const finite_support_vector &v)
{
    detail::check_fits(space, v.max_index());
    return detail::lp_norm(v.entries(), space.exponent(), [](const auto &kv) { return kv.second; });
}

// Norm of a dense coefficient block (coordinate i+1 at position i).
inline double norm(const space_spec &space, std::span<const double> dense)
{
    return detail::lp_norm(dense, space.exponent(), [](double x) { return x; });
}

// a*v + w, dropping coefficients that cancel to zero.
inline finite_support_vector axpy(double a, const finite_support_vector &v, const finite_support_vector &w)
{
    auto out = w;
    for (const auto &[i, c] : v.entries()) {
        out.set(i, out[i] + a * c);
    }
    return out;
}

inline finite_support_vector operator+(const finite_support_vector &v, const finite_support_vector &w)
{
    return axpy(1., v, w);
}

inline finite_support_vector operator-(const finite_support_vector &v)
{
    return axpy(-1., v, finite_support_vector{});
}

// Incrementally maintained sum of vectors with cheap norm queries. Under the
// sup norm the current magnitudes are kept in a multiset so the norm is exact
// and O(1); other exponents recompute from the (small) support.
class running_sum
{
public:
    explicit running_sum(space_spec space) : m_space(space) {}

    void add(const finite_support_vector &v, double scale = 1.)
    {
        detail::check_fits(m_space, v.max_index());
        for (const auto &[i, c] : v.entries()) {
            const auto it = m_value.find(i);
            const double old = it == m_value.end() ? 0. : it->second;
            const double now = old + scale * c;
            if (m_space.is_sup() && old != 0.) {
                m_mags.erase(m_mags.find(std::abs(old)));
            }
            if (now == 0.) {
                if (it != m_value.end()) {
                    m_value.erase(it);
                }
            } else {
                m_value[i] = now;
                if (m_space.is_sup()) {
                    m_mags.insert(std::abs(now));
                }
            }
        }
    }

    double norm() const
    {
        if (m_space.is_sup()) {
            return m_mags.empty() ? 0. : *m_mags.rbegin();
        }
        return detail::lp_norm(m_value, m_space.exponent(), [](const auto &kv) { return kv.second; });
    }

    finite_support_vector value() const
    {
        finite_support_vector v;
        for (const auto &[i, c] : m_value) {
            v.set(i, c);
        }
        return v;
    }

    const space_spec &space() const noexcept
    {
        return m_space;
    }

private:
    space_spec m_space;
    std::map<std::size_t, double> m_value;
    std::multiset<double> m_mags;
};

} // namespace bw

#endif
