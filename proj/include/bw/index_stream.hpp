#ifndef BW_INDEX_STREAM_HPP
#define BW_INDEX_STREAM_HPP

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace bw
{

// Lazily materialised infinite coding element (an s in S or a p in P). Values
// are produced in chunks by a generator and cached; a generator returning
// false marks the end of what can be produced within its search bounds.
//
// Copies share the cache. Not thread-safe.
class index_stream
{
public:
    // Appends at least one value to the vector, or returns false.
    using producer = std::function<bool(std::vector<std::size_t> &)>;

    index_stream() : index_stream(std::vector<std::size_t>{}) {}
    explicit index_stream(std::vector<std::size_t> prefix, producer more = {})
        : m_state(std::make_shared<state>(state{std::move(prefix), std::move(more)}))
    {
    }

    // Element n -> f(n).
    static index_stream from_rule(std::function<std::size_t(std::size_t)> f)
    {
        return index_stream{{}, [f = std::move(f)](std::vector<std::size_t> &out) {
                                out.push_back(f(out.size() + 1u));
                                return true;
                            }};
    }

    // 1-based element, producing more values if needed.
    std::optional<std::size_t> at(std::size_t pos) const
    {
        auto &st = *m_state;
        while (st.values.size() < pos) {
            if (!st.more) {
                return std::nullopt;
            }
            const auto before = st.values.size();
            if (!st.more(st.values) || st.values.size() == before) {
                st.more = nullptr;
                return std::nullopt;
            }
        }
        return st.values[pos - 1u];
    }

    std::span<const std::size_t> materialized() const noexcept
    {
        return m_state->values;
    }

    std::vector<std::size_t> prefix(std::size_t n) const
    {
        std::vector<std::size_t> out;
        for (std::size_t i = 1; i <= n; ++i) {
            const auto v = at(i);
            if (!v) {
                break;
            }
            out.push_back(*v);
        }
        return out;
    }

private:
    struct state {
        std::vector<std::size_t> values;
        producer more;
    };
    std::shared_ptr<state> m_state;
};

} // namespace bw

#endif
