#ifndef BW_ERROR_HPP
#define BW_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bw
{

// Root of every error thrown by the library.
class error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class dimension_mismatch : public error
{
public:
    using error::error;
};

class unknown_name : public error
{
public:
    using error::error;
};

class horizon_exceeds_stem : public error
{
public:
    using error::error;
};

class invalid_stem : public error
{
public:
    using error::error;
};

class gap_in_trace : public error
{
public:
    using error::error;
};

class unsupported : public error
{
public:
    using error::error;
};

class precondition_violation : public error
{
public:
    using error::error;
};

class inconsistent_witness : public error
{
public:
    using error::error;
};

// A bounded search ran out of room before reaching its goal. This is an
// informative outcome: on uniformly bounded series it is the expected result.
class exhausted : public error
{
public:
    using error::error;
};

class schema_mismatch : public error
{
public:
    using error::error;
};

class checkpoint_mismatch : public error
{
public:
    checkpoint_mismatch(std::size_t position, const std::string &what)
        : error(what), m_position(position)
    {
    }
    std::size_t position() const noexcept
    {
        return m_position;
    }

private:
    std::size_t m_position;
};

} // namespace bw

#endif
