#pragma once

#include <stdexcept>
#include <string>

namespace umfb
{

// Parts handed to a multinomial do not add up to the index.
class PartsMismatch : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// Partitions are only defined for a nonzero multi-index.
class ZeroIndex : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

class DimensionMismatch : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

// A moment sequence or table has no value at a requested index.
class MissingValue : public std::out_of_range
{
public:
    using std::out_of_range::out_of_range;
};

class ResourceCapExceeded : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

class TruncationTooLarge : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

class SingularSigma : public std::domain_error
{
public:
    using std::domain_error::domain_error;
};

class ParseError : public std::invalid_argument
{
public:
    using std::invalid_argument::invalid_argument;
};

} // namespace umfb
