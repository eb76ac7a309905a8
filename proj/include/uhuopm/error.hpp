#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace uhuopm
{

/// Base class of every error raised by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// A caller passed something outside an operation's domain (empty pattern,
/// threshold out of range, pattern not contained in a transaction, ...).
class InvalidArgument : public Error
{
public:
    using Error::Error;
};

/// A measure that has no value for the given input, e.g. the utility
/// occupancy of a pattern with zero support.
class UndefinedMeasure : public Error
{
public:
    using Error::Error;
};

/// An item is referenced without a unit-utility entry.
class MissingUtility : public Error
{
public:
    MissingUtility(std::string item, std::string context)
        : Error("no unit utility for item '" + item + "'" + (context.empty() ? "" : " (" + context + ")")),
          item_(std::move(item))
    {
    }

    const std::string& item() const noexcept { return item_; }

private:
    std::string item_;
};

/// Malformed input text. Line and column are 1-based; column 0 means the
/// error concerns the whole line.
class ParseError : public Error
{
public:
    ParseError(std::string source, std::size_t line, std::size_t column, const std::string& what)
        : Error(source + ":" + std::to_string(line) + ":" + std::to_string(column) + ": " + what),
          source_(std::move(source)), line_(line), column_(column)
    {
    }

    const std::string& source() const noexcept { return source_; }
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::string source_;
    std::size_t line_;
    std::size_t column_;
};

/// Syntactically valid number outside its permitted range
/// (quantity 0, probability outside (0,1], negative utility).
class RangeError : public ParseError
{
public:
    using ParseError::ParseError;
};

/// The database failed validation before mining.
class ValidationError : public Error
{
public:
    using Error::Error;
};

/// A work cap (e.g. the oracle's itemset budget) was exhausted.
class ResourceError : public Error
{
public:
    using Error::Error;
};

/// Broken internal invariant, e.g. a join whose prefix list lacks a tid.
class InternalConsistencyError : public Error
{
public:
    using Error::Error;
};

} // namespace uhuopm
