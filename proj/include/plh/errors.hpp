#pragma once

#include <stdexcept>
#include <string>

namespace plh {

/// Base class of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed data at construction time (non-monotone anchors, zero slopes, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// Input text could not be parsed; carries the 1-based line/column.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, int line, int column)
        : Error(msg + " (line " + std::to_string(line) + ", column " + std::to_string(column) + ")"),
          line_(line),
          column_(column) {}
    int line() const { return line_; }
    int column() const { return column_; }

private:
    int line_;
    int column_;
};

class NotOrientationPreserving : public Error {
public:
    using Error::Error;
};

class IdentityMapError : public Error {
public:
    using Error::Error;
};

/// The fixed set contains an interval component.
class InfiniteFixedSet : public Error {
public:
    using Error::Error;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

/// The (g, f) configuration is internally inconsistent (e.g. the mover fixes
/// an endpoint of Fix(g), which would force a global fixed point).
class DegenerateConfiguration : public Error {
public:
    using Error::Error;
};

/// A required auxiliary element (the u or v of the two-sided displacement
/// condition) was not found in the supplied context ball.
class MissingAuxiliary : public Error {
public:
    using Error::Error;
};

/// A case-reduction hypothesis failed an exact check; the message carries the
/// inequality that broke.
class ReductionFailed : public Error {
public:
    using Error::Error;
};

/// The chosen generators share a common fixed point, so the funnel interval
/// is undefined (a global finite orbit exists instead).
class SharedFixedPoint : public Error {
public:
    using Error::Error;
};

/// A configurable resource cap (ball element count, iteration budget) was hit.
class ResourceLimitExceeded : public Error {
public:
    using Error::Error;
};

/// The minimal-exponent search ran past its cap; reported as inconclusive,
/// not as a refutation.
class ExponentCapExceeded : public Error {
public:
    using Error::Error;
};

/// A translation chart was requested for a ball that does not act freely.
class NotFree : public Error {
public:
    NotFree(const std::string& msg, std::string offending_word)
        : Error(msg), offending_word_(std::move(offending_word)) {}
    const std::string& offending_word() const { return offending_word_; }

private:
    std::string offending_word_;
};

/// Collapse intervals overlap.
class OverlapError : public Error {
public:
    using Error::Error;
};

}  // namespace plh
