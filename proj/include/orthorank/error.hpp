#ifndef ORTHORANK_ERROR_HPP
#define ORTHORANK_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace orthorank {

/// Input violates a documented precondition (bad family parameters, weights on
/// non-edges, non-Hermitian matrices, dimension mismatches, ...).
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// graph6 / family-spec text that cannot be decoded.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : std::runtime_error(what + " (byte offset " + std::to_string(offset) + ")"),
          offset_(offset) {}

    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

/// A closed-form bound whose denominator is not positive.
class BoundUndefined : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Raised when a computed lower bound exceeds a certified upper bound.
/// Only an implementation bug can trigger this.
class InconsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace orthorank

#endif // ORTHORANK_ERROR_HPP
