#ifndef CCORR_ERRORS_HPP
#define CCORR_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ccorr {

enum class ErrorKind {
    Domain,       // argument outside the operation's domain (non-finite, empty, sigma <= 0)
    Shape,        // dimension or length mismatch
    Config,       // invalid configuration record
    Singularity,  // Hermitian solve failed
    Numeric,      // non-finite intermediate during iteration
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

struct DomainError : Error {
    explicit DomainError(const std::string& what) : Error(ErrorKind::Domain, what) {}
};

struct ShapeError : Error {
    explicit ShapeError(const std::string& what) : Error(ErrorKind::Shape, what) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& what) : Error(ErrorKind::Config, what) {}
};

struct SingularityError : Error {
    SingularityError(const std::string& what, double smallest_pivot)
        : Error(ErrorKind::Singularity, what), smallest_pivot(smallest_pivot) {}
    double smallest_pivot;
};

struct NumericError : Error {
    explicit NumericError(const std::string& what) : Error(ErrorKind::Numeric, what) {}
};

/// Rethrows `e` as the same concrete error type with `context` prepended to the message.
[[noreturn]] void rethrow_with_context(const Error& e, const std::string& context);

} // namespace ccorr

#endif // CCORR_ERRORS_HPP
