#include "ccorr/errors.hpp"

namespace ccorr {

const char* to_string(ErrorKind kind) noexcept
{
    switch (kind) {
    case ErrorKind::Domain: return "domain error";
    case ErrorKind::Shape: return "shape error";
    case ErrorKind::Config: return "configuration error";
    case ErrorKind::Singularity: return "singularity error";
    case ErrorKind::Numeric: return "numeric error";
    }
    return "error";
}

void rethrow_with_context(const Error& e, const std::string& context)
{
    const std::string msg = context + ": " + e.what();
    switch (e.kind()) {
    case ErrorKind::Domain: throw DomainError(msg);
    case ErrorKind::Shape: throw ShapeError(msg);
    case ErrorKind::Config: throw ConfigError(msg);
    case ErrorKind::Singularity: {
        const auto* singular = dynamic_cast<const SingularityError*>(&e);
        throw SingularityError(msg, singular ? singular->smallest_pivot : 0.0);
    }
    case ErrorKind::Numeric: throw NumericError(msg);
    }
    throw Error(e.kind(), msg);
}

} // namespace ccorr
