#include "phifrac/error.hpp"

namespace phifrac {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
    case ErrorKind::InvalidInput: return "invalid-input";
    case ErrorKind::InvalidParameter: return "invalid-parameter";
    case ErrorKind::Domain: return "domain";
    case ErrorKind::Divergence: return "divergence";
    case ErrorKind::Resource: return "resource";
    case ErrorKind::InvalidStage: return "invalid-stage";
    }
    return "unknown";
}

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

} // namespace phifrac
