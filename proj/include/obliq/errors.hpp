#pragma once

#include <stdexcept>
#include <string>

namespace obliq {

// Base for all library errors. `code()` is a stable machine-readable
// identifier; CLI commands map codes to exit statuses and JSON error objects.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(what), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

#define OBLIQ_ERROR_TYPE(Name)                                 \
    class Name : public Error {                                \
    public:                                                    \
        explicit Name(const std::string& what)                 \
            : Error(#Name, what) {}                            \
    }

OBLIQ_ERROR_TYPE(GramNotHermitian);
OBLIQ_ERROR_TYPE(GramNotPositiveDefinite);
OBLIQ_ERROR_TYPE(DimensionMismatch);
OBLIQ_ERROR_TYPE(NotASubspaceOf);
OBLIQ_ERROR_TYPE(ZeroSubspace);
OBLIQ_ERROR_TYPE(DegenerateInclination);
OBLIQ_ERROR_TYPE(NotInSumSpace);
OBLIQ_ERROR_TYPE(BadWeights);
OBLIQ_ERROR_TYPE(NotInFQ);
OBLIQ_ERROR_TYPE(BadTheta);
OBLIQ_ERROR_TYPE(ConfigTooLarge);
OBLIQ_ERROR_TYPE(NotInL);
OBLIQ_ERROR_TYPE(NotInLHat);
OBLIQ_ERROR_TYPE(IoError);

#undef OBLIQ_ERROR_TYPE

} // namespace obliq
