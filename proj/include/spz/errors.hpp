#pragma once

#include <stdexcept>
#include <string>

namespace spz {

// Base of everything the library throws on purpose.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define SPZ_ERROR(Name)                                    \
    struct Name : Error {                                  \
        explicit Name(const std::string& m) : Error(m) {}  \
    }

SPZ_ERROR(DomainError);
SPZ_ERROR(UnboundedRegion);
SPZ_ERROR(UnboundedImage);
SPZ_ERROR(ArgumentError);
SPZ_ERROR(ParseError);
SPZ_ERROR(InternalError);
SPZ_ERROR(TooLarge);
SPZ_ERROR(Indeterminate);
SPZ_ERROR(MismatchError);
SPZ_ERROR(ContourThroughZero);
SPZ_ERROR(OutOfRange);
SPZ_ERROR(PoleError);
SPZ_ERROR(NonConvergence);
SPZ_ERROR(NoSolution);
SPZ_ERROR(NotFound);
SPZ_ERROR(IoError);

#undef SPZ_ERROR

}  // namespace spz
