#pragma once

#include <stdexcept>
#include <string>

namespace dmc {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

#define DMC_ERROR(Name)                                      \
    struct Name : Error {                                    \
        explicit Name(const std::string& what)               \
            : Error(std::string(#Name) + ": " + what) {}     \
    }

DMC_ERROR(PreconditionViolated);
DMC_ERROR(UnknownVertex);
DMC_ERROR(NonLiftableEdge);
DMC_ERROR(InfeasibleParameters);
DMC_ERROR(TooManyDeletions);
DMC_ERROR(TooManyTerminals);
DMC_ERROR(ParameterViolation);
DMC_ERROR(RebuildRequired);
DMC_ERROR(TooLarge);
DMC_ERROR(LevelCapExceeded);
DMC_ERROR(ScheduleExhausted);
DMC_ERROR(InternalInconsistency);
DMC_ERROR(ParseError);
DMC_ERROR(ConfigError);
DMC_ERROR(SizeCapExceeded);

#undef DMC_ERROR

}  // namespace dmc
