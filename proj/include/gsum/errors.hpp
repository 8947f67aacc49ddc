#pragma once

#include <stdexcept>
#include <string>

namespace gsum {

// Library errors carry a stable name so the CLI can map them onto its
// JSON error object and exit codes.
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& detail)
        : std::runtime_error(detail), name_(std::move(name)) {}

    const std::string& name() const { return name_; }

private:
    std::string name_;
};

#define GSUM_DEFINE_ERROR(Name)                              \
    class Name : public Error {                              \
    public:                                                  \
        explicit Name(const std::string& detail)             \
            : Error(#Name, detail) {}                        \
    }

GSUM_DEFINE_ERROR(TurnstileViolation);
GSUM_DEFINE_ERROR(InvalidProfile);
GSUM_DEFINE_ERROR(InvalidParams);
GSUM_DEFINE_ERROR(NotInClassG);
GSUM_DEFINE_ERROR(DomainError);
GSUM_DEFINE_ERROR(SeedMismatch);
GSUM_DEFINE_ERROR(DimensionMismatch);
GSUM_DEFINE_ERROR(CandidateOverflow);
GSUM_DEFINE_ERROR(EnvelopeMissing);
GSUM_DEFINE_ERROR(ConfigError);
GSUM_DEFINE_ERROR(Infeasible);
GSUM_DEFINE_ERROR(ParseError);

#undef GSUM_DEFINE_ERROR

}  // namespace gsum
