#pragma once

#include <stdexcept>
#include <string>

namespace rainbow {

// Base class for all errors raised by the library. Subclasses exist so
// callers (and tests) can tell failure modes apart without string matching.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// graph construction / queries
struct SelfLoopError : Error { using Error::Error; };
struct DuplicateEdgeError : Error { using Error::Error; };
struct VertexOutOfRangeError : Error { using Error::Error; };
struct EmptyGraphError : Error { using Error::Error; };

// regularity
struct PartsOverlapError : Error { using Error::Error; };
struct EmptyPartError : Error { using Error::Error; };
struct NotQuasirandomError : Error { using Error::Error; };

// pattern counting
struct PatternTooLargeError : Error { using Error::Error; };
struct NoEdgesError : Error { using Error::Error; };
struct CostGuardExceededError : Error { using Error::Error; };
struct AnchorNotInGraphError : Error { using Error::Error; };

// partitions
struct BadDistributionError : Error { using Error::Error; };
struct RetriesExhaustedError : Error {
    std::string failing_condition;
    RetriesExhaustedError(const std::string& msg, std::string condition)
        : Error(msg), failing_condition(std::move(condition)) {}
};

// designs
struct OddOrderError : Error { using Error::Error; };
struct UnsupportedParametersError : Error { using Error::Error; };
struct NonPrimeOrderError : Error { using Error::Error; };
struct TooManySquaresError : Error { using Error::Error; };

// hypergraph matching
struct CapExceededError : Error {
    long long achieved;
    CapExceededError(const std::string& msg, long long got) : Error(msg), achieved(got) {}
};
struct DesignUnavailableError : Error { using Error::Error; };
struct CoverageNotReachedError : Error { using Error::Error; };

// decomposition pipelines
struct NonRainbowMemberError : Error { using Error::Error; };
struct FamilyTooSmallError : Error { using Error::Error; };
struct LinkingFailedError : Error { using Error::Error; };

// io / configuration
struct ParseError : Error { using Error::Error; };
struct InfeasibleParamsError : Error { using Error::Error; };

} // namespace rainbow
