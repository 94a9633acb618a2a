#pragma once

#include <stdexcept>
#include <string>

namespace hullfront {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// polygon construction
struct TooFewVertices : Error { using Error::Error; };
struct DegenerateVertex : Error { using Error::Error; };
struct NotConvex : Error { using Error::Error; };

// queries
struct EmptySet : Error { using Error::Error; };
struct DomainError : Error { using Error::Error; };

// inclusion-exclusion bound
struct HypothesisViolated : Error { using Error::Error; };
struct ComplexityLimit : Error { using Error::Error; };

// Poisson window produced no points and retries ran out
struct DegenerateWindow : Error { using Error::Error; };

} // namespace hullfront
