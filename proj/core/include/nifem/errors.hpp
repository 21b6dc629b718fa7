#pragma once

#include <stdexcept>
#include <string>

namespace nifem {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// geometry
struct NonBracketedRoot : Error { using Error::Error; };
struct MaxIterExceeded : Error { using Error::Error; };

// mesh
struct InvalidResolution : Error { using Error::Error; };
struct AmbiguousCut : Error { using Error::Error; };
struct DegenerateCut : Error { using Error::Error; };

// element
struct InvalidCutRatio : Error { using Error::Error; };
struct UnsupportedDegree : Error { using Error::Error; };

// assembly
struct DegenerateCell : Error { using Error::Error; };

// solver (NotConverged lives in solver.hpp, it carries stats)
struct NonPositiveDiagonal : Error { using Error::Error; };

// problems
struct InvalidCoefficient : Error { using Error::Error; };

// io
struct IoError : Error { using Error::Error; };

} // namespace nifem
