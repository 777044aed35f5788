#pragma once

#include <stdexcept>
#include <string>

namespace circlefit {

// Base class for every error this library throws on purpose.
// Catching circlefit::Error at the CLI boundary is sufficient.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct DegenerateTriplet : Error {
    DegenerateTriplet() : Error("triplet is collinear or coincident") {}
};

struct EmptyAccumulator : Error {
    EmptyAccumulator() : Error("accumulator holds no votes") {}
};

struct InsufficientPoints : Error {
    explicit InsufficientPoints(std::size_t got, std::size_t need = 3)
        : Error("need at least " + std::to_string(need) + " points, got " + std::to_string(got)) {}
};

struct NoAcceptedCandidate : Error {
    NoAcceptedCandidate() : Error("no candidate passed the acceptance threshold") {}
};

struct SingularSystem : Error {
    SingularSystem() : Error("normal equations are singular (collinear input?)") {}
};

struct SeparationInfeasible : Error {
    SeparationInfeasible() : Error("could not place an outlier outside the separation band") {}
};

struct FileMissing : Error {
    explicit FileMissing(const std::string& path) : Error("cannot open file: " + path) {}
};

struct MalformedHeader : Error {
    explicit MalformedHeader(const std::string& what) : Error("malformed image: " + what) {}
};

struct UnsupportedFormat : Error {
    explicit UnsupportedFormat(const std::string& what) : Error("unsupported format: " + what) {}
};

struct EmptyList : Error {
    EmptyList() : Error("empty input list") {}
};

struct MissingCell : Error {
    explicit MissingCell(const std::string& what) : Error("missing grid cell: " + what) {}
};

struct IncompleteGrid : Error {
    explicit IncompleteGrid(const std::string& what) : Error("incomplete grid: " + what) {}
};

}  // namespace circlefit
