#pragma once

#include <stdexcept>
#include <string>

namespace spacelike {

// Base of every recoverable error raised by the library. The CLI maps
// GeometryError to exit code 2 and ConfigError to exit code 3.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class GeometryError : public Error {
public:
    using Error::Error;
};

class NotSpacelike : public GeometryError {
public:
    explicit NotSpacelike(const std::string& what)
        : GeometryError("not spacelike: " + what) {}
};

class NotNormal : public GeometryError {
public:
    explicit NotNormal(const std::string& what)
        : GeometryError("vector is not normal to the surface: " + what) {}
};

class SingularPhi : public GeometryError {
public:
    SingularPhi() : GeometryError("u_Phi is singular (K_N vanishes)") {}
};

class InvalidTriple : public GeometryError {
public:
    explicit InvalidTriple(const std::string& what)
        : GeometryError("invalid (L, Phi, A) triple: " + what) {}
};

class DegenerateFrame : public GeometryError {
public:
    DegenerateFrame()
        : GeometryError("ellipse-adapted frame undefined (u_Phi not diagonalizable or null)") {}
};

class SeedAtSingularity : public GeometryError {
public:
    SeedAtSingularity() : GeometryError("seed lies at a singularity of the line field") {}
};

class AmbiguousWinding : public GeometryError {
public:
    AmbiguousWinding() : GeometryError("winding number is ambiguous at every tried radius") {}
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what) : Error("config error: " + what) {}
};

} // namespace spacelike
