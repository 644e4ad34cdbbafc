#pragma once

#include <stdexcept>

namespace qht {

// Base class for every error thrown by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A matrix required to be Hermitian failed the tolerance check.
struct NotHermitianError : Error {
    using Error::Error;
};

// A matrix required to be unitary failed the tolerance check.
struct NotUnitaryError : Error {
    using Error::Error;
};

// An expectation value came out with a non-negligible imaginary part.
struct ImaginaryResidueError : Error {
    using Error::Error;
};

// A (near-)zero vector where a direction is required.
struct ZeroVectorError : Error {
    using Error::Error;
};

// Operands with incompatible shapes.
struct DimensionError : Error {
    using Error::Error;
};

// Invalid configuration values: bad grids, pair counts, model names, ...
struct ConfigError : Error {
    using Error::Error;
};

}  // namespace qht
