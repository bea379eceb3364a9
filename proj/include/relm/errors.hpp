#pragma once

#include <stdexcept>
#include <string>

namespace relm {

/// Base class for every error raised by this library.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// rough-set computations
struct EmptyAttrSet : Error { using Error::Error; };
struct IndexOutOfRange : Error { using Error::Error; };
struct AttrAlreadyInBase : Error { using Error::Error; };

// discretization
struct EmptyDataset : Error { using Error::Error; };
struct NonFiniteValue : Error { using Error::Error; };
struct SchemaMismatch : Error { using Error::Error; };

// linear algebra
struct DimensionMismatch : Error { using Error::Error; };
struct SingularSystem : Error { using Error::Error; };

// dataset ingestion and generation
struct ParseError : Error { using Error::Error; };
struct EmptyFile : Error { using Error::Error; };
struct InvalidConcept : Error { using Error::Error; };
struct InvalidNoise : Error { using Error::Error; };
struct TooSmallForSplit : Error { using Error::Error; };

// model files
struct VersionError : Error { using Error::Error; };

}  // namespace relm
