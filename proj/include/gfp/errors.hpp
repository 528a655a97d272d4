#pragma once

#include <stdexcept>

namespace gfp {

// Base class of everything this library throws.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// nc_lattice / partition arguments
struct SizeExceedsCap : Error { using Error::Error; };
struct SizeMismatch : Error { using Error::Error; };

// graph construction defects (all map to the CLI's GraphInvalid exit code)
struct GraphInvalid : Error { using Error::Error; };
struct LoopEdge : GraphInvalid { using GraphInvalid::GraphInvalid; };
struct DanglingEndpoint : GraphInvalid { using GraphInvalid::GraphInvalid; };
struct DuplicateVertexId : GraphInvalid { using GraphInvalid::GraphInvalid; };

// path / semigroupoid arguments
struct UnknownVertex : Error { using Error::Error; };
struct NotAdmissible : Error { using Error::Error; };
struct UnknownWord : Error { using Error::Error; };

// cumulant data and evaluation
struct SpecInvalid : Error { using Error::Error; };
struct MissingVertexSpec : Error { using Error::Error; };
struct WordTooLong : Error { using Error::Error; };
struct VertexContainmentViolated : Error { using Error::Error; };
struct ContextMismatch : Error { using Error::Error; };

// series and recognizers
struct ShapeMismatch : Error { using Error::Error; };
struct NotSelfAdjoint : Error { using Error::Error; };

// user-facing input
struct ParseError : Error { using Error::Error; };
struct UnknownVariable : Error { using Error::Error; };

}  // namespace gfp
