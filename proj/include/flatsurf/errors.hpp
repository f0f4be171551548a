#pragma once

#include <stdexcept>
#include <string>

namespace flatsurf {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// surface construction
struct DegeneratePolygon : Error { using Error::Error; };
struct UnmatchedEdge : Error { using Error::Error; };
struct LengthMismatch : Error { using Error::Error; };
struct NonOrientable : Error { using Error::Error; };
struct DisconnectedSurface : Error { using Error::Error; };

// bolza builders
struct ConstructionInvariantViolated : Error { using Error::Error; };
struct NotCat0 : Error { using Error::Error; };

// mesh
struct MeshTooCoarse : Error { using Error::Error; };
struct NotInvolution : Error { using Error::Error; };

// voronoi / bounds
struct AngleOutOfRange : Error { using Error::Error; };
struct InconsistentInputs : Error { using Error::Error; };

// cli
struct IoError : Error { using Error::Error; };

}  // namespace flatsurf
