#pragma once

#include <string>
#include <vector>

#include "flatsurf/sphere.hpp"

namespace flatsurf {

enum class CircuitType { Face, Domino, Petrie, Other };

std::string to_string(CircuitType t);

/// A simple cycle in the cube 1-skeleton with its ramification data under the
/// branched double cover. The cycle separates S^2 into two regions; the
/// enclosed count is taken over the smaller region (counts in the two regions
/// have equal parity since the total, 6, is even).
struct CircuitCertificate {
    std::vector<int> vertex_cycle;  // v0, v1, ..., v_{len-1}, closing back to v0
    int length = 0;
    int enclosed_ramification_count = 0;
    bool liftable = false;  // enclosed count even
    CircuitType circuit_type = CircuitType::Other;
};

/// All simple cycles of the cube 1-skeleton with length <= max_len, each once
/// up to rotation and reflection. Requires 3 <= max_len <= 12.
std::vector<CircuitCertificate> enumerate_circuits(const SphereComplex& cubical, int max_len);

std::string circuits_to_csv(const std::vector<CircuitCertificate>& circuits);

}  // namespace flatsurf
