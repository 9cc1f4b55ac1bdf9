#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "meander/core.hpp"
#include "meander/operad.hpp"

namespace meander {

enum class FactorKind : std::uint8_t { IteratedSnake, Irreducible, Point };

const char* factor_kind_name(FactorKind k);

// Canonical prime-factor decomposition. Each node holds the skeleton
// meander of one factor and the children hanging at its slots; Point
// nodes are single intersection points.
struct DecompNode {
    FactorKind kind = FactorKind::Point;
    MeanderCode skeleton;
    std::vector<std::pair<Slot, DecompNode>> children;  // ordered by l-position
};
using DecompTree = DecompNode;

// Maximal all-linear regions of the strong-interval tree collapse into
// IteratedSnake factors, prime nodes yield Irreducible factors.
DecompTree decompose(const MeanderCode& code);

// Bottom-up evaluation via the two insertions;
// reconstruct(decompose(m)) == m exactly.
MeanderCode reconstruct(const DecompTree& tree);

// Skeletons of the non-Point nodes in preorder.
std::vector<std::pair<FactorKind, MeanderCode>> prime_factors(const MeanderCode& code);

nlohmann::json to_json(const DecompNode& node);
std::string format_tree(const DecompNode& node);

}  // namespace meander
