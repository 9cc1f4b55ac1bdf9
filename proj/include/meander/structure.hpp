#pragma once

#include <cstdint>
#include <vector>

#include "meander/core.hpp"

namespace meander {

// Closed l-position interval [lo, hi]; lo = 0 encodes the empty
// submeander. An interval is common iff its visit times form a
// contiguous block of steps.
struct Interval {
    int lo = 0;
    int hi = 0;

    static Interval empty_interval() { return {0, 0}; }
    static Interval full(int n) { return n == 0 ? empty_interval() : Interval{1, n}; }

    bool is_empty() const { return lo == 0; }
    int length() const { return is_empty() ? 0 : hi - lo + 1; }
    bool contains(const Interval& other) const {
        return other.is_empty() || (!is_empty() && lo <= other.lo && other.hi <= hi);
    }
    auto operator<=>(const Interval&) const = default;
};

bool is_common_interval(const MeanderCode& code, Interval iv);

// All common intervals including the empty one and the full one,
// sorted (empty first, then by lo, hi). Their number equals the number
// of submeander classes with respect to the meander.
std::vector<Interval> common_intervals(const MeanderCode& code);
std::size_t submeander_count(const MeanderCode& code);

// The submeander on a nonempty common interval, relabeled to its own
// canonical code (the raw restriction is mirrored when the block opens
// to the right; see insert_at_touch for the matching rule).
MeanderCode extract(const MeanderCode& code, Interval iv);

// Replace the block by a single point: Cross iff the block holds an odd
// number of crossings.
MeanderCode contract(const MeanderCode& code, Interval iv);

// Simultaneous contraction of pairwise disjoint common intervals that
// cover [1, N] (the quotient meander of a tree node).
MeanderCode quotient(const MeanderCode& code, const std::vector<Interval>& blocks);

bool is_snake(const MeanderCode& code);
bool is_irreducible(const MeanderCode& code);
bool is_iterated_snake(const MeanderCode& code);

enum class NodeKind : std::uint8_t { Leaf, Linear, Prime };

// Strong common intervals (overlapping no other common interval) form
// a tree; internal nodes carry the contraction of their children and a
// Linear (monotone quotient) or Prime (only trivial common intervals)
// tag.
struct StrongNode {
    Interval span;
    NodeKind kind = NodeKind::Leaf;
    MeanderCode quotient_code;  // empty for leaves
    std::vector<StrongNode> children;
};
using StrongIntervalTree = StrongNode;

StrongIntervalTree strong_intervals(const MeanderCode& code);

nlohmann::json to_json(const StrongNode& node);

// Visit-permutation predicates used by the census fast path. They are
// cross-checked against the interval/tree definitions in the tests.
bool visit_is_monotone(const std::vector<int>& visit);
bool visit_is_separable(const std::vector<int>& visit);
bool visit_is_simple(const std::vector<int>& visit);

}  // namespace meander
