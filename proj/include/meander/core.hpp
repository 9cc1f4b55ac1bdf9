#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace meander {

enum class PointType : std::uint8_t { Cross, Touch };
enum class Side : std::uint8_t { Up, Down };

inline Side flipped(Side s) { return s == Side::Up ? Side::Down : Side::Up; }

// Order of a singular meander: n transverse points, k tangential ones.
struct Order {
    int crossings = 0;
    int touches = 0;
    int total() const { return crossings + touches; }
    auto operator<=>(const Order&) const = default;
};

// Canonical combinatorial encoding of a singular-meander class.
//
// types[p-1] is the point type at l-position p (1-based, left to right).
// visit[j-1] is the l-position met at the j-th step along the curve m.
// The drawing convention is normalized: m enters from the upper left,
// so one valid code per equivalence class.
struct MeanderCode {
    std::vector<PointType> types;
    std::vector<int> visit;

    MeanderCode() = default;
    MeanderCode(std::vector<PointType> t, std::vector<int> v)
        : types(std::move(t)), visit(std::move(v)) {}

    int size() const { return static_cast<int>(types.size()); }
    PointType type_at(int pos) const { return types.at(pos - 1); }

    std::string str() const;

    auto operator<=>(const MeanderCode&) const = default;
};

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Half-disk arc between two l-coordinates; 0 and N+1 are the virtual
// entry/exit anchors on the boundary.
struct Arc {
    int left = 0;
    int right = 0;
    Side side = Side::Up;
    auto operator<=>(const Arc&) const = default;
};

// Two same-side arcs cross iff their endpoints strictly interleave.
// Arcs sharing an endpoint (the feet of a tangency) never cross.
inline bool arcs_cross(const Arc& a, const Arc& b) {
    if (a.side != b.side) return false;
    return (a.left < b.left && b.left < a.right && a.right < b.right) ||
           (b.left < a.left && a.left < b.right && b.right < a.right);
}

// Orientation of the gluing disk around a block [lo, hi] (or a single
// point, lo == hi) whose traversal neighbours are u and v, with the
// virtual anchors 0 and N+1 at the ends of m. The opening faces right
// (the piece is mirrored before splicing) iff the arrival arc runs
// right while the departure runs left, or both run the same way and
// the arrival is the outer arc on the left resp. the inner one on the
// right; the three cases collapse to one comparison. The relative
// order of u, v and the block is untouched by insertions elsewhere, so
// the orientation is stable under composition.
inline bool slot_opens_right(int u, int v, int lo, int hi) {
    const bool arrival_right = u > hi;
    const bool departure_right = v > hi;
    (void)lo;
    return arrival_right != departure_right ? arrival_right : u < v;
}

enum class Flaw : std::uint8_t {
    None,
    LengthMismatch,
    VisitOutOfRange,
    VisitNotBijective,
    SameSideCrossing,
};

struct ValidityReport {
    bool valid = false;
    bool structural_ok = false;
    Flaw flaw = Flaw::None;
    std::string detail;
    std::optional<std::pair<Arc, Arc>> crossing_pair;
};

// Structural check only: equal lengths, visit a bijection on 1..N.
bool is_well_formed(const MeanderCode& code, std::string* why = nullptr);

// The arc system forced by the side-tracking rule. Requires a
// well-formed code; N+1 arcs including the entry and exit ones.
std::vector<Arc> arc_diagram(const MeanderCode& code);

// Planarity check: the forced arc system has no same-side crossing.
ValidityReport validate(const MeanderCode& code);
bool is_valid(const MeanderCode& code);

// Throws std::invalid_argument unless the code is a valid meander.
void require_valid(const MeanderCode& code, const char* who);

Order order_of(const MeanderCode& code);

// Crossings and touches labeled 1..n and 1..k separately, left to right.
struct Labels {
    std::vector<int> crossing_of_pos;  // [pos-1] -> label or 0
    std::vector<int> touch_of_pos;     // [pos-1] -> label or 0
    std::vector<int> crossing_pos;     // [label-1] -> pos
    std::vector<int> touch_pos;        // [label-1] -> pos
};
Labels labels(const MeanderCode& code);

// Mirror across the vertical axis: positions complemented, traversal
// order kept. The output is a gluing datum, not necessarily a valid
// canonical code.
MeanderCode horizontal_flip(const MeanderCode& code);

// Text format "<types>|<visit>", e.g. "CCT|1,3,2"; empty text is the
// empty meander. parse rejects syntax and structural defects but does
// not test planarity.
std::string serialize(const MeanderCode& code);
MeanderCode parse(std::string_view text);

// JSON form {"types": "CCT", "visit": [1,3,2]}; accepted anywhere the
// text form is.
nlohmann::json to_json(const MeanderCode& code);
MeanderCode code_from_json(const nlohmann::json& j);

// Accepts either the text form or a JSON object literal.
MeanderCode parse_code_literal(std::string_view text);

}  // namespace meander
