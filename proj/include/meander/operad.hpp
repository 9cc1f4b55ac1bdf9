#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "meander/core.hpp"

namespace meander {

enum class SlotKind : std::uint8_t { Crossing, Touch };

// A slot is an intersection point addressed by its label within its
// kind (see labels()).
struct Slot {
    SlotKind kind = SlotKind::Crossing;
    int label = 0;
    auto operator<=>(const Slot&) const = default;
};

std::string to_string(Slot s);

// Insertion of a whole meander at the i-th crossing. The piece must
// have an odd number of crossings; the result has order (n+2n', k+k').
MeanderCode insert_at_crossing(const MeanderCode& host, int label, const MeanderCode& piece);

// Insertion at the i-th touch. The piece must have an even number of
// crossings (the empty meander deletes the touch); the result has
// order (n+2n', k+k'-1). The piece is mirrored first when the slot
// opens to the right; see the rule in the implementation.
MeanderCode insert_at_touch(const MeanderCode& host, int label, const MeanderCode& piece);

MeanderCode insert(const MeanderCode& host, Slot slot, const MeanderCode& piece);

// Where each slot of insert(host, at, piece) came from.
struct SlotOrigin {
    enum class From : std::uint8_t { Host, Piece } from = From::Host;
    Slot slot;
};

struct SlotMap {
    std::vector<SlotOrigin> crossing;  // [result label - 1]
    std::vector<SlotOrigin> touch;
    SlotOrigin origin_of(Slot result_slot) const;
    // Result slot carrying the given host (resp. piece) slot; throws if
    // the slot was consumed by the insertion.
    Slot from_host(Slot host_slot) const;
    Slot from_piece(Slot piece_slot) const;
};

SlotMap slot_map(const MeanderCode& host, Slot at, const MeanderCode& piece);

// Insertion-expression tree: a leaf holds a meander, a node inserts the
// piece expression into the host expression at a slot.
struct OpExpr {
    bool leaf = true;
    MeanderCode code;           // leaf payload
    Slot slot;                  // node payload
    std::vector<OpExpr> args;   // node payload: [0] host, [1] piece

    static OpExpr make_leaf(MeanderCode c) {
        OpExpr e;
        e.leaf = true;
        e.code = std::move(c);
        return e;
    }
    static OpExpr make_node(OpExpr host, Slot s, OpExpr piece) {
        OpExpr e;
        e.leaf = false;
        e.slot = s;
        e.args.push_back(std::move(host));
        e.args.push_back(std::move(piece));
        return e;
    }
};

// Text form: nested ins(HOST, C<i>|T<i>, PIECE) with meander literals
// in the core text format; a JSON object form is accepted too.
OpExpr parse_expr(std::string_view text);
OpExpr expr_from_json(const nlohmann::json& j);
nlohmann::json to_json(const OpExpr& expr);
std::string to_string(const OpExpr& expr);

MeanderCode eval(const OpExpr& expr);

struct AxiomReport {
    std::uint64_t seed = 0;
    int max_unit_order = 0;
    long long unit_checks = 0;
    long long associativity_checks = 0;
    long long commutation_checks = 0;
    long long closure_checks = 0;
    std::vector<std::string> violations;
    bool ok() const { return violations.empty(); }
};

// Mechanized check that the two insertions form a 2-colored operad:
// unit laws exhaustively up to max_total_order, sequential
// associativity and parallel commutation on seeded random composable
// samples.
AxiomReport check_operad_axioms(int max_total_order, int sample_count, std::uint64_t seed);

nlohmann::json to_json(const AxiomReport& report);

}  // namespace meander
