#include "meander/operad.hpp"

#include <algorithm>
#include <cassert>
#include <random>
#include <sstream>

#include "meander/enumerate.hpp"

namespace meander {

namespace {

int crossing_parity(const MeanderCode& code) { return order_of(code).crossings % 2; }

struct SpliceSpec {
    int pos = 0;      // l-position of the consumed point in the host
    int step = 0;     // 1-based time the host visits it
    bool flip = false;
};

// Splice the (already oriented) piece over the host point at spec.pos.
MeanderCode splice(const MeanderCode& host, const SpliceSpec& spec, const MeanderCode& piece) {
    const int np = piece.size();
    const int shift = np - 1;
    MeanderCode out;
    out.types.reserve(static_cast<size_t>(host.size() + shift));
    for (int p = 1; p < spec.pos; ++p) out.types.push_back(host.type_at(p));
    for (int q = 1; q <= np; ++q) out.types.push_back(piece.type_at(q));
    for (int p = spec.pos + 1; p <= host.size(); ++p) out.types.push_back(host.type_at(p));

    const auto remap = [&](int p) { return p < spec.pos ? p : p + shift; };
    out.visit.reserve(out.types.size());
    for (int j = 1; j < spec.step; ++j) out.visit.push_back(remap(host.visit[static_cast<size_t>(j) - 1]));
    for (int q : piece.visit) out.visit.push_back(q + spec.pos - 1);
    for (int j = spec.step + 1; j <= host.size(); ++j)
        out.visit.push_back(remap(host.visit[static_cast<size_t>(j) - 1]));
    return out;
}

// Both colors orient the piece by the same rule (slot_opens_right over
// the traversal neighbours of the consumed point). At a touch the
// orientation is forced by planarity; at a crossing both orientations
// are planar and this choice is the one under which mirroring is
// compatible with composition, so the insertions satisfy the operad
// exchange laws (check_operad_axioms pins this).
SpliceSpec slot_spec(const MeanderCode& host, SlotKind kind, int label) {
    const Labels lab = labels(host);
    const auto& pos_of = kind == SlotKind::Crossing ? lab.crossing_pos : lab.touch_pos;
    if (label < 1 || label > static_cast<int>(pos_of.size()))
        throw std::invalid_argument("insert: " +
                                    std::string(kind == SlotKind::Crossing ? "crossing" : "touch") +
                                    " label " + std::to_string(label) + " out of range");
    SpliceSpec spec;
    spec.pos = pos_of[static_cast<size_t>(label) - 1];
    spec.step = 1 + static_cast<int>(std::find(host.visit.begin(), host.visit.end(), spec.pos) -
                                     host.visit.begin());
    const int u = spec.step >= 2 ? host.visit[static_cast<size_t>(spec.step) - 2] : 0;
    const int v = spec.step <= host.size() - 1 ? host.visit[static_cast<size_t>(spec.step)]
                                               : host.size() + 1;
    spec.flip = slot_opens_right(u, v, spec.pos, spec.pos);
    return spec;
}

MeanderCode insert_checked(const MeanderCode& host, const SpliceSpec& spec,
                           const MeanderCode& piece, SlotKind kind) {
    const MeanderCode oriented = spec.flip ? horizontal_flip(piece) : piece;
    MeanderCode out = splice(host, spec, oriented);

    const Order oh = order_of(host), op = order_of(piece), oo = order_of(out);
    const Order expect = kind == SlotKind::Crossing
                             ? Order{oh.crossings + op.crossings - 1, oh.touches + op.touches}
                             : Order{oh.crossings + op.crossings, oh.touches + op.touches - 1};
    if (oo != expect) throw std::logic_error("insertion order arithmetic violated");
    const auto rep = validate(out);
    if (!rep.valid)
        throw std::logic_error("insertion produced a non-planar code \"" + serialize(out) +
                               "\": " + rep.detail);
    return out;
}

}  // namespace

std::string to_string(Slot s) {
    return (s.kind == SlotKind::Crossing ? "C" : "T") + std::to_string(s.label);
}

MeanderCode insert_at_crossing(const MeanderCode& host, int label, const MeanderCode& piece) {
    require_valid(host, "insert_at_crossing(host)");
    require_valid(piece, "insert_at_crossing(piece)");
    if (crossing_parity(piece) != 1)
        throw std::invalid_argument(
            "insert_at_crossing: piece must have an odd number of crossings");
    return insert_checked(host, slot_spec(host, SlotKind::Crossing, label), piece, SlotKind::Crossing);
}

MeanderCode insert_at_touch(const MeanderCode& host, int label, const MeanderCode& piece) {
    require_valid(host, "insert_at_touch(host)");
    require_valid(piece, "insert_at_touch(piece)");
    if (crossing_parity(piece) != 0)
        throw std::invalid_argument(
            "insert_at_touch: piece must have an even number of crossings");
    return insert_checked(host, slot_spec(host, SlotKind::Touch, label), piece, SlotKind::Touch);
}

MeanderCode insert(const MeanderCode& host, Slot slot, const MeanderCode& piece) {
    return slot.kind == SlotKind::Crossing ? insert_at_crossing(host, slot.label, piece)
                                           : insert_at_touch(host, slot.label, piece);
}

SlotOrigin SlotMap::origin_of(Slot s) const {
    const auto& v = s.kind == SlotKind::Crossing ? crossing : touch;
    if (s.label < 1 || s.label > static_cast<int>(v.size()))
        throw std::invalid_argument("slot " + to_string(s) + " out of range in result");
    return v[static_cast<size_t>(s.label) - 1];
}

namespace {

Slot find_origin(const std::vector<SlotOrigin>& crossing, const std::vector<SlotOrigin>& touch,
                 SlotOrigin::From from, Slot wanted) {
    const auto& v = wanted.kind == SlotKind::Crossing ? crossing : touch;
    for (size_t i = 0; i < v.size(); ++i)
        if (v[i].from == from && v[i].slot == wanted)
            return Slot{wanted.kind, static_cast<int>(i) + 1};
    throw std::invalid_argument("slot " + to_string(wanted) + " has no image in the result");
}

}  // namespace

Slot SlotMap::from_host(Slot s) const { return find_origin(crossing, touch, SlotOrigin::From::Host, s); }
Slot SlotMap::from_piece(Slot s) const { return find_origin(crossing, touch, SlotOrigin::From::Piece, s); }

SlotMap slot_map(const MeanderCode& host, Slot at, const MeanderCode& piece) {
    require_valid(host, "slot_map(host)");
    require_valid(piece, "slot_map(piece)");
    const SpliceSpec spec =
        slot_spec(host, at.kind, at.label);
    const int np = piece.size();
    const int shift = np - 1;
    const MeanderCode result = insert(host, at, piece);
    const Labels host_lab = labels(host);
    const Labels piece_lab = labels(piece);
    const Labels res_lab = labels(result);

    SlotMap map;
    const int rn = result.size();
    for (int r = 1; r <= rn; ++r) {
        SlotOrigin origin;
        if (r < spec.pos) {
            origin.from = SlotOrigin::From::Host;
            const int hc = host_lab.crossing_of_pos[static_cast<size_t>(r) - 1];
            origin.slot = hc ? Slot{SlotKind::Crossing, hc}
                             : Slot{SlotKind::Touch, host_lab.touch_of_pos[static_cast<size_t>(r) - 1]};
        } else if (r <= spec.pos + shift) {
            origin.from = SlotOrigin::From::Piece;
            int q = r - spec.pos + 1;
            if (spec.flip) q = np + 1 - q;
            const int pc = piece_lab.crossing_of_pos[static_cast<size_t>(q) - 1];
            origin.slot = pc ? Slot{SlotKind::Crossing, pc}
                             : Slot{SlotKind::Touch, piece_lab.touch_of_pos[static_cast<size_t>(q) - 1]};
        } else {
            origin.from = SlotOrigin::From::Host;
            const int h = r - shift;
            const int hc = host_lab.crossing_of_pos[static_cast<size_t>(h) - 1];
            origin.slot = hc ? Slot{SlotKind::Crossing, hc}
                             : Slot{SlotKind::Touch, host_lab.touch_of_pos[static_cast<size_t>(h) - 1]};
        }
        if (res_lab.crossing_of_pos[static_cast<size_t>(r) - 1])
            map.crossing.push_back(origin);
        else
            map.touch.push_back(origin);
    }
    return map;
}

namespace {

void skip_ws(std::string_view& s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\n' || s.front() == '\r'))
        s.remove_prefix(1);
}

MeanderCode parse_meander_token(std::string_view& s) {
    size_t i = 0;
    while (i < s.size() && (s[i] == 'C' || s[i] == 'T')) ++i;
    if (i < s.size() && s[i] == '|') {
        ++i;
        bool expect_digit = true;
        while (i < s.size()) {
            if (expect_digit) {
                if (!std::isdigit(static_cast<unsigned char>(s[i])))
                    throw ParseError("expected digit in visit list of meander literal");
                while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
                expect_digit = false;
            } else if (s[i] == ',' && i + 1 < s.size() &&
                       std::isdigit(static_cast<unsigned char>(s[i + 1]))) {
                ++i;
                expect_digit = true;
            } else {
                break;
            }
        }
    }
    MeanderCode code = parse(s.substr(0, i));
    s.remove_prefix(i);
    return code;
}

Slot parse_slot_token(std::string_view& s) {
    skip_ws(s);
    if (s.empty() || (s.front() != 'C' && s.front() != 'T'))
        throw ParseError("expected slot C<i> or T<i>");
    Slot slot;
    slot.kind = s.front() == 'C' ? SlotKind::Crossing : SlotKind::Touch;
    s.remove_prefix(1);
    size_t i = 0;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == 0) throw ParseError("expected slot label digits");
    slot.label = std::stoi(std::string(s.substr(0, i)));
    s.remove_prefix(i);
    return slot;
}

void expect_char(std::string_view& s, char c) {
    skip_ws(s);
    if (s.empty() || s.front() != c)
        throw ParseError(std::string("expected '") + c + "' in expression");
    s.remove_prefix(1);
}

OpExpr parse_expr_rec(std::string_view& s) {
    skip_ws(s);
    if (s.starts_with("ins(")) {
        s.remove_prefix(4);
        OpExpr host = parse_expr_rec(s);
        expect_char(s, ',');
        Slot slot = parse_slot_token(s);
        expect_char(s, ',');
        OpExpr piece = parse_expr_rec(s);
        expect_char(s, ')');
        return OpExpr::make_node(std::move(host), slot, std::move(piece));
    }
    if (!s.empty() && s.front() == '{') {
        // balanced-brace JSON meander literal
        int depth = 0;
        size_t i = 0;
        for (; i < s.size(); ++i) {
            if (s[i] == '{') ++depth;
            if (s[i] == '}' && --depth == 0) {
                ++i;
                break;
            }
        }
        MeanderCode code = parse_code_literal(s.substr(0, i));
        s.remove_prefix(i);
        return OpExpr::make_leaf(std::move(code));
    }
    return OpExpr::make_leaf(parse_meander_token(s));
}

}  // namespace

OpExpr parse_expr(std::string_view text) {
    skip_ws(text);
    if (!text.empty() && text.front() == '{') {
        nlohmann::json j = nlohmann::json::parse(text);
        if (j.contains("host")) return expr_from_json(j);
        return OpExpr::make_leaf(code_from_json(j));
    }
    OpExpr e = parse_expr_rec(text);
    skip_ws(text);
    if (!text.empty()) throw ParseError("trailing input after expression: \"" + std::string(text) + "\"");
    return e;
}

OpExpr expr_from_json(const nlohmann::json& j) {
    if (j.is_string()) return OpExpr::make_leaf(parse(j.get<std::string>()));
    if (!j.is_object()) throw ParseError("bad expression JSON");
    if (!j.contains("host")) return OpExpr::make_leaf(code_from_json(j));
    const auto& js = j.at("slot");
    Slot slot;
    const std::string kind = js.at("kind").get<std::string>();
    if (kind == "crossing")
        slot.kind = SlotKind::Crossing;
    else if (kind == "touch")
        slot.kind = SlotKind::Touch;
    else
        throw ParseError("slot kind must be \"crossing\" or \"touch\"");
    slot.label = js.at("label").get<int>();
    return OpExpr::make_node(expr_from_json(j.at("host")), slot, expr_from_json(j.at("piece")));
}

nlohmann::json to_json(const OpExpr& expr) {
    if (expr.leaf) return to_json(expr.code);
    return nlohmann::json{
        {"host", to_json(expr.args[0])},
        {"slot",
         {{"kind", expr.slot.kind == SlotKind::Crossing ? "crossing" : "touch"},
          {"label", expr.slot.label}}},
        {"piece", to_json(expr.args[1])}};
}

std::string to_string(const OpExpr& expr) {
    if (expr.leaf) return serialize(expr.code);
    return "ins(" + to_string(expr.args[0]) + ", " + to_string(expr.slot) + ", " +
           to_string(expr.args[1]) + ")";
}

MeanderCode eval(const OpExpr& expr) {
    if (expr.leaf) return expr.code;
    return insert(eval(expr.args[0]), expr.slot, eval(expr.args[1]));
}

namespace {

std::vector<Slot> slots_of(const MeanderCode& code) {
    const Order o = order_of(code);
    std::vector<Slot> out;
    out.reserve(static_cast<size_t>(o.total()));
    for (int i = 1; i <= o.crossings; ++i) out.push_back({SlotKind::Crossing, i});
    for (int i = 1; i <= o.touches; ++i) out.push_back({SlotKind::Touch, i});
    return out;
}

}  // namespace

AxiomReport check_operad_axioms(int max_total_order, int sample_count, std::uint64_t seed) {
    AxiomReport report;
    report.seed = seed;
    report.max_unit_order = max_total_order;
    const MeanderCode unit_cross = parse("C|1");
    const MeanderCode unit_touch = parse("T|1");

    const auto complain = [&](const std::string& msg) {
        if (report.violations.size() < 32) report.violations.push_back(msg);
    };

    // Unit laws, exhaustive.
    for (int n = 0; n <= max_total_order; ++n) {
        for (const MeanderCode& m : all_meanders(n)) {
            const Order o = order_of(m);
            for (int i = 1; i <= o.crossings; ++i) {
                ++report.unit_checks;
                if (insert_at_crossing(m, i, unit_cross) != m)
                    complain("unit: " + serialize(m) + " o_" + std::to_string(i) + " C|1 != host");
            }
            for (int i = 1; i <= o.touches; ++i) {
                ++report.unit_checks;
                if (insert_at_touch(m, i, unit_touch) != m)
                    complain("unit: " + serialize(m) + " *_" + std::to_string(i) + " T|1 != host");
            }
            if (o.crossings % 2 == 1) {
                ++report.unit_checks;
                if (insert_at_crossing(unit_cross, 1, m) != m)
                    complain("unit: C|1 o_1 " + serialize(m) + " != piece");
            } else {
                ++report.unit_checks;
                if (insert_at_touch(unit_touch, 1, m) != m)
                    complain("unit: T|1 *_1 " + serialize(m) + " != piece");
            }
        }
    }

    // Seeded random composable samples for the two exchange laws.
    const int pool_bound = std::min(max_total_order, 5);
    std::vector<MeanderCode> pool, odd_pool, even_pool;
    for (int n = 0; n <= pool_bound; ++n)
        for (const MeanderCode& m : all_meanders(n)) {
            pool.push_back(m);
            (order_of(m).crossings % 2 == 1 ? odd_pool : even_pool).push_back(m);
        }
    std::mt19937_64 rng(seed);
    const auto pick = [&](const std::vector<MeanderCode>& v) -> const MeanderCode& {
        return v[std::uniform_int_distribution<size_t>(0, v.size() - 1)(rng)];
    };
    const auto pick_piece = [&](SlotKind kind) -> const MeanderCode& {
        return pick(kind == SlotKind::Crossing ? odd_pool : even_pool);
    };

    for (int t = 0; t < sample_count; ++t) {
        // Sequential: B into the copy of A inside (M o A) equals M o (A o B).
        {
            const MeanderCode* m = &pick(pool);
            while (m->size() == 0) m = &pick(pool);
            const auto mslots = slots_of(*m);
            const Slot s1 = mslots[std::uniform_int_distribution<size_t>(0, mslots.size() - 1)(rng)];
            const MeanderCode* a = &pick_piece(s1.kind);
            while (a->size() == 0) a = &pick_piece(s1.kind);
            const auto aslots = slots_of(*a);
            const Slot s2 = aslots[std::uniform_int_distribution<size_t>(0, aslots.size() - 1)(rng)];
            const MeanderCode& b = pick_piece(s2.kind);

            ++report.associativity_checks;
            const MeanderCode r1 = insert(*m, s1, *a);
            const Slot s2_in_r1 = slot_map(*m, s1, *a).from_piece(s2);
            const MeanderCode lhs = insert(r1, s2_in_r1, b);
            const MeanderCode rhs = insert(*m, s1, insert(*a, s2, b));
            ++report.closure_checks;
            if (lhs != rhs)
                complain("associativity: M=" + serialize(*m) + " s1=" + to_string(s1) +
                         " A=" + serialize(*a) + " s2=" + to_string(s2) + " B=" + serialize(b));
        }
        // Parallel: insertions at two distinct slots of M commute.
        {
            const MeanderCode* m = &pick(pool);
            while (order_of(*m).total() < 2) m = &pick(pool);
            const auto mslots = slots_of(*m);
            std::uniform_int_distribution<size_t> dist(0, mslots.size() - 1);
            size_t i1 = dist(rng), i2 = dist(rng);
            while (i2 == i1) i2 = dist(rng);
            const Slot s1 = mslots[i1], s2 = mslots[i2];
            const MeanderCode& a = pick_piece(s1.kind);
            const MeanderCode& b = pick_piece(s2.kind);

            ++report.commutation_checks;
            const MeanderCode r1 = insert(*m, s1, a);
            const MeanderCode r12 = insert(r1, slot_map(*m, s1, a).from_host(s2), b);
            const MeanderCode r2 = insert(*m, s2, b);
            const MeanderCode r21 = insert(r2, slot_map(*m, s2, b).from_host(s1), a);
            ++report.closure_checks;
            if (r12 != r21)
                complain("commutation: M=" + serialize(*m) + " s1=" + to_string(s1) + " A=" +
                         serialize(a) + " s2=" + to_string(s2) + " B=" + serialize(b));
        }
    }
    return report;
}

nlohmann::json to_json(const AxiomReport& report) {
    return nlohmann::json{{"seed", report.seed},
                          {"max_unit_order", report.max_unit_order},
                          {"unit_checks", report.unit_checks},
                          {"associativity_checks", report.associativity_checks},
                          {"commutation_checks", report.commutation_checks},
                          {"closure_checks", report.closure_checks},
                          {"violations", report.violations},
                          {"ok", report.ok()}};
}

}  // namespace meander
