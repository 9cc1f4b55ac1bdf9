#include "meander/structure.hpp"

#include <algorithm>
#include <cassert>

namespace meander {

namespace {

std::vector<int> time_of_position(const MeanderCode& code) {
    std::vector<int> time(static_cast<size_t>(code.size()) + 1, 0);
    for (int j = 0; j < code.size(); ++j) time[static_cast<size_t>(code.visit[static_cast<size_t>(j)])] = j + 1;
    return time;
}

// Restriction to a common interval in host coordinates, before
// canonicalization.
MeanderCode restrict_raw(const MeanderCode& code, Interval iv) {
    MeanderCode out;
    out.types.assign(code.types.begin() + (iv.lo - 1), code.types.begin() + iv.hi);
    for (int v : code.visit)
        if (iv.lo <= v && v <= iv.hi) out.visit.push_back(v - iv.lo + 1);
    return out;
}

// Whether the sub-disk over a common interval opens to the right, read
// from the traversal neighbours of the block.
bool block_opens_right(const MeanderCode& code, Interval iv) {
    int first_step = 0, last_step = 0;
    for (int j = 1; j <= code.size(); ++j) {
        const int p = code.visit[static_cast<size_t>(j) - 1];
        if (iv.lo <= p && p <= iv.hi) {
            if (!first_step) first_step = j;
            last_step = j;
        }
    }
    const int u = first_step >= 2 ? code.visit[static_cast<size_t>(first_step) - 2] : 0;
    const int v = last_step <= code.size() - 1 ? code.visit[static_cast<size_t>(last_step)]
                                               : code.size() + 1;
    return slot_opens_right(u, v, iv.lo, iv.hi);
}

// A right-opening block is mirrored so its own canonical code has the
// standard left entry. For blocks of even transverse count this is the
// unique planar orientation; for odd blocks both orientations are
// planar and the slot orientation picks the one the insertions
// reproduce.
MeanderCode canonicalize_block(const MeanderCode& code, Interval iv, MeanderCode raw) {
    MeanderCode out = block_opens_right(code, iv) ? horizontal_flip(raw) : std::move(raw);
    if (!is_valid(out))
        throw std::logic_error("canonicalize_block: extracted block \"" + serialize(out) +
                               "\" is not planar");
    return out;
}

bool quotient_point_is_cross(const MeanderCode& code, Interval block) {
    int crossings = 0;
    for (int p = block.lo; p <= block.hi; ++p)
        if (code.type_at(p) == PointType::Cross) ++crossings;
    return crossings % 2 == 1;
}

}  // namespace

bool is_common_interval(const MeanderCode& code, Interval iv) {
    if (iv.is_empty()) return true;
    if (iv.lo < 1 || iv.hi > code.size() || iv.lo > iv.hi) return false;
    const auto time = time_of_position(code);
    int lo_t = code.size() + 1, hi_t = 0;
    for (int p = iv.lo; p <= iv.hi; ++p) {
        lo_t = std::min(lo_t, time[static_cast<size_t>(p)]);
        hi_t = std::max(hi_t, time[static_cast<size_t>(p)]);
    }
    return hi_t - lo_t == iv.hi - iv.lo;
}

std::vector<Interval> common_intervals(const MeanderCode& code) {
    std::vector<Interval> out{Interval::empty_interval()};
    const int n = code.size();
    const auto time = time_of_position(code);
    for (int lo = 1; lo <= n; ++lo) {
        int lo_t = time[static_cast<size_t>(lo)], hi_t = lo_t;
        for (int hi = lo; hi <= n; ++hi) {
            lo_t = std::min(lo_t, time[static_cast<size_t>(hi)]);
            hi_t = std::max(hi_t, time[static_cast<size_t>(hi)]);
            if (hi_t - lo_t == hi - lo) out.push_back({lo, hi});
        }
    }
    return out;
}

std::size_t submeander_count(const MeanderCode& code) { return common_intervals(code).size(); }

MeanderCode extract(const MeanderCode& code, Interval iv) {
    require_valid(code, "extract");
    if (iv.is_empty() || !is_common_interval(code, iv))
        throw std::invalid_argument("extract: not a nonempty common interval");
    return canonicalize_block(code, iv, restrict_raw(code, iv));
}

MeanderCode contract(const MeanderCode& code, Interval iv) {
    require_valid(code, "contract");
    if (iv.is_empty() || !is_common_interval(code, iv))
        throw std::invalid_argument("contract: not a nonempty common interval");
    const int len = iv.length();
    MeanderCode out;
    out.types.reserve(static_cast<size_t>(code.size() - len + 1));
    for (int p = 1; p <= code.size(); ++p) {
        if (p < iv.lo || p > iv.hi)
            out.types.push_back(code.type_at(p));
        else if (p == iv.lo)
            out.types.push_back(quotient_point_is_cross(code, iv) ? PointType::Cross
                                                                  : PointType::Touch);
    }
    bool block_emitted = false;
    for (int v : code.visit) {
        if (v < iv.lo)
            out.visit.push_back(v);
        else if (v > iv.hi)
            out.visit.push_back(v - len + 1);
        else if (!block_emitted) {
            out.visit.push_back(iv.lo);
            block_emitted = true;
        }
    }
    assert(is_valid(out));
    return out;
}

MeanderCode quotient(const MeanderCode& code, const std::vector<Interval>& blocks) {
    std::vector<Interval> sorted = blocks;
    std::sort(sorted.begin(), sorted.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
    int expect = 1;
    for (const Interval& b : sorted) {
        if (b.is_empty() || b.lo != expect || !is_common_interval(code, b))
            throw std::invalid_argument("quotient: blocks must be common intervals partitioning 1..N");
        expect = b.hi + 1;
    }
    if (expect != code.size() + 1)
        throw std::invalid_argument("quotient: blocks must cover 1..N");

    std::vector<int> block_of(static_cast<size_t>(code.size()) + 1, 0);
    MeanderCode out;
    for (size_t b = 0; b < sorted.size(); ++b) {
        for (int p = sorted[b].lo; p <= sorted[b].hi; ++p) block_of[static_cast<size_t>(p)] = static_cast<int>(b) + 1;
        out.types.push_back(quotient_point_is_cross(code, sorted[b]) ? PointType::Cross
                                                                     : PointType::Touch);
    }
    std::vector<char> emitted(sorted.size() + 1, 0);
    for (int v : code.visit) {
        const int b = block_of[static_cast<size_t>(v)];
        if (!emitted[static_cast<size_t>(b)]) {
            out.visit.push_back(b);
            emitted[static_cast<size_t>(b)] = 1;
        }
    }
    return out;
}

bool is_snake(const MeanderCode& code) {
    require_valid(code, "is_snake");
    return code.size() >= 1 && visit_is_monotone(code.visit);
}

bool is_irreducible(const MeanderCode& code) {
    require_valid(code, "is_irreducible");
    const size_t n = static_cast<size_t>(code.size());
    if (code.size() < 2 || visit_is_monotone(code.visit)) return false;
    return submeander_count(code) == n + 2;
}

namespace {

bool all_internal_linear(const StrongNode& node) {
    if (node.kind == NodeKind::Prime) return false;
    for (const StrongNode& c : node.children)
        if (!all_internal_linear(c)) return false;
    return true;
}

}  // namespace

bool is_iterated_snake(const MeanderCode& code) {
    require_valid(code, "is_iterated_snake");
    if (code.size() < 1) return false;
    return all_internal_linear(strong_intervals(code));
}

namespace {

void fill_node(const MeanderCode& code, StrongNode& node) {
    if (node.children.empty()) {
        node.kind = NodeKind::Leaf;
        return;
    }
    std::vector<Interval> blocks;
    blocks.reserve(node.children.size());
    // Child spans in the canonical coordinates of the extracted block:
    // a mirrored block mirrors its children too.
    const bool mirrored = node.span.length() != code.size() && block_opens_right(code, node.span);
    const MeanderCode sub =
        node.span.length() == code.size()
            ? code
            : canonicalize_block(code, node.span, restrict_raw(code, node.span));
    for (const StrongNode& c : node.children) {
        int lo = c.span.lo - node.span.lo + 1;
        int hi = c.span.hi - node.span.lo + 1;
        if (mirrored) {
            const int len = node.span.length();
            const int nlo = len + 1 - hi;
            hi = len + 1 - lo;
            lo = nlo;
        }
        blocks.push_back({lo, hi});
    }
    node.quotient_code = quotient(sub, blocks);
    if (!is_valid(node.quotient_code)) node.quotient_code = horizontal_flip(node.quotient_code);
    assert(is_valid(node.quotient_code));
    node.kind = visit_is_monotone(node.quotient_code.visit) ? NodeKind::Linear : NodeKind::Prime;
    for (StrongNode& c : node.children) fill_node(code, c);
}

}  // namespace

StrongIntervalTree strong_intervals(const MeanderCode& code) {
    require_valid(code, "strong_intervals");
    if (code.size() < 1) throw std::invalid_argument("strong_intervals: empty meander");

    std::vector<Interval> commons = common_intervals(code);
    commons.erase(commons.begin());  // drop Empty
    std::vector<Interval> strong;
    for (const Interval& a : commons) {
        bool overlapped = false;
        for (const Interval& b : commons) {
            if ((a.lo < b.lo && b.lo <= a.hi && a.hi < b.hi) ||
                (b.lo < a.lo && a.lo <= b.hi && b.hi < a.hi)) {
                overlapped = true;
                break;
            }
        }
        if (!overlapped) strong.push_back(a);
    }
    std::sort(strong.begin(), strong.end(), [](const Interval& a, const Interval& b) {
        return a.lo != b.lo ? a.lo < b.lo : a.hi > b.hi;
    });

    // Laminar family -> tree by a containment stack.
    std::vector<StrongNode> stack;
    stack.push_back({strong.front(), NodeKind::Leaf, {}, {}});
    for (size_t i = 1; i < strong.size(); ++i) {
        StrongNode node{strong[i], NodeKind::Leaf, {}, {}};
        while (!stack.back().span.contains(node.span)) {
            StrongNode done = std::move(stack.back());
            stack.pop_back();
            stack.back().children.push_back(std::move(done));
        }
        stack.push_back(std::move(node));
    }
    while (stack.size() > 1) {
        StrongNode done = std::move(stack.back());
        stack.pop_back();
        stack.back().children.push_back(std::move(done));
    }
    StrongNode root = std::move(stack.front());
    fill_node(code, root);
    return root;
}

nlohmann::json to_json(const StrongNode& node) {
    nlohmann::json j;
    j["kind"] = node.kind == NodeKind::Leaf ? "leaf" : node.kind == NodeKind::Linear ? "linear" : "prime";
    j["interval"] = {node.span.lo, node.span.hi};
    if (node.kind != NodeKind::Leaf) {
        j["quotient"] = serialize(node.quotient_code);
        nlohmann::json kids = nlohmann::json::array();
        for (const StrongNode& c : node.children) kids.push_back(to_json(c));
        j["children"] = std::move(kids);
    }
    return j;
}

bool visit_is_monotone(const std::vector<int>& visit) {
    bool inc = true, dec = true;
    for (size_t j = 1; j < visit.size(); ++j) {
        inc &= visit[j] > visit[j - 1];
        dec &= visit[j] < visit[j - 1];
    }
    return inc || dec;
}

// Greedy stack reduction: push singleton value ranges, merge the top
// two whenever their union is a contiguous value range. Reduces to one
// block exactly for separable permutations (all-linear trees).
bool visit_is_separable(const std::vector<int>& visit) {
    if (visit.empty()) return false;
    std::vector<std::pair<int, int>> stack;
    for (int v : visit) {
        stack.emplace_back(v, v);
        while (stack.size() >= 2) {
            auto& a = stack[stack.size() - 2];
            auto& b = stack.back();
            if (a.second + 1 == b.first || b.second + 1 == a.first) {
                a = {std::min(a.first, b.first), std::max(a.second, b.second)};
                stack.pop_back();
            } else {
                break;
            }
        }
    }
    return stack.size() == 1;
}

bool visit_is_simple(const std::vector<int>& visit) {
    const int n = static_cast<int>(visit.size());
    std::vector<int> time(static_cast<size_t>(n) + 1, 0);
    for (int j = 0; j < n; ++j) time[static_cast<size_t>(visit[static_cast<size_t>(j)])] = j + 1;
    for (int lo = 1; lo <= n; ++lo) {
        int lo_t = time[static_cast<size_t>(lo)], hi_t = lo_t;
        for (int hi = lo + 1; hi <= n; ++hi) {
            lo_t = std::min(lo_t, time[static_cast<size_t>(hi)]);
            hi_t = std::max(hi_t, time[static_cast<size_t>(hi)]);
            if (hi_t - lo_t == hi - lo && !(lo == 1 && hi == n)) return false;
        }
    }
    return true;
}

}  // namespace meander
