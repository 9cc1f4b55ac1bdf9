#include "meander/decompose.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

#include "meander/structure.hpp"

namespace meander {

const char* factor_kind_name(FactorKind k) {
    switch (k) {
        case FactorKind::IteratedSnake: return "iterated-snake";
        case FactorKind::Irreducible: return "irreducible";
        case FactorKind::Point: return "point";
    }
    return "?";
}

namespace {

MeanderCode point_code(PointType t) {
    return MeanderCode({t}, {1});
}

// Frontier of the maximal linear region rooted at a linear node: the
// leaves and prime nodes reachable through linear nodes only, in
// l-position order.
void collect_frontier(const StrongNode& node, std::vector<const StrongNode*>& frontier) {
    for (const StrongNode& c : node.children) {
        if (c.kind == NodeKind::Linear)
            collect_frontier(c, frontier);
        else
            frontier.push_back(&c);
    }
}

DecompNode build(const MeanderCode& code, const StrongNode& root);

DecompNode build_children(const MeanderCode& code, const MeanderCode& skeleton,
                          FactorKind kind, const std::vector<const StrongNode*>& blocks) {
    DecompNode node;
    node.kind = kind;
    node.skeleton = skeleton;
    const Labels lab = labels(skeleton);
    for (size_t i = 0; i < blocks.size(); ++i) {
        const int pos = static_cast<int>(i) + 1;
        const int cl = lab.crossing_of_pos[static_cast<size_t>(pos) - 1];
        const Slot slot = cl ? Slot{SlotKind::Crossing, cl}
                             : Slot{SlotKind::Touch, lab.touch_of_pos[static_cast<size_t>(pos) - 1]};
        const StrongNode& b = *blocks[i];
        if (b.kind == NodeKind::Leaf) {
            DecompNode child;
            child.kind = FactorKind::Point;
            child.skeleton = point_code(code.type_at(b.span.lo));
            node.children.emplace_back(slot, std::move(child));
        } else {
            const MeanderCode sub = extract(code, b.span);
            node.children.emplace_back(slot, build(sub, strong_intervals(sub)));
        }
    }
    return node;
}

DecompNode build(const MeanderCode& code, const StrongNode& root) {
    if (root.kind == NodeKind::Leaf) {
        // A single point is a snake; wrap it so the root is a factor.
        DecompNode node;
        node.kind = FactorKind::IteratedSnake;
        node.skeleton = code;
        DecompNode child;
        child.kind = FactorKind::Point;
        child.skeleton = code;
        const Slot slot{code.type_at(1) == PointType::Cross ? SlotKind::Crossing : SlotKind::Touch, 1};
        node.children.emplace_back(slot, std::move(child));
        return node;
    }
    std::vector<const StrongNode*> blocks;
    if (root.kind == NodeKind::Prime) {
        for (const StrongNode& c : root.children) blocks.push_back(&c);
    } else {
        collect_frontier(root, blocks);
    }
    std::vector<Interval> spans;
    spans.reserve(blocks.size());
    for (const StrongNode* b : blocks) spans.push_back(b->span);
    const MeanderCode skeleton = quotient(code, spans);
    assert(is_valid(skeleton));
    return build_children(
        code, skeleton,
        root.kind == NodeKind::Prime ? FactorKind::Irreducible : FactorKind::IteratedSnake, blocks);
}

}  // namespace

DecompTree decompose(const MeanderCode& code) {
    require_valid(code, "decompose");
    if (code.size() < 1) throw std::invalid_argument("decompose: empty meander");
    return build(code, strong_intervals(code));
}

MeanderCode reconstruct(const DecompTree& tree) {
    if (tree.kind == FactorKind::Point) return tree.skeleton;
    MeanderCode out = tree.skeleton;
    // Right-to-left so pending slot labels stay put.
    for (auto it = tree.children.rbegin(); it != tree.children.rend(); ++it)
        out = insert(out, it->first, reconstruct(it->second));
    return out;
}

namespace {

void collect_factors(const DecompNode& node,
                     std::vector<std::pair<FactorKind, MeanderCode>>& out) {
    if (node.kind == FactorKind::Point) return;
    out.emplace_back(node.kind, node.skeleton);
    for (const auto& [slot, child] : node.children) collect_factors(child, out);
}

}  // namespace

std::vector<std::pair<FactorKind, MeanderCode>> prime_factors(const MeanderCode& code) {
    std::vector<std::pair<FactorKind, MeanderCode>> out;
    collect_factors(decompose(code), out);
    return out;
}

nlohmann::json to_json(const DecompNode& node) {
    nlohmann::json j;
    j["kind"] = factor_kind_name(node.kind);
    j["skeleton"] = serialize(node.skeleton);
    if (!node.children.empty()) {
        nlohmann::json kids = nlohmann::json::array();
        for (const auto& [slot, child] : node.children)
            kids.push_back({{"slot",
                             {{"kind", slot.kind == SlotKind::Crossing ? "crossing" : "touch"},
                              {"label", slot.label}}},
                            {"node", to_json(child)}});
        j["children"] = std::move(kids);
    }
    return j;
}

namespace {

void format_rec(const DecompNode& node, int indent, std::ostringstream& os) {
    os << std::string(static_cast<size_t>(indent) * 2, ' ') << factor_kind_name(node.kind) << " "
       << serialize(node.skeleton) << "\n";
    for (const auto& [slot, child] : node.children) {
        if (child.kind == FactorKind::Point) continue;
        os << std::string(static_cast<size_t>(indent) * 2 + 2, ' ') << "at " << to_string(slot)
           << ":\n";
        format_rec(child, indent + 2, os);
    }
}

}  // namespace

std::string format_tree(const DecompNode& node) {
    std::ostringstream os;
    format_rec(node, 0, os);
    return os.str();
}

}  // namespace meander
