#include "meander/core.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace meander {

std::string MeanderCode::str() const { return serialize(*this); }

bool is_well_formed(const MeanderCode& code, std::string* why) {
    const auto fail = [&](std::string msg) {
        if (why) *why = std::move(msg);
        return false;
    };
    if (code.types.size() != code.visit.size())
        return fail("types length " + std::to_string(code.types.size()) +
                    " != visit length " + std::to_string(code.visit.size()));
    const int n = code.size();
    std::vector<char> seen(static_cast<size_t>(n) + 1, 0);
    for (int v : code.visit) {
        if (v < 1 || v > n)
            return fail("visit entry " + std::to_string(v) + " out of range 1.." +
                        std::to_string(n));
        if (seen[static_cast<size_t>(v)]++)
            return fail("visit entry " + std::to_string(v) + " repeated");
    }
    return true;
}

std::vector<Arc> arc_diagram(const MeanderCode& code) {
    const int n = code.size();
    std::vector<Arc> arcs;
    arcs.reserve(static_cast<size_t>(n) + 1);
    Side side = Side::Up;
    int at = 0;  // entry anchor
    for (int j = 0; j < n; ++j) {
        const int next = code.visit[static_cast<size_t>(j)];
        arcs.push_back({std::min(at, next), std::max(at, next), side});
        if (code.types[static_cast<size_t>(next) - 1] == PointType::Cross) side = flipped(side);
        at = next;
    }
    arcs.push_back({at, n + 1, side});  // exit anchor
    return arcs;
}

ValidityReport validate(const MeanderCode& code) {
    ValidityReport report;
    std::string why;
    if (!is_well_formed(code, &why)) {
        report.structural_ok = false;
        report.detail = why;
        report.flaw = code.types.size() != code.visit.size() ? Flaw::LengthMismatch
                      : why.find("out of range") != std::string::npos
                          ? Flaw::VisitOutOfRange
                          : Flaw::VisitNotBijective;
        return report;
    }
    report.structural_ok = true;
    const auto arcs = arc_diagram(code);
    for (size_t i = 0; i < arcs.size(); ++i) {
        for (size_t j = 0; j < i; ++j) {
            if (arcs_cross(arcs[j], arcs[i])) {
                report.flaw = Flaw::SameSideCrossing;
                report.crossing_pair = {arcs[j], arcs[i]};
                std::ostringstream os;
                os << "same-side arcs (" << arcs[j].left << "," << arcs[j].right
                   << ") and (" << arcs[i].left << "," << arcs[i].right << ") cross on side "
                   << (arcs[i].side == Side::Up ? "Up" : "Down");
                report.detail = os.str();
                return report;
            }
        }
    }
    report.valid = true;
    return report;
}

bool is_valid(const MeanderCode& code) { return validate(code).valid; }

void require_valid(const MeanderCode& code, const char* who) {
    const auto rep = validate(code);
    if (!rep.valid)
        throw std::invalid_argument(std::string(who) + ": invalid meander code \"" +
                                    serialize(code) + "\": " + rep.detail);
}

Order order_of(const MeanderCode& code) {
    Order o;
    for (PointType t : code.types) (t == PointType::Cross ? o.crossings : o.touches)++;
    return o;
}

Labels labels(const MeanderCode& code) {
    Labels lab;
    const int n = code.size();
    lab.crossing_of_pos.assign(static_cast<size_t>(n), 0);
    lab.touch_of_pos.assign(static_cast<size_t>(n), 0);
    for (int pos = 1; pos <= n; ++pos) {
        if (code.types[static_cast<size_t>(pos) - 1] == PointType::Cross) {
            lab.crossing_pos.push_back(pos);
            lab.crossing_of_pos[static_cast<size_t>(pos) - 1] =
                static_cast<int>(lab.crossing_pos.size());
        } else {
            lab.touch_pos.push_back(pos);
            lab.touch_of_pos[static_cast<size_t>(pos) - 1] =
                static_cast<int>(lab.touch_pos.size());
        }
    }
    return lab;
}

MeanderCode horizontal_flip(const MeanderCode& code) {
    const int n = code.size();
    MeanderCode out;
    out.types.assign(code.types.rbegin(), code.types.rend());
    out.visit.reserve(code.visit.size());
    for (int v : code.visit) out.visit.push_back(n + 1 - v);
    return out;
}

std::string serialize(const MeanderCode& code) {
    std::string s;
    s.reserve(static_cast<size_t>(code.size()) * 3);
    for (PointType t : code.types) s.push_back(t == PointType::Cross ? 'C' : 'T');
    if (code.size() == 0) return s;
    s.push_back('|');
    for (size_t j = 0; j < code.visit.size(); ++j) {
        if (j) s.push_back(',');
        s += std::to_string(code.visit[j]);
    }
    return s;
}

MeanderCode parse(std::string_view text) {
    MeanderCode code;
    if (text.empty()) return code;
    const size_t bar = text.find('|');
    const std::string_view types_part = text.substr(0, bar == std::string_view::npos ? text.size() : bar);
    for (char c : types_part) {
        if (c == 'C')
            code.types.push_back(PointType::Cross);
        else if (c == 'T')
            code.types.push_back(PointType::Touch);
        else
            throw ParseError("bad type character '" + std::string(1, c) + "' (want C or T)");
    }
    if (bar != std::string_view::npos) {
        std::string_view rest = text.substr(bar + 1);
        while (!rest.empty()) {
            int value = 0;
            const auto [ptr, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), value);
            if (ec != std::errc() || ptr == rest.data())
                throw ParseError("bad visit entry near \"" + std::string(rest) + "\"");
            code.visit.push_back(value);
            rest.remove_prefix(static_cast<size_t>(ptr - rest.data()));
            if (!rest.empty()) {
                if (rest.front() != ',') throw ParseError("expected ',' in visit list");
                rest.remove_prefix(1);
                if (rest.empty()) throw ParseError("trailing ',' in visit list");
            }
        }
    }
    std::string why;
    if (!is_well_formed(code, &why)) throw ParseError("malformed meander code: " + why);
    return code;
}

nlohmann::json to_json(const MeanderCode& code) {
    std::string types;
    for (PointType t : code.types) types.push_back(t == PointType::Cross ? 'C' : 'T');
    return nlohmann::json{{"types", types}, {"visit", code.visit}};
}

MeanderCode code_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("types") || !j.contains("visit"))
        throw ParseError("meander JSON must be {\"types\": ..., \"visit\": [...]}");
    MeanderCode code;
    for (char c : j.at("types").get<std::string>()) {
        if (c == 'C')
            code.types.push_back(PointType::Cross);
        else if (c == 'T')
            code.types.push_back(PointType::Touch);
        else
            throw ParseError("bad type character in JSON types string");
    }
    code.visit = j.at("visit").get<std::vector<int>>();
    std::string why;
    if (!is_well_formed(code, &why)) throw ParseError("malformed meander code: " + why);
    return code;
}

MeanderCode parse_code_literal(std::string_view text) {
    const size_t first = text.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && text[first] == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError(std::string("bad meander JSON: ") + e.what());
        }
        return code_from_json(j);
    }
    return parse(text);
}

}  // namespace meander
