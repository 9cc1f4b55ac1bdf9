#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>

#include "meander/core.hpp"
#include "meander/enumerate.hpp"
#include "meander/render.hpp"

using namespace meander;

namespace {

// Independent planarity oracle: rebuild the side-tracked arcs with its
// own loop, then run a sweep with one open-arc stack per side. Every
// arc closing must match the stack top; openings push outer arcs
// first. Structurally different from the pairwise test in validate.
bool sweep_oracle(const MeanderCode& code) {
    const int n = code.size();
    struct OArc {
        int left, right;
    };
    std::vector<OArc> per_side[2];
    int side = 0, at = 0;
    for (int j = 0; j < n; ++j) {
        const int next = code.visit[static_cast<size_t>(j)];
        per_side[side].push_back({std::min(at, next), std::max(at, next)});
        if (code.types[static_cast<size_t>(next) - 1] == PointType::Cross) side = 1 - side;
        at = next;
    }
    per_side[side].push_back({at, n + 1});

    for (const auto& arcs : per_side) {
        std::vector<std::vector<size_t>> opens(static_cast<size_t>(n) + 2),
            closes(static_cast<size_t>(n) + 2);
        for (size_t i = 0; i < arcs.size(); ++i) {
            opens[static_cast<size_t>(arcs[i].left)].push_back(i);
            closes[static_cast<size_t>(arcs[i].right)].push_back(i);
        }
        std::vector<size_t> stack;
        for (int pos = 0; pos <= n + 1; ++pos) {
            auto& closing = closes[static_cast<size_t>(pos)];
            std::sort(closing.begin(), closing.end(),
                      [&](size_t a, size_t b) { return arcs[a].left > arcs[b].left; });
            for (size_t idx : closing) {
                if (stack.empty() || stack.back() != idx) return false;
                stack.pop_back();
            }
            auto& opening = opens[static_cast<size_t>(pos)];
            std::sort(opening.begin(), opening.end(),
                      [&](size_t a, size_t b) { return arcs[a].right > arcs[b].right; });
            for (size_t idx : opening) stack.push_back(idx);
        }
        if (!stack.empty()) return false;
    }
    return true;
}

// Every decorated permutation of total order n, planar or not.
void for_each_candidate(int n, const std::function<void(const MeanderCode&)>& fn) {
    std::vector<int> visit(static_cast<size_t>(n));
    std::iota(visit.begin(), visit.end(), 1);
    do {
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            MeanderCode code;
            code.visit = visit;
            for (int i = 0; i < n; ++i)
                code.types.push_back(mask & (1u << i) ? PointType::Touch : PointType::Cross);
            fn(code);
        }
    } while (std::next_permutation(visit.begin(), visit.end()));
}

}  // namespace

TEST_CASE("validate: specified small cases") {
    CHECK(is_valid(parse("CCC|1,2,3")));
    CHECK_FALSE(is_valid(parse("CC|2,1")));
    CHECK(is_valid(parse("TC|2,1")));
    CHECK(is_valid(parse("")));
    CHECK(is_valid(parse("CC|1,2")));
    CHECK(is_valid(parse("CCC|3,2,1")));

    const auto bad = validate(parse("CC|2,1"));
    CHECK_FALSE(bad.valid);
    CHECK(bad.structural_ok);
    CHECK(bad.flaw == Flaw::SameSideCrossing);
    REQUIRE(bad.crossing_pair.has_value());
    CHECK(bad.crossing_pair->first == Arc{0, 2, Side::Up});
    CHECK(bad.crossing_pair->second == Arc{1, 3, Side::Up});
}

TEST_CASE("validate: structural errors are distinct from non-planarity") {
    MeanderCode mismatch({PointType::Cross}, {1, 2});
    auto rep = validate(mismatch);
    CHECK_FALSE(rep.valid);
    CHECK_FALSE(rep.structural_ok);
    CHECK(rep.flaw == Flaw::LengthMismatch);

    MeanderCode repeated({PointType::Cross, PointType::Touch}, {2, 2});
    rep = validate(repeated);
    CHECK_FALSE(rep.structural_ok);
    CHECK(rep.flaw == Flaw::VisitNotBijective);

    MeanderCode out_of_range({PointType::Cross}, {3});
    rep = validate(out_of_range);
    CHECK_FALSE(rep.structural_ok);
    CHECK(rep.flaw == Flaw::VisitOutOfRange);
}

TEST_CASE("validate agrees with the independent sweep oracle up to order 6") {
    for (int n = 0; n <= 6; ++n) {
        long long valid_count = 0;
        for_each_candidate(n, [&](const MeanderCode& code) {
            const bool fast = is_valid(code);
            REQUIRE(fast == sweep_oracle(code));
            valid_count += fast;
        });
        CHECK(valid_count == static_cast<long long>(all_meanders(n).size()));
    }
}

TEST_CASE("arc diagram of the inverse order-3 snake") {
    const auto arcs = arc_diagram(parse("CCC|3,2,1"));
    REQUIRE(arcs.size() == 4);
    CHECK(arcs[0] == Arc{0, 3, Side::Up});
    CHECK(arcs[1] == Arc{2, 3, Side::Down});
    CHECK(arcs[2] == Arc{1, 2, Side::Up});
    CHECK(arcs[3] == Arc{1, 4, Side::Down});
}

TEST_CASE("order and labels") {
    CHECK(order_of(parse("CCC|1,2,3")) == Order{3, 0});
    CHECK(order_of(parse("CT|1,2")) == Order{1, 1});
    CHECK(order_of(parse("")) == Order{0, 0});

    const Labels lab = labels(parse("CTC|1,3,2"));
    CHECK(lab.crossing_of_pos == std::vector<int>{1, 0, 2});
    CHECK(lab.touch_of_pos == std::vector<int>{0, 1, 0});
    CHECK(lab.crossing_pos == std::vector<int>{1, 3});
    CHECK(lab.touch_pos == std::vector<int>{2});

    const Labels cc = labels(parse("CC|1,2"));
    CHECK(cc.crossing_pos == std::vector<int>{1, 2});
    CHECK(cc.touch_pos.empty());

    const Labels tt = labels(parse("TT|1,2"));
    CHECK(tt.touch_pos == std::vector<int>{1, 2});
}

TEST_CASE("horizontal_flip: specified values and involution") {
    CHECK(serialize(horizontal_flip(parse("CC|1,2"))) == "CC|2,1");
    CHECK(serialize(horizontal_flip(parse("CT|1,2"))) == "TC|2,1");
    CHECK(serialize(horizontal_flip(parse(""))) == "");
    for (int n = 0; n <= 5; ++n)
        for (const MeanderCode& m : all_meanders(n)) CHECK(horizontal_flip(horizontal_flip(m)) == m);
}

TEST_CASE("exit side is Up exactly when the crossing count is even") {
    for (int n = 0; n <= 6; ++n)
        for (const MeanderCode& m : all_meanders(n)) {
            const auto arcs = arc_diagram(m);
            const bool exit_up = arcs.back().side == Side::Up;
            CHECK(exit_up == (order_of(m).crossings % 2 == 0));
        }
}

TEST_CASE("serialize/parse round trip") {
    CHECK(serialize(MeanderCode({PointType::Cross, PointType::Touch}, {2, 1})) == "CT|2,1");
    CHECK(parse("CT|2,1") == MeanderCode({PointType::Cross, PointType::Touch}, {2, 1}));
    for (int n = 0; n <= 6; ++n)
        for (const MeanderCode& m : all_meanders(n)) CHECK(parse(serialize(m)) == m);
}

TEST_CASE("parse rejects syntax and structural defects") {
    CHECK_THROWS_AS(parse("CT|2,2"), ParseError);
    CHECK_THROWS_AS(parse("CT|1"), ParseError);
    CHECK_THROWS_AS(parse("CX|1,2"), ParseError);
    CHECK_THROWS_AS(parse("CT|1,5"), ParseError);
    CHECK_THROWS_AS(parse("CT|1,"), ParseError);
    CHECK_THROWS_AS(parse("CT|a,b"), ParseError);
}

TEST_CASE("json form round trips and is accepted as a literal") {
    const MeanderCode m = parse("CCT|1,3,2");
    CHECK(code_from_json(to_json(m)) == m);
    CHECK(parse_code_literal(R"({"types":"CCT","visit":[1,3,2]})") == m);
    CHECK(parse_code_literal("CCT|1,3,2") == m);
    CHECK_THROWS_AS(parse_code_literal(R"({"types":"CC"})"), ParseError);
}

TEST_CASE("render: deterministic, refuses invalid input") {
    const MeanderCode m = parse("CCCC|1,4,3,2");
    for (auto fmt : {RenderFormat::Ascii, RenderFormat::Svg, RenderFormat::Tikz})
        CHECK(render(m, fmt) == render(m, fmt));
    CHECK_THROWS_AS(render(parse("CC|2,1"), RenderFormat::Ascii), std::invalid_argument);
}

TEST_CASE("render: single crossing enters above-left and exits below") {
    const std::string art = render(parse("C|1"), RenderFormat::Ascii);
    CHECK(art ==
          "+-+\n"
          "*-X-*\n"
          "  +-+\n");
    // both arcs of the tangency stay above the line
    CHECK(render(parse("T|1"), RenderFormat::Ascii) ==
          "+-+-+\n"
          "*-o-*\n");
}

TEST_CASE("render: svg and tikz structure") {
    const std::string svg = render(parse("T|1"), RenderFormat::Svg);
    CHECK(svg.find("<svg") == 0);
    CHECK(svg.find("<path") != std::string::npos);
    const std::string tikz = render(parse("CCCC|1,4,3,2"), RenderFormat::Tikz);
    CHECK(tikz.find("\\documentclass[tikz]{standalone}") == 0);
    CHECK(std::count(tikz.begin(), tikz.end(), '{') == std::count(tikz.begin(), tikz.end(), '}'));
    CHECK(tikz.find("arc (180:0:") != std::string::npos);
    CHECK(tikz.find("arc (180:360:") != std::string::npos);
}
