#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "meander/core.hpp"
#include "meander/series.hpp"

namespace meander {

enum class MeanderClass : std::uint8_t { All, Snake, IteratedSnake, Irreducible };

const char* class_name(MeanderClass c);

// Most specific class of a valid code, as printed by the CLI:
// "snake", "iterated-snake", "irreducible" or "composite".
std::string classify(const MeanderCode& code);

using MeanderSink = std::function<void(const MeanderCode&)>;
using MeanderFilter = std::function<bool(const MeanderCode&)>;

// Emits every valid code of the given total order exactly once, in
// lexicographic (types, visit) order; backtracking over visit prefixes
// with incremental same-side crossing pruning.
void enumerate_meanders(int total_order, const MeanderSink& emit,
                        const MeanderFilter& filter = nullptr);

std::vector<MeanderCode> all_meanders(int total_order);

MeanderFilter class_filter(MeanderClass c);

// (n, k) -> count for n + k <= max_total.
struct CountTable {
    int max_total = 0;
    std::vector<std::uint64_t> cells;

    CountTable() = default;
    explicit CountTable(int t)
        : max_total(t), cells(static_cast<size_t>(t + 1) * (t + 2) / 2, 0) {}

    std::size_t index(int n, int k) const;
    std::uint64_t at(int n, int k) const { return cells[index(n, k)]; }
    std::uint64_t& at(int n, int k) { return cells[index(n, k)]; }
    void add(const CountTable& other);
    bool operator==(const CountTable&) const = default;
};

struct CensusTables {
    int max_total = 0;
    CountTable all, snake, iterated_snake, irreducible;

    CensusTables() = default;
    explicit CensusTables(int t)
        : max_total(t), all(t), snake(t), iterated_snake(t), irreducible(t) {}
    const CountTable& table(MeanderClass c) const;
    void add(const CensusTables& other);
    bool operator==(const CensusTables&) const = default;
};

// Full census by exhaustive backtracking; threads = 0 picks the
// hardware count. Classification uses visit-permutation fast paths that
// the tests pin against the interval/tree definitions.
CensusTables count_tables(int max_total, int threads = 0);

// Shard by first-visited position: (visit[0] - 1) % shard_count ==
// shard_index; the order-0 cell is counted by shard 0. Shard tables sum
// to the unsharded census.
CensusTables count_tables_shard(int max_total, int shard_index, int shard_count,
                                int threads = 0);

BiSeries series_from_table(const CountTable& table);

void write_csv(std::ostream& os, const CensusTables& tables);
nlohmann::json to_json(const CountTable& table);
nlohmann::json to_json(const CensusTables& tables);

}  // namespace meander
