#include "meander/enumerate.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <mutex>
#include <ostream>
#include <thread>

#include "meander/structure.hpp"

namespace meander {

const char* class_name(MeanderClass c) {
    switch (c) {
        case MeanderClass::All: return "all";
        case MeanderClass::Snake: return "snake";
        case MeanderClass::IteratedSnake: return "iterated-snake";
        case MeanderClass::Irreducible: return "irreducible";
    }
    return "?";
}

std::string classify(const MeanderCode& code) {
    if (is_snake(code)) return "snake";
    if (is_iterated_snake(code)) return "iterated-snake";
    if (is_irreducible(code)) return "irreducible";
    return "composite";
}

MeanderFilter class_filter(MeanderClass c) {
    switch (c) {
        case MeanderClass::All: return [](const MeanderCode&) { return true; };
        case MeanderClass::Snake: return [](const MeanderCode& m) { return is_snake(m); };
        case MeanderClass::IteratedSnake:
            return [](const MeanderCode& m) { return is_iterated_snake(m); };
        case MeanderClass::Irreducible:
            return [](const MeanderCode& m) { return is_irreducible(m); };
    }
    return nullptr;
}

namespace {

constexpr int kMaxOrder = 30;

// Shared backtracking state for one fixed total order. Arcs live on
// small stacks per side; a new arc is tested against the same-side
// stack at creation, so dead visit prefixes are cut immediately.
struct Walker {
    int n = 0;
    const PointType* types = nullptr;  // fixed types (lex mode), else null
    std::array<int, kMaxOrder + 2> visit{};
    std::array<std::array<std::pair<int, int>, kMaxOrder + 2>, 2> arcs{};
    std::array<int, 2> arc_count{0, 0};
    uint32_t used = 0;

    bool arc_ok(int side, int a, int b) const {
        const auto& v = arcs[static_cast<size_t>(side)];
        for (int i = 0; i < arc_count[static_cast<size_t>(side)]; ++i) {
            const auto [l, r] = v[static_cast<size_t>(i)];
            if ((l < a && a < r && r < b) || (a < l && l < b && b < r)) return false;
        }
        return true;
    }
    void push_arc(int side, int a, int b) {
        arcs[static_cast<size_t>(side)][static_cast<size_t>(arc_count[static_cast<size_t>(side)]++)] = {a, b};
    }
    void pop_arc(int side) { --arc_count[static_cast<size_t>(side)]; }
};

// Lexicographic emission: outer loop over type strings (C before T),
// inner DFS over visit prefixes in increasing position order.
void lex_visit_dfs(Walker& w, int depth, int cur, int side, const MeanderSink& emit,
                   const MeanderFilter& filter) {
    if (depth == w.n) {
        if (!w.arc_ok(side, cur, w.n + 1)) return;
        MeanderCode code;
        code.types.assign(w.types, w.types + w.n);
        code.visit.assign(w.visit.begin(), w.visit.begin() + w.n);
        if (!filter || filter(code)) emit(code);
        return;
    }
    for (int q = 1; q <= w.n; ++q) {
        if (w.used & (1u << q)) continue;
        const int a = std::min(cur, q), b = std::max(cur, q);
        if (!w.arc_ok(side, a, b)) continue;
        w.used |= 1u << q;
        w.visit[static_cast<size_t>(depth)] = q;
        w.push_arc(side, a, b);
        const int next_side =
            w.types[q - 1] == PointType::Cross ? 1 - side : side;
        lex_visit_dfs(w, depth + 1, q, next_side, emit, filter);
        w.pop_arc(side);
        w.used &= ~(1u << q);
    }
}

}  // namespace

void enumerate_meanders(int total_order, const MeanderSink& emit, const MeanderFilter& filter) {
    if (total_order < 0 || total_order > kMaxOrder)
        throw std::invalid_argument("enumerate_meanders: total order out of range");
    if (total_order == 0) {
        MeanderCode empty;
        if (!filter || filter(empty)) emit(empty);
        return;
    }
    std::vector<PointType> types(static_cast<size_t>(total_order), PointType::Cross);
    Walker w;
    w.n = total_order;
    for (;;) {
        w.types = types.data();
        lex_visit_dfs(w, 0, 0, 0, emit, filter);
        // next type string in lex order: C < T behaves like binary increment
        int i = total_order - 1;
        while (i >= 0 && types[static_cast<size_t>(i)] == PointType::Touch) {
            types[static_cast<size_t>(i)] = PointType::Cross;
            --i;
        }
        if (i < 0) break;
        types[static_cast<size_t>(i)] = PointType::Touch;
    }
}

std::vector<MeanderCode> all_meanders(int total_order) {
    std::vector<MeanderCode> out;
    enumerate_meanders(total_order, [&](const MeanderCode& m) { out.push_back(m); });
    return out;
}

std::size_t CountTable::index(int n, int k) const {
    if (n < 0 || k < 0 || n + k > max_total)
        throw std::out_of_range("CountTable cell (" + std::to_string(n) + "," +
                                std::to_string(k) + ") outside max total " +
                                std::to_string(max_total));
    const auto nn = static_cast<size_t>(n), tt = static_cast<size_t>(max_total);
    return nn * (tt + 1) - nn * (nn - 1) / 2 + static_cast<size_t>(k);
}

void CountTable::add(const CountTable& other) {
    if (other.max_total != max_total) throw std::invalid_argument("CountTable::add: size mismatch");
    for (size_t i = 0; i < cells.size(); ++i) cells[i] += other.cells[i];
}

const CountTable& CensusTables::table(MeanderClass c) const {
    switch (c) {
        case MeanderClass::Snake: return snake;
        case MeanderClass::IteratedSnake: return iterated_snake;
        case MeanderClass::Irreducible: return irreducible;
        default: return all;
    }
}

void CensusTables::add(const CensusTables& other) {
    all.add(other.all);
    snake.add(other.snake);
    iterated_snake.add(other.iterated_snake);
    irreducible.add(other.irreducible);
}

namespace {

// Census walker: interleaves position and type choices so every state
// is explored once; classifies each completed code from its visit
// permutation (monotone / separable / simple), which the tests pin to
// the interval and tree definitions.
struct CensusWalker {
    int n = 0;
    Walker w;
    std::array<PointType, kMaxOrder + 2> chosen_types{};
    CensusTables* out = nullptr;

    void record(int crossings) {
        const int k = n - crossings;
        out->all.at(crossings, k)++;
        const auto begin = w.visit.begin(), end = w.visit.begin() + n;
        const bool monotone = n >= 1 && (std::is_sorted(begin, end) ||
                                         std::is_sorted(begin, end, std::greater<int>()));
        if (monotone) out->snake.at(crossings, k)++;
        std::vector<int> visit(begin, end);
        if (n >= 1 && visit_is_separable(visit)) {
            out->iterated_snake.at(crossings, k)++;
        } else if (n >= 4 && visit_is_simple(visit)) {
            out->irreducible.at(crossings, k)++;
        }
    }

    void dfs(int depth, int cur, int side, int crossings) {
        if (depth == n) {
            if (w.arc_ok(side, cur, n + 1)) record(crossings);
            return;
        }
        for (int q = 1; q <= n; ++q) {
            if (w.used & (1u << q)) continue;
            const int a = std::min(cur, q), b = std::max(cur, q);
            if (!w.arc_ok(side, a, b)) continue;
            w.used |= 1u << q;
            w.visit[static_cast<size_t>(depth)] = q;
            w.push_arc(side, a, b);
            dfs(depth + 1, q, 1 - side, crossings + 1);  // crossing here
            dfs(depth + 1, q, side, crossings);          // touch here
            w.pop_arc(side);
            w.used &= ~(1u << q);
        }
    }
};

struct PrefixJob {
    int total = 0;
    int v1 = 0;
    PointType t1 = PointType::Cross;
    int v2 = 0;  // 0 when total == 1
    PointType t2 = PointType::Cross;
};

// Jobs fix the first two visited positions and their types; shards by
// the first-visited position per the sharding contract.
std::vector<PrefixJob> make_jobs(int max_total, int shard_index, int shard_count) {
    std::vector<PrefixJob> jobs;
    for (int total = 1; total <= max_total; ++total) {
        for (int v1 = 1; v1 <= total; ++v1) {
            if ((v1 - 1) % shard_count != shard_index) continue;
            if (total == 1) {
                jobs.push_back({total, v1, PointType::Cross, 0, PointType::Cross});
                jobs.push_back({total, v1, PointType::Touch, 0, PointType::Cross});
                continue;
            }
            for (int t1 = 0; t1 < 2; ++t1)
                for (int v2 = 1; v2 <= total; ++v2) {
                    if (v2 == v1) continue;
                    for (int t2 = 0; t2 < 2; ++t2)
                        jobs.push_back({total, v1, t1 ? PointType::Touch : PointType::Cross, v2,
                                        t2 ? PointType::Touch : PointType::Cross});
                }
        }
    }
    return jobs;
}

void run_job(const PrefixJob& job, CensusTables& tables) {
    CensusWalker cw;
    cw.n = job.total;
    cw.w.n = job.total;
    cw.out = &tables;
    // step 1
    int side = 0;
    cw.w.used |= 1u << job.v1;
    cw.w.visit[0] = job.v1;
    cw.w.push_arc(side, 0, job.v1);
    int crossings = 0;
    if (job.t1 == PointType::Cross) {
        side = 1 - side;
        ++crossings;
    }
    if (job.total == 1) {
        cw.dfs(1, job.v1, side, crossings);
        return;
    }
    // step 2
    const int a = std::min(job.v1, job.v2), b = std::max(job.v1, job.v2);
    if (!cw.w.arc_ok(side, a, b)) return;
    cw.w.used |= 1u << job.v2;
    cw.w.visit[1] = job.v2;
    cw.w.push_arc(side, a, b);
    if (job.t2 == PointType::Cross) {
        side = 1 - side;
        ++crossings;
    }
    cw.dfs(2, job.v2, side, crossings);
}

CensusTables census(int max_total, int shard_index, int shard_count, int threads) {
    if (max_total < 0 || max_total > kMaxOrder)
        throw std::invalid_argument("count_tables: max total order out of range");
    if (shard_count < 1 || shard_index < 0 || shard_index >= shard_count)
        throw std::invalid_argument("count_tables: bad shard spec");
    CensusTables tables(max_total);
    if (shard_index == 0) tables.all.at(0, 0) = 1;  // the empty meander

    const std::vector<PrefixJob> jobs = make_jobs(max_total, shard_index, shard_count);
    if (threads <= 0) threads = static_cast<int>(std::thread::hardware_concurrency());
    threads = std::max(1, std::min<int>(threads, static_cast<int>(jobs.size())));

    if (threads <= 1 || jobs.size() <= 1) {
        for (const PrefixJob& job : jobs) run_job(job, tables);
        return tables;
    }
    std::atomic<size_t> next{0};
    std::mutex merge_mutex;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(threads));
    for (int i = 0; i < threads; ++i) {
        pool.emplace_back([&]() {
            CensusTables local(max_total);
            for (;;) {
                const size_t j = next.fetch_add(1);
                if (j >= jobs.size()) break;
                run_job(jobs[j], local);
            }
            std::lock_guard<std::mutex> lock(merge_mutex);
            tables.add(local);
        });
    }
    for (auto& th : pool) th.join();
    return tables;
}

}  // namespace

CensusTables count_tables(int max_total, int threads) { return census(max_total, 0, 1, threads); }

CensusTables count_tables_shard(int max_total, int shard_index, int shard_count, int threads) {
    return census(max_total, shard_index, shard_count, threads);
}

BiSeries series_from_table(const CountTable& table) {
    BiSeries f(table.max_total);
    for (int n = 0; n <= table.max_total; ++n)
        for (int k = 0; n + k <= table.max_total; ++k) f.set(n, k, Coeff(table.at(n, k)));
    return f;
}

void write_csv(std::ostream& os, const CensusTables& tables) {
    os << "n,k,class,count\n";
    for (const MeanderClass c : {MeanderClass::All, MeanderClass::Snake,
                                 MeanderClass::IteratedSnake, MeanderClass::Irreducible}) {
        const CountTable& t = tables.table(c);
        for (int n = 0; n <= t.max_total; ++n)
            for (int k = 0; n + k <= t.max_total; ++k)
                os << n << ',' << k << ',' << class_name(c) << ',' << t.at(n, k) << '\n';
    }
}

nlohmann::json to_json(const CountTable& table) {
    nlohmann::json cells = nlohmann::json::array();
    for (int n = 0; n <= table.max_total; ++n)
        for (int k = 0; n + k <= table.max_total; ++k)
            if (table.at(n, k))
                cells.push_back({{"n", n}, {"k", k}, {"count", table.at(n, k)}});
    return nlohmann::json{{"max_total", table.max_total}, {"cells", cells}};
}

nlohmann::json to_json(const CensusTables& tables) {
    return nlohmann::json{{"max_total", tables.max_total},
                          {"all", to_json(tables.all)},
                          {"snake", to_json(tables.snake)},
                          {"iterated_snake", to_json(tables.iterated_snake)},
                          {"irreducible", to_json(tables.irreducible)}};
}

}  // namespace meander
