#include "meander/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "meander/decompose.hpp"
#include "meander/enumerate.hpp"
#include "meander/operad.hpp"
#include "meander/render.hpp"
#include "meander/structure.hpp"
#include "meander/verify.hpp"

namespace meander {

namespace {

void write_output(const std::string& path, const std::string& payload, std::ostream& out) {
    if (path.empty()) {
        out << payload;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open output file \"" + path + "\"");
    file << payload;
}

MeanderClass class_from_name(const std::string& name) {
    if (name == "all") return MeanderClass::All;
    if (name == "snake") return MeanderClass::Snake;
    if (name == "iterated-snake") return MeanderClass::IteratedSnake;
    if (name == "irreducible") return MeanderClass::Irreducible;
    throw CLI::ValidationError("--class", "unknown class \"" + name + "\"");
}

struct ShardSpec {
    int index = 0;
    int count = 1;
};

ShardSpec parse_shard(const std::string& text) {
    ShardSpec s;
    const size_t slash = text.find('/');
    if (slash == std::string::npos) throw CLI::ValidationError("--shard", "want i/N");
    s.index = std::stoi(text.substr(0, slash));
    s.count = std::stoi(text.substr(slash + 1));
    if (s.count < 1 || s.index < 0 || s.index >= s.count)
        throw CLI::ValidationError("--shard", "want 0 <= i < N");
    return s;
}

std::string tables_text(const CensusTables& tables) {
    std::ostringstream os;
    os << "n\\k";
    for (int k = 0; k <= tables.max_total; ++k) os << '\t' << k;
    os << '\n';
    for (int n = 0; n <= tables.max_total; ++n) {
        os << n;
        for (int k = 0; n + k <= tables.max_total; ++k) os << '\t' << tables.all.at(n, k);
        os << '\n';
    }
    return os.str();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"singular meander toolkit: census, classification, operad "
                 "insertions, prime-factor decomposition, identity checks"};
    app.require_subcommand(1);

    // enumerate
    auto* enumerate_cmd = app.add_subcommand("enumerate", "exhaustive census by total order");
    int max_order = -1;
    std::string order_cell, class_name_opt = "all", format = "csv", output_path, shard_text;
    bool want_counts = false, want_list = false;
    int threads = 0;
    enumerate_cmd->add_option("--max-order", max_order, "largest total order");
    enumerate_cmd->add_option("--order", order_cell, "single cell n,k");
    enumerate_cmd->add_flag("--counts", want_counts, "emit count tables");
    enumerate_cmd->add_flag("--list", want_list, "emit one code per line");
    enumerate_cmd->add_option("--class", class_name_opt,
                              "all|snake|iterated-snake|irreducible");
    enumerate_cmd->add_option("--format", format, "csv|json|text");
    enumerate_cmd->add_option("--shard", shard_text, "shard spec i/N over first-visited position");
    enumerate_cmd->add_option("--threads", threads, "worker threads (0 = auto)");
    enumerate_cmd->add_option("-o,--output", output_path, "output file (default stdout)");

    // classify
    auto* classify_cmd = app.add_subcommand("classify", "class and submeander count of a code");
    std::string classify_literal;
    classify_cmd->add_option("code", classify_literal, "meander literal")->required();

    // decompose
    auto* decompose_cmd = app.add_subcommand("decompose", "canonical prime-factor decomposition");
    std::string decompose_literal, decompose_format = "text";
    decompose_cmd->add_option("code", decompose_literal, "meander literal")->required();
    decompose_cmd->add_option("--format", decompose_format, "text|json");

    // compose
    auto* compose_cmd = app.add_subcommand("compose", "evaluate an insertion expression");
    std::string compose_literal;
    compose_cmd->add_option("expr", compose_literal, "ins(HOST, C<i>|T<i>, PIECE) or JSON")
        ->required();

    // render
    auto* render_cmd = app.add_subcommand("render", "draw the arc diagram");
    std::string render_literal, render_format = "ascii", render_out;
    render_cmd->add_option("code", render_literal, "meander literal")->required();
    render_cmd->add_option("--format", render_format, "ascii|svg|tikz");
    render_cmd->add_option("-o,--output", render_out, "output file (default stdout)");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "run verification suites");
    std::vector<std::string> suites{"all"};
    VerifyOptions vopt;
    std::string convention_name_opt = "drop-empty", verify_out;
    verify_cmd->add_option("--suite", suites, "suite names or all");
    verify_cmd->add_option("--max-order", vopt.max_order, "override the suite bound");
    verify_cmd->add_option("--samples", vopt.samples, "random samples for the operad suite");
    verify_cmd->add_option("--seed", vopt.seed, "random seed");
    verify_cmd->add_option("--convention", convention_name_opt, "drop-empty|keep-empty");
    verify_cmd->add_option("--threads", vopt.threads, "worker threads (0 = auto)");
    verify_cmd->add_option("-o,--output", verify_out, "JSON report file");

    std::vector<const char*> argv;
    argv.push_back("meander");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        std::ostringstream os;
        const int code = app.exit(e, os, os);
        (code == 0 ? out : err) << os.str();
        return code;
    }

    try {
        if (enumerate_cmd->parsed()) {
            int cell_n = -1, cell_k = -1;
            if (!order_cell.empty()) {
                const size_t comma = order_cell.find(',');
                if (comma == std::string::npos)
                    throw std::runtime_error("--order wants n,k");
                cell_n = std::stoi(order_cell.substr(0, comma));
                cell_k = std::stoi(order_cell.substr(comma + 1));
                if (max_order < 0) max_order = cell_n + cell_k;
            }
            if (max_order < 0) throw std::runtime_error("enumerate needs --max-order or --order");
            if (!want_list) want_counts = true;
            const MeanderClass cls = class_from_name(class_name_opt);
            const ShardSpec shard = shard_text.empty() ? ShardSpec{} : parse_shard(shard_text);

            std::string payload;
            if (want_list) {
                std::ostringstream os;
                const MeanderFilter base = class_filter(cls);
                for (int n = (cell_n >= 0 ? cell_n + cell_k : 0); n <= max_order; ++n) {
                    enumerate_meanders(
                        n,
                        [&](const MeanderCode& m) {
                            const std::string text = serialize(m);
                            if (!text.empty()) os << text << '\n';
                        },
                        [&](const MeanderCode& m) {
                            if (cell_n >= 0) {
                                const Order o = order_of(m);
                                if (o.crossings != cell_n || o.touches != cell_k) return false;
                            }
                            if (!shard_text.empty()) {
                                const int v1 = m.size() ? m.visit.front() : 1;
                                if ((v1 - 1) % shard.count != shard.index) return false;
                            }
                            return base(m);
                        });
                    if (cell_n >= 0) break;
                }
                payload = os.str();
            } else {
                const CensusTables tables =
                    shard_text.empty() ? count_tables(max_order, threads)
                                       : count_tables_shard(max_order, shard.index, shard.count,
                                                            threads);
                if (format == "csv") {
                    std::ostringstream os;
                    write_csv(os, tables);
                    payload = os.str();
                } else if (format == "json") {
                    payload = to_json(tables).dump(2) + "\n";
                } else if (format == "text") {
                    payload = tables_text(tables);
                } else {
                    throw std::runtime_error("unknown --format \"" + format + "\"");
                }
            }
            write_output(output_path, payload, out);
            return 0;
        }

        if (classify_cmd->parsed()) {
            const MeanderCode code = parse_code_literal(classify_literal);
            require_valid(code, "classify");
            out << classify(code) << " (order (" << order_of(code).crossings << ","
                << order_of(code).touches << "), submeanders: " << submeander_count(code)
                << ")\n";
            return 0;
        }

        if (decompose_cmd->parsed()) {
            const MeanderCode code = parse_code_literal(decompose_literal);
            const DecompTree tree = decompose(code);
            const bool roundtrip_ok = reconstruct(tree) == code;
            if (decompose_format == "json") {
                nlohmann::json j = to_json(tree);
                j["reconstruction_ok"] = roundtrip_ok;
                out << j.dump(2) << "\n";
            } else {
                out << format_tree(tree);
                out << "reconstruction: " << (roundtrip_ok ? "OK" : "MISMATCH") << "\n";
            }
            return roundtrip_ok ? 0 : 1;
        }

        if (compose_cmd->parsed()) {
            const MeanderCode result = eval(parse_expr(compose_literal));
            const Order o = order_of(result);
            out << serialize(result) << " order (" << o.crossings << "," << o.touches << ")\n";
            return 0;
        }

        if (render_cmd->parsed()) {
            const MeanderCode code = parse_code_literal(render_literal);
            write_output(render_out, render(code, render_format_from_name(render_format)), out);
            return 0;
        }

        if (verify_cmd->parsed()) {
            if (convention_name_opt == "drop-empty")
                vopt.convention = EmptyMeanderConvention::DropEmpty;
            else if (convention_name_opt == "keep-empty")
                vopt.convention = EmptyMeanderConvention::KeepEmpty;
            else
                throw std::runtime_error("unknown --convention \"" + convention_name_opt + "\"");

            std::vector<std::string> names;
            for (const std::string& s : suites) {
                if (s == "all") {
                    const auto every = all_suite_names();
                    names.insert(names.end(), every.begin(), every.end());
                } else {
                    names.push_back(s);
                }
            }
            nlohmann::json report = nlohmann::json::array();
            bool all_pass = true;
            for (const std::string& name : names) {
                const SuiteResult result = run_suite(name, vopt);
                report.push_back(to_json(result));
                all_pass &= result.pass;
                out << (result.pass ? (result.warned ? "[warn] " : "[pass] ") : "[FAIL] ")
                    << result.name << " (" << result.seconds << "s)\n";
            }
            nlohmann::json full{{"seed", vopt.seed},
                                {"convention", convention_name(vopt.convention)},
                                {"samples", vopt.samples},
                                {"max_order_override", vopt.max_order},
                                {"suites", report},
                                {"pass", all_pass}};
            if (!verify_out.empty()) {
                std::ofstream file(verify_out, std::ios::binary);
                if (!file) throw std::runtime_error("cannot open report file \"" + verify_out + "\"");
                file << full.dump(2) << "\n";
            }
            out << (all_pass ? "all suites passed\n" : "FAILURES present\n");
            return all_pass ? 0 : 1;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    err << "error: no subcommand\n";
    return 2;
}

}  // namespace meander
