#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "meander/series.hpp"

namespace meander {

struct SuiteResult {
    std::string name;
    bool pass = false;
    bool warned = false;  // soft criteria degrade to a warning
    double seconds = 0.0;
    nlohmann::json details;
};

struct VerifyOptions {
    int max_order = -1;  // -1 keeps each suite's contract bound
    int samples = 1000;
    std::uint64_t seed = 20240u;
    EmptyMeanderConvention convention = EmptyMeanderConvention::DropEmpty;
    int threads = 0;
    double perf_budget_seconds = 60.0;
};

SuiteResult verify_snake_formula(const VerifyOptions& opt);     // bound 8
SuiteResult verify_phi_s_expansion(const VerifyOptions& opt);   // bound 12
SuiteResult verify_phi_is(const VerifyOptions& opt);            // bound 8
SuiteResult verify_master_equation_suite(const VerifyOptions& opt);  // bound 8
SuiteResult verify_roundtrip(const VerifyOptions& opt);         // bound 9
SuiteResult verify_operad_laws(const VerifyOptions& opt);       // bound 7
SuiteResult verify_contract_insert(const VerifyOptions& opt);   // bound 8
SuiteResult verify_irreducible_n0(const VerifyOptions& opt);    // bound 10
SuiteResult verify_anchors(const VerifyOptions& opt);
SuiteResult verify_perf(const VerifyOptions& opt);              // bound 12, soft

std::vector<std::string> all_suite_names();
SuiteResult run_suite(const std::string& name, const VerifyOptions& opt);

nlohmann::json to_json(const SuiteResult& result);

}  // namespace meander
