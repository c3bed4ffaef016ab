#pragma once

// Audit pipeline and property suites behind the CLI: candidate parsing,
// stage-by-stage certificate construction, verdicts, and the seeded
// lemma-check suites.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <mpfr.h>

#include "json.hpp"

#include "es/arith.hpp"
#include "es/factor_terms.hpp"

namespace es {

using Json = nlohmann::ordered_json;

struct Config {
    mpfr_prec_t precision = 256;
    Rat c{229, 1000}; // pair-extraction constants
    uint64_t A = 283;
    Rat eta{1, 17000};
    unsigned shards = 1;
    std::optional<double> L_override;   // per-curve height floor
    std::optional<double> gap_override; // per-curve |h - hhat| gap
};

// JSON config file; every field optional. Missing file is an error.
Config load_config(const std::string& path);

struct parse_error : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Candidate (n, d, k, l), optionally with supplied term factorizations that
// replace the computed ones (for auditing externally produced data).
struct Candidate {
    Int n, d;
    uint64_t k = 0;
    unsigned l = 0;
    std::optional<TermSet> supplied_terms;
};

Candidate parse_candidate(const std::string& path);

struct Certificate {
    Json doc;
    bool contradiction = false;
};

Certificate audit_candidate(const Candidate& cand, const Config& cfg);

struct SuiteResult {
    std::string name;
    size_t passed = 0, failed = 0;
    std::vector<std::string> notes;
};

// selector in {erdos_subset, gcd_pairs, products, heights, substitutions, all}
std::vector<SuiteResult> run_lemma_suites(const std::string& selector, size_t trials,
                                          uint64_t seed);

} // namespace es
