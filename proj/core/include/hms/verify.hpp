#pragma once

#include "hms/fukaya.hpp"
#include "hms/mirror.hpp"
#include "hms/tropical.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace hms {

struct InputOptions {
    long long truncation = 8;  // J
    long long k_window = 2;
    int arity = 4;
    std::uint64_t seed = 0;
    int threads = 0;  // 0 = one per core
};

struct InputDocument {
    WeightedPoints wp;
    std::vector<DeltaOverride> overrides;
    InputOptions options;
};

/// Parses and schema-validates an input file; also builds the model once so
/// constraint violations surface here.
InputDocument ingest(const std::string& path);
InputDocument parse_document(const std::string& text);

struct PairResult {
    LagrangianObject src, tgt;
    std::size_t a_even = 0, a_odd = 0;
    std::size_t b_even = 0, b_odd = 0;
    std::size_t cech_even = 0, cech_odd = 0;
    bool match = false;
};

struct ProductCheck {
    std::string kind;
    std::string f, g, expected, actual;
    bool pass = false;
};

struct InvariantResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct VerificationReport {
    InputOptions options;
    std::vector<PairResult> pairs;
    std::vector<ProductCheck> product_checks;
    std::vector<InvariantResult> invariants;
    bool pass = false;

    std::string to_json() const;
    std::string to_text() const;
};

VerificationReport verify(const InputDocument& doc);

/// Pipeline entry on a prebuilt model; lets tests inject faults.
VerificationReport verify_model(const TropicalModel& m, const InputOptions& opts);

/// Model dump for the build subcommand.
std::string model_to_json(const TropicalModel& m);

/// Seeded property suites of the A-infinity toolkit.
struct SelftestReport {
    std::vector<InvariantResult> checks;
    bool pass = false;
    std::string to_text() const;
};

SelftestReport ainf_selftest(std::uint64_t seed, int arity);

}  // namespace hms
