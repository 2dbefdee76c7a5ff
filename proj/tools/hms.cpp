// Command-line driver: builds the tropical model from a monomial file, runs
// the two-sided verification pipeline, renders the curve, and exercises the
// A-infinity property suites.

#include "hms/svg.hpp"
#include "hms/verify.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <optional>

namespace {

// exit codes: 0 = pass, 1 = verification mismatch, 2 = input error
constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kInputError = 2;

struct CommonFlags {
    std::optional<long long> truncate;
    std::optional<long long> k_window;
    std::optional<int> arity;
    std::optional<std::uint64_t> seed;
    int threads = 0;
};

void apply_flags(hms::InputOptions& opts, const CommonFlags& flags) {
    if (flags.truncate) opts.truncation = *flags.truncate;
    if (flags.k_window) opts.k_window = *flags.k_window;
    if (flags.arity) opts.arity = *flags.arity;
    if (flags.seed) opts.seed = *flags.seed;
    opts.threads = flags.threads;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tropical homological mirror symmetry verifier"};
    app.require_subcommand(1);

    std::string input, output;
    CommonFlags flags;

    auto add_common = [&](CLI::App* cmd, bool needs_input) {
        if (needs_input) cmd->add_option("input", input, "input monomial file")->required();
        cmd->add_option("--output", output, "output file");
        cmd->add_option_function<long long>(
               "--truncate", [&](long long v) { flags.truncate = v; }, "tail truncation J")
            ->check(CLI::NonNegativeNumber);
        cmd->add_option_function<long long>(
               "--k-window", [&](long long v) { flags.k_window = v; },
               "twist window |k|,|l| <= W")
            ->check(CLI::NonNegativeNumber);
        cmd->add_option_function<int>(
               "--arity", [&](int v) { flags.arity = v; }, "identity-check arity bound")
            ->check(CLI::PositiveNumber);
        cmd->add_option_function<std::uint64_t>(
            "--seed", [&](std::uint64_t v) { flags.seed = v; }, "seed for the property suites");
        cmd->add_option("--threads", flags.threads, "worker threads (0 = cores)");
    };

    auto* build = app.add_subcommand("build", "construct and dump the tropical model");
    add_common(build, true);
    auto* verify = app.add_subcommand("verify", "run the two-sided verification");
    add_common(verify, true);
    auto* svg = app.add_subcommand("svg", "render the subdivision and curve");
    add_common(svg, true);
    auto* selftest = app.add_subcommand("ainf-selftest", "run the A-infinity property suites");
    add_common(selftest, false);

    CLI11_PARSE(app, argc, argv);

    try {
        if (selftest->parsed()) {
            hms::InputOptions opts;
            apply_flags(opts, flags);
            auto rep = hms::ainf_selftest(opts.seed, opts.arity);
            std::cout << rep.to_text();
            return rep.pass ? kOk : kMismatch;
        }

        auto doc = hms::ingest(input);
        apply_flags(doc.options, flags);

        if (build->parsed()) {
            auto m = hms::build_model(doc.wp, doc.overrides);
            std::string dump = hms::model_to_json(m);
            if (output.empty()) {
                std::cout << dump << "\n";
            } else {
                std::ofstream out(output, std::ios::binary);
                if (!out) throw hms::IoError("cannot write " + output);
                out << dump << "\n";
            }
            return kOk;
        }
        if (verify->parsed()) {
            auto rep = hms::verify(doc);
            std::cout << rep.to_text();
            if (!output.empty()) {
                std::ofstream out(output, std::ios::binary);
                if (!out) throw hms::IoError("cannot write " + output);
                out << rep.to_json() << "\n";
            }
            return rep.pass ? kOk : kMismatch;
        }
        if (svg->parsed()) {
            auto m = hms::build_model(doc.wp, doc.overrides);
            std::string path = output.empty() ? input + ".svg" : output;
            hms::emit_svg(m, path);
            std::cout << "wrote " << path << "\n";
            return kOk;
        }
    } catch (const hms::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}
