#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "vqrsim/errors.hpp"
#include "vqrsim/pipeline.hpp"

namespace {

int cmd_synth(const std::string& config, const std::string& out,
              std::optional<std::uint64_t> seed) {
    vqrsim::SynthSpec spec = vqrsim::SynthSpec::load(config);
    if (seed)
        spec.seed = *seed;
    auto files = vqrsim::synth_to_dir(spec, out);
    for (const auto& f : files)
        std::cout << f.string() << "\n";
    return 0;
}

int cmd_run(const std::string& config, const std::string& out, int threads) {
    vqrsim::RunConfig cfg = vqrsim::RunConfig::load(config);
    auto result = vqrsim::run_pipeline(cfg, out, threads);
    for (const auto& w : result.warnings)
        std::cerr << "warning: " << w << "\n";
    for (const auto& f : result.files)
        std::cout << f.string() << "\n";
    return 0;
}

int cmd_compare(const std::string& list_a, const std::string& list_b, const std::string& out) {
    std::string json = vqrsim::compare_ranking_files(list_a, list_b);
    if (out.empty()) {
        std::cout << json;
    } else {
        std::ofstream os(out, std::ios::binary);
        os << json;
        if (!os)
            throw vqrsim::Error("cannot write " + out);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Research-assessment scoring simulator: VQR-style merit scoring, "
                 "FAII rescoring and FSS productivity rankings over a corpus"};
    app.require_subcommand(1);

    auto* synth = app.add_subcommand("synth", "generate a synthetic corpus");
    std::string synth_config, synth_out = ".";
    std::optional<std::uint64_t> synth_seed;
    synth->add_option("--config", synth_config, "synthesis spec (JSON)")->required();
    synth->add_option("--out", synth_out, "output directory");
    synth->add_option("--seed", synth_seed, "override the spec's seed");

    auto* run = app.add_subcommand("run", "run the three-scenario experiment");
    std::string run_config, run_out;
    int threads = 1;
    run->add_option("--config", run_config, "run configuration (JSON)")->required();
    run->add_option("--out", run_out, "output directory (overrides the config)");
    run->add_option("--threads", threads, "worker threads for per-university stages");

    auto* cmp = app.add_subcommand("compare", "compare two ranking CSV files");
    std::string list_a, list_b, cmp_out;
    cmp->add_option("list_a", list_a, "first ranking CSV")->required();
    cmp->add_option("list_b", list_b, "second ranking CSV")->required();
    cmp->add_option("--out", cmp_out, "output JSON file (default: stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (synth->parsed())
            return cmd_synth(synth_config, synth_out, synth_seed);
        if (run->parsed())
            return cmd_run(run_config, run_out, threads);
        if (cmp->parsed())
            return cmd_compare(list_a, list_b, cmp_out);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
