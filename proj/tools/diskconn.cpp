#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "diskconn/script.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Insertion-only connectivity over disk intersection graphs"};

    std::string script_path;
    std::string bench_preset;
    std::string csv_path;
    std::string awnn_name = "scan";
    std::size_t n = 0;
    std::uint64_t seed = 0;
    bool compare_naive = false;

    auto* script_opt =
        app.add_option("--script", script_path, "Run commands from a file instead of stdin");
    auto* bench_opt =
        app.add_option("--bench", bench_preset, "Run a benchmark on a generated instance")
            ->check(CLI::IsMember({"uniform", "heavy_tail", "clustered", "tangent_chain"}));
    script_opt->excludes(bench_opt);
    bench_opt->excludes(script_opt);
    app.add_option("--n", n, "Benchmark instance size")->needs(bench_opt);
    app.add_option("--seed", seed, "Benchmark instance seed")->needs(bench_opt);
    app.add_flag("--compare-naive", compare_naive, "Also time the quadratic baseline")
        ->needs(bench_opt);
    app.add_option("--csv", csv_path, "Write per-insertion counters to this file")
        ->needs(bench_opt);
    app.add_option("--awnn", awnn_name, "Nearest-neighbor backend")
        ->check(CLI::IsMember({"scan", "tiered"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;  // 2 on any usage error; --help stays 0
    }

    const auto kind = diskconn::parse_awnn_kind(awnn_name);
    if (!kind) {
        std::cerr << "error: unknown awnn backend\n";
        return 2;
    }

    if (!bench_preset.empty()) {
        diskconn::GeneratorConfig config;
        config.preset = *diskconn::parse_preset(bench_preset);
        config.n = n;
        config.seed = seed;
        diskconn::BenchmarkOptions options;
        options.kind = *kind;
        options.compare_naive = compare_naive;
        options.csv_path = csv_path;
        return diskconn::run_benchmark(config, options, std::cout);
    }

    if (!script_path.empty()) {
        std::ifstream file(script_path);
        if (!file) {
            std::cerr << "error: cannot open script " << script_path << '\n';
            return 2;
        }
        return diskconn::run_script(file, std::cout, *kind);
    }
    return diskconn::run_script(std::cin, std::cout, *kind);
}
