#include "cli.hpp"

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <particula/particula.hpp>

namespace particula::cli {

namespace {

struct MdFlags {
    std::size_t n = 100;
    std::uint64_t seed = 0;
    long steps = 1000;
    double r_cut = 0;
    double c = 1e-3;
    std::string out;
    bool parallel = false;
};

md::SimParams to_params(const MdFlags& flags) {
    md::SimParams params;
    params.n = flags.n;
    params.seed = flags.seed;
    params.timesteps = flags.steps;
    params.r_cut = flags.r_cut;
    params.c = flags.c;
    if (flags.parallel) params.exec = Exec::parallel();
    return params;
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    return out;
}

void finish_output(std::ofstream& out, const std::string& path) {
    out.flush();
    if (!out) throw std::runtime_error("error while writing '" + path + "'");
}

/// `--out` writes one streamed CSV; with a literal `{step}` token in the path
/// it writes one file per step instead (e.g. traj_{step}.csv).
void run_md(const MdFlags& flags) {
    const auto params = to_params(flags);
    md::SnapshotFn snapshot;

    std::ofstream stream_file;
    std::unique_ptr<TrajectoryWriter<md::velocity, md::Particles>> stream_writer;
    const auto token = flags.out.find("{step}");
    if (!flags.out.empty() && token == std::string::npos) {
        stream_file = open_output(flags.out);
        stream_writer = std::make_unique<TrajectoryWriter<md::velocity, md::Particles>>(stream_file);
        snapshot = [&](long io, const md::Particles& p) { stream_writer->write(io, p); };
    } else if (token != std::string::npos) {
        snapshot = [&flags, token](long io, const md::Particles& p) {
            std::string path = flags.out;
            path.replace(token, 6, std::to_string(io));
            auto out = open_output(path);
            TrajectoryWriter<md::velocity, md::Particles> writer(out);
            writer.write(io, p);
            finish_output(out, path);
        };
    }

    const auto t0 = std::chrono::steady_clock::now();
    auto final_state = md::run(params, snapshot);
    const auto seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    if (stream_writer) finish_output(stream_file, flags.out);
    std::cout << "md: n=" << final_state.alive_count() << " steps=" << params.timesteps
              << " r_cut=" << params.cutoff() << " seed=" << params.seed << " wall=" << seconds
              << "s\n";
}

void run_bench(const std::string& mode_str, const std::vector<std::size_t>& n_list,
               std::uint64_t seed, const std::string& out, bool parallel) {
    const auto mode = bench::parse_mode(mode_str);
    if (!mode) throw std::runtime_error("unknown benchmark mode '" + mode_str + "'");
    const Exec exec = parallel ? Exec::parallel() : Exec{};
    const auto records = bench::run_benchmark(*mode, n_list, seed, exec);
    if (out.empty()) {
        bench::write_csv(std::cout, records);
    } else {
        auto file = open_output(out);
        bench::write_csv(file, records);
        finish_output(file, out);
    }
}

int run_verify(std::size_t n, std::uint64_t seed) {
    const auto result = bench::verify(n, seed);
    std::cout << "verify: n=" << result.n << " max relative error=" << result.max_rel_error
              << " tolerance=" << bench::kVerifyTolerance << " -> "
              << (result.ok ? "PASS" : "FAIL") << '\n';
    return result.ok ? 0 : 1;
}

}  // namespace

int run(int argc, const char* const* argv) {
    CLI::App app{"particle container, cell-list neighbor search, and a molecular dynamics demo"};
    app.require_subcommand(1);

    MdFlags md_flags;
    auto* md_cmd = app.add_subcommand("md", "run the molecular dynamics example");
    md_cmd->add_option("--n", md_flags.n, "particle count")->capture_default_str();
    md_cmd->add_option("--seed", md_flags.seed, "RNG seed")->capture_default_str();
    md_cmd->add_option("--steps", md_flags.steps, "number of timesteps")->capture_default_str();
    md_cmd->add_option("--r-cut", md_flags.r_cut, "interaction cutoff (default sqrt(3/n))");
    md_cmd->add_option("--c", md_flags.c, "force constant")->capture_default_str();
    md_cmd->add_option("--out", md_flags.out,
                       "trajectory CSV path; a literal {step} token selects one file per step");
    md_cmd->add_flag("--parallel", md_flags.parallel, "evaluate updates on all hardware threads");

    std::string bench_mode = "fixed-neighbors";
    std::vector<std::size_t> bench_n_list;
    std::uint64_t bench_seed = 0;
    std::string bench_out;
    bool bench_parallel = false;
    auto* bench_cmd = app.add_subcommand("bench", "time the velocity-update kernel, emit CSV");
    bench_cmd
        ->add_option("--mode", bench_mode, "fixed-neighbors, fixed-cutoff, or brute-force")
        ->check(CLI::IsMember({"fixed-neighbors", "fixed-cutoff", "brute-force"}))
        ->capture_default_str();
    bench_cmd->add_option("--n-list", bench_n_list, "comma-separated particle counts")
        ->delimiter(',')
        ->required();
    bench_cmd->add_option("--seed", bench_seed, "RNG seed")->capture_default_str();
    bench_cmd->add_option("--out", bench_out, "CSV output path (default: standard output)");
    bench_cmd->add_flag("--parallel", bench_parallel, "evaluate updates on all hardware threads");

    std::size_t verify_n = 256;
    std::uint64_t verify_seed = 0;
    auto* verify_cmd =
        app.add_subcommand("verify", "check the cell-list velocity update against brute force");
    verify_cmd->add_option("--n", verify_n, "particle count")->capture_default_str();
    verify_cmd->add_option("--seed", verify_seed, "RNG seed")->capture_default_str();

    int status = 0;
    md_cmd->callback([&] { run_md(md_flags); });
    bench_cmd->callback(
        [&] { run_bench(bench_mode, bench_n_list, bench_seed, bench_out, bench_parallel); });
    verify_cmd->callback([&] { status = run_verify(verify_n, verify_seed); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);  // --help and friends
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return status;
}

}  // namespace particula::cli
