#include <CLI11.hpp>

#include "commands.hpp"

// mts1 — generate telemetry corpora, benchmark the six encodings, run the
// bandwidth cost model, measure byte entropy and simulate lossy
// store-and-forward delivery. Every run is deterministic for its full flag
// set; commands that write files also write a replayable manifest.

int main(int argc, char** argv) {
    CLI::App app{"MTS-1 telemetry codec benchmark toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", mts1cli::kToolVersion);

    mts1cli::GenerateArgs gen_args;
    auto* gen = app.add_subcommand("generate", "Write a deterministic synthetic JSONL corpus");
    gen->add_option("--n", gen_args.n, "Number of records")
        ->required()
        ->check(CLI::PositiveNumber);
    gen->add_option("--seed", gen_args.seed, "Generator seed")
        ->envname("MTS1_SEED")
        ->default_val(42);
    gen->add_option("--interval", gen_args.interval_s, "Sampling interval, seconds")
        ->default_val(30.0)
        ->check(CLI::PositiveNumber);
    gen->add_option("--jitter-ms", gen_args.jitter_ms, "Timestamp jitter stddev, ms")
        ->default_val(150.0);
    gen->add_option("--host", gen_args.host, "Host identifier")->default_val("host-0001");
    gen->add_option("--out", gen_args.out, "Output corpus path")->required();

    mts1cli::BenchArgs bench_args;
    auto* bench = app.add_subcommand("bench", "Measure encoded sizes across formats");
    bench->add_option("--corpus", bench_args.corpora, "JSONL corpus path (repeatable)")
        ->required()
        ->expected(-1);
    bench
        ->add_option("--formats", bench_args.formats,
                     "Formats: json jsonl cbor msgpack mts1 mts1+lz4")
        ->delimiter(',')
        ->default_val(std::vector<std::string>{"json", "jsonl", "cbor", "msgpack", "mts1",
                                               "mts1+lz4"});
    bench->add_option("--epsilon-profile", bench_args.epsilon_profile,
                      "default | zero | coarse | field=eps,...");
    bench->add_option("--snapshot-interval", bench_args.snapshot_interval,
                      "FULL frame interval for the mts1 encodings")
        ->check(CLI::PositiveNumber);
    bench->add_flag("--no-reduction", bench_args.no_reduction,
                    "Skip the reduction-vs-json column");
    bench->add_option("--out", bench_args.out, "Report path prefix");

    mts1cli::CostArgs cost_args;
    auto* cost = app.add_subcommand("cost", "Project fleet bandwidth and savings");
    cost->add_option("--hosts", cost_args.hosts, "Fleet size")->required();
    cost->add_option("--interval", cost_args.interval_s, "Transmission interval, seconds")
        ->default_val(60.0)
        ->check(CLI::PositiveNumber);
    cost->add_option("--days", cost_args.days, "Projection length, days")->default_val(30.0);
    cost->add_option("--b-json", cost_args.b_json, "JSON bytes per payload")->required();
    cost->add_option("--b-fmt", cost_args.b_fmt, "Compared-format bytes per payload")->required();
    cost->add_option("--price-per-gb", cost_args.price_per_gb, "Price per decimal GB")
        ->default_val(5.0);
    cost->add_option("--out", cost_args.out, "Report path prefix");

    mts1cli::EntropyArgs entropy_args;
    auto* entropy = app.add_subcommand("entropy", "Byte-histogram Shannon entropy of files");
    entropy->add_option("files", entropy_args.files, "Input files")->required()->expected(-1);
    entropy->add_option("--out", entropy_args.out, "Report path prefix");

    mts1cli::SimulateArgs sim_args;
    auto* sim = app.add_subcommand("simulate", "Run the lossy forwarding-graph transport");
    sim->add_option("--graph", sim_args.graph, "Edge list file: 'src dst loss_prob'")->required();
    sim->add_option("--corpus", sim_args.corpus_bindings, "node=corpus.jsonl (repeatable)")
        ->required()
        ->expected(-1);
    sim->add_option("--loss-seed", sim_args.loss_seed, "Loss stream seed")
        ->envname("MTS1_SEED")
        ->default_val(42);
    sim->add_option("--snapshot-interval", sim_args.snapshot_interval, "FULL frame interval")
        ->check(CLI::PositiveNumber);
    sim->add_option("--epsilon-profile", sim_args.epsilon_profile,
                    "default | zero | coarse | field=eps,...");
    sim->add_option("--out", sim_args.out, "Report path prefix");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // CLI11's own exit codes are remapped onto the documented contract
        int rc = app.exit(e);
        return rc == 0 ? 0 : mts1cli::kExitUsage;
    }

    if (gen->parsed())
        return mts1cli::cmd_generate(gen_args);
    if (bench->parsed())
        return mts1cli::cmd_bench(bench_args);
    if (cost->parsed())
        return mts1cli::cmd_cost(cost_args);
    if (entropy->parsed())
        return mts1cli::cmd_entropy(entropy_args);
    if (sim->parsed())
        return mts1cli::cmd_simulate(sim_args);
    return mts1cli::kExitUsage;
}
