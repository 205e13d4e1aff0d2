// Experiment driver. One experiment per invocation:
//
//   fzk <kind> --config <file> [--seed S] [--out DIR] [--threads K]
//   fzk describe <kind>
//
// Exit codes: 0 success, 2 configuration/schema violation, 3 numerical or runtime
// failure inside a module, 4 I/O failure. Errors are echoed as one JSON object per
// line on stderr.
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <json.hpp>

#include "fzk/experiments.hpp"
#include "fzk/parallel.hpp"

namespace {

const char* usage =
    "usage: fzk <kind> --config <file> [--seed S] [--out DIR] [--threads K]\n"
    "       fzk describe <kind>\n"
    "kinds: Simulate VerifyBilinear VerifyShorttime VerifyKernel\n"
    "       VerifyLinearStrichartz Transversality ResonanceScan BonaSmith\n";

void print_error(const std::string& msg, int code) {
    nlohmann::json e;
    e["error"] = msg;
    e["exit_code"] = code;
    std::cerr << e.dump() << "\n";
}

std::uint64_t parse_u64_flag(const std::string& flag, const std::string& val) {
    try {
        std::size_t pos = 0;
        std::uint64_t v = std::stoull(val, &pos);
        if (pos != val.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        throw fzk::ConfigError("flag " + flag + ": not an unsigned integer: " + val);
    }
}

int run(int argc, char** argv) {
    if (argc < 2) throw fzk::ConfigError("missing experiment kind");
    std::string first = argv[1];

    if (first == "describe") {
        if (argc != 3) throw fzk::ConfigError("describe takes exactly one experiment kind");
        std::cout << fzk::describe(fzk::kind_from_name(argv[2]));
        return 0;
    }

    fzk::ExperimentSpec spec;
    spec.kind = fzk::kind_from_name(first);

    std::optional<std::string> config_path, out_cli;
    std::optional<std::uint64_t> seed_cli;
    long threads = 1;
    for (int i = 2; i < argc; i += 2) {
        std::string flag = argv[i];
        if (i + 1 >= argc) throw fzk::ConfigError("flag " + flag + " needs a value");
        std::string val = argv[i + 1];
        if (flag == "--config") config_path = val;
        else if (flag == "--seed") seed_cli = parse_u64_flag(flag, val);
        else if (flag == "--out") out_cli = val;
        else if (flag == "--threads")
            threads = static_cast<long>(parse_u64_flag(flag, val));
        else throw fzk::ConfigError("unknown flag " + flag);
    }
    if (!config_path) throw fzk::ConfigError("missing --config <file>");
    if (threads < 1) throw fzk::ConfigError("--threads must be >= 1");

    fzk::Config cfg = fzk::Config::parse_file(*config_path);

    spec.seed = cfg.get_u64("seed", 1);
    if (seed_cli) spec.seed = *seed_cli;
    cfg.note("seed", std::to_string(spec.seed));

    std::string out =
        cfg.get_string("out_dir", std::string("fzk-out/") + fzk::kind_name(spec.kind));
    if (const char* env = std::getenv("FZK_OUT")) out = env;
    if (out_cli) out = *out_cli;
    cfg.note("out_dir", out);
    spec.out_dir = out;

    fzk::set_thread_count(static_cast<int>(threads));
    spec.config = cfg;

    nlohmann::json manifest = fzk::run_experiment(spec);
    std::cout << manifest["spec_echo"].dump(2) << "\n"
              << "wrote "
              << (std::filesystem::path(out) / "manifest.json").generic_string() << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const fzk::ConfigError& e) {
        print_error(e.what(), 2);
        std::cerr << usage;
        return 2;
    } catch (const fzk::IoError& e) {
        print_error(e.what(), 4);
        return 4;
    } catch (const std::filesystem::filesystem_error& e) {
        print_error(e.what(), 4);
        return 4;
    } catch (const std::invalid_argument& e) {
        print_error(e.what(), 2);
        return 2;
    } catch (const std::exception& e) {
        print_error(e.what(), 3);
        return 3;
    }
}
