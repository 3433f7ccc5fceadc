#include "sdm/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <utility>

#include <CLI11.hpp>

#include "sdm/config.hpp"
#include "sdm/experiments.hpp"
#include "sdm/recall.hpp"
#include "sdm/snapshot.hpp"
#include "sdm/version.hpp"

namespace sdm {
namespace {

namespace fs = std::filesystem;

std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::size_t default_radius(std::size_t pattern_length) {
    return static_cast<std::size_t>(std::floor(0.35 * static_cast<double>(pattern_length)));
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot read '" + path.string() + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

/// Writes every file to a temporary sibling first and renames only
/// after all writes succeeded, so a failing run leaves prior outputs
/// untouched.
void write_outputs(const fs::path& dir,
                   const std::vector<std::pair<std::string, std::string>>& files,
                   std::ostream& out) {
    fs::create_directories(dir);
    std::vector<std::pair<fs::path, fs::path>> staged;
    try {
        for (const auto& [name, body] : files) {
            fs::path tmp = dir / (name + ".tmp");
            std::ofstream stream(tmp, std::ios::binary | std::ios::trunc);
            if (!stream) {
                throw std::runtime_error("cannot write '" + tmp.string() + "'");
            }
            stream.write(body.data(), static_cast<std::streamsize>(body.size()));
            stream.flush();
            if (!stream) {
                throw std::runtime_error("write failed for '" + tmp.string() + "'");
            }
            staged.emplace_back(std::move(tmp), dir / name);
        }
    } catch (...) {
        for (const auto& [tmp, final_path] : staged) {
            std::error_code ignored;
            fs::remove(tmp, ignored);
        }
        throw;
    }
    for (const auto& [tmp, final_path] : staged) {
        fs::rename(tmp, final_path);
        out << "wrote " << final_path.string() << '\n';
    }
}

/// Splits a --set argument into key and value at the first '='.
std::pair<std::string, std::string> split_override(const std::string& entry) {
    const std::size_t eq = entry.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw std::runtime_error("expected key=value, got '" + entry + "'");
    }
    return {entry.substr(0, eq), entry.substr(eq + 1)};
}

struct RunOptions {
    std::string config_path;
    std::string out_dir;
    std::vector<std::string> sets;
    std::uint64_t seed = 0;
    bool seed_given = false;
};

int do_run(const RunOptions& opt, std::ostream& out) {
    ExperimentConfig config;
    if (!opt.config_path.empty()) {
        apply_config_text(config, read_file(opt.config_path));
    }
    for (const auto& entry : opt.sets) {
        const auto [key, value] = split_override(entry);
        apply_config_entry(config, key, value);
    }
    if (opt.seed_given) {
        config.seeds = {opt.seed};
    }
    if (const char* env = std::getenv("SDM_THREADS"); env != nullptr && *env != '\0') {
        std::size_t value = 0;
        const char* end = env + std::string_view(env).size();
        const auto [ptr, ec] = std::from_chars(env, end, value);
        if (ec != std::errc{} || ptr != end) {
            throw std::runtime_error("SDM_THREADS: invalid value '" + std::string(env) + "'");
        }
        config.threads = value;
    }
    config.validate();

    const ExperimentReport report = compare_models(config);

    std::vector<std::pair<std::string, std::string>> files;
    files.emplace_back("config.resolved", resolved_config_text(config));
    files.emplace_back("report.csv", to_csv(report));
    for (const ModelKind model : config.models) {
        for (const std::size_t q : config.qfactors) {
            const auto curve = median_curve(report, model, q);
            std::string name = "curve_";
            name += to_string(model);
            name += "_q" + std::to_string(q) + ".dat";
            files.emplace_back(std::move(name), curve_file_text(curve));
        }
    }
    write_outputs(opt.out_dir, files, out);
    return 0;
}

struct StoreOptions {
    std::string snapshot_path;
    bool make_new = false;
    std::vector<std::string> sets;
    std::uint64_t seed = 0;
    std::size_t radius = 0;
    bool radius_given = false;
    std::string pattern_literal;
};

int do_store(const StoreOptions& opt, std::ostream& out) {
    std::optional<std::size_t> opt_n;
    std::optional<ModelKind> opt_model;
    std::optional<double> opt_m;
    std::optional<std::size_t> opt_static;
    for (const auto& entry : opt.sets) {
        const auto [key, value] = split_override(entry);
        if (key == "n") {
            std::size_t v = 0;
            const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
            if (ec != std::errc{} || ptr != value.data() + value.size()) {
                throw std::runtime_error("n: invalid integer '" + value + "'");
            }
            opt_n = v;
        } else if (key == "model") {
            opt_model = parse_model_kind(value);
        } else if (key == "m") {
            char* end = nullptr;
            const double v = std::strtod(value.c_str(), &end);
            if (end != value.c_str() + value.size() || value.empty()) {
                throw std::runtime_error("m: invalid number '" + value + "'");
            }
            opt_m = v;
        } else if (key == "static_locations") {
            std::size_t v = 0;
            const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
            if (ec != std::errc{} || ptr != value.data() + value.size()) {
                throw std::runtime_error("static_locations: invalid integer '" + value + "'");
            }
            opt_static = v;
        } else {
            throw std::runtime_error(key + ": unknown store option");
        }
    }

    RandomSource rng(opt.seed);
    std::optional<Memory> memory;
    if (opt.make_new) {
        if (!opt_n) {
            throw std::runtime_error("n: required with --new");
        }
        if (!opt_model) {
            throw std::runtime_error("model: required with --new");
        }
        memory.emplace(*opt_model, *opt_n, opt_m.value_or(0.20));
        if (*opt_model == ModelKind::kanerva_static) {
            if (!opt_static) {
                throw std::runtime_error(
                    "static_locations: required to create a kanerva-static memory");
            }
            const auto locations = static_random_locations(*opt_n, *opt_static, rng);
            ensure_locations(*memory, locations);
        }
    } else {
        memory.emplace(load_snapshot(opt.snapshot_path));
        if (opt_model && *opt_model != memory->model()) {
            throw std::runtime_error("model: snapshot uses " +
                                     std::string(to_string(memory->model())));
        }
        if (opt_n && *opt_n != memory->pattern_length()) {
            throw std::runtime_error("n: snapshot uses n=" +
                                     std::to_string(memory->pattern_length()));
        }
        if (opt_m && *opt_m != memory->attenuation()) {
            throw std::runtime_error("m: snapshot uses m=" + format_real(memory->attenuation()));
        }
        if (opt_static) {
            throw std::runtime_error("static_locations: only valid with --new");
        }
    }

    const BitPattern pattern = parse_pattern(opt.pattern_literal);
    if (pattern.length() != memory->pattern_length()) {
        throw std::runtime_error("pattern length " + std::to_string(pattern.length()) +
                                 " does not match snapshot n=" +
                                 std::to_string(memory->pattern_length()));
    }
    const std::size_t radius =
        opt.radius_given ? opt.radius : default_radius(memory->pattern_length());

    switch (memory->model()) {
        case ModelKind::kanerva_static:
            store_kanerva(*memory, pattern, radius);
            break;
        case ModelKind::kanerva_dynamic: {
            const auto schedule = dynamic_schedule(memory->model(), memory->pattern_length());
            ensure_locations(*memory, generate_locations(pattern, schedule, rng));
            store_kanerva(*memory, pattern, radius);
            break;
        }
        case ModelKind::signal_decay: {
            const auto schedule = dynamic_schedule(memory->model(), memory->pattern_length());
            ensure_locations(*memory, generate_locations(pattern, schedule, rng));
            store_signal_decay(*memory, pattern);
            break;
        }
    }
    save_snapshot(*memory, opt.snapshot_path);
    out << "locations " << memory->location_count() << '\n';
    return 0;
}

struct RecallOptions {
    std::string snapshot_path;
    std::string cue_literal;
    std::size_t radius = 0;
    bool radius_given = false;
    std::size_t max_iters = 10;
};

int do_recall(const RecallOptions& opt, std::ostream& out) {
    const Memory memory = load_snapshot(opt.snapshot_path);
    const BitPattern cue = parse_pattern(opt.cue_literal);
    if (cue.length() != memory.pattern_length()) {
        throw std::runtime_error("cue length " + std::to_string(cue.length()) +
                                 " does not match snapshot n=" +
                                 std::to_string(memory.pattern_length()));
    }
    const std::size_t radius =
        opt.radius_given ? opt.radius : default_radius(memory.pattern_length());
    const RecallResult result = recall_iterated(memory, cue, radius, opt.max_iters);
    out << "pattern " << to_binary_string(result.pattern) << '\n';
    out << "iterations " << result.iterations << '\n';
    out << "converged " << (result.converged ? "true" : "false") << '\n';
    return result.converged ? 0 : 2;
}

int do_inspect(const std::string& snapshot_path, std::ostream& out) {
    const Memory memory = load_snapshot(snapshot_path);
    out << "model " << to_string(memory.model()) << '\n';
    out << "n " << memory.pattern_length() << '\n';
    out << "m " << format_real(memory.attenuation()) << '\n';
    out << "locations " << memory.location_count() << '\n';
    return 0;
}

}  // namespace

int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"sparse distributed memory benchmark"};
    app.name("sdm");
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    RunOptions run_opt;
    CLI::App* run = app.add_subcommand("run", "run the experiment sweep");
    run->add_option("--config", run_opt.config_path, "config file (key=value lines)");
    run->add_option("--out", run_opt.out_dir, "output directory")->required();
    run->add_option("--set", run_opt.sets, "config override key=value (repeatable)");
    CLI::Option* run_seed = run->add_option("--seed", run_opt.seed, "use a single seed");

    StoreOptions store_opt;
    CLI::App* store = app.add_subcommand("store", "store a pattern into a snapshot");
    store->add_option("--snapshot", store_opt.snapshot_path, "snapshot path")->required();
    store->add_flag("--new", store_opt.make_new, "create the snapshot (needs n and model)");
    store->add_option("--set", store_opt.sets,
                      "memory option key=value: n, model, m, static_locations");
    store->add_option("--seed", store_opt.seed, "allocation seed (default 0)");
    CLI::Option* store_radius = store->add_option("--radius", store_opt.radius,
                                                  "store radius (default 35% of n)");
    store->add_option("pattern", store_opt.pattern_literal, "pattern literal")->required();

    RecallOptions recall_opt;
    CLI::App* recall = app.add_subcommand("recall", "iterated recall from a snapshot");
    recall->add_option("--snapshot", recall_opt.snapshot_path, "snapshot path")->required();
    recall->add_option("--cue", recall_opt.cue_literal, "cue pattern literal")->required();
    CLI::Option* recall_radius = recall->add_option("--radius", recall_opt.radius,
                                                    "read radius (default 35% of n)");
    recall->add_option("--max-iters", recall_opt.max_iters, "iteration bound (default 10)");

    std::string inspect_snapshot;
    CLI::App* inspect = app.add_subcommand("inspect", "print snapshot header fields");
    inspect->add_option("--snapshot", inspect_snapshot, "snapshot path")->required();

    std::reverse(args.begin(), args.end());
    try {
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }
    run_opt.seed_given = run_seed->count() > 0;
    store_opt.radius_given = store_radius->count() > 0;
    recall_opt.radius_given = recall_radius->count() > 0;

    try {
        if (run->parsed()) {
            return do_run(run_opt, out);
        }
        if (store->parsed()) {
            return do_store(store_opt, out);
        }
        if (recall->parsed()) {
            return do_recall(recall_opt, out);
        }
        if (inspect->parsed()) {
            return do_inspect(inspect_snapshot, out);
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    err << "error: no command\n";
    return 1;
}

}  // namespace sdm
