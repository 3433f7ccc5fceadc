#include "sdm/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <unordered_set>

#include "sdm/recall.hpp"
#include "sdm/sampling.hpp"
#include "sdm/version.hpp"

namespace sdm {
namespace {

// Labels for per-cell random streams. Target and cue streams take no
// model label so every model in a run sees the same targets and cues.
constexpr std::uint64_t kStreamTarget = 1;
constexpr std::uint64_t kStreamTrain = 2;
constexpr std::uint64_t kStreamCue = 3;

/// Stable per-model stream label; part of the determinism contract.
std::uint64_t model_label(ModelKind model) {
    switch (model) {
        case ModelKind::kanerva_static: return 1;
        case ModelKind::kanerva_dynamic: return 2;
        case ModelKind::signal_decay: return 3;
    }
    throw std::invalid_argument("model_label: unknown model kind");
}

template <typename T>
bool has_duplicates(std::vector<T> values) {
    std::sort(values.begin(), values.end());
    return std::adjacent_find(values.begin(), values.end()) != values.end();
}

std::string format_fraction(double f) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", f);
    return buf;
}

std::string format_general(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

}  // namespace

std::vector<double> ExperimentConfig::default_sweep_fractions() {
    std::vector<double> out;
    out.reserve(19);
    for (int i = 1; i <= 19; ++i) {
        out.push_back(static_cast<double>(i) / 20.0);
    }
    return out;
}

std::size_t ExperimentConfig::radius() const {
    return static_cast<std::size_t>(
        std::floor(radius_fraction * static_cast<double>(pattern_size)));
}

std::size_t ExperimentConfig::training_exemplar_count() const {
    std::size_t total = 0;
    for (const auto& tier : training_tiers) {
        total += tier.count;
    }
    return total;
}

std::size_t ExperimentConfig::resolved_static_locations() const {
    if (static_locations != 0) {
        return static_locations;
    }
    return dynamic_schedule(ModelKind::kanerva_dynamic, pattern_size).total_count() *
           training_exemplar_count();
}

void ExperimentConfig::validate() const {
    if (pattern_size == 0) {
        throw std::invalid_argument("pattern_size: must be positive");
    }
    if (!(radius_fraction >= 0.0 && radius_fraction <= 1.0)) {
        throw std::invalid_argument("radius_fraction: must lie in [0, 1]");
    }
    if (qfactors.empty()) {
        throw std::invalid_argument("qfactors: at least one value required");
    }
    for (const std::size_t q : qfactors) {
        if (q > pattern_size) {
            throw std::invalid_argument("qfactors: value " + std::to_string(q) +
                                        " exceeds pattern_size " + std::to_string(pattern_size));
        }
    }
    if (has_duplicates(qfactors)) {
        throw std::invalid_argument("qfactors: duplicate value");
    }
    if (training_tiers.empty()) {
        throw std::invalid_argument("training_tiers: at least one tier required");
    }
    for (const auto& tier : training_tiers) {
        if (!(tier.fraction >= 0.0 && tier.fraction <= 1.0)) {
            throw std::invalid_argument("training_tiers: fraction must lie in [0, 1]");
        }
    }
    if (training_exemplar_count() == 0) {
        throw std::invalid_argument("training_tiers: total exemplar count must be positive");
    }
    if (sweep_fractions.empty()) {
        throw std::invalid_argument("sweep_fractions: at least one value required");
    }
    for (const double f : sweep_fractions) {
        if (!(f >= 0.0 && f <= 1.0)) {
            throw std::invalid_argument("sweep_fractions: value must lie in [0, 1]");
        }
    }
    if (has_duplicates(sweep_fractions)) {
        throw std::invalid_argument("sweep_fractions: duplicate value");
    }
    if (trials_per_point == 0) {
        throw std::invalid_argument("trials_per_point: must be positive");
    }
    if (seeds.empty()) {
        throw std::invalid_argument("seeds: at least one value required");
    }
    if (has_duplicates(seeds)) {
        throw std::invalid_argument("seeds: duplicate value");
    }
    if (models.empty()) {
        throw std::invalid_argument("models: at least one model required");
    }
    if (has_duplicates(models)) {
        throw std::invalid_argument("models: duplicate model");
    }
    if (max_iters == 0) {
        throw std::invalid_argument("max_iters: must be positive");
    }
    if (!(m > 0.0 && m <= 1.0)) {
        throw std::invalid_argument("m: must lie in (0, 1]");
    }
}

std::vector<BitPattern> make_training_set(const BitPattern& target,
                                          std::span<const ScheduleTier> tiers,
                                          RandomSource& rng) {
    if (tiers.empty()) {
        throw std::invalid_argument("make_training_set: tiers must be nonempty");
    }
    std::vector<BitPattern> out;
    for (const auto& tier : tiers) {
        for (std::size_t i = 0; i < tier.count; ++i) {
            out.push_back(corrupt(target, tier.fraction, rng));
        }
    }
    return out;
}

Memory train(ModelKind model, const BitPattern& target, const ExperimentConfig& config,
             RandomSource& rng) {
    if (target.length() != config.pattern_size) {
        throw std::invalid_argument("train: target length does not match pattern_size");
    }
    const auto exemplars = make_training_set(target, config.training_tiers, rng);
    const std::size_t radius = config.radius();
    Memory memory(model, config.pattern_size, config.m);
    switch (model) {
        case ModelKind::kanerva_static: {
            const auto locations = static_random_locations(
                config.pattern_size, config.resolved_static_locations(), rng);
            ensure_locations(memory, locations);
            for (const auto& exemplar : exemplars) {
                store_kanerva(memory, exemplar, radius);
            }
            break;
        }
        case ModelKind::kanerva_dynamic: {
            const auto schedule = dynamic_schedule(model, config.pattern_size);
            for (const auto& exemplar : exemplars) {
                ensure_locations(memory, generate_locations(exemplar, schedule, rng));
                store_kanerva(memory, exemplar, radius);
            }
            break;
        }
        case ModelKind::signal_decay: {
            const auto schedule = dynamic_schedule(model, config.pattern_size);
            for (const auto& exemplar : exemplars) {
                ensure_locations(memory, generate_locations(exemplar, schedule, rng));
                store_signal_decay(memory, exemplar);
            }
            break;
        }
    }
    return memory;
}

std::vector<SweepOutcome> evaluate_sweep(const Memory& memory, const BitPattern& target,
                                         const ExperimentConfig& config, RandomSource& rng) {
    std::vector<SweepOutcome> out;
    out.reserve(config.sweep_fractions.size() * config.trials_per_point);
    const std::size_t radius = config.radius();
    for (const double fraction : config.sweep_fractions) {
        for (std::size_t trial = 0; trial < config.trials_per_point; ++trial) {
            const BitPattern cue = corrupt(target, fraction, rng);
            const RecallResult result = recall_iterated(memory, cue, radius, config.max_iters);
            out.push_back({fraction, trial, hamming(result.pattern, target), result.iterations,
                           result.converged});
        }
    }
    return out;
}

ExperimentReport compare_models(const ExperimentConfig& config) {
    config.validate();

    struct Cell {
        ModelKind model;
        std::size_t qfactor;
        std::uint64_t seed;
    };
    std::vector<Cell> cells;
    for (const ModelKind model : config.models) {
        for (const std::size_t q : config.qfactors) {
            for (const std::uint64_t seed : config.seeds) {
                cells.push_back({model, q, seed});
            }
        }
    }

    std::vector<std::vector<ReportRow>> cell_rows(cells.size());
    std::atomic<std::size_t> next_cell{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;

    const auto run_cell = [&](const Cell& cell) {
        RandomSource target_rng = derive_stream(cell.seed, {kStreamTarget, cell.qfactor});
        const BitPattern target =
            random_with_qfactor(config.pattern_size, cell.qfactor, target_rng);

        RandomSource train_rng =
            derive_stream(cell.seed, {kStreamTrain, cell.qfactor, model_label(cell.model)});
        const Memory memory = train(cell.model, target, config, train_rng);

        RandomSource cue_rng = derive_stream(cell.seed, {kStreamCue, cell.qfactor});
        const auto outcomes = evaluate_sweep(memory, target, config, cue_rng);

        std::vector<ReportRow> rows;
        rows.reserve(outcomes.size());
        for (const auto& o : outcomes) {
            rows.push_back({cell.model, cell.qfactor, o.sweep_fraction, cell.seed, o.trial,
                            o.bit_errors, o.iterations, o.converged});
        }
        return rows;
    };

    const auto worker = [&] {
        for (;;) {
            const std::size_t i = next_cell.fetch_add(1);
            if (i >= cells.size()) {
                return;
            }
            try {
                cell_rows[i] = run_cell(cells[i]);
            } catch (...) {
                const std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) {
                    first_error = std::current_exception();
                }
            }
        }
    };

    std::size_t n_threads = config.threads;
    if (n_threads == 0) {
        n_threads = std::max<std::size_t>(1, std::thread::hardware_concurrency());
    }
    n_threads = std::min(n_threads, cells.size());
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(n_threads);
        for (std::size_t t = 0; t < n_threads; ++t) {
            pool.emplace_back(worker);
        }
        for (auto& t : pool) {
            t.join();
        }
    }
    if (first_error) {
        std::rethrow_exception(first_error);
    }

    ExperimentReport report;
    report.config = config;
    report.version = std::string(kVersion);
    for (const auto& rows : cell_rows) {
        report.rows.insert(report.rows.end(), rows.begin(), rows.end());
    }
    // Canonical order: the CSV key columns, ascending. Model sorts by
    // its serialized name, matching how the column is printed.
    std::sort(report.rows.begin(), report.rows.end(), [](const ReportRow& a, const ReportRow& b) {
        const auto key = [](const ReportRow& r) {
            return std::make_tuple(to_string(r.model), r.qfactor, r.sweep_fraction, r.seed,
                                   r.trial);
        };
        return key(a) < key(b);
    });
    return report;
}

std::string to_csv(const ExperimentReport& report) {
    std::string out = "model,qfactor,sweep_fraction,seed,trial,bit_errors,iterations,converged\n";
    for (const auto& row : report.rows) {
        out += to_string(row.model);
        out += ',' + std::to_string(row.qfactor);
        out += ',' + format_fraction(row.sweep_fraction);
        out += ',' + std::to_string(row.seed);
        out += ',' + std::to_string(row.trial);
        out += ',' + std::to_string(row.bit_errors);
        out += ',' + std::to_string(row.iterations);
        out += row.converged ? ",true\n" : ",false\n";
    }
    return out;
}

double median_of(std::vector<double> values) {
    if (values.empty()) {
        throw std::invalid_argument("median_of: no values");
    }
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    if (values.size() % 2 == 1) {
        return values[mid];
    }
    return 0.5 * (values[mid - 1] + values[mid]);
}

std::vector<CurvePoint> median_curve(const ExperimentReport& report, ModelKind model,
                                     std::size_t qfactor) {
    std::vector<double> fractions = report.config.sweep_fractions;
    std::sort(fractions.begin(), fractions.end());
    std::vector<CurvePoint> curve;
    curve.reserve(fractions.size());
    for (const double fraction : fractions) {
        std::vector<double> errors;
        for (const auto& row : report.rows) {
            if (row.model == model && row.qfactor == qfactor &&
                row.sweep_fraction == fraction) {
                errors.push_back(static_cast<double>(row.bit_errors));
            }
        }
        curve.push_back({fraction, median_of(std::move(errors))});
    }
    return curve;
}

std::string curve_file_text(std::span<const CurvePoint> curve) {
    std::string out = "# sweep_fraction median_bit_errors\n";
    for (const auto& point : curve) {
        out += format_fraction(point.sweep_fraction);
        out += ' ';
        out += format_general(point.median_bit_errors);
        out += '\n';
    }
    return out;
}

}  // namespace sdm
