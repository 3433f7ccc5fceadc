#pragma once

// The benchmark protocol: train one memory per (model, qfactor, seed)
// cell on corrupted exemplars of a single target, then sweep cue
// corruption levels and record bit errors of iterated recall.
//
// Everything is a pure function of the config: each cell derives its
// own labeled random streams, so results are independent of evaluation
// order and thread count, and target/cue streams ignore the model so
// the models in one run face identical inputs.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "sdm/allocation.hpp"
#include "sdm/bit_pattern.hpp"
#include "sdm/memory.hpp"
#include "sdm/random.hpp"

namespace sdm {

struct ExperimentConfig {
    std::size_t pattern_size = 256;
    double radius_fraction = 0.35;
    std::vector<std::size_t> qfactors = {32, 64, 96, 128};
    std::vector<ScheduleTier> training_tiers = {{5, 0.15}, {5, 0.20}, {5, 0.25}};
    std::vector<double> sweep_fractions = default_sweep_fractions();
    std::size_t trials_per_point = 5;
    std::vector<std::uint64_t> seeds = {1, 2, 3, 4, 5};
    std::vector<ModelKind> models = {ModelKind::kanerva_static, ModelKind::signal_decay};
    std::size_t max_iters = 10;
    double m = 0.20;
    /// Location count for the static model; 0 means the kanerva-dynamic
    /// per-pattern total times the exemplar count, so the static
    /// baseline gets the same capacity the dynamic model would allocate.
    std::size_t static_locations = 0;
    /// Parallel cells; 0 means hardware concurrency. Not a config-file
    /// key — results never depend on it.
    std::size_t threads = 0;

    /// 0.05, 0.10, ..., 0.95.
    static std::vector<double> default_sweep_fractions();

    /// Retrieval radius: floor(radius_fraction * pattern_size).
    std::size_t radius() const;

    std::size_t training_exemplar_count() const;
    std::size_t resolved_static_locations() const;

    /// Throws std::invalid_argument with a message that begins with the
    /// offending field's config key.
    void validate() const;
};

struct ReportRow {
    ModelKind model = ModelKind::kanerva_static;
    std::size_t qfactor = 0;
    double sweep_fraction = 0.0;
    std::uint64_t seed = 0;
    std::size_t trial = 0;
    std::size_t bit_errors = 0;
    std::size_t iterations = 0;
    bool converged = false;
};

struct ExperimentReport {
    std::vector<ReportRow> rows;   // canonical order: all key columns ascending
    ExperimentConfig config;
    std::string version;
};

/// Per-cue outcome within one cell, before cell identity is attached.
struct SweepOutcome {
    double sweep_fraction = 0.0;
    std::size_t trial = 0;
    std::size_t bit_errors = 0;
    std::size_t iterations = 0;
    bool converged = false;
};

/// Training exemplars: for each tier, `count` fresh corrupt copies of
/// the target at the tier's fraction, in tier order.
std::vector<BitPattern> make_training_set(const BitPattern& target,
                                          std::span<const ScheduleTier> tiers,
                                          RandomSource& rng);

/// Trains one memory of the given model on a training set drawn from
/// `rng` (exemplars first, then location allocation).
Memory train(ModelKind model, const BitPattern& target, const ExperimentConfig& config,
             RandomSource& rng);

/// For each sweep fraction and trial: corrupt the target, run iterated
/// recall, record bit errors against the target.
std::vector<SweepOutcome> evaluate_sweep(const Memory& memory, const BitPattern& target,
                                         const ExperimentConfig& config, RandomSource& rng);

/// Runs every (model, qfactor, seed) cell, in parallel when allowed.
ExperimentReport compare_models(const ExperimentConfig& config);

/// CSV per the report contract: header line, rows sorted ascending by
/// model name, qfactor, sweep_fraction, seed, trial; fractions with two
/// decimals. Byte-identical across runs of the same config.
std::string to_csv(const ExperimentReport& report);

/// Median; values are consumed. Even counts average the middle pair.
double median_of(std::vector<double> values);

struct CurvePoint {
    double sweep_fraction = 0.0;
    double median_bit_errors = 0.0;
};

/// Median bit-error curve of one (model, qfactor) over all its rows at
/// each sweep fraction, ascending by fraction.
std::vector<CurvePoint> median_curve(const ExperimentReport& report, ModelKind model,
                                     std::size_t qfactor);

/// Plot-data text: comment header plus "fraction median" lines.
std::string curve_file_text(std::span<const CurvePoint> curve);

}  // namespace sdm
