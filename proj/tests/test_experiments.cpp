#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "sdm/experiments.hpp"
#include "sdm/recall.hpp"
#include "sdm/sampling.hpp"

using namespace sdm;
namespace {

std::string validation_message(const ExperimentConfig& config) {
    try {
        config.validate();
    } catch (const std::invalid_argument& e) {
        return e.what();
    }
    return "";
}

std::vector<std::uint64_t> seed_range(std::uint64_t count) {
    std::vector<std::uint64_t> seeds(count);
    for (std::uint64_t i = 0; i < count; ++i) {
        seeds[i] = i + 1;
    }
    return seeds;
}

/// Median bit errors among rows matching a model, fraction and,
/// optionally, a qfactor.
double median_errors(const ExperimentReport& report, ModelKind model, double fraction,
                     std::size_t qfactor = 0) {
    std::vector<double> values;
    for (const auto& row : report.rows) {
        if (row.model == model && row.sweep_fraction == fraction &&
            (qfactor == 0 || row.qfactor == qfactor)) {
            values.push_back(static_cast<double>(row.bit_errors));
        }
    }
    return median_of(std::move(values));
}

}  // namespace

TEST_CASE("defaults resolve the documented protocol constants") {
    const ExperimentConfig config;
    CHECK(config.radius() == 89);
    CHECK(config.training_exemplar_count() == 15);
    CHECK(config.resolved_static_locations() == 570);
    CHECK(config.sweep_fractions.size() == 19);
    CHECK(config.sweep_fractions.front() == 0.05);
    CHECK(config.sweep_fractions.back() == 0.95);
    CHECK_NOTHROW(config.validate());

    ExperimentConfig pinned = config;
    pinned.static_locations = 100;
    CHECK(pinned.resolved_static_locations() == 100);
}

TEST_CASE("validation names the offending key") {
    ExperimentConfig config;
    config.qfactors = {32, 300};
    CHECK(validation_message(config).starts_with("qfactors"));

    config = ExperimentConfig{};
    config.qfactors = {32, 32};
    CHECK(validation_message(config).starts_with("qfactors"));

    config = ExperimentConfig{};
    config.m = 1.5;
    CHECK(validation_message(config).starts_with("m:"));

    config = ExperimentConfig{};
    config.models = {};
    CHECK(validation_message(config).starts_with("models"));

    config = ExperimentConfig{};
    config.seeds = {4, 4};
    CHECK(validation_message(config).starts_with("seeds"));

    config = ExperimentConfig{};
    config.sweep_fractions = {0.5, 1.2};
    CHECK(validation_message(config).starts_with("sweep_fractions"));

    config = ExperimentConfig{};
    config.trials_per_point = 0;
    CHECK(validation_message(config).starts_with("trials_per_point"));

    config = ExperimentConfig{};
    config.training_tiers = {{0, 0.15}};
    CHECK(validation_message(config).starts_with("training_tiers"));

    config = ExperimentConfig{};
    config.radius_fraction = -0.5;
    CHECK(validation_message(config).starts_with("radius_fraction"));
}

TEST_CASE("training sets hit the nominal tier distances") {
    RandomSource rng(1);
    const BitPattern target = random_with_qfactor(256, 96, rng);
    const ExperimentConfig config;
    const auto exemplars = make_training_set(target, config.training_tiers, rng);
    REQUIRE(exemplars.size() == 15);
    std::map<std::size_t, int> distance_counts;
    for (const auto& e : exemplars) {
        ++distance_counts[hamming(target, e)];
    }
    CHECK(distance_counts == std::map<std::size_t, int>{{38, 5}, {51, 5}, {64, 5}});

    const std::vector<ScheduleTier> identity = {{1, 0.0}};
    const auto self = make_training_set(target, identity, rng);
    REQUIRE(self.size() == 1);
    CHECK(self[0] == target);

    RandomSource a(6);
    RandomSource b(6);
    CHECK(make_training_set(target, config.training_tiers, a) ==
          make_training_set(target, config.training_tiers, b));
}

TEST_CASE("training allocates per model policy") {
    ExperimentConfig config;
    RandomSource rng(33);
    const BitPattern target = random_with_qfactor(256, 96, rng);

    RandomSource r1(101);
    const Memory sd = train(ModelKind::signal_decay, target, config, r1);
    CHECK(sd.model() == ModelKind::signal_decay);
    CHECK(sd.location_count() <= 15 * 42);
    CHECK(sd.location_count() > 0);

    RandomSource r2(101);
    const Memory kd = train(ModelKind::kanerva_dynamic, target, config, r2);
    CHECK(kd.location_count() <= 15 * 38);

    RandomSource r3(101);
    const Memory ks = train(ModelKind::kanerva_static, target, config, r3);
    CHECK(ks.location_count() == 570);

    CHECK_THROWS_AS(train(ModelKind::signal_decay, BitPattern::zeros(8), config, r3),
                    std::invalid_argument);
}

TEST_CASE("sweep evaluation emits one outcome per fraction and trial") {
    ExperimentConfig config;
    config.sweep_fractions = {0.05, 0.30};
    config.trials_per_point = 3;
    RandomSource rng(7);
    const BitPattern target = random_with_qfactor(256, 64, rng);
    RandomSource train_rng(8);
    const Memory mem = train(ModelKind::signal_decay, target, config, train_rng);
    RandomSource cue_rng(9);
    const auto outcomes = evaluate_sweep(mem, target, config, cue_rng);
    REQUIRE(outcomes.size() == 6);
    CHECK(outcomes[0].sweep_fraction == 0.05);
    CHECK(outcomes[0].trial == 0);
    CHECK(outcomes[2].trial == 2);
    CHECK(outcomes[3].sweep_fraction == 0.30);
    for (const auto& o : outcomes) {
        CHECK(o.bit_errors <= 256);
        CHECK(o.iterations >= 1);
        CHECK(o.iterations <= config.max_iters);
    }
}

TEST_CASE("report cardinality follows the config product") {
    ExperimentConfig config;
    config.models = {ModelKind::signal_decay};
    config.qfactors = {64};
    config.seeds = {1};
    config.sweep_fractions = {0.10};
    config.trials_per_point = 1;
    const ExperimentReport single = compare_models(config);
    CHECK(single.rows.size() == 1);
    CHECK(single.version == "0.1.0");

    config.models = {ModelKind::kanerva_static, ModelKind::signal_decay};
    config.qfactors = {32, 128};
    config.seeds = {1, 2};
    config.sweep_fractions = {0.05, 0.30, 0.65};
    config.trials_per_point = 2;
    const ExperimentReport report = compare_models(config);
    CHECK(report.rows.size() == 2 * 2 * 2 * 3 * 2);
}

TEST_CASE("reports are deterministic and thread-count independent") {
    ExperimentConfig config;
    config.qfactors = {32, 128};
    config.seeds = {1, 2};
    config.sweep_fractions = {0.05, 0.65};
    config.trials_per_point = 2;

    config.threads = 1;
    const std::string serial = to_csv(compare_models(config));
    config.threads = 8;
    const std::string parallel = to_csv(compare_models(config));
    CHECK(serial == parallel);
    config.threads = 0;
    CHECK(to_csv(compare_models(config)) == serial);
}

TEST_CASE("csv is sorted by its key columns with fixed formatting") {
    ExperimentConfig config;
    config.models = {ModelKind::signal_decay, ModelKind::kanerva_static};
    config.qfactors = {128, 32};
    config.seeds = {2, 1};
    config.sweep_fractions = {0.30, 0.05};
    config.trials_per_point = 2;
    const ExperimentReport report = compare_models(config);
    const std::string csv = to_csv(report);
    CHECK(csv.starts_with("model,qfactor,sweep_fraction,seed,trial,bit_errors,iterations,converged\n"));
    // Model names sort ascending, so the static rows come first.
    CHECK(csv.find("kanerva-static,32,0.05,1,0,") != std::string::npos);
    const std::size_t first_static = csv.find("kanerva-static");
    const std::size_t first_decay = csv.find("signal-decay");
    CHECK(first_static < first_decay);

    const auto key = [](const ReportRow& r) {
        return std::make_tuple(std::string(to_string(r.model)), r.qfactor, r.sweep_fraction,
                               r.seed, r.trial);
    };
    CHECK(std::is_sorted(report.rows.begin(), report.rows.end(),
                         [&](const ReportRow& a, const ReportRow& b) { return key(a) < key(b); }));
    for (const auto& row : report.rows) {
        CHECK(row.bit_errors <= config.pattern_size);
    }
}

TEST_CASE("median handles odd, even and empty inputs") {
    CHECK(median_of({3.0}) == 3.0);
    CHECK(median_of({5.0, 1.0, 3.0}) == 3.0);
    CHECK(median_of({4.0, 1.0, 3.0, 2.0}) == 2.5);
    CHECK_THROWS_AS(median_of({}), std::invalid_argument);
}

TEST_CASE("median curves cover every fraction in ascending order") {
    ExperimentConfig config;
    config.models = {ModelKind::signal_decay};
    config.qfactors = {64};
    config.seeds = {1, 2, 3};
    config.sweep_fractions = {0.30, 0.05, 0.65};
    config.trials_per_point = 2;
    const ExperimentReport report = compare_models(config);
    const auto curve = median_curve(report, ModelKind::signal_decay, 64);
    REQUIRE(curve.size() == 3);
    CHECK(curve[0].sweep_fraction == 0.05);
    CHECK(curve[1].sweep_fraction == 0.30);
    CHECK(curve[2].sweep_fraction == 0.65);

    const std::string text = curve_file_text(curve);
    CHECK(text.starts_with("# sweep_fraction median_bit_errors\n"));
    CHECK(std::count(text.begin(), text.end(), '\n') == 4);
    CHECK(text.find("0.05 ") != std::string::npos);
}

TEST_CASE("bit errors are recomputable from the recall trajectory") {
    ExperimentConfig config;
    RandomSource target_rng(5);
    const BitPattern target = random_with_qfactor(256, 96, target_rng);
    RandomSource train_rng(6);
    const Memory mem = train(ModelKind::signal_decay, target, config, train_rng);
    RandomSource cue_rng(7);
    for (const double fraction : {0.05, 0.30, 0.80}) {
        const BitPattern cue = corrupt(target, fraction, cue_rng);
        const RecallResult result =
            recall_iterated(mem, cue, config.radius(), config.max_iters, true);
        REQUIRE(result.trajectory.has_value());
        CHECK(result.trajectory->back() == result.pattern);
        CHECK(hamming(result.trajectory->back(), target) == hamming(result.pattern, target));
    }
}

TEST_CASE("median bit errors do not improve as corruption rises") {
    ExperimentConfig config;
    config.qfactors = {64, 128};
    config.seeds = seed_range(20);
    config.models = {ModelKind::kanerva_static, ModelKind::kanerva_dynamic,
                     ModelKind::signal_decay};
    config.sweep_fractions = {0.05, 0.10, 0.15, 0.20, 0.25, 0.30, 0.35, 0.40, 0.45};
    const ExperimentReport report = compare_models(config);
    for (const ModelKind model : config.models) {
        double previous = -1.0;
        for (const double fraction : config.sweep_fractions) {
            const double current = median_errors(report, model, fraction);
            CHECK(current >= previous);
            previous = current;
        }
    }
}

TEST_CASE("signal decay recognizes mirrored corruption levels equally well") {
    ExperimentConfig config;
    config.models = {ModelKind::signal_decay};
    config.qfactors = {32, 96};
    config.seeds = seed_range(20);
    config.sweep_fractions = {0.05, 0.10, 0.15, 0.85, 0.90, 0.95};
    const ExperimentReport report = compare_models(config);
    const std::pair<double, double> mirrored[] = {{0.05, 0.95}, {0.10, 0.90}, {0.15, 0.85}};
    for (const auto& [low, high] : mirrored) {
        const double near = median_errors(report, ModelKind::signal_decay, low);
        const double far = median_errors(report, ModelKind::signal_decay, high);
        CHECK(std::abs(near - far) <= 2.0);
    }
}
