#include <doctest.h>

#include <string>

#include "sdm/config.hpp"

using namespace sdm;
namespace {

std::string failing_key(ExperimentConfig& config, const std::string& text) {
    try {
        apply_config_text(config, text);
    } catch (const ConfigError& e) {
        return e.key();
    }
    return "<no error>";
}

}  // namespace

TEST_CASE("entries overwrite the matching field") {
    ExperimentConfig config;
    apply_config_entry(config, "pattern_size", "128");
    CHECK(config.pattern_size == 128);
    apply_config_entry(config, "radius_fraction", "0.4");
    CHECK(config.radius_fraction == 0.4);
    apply_config_entry(config, "qfactors", "16,48");
    CHECK(config.qfactors == std::vector<std::size_t>{16, 48});
    apply_config_entry(config, "training_tiers", "3:0.1,2:0.3");
    REQUIRE(config.training_tiers.size() == 2);
    CHECK(config.training_tiers[0] == ScheduleTier{3, 0.1});
    CHECK(config.training_tiers[1] == ScheduleTier{2, 0.3});
    apply_config_entry(config, "sweep_fractions", "0.05,0.5");
    CHECK(config.sweep_fractions == std::vector<double>{0.05, 0.5});
    apply_config_entry(config, "trials_per_point", "7");
    CHECK(config.trials_per_point == 7);
    apply_config_entry(config, "seeds", "10,11,12");
    CHECK(config.seeds == std::vector<std::uint64_t>{10, 11, 12});
    apply_config_entry(config, "models", "kanerva-dynamic,signal-decay");
    CHECK(config.models ==
          std::vector<ModelKind>{ModelKind::kanerva_dynamic, ModelKind::signal_decay});
    apply_config_entry(config, "max_iters", "4");
    CHECK(config.max_iters == 4);
    apply_config_entry(config, "m", "0.35");
    CHECK(config.m == 0.35);
    apply_config_entry(config, "static_locations", "99");
    CHECK(config.static_locations == 99);
}

TEST_CASE("whole files skip comments and blank lines") {
    ExperimentConfig config;
    apply_config_text(config,
                      "# benchmark setup\n"
                      "\n"
                      "pattern_size = 64\n"
                      "qfactors=8,16\r\n"
                      "  models = signal-decay  \n");
    CHECK(config.pattern_size == 64);
    CHECK(config.qfactors == std::vector<std::size_t>{8, 16});
    CHECK(config.models == std::vector<ModelKind>{ModelKind::signal_decay});
    // Untouched fields keep their defaults.
    CHECK(config.trials_per_point == 5);
}

TEST_CASE("errors carry the offending key") {
    ExperimentConfig config;
    CHECK(failing_key(config, "wibble=3\n") == "wibble");
    CHECK(failing_key(config, "pattern_size=abc\n") == "pattern_size");
    CHECK(failing_key(config, "m=high\n") == "m");
    CHECK(failing_key(config, "qfactors=1,x\n") == "qfactors");
    CHECK(failing_key(config, "training_tiers=5-0.15\n") == "training_tiers");
    CHECK(failing_key(config, "models=qanerva\n") == "models");
    CHECK(failing_key(config, "seeds=\n") == "seeds");
}

TEST_CASE("lines without an assignment report their line number") {
    ExperimentConfig config;
    try {
        apply_config_text(config, "pattern_size=64\nnonsense\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.key().empty());
        CHECK(std::string(e.what()).find("line 2") != std::string::npos);
    }
}

TEST_CASE("the resolved echo lists every key once, in order") {
    const ExperimentConfig config;
    const std::string text = resolved_config_text(config);
    CHECK(text ==
          "pattern_size=256\n"
          "radius_fraction=0.35\n"
          "qfactors=32,64,96,128\n"
          "training_tiers=5:0.15,5:0.2,5:0.25\n"
          "sweep_fractions=0.05,0.1,0.15,0.2,0.25,0.3,0.35,0.4,0.45,0.5,0.55,0.6,0.65,"
          "0.7,0.75,0.8,0.85,0.9,0.95\n"
          "trials_per_point=5\n"
          "seeds=1,2,3,4,5\n"
          "models=kanerva-static,signal-decay\n"
          "max_iters=10\n"
          "m=0.2\n"
          "static_locations=570\n");
}

TEST_CASE("the resolved echo parses back to the same effective config") {
    ExperimentConfig config;
    apply_config_text(config, "pattern_size=128\nqfactors=16\nseeds=42\nm=0.25\n");
    const std::string echoed = resolved_config_text(config);
    ExperimentConfig reparsed;
    apply_config_text(reparsed, echoed);
    CHECK(resolved_config_text(reparsed) == echoed);
    CHECK(reparsed.pattern_size == 128);
    CHECK(reparsed.m == 0.25);
    // The echo pins the auto-derived static count explicitly.
    CHECK(reparsed.static_locations == config.resolved_static_locations());
}
