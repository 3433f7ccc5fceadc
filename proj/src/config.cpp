#include "sdm/config.hpp"

#include <charconv>
#include <cstdio>
#include <vector>

namespace sdm {
namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            parts.push_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return parts;
}

template <typename Int>
Int parse_int(std::string_view key, std::string_view text) {
    Int value{};
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size()) {
        throw ConfigError(std::string(key), "invalid integer '" + std::string(text) + "'");
    }
    return value;
}

double parse_real(std::string_view key, std::string_view text) {
    double value = 0.0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size()) {
        throw ConfigError(std::string(key), "invalid number '" + std::string(text) + "'");
    }
    return value;
}

template <typename Int>
std::vector<Int> parse_int_list(std::string_view key, std::string_view text) {
    std::vector<Int> out;
    for (const auto item : split(text, ',')) {
        out.push_back(parse_int<Int>(key, item));
    }
    return out;
}

std::vector<double> parse_real_list(std::string_view key, std::string_view text) {
    std::vector<double> out;
    for (const auto item : split(text, ',')) {
        out.push_back(parse_real(key, item));
    }
    return out;
}

std::vector<ScheduleTier> parse_tier_list(std::string_view key, std::string_view text) {
    std::vector<ScheduleTier> out;
    for (const auto item : split(text, ',')) {
        const std::size_t colon = item.find(':');
        if (colon == std::string_view::npos) {
            throw ConfigError(std::string(key),
                              "expected count:fraction, got '" + std::string(item) + "'");
        }
        out.push_back({parse_int<std::size_t>(key, item.substr(0, colon)),
                       parse_real(key, item.substr(colon + 1))});
    }
    return out;
}

std::vector<ModelKind> parse_model_list(std::string_view key, std::string_view text) {
    std::vector<ModelKind> out;
    for (const auto item : split(text, ',')) {
        try {
            out.push_back(parse_model_kind(item));
        } catch (const std::invalid_argument&) {
            throw ConfigError(std::string(key), "unknown model '" + std::string(item) + "'");
        }
    }
    return out;
}

std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

template <typename T, typename Format>
std::string join(const std::vector<T>& values, Format&& format) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) {
            out += ',';
        }
        out += format(values[i]);
    }
    return out;
}

}  // namespace

ConfigError::ConfigError(std::string key, const std::string& message)
    : std::runtime_error(key.empty() ? message : key + ": " + message), key_(std::move(key)) {}

void apply_config_entry(ExperimentConfig& config, std::string_view key, std::string_view value) {
    if (key == "pattern_size") {
        config.pattern_size = parse_int<std::size_t>(key, value);
    } else if (key == "radius_fraction") {
        config.radius_fraction = parse_real(key, value);
    } else if (key == "qfactors") {
        config.qfactors = parse_int_list<std::size_t>(key, value);
    } else if (key == "training_tiers") {
        config.training_tiers = parse_tier_list(key, value);
    } else if (key == "sweep_fractions") {
        config.sweep_fractions = parse_real_list(key, value);
    } else if (key == "trials_per_point") {
        config.trials_per_point = parse_int<std::size_t>(key, value);
    } else if (key == "seeds") {
        config.seeds = parse_int_list<std::uint64_t>(key, value);
    } else if (key == "models") {
        config.models = parse_model_list(key, value);
    } else if (key == "max_iters") {
        config.max_iters = parse_int<std::size_t>(key, value);
    } else if (key == "m") {
        config.m = parse_real(key, value);
    } else if (key == "static_locations") {
        config.static_locations = parse_int<std::size_t>(key, value);
    } else {
        throw ConfigError(std::string(key), "unknown configuration key");
    }
}

void apply_config_text(ExperimentConfig& config, std::string_view text) {
    std::size_t line_no = 0;
    for (const auto raw_line : split(text, '\n')) {
        ++line_no;
        const std::string_view line = trim(raw_line);
        if (line.empty() || line.front() == '#') {
            continue;
        }
        const std::size_t eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("", "line " + std::to_string(line_no) +
                                      ": expected key=value, got '" + std::string(line) + "'");
        }
        const std::string_view key = trim(line.substr(0, eq));
        if (key.empty()) {
            throw ConfigError("", "line " + std::to_string(line_no) + ": empty key");
        }
        apply_config_entry(config, key, trim(line.substr(eq + 1)));
    }
}

std::string resolved_config_text(const ExperimentConfig& config) {
    const auto format_size = [](std::size_t v) { return std::to_string(v); };
    const auto format_seed = [](std::uint64_t v) { return std::to_string(v); };
    std::string out;
    out += "pattern_size=" + std::to_string(config.pattern_size) + '\n';
    out += "radius_fraction=" + format_real(config.radius_fraction) + '\n';
    out += "qfactors=" + join(config.qfactors, format_size) + '\n';
    out += "training_tiers=" + join(config.training_tiers, [](const ScheduleTier& t) {
        return std::to_string(t.count) + ':' + format_real(t.fraction);
    }) + '\n';
    out += "sweep_fractions=" + join(config.sweep_fractions, format_real) + '\n';
    out += "trials_per_point=" + std::to_string(config.trials_per_point) + '\n';
    out += "seeds=" + join(config.seeds, format_seed) + '\n';
    out += "models=" + join(config.models, [](ModelKind m) {
        return std::string(to_string(m));
    }) + '\n';
    out += "max_iters=" + std::to_string(config.max_iters) + '\n';
    out += "m=" + format_real(config.m) + '\n';
    std::size_t static_count = config.static_locations;
    if (static_count == 0) {
        try {
            static_count = config.resolved_static_locations();
        } catch (const std::invalid_argument&) {
            // No derivable default at this pattern size; echo the raw value.
        }
    }
    out += "static_locations=" + std::to_string(static_count) + '\n';
    return out;
}

}  // namespace sdm
