#include "sdm/snapshot.hpp"

#include <cerrno>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>
#include <vector>

namespace sdm {
namespace {

std::string format_counter(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

/// Address as hex digits, low position first, padded to ceil(n/4)
/// digits so every pattern length round-trips.
std::string encode_address(const BitPattern& p) {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out = "x";
    for (std::size_t i = 0; i < p.length(); i += 4) {
        int v = 0;
        for (std::size_t b = 0; b < 4 && i + b < p.length(); ++b) {
            if (p.bit(i + b)) {
                v |= 1 << b;
            }
        }
        out.push_back(kDigits[v]);
    }
    return out;
}

BitPattern decode_address(std::string_view text, std::size_t length, std::size_t line_no) {
    if (text.empty() || (text.front() != 'x' && text.front() != 'X')) {
        throw SnapshotError(line_no, "address must start with 'x'");
    }
    const std::string_view digits = text.substr(1);
    if (digits.size() != (length + 3) / 4) {
        throw SnapshotError(line_no, "address has wrong digit count for n=" +
                                         std::to_string(length));
    }
    BitPattern p = BitPattern::zeros(length);
    for (std::size_t i = 0; i < digits.size(); ++i) {
        const char c = digits[i];
        int v;
        if (c >= '0' && c <= '9') {
            v = c - '0';
        } else if (c >= 'a' && c <= 'f') {
            v = c - 'a' + 10;
        } else if (c >= 'A' && c <= 'F') {
            v = c - 'A' + 10;
        } else {
            throw SnapshotError(line_no, std::string("invalid hex digit '") + c + "' in address");
        }
        for (std::size_t b = 0; b < 4; ++b) {
            if (((v >> b) & 1) == 0) {
                continue;
            }
            const std::size_t pos = i * 4 + b;
            if (pos >= length) {
                throw SnapshotError(line_no, "address pad bits must be zero");
            }
            p.set_bit(pos, true);
        }
    }
    return p;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && line[i] == ' ') {
            ++i;
        }
        const std::size_t start = i;
        while (i < line.size() && line[i] != ' ') {
            ++i;
        }
        if (i > start) {
            fields.push_back(line.substr(start, i - start));
        }
    }
    return fields;
}

/// Value of a "key=value" field, checking the key.
std::string_view field_value(std::string_view field, std::string_view key, std::size_t line_no) {
    if (field.size() <= key.size() || field.substr(0, key.size()) != key ||
        field[key.size()] != '=') {
        throw SnapshotError(line_no, "expected " + std::string(key) + "=<value>, got '" +
                                         std::string(field) + "'");
    }
    return field.substr(key.size() + 1);
}

std::size_t parse_size(std::string_view text, std::string_view what, std::size_t line_no) {
    std::size_t value = 0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size()) {
        throw SnapshotError(line_no, "invalid " + std::string(what) + " '" + std::string(text) + "'");
    }
    return value;
}

double parse_double(std::string_view text, std::string_view what, std::size_t line_no) {
    double value = 0.0;
    const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || end != text.data() + text.size()) {
        throw SnapshotError(line_no, "invalid " + std::string(what) + " '" + std::string(text) + "'");
    }
    return value;
}

}  // namespace

SnapshotError::SnapshotError(std::size_t line, const std::string& message)
    : std::runtime_error(line == 0 ? message : "line " + std::to_string(line) + ": " + message),
      line_(line) {}

std::string format_snapshot(const Memory& memory) {
    std::string out = "SDM v1 model=";
    out += to_string(memory.model());
    out += " n=" + std::to_string(memory.pattern_length());
    out += " m=" + format_counter(memory.attenuation());
    out += " locations=" + std::to_string(memory.location_count());
    out += '\n';
    for (std::size_t i = 0; i < memory.location_count(); ++i) {
        out += encode_address(memory.address_at(i));
        for (const double c : memory.counters_at(i)) {
            out += ' ';
            out += format_counter(c);
        }
        out += '\n';
    }
    return out;
}

Memory parse_snapshot(std::string_view text) {
    std::size_t line_no = 0;
    std::size_t offset = 0;
    const auto next_line = [&](std::string_view& line) {
        if (offset >= text.size()) {
            return false;
        }
        const std::size_t nl = text.find('\n', offset);
        line = text.substr(offset, nl == std::string_view::npos ? std::string_view::npos
                                                                : nl - offset);
        offset = nl == std::string_view::npos ? text.size() : nl + 1;
        ++line_no;
        return true;
    };

    std::string_view header;
    if (!next_line(header)) {
        throw SnapshotError(1, "empty snapshot");
    }
    const auto fields = split_fields(header);
    if (fields.size() != 6 || fields[0] != "SDM" || fields[1] != "v1") {
        throw SnapshotError(1, "header must read 'SDM v1 model=... n=... m=... locations=...'");
    }
    ModelKind model;
    try {
        model = parse_model_kind(field_value(fields[2], "model", 1));
    } catch (const std::invalid_argument& e) {
        throw SnapshotError(1, e.what());
    }
    const std::size_t n = parse_size(field_value(fields[3], "n", 1), "n", 1);
    const double m = parse_double(field_value(fields[4], "m", 1), "m", 1);
    const std::size_t locations = parse_size(field_value(fields[5], "locations", 1),
                                             "location count", 1);
    if (n == 0) {
        throw SnapshotError(1, "n must be positive");
    }
    if (!(m > 0.0 && m <= 1.0)) {
        throw SnapshotError(1, "m must lie in (0, 1]");
    }

    Memory memory(model, n, m);
    for (std::size_t loc = 0; loc < locations; ++loc) {
        std::string_view line;
        if (!next_line(line)) {
            throw SnapshotError(line_no + 1, "expected " + std::to_string(locations) +
                                                 " location lines, found " + std::to_string(loc));
        }
        const auto parts = split_fields(line);
        if (parts.size() != n + 1) {
            throw SnapshotError(line_no, "expected address plus " + std::to_string(n) +
                                             " counters, found " +
                                             std::to_string(parts.empty() ? 0 : parts.size() - 1));
        }
        const BitPattern address = decode_address(parts[0], n, line_no);
        if (!memory.add_location(address)) {
            throw SnapshotError(line_no, "duplicate location address");
        }
        auto counters = memory.counters_at(memory.location_count() - 1);
        for (std::size_t b = 0; b < n; ++b) {
            counters[b] = parse_double(parts[b + 1], "counter", line_no);
        }
    }
    std::string_view extra;
    while (next_line(extra)) {
        if (!split_fields(extra).empty()) {
            throw SnapshotError(line_no, "unexpected content after last location");
        }
    }
    return memory;
}

void save_snapshot(const Memory& memory, const std::filesystem::path& path) {
    const std::string body = format_snapshot(memory);
    std::filesystem::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw SnapshotError(0, "cannot open '" + tmp.string() + "' for writing");
        }
        out.write(body.data(), static_cast<std::streamsize>(body.size()));
        out.flush();
        if (!out) {
            throw SnapshotError(0, "write failed for '" + tmp.string() + "'");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        throw SnapshotError(0, "cannot move snapshot into place at '" + path.string() +
                                   "': " + ec.message());
    }
}

Memory load_snapshot(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw SnapshotError(0, "cannot open snapshot '" + path.string() + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_snapshot(buffer.str());
}

}  // namespace sdm
