#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "gsum/errors.hpp"

// Turnstile stream model: ordered (item, delta) updates over domain [1..n]
// with the promise that every prefix of the running frequency vector stays
// inside [-M, M].

namespace gsum {

struct StreamUpdate {
    std::int64_t item = 0;   // in [1..n]
    std::int64_t delta = 0;  // signed

    friend bool operator==(const StreamUpdate&, const StreamUpdate&) = default;
};

struct Stream {
    std::int64_t n = 0;
    std::int64_t M = 0;
    std::vector<StreamUpdate> updates;

    void validate_header() const {
        if (n < 1) throw InvalidParams("stream domain size must be >= 1");
        if (M < 0 || M > std::int64_t(INT32_MAX))
            throw InvalidParams("frequency bound M must be in [0, 2^31]");
    }

    friend bool operator==(const Stream&, const Stream&) = default;
};

// Net frequencies; items with zero net frequency are omitted (value
// preserving because g(0) = 0).
struct FrequencyVector {
    std::int64_t n = 0;
    std::map<std::int64_t, std::int64_t> values;  // item -> frequency

    std::int64_t at(std::int64_t item) const {
        auto it = values.find(item);
        return it == values.end() ? 0 : it->second;
    }

    std::size_t support() const { return values.size(); }

    double f2() const {
        double s = 0;
        for (const auto& [item, v] : values) s += double(v) * double(v);
        return s;
    }
};

// Replays the updates, checking the turnstile promise on every prefix.
inline FrequencyVector materialize(const Stream& stream) {
    stream.validate_header();
    std::unordered_map<std::int64_t, std::int64_t> acc;
    acc.reserve(stream.updates.size());
    for (const auto& u : stream.updates) {
        if (u.item < 1 || u.item > stream.n) {
            throw InvalidParams("update item " + std::to_string(u.item) +
                                " outside [1.." + std::to_string(stream.n) + "]");
        }
        std::int64_t& v = acc[u.item];
        v += u.delta;
        if (v > stream.M || v < -stream.M) {
            throw TurnstileViolation(
                "prefix frequency " + std::to_string(v) + " of item " +
                std::to_string(u.item) + " exceeds bound " + std::to_string(stream.M));
        }
    }
    FrequencyVector out;
    out.n = stream.n;
    for (const auto& [item, v] : acc) {
        if (v != 0) out.values.emplace(item, v);
    }
    return out;
}

// Exact oracle: sum of g(|v_i|) over the materialized vector. This is the
// reference every randomized component is judged against.
template <class G>
double exact_gsum(const Stream& stream, const G& g) {
    FrequencyVector vec = materialize(stream);
    double total = 0;
    for (const auto& [item, v] : vec.values) {
        total += g(v < 0 ? -v : v);
    }
    return total;
}

template <class G>
double exact_gsum(const FrequencyVector& vec, const G& g) {
    double total = 0;
    for (const auto& [item, v] : vec.values) {
        total += g(v < 0 ? -v : v);
    }
    return total;
}

// Text format: first non-comment line "n M", then one "item delta" per
// line; '#' starts a comment line; LF endings.
inline void write_stream_text(const Stream& stream, std::ostream& os) {
    os << stream.n << ' ' << stream.M << '\n';
    for (const auto& u : stream.updates) {
        os << u.item << ' ' << u.delta << '\n';
    }
}

inline std::string stream_to_text(const Stream& stream) {
    std::ostringstream os;
    write_stream_text(stream, os);
    return os.str();
}

inline Stream read_stream_text(std::istream& is) {
    Stream s;
    std::string line;
    bool header = false;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        std::size_t i = line.find_first_not_of(" \t");
        if (i == std::string::npos || line[i] == '#') continue;
        std::istringstream ls(line);
        if (!header) {
            if (!(ls >> s.n >> s.M))
                throw ParseError("line " + std::to_string(lineno) + ": expected \"n M\"");
            header = true;
        } else {
            StreamUpdate u;
            if (!(ls >> u.item >> u.delta))
                throw ParseError("line " + std::to_string(lineno) + ": expected \"item delta\"");
            s.updates.push_back(u);
        }
        std::string rest;
        if (ls >> rest)
            throw ParseError("line " + std::to_string(lineno) + ": trailing token \"" + rest + "\"");
    }
    if (!header) throw ParseError("missing \"n M\" header line");
    s.validate_header();
    return s;
}

inline Stream stream_from_text(const std::string& text) {
    std::istringstream is(text);
    return read_stream_text(is);
}

}  // namespace gsum
