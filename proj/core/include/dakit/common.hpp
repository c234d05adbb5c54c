#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace dakit {

// Raised when an input file violates its declared grammar. Carries the
// 1-based line number of the offending line (0 = not line-specific).
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t line = 0)
        : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + msg : msg),
          line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Raised for invalid run configuration (bad flag combinations, out-of-range
// knobs, missing inputs). CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
public:
    explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Deterministic 64-bit generator (splitmix64). Used everywhere a seeded
// decision is made so results are reproducible across platforms; std::
// distributions are implementation-defined and must not be used for
// anything that affects output.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform draw in [0, bound). bound must be > 0.
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }

    // Uniform double in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

// In-place Fisher-Yates shuffle driven by Rng.
template <typename T>
void deterministic_shuffle(std::vector<T>& items, std::uint64_t seed) {
    Rng rng(seed);
    for (std::size_t i = items.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(rng.below(i));
        std::swap(items[i - 1], items[j]);
    }
}

// Runs fn(0..n-1) on up to `jobs` worker threads. Callers are responsible
// for writing results into pre-sized slots so the output does not depend
// on scheduling order.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn);

// FNV-1a 64-bit content hash, used by run manifests.
std::uint64_t fnv1a64(std::string_view data);

std::string to_lower_ascii(std::string_view s);
std::vector<std::string> split(std::string_view s, char delim);
std::string_view trim(std::string_view s);

// Shortest-exact textual form of a double (round-trips through strtod).
std::string format_double(double v);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);

}  // namespace dakit
