#pragma once

#include <filesystem>
#include <optional>

#include "json.hpp"

#include "hidd/bench.hpp"
#include "hidd/core_types.hpp"
#include "hidd/signal.hpp"

namespace hidd {

/// Everything a JSON config file can carry.
///
/// Top level: `n`, `L`, `lambda`, `tau` (Params); `signal` (SignalSpec:
/// kind, amplitude, frequency, phase, components, slope, coeffs,
/// noise_amplitude, seed); `bench` (BenchConfig: n_values, horizons,
/// methods, repetitions, gains, warmup_steps, timing). Every key is
/// optional; missing keys keep their defaults.
struct Config {
    std::optional<int> n;
    std::optional<double> L;
    std::optional<std::vector<double>> lambda;
    std::optional<double> tau;
    SignalSpec signal = SignalSpec::default_signal();
    BenchConfig bench;

    /// Params from the config (gains default to default_gains(n)).
    Params params() const;
};

/// Parses a config document. Throws Error{BadConfig} on malformed input.
Config parse_config(const nlohmann::json& doc);
Config load_config(const std::filesystem::path& path);

/// HIDD_SEED, when set to an integer, replaces the signal seed.
/// Throws Error{BadConfig} if it is set but not an integer.
void apply_seed_override(Config& cfg);

/// Strict Params reader for {"n", "L", "lambda", "tau"}.
Params params_from_json(const nlohmann::json& doc);

}  // namespace hidd
