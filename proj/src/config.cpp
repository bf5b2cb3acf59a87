#include "hidd/config.hpp"

#include <cstdlib>
#include <fstream>
#include <string>

namespace hidd {

namespace {

using nlohmann::json;

template <class T>
T get_as(const json& doc, const char* key) {
    try {
        return doc.at(key).get<T>();
    } catch (const json::exception& e) {
        throw Error(ErrorCode::BadConfig, std::string("key '") + key + "': " + e.what());
    }
}

template <class T>
void read_optional(const json& doc, const char* key, T& out) {
    if (doc.contains(key)) {
        out = get_as<T>(doc, key);
    }
}

SignalSpec parse_signal(const json& doc, SignalSpec spec) {
    if (!doc.is_object()) {
        throw Error(ErrorCode::BadConfig, "'signal' must be an object");
    }
    if (doc.contains("kind")) {
        const auto kind_name = get_as<std::string>(doc, "kind");
        if (kind_name == "default") {
            spec = SignalSpec::default_signal();
        } else {
            spec.kind = parse_signal_kind(kind_name);
            spec.sines.clear();
            if (spec.kind == SignalKind::Sine) {
                spec.sines.push_back({});
            }
        }
    }
    if (spec.kind == SignalKind::Sine) {
        if (spec.sines.empty()) spec.sines.push_back({});
        read_optional(doc, "amplitude", spec.sines[0].amplitude);
        read_optional(doc, "frequency", spec.sines[0].frequency);
        read_optional(doc, "phase", spec.sines[0].phase);
    }
    if (doc.contains("components")) {
        spec.sines.clear();
        for (const auto& c : doc.at("components")) {
            SineComponent comp;
            read_optional(c, "amplitude", comp.amplitude);
            read_optional(c, "frequency", comp.frequency);
            read_optional(c, "phase", comp.phase);
            spec.sines.push_back(comp);
        }
    }
    read_optional(doc, "slope", spec.slope);
    read_optional(doc, "coeffs", spec.coeffs);
    read_optional(doc, "noise_amplitude", spec.noise_amplitude);
    read_optional(doc, "seed", spec.seed);
    if (!(spec.noise_amplitude >= 0.0)) {
        throw Error(ErrorCode::BadConfig, "noise_amplitude must be >= 0");
    }
    return spec;
}

BenchConfig parse_bench(const json& doc, BenchConfig cfg) {
    if (!doc.is_object()) {
        throw Error(ErrorCode::BadConfig, "'bench' must be an object");
    }
    read_optional(doc, "n_values", cfg.n_values);
    read_optional(doc, "horizons", cfg.horizons);
    read_optional(doc, "repetitions", cfg.repetitions);
    read_optional(doc, "warmup_steps", cfg.warmup_steps);
    read_optional(doc, "timing", cfg.timing);
    read_optional(doc, "count_ops", cfg.count_ops);
    if (doc.contains("methods")) {
        cfg.methods.clear();
        for (const auto& name : get_as<std::vector<std::string>>(doc, "methods")) {
            cfg.methods.push_back(parse_method(name));
        }
    }
    if (doc.contains("gains")) {
        for (const auto& [key, value] : doc.at("gains").items()) {
            int order = 0;
            try {
                order = std::stoi(key);
            } catch (const std::exception&) {
                throw Error(ErrorCode::BadConfig, "gains key '" + key + "' is not an order");
            }
            cfg.gains[order] = value.get<std::vector<double>>();
        }
    }
    if (cfg.repetitions < 1) {
        throw Error(ErrorCode::BadConfig, "repetitions must be >= 1");
    }
    return cfg;
}

}  // namespace

Params Config::params() const {
    const int order = n.value_or(3);
    std::vector<double> gains = lambda ? *lambda : gains_for(bench, order);
    return make_params(order, L.value_or(bench.L), std::move(gains), tau.value_or(bench.tau));
}

Config parse_config(const json& doc) {
    if (!doc.is_object()) {
        throw Error(ErrorCode::BadConfig, "config root must be an object");
    }
    Config cfg;
    if (doc.contains("n")) cfg.n = get_as<int>(doc, "n");
    if (doc.contains("L")) cfg.L = get_as<double>(doc, "L");
    if (doc.contains("lambda")) cfg.lambda = get_as<std::vector<double>>(doc, "lambda");
    if (doc.contains("tau")) cfg.tau = get_as<double>(doc, "tau");
    if (cfg.tau) cfg.bench.tau = *cfg.tau;
    if (cfg.L) cfg.bench.L = *cfg.L;
    if (cfg.n && cfg.lambda) cfg.bench.gains[*cfg.n] = *cfg.lambda;
    if (doc.contains("signal")) cfg.signal = parse_signal(doc.at("signal"), cfg.signal);
    if (doc.contains("bench")) cfg.bench = parse_bench(doc.at("bench"), cfg.bench);
    return cfg;
}

Config load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::BadConfig, "cannot open config '" + path.string() + "'");
    }
    try {
        return parse_config(nlohmann::json::parse(in));
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorCode::BadConfig, path.string() + ": " + e.what());
    }
}

void apply_seed_override(Config& cfg) {
    const char* env = std::getenv("HIDD_SEED");
    if (env == nullptr || *env == '\0') {
        return;
    }
    try {
        std::size_t used = 0;
        const unsigned long long seed = std::stoull(env, &used);
        if (env[used] != '\0') {
            throw std::invalid_argument("trailing characters");
        }
        cfg.signal.seed = seed;
    } catch (const std::exception&) {
        throw Error(ErrorCode::BadConfig, std::string("HIDD_SEED is not an integer: '") + env + "'");
    }
}

Params params_from_json(const nlohmann::json& doc) {
    return make_params(get_as<int>(doc, "n"), get_as<double>(doc, "L"), get_as<std::vector<double>>(doc, "lambda"),
                       get_as<double>(doc, "tau"));
}

}  // namespace hidd
