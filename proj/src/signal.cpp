#include "hidd/signal.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "hidd/error.hpp"

namespace hidd {

std::string_view to_string(SignalKind k) noexcept {
    switch (k) {
        case SignalKind::Sine: return "sine";
        case SignalKind::SumOfSines: return "sum_of_sines";
        case SignalKind::Ramp: return "ramp";
        case SignalKind::Polynomial: return "polynomial";
        case SignalKind::Zero: return "zero";
    }
    return "unknown";
}

SignalKind parse_signal_kind(std::string_view name) {
    for (SignalKind k : {SignalKind::Sine, SignalKind::SumOfSines, SignalKind::Ramp, SignalKind::Polynomial,
                         SignalKind::Zero}) {
        if (name == to_string(k)) {
            return k;
        }
    }
    if (name == "default") {
        return SignalKind::SumOfSines;
    }
    throw Error(ErrorCode::BadConfig, "unknown signal kind '" + std::string(name) + "'");
}

SignalSpec SignalSpec::sine(double amplitude, double frequency, double phase) {
    SignalSpec s;
    s.kind = SignalKind::Sine;
    s.sines = {{amplitude, frequency, phase}};
    return s;
}

SignalSpec SignalSpec::sum_of_sines(std::vector<SineComponent> components) {
    SignalSpec s;
    s.kind = SignalKind::SumOfSines;
    s.sines = std::move(components);
    return s;
}

SignalSpec SignalSpec::ramp(double slope) {
    SignalSpec s;
    s.kind = SignalKind::Ramp;
    s.slope = slope;
    return s;
}

SignalSpec SignalSpec::polynomial(std::vector<double> coeffs) {
    SignalSpec s;
    s.kind = SignalKind::Polynomial;
    s.coeffs = std::move(coeffs);
    return s;
}

SignalSpec SignalSpec::default_signal() {
    return sum_of_sines({{1.0, 1.0, 0.0}, {0.5, 2.0, std::numbers::pi / 2}}).with_noise(1e-3, 0);
}

SignalSpec SignalSpec::with_noise(double amplitude, std::uint64_t seed_value) const {
    if (!(amplitude >= 0.0)) {
        throw Error(ErrorCode::BadConfig, "noise amplitude must be >= 0");
    }
    SignalSpec s = *this;
    s.noise_amplitude = amplitude;
    s.seed = seed_value;
    return s;
}

double SignalSpec::base(double t) const {
    switch (kind) {
        case SignalKind::Zero: return 0.0;
        case SignalKind::Ramp: return slope * t;
        case SignalKind::Sine:
        case SignalKind::SumOfSines: {
            double v = 0.0;
            for (const auto& c : sines) {
                v += c.amplitude * std::sin(c.frequency * t + c.phase);
                if (kind == SignalKind::Sine) break;
            }
            return v;
        }
        case SignalKind::Polynomial: {
            double v = 0.0;
            for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
                v = v * t + *it;
            }
            return v;
        }
    }
    return 0.0;
}

std::vector<double> gen_signal(const SignalSpec& spec, double tau, std::size_t steps) {
    std::vector<double> out(steps);
    for (std::size_t k = 0; k < steps; ++k) {
        out[k] = spec.base(static_cast<double>(k) * tau);
    }
    if (spec.noise_amplitude > 0.0) {
        std::mt19937_64 rng(spec.seed);
        std::uniform_real_distribution<double> noise(-spec.noise_amplitude, spec.noise_amplitude);
        for (double& v : out) {
            v += noise(rng);
        }
    }
    return out;
}

}  // namespace hidd
