#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace hidd {

enum class SignalKind { Sine, SumOfSines, Ramp, Polynomial, Zero };

std::string_view to_string(SignalKind k) noexcept;
SignalKind parse_signal_kind(std::string_view name);

/// amplitude * sin(frequency * t + phase); frequency in rad/s.
struct SineComponent {
    double amplitude = 1.0;
    double frequency = 1.0;
    double phase = 0.0;
};

/// Test signal plus uniform noise in [-noise_amplitude, noise_amplitude].
struct SignalSpec {
    SignalKind kind = SignalKind::Zero;
    std::vector<SineComponent> sines;  // Sine uses sines[0]
    double slope = 0.0;
    std::vector<double> coeffs;  // Polynomial: coeffs[i] * t^i
    double noise_amplitude = 0.0;
    std::uint64_t seed = 0;

    static SignalSpec zero() { return {}; }
    static SignalSpec sine(double amplitude, double frequency, double phase = 0.0);
    static SignalSpec sum_of_sines(std::vector<SineComponent> components);
    static SignalSpec ramp(double slope);
    static SignalSpec polynomial(std::vector<double> coeffs);
    /// sin(t) + 0.5 cos(2t) with 1e-3 noise.
    static SignalSpec default_signal();

    SignalSpec with_noise(double amplitude, std::uint64_t seed_value) const;

    /// Noise-free value at time t.
    double base(double t) const;
};

/// f_k = base(k tau) + noise_k for k = 0..steps-1. Bitwise reproducible for
/// a given seed.
std::vector<double> gen_signal(const SignalSpec& spec, double tau, std::size_t steps);

}  // namespace hidd
