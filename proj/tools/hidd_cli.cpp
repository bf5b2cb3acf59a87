// hidd: command-line front end.
//
//   hidd run        simulate one configuration, per-step trace CSV
//   hidd bench      wall-clock benchmark of the five methods, CSV report
//   hidd complexity closed-form time complexity table, CSV
//   hidd validate   acceptance checks, one PASS/FAIL line each
//
// Exit codes: 0 success, 1 validation failure, 2 usage error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "hidd/bench.hpp"
#include "hidd/complexity.hpp"
#include "hidd/config.hpp"
#include "hidd/differentiator.hpp"
#include "hidd/signal.hpp"
#include "hidd/validation.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Writes to --out when given, stdout otherwise.
class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty() && path != "-") {
            file_.open(path);
            if (!file_) {
                throw UsageError("--out: cannot open '" + path + "'");
            }
        }
    }
    std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

private:
    std::ofstream file_;
};

struct RunOptions {
    std::string config;
    std::optional<int> n;
    std::optional<double> tau;
    std::optional<double> L;
    std::vector<double> lambda;
    std::string gain_set = "nonrecursive";
    std::string signal;
    double seconds = 10.0;
    std::optional<double> noise;
    std::optional<std::uint64_t> seed;
    std::string method = "half-horner";
    std::string out;
};

struct BenchOptions {
    std::string config;
    std::vector<int> n_values;
    std::vector<double> horizons;
    std::vector<std::string> methods;
    std::optional<int> reps;
    std::optional<double> tau;
    bool count_only = false;
    std::string out;
};

struct ComplexityOptions {
    int from = 2;
    int to = 30;
    std::string out;
};

struct ValidateOptions {
    bool skip_bench = false;
    std::uint64_t seed = hidd::validation::SuiteOptions{}.seed;
};

hidd::Config base_config(const std::string& path) {
    hidd::Config cfg = path.empty() ? hidd::Config{} : hidd::load_config(path);
    hidd::apply_seed_override(cfg);
    return cfg;
}

int cmd_run(const RunOptions& o) {
    hidd::Config cfg = base_config(o.config);
    if (o.seed) cfg.signal.seed = *o.seed;
    hidd::apply_seed_override(cfg);

    const int n = o.n.value_or(cfg.n.value_or(3));
    const double tau = o.tau.value_or(cfg.tau.value_or(cfg.bench.tau));
    const double L = o.L.value_or(cfg.L.value_or(cfg.bench.L));
    std::vector<double> lambda;
    if (!o.lambda.empty()) {
        lambda = o.lambda;
    } else if (cfg.lambda && (!o.n || *o.n == cfg.n.value_or(-1))) {
        lambda = *cfg.lambda;
    } else if (o.gain_set == "nonrecursive") {
        lambda = hidd::nonrecursive_gains(n);
    } else if (o.gain_set == "standard") {
        lambda = hidd::default_gains(n);
    } else {
        throw UsageError("--gains: expected 'nonrecursive' or 'standard', got '" + o.gain_set + "'");
    }
    const hidd::Params params = hidd::make_params(n, L, lambda, tau);
    const hidd::Tables tables = hidd::precompute(params);

    hidd::SignalSpec signal = cfg.signal;
    if (!o.signal.empty()) {
        const auto kind = hidd::parse_signal_kind(o.signal);
        if (o.signal == "default") {
            signal = hidd::SignalSpec::default_signal().with_noise(signal.noise_amplitude, signal.seed);
        } else if (kind != signal.kind) {
            const double eta = signal.noise_amplitude;
            const auto seed = signal.seed;
            switch (kind) {
                case hidd::SignalKind::Sine: signal = hidd::SignalSpec::sine(1.0, 1.0); break;
                case hidd::SignalKind::SumOfSines: signal = hidd::SignalSpec::default_signal(); break;
                case hidd::SignalKind::Ramp: signal = hidd::SignalSpec::ramp(1.0); break;
                case hidd::SignalKind::Polynomial: signal = hidd::SignalSpec::polynomial({0.0, 1.0}); break;
                case hidd::SignalKind::Zero: signal = hidd::SignalSpec::zero(); break;
            }
            signal = signal.with_noise(eta, seed);
        }
    }
    if (o.noise) signal = signal.with_noise(*o.noise, signal.seed);

    const hidd::Method method = hidd::parse_method(o.method);
    const std::size_t steps = hidd::step_count(o.seconds, tau);
    const std::vector<double> f = hidd::gen_signal(signal, tau, steps);

    Output out(o.out);
    std::ostream& os = out.stream();
    os << "k,t,f,b_k,case,r0";
    for (int i = 0; i <= n; ++i) os << ",z" << i;
    os << '\n';

    hidd::State state = hidd::State::zeros(n);
    hidd::OpCounter ops;
    std::string line;
    for (std::size_t k = 0; k < steps; ++k) {
        switch (method) {
            case hidd::Method::NaiveNoTables: hidd::advance_untabulated(state, f[k], params, ops); break;
            case hidd::Method::DirectEval:
                hidd::advance<hidd::EvalStrategy::Direct, hidd::UpdateForm::SumOfPowers>(state, f[k], tables, ops);
                break;
            case hidd::Method::HalfHorner:
                hidd::advance<hidd::EvalStrategy::HornerSeparate, hidd::UpdateForm::HornerInR>(state, f[k], tables,
                                                                                             ops);
                break;
            case hidd::Method::FullHorner:
                hidd::advance<hidd::EvalStrategy::HornerFused, hidd::UpdateForm::HornerInR>(state, f[k], tables, ops);
                break;
            case hidd::Method::ShawTraub:
                hidd::advance<hidd::EvalStrategy::ShawTraub, hidd::UpdateForm::HornerInR>(state, f[k], tables, ops);
                break;
        }
        const hidd::StepTrace& tr = *state.last;
        line = fmt::format("{},{},{},{},{},{}", tr.k, hidd::format_double(static_cast<double>(k) * tau),
                           hidd::format_double(tr.f_k), hidd::format_double(tr.b_k), hidd::to_string(tr.kind),
                           hidd::format_double(tr.r0));
        for (double z : state.z) {
            line += ',';
            line += hidd::format_double(z);
        }
        line += '\n';
        os << line;
    }
    return kExitOk;
}

int cmd_bench(const BenchOptions& o) {
    hidd::Config cfg = base_config(o.config);
    hidd::BenchConfig bench = cfg.bench;
    if (!o.n_values.empty()) bench.n_values = o.n_values;
    if (!o.horizons.empty()) bench.horizons = o.horizons;
    if (!o.methods.empty()) {
        bench.methods.clear();
        for (const auto& m : o.methods) bench.methods.push_back(hidd::parse_method(m));
    }
    if (o.reps) bench.repetitions = *o.reps;
    if (o.tau) bench.tau = *o.tau;
    if (o.count_only) bench.timing = false;

    const hidd::BenchReport report = hidd::run_bench(bench, cfg.signal);
    Output out(o.out);
    hidd::write_bench_csv(out.stream(), report);
    return kExitOk;
}

int cmd_complexity(const ComplexityOptions& o) {
    const hidd::ComplexityTable table = hidd::complexity_table(o.from, o.to);
    Output out(o.out);
    hidd::write_complexity_csv(out.stream(), table);
    return kExitOk;
}

int cmd_validate(const ValidateOptions& o) {
    hidd::validation::SuiteOptions opt;
    opt.include_bench = !o.skip_bench;
    opt.seed = o.seed;
    bool ok = true;
    for (const auto& r : hidd::validation::run_acceptance(opt)) {
        std::cout << hidd::validation::format_result(r) << std::endl;
        ok = ok && r.passed;
    }
    return ok ? kExitOk : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Implicit discrete-time homogeneous differentiator: simulation, benchmarks, complexity models"};
    app.require_subcommand(1);

    RunOptions run_opt;
    auto* run = app.add_subcommand("run", "Simulate one configuration and emit the per-step trace CSV");
    run->add_option("--config", run_opt.config, "JSON config file")->check(CLI::ExistingFile);
    run->add_option("--n", run_opt.n, "Differentiator order")->check(CLI::PositiveNumber);
    run->add_option("--tau", run_opt.tau, "Sampling period [s]");
    run->add_option("--L", run_opt.L, "Lipschitz constant of the n-th derivative");
    run->add_option("--lambda", run_opt.lambda, "Gains lambda_0..lambda_n")->delimiter(',');
    run->add_option("--gains", run_opt.gain_set, "Gain set when --lambda is absent: nonrecursive|standard")
        ->capture_default_str();
    run->add_option("--signal", run_opt.signal, "sine|sum_of_sines|ramp|polynomial|zero|default");
    run->add_option("--seconds", run_opt.seconds, "Simulated horizon [s]")->capture_default_str();
    run->add_option("--noise", run_opt.noise, "Uniform noise amplitude");
    run->add_option("--seed", run_opt.seed, "Noise seed (HIDD_SEED overrides)");
    run->add_option("--method", run_opt.method, "naive|direct|half-horner|full-horner|shaw-traub")
        ->capture_default_str();
    run->add_option("--out", run_opt.out, "Output file (default stdout)");

    BenchOptions bench_opt;
    auto* bench = app.add_subcommand("bench", "Benchmark the methods and emit the report CSV");
    bench->add_option("--config", bench_opt.config, "JSON config file")->check(CLI::ExistingFile);
    bench->add_option("--n", bench_opt.n_values, "Orders to benchmark")->delimiter(',');
    bench->add_option("--horizons", bench_opt.horizons, "Simulated horizons [s]")->delimiter(',');
    bench->add_option("--methods", bench_opt.methods, "Methods to run")->delimiter(',');
    bench->add_option("--reps", bench_opt.reps, "Timed repetitions per cell (median reported)");
    bench->add_option("--tau", bench_opt.tau, "Sampling period [s]");
    bench->add_flag("--count-only", bench_opt.count_only, "Skip timing, report op tallies only");
    bench->add_option("--out", bench_opt.out, "Output file (default stdout)");

    ComplexityOptions cx_opt;
    auto* complexity = app.add_subcommand("complexity", "Emit the closed-form complexity table CSV");
    complexity->add_option("--from", cx_opt.from, "Smallest order")->capture_default_str();
    complexity->add_option("--to", cx_opt.to, "Largest order")->capture_default_str();
    complexity->add_option("--out", cx_opt.out, "Output file (default stdout)");

    ValidateOptions val_opt;
    auto* validate = app.add_subcommand("validate", "Run the acceptance checks");
    validate->add_flag("--skip-bench", val_opt.skip_bench, "Skip the wall-clock benchmark check");
    validate->add_option("--seed", val_opt.seed, "Seed for the randomized corpora")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        std::cout << app.help("", CLI::AppFormatMode::Normal);
        return kExitOk;
    } catch (const CLI::CallForAllHelp&) {
        std::cout << app.help("", CLI::AppFormatMode::All);
        return kExitOk;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            return app.exit(e);
        }
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    }

    try {
        if (*run) return cmd_run(run_opt);
        if (*bench) return cmd_bench(bench_opt);
        if (*complexity) return cmd_complexity(cx_opt);
        if (*validate) return cmd_validate(val_opt);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const hidd::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        const bool usage = e.code() == hidd::ErrorCode::BadConfig || e.code() == hidd::ErrorCode::BadRange ||
                           e.code() == hidd::ErrorCode::NonPositive ||
                           e.code() == hidd::ErrorCode::GainCountMismatch ||
                           e.code() == hidd::ErrorCode::UnsupportedOrder ||
                           e.code() == hidd::ErrorCode::GainUnavailable;
        return usage ? kExitUsage : kExitValidation;
    }
    return kExitUsage;
}
