#include "tempscale_cli/demos.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "tempscale/models.hpp"
#include "tempscale/spatiotemporal.hpp"
#include "tempscale_cli/io.hpp"

namespace tempscale::cli {

namespace {

constexpr double kPi = std::numbers::pi;

// Chirp sin(exp((b - t) / a)) on [0, 1000).
constexpr double kChirpA = 200.0, kChirpB = 1000.0;
// Two sines of periods T and R T.
constexpr double kPeriod = 20.0, kRatio = 300.0;

int chirp(const CliConfig& config, std::ostream& out, std::ostream& log) {
    const auto signal = generate(Chirp{kChirpA, kChirpB}, config.pipeline.dt, 1000.0);
    const auto result = run_pipeline(signal, config.pipeline);
    if (!config.output.extrema.empty()) {
        OutputFile f(config.output.extrema, out);
        write_extrema(f.stream(), result.survivors(), 0.0);
    }
    auto rest = config;
    rest.output.extrema.clear();
    write_result(rest, result, 0.0, out);

    std::vector<std::pair<double, double>> mid;
    for (const auto& e : result.survivors())
        if (e.delay_compensated_time >= 200.0 && e.delay_compensated_time <= 800.0)
            mid.emplace_back(e.delay_compensated_time, e.sigma_hat);
    std::sort(mid.begin(), mid.end());
    bool increasing = true;
    for (std::size_t i = 1; i < mid.size(); ++i) increasing = increasing && mid[i].second > mid[i - 1].second;
    std::vector<double> ratio;
    for (const auto& [t, s] : mid) ratio.push_back(s / (2 * kPi * kChirpA * std::exp((t - kChirpB) / kChirpA)));
    std::sort(ratio.begin(), ratio.end());
    log << "chirp: " << result.survivors().size() << " surviving extrema, " << mid.size()
        << " in t=[200, 800], sigma_hat " << (increasing ? "increasing" : "NOT increasing") << " with t";
    if (!ratio.empty())
        log << ", sigma/lambda in [" << ratio.front() << ", " << ratio.back() << "] median " << ratio[ratio.size() / 2];
    log << '\n';
    return 0;
}

int two_sine(const CliConfig& config, std::ostream& out, std::ostream& log) {
    const auto n = static_cast<std::size_t>(4 * kRatio * kPeriod / config.pipeline.dt);
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = config.pipeline.dt * static_cast<double>(i);
        x[i] = std::sin(2 * kPi * t / kPeriod) + std::sin(2 * kPi * t / (kRatio * kPeriod));
    }
    const auto result = run_pipeline(x, config.pipeline);
    write_result(config, result, 0.0, out);
    if (!result.profile) {
        log << "two-sine: profile.enabled is false, no scale profile computed\n";
        return 0;
    }
    const auto& peaks = result.profile->peaks;
    log << "two-sine: " << peaks.size() << " profile peaks at sigma";
    for (const auto& p : peaks) log << ' ' << p.sigma_hat;
    if (peaks.size() == 2) log << ", ratio " << peaks[1].sigma_hat / peaks[0].sigma_hat << " (periods differ by " << kRatio << ")";
    log << '\n';
    return 0;
}

int blink(const CliConfig& config, std::ostream& out, std::ostream& log) {
    const double s0 = 4.0, mu = config.pipeline.mu;
    const int K0 = 8;
    const std::size_t size = 41, frames = static_cast<std::size_t>(std::ceil(60.0 * mu));
    const auto volume = blink_generator(size, size, frames, 1.0, 1.0, s0, K0, mu);
    std::vector<double> s_list;
    for (int i = 0; i < 9; ++i) s_list.push_back(std::pow(2.0, i / 2.0));
    const auto ladder = build_uniform_ladder(mu, config.pipeline.uniform_levels);
    const auto space = smooth_volume(volume, s_list, ladder);
    const auto field = operator_lgn(space, 2, 1.0, NormalizationSpec::variance(2, 0.75));
    const std::size_t c = size / 2;
    const auto e = joint_scale_at(field, s_list, ladder.tau, ScaleCoordinate::Linear, c, c, Polarity::Max);
    ArgmaxOptions opt;
    opt.lower_limit = 1e-6;
    const double K_ref = continuous_argmax([&](double K) { return signature_peak_uniform(K0, mu, 0.75, K); }, 0.1,
                                           4.0 * K0, opt)
                             .scale;
    nlohmann::ordered_json j;
    j["s0"] = s0;
    j["K0"] = K0;
    j["mu"] = mu;
    j["s_hat"] = e.s_hat;
    j["tau_hat"] = e.tau_hat;
    j["K_hat"] = e.tau_hat / (mu * mu);
    j["K_reference"] = K_ref;
    j["frame"] = e.frame;
    j["value"] = e.value;
    out << j.dump() << '\n';
    log << "blink: s_hat " << e.s_hat << " (s0 " << s0 << "), K_hat " << e.tau_hat / (mu * mu) << " (temporal signature "
        << K_ref << ")\n";
    return 0;
}

}  // namespace

const std::vector<std::string>& demo_names() {
    static const std::vector<std::string> names{"chirp", "two-sine", "blink"};
    return names;
}

CliConfig demo_defaults(const std::string& name) {
    CliConfig c;
    if (name == "chirp") {
        c.pipeline.tau_min = 1.0;
        c.pipeline.tau_max = 4096.0;
        c.pipeline.gaussian_levels_per_octave = 5;
        c.pipeline.min_magnitude = 0.01;
    } else if (name == "two-sine") {
        c.pipeline.tau_min = 1.0;
        c.pipeline.tau_max = 4.0 * std::pow(kRatio * kPeriod, 2);
        c.pipeline.quasi_quadrature = true;
        c.pipeline.scale_profile = true;
        c.output.extrema.clear();
        c.output.profile = "-";
    } else if (name == "blink") {
        c.pipeline.family = KernelFamily::UniformCascade;
        c.pipeline.uniform_levels = 16;
        c.output.extrema.clear();
    } else {
        throw std::invalid_argument("unknown demo '" + name + "'");
    }
    return c;
}

int run_demo(const std::string& name, const CliConfig& config, std::ostream& out, std::ostream& log) {
    if (name == "chirp") return chirp(config, out, log);
    if (name == "two-sine") return two_sine(config, out, log);
    if (name == "blink") return blink(config, out, log);
    throw std::invalid_argument("unknown demo '" + name + "'");
}

}  // namespace tempscale::cli
