#include "tempscale_cli/io.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <ostream>

#include <nlohmann/json.hpp>

namespace tempscale::cli {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        out.push_back(trim(line.substr(start, comma == std::string_view::npos ? line.npos : comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

std::optional<double> to_number(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) return std::nullopt;
    return v;
}

std::string where(const std::string& source, std::size_t line) { return source + ":" + std::to_string(line) + ": "; }

}  // namespace

CsvSampleReader::CsvSampleReader(std::istream& in, std::string source) : in_(in), source_(std::move(source)) {
    std::string text;
    while (std::getline(in_, text)) {
        ++line_;
        if (trim(text).empty()) continue;
        const auto cells = split(text);
        bool numeric = true;
        for (auto c : cells) numeric = numeric && to_number(c).has_value();
        if (numeric) throw InputError(where(source_, line_) + "expected a header row");
        if (cells.size() != 1 && cells.size() != 2)
            throw InputError(where(source_, line_) + "expected 1 or 2 columns, found " + std::to_string(cells.size()));
        columns_ = cells.size();
        return;
    }
    throw InputError(source_ + ": empty input");
}

bool CsvSampleReader::read_row(std::vector<double>& fields) {
    std::string text;
    while (std::getline(in_, text)) {
        ++line_;
        if (trim(text).empty()) continue;
        const auto cells = split(text);
        if (cells.size() != columns_)
            throw InputError(where(source_, line_) + "expected " + std::to_string(columns_) + " columns, found " +
                             std::to_string(cells.size()));
        fields.clear();
        for (auto c : cells) {
            const auto v = to_number(c);
            if (!v) throw InputError(where(source_, line_) + "cannot parse '" + std::string(c) + "' as a number");
            fields.push_back(*v);
        }
        return true;
    }
    return false;
}

std::optional<double> CsvSampleReader::next() {
    std::vector<double> f;
    if (!read_row(f)) {
        if (count_ == 0) throw InputError(source_ + ": empty input (header only)");
        return std::nullopt;
    }
    if (columns_ == 2) {
        const double t = f[0];
        if (count_ == 0) {
            t0_ = t;
        } else {
            if (!(t > last_t_)) throw InputError(where(source_, line_) + "timestamps must increase strictly");
            const double step = t - last_t_;
            if (!dt_) {
                dt_ = step;
            } else if (std::abs(step - *dt_) > kUniformTolerance * std::abs(*dt_)) {
                throw InputError(where(source_, line_) + "non-uniform sampling: step " + std::to_string(step) +
                                 " differs from " + std::to_string(*dt_));
            }
        }
        last_t_ = t;
    }
    ++count_;
    return f.back();
}

Signal read_csv(std::istream& in, const std::string& source) {
    CsvSampleReader reader(in, source);
    Signal s;
    while (const auto v = reader.next()) s.values.push_back(*v);
    s.t0 = reader.t0();
    s.dt = reader.dt();
    return s;
}

std::string extremum_json(const ScaleSpaceExtremum& e, double t0) {
    nlohmann::ordered_json j;
    j["t"] = t0 + e.time;
    j["t_compensated"] = t0 + e.delay_compensated_time;
    j["sigma_hat"] = e.sigma_hat;
    j["tau_hat"] = e.tau_hat;
    j["level"] = e.level_index;
    j["polarity"] = e.polarity == Polarity::Max ? "max" : "min";
    j["value"] = e.value;
    j["suppressed"] = e.suppressed;
    return j.dump();
}

void write_extrema(std::ostream& out, const std::vector<ScaleSpaceExtremum>& extrema, double t0) {
    for (const auto& e : extrema) out << extremum_json(e, t0) << '\n';
}

void write_plane_csv(std::ostream& out, const Plane& plane, const std::vector<double>& tau, double t0, double dt) {
    const auto old = out.precision(17);
    out << "tau";
    for (std::size_t i = 0; i < plane.samples(); ++i) out << ',' << t0 + dt * static_cast<double>(i);
    out << '\n';
    for (std::size_t k = 0; k < plane.levels(); ++k) {
        out << tau[k];
        for (double v : plane.row(k)) out << ',' << v;
        out << '\n';
    }
    out.precision(old);
}

void write_profile_csv(std::ostream& out, const ScaleProfile& profile) {
    const auto old = out.precision(17);
    out << "level,tau,sigma,value,peak\n";
    for (std::size_t k = 0; k < profile.tau.size(); ++k) {
        bool peak = false;
        for (const auto& p : profile.peaks) peak = peak || p.level == k;
        out << k << ',' << profile.tau[k] << ',' << std::sqrt(profile.tau[k]) << ',' << profile.values[k] << ','
            << (peak ? 1 : 0) << '\n';
    }
    out.precision(old);
}

OutputFile::OutputFile(const std::string& path, std::ostream& standard) : standard_(standard) {
    if (path == "-") return;
    file_.open(path);
    if (!file_) throw std::runtime_error("cannot open output file '" + path + "'");
}

void write_result(const CliConfig& config, const PipelineResult& result, double t0, std::ostream& standard) {
    const auto& o = config.output;
    const double dt = config.pipeline.dt;
    if (!o.extrema.empty()) {
        OutputFile f(o.extrema, standard);
        write_extrema(f.stream(), result.extrema, t0);
    }
    if (!o.response.empty()) {
        OutputFile f(o.response, standard);
        write_plane_csv(f.stream(), result.response.values, result.space.tau, t0, dt);
    }
    if (!o.quadrature.empty() && result.quasi_quadrature) {
        OutputFile f(o.quadrature, standard);
        write_plane_csv(f.stream(), *result.quasi_quadrature, result.space.tau, t0, dt);
    }
    if (!o.profile.empty() && result.profile) {
        OutputFile f(o.profile, standard);
        write_profile_csv(f.stream(), *result.profile);
    }
}

}  // namespace tempscale::cli
