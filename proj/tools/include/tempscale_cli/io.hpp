#pragma once

#include <fstream>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tempscale/pipeline.hpp"
#include "tempscale_cli/config.hpp"

namespace tempscale::cli {

/// Malformed input; the message carries "<source>:<line>:" when a line is known.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Signal {
    std::vector<double> values;
    // Start time and sample spacing; dt is taken from the time column when there is one.
    double t0 = 0.0;
    std::optional<double> dt;
};

/// Relative tolerance on the spacing of the time column.
inline constexpr double kUniformTolerance = 1e-9;

/// Single-column or (t, value) CSV with a header row.
Signal read_csv(std::istream& in, const std::string& source = "input");

/// Incremental reader for the stream verb: header first, then one sample per call.
class CsvSampleReader {
public:
    CsvSampleReader(std::istream& in, std::string source = "input");

    /// Next sample, or nothing at end of input. Throws InputError on malformed or out-of-order rows.
    std::optional<double> next();
    std::optional<double> dt() const { return dt_; }
    double t0() const { return t0_; }
    std::size_t line() const { return line_; }

private:
    bool read_row(std::vector<double>& fields);

    std::istream& in_;
    std::string source_;
    std::size_t line_ = 0;
    std::size_t columns_ = 0;
    std::size_t count_ = 0;
    double t0_ = 0.0;
    double last_t_ = 0.0;
    std::optional<double> dt_;
};

/// One JSON object per line: {t, t_compensated, sigma_hat, tau_hat, level, polarity, value, suppressed}.
std::string extremum_json(const ScaleSpaceExtremum& e, double t0);
void write_extrema(std::ostream& out, const std::vector<ScaleSpaceExtremum>& extrema, double t0);

/// Header "tau,t_0,t_1,..." then one row per level.
void write_plane_csv(std::ostream& out, const Plane& plane, const std::vector<double>& tau, double t0, double dt);
/// Columns level,tau,sigma,value,peak.
void write_profile_csv(std::ostream& out, const ScaleProfile& profile);

/// "-" selects the given standard stream; any other path is opened for writing.
class OutputFile {
public:
    OutputFile(const std::string& path, std::ostream& standard);
    std::ostream& stream() { return file_.is_open() ? file_ : standard_; }

private:
    std::ofstream file_;
    std::ostream& standard_;
};

/// Writes every output named in `config.output` that the result provides.
void write_result(const CliConfig& config, const PipelineResult& result, double t0, std::ostream& standard);

}  // namespace tempscale::cli
