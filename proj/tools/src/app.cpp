#include "tempscale_cli/app.hpp"

#include <fstream>
#include <istream>
#include <map>

#include <CLI11.hpp>

#include "tempscale/stream.hpp"
#include "tempscale_cli/config.hpp"
#include "tempscale_cli/demos.hpp"
#include "tempscale_cli/io.hpp"
#include "tempscale_cli/tables.hpp"

namespace tempscale::cli {

namespace {

struct Settings {
    std::string config_file;
    std::vector<std::string> assignments;
    std::map<std::string, std::string> keyed;
    std::map<std::string, CLI::Option*> keyed_options;
};

CliConfig resolve(const Settings& s, CliConfig base) {
    if (!s.config_file.empty()) base = load_config(s.config_file, base);
    for (const auto& a : s.assignments) apply_override(base, a);
    for (const auto& [key, opt] : s.keyed_options)
        if (opt->count() > 0) apply_override(base, key + "=" + s.keyed.at(key));
    check(base);
    return base;
}

class InputSource {
public:
    InputSource(const std::string& path, std::istream& standard) : standard_(standard) {
        if (path == "-") return;
        file_.open(path);
        if (!file_) throw InputError("cannot open input file '" + path + "'");
    }
    std::istream& stream() { return file_.is_open() ? file_ : standard_; }

private:
    std::ifstream file_;
    std::istream& standard_;
};

std::string source_name(const std::string& path) { return path == "-" ? "stdin" : path; }

int cmd_run(CliConfig config, const std::string& input, std::istream& in, std::ostream& out) {
    InputSource src(input, in);
    const Signal signal = read_csv(src.stream(), source_name(input));
    if (signal.dt) config.pipeline.dt = *signal.dt;
    check(config);
    const auto result = run_pipeline(signal.values, config.pipeline);
    write_result(config, result, signal.t0, out);
    return 0;
}

int cmd_stream(CliConfig config, const std::string& input, std::istream& in, std::ostream& out) {
    InputSource src(input, in);
    CsvSampleReader reader(src.stream(), source_name(input));
    // The spacing of a two-column stream is known after its second row.
    std::vector<double> head;
    for (int i = 0; i < 2; ++i)
        if (const auto v = reader.next()) head.push_back(*v);
    if (reader.dt()) config.pipeline.dt = *reader.dt();
    check(config);
    StreamDetector detector(config.pipeline);
    OutputFile sink(config.output.extrema.empty() ? "-" : config.output.extrema, out);
    auto emit = [&](const std::vector<StreamEvent>& events) {
        for (const auto& ev : events) {
            auto j = nlohmann::ordered_json::parse(extremum_json(ev.extremum, reader.t0()));
            j["status"] = ev.confirmed ? "confirmed" : "provisional";
            sink.stream() << j.dump() << '\n';
        }
        if (!events.empty()) sink.stream().flush();
    };
    for (double v : head) emit(detector.push(v));
    while (const auto v = reader.next()) emit(detector.push(*v));
    emit(detector.finish());
    return 0;
}

int cmd_tables(const std::string& name, std::ostream& out) {
    std::vector<std::string> names = name == "all" ? table_names() : std::vector<std::string>{name};
    bool pass = true;
    for (const auto& n : names) {
        const auto report = reproduce_table(n);
        out << "## " << n << '\n' << report.format() << (report.pass() ? "PASS " : "FAIL ") << n << "\n\n";
        pass = pass && report.pass();
    }
    return pass ? 0 : 1;
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Time-causal temporal scale selection", "tempscale"};
    app.require_subcommand(1);
    app.fallthrough();
    Settings s;
    app.add_option("--config", s.config_file, "Flat JSON document of dotted keys")->check(CLI::ExistingFile);
    app.add_option("--set", s.assignments, "Override a config key: --set key=value (repeatable)");
    for (const auto& key : config_keys())
        s.keyed_options[key] = app.add_option("--" + key, s.keyed[key], "Config key " + key)->group("Config keys");

    std::string input = "-";
    auto* run_cmd = app.add_subcommand("run", "Batch pipeline on a CSV signal");
    run_cmd->add_option("input", input, "CSV file, '-' for stdin");
    auto* stream_cmd = app.add_subcommand("stream", "Online detection on a CSV sample stream");
    stream_cmd->add_option("input", input, "CSV file, '-' for stdin");

    std::string table;
    auto* tables_cmd = app.add_subcommand("tables", "Reproduce tabulated reference values");
    tables_cmd->require_subcommand(1);
    auto* reproduce_cmd = tables_cmd->add_subcommand("reproduce", "Recompute a table and check it");
    auto table_choices = table_names();
    table_choices.push_back("all");
    reproduce_cmd->add_option("table", table)->required()->check(CLI::IsMember(table_choices));

    std::string demo;
    auto* demo_cmd = app.add_subcommand("demo", "Built-in demonstrations");
    demo_cmd->add_option("name", demo)->required()->check(CLI::IsMember(demo_names()));

    auto* config_cmd = app.add_subcommand("config", "Print the resolved configuration");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err);
    }

    try {
        if (*run_cmd) return cmd_run(resolve(s, {}), input, in, out);
        if (*stream_cmd) return cmd_stream(resolve(s, {}), input, in, out);
        if (*reproduce_cmd) return cmd_tables(table, out);
        if (*demo_cmd) return run_demo(demo, resolve(s, demo_defaults(demo)), out, err);
        if (*config_cmd) {
            out << dump_config(resolve(s, {}));
            return 0;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}

}  // namespace tempscale::cli
