#include "tempscale_cli/config.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "tempscale/errors.hpp"

namespace tempscale::cli {

namespace {

using nlohmann::json;

enum class Type { Number, Integer, Unsigned, Boolean, Text, Choice };

struct Key {
    std::string name;
    Type type;
    std::vector<std::string> choices;
    std::function<json(const CliConfig&)> get;
    std::function<void(CliConfig&, const json&)> set;
};

template <typename E>
struct EnumNames {
    std::vector<std::pair<E, std::string>> names;

    std::string to(E e) const {
        for (const auto& [v, s] : names)
            if (v == e) return s;
        return {};
    }
    E from(const std::string& s) const {
        for (const auto& [v, n] : names)
            if (n == s) return v;
        throw std::logic_error("unmapped choice");
    }
    std::vector<std::string> list() const {
        std::vector<std::string> out;
        for (const auto& p : names) out.push_back(p.second);
        return out;
    }
};

const EnumNames<KernelFamily> kFamily{{{KernelFamily::LimitKernel, "limit"},
                                       {KernelFamily::UniformCascade, "uniform"},
                                       {KernelFamily::Gaussian, "gaussian"}}};
const EnumNames<Discretization> kDisc{
    {{Discretization::VarianceMatched, "variance-matched"}, {Discretization::BackwardEuler, "backward-euler"}}};
const EnumNames<NormMode> kMode{{{NormMode::Variance, "variance"}, {NormMode::Lp, "lp"}}};
const EnumNames<PolarityFilter> kPolarity{
    {{PolarityFilter::Max, "max"}, {PolarityFilter::Min, "min"}, {PolarityFilter::Both, "both"}}};

Key number(std::string name, double PipelineConfig::*field) {
    return {std::move(name), Type::Number, {}, [field](const CliConfig& c) { return json(c.pipeline.*field); },
            [field](CliConfig& c, const json& v) { c.pipeline.*field = v.get<double>(); }};
}

Key integer(std::string name, int PipelineConfig::*field) {
    return {std::move(name), Type::Integer, {}, [field](const CliConfig& c) { return json(c.pipeline.*field); },
            [field](CliConfig& c, const json& v) { c.pipeline.*field = v.get<int>(); }};
}

Key boolean(std::string name, bool PipelineConfig::*field) {
    return {std::move(name), Type::Boolean, {}, [field](const CliConfig& c) { return json(c.pipeline.*field); },
            [field](CliConfig& c, const json& v) { c.pipeline.*field = v.get<bool>(); }};
}

Key path(std::string name, std::string OutputPaths::*field) {
    return {std::move(name), Type::Text, {}, [field](const CliConfig& c) { return json(c.output.*field); },
            [field](CliConfig& c, const json& v) { c.output.*field = v.get<std::string>(); }};
}

template <typename E>
Key choice(std::string name, const EnumNames<E>& names, std::function<E&(CliConfig&)> ref) {
    return {std::move(name), Type::Choice, names.list(),
            [&names, ref](const CliConfig& c) {
                CliConfig copy = c;
                return json(names.to(ref(copy)));
            },
            [&names, ref](CliConfig& c, const json& v) { ref(c) = names.from(v.get<std::string>()); }};
}

const std::vector<Key>& keys() {
    static const std::vector<Key> table = [] {
        std::vector<Key> k;
        k.push_back(choice<KernelFamily>("kernel.family", kFamily, [](CliConfig& c) -> KernelFamily& { return c.pipeline.family; }));
        k.push_back(number("kernel.dt", &PipelineConfig::dt));
        k.push_back(number("kernel.c", &PipelineConfig::c));
        k.push_back(number("kernel.tau_min", &PipelineConfig::tau_min));
        k.push_back(number("kernel.tau_max", &PipelineConfig::tau_max));
        k.push_back(integer("kernel.guard", &PipelineConfig::guard));
        k.push_back(integer("kernel.gaussian_levels_per_octave", &PipelineConfig::gaussian_levels_per_octave));
        k.push_back(number("kernel.gaussian_k_cut", &PipelineConfig::gaussian_k_cut));
        k.push_back(number("kernel.mu", &PipelineConfig::mu));
        k.push_back(integer("kernel.uniform_levels", &PipelineConfig::uniform_levels));
        k.push_back(choice<Discretization>("kernel.discretization", kDisc,
                                           [](CliConfig& c) -> Discretization& { return c.pipeline.discretization; }));
        k.push_back(choice<NormMode>("normalization.mode", kMode,
                                     [](CliConfig& c) -> NormMode& { return c.pipeline.normalization.mode; }));
        k.push_back({"normalization.order", Type::Integer, {},
                     [](const CliConfig& c) { return json(c.pipeline.normalization.order); },
                     [](CliConfig& c, const json& v) { c.pipeline.normalization.order = v.get<int>(); }});
        k.push_back({"normalization.value", Type::Number, {},
                     [](const CliConfig& c) { return json(c.pipeline.normalization.value); },
                     [](CliConfig& c, const json& v) { c.pipeline.normalization.value = v.get<double>(); }});
        k.push_back(number("detector.sign", &PipelineConfig::sign));
        k.push_back(choice<PolarityFilter>("detector.polarity", kPolarity,
                                           [](CliConfig& c) -> PolarityFilter& { return c.pipeline.polarity; }));
        k.push_back(number("detector.min_magnitude", &PipelineConfig::min_magnitude));
        k.push_back(boolean("detector.post_filter", &PipelineConfig::post_filter));
        k.push_back(boolean("detector.delay_compensation", &PipelineConfig::delay_compensation));
        k.push_back(boolean("quadrature.enabled", &PipelineConfig::quasi_quadrature));
        k.push_back(number("quadrature.Gamma", &PipelineConfig::qq_Gamma));
        k.push_back(number("quadrature.gamma", &PipelineConfig::qq_gamma));
        k.push_back(boolean("profile.enabled", &PipelineConfig::scale_profile));
        k.push_back({"profile.skip", Type::Unsigned, {}, [](const CliConfig& c) { return json(c.pipeline.profile_skip); },
                     [](CliConfig& c, const json& v) { c.pipeline.profile_skip = v.get<std::size_t>(); }});
        k.push_back(path("output.extrema", &OutputPaths::extrema));
        k.push_back(path("output.response", &OutputPaths::response));
        k.push_back(path("output.quadrature", &OutputPaths::quadrature));
        k.push_back(path("output.profile", &OutputPaths::profile));
        return k;
    }();
    return table;
}

const Key& find_key(const std::string& name) {
    for (const auto& k : keys())
        if (k.name == name) return k;
    throw ConfigError(name, "unknown key");
}

void check_type(const Key& key, const json& v) {
    bool ok = false;
    std::string want;
    switch (key.type) {
        case Type::Number:
            ok = v.is_number();
            want = "a number";
            break;
        case Type::Integer:
            ok = v.is_number_integer() && v.get<long long>() >= INT32_MIN && v.get<long long>() <= INT32_MAX;
            want = "an integer";
            break;
        case Type::Unsigned:
            ok = v.is_number_unsigned() || (v.is_number_integer() && v.get<long long>() >= 0);
            want = "a non-negative integer";
            break;
        case Type::Boolean:
            ok = v.is_boolean();
            want = "true or false";
            break;
        case Type::Text:
            ok = v.is_string();
            want = "a string";
            break;
        case Type::Choice: {
            want = "one of";
            for (const auto& c : key.choices) want += " " + c;
            if (v.is_string())
                for (const auto& c : key.choices) ok = ok || v.get<std::string>() == c;
            break;
        }
    }
    if (!ok) throw ConfigError(key.name, "expected " + want + ", got " + v.dump());
}

void require(bool ok, const std::string& field, const std::string& message) {
    if (!ok) throw ConfigError(field, message);
}

}  // namespace

const std::vector<std::string>& config_keys() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n;
        for (const auto& k : keys()) n.push_back(k.name);
        return n;
    }();
    return names;
}

nlohmann::json to_json(const CliConfig& config) {
    json doc = json::object();
    for (const auto& k : keys()) doc[k.name] = k.get(config);
    return doc;
}

CliConfig from_json(const nlohmann::json& doc, const CliConfig& base) {
    if (!doc.is_object()) throw ConfigError("", "document must be a flat object");
    CliConfig out = base;
    for (const auto& [name, value] : doc.items()) {
        const Key& key = find_key(name);
        check_type(key, value);
        key.set(out, value);
    }
    return out;
}

nlohmann::json parse_value(const std::string& key_name, const std::string& text) {
    const Key& key = find_key(key_name);
    json v;
    switch (key.type) {
        case Type::Text:
        case Type::Choice:
            v = text;
            break;
        case Type::Boolean:
            if (text == "true" || text == "1" || text == "on")
                v = true;
            else if (text == "false" || text == "0" || text == "off")
                v = false;
            else
                v = text;
            break;
        default:
            v = json::parse(text, nullptr, false);
            if (v.is_discarded()) v = text;
    }
    check_type(key, v);
    return v;
}

void apply_override(CliConfig& config, const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) throw ConfigError(assignment, "override must have the form key=value");
    const std::string name = assignment.substr(0, eq);
    json doc = json::object();
    doc[name] = parse_value(name, assignment.substr(eq + 1));
    config = from_json(doc, config);
}

CliConfig load_config(const std::string& file, const CliConfig& base) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open config file '" + file + "'");
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(file + ": " + e.what());
    }
    return from_json(doc, base);
}

std::string dump_config(const CliConfig& config) {
    nlohmann::ordered_json doc;
    for (const auto& k : keys()) doc[k.name] = k.get(config);
    return doc.dump(2) + "\n";
}

void check(const CliConfig& config) {
    const auto& p = config.pipeline;
    auto finite = [](double v) { return std::isfinite(v); };
    require(finite(p.dt) && p.dt > 0, "kernel.dt", "must be a finite positive number");
    if (p.family == KernelFamily::UniformCascade) {
        require(finite(p.mu) && p.mu > 0, "kernel.mu", "must be > 0");
        require(p.uniform_levels >= 3, "kernel.uniform_levels", "must be >= 3");
    } else {
        require(finite(p.c) && p.c > 1, "kernel.c", "must be > 1");
        require(finite(p.tau_min) && p.tau_min > 0, "kernel.tau_min", "must be > 0");
        require(finite(p.tau_max) && p.tau_max > p.tau_min, "kernel.tau_max", "must exceed kernel.tau_min");
        require(p.guard >= 0, "kernel.guard", "must be >= 0");
        require(p.gaussian_levels_per_octave >= 0, "kernel.gaussian_levels_per_octave", "must be >= 0");
        require(finite(p.gaussian_k_cut) && p.gaussian_k_cut > 0, "kernel.gaussian_k_cut", "must be > 0");
    }
    require(p.normalization.order == 1 || p.normalization.order == 2, "normalization.order", "must be 1 or 2");
    if (p.normalization.mode == NormMode::Lp)
        require(p.normalization.value > 0 && p.normalization.value <= 1, "normalization.value", "p must be in (0, 1]");
    else
        require(finite(p.normalization.value) && p.normalization.value >= 0, "normalization.value",
                "gamma must be >= 0");
    require(p.sign == 1.0 || p.sign == -1.0, "detector.sign", "must be +1 or -1");
    require(finite(p.min_magnitude) && p.min_magnitude >= 0, "detector.min_magnitude", "must be >= 0");
    require(p.qq_Gamma >= 0 && p.qq_Gamma < 1, "quadrature.Gamma", "must be in [0, 1)");
    require(finite(p.qq_gamma) && p.qq_gamma >= 0, "quadrature.gamma", "must be >= 0");
    try {
        validate(p);
    } catch (const DomainError& e) {
        throw ConfigError("kernel", e.what());
    }
}

}  // namespace tempscale::cli
