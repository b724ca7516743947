// Copyright 2026 The fastdirect Authors
// SPDX-License-Identifier: Apache-2.0

#include "fastdirect/config.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace fastdirect {

namespace {

using json = nlohmann::ordered_json;

// Reads one JSON object, remembering which keys were consumed so leftovers can be rejected.
class Section {
public:
    Section(const json& node, std::string path) : node_(node), path_(std::move(path)) {
        if (!node_.is_object()) throw ConfigError(path_ + ": expected an object");
    }

    bool has(const std::string& key) const { return node_.contains(key); }

    const json& raw(const std::string& key) {
        if (!node_.contains(key)) throw ConfigError(field(key) + ": required key is missing");
        seen_.insert(key);
        return node_.at(key);
    }

    template <typename T>
    T get(const std::string& key) {
        const json& value = raw(key);
        try {
            return value.get<T>();
        } catch (const json::exception&) {
            throw ConfigError(field(key) + ": wrong type (" + value.dump() + ")");
        }
    }

    template <typename T>
    T get(const std::string& key, T fallback) {
        return has(key) ? get<T>(key) : fallback;
    }

    std::size_t get_count(const std::string& key) {
        const json& value = raw(key);
        if (!value.is_number_integer() || value.get<long long>() < 0) {
            throw ConfigError(field(key) + ": expected a nonnegative integer (" + value.dump() + ")");
        }
        return value.get<std::size_t>();
    }

    int get_int(const std::string& key, int fallback) {
        if (!has(key)) return fallback;
        const json& value = raw(key);
        if (!value.is_number_integer()) throw ConfigError(field(key) + ": expected an integer (" + value.dump() + ")");
        return value.get<int>();
    }

    Vector get_vector(const std::string& key) {
        const json& value = raw(key);
        if (!value.is_array()) throw ConfigError(field(key) + ": expected an array of numbers");
        Vector v(static_cast<Eigen::Index>(value.size()));
        for (std::size_t i = 0; i < value.size(); ++i) {
            if (!value[i].is_number()) throw ConfigError(field(key) + ": expected an array of numbers");
            v[static_cast<Eigen::Index>(i)] = value[i].get<double>();
        }
        return v;
    }

    Section sub(const std::string& key) { return Section(raw(key), field(key)); }

    std::string field(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

    void finish() const {
        for (const auto& [key, value] : node_.items()) {
            if (!seen_.count(key)) throw ConfigError(field(key) + ": unknown key");
        }
    }

private:
    const json& node_;
    std::string path_;
    std::set<std::string> seen_;
};

// Runs fn and prefixes any ConfigError with the field it belongs to.
template <typename Fn>
void within(const std::string& field, Fn&& fn) {
    try {
        fn();
    } catch (const ConfigError& e) {
        throw ConfigError(field + ": " + e.what());
    } catch (const DimensionError& e) {
        throw ConfigError(field + ": " + e.what());
    }
}

json vector_json(const Vector& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v[i]);
    return out;
}

json matrix_json(const Matrix& m) {
    json out = json::array();
    for (Eigen::Index r = 0; r < m.rows(); ++r) out.push_back(vector_json(m.row(r).transpose()));
    return out;
}

Matrix parse_matrix(const json& node, const std::string& field, Eigen::Index dim) {
    if (!node.is_array() || static_cast<Eigen::Index>(node.size()) != dim) {
        throw ConfigError(field + ": expected a " + std::to_string(dim) + "x" + std::to_string(dim) + " array");
    }
    Matrix m(dim, dim);
    for (Eigen::Index r = 0; r < dim; ++r) {
        const json& row = node[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != dim) {
            throw ConfigError(field + ": expected a " + std::to_string(dim) + "x" + std::to_string(dim) + " array");
        }
        for (Eigen::Index c = 0; c < dim; ++c) {
            if (!row[static_cast<std::size_t>(c)].is_number()) throw ConfigError(field + ": expected numbers");
            m(r, c) = row[static_cast<std::size_t>(c)].get<double>();
        }
    }
    return m;
}

std::vector<MixtureComponent> parse_model(Section section) {
    std::vector<MixtureComponent> components;
    if (section.has("preset")) {
        const auto name = section.get<std::string>("preset");
        if (name != "benchmark-2d") throw ConfigError(section.field("preset") + ": unknown model preset '" + name + "'");
        components = benchmark_components();
    } else {
        const json& list = section.raw("components");
        if (!list.is_array() || list.empty()) throw ConfigError(section.field("components") + ": expected a nonempty array");
        for (std::size_t i = 0; i < list.size(); ++i) {
            Section c(list[i], section.field("components") + "[" + std::to_string(i) + "]");
            MixtureComponent component;
            component.weight = c.get<double>("weight");
            component.mean = c.get_vector("mean");
            const auto dim = component.mean.size();
            if (c.has("covariance") == c.has("variance")) {
                throw ConfigError(c.field("covariance") + ": give exactly one of covariance or variance");
            }
            if (c.has("covariance")) {
                component.covariance = parse_matrix(c.raw("covariance"), c.field("covariance"), dim);
            } else {
                component.covariance = c.get<double>("variance") * Matrix::Identity(dim, dim);
            }
            c.finish();
            components.push_back(std::move(component));
        }
    }
    section.finish();
    return components;
}

ScheduleSpec parse_schedule(Section section) {
    ScheduleSpec spec;
    within(section.field("sampler"), [&] { spec.kind = sampler_kind_from_string(section.get<std::string>("sampler")); });
    spec.steps = section.get_int("steps", spec.steps);
    if (spec.kind == SamplerKind::ddim_eta) {
        spec.eta = section.get<double>("eta", spec.eta);
    } else if (section.has("eta")) {
        throw ConfigError(section.field("eta") + ": only applies to the ddim-eta sampler");
    }
    section.finish();
    return spec;
}

StepSize parse_step(Section& section) {
    StepSize step;
    step.value = section.get<double>("step_size", step.value);
    step.normalized = section.get<bool>("step_normalized", step.normalized);
    return step;
}

void parse_method(Section section, ExperimentConfig& config) {
    within(section.field("name"), [&] { config.method = method_kind_from_string(section.get<std::string>("name")); });
    switch (config.method) {
        case MethodKind::fast_direct: {
            auto& fd = config.fast_direct;
            fd.batch_queries = section.get_int("batch_queries", fd.batch_queries);
            fd.batch_size = section.get_int("batch_size", fd.batch_size);
            fd.step = parse_step(section);
            within(section.field("pseudo_target"), [&] {
                fd.surrogate.rule = pseudo_target_rule_from_string(section.get<std::string>("pseudo_target", "gp"));
            });
            within(section.field("kernel"), [&] {
                fd.surrogate.kernel.family = kernel_family_from_string(section.get<std::string>("kernel", "gaussian"));
            });
            fd.surrogate.kernel.lengthscale = section.get<double>("lengthscale", 0.0);
            if (section.has("regularizer") && !section.raw("regularizer").is_null()) {
                fd.surrogate.regularizer = section.get<double>("regularizer");
            } else {
                fd.surrogate.regularizer.reset();
            }
            break;
        }
        case MethodKind::dno: {
            auto& zo = config.dno.zo;
            zo.perturbations = section.get_int("perturbations", zo.perturbations);
            zo.mu = section.get<double>("mu", zo.mu);
            zo.iterations = section.get_int("iterations", zo.iterations);
            zo.learning_rate = section.get<double>("learning_rate", zo.learning_rate);
            zo.normalize_by_mu = section.get<bool>("normalize_by_mu", zo.normalize_by_mu);
            zo.jacobian_step = section.get<double>("jacobian_step", zo.jacobian_step);
            config.dno.repetitions = section.get_int("repetitions", config.dno.repetitions);
            break;
        }
        case MethodKind::random_search:
            if (section.has("row_size")) config.random_search.row_size = section.get_count("row_size");
            break;
        case MethodKind::gnso: {
            auto& g = config.gnso;
            g.gnso.iterations = section.get_int("iterations", g.gnso.iterations);
            g.gnso.step = parse_step(section);
            within(section.field("direction"), [&] {
                g.gnso.direction.kind = direction_kind_from_string(section.get<std::string>("direction", "universal"));
            });
            g.gnso.direction.halvings = section.get_int("halvings", 0);
            g.target = section.get_vector("target");
            g.target_noise_std = section.get<double>("target_noise_std", 0.0);
            break;
        }
    }
    section.finish();
}

ObjectiveSpec parse_objective(Section section) {
    ObjectiveSpec spec;
    within(section.field("kind"), [&] { spec.kind = objective_kind_from_string(section.get<std::string>("kind")); });
    if (section.has("target")) spec.target = section.get_vector("target");
    spec.squared = section.get<bool>("squared", spec.squared);
    spec.scale = section.get<double>("scale", spec.scale);
    if (section.has("coefficients")) spec.coefficients = section.get_vector("coefficients");
    spec.noise_std = section.get<double>("noise_std", spec.noise_std);
    if (section.has("noise_seed")) spec.noise_seed = section.get<std::uint64_t>("noise_seed");
    section.finish();
    return spec;
}

// Applies user keys over the preset; a method section naming a different method replaces the preset's.
json resolve_preset(json user) {
    if (!user.is_object()) throw ConfigError("config: top level must be an object");
    if (!user.contains("preset")) return user;
    if (!user["preset"].is_string()) throw ConfigError("preset: expected a string");
    const std::string name = user["preset"].get<std::string>();
    json base;
    within("preset", [&] { base = json::parse(preset_json(name)); });
    user.erase("preset");
    if (user.contains("method") && user["method"].is_object() && user["method"].contains("name") &&
        user["method"]["name"] != base["method"]["name"]) {
        base.erase("method");
    }
    base.merge_patch(user);
    return base;
}

const std::map<std::string, std::string>& presets() {
    static const std::map<std::string, std::string> table = {
        {"desk-benchmark", R"({
  "model": {"preset": "benchmark-2d"},
  "schedule": {"sampler": "ddim-eta", "steps": 16, "eta": 1.0},
  "method": {"name": "fast_direct", "batch_queries": 30, "batch_size": 8, "step_size": 0.5,
             "step_normalized": true, "pseudo_target": "gp", "kernel": "gaussian", "lengthscale": 0},
  "objective": {"kind": "quantized_rating", "target": [1.665640235470275, 0.9437601569801833], "scale": 1.0},
  "budget": 240,
  "seeds": {"master": 0, "count": 10},
  "output": {"directory": "runs/desk-benchmark", "record_wall_time": false}
})"},
        {"paper-image-defaults", R"({
  "model": {"preset": "benchmark-2d"},
  "schedule": {"sampler": "ddim-eta", "steps": 8, "eta": 1.0},
  "method": {"name": "fast_direct", "batch_queries": 50, "batch_size": 32, "step_size": 80,
             "step_normalized": false, "pseudo_target": "gp", "kernel": "gaussian", "lengthscale": 0},
  "objective": {"kind": "quantized_rating", "target": [1.665640235470275, 0.9437601569801833], "scale": 1.0},
  "budget": 1600,
  "seeds": {"master": 0, "count": 1},
  "output": {"directory": "runs/paper-image-defaults", "record_wall_time": false}
})"},
        {"paper-molecule-defaults", R"({
  "model": {"preset": "benchmark-2d"},
  "schedule": {"sampler": "ddim-eta", "steps": 200, "eta": 1.0},
  "method": {"name": "fast_direct", "batch_queries": 50, "batch_size": 32, "step_size": 0.01,
             "step_normalized": false, "pseudo_target": "historical_optimal"},
  "objective": {"kind": "mode_density"},
  "budget": 1600,
  "seeds": {"master": 0, "count": 1},
  "output": {"directory": "runs/paper-molecule-defaults", "record_wall_time": false}
})"},
        {"desk-dno", R"({
  "model": {"preset": "benchmark-2d"},
  "schedule": {"sampler": "ddim-eta", "steps": 16, "eta": 1.0},
  "method": {"name": "dno", "perturbations": 2, "mu": 0.1, "iterations": 10, "repetitions": 8},
  "objective": {"kind": "quantized_rating", "target": [1.665640235470275, 0.9437601569801833], "scale": 1.0},
  "budget": 240,
  "seeds": {"master": 1000, "count": 10},
  "output": {"directory": "runs/desk-dno", "record_wall_time": false}
})"},
        {"desk-random-search", R"({
  "model": {"preset": "benchmark-2d"},
  "schedule": {"sampler": "ddim-eta", "steps": 16, "eta": 1.0},
  "method": {"name": "random_search", "row_size": 8},
  "objective": {"kind": "quantized_rating", "target": [1.665640235470275, 0.9437601569801833], "scale": 1.0},
  "budget": 240,
  "seeds": {"master": 2000, "count": 10},
  "output": {"directory": "runs/desk-random-search", "record_wall_time": false}
})"},
        {"desk-gnso", R"({
  "model": {"preset": "benchmark-2d"},
  "schedule": {"sampler": "ddim-eta", "steps": 16, "eta": 1.0},
  "method": {"name": "gnso", "iterations": 50, "step_size": 0.5, "step_normalized": true,
             "direction": "universal", "target": [-1.0, 0.0]},
  "objective": {"kind": "target_distance", "target": [-1.0, 0.0]},
  "budget": 0,
  "seeds": {"master": 0, "count": 20},
  "output": {"directory": "runs/desk-gnso", "record_wall_time": false}
})"},
    };
    return table;
}

}  // namespace

std::string to_string(MethodKind kind) {
    switch (kind) {
        case MethodKind::fast_direct: return "fast_direct";
        case MethodKind::dno: return "dno";
        case MethodKind::random_search: return "random_search";
        case MethodKind::gnso: return "gnso";
    }
    return "unknown";
}

MethodKind method_kind_from_string(const std::string& name) {
    for (auto kind : {MethodKind::fast_direct, MethodKind::dno, MethodKind::random_search, MethodKind::gnso}) {
        if (to_string(kind) == name) return kind;
    }
    throw ConfigError("unknown method '" + name + "' (expected fast_direct, dno, random_search or gnso)");
}

std::vector<MixtureComponent> benchmark_components() {
    return {
        {0.5, Vector{{-1.0, 0.0}}, Matrix{{0.10, 0.03}, {0.03, 0.05}}},
        {0.3, Vector{{1.0, 0.5}}, Matrix{{0.02, 0.0}, {0.0, 0.02}}},
        {0.2, Vector{{0.0, -1.2}}, Matrix{{0.05, -0.02}, {-0.02, 0.08}}},
    };
}

std::vector<std::string> preset_names() {
    std::vector<std::string> names;
    for (const auto& [name, text] : presets()) names.push_back(name);
    return names;
}

std::string preset_json(const std::string& name) {
    const auto it = presets().find(name);
    if (it == presets().end()) throw ConfigError("unknown preset '" + name + "'");
    return it->second;
}

std::size_t ExperimentConfig::required_budget() const {
    switch (method) {
        case MethodKind::fast_direct:
            return static_cast<std::size_t>(fast_direct.batch_queries) * static_cast<std::size_t>(fast_direct.batch_size);
        case MethodKind::dno: return dno.zo.evaluations() * static_cast<std::size_t>(dno.repetitions);
        case MethodKind::random_search: return budget;
        case MethodKind::gnso: return 0;
    }
    return 0;
}

void ExperimentConfig::validate() const {
    std::optional<MixtureModel> mixture;
    within("model", [&] { mixture.emplace(components); });
    const auto dim = mixture->dim();
    within("schedule", [&] {
        if (schedule.steps < 1) throw ConfigError("steps must be >= 1");
        (void)schedule.build();
    });
    within("method", [&] {
        switch (method) {
            case MethodKind::fast_direct:
                fast_direct.validate();
                if (fast_direct.surrogate.kernel.lengthscale < 0.0) throw ConfigError("lengthscale must be >= 0");
                if (fast_direct.surrogate.regularizer && !(*fast_direct.surrogate.regularizer >= 0.0)) {
                    throw ConfigError("regularizer must be >= 0");
                }
                break;
            case MethodKind::dno:
                dno.zo.validate();
                if (dno.repetitions < 1) throw ConfigError("repetitions must be >= 1");
                break;
            case MethodKind::random_search:
                if (random_search.row_size < 1) throw ConfigError("row_size must be >= 1");
                break;
            case MethodKind::gnso:
                gnso.gnso.validate();
                (void)gnso.gnso.direction.truncation_step(schedule.steps);
                require_dim(gnso.target, dim, "target");
                if (!(gnso.target_noise_std >= 0.0)) throw ConfigError("target_noise_std must be >= 0");
                break;
        }
    });
    if (method == MethodKind::fast_direct || method == MethodKind::gnso) {
        within("schedule.eta", [&] { Sampler(*mixture, schedule.build()).require_stochastic(); });
    }
    within("objective", [&] {
        if (objective.target.size() != 0) require_dim(objective.target, dim, "target");
        if (objective.coefficients.size() != 0) require_dim(objective.coefficients, dim, "coefficients");
        (void)Objective(objective, mixture);
    });
    if (method == MethodKind::random_search && budget < 1) throw ConfigError("budget: random_search needs budget >= 1");
    if (budget != required_budget()) {
        throw ConfigError("budget: declared " + std::to_string(budget) + " but " + to_string(method) + " consumes " +
                          std::to_string(required_budget()) + " evaluations per seed");
    }
    if (seed_count < 1) throw ConfigError("seeds.count: must be >= 1");
    if (output_directory.empty()) throw ConfigError("output.directory: must not be empty");
}

ExperimentConfig parse_config(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config: malformed JSON: ") + e.what());
    }
    root = resolve_preset(std::move(root));

    ExperimentConfig config;
    Section top(root, "");
    config.components = parse_model(top.sub("model"));
    config.schedule = parse_schedule(top.sub("schedule"));
    parse_method(top.sub("method"), config);
    config.objective = parse_objective(top.sub("objective"));
    config.budget = top.has("budget") ? top.get_count("budget") : 0;
    {
        Section seeds = top.sub("seeds");
        config.master_seed = seeds.get<std::uint64_t>("master", 0);
        config.seed_count = seeds.get_int("count", 1);
        seeds.finish();
    }
    if (top.has("output")) {
        Section output = top.sub("output");
        config.output_directory = output.get<std::string>("directory", config.output_directory.string());
        config.record_wall_time = output.get<bool>("record_wall_time", false);
        output.finish();
    }
    const int threads = top.get_int("threads", 1);
    if (threads < 0) throw ConfigError("threads: must be >= 0");
    config.threads = static_cast<unsigned>(threads);
    top.finish();

    config.fast_direct.threads = config.threads;
    config.fast_direct.record_wall_time = config.record_wall_time;
    config.validate();
    return config;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot read " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

std::string config_to_json(const ExperimentConfig& config) {
    json root;
    json components = json::array();
    for (const auto& c : config.components) {
        components.push_back({{"weight", c.weight}, {"mean", vector_json(c.mean)}, {"covariance", matrix_json(c.covariance)}});
    }
    root["model"] = {{"components", components}};
    root["schedule"] = {{"sampler", to_string(config.schedule.kind)}, {"steps", config.schedule.steps}};
    if (config.schedule.kind == SamplerKind::ddim_eta) root["schedule"]["eta"] = config.schedule.eta;

    json method = {{"name", to_string(config.method)}};
    switch (config.method) {
        case MethodKind::fast_direct: {
            const auto& fd = config.fast_direct;
            method["batch_queries"] = fd.batch_queries;
            method["batch_size"] = fd.batch_size;
            method["step_size"] = fd.step.value;
            method["step_normalized"] = fd.step.normalized;
            method["pseudo_target"] = to_string(fd.surrogate.rule);
            method["kernel"] = to_string(fd.surrogate.kernel.family);
            method["lengthscale"] = fd.surrogate.kernel.lengthscale;
            method["regularizer"] = fd.surrogate.regularizer ? json(*fd.surrogate.regularizer) : json(nullptr);
            break;
        }
        case MethodKind::dno: {
            const auto& zo = config.dno.zo;
            method["perturbations"] = zo.perturbations;
            method["mu"] = zo.mu;
            method["iterations"] = zo.iterations;
            method["learning_rate"] = zo.learning_rate;
            method["normalize_by_mu"] = zo.normalize_by_mu;
            method["jacobian_step"] = zo.jacobian_step;
            method["repetitions"] = config.dno.repetitions;
            break;
        }
        case MethodKind::random_search: method["row_size"] = config.random_search.row_size; break;
        case MethodKind::gnso: {
            const auto& g = config.gnso;
            method["iterations"] = g.gnso.iterations;
            method["step_size"] = g.gnso.step.value;
            method["step_normalized"] = g.gnso.step.normalized;
            method["direction"] = to_string(g.gnso.direction.kind);
            method["halvings"] = g.gnso.direction.halvings;
            method["target"] = vector_json(g.target);
            method["target_noise_std"] = g.target_noise_std;
            break;
        }
    }
    root["method"] = method;

    const auto& o = config.objective;
    json objective = {{"kind", to_string(o.kind)}};
    if (o.target.size() != 0) objective["target"] = vector_json(o.target);
    objective["squared"] = o.squared;
    objective["scale"] = o.scale;
    if (o.coefficients.size() != 0) objective["coefficients"] = vector_json(o.coefficients);
    objective["noise_std"] = o.noise_std;
    objective["noise_seed"] = o.noise_seed;
    root["objective"] = objective;

    root["budget"] = config.budget;
    root["seeds"] = {{"master", config.master_seed}, {"count", config.seed_count}};
    root["output"] = {{"directory", config.output_directory.string()}, {"record_wall_time", config.record_wall_time}};
    root["threads"] = config.threads;
    return root.dump(2);
}

}  // namespace fastdirect
