#include "erts/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace erts {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& field, const std::string& what) {
    throw std::invalid_argument("config." + field + ": " + what);
}

const json& require_field(const json& j, const std::string& key, const std::string& path) {
    auto it = j.find(key);
    if (it == j.end()) {
        fail(path.empty() ? key : path + "." + key, "missing required field");
    }
    return *it;
}

double as_number(const json& j, const std::string& path) {
    if (!j.is_number()) {
        fail(path, "expected a number");
    }
    return j.get<double>();
}

std::int64_t as_integer(const json& j, const std::string& path) {
    if (!j.is_number_integer()) {
        fail(path, "expected an integer");
    }
    return j.get<std::int64_t>();
}

bool as_bool(const json& j, const std::string& path) {
    if (!j.is_boolean()) {
        fail(path, "expected a boolean");
    }
    return j.get<bool>();
}

std::string as_string(const json& j, const std::string& path) {
    if (!j.is_string()) {
        fail(path, "expected a string");
    }
    return j.get<std::string>();
}

// default grid {1e2, 1e3, 1e4, 5e4}, clipped to [K, horizon]
std::vector<std::int64_t> default_checkpoints(std::int64_t k, std::int64_t horizon) {
    std::vector<std::int64_t> out;
    for (std::int64_t c : {100, 1000, 10000, 50000}) {
        if (c >= k && c <= horizon) {
            out.push_back(c);
        }
    }
    if (out.empty() && horizon >= k) {
        out.push_back(horizon);
    }
    return out;
}

} // namespace

ExperimentConfig parse_config(const nlohmann::json& j) {
    if (!j.is_object()) {
        fail("", "top-level document must be a JSON object");
    }
    if (j.contains("schema_version")) {
        if (as_integer(j["schema_version"], "schema_version") != kSchemaVersion) {
            fail("schema_version", "unsupported version");
        }
    }

    ExperimentConfig c;

    const json& inst = require_field(j, "instance", "");
    const json& arms = require_field(inst, "arms", "instance");
    if (!arms.is_array() || arms.size() < 2) {
        fail("instance.arms", "expected an array of at least two arms");
    }
    for (std::size_t i = 0; i < arms.size(); ++i) {
        const std::string path = "instance.arms[" + std::to_string(i) + "]";
        const json& a = arms[i];
        if (!a.is_object()) {
            fail(path, "expected an object with mean and variance");
        }
        ArmSpec spec;
        spec.mean = as_number(require_field(a, "mean", path), path + ".mean");
        spec.variance = as_number(require_field(a, "variance", path), path + ".variance");
        c.arms.push_back(spec);
    }
    c.gamma = as_number(require_field(inst, "gamma", "instance"), "instance.gamma");
    c.sigma_max_sq =
        as_number(require_field(inst, "sigma_max_sq", "instance"), "instance.sigma_max_sq");

    const json& pols = require_field(j, "policies", "");
    if (!pols.is_array() || pols.empty()) {
        fail("policies", "expected a non-empty array");
    }
    for (std::size_t i = 0; i < pols.size(); ++i) {
        const std::string path = "policies[" + std::to_string(i) + "]";
        const json& p = pols[i];
        if (!p.is_object()) {
            fail(path, "expected an object with a name");
        }
        PolicySpec spec;
        const std::string name = as_string(require_field(p, "name", path), path + ".name");
        try {
            spec.kind = policy_kind_from_name(name);
        } catch (const std::invalid_argument& e) {
            fail(path + ".name", e.what());
        }
        if (spec.kind == PolicyKind::epsilon_greedy_er) {
            spec.epsilon =
                as_number(require_field(p, "epsilon", path), path + ".epsilon");
        }
        c.policies.push_back(spec);
    }

    c.horizon = as_integer(require_field(j, "horizon", ""), "horizon");
    c.n_runs = as_integer(require_field(j, "n_runs", ""), "n_runs");
    const std::int64_t seed = as_integer(require_field(j, "root_seed", ""), "root_seed");
    c.root_seed = static_cast<std::uint64_t>(seed);

    if (j.contains("checkpoints")) {
        const json& cps = j["checkpoints"];
        if (!cps.is_array() || cps.empty()) {
            fail("checkpoints", "expected a non-empty array of integers");
        }
        for (std::size_t i = 0; i < cps.size(); ++i) {
            c.checkpoints.push_back(
                as_integer(cps[i], "checkpoints[" + std::to_string(i) + "]"));
        }
    } else {
        c.checkpoints = default_checkpoints(static_cast<std::int64_t>(c.arms.size()), c.horizon);
    }

    if (j.contains("theory")) {
        const json& t = j["theory"];
        if (t.contains("fixed_xi")) {
            c.theory.fixed_xi = as_number(t["fixed_xi"], "theory.fixed_xi");
        }
        if (t.contains("use_xi_gamma")) {
            c.theory.use_xi_gamma = as_bool(t["use_xi_gamma"], "theory.use_xi_gamma");
        }
        if (t.contains("witness_epsilon")) {
            c.theory.witness_epsilon = as_number(t["witness_epsilon"], "theory.witness_epsilon");
        }
    }

    if (j.contains("output")) {
        const json& o = j["output"];
        if (o.contains("dir")) {
            c.output.dir = as_string(o["dir"], "output.dir");
        }
        if (o.contains("prefix")) {
            c.output.prefix = as_string(o["prefix"], "output.prefix");
        }
    }

    validate_config(c);
    return c;
}

nlohmann::json emit_config(const ExperimentConfig& config) {
    json arms = json::array();
    for (const ArmSpec& a : config.arms) {
        arms.push_back({{"mean", a.mean}, {"variance", a.variance}});
    }
    json pols = json::array();
    for (const PolicySpec& p : config.policies) {
        json entry = {{"name", policy_name(p)}};
        if (p.kind == PolicyKind::epsilon_greedy_er) {
            entry["epsilon"] = p.epsilon;
        }
        pols.push_back(entry);
    }
    return json{
        {"schema_version", kSchemaVersion},
        {"instance",
         {{"arms", arms}, {"gamma", config.gamma}, {"sigma_max_sq", config.sigma_max_sq}}},
        {"policies", pols},
        {"horizon", config.horizon},
        {"n_runs", config.n_runs},
        {"root_seed", static_cast<std::int64_t>(config.root_seed)},
        {"checkpoints", config.checkpoints},
        {"theory",
         {{"fixed_xi", config.theory.fixed_xi},
          {"use_xi_gamma", config.theory.use_xi_gamma},
          {"witness_epsilon", config.theory.witness_epsilon}}},
        {"output", {{"dir", config.output.dir}, {"prefix", config.output.prefix}}},
    };
}

ExperimentConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open config file: " + path);
    }
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw std::invalid_argument("config file " + path + " is not valid JSON: " + e.what());
    }
    return parse_config(j);
}

void validate_config(const ExperimentConfig& config) {
    // instance-level preconditions; reuse the constructor checks so the
    // failure text names the field
    try {
        BanditInstance probe(config.arms, config.gamma, config.sigma_max_sq);
        (void)probe;
    } catch (const std::exception& e) {
        fail("instance", e.what());
    }
    if (config.policies.empty()) {
        fail("policies", "expected at least one policy");
    }
    for (std::size_t i = 0; i < config.policies.size(); ++i) {
        const PolicySpec& p = config.policies[i];
        if (p.kind == PolicyKind::epsilon_greedy_er &&
            (!std::isfinite(p.epsilon) || p.epsilon < 0.0 || p.epsilon > 1.0)) {
            fail("policies[" + std::to_string(i) + "].epsilon", "must be in [0, 1]");
        }
    }
    const auto k = static_cast<std::int64_t>(config.arms.size());
    if (config.horizon < k) {
        fail("horizon", "must be >= the number of arms");
    }
    if (config.n_runs < 1) {
        fail("n_runs", "must be >= 1");
    }
    if (config.checkpoints.empty()) {
        fail("checkpoints", "must be non-empty");
    }
    for (std::size_t i = 0; i < config.checkpoints.size(); ++i) {
        const std::int64_t c = config.checkpoints[i];
        if (c < k || c > config.horizon) {
            fail("checkpoints[" + std::to_string(i) + "]",
                 "must lie in [num_arms, horizon]");
        }
    }
    if (!(config.theory.fixed_xi > 0.0 && config.theory.fixed_xi < 1.0)) {
        fail("theory.fixed_xi", "must be in (0, 1)");
    }
    if (!std::isfinite(config.theory.witness_epsilon) || config.theory.witness_epsilon <= 0.0) {
        fail("theory.witness_epsilon", "must be > 0");
    }
    if (config.output.dir.empty()) {
        fail("output.dir", "must be non-empty");
    }
    if (config.output.prefix.empty()) {
        fail("output.prefix", "must be non-empty");
    }
}

BanditInstance make_instance(const ExperimentConfig& config) {
    return BanditInstance(config.arms, config.gamma, config.sigma_max_sq);
}

XiPolicy make_xi_policy(const ExperimentConfig& config) {
    return config.theory.use_xi_gamma ? XiPolicy::adaptive(config.theory.fixed_xi)
                                      : XiPolicy::fixed(config.theory.fixed_xi);
}

void apply_overrides(ExperimentConfig& config, const ConfigOverrides& overrides) {
    if (overrides.out_dir) {
        config.output.dir = *overrides.out_dir;
    }
    if (overrides.root_seed) {
        config.root_seed = *overrides.root_seed;
    }
    if (overrides.n_runs) {
        config.n_runs = *overrides.n_runs;
    }
    if (overrides.horizon) {
        config.horizon = *overrides.horizon;
    }
    validate_config(config);
}

} // namespace erts
