#include "gqs/config.hpp"

#include <fstream>
#include <set>

namespace gqs {

namespace {

using nlohmann::json;

void require_keys(const json& obj, const std::string& where,
                  const std::set<std::string>& allowed) {
    if (!obj.is_object()) throw ConfigError(where + ": expected an object");
    for (const auto& [key, _] : obj.items())
        if (!allowed.count(key))
            throw ConfigError(where + ": unknown key '" + key + "'");
}

double number(const json& obj, const std::string& where, const std::string& key,
              double fallback, bool required = false) {
    if (!obj.contains(key)) {
        if (required) throw ConfigError(where + ": missing key '" + key + "'");
        return fallback;
    }
    if (!obj[key].is_number()) throw ConfigError(where + "." + key + ": expected a number");
    return obj[key].get<double>();
}

std::string text(const json& obj, const std::string& where, const std::string& key,
                 const std::string& fallback) {
    if (!obj.contains(key)) return fallback;
    if (!obj[key].is_string()) throw ConfigError(where + "." + key + ": expected a string");
    return obj[key].get<std::string>();
}

}  // namespace

RunConfig parse_config(const json& doc) {
    RunConfig cfg;
    cfg.echo = doc;
    require_keys(doc, "config", {"model", "grid", "solver", "sweep", "seed"});

    if (doc.contains("seed")) {
        if (!doc["seed"].is_number_unsigned())
            throw ConfigError("config.seed: expected a non-negative integer");
        cfg.seed = doc["seed"].get<std::uint64_t>();
    }

    if (doc.contains("model")) {
        const auto& m = doc["model"];
        require_keys(m, "model",
                     {"dimension", "transform", "potential", "nonlinearity", "omega_radius"});
        cfg.dimension = static_cast<int>(number(m, "model", "dimension", 3));
        cfg.omega_radius = number(m, "model", "omega_radius", 1.0);

        if (m.contains("transform")) {
            const auto& t = m["transform"];
            require_keys(t, "model.transform", {"kind", "t", "g", "quadrature_tol"});
            const std::string kind = text(t, "model.transform", "kind", "identity");
            if (kind == "identity")
                cfg.transform_kind = TransformKind::Identity;
            else if (kind == "superfluid_film")
                cfg.transform_kind = TransformKind::SuperfluidFilm;
            else if (kind == "laser_channeling")
                cfg.transform_kind = TransformKind::LaserChanneling;
            else if (kind == "tabulated")
                cfg.transform_kind = TransformKind::Tabulated;
            else
                throw ConfigError("model.transform.kind: unknown kind '" + kind + "'");
            cfg.quadrature_tol = number(t, "model.transform", "quadrature_tol", kDefaultQuadTol);
            if (cfg.transform_kind == TransformKind::Tabulated) {
                if (!t.contains("t") || !t.contains("g"))
                    throw ConfigError("model.transform: tabulated kind needs 't' and 'g'");
                cfg.tabulated_t = t["t"].get<std::vector<double>>();
                cfg.tabulated_g = t["g"].get<std::vector<double>>();
            }
        }

        if (m.contains("potential")) {
            const auto& p = m["potential"];
            require_keys(p, "model.potential", {"kind", "v0", "amplitude"});
            const std::string kind = text(p, "model.potential", "kind", "constant");
            if (kind == "constant")
                cfg.potential.kind = PotentialKind::Constant;
            else if (kind == "cosine_perturbed")
                cfg.potential.kind = PotentialKind::CosinePerturbed;
            else
                throw ConfigError("model.potential.kind: unknown kind '" + kind + "'");
            cfg.potential.v0 = number(p, "model.potential", "v0", 1.0);
            cfg.potential.amplitude = number(p, "model.potential", "amplitude", 0.0);
        }

        if (m.contains("nonlinearity")) {
            const auto& f = m["nonlinearity"];
            require_keys(f, "model.nonlinearity", {"kind", "mu", "q"});
            const std::string kind = text(f, "model.nonlinearity", "kind", "zero");
            if (kind == "zero")
                cfg.nonlinearity.kind = NonlinearityKind::Zero;
            else if (kind == "transformed_power")
                cfg.nonlinearity.kind = NonlinearityKind::TransformedPower;
            else
                throw ConfigError("model.nonlinearity.kind: unknown kind '" + kind + "'");
            cfg.nonlinearity.mu = number(f, "model.nonlinearity", "mu", 1.0);
            cfg.nonlinearity.q = number(f, "model.nonlinearity", "q", 5.0);
        }
    }

    if (doc.contains("grid")) {
        const auto& g = doc["grid"];
        require_keys(g, "grid", {"radius", "nodes"});
        cfg.solve.radius = number(g, "grid", "radius", 40.0);
        cfg.solve.nodes = static_cast<int>(number(g, "grid", "nodes", 4096));
    }

    if (doc.contains("solver")) {
        const auto& s = doc["solver"];
        require_keys(s, "solver",
                     {"step_rule", "fixed_step", "grad_tol", "max_iters", "positivity_clamp",
                      "guess_center", "guess_width", "ps_margin"});
        const std::string rule = text(s, "solver", "step_rule", "bb");
        if (rule == "fixed")
            cfg.solve.step_rule = StepRule::Fixed;
        else if (rule == "backtracking")
            cfg.solve.step_rule = StepRule::Backtracking;
        else if (rule == "bb")
            cfg.solve.step_rule = StepRule::BarzilaiBorwein;
        else
            throw ConfigError("solver.step_rule: unknown rule '" + rule + "'");
        cfg.solve.fixed_step = number(s, "solver", "fixed_step", 0.5);
        cfg.solve.grad_tol = number(s, "solver", "grad_tol", 1e-6);
        cfg.solve.max_iters = static_cast<int>(number(s, "solver", "max_iters", 10000));
        if (s.contains("positivity_clamp")) {
            if (!s["positivity_clamp"].is_boolean())
                throw ConfigError("solver.positivity_clamp: expected a boolean");
            cfg.solve.positivity_clamp = s["positivity_clamp"].get<bool>();
        }
        cfg.solve.guess_center = number(s, "solver", "guess_center", 0.0);
        cfg.solve.guess_width = number(s, "solver", "guess_width", 0.0);
        cfg.solve.ps_margin = number(s, "solver", "ps_margin", 10.0);
        if (!(cfg.solve.grad_tol > 0.0) || cfg.solve.max_iters < 1)
            throw ConfigError("solver: tolerances and iteration caps must be positive");
    }

    if (doc.contains("sweep")) {
        const auto& s = doc["sweep"];
        require_keys(s, "sweep", {"eps", "cutoff_radius"});
        if (s.contains("eps")) cfg.sweep_eps = s["eps"].get<std::vector<double>>();
        cfg.sweep_cutoff_radius = number(s, "sweep", "cutoff_radius", 1.0);
    }
    if (cfg.sweep_eps.empty())
        for (int k = 0; k < 7; ++k) cfg.sweep_eps.push_back(0.02 * std::pow(2.0, -k));

    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    json doc;
    try {
        in >> doc;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    return parse_config(doc);
}

Transform build_transform(const RunConfig& config) {
    switch (config.transform_kind) {
        case TransformKind::Identity: return Transform::identity();
        case TransformKind::SuperfluidFilm: return Transform::superfluid_film();
        case TransformKind::LaserChanneling: return Transform::laser_channeling();
        case TransformKind::Tabulated:
            return Transform::tabulated(config.tabulated_t, config.tabulated_g,
                                        config.quadrature_tol);
    }
    throw ConfigError("unreachable transform kind");
}

Model build_model(const RunConfig& config) {
    return Model(config.dimension, build_transform(config), config.potential,
                 config.nonlinearity, config.omega_radius);
}

}  // namespace gqs
