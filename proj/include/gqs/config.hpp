#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "gqs/model.hpp"
#include "gqs/solver.hpp"

namespace gqs {

// One JSON document with sections {model, grid, solver, sweep} and a seed.
// Unknown keys anywhere are hard errors: misconfigured physics fails loudly.
struct RunConfig {
    int dimension = 3;
    TransformKind transform_kind = TransformKind::Identity;
    std::vector<double> tabulated_t, tabulated_g;
    double quadrature_tol = kDefaultQuadTol;
    Potential potential;
    Nonlinearity nonlinearity;
    double omega_radius = 1.0;

    SolveConfig solve;

    std::vector<double> sweep_eps;
    double sweep_cutoff_radius = 1.0;

    std::uint64_t seed = 42;

    nlohmann::json echo;  // the parsed document, for manifests
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::string& path);

Transform build_transform(const RunConfig& config);
Model build_model(const RunConfig& config);

}  // namespace gqs
