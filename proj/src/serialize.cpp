#include "gqs/serialize.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace gqs {

using nlohmann::json;

json to_json(const PropertyReport& report) {
    json entries = json::array();
    for (const auto& e : report.entries)
        entries.push_back({{"name", e.name},
                           {"domain", e.domain},
                           {"worst_violation", e.worst},
                           {"pass", e.pass}});
    return {{"entries", entries}, {"overall_pass", report.overall()}};
}

json to_json(const EnergyBreakdown& e) {
    return {{"kinetic", e.kinetic},
            {"potential", e.potential},
            {"h_part", e.h_part},
            {"critical", e.critical},
            {"total", e.total}};
}

json to_json(const ConcentrationDiagnostic& d) {
    return {{"radius", d.radius},
            {"mass", d.mass},
            {"mass_fraction", d.mass_fraction},
            {"location", d.location},
            {"vanishing", d.vanishing}};
}

json to_json(const LevelCertificate& c) {
    json checks = json::array();
    for (const auto& e : c.checks)
        checks.push_back({{"name", e.name}, {"violation", e.worst}, {"pass", e.pass}});
    return {{"applicable", c.applicable},
            {"reason", c.reason},
            {"checks", checks},
            {"pass", c.pass}};
}

json to_json(const SolveReport& r) {
    return {{"converged", r.converged},
            {"iterations", r.iterations},
            {"grad_norm", r.grad_norm},
            {"level_c", r.level_c},
            {"energy", to_json(r.energy)},
            {"nehari_residual", r.nehari_res},
            {"weak_residual_modified", r.weak_res_modified},
            {"weak_residual_original", r.weak_res_original},
            {"concentration", to_json(r.concentration)},
            {"vanishing_trend", r.vanishing_trend},
            {"ps_max_norm", r.ps_max_norm},
            {"ps_violation", r.ps_violation},
            {"sobolev_constant", r.sobolev_S},
            {"level_threshold", r.level_threshold},
            {"g_checks", to_json(r.g_report)},
            {"growth_checks", to_json(r.growth_report)},
            {"growth_warning", r.growth_warning},
            {"certificate", to_json(r.certificate)}};
}

json to_json(const SweepReport& r) {
    json rows = json::array();
    for (const auto& row : r.rows)
        rows.push_back({{"eps", row.eps},
                        {"grad_sq", row.grad_sq},
                        {"l2_sq", row.l2_sq},
                        {"u_crit", row.u_crit},
                        {"resolved", row.resolved}});
    return {{"dimension", r.dimension},
            {"cutoff_radius", r.cutoff_radius},
            {"sobolev_constant", r.s_ref},
            {"rows", rows},
            {"fit_begin", r.fit_begin},
            {"grad_excess_slope", r.grad_excess.slope},
            {"l2_rate_slope", r.l2_rate.slope},
            {"l2_log_ratio_spread", r.l2_log_ratio_spread},
            {"k_estimate", r.k_estimate}};
}

json to_json(const std::vector<LevelBound>& bounds) {
    json rows = json::array();
    for (const auto& b : bounds)
        rows.push_back({{"eps", b.eps},
                        {"t_eps", b.t_eps},
                        {"max_value", b.max_value},
                        {"threshold", b.threshold},
                        {"margin", b.margin},
                        {"h_core_over_eta", b.h_core_over_eta},
                        {"resolved", b.resolved}});
    return rows;
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

namespace {

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace

void write_field_csv(const std::string& path, const Field& field) {
    std::ostringstream out;
    out << "r,value\n";
    const auto r = field.grid->r();
    for (std::size_t j = 0; j < field.v.size(); ++j)
        out << fmt(r[j]) << "," << fmt(field.v[j]) << "\n";
    write_text(path, out.str());
}

void write_sweep_csv(const std::string& path, const SweepReport& report) {
    std::ostringstream out;
    out << "eps,grad_sq,l2_sq,u_crit,resolved\n";
    for (const auto& row : report.rows)
        out << fmt(row.eps) << "," << fmt(row.grad_sq) << "," << fmt(row.l2_sq) << ","
            << fmt(row.u_crit) << "," << (row.resolved ? 1 : 0) << "\n";
    write_text(path, out.str());
}

void write_level_csv(const std::string& path, const std::vector<LevelBound>& bounds) {
    std::ostringstream out;
    out << "eps,t_eps,max_value,threshold,margin,h_core_over_eta,resolved\n";
    for (const auto& b : bounds)
        out << fmt(b.eps) << "," << fmt(b.t_eps) << "," << fmt(b.max_value) << ","
            << fmt(b.threshold) << "," << fmt(b.margin) << "," << fmt(b.h_core_over_eta)
            << "," << (b.resolved ? 1 : 0) << "\n";
    write_text(path, out.str());
}

std::string grid_fingerprint(int dimension, double radius, int nodes) {
    std::ostringstream out;
    out << "N" << dimension << "-R" << radius << "-n" << nodes;
    return out.str();
}

void append_manifest(const std::string& path, const std::string& command,
                     const json& config_echo, const std::string& fingerprint, double wall_ms,
                     const std::vector<std::string>& outputs, bool pass) {
    json entry = {{"command", command},
                  {"config", config_echo},
                  {"version", kArtifactVersion},
                  {"grid_fingerprint", fingerprint},
                  {"wall_ms", wall_ms},
                  {"outputs", outputs},
                  {"pass", pass}};
    std::ofstream out(path, std::ios::app | std::ios::binary);
    if (!out) throw std::runtime_error("cannot append manifest " + path);
    out << entry.dump() << "\n";
}

void print_property_table(const PropertyReport& report, const std::string& title) {
    std::cout << title << "\n";
    for (const auto& e : report.entries) {
        std::printf("  [%s] %-45s worst=%.3e  (%s)\n", e.pass ? "pass" : "FAIL",
                    e.name.c_str(), e.worst, e.domain.c_str());
    }
    std::cout << "  overall: " << (report.overall() ? "pass" : "FAIL") << "\n";
}

}  // namespace gqs
