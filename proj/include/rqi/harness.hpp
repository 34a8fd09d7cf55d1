// harness.hpp — scenario documents, convergence sweeps and report emission
//
// Scenario document (JSON):
//   {
//     "name": "...",
//     "builtin": "two-level" | "von-neumann" | "weak-coupling" | "low-density",   (optional)
//     "dims": {"n0": 2, "n_env": 1},
//     "params": {"h0": M, "hs": M, "v": [M, ...], "d": M},    (absent with "builtin")
//     "family": "hamiltonian" | "two-level-exchange",          (optional)
//     "phi": {"breakpoints": [0, 1], "values": [[[re, im], ...], ...]},
//     "psi": {...},
//     "t_grid": [...], "h_list": [...],
//     "observables": [M, ...],
//     "kraus": [M, ...],                                       (optional, used by `dilate`)
//     "ode_step": 2.5e-5,
//     "seed": 1
//   }
// M is a row-major nested array of complex entries [re, im].

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "rqi/dilation.hpp"
#include "rqi/discrete.hpp"
#include "rqi/hamiltonian.hpp"

namespace rqi {

enum class FamilyKind {
    hamiltonian,        // 𝕃(h) = unitary_step(params, h)
    two_level_exchange, // 𝕃(h) = two_level_step(h)
};

struct Scenario {
    std::string name;
    SpaceDims dims;
    std::optional<std::string> builtin;
    InteractionParams params;
    FamilyKind family = FamilyKind::hamiltonian;
    CoherentFunction phi;
    CoherentFunction psi;
    std::vector<double> t_grid;
    std::vector<double> h_list;
    std::vector<ComplexMatrix> observables;
    std::vector<ComplexMatrix> kraus;
    double ode_step = 0.0;
    std::optional<std::uint64_t> seed;

    StepFamily step_family() const;
};

bool operator==(const Scenario& a, const Scenario& b);

// Throws ParseError, SchemaError or ValidationError; messages start with the field path.
Scenario parse_scenario(const std::string& text);
Scenario scenario_from_json(const nlohmann::json& doc);
nlohmann::json scenario_to_json(const Scenario& s);
std::string serialize_scenario(const Scenario& s);

Scenario builtin_scenario(const std::string& name, std::optional<std::uint64_t> seed = std::nullopt);
const std::vector<std::string>& builtin_names();

double default_ode_step(const std::vector<double>& h_list);

nlohmann::json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const nlohmann::json& j, const std::string& path);

struct ReportRow {
    double t = 0.0;
    double h = 0.0;
    double discrete_norm = 0.0;
    double continuous_norm = 0.0;
    double abs_error = 0.0;
};

struct OrderFit {
    double t = 0.0;
    std::optional<double> order;
};

struct ReportMetadata {
    Eigen::Index n0 = 0;
    Eigen::Index n_env = 0;
    std::optional<std::uint64_t> seed;
    double alpha = 0.0; // max of the Hamiltonian block norms
    double wall_time_seconds = 0.0;
};

struct ConvergenceReport {
    std::string kind;     // "matrix-element" or "semigroup"
    std::string scenario; // scenario name
    std::vector<ReportRow> rows; // sorted by t, then h ascending
    std::vector<OrderFit> fitted_orders;
    ReportMetadata metadata;

    std::optional<double> order_at(double t) const;
    const ReportRow* find(double t, double h) const;
};

ConvergenceReport run_matrix_element_convergence(const Scenario& s);
ConvergenceReport run_semigroup_convergence(const Scenario& s);

enum class ReportFormat { csv, json };

// Wall time is left out unless include_timing is set, so identical scenarios
// give byte-identical reports.
std::string emit_report(const ConvergenceReport& r, ReportFormat format,
                        bool include_timing = false);
ConvergenceReport report_from_json(const nlohmann::json& doc);

// Shortest decimal that round-trips to the same double.
std::string format_double(double x);

} // namespace rqi
