// rqi — command-line front end for the repeated-interaction library
//
//   rqi limit-coeffs --config s.json
//   rqi simulate --mode discrete|qsde --config s.json
//   rqi converge --kind matrix-element|semigroup --config s.json --format csv
//   rqi dilate --config s.json
//   rqi scenario --builtin two-level
//
// Exit codes: 0 success, 1 invalid input, 2 numerical failure.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "rqi/continuous.hpp"
#include "rqi/harness.hpp"
#include "rqi/superoperator.hpp"

using nlohmann::json;
using namespace rqi;

namespace {

struct Common {
    std::string config;
    std::string builtin;
    std::optional<std::uint64_t> seed;
    std::string out;
    std::string format = "json";
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--config", c.config, "scenario document (JSON)");
    cmd->add_option("--builtin", c.builtin, "use a builtin scenario instead of --config");
    cmd->add_option("--seed", c.seed, "seed for random builtins");
    cmd->add_option("--out", c.out, "output file (default stdout)");
    cmd->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
}

Scenario load(const Common& c) {
    if (!c.builtin.empty()) {
        if (!c.config.empty()) {
            throw Error(ErrorKind::ValidationError, "--config and --builtin are exclusive");
        }
        return builtin_scenario(c.builtin, c.seed);
    }
    if (c.config.empty()) {
        throw Error(ErrorKind::ValidationError, "one of --config or --builtin is required");
    }
    std::ifstream in(c.config);
    if (!in) {
        throw Error(ErrorKind::ValidationError, "cannot read " + c.config);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str());
}

void write(const Common& c, const std::string& text) {
    if (c.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(c.out);
    if (!out) {
        throw Error(ErrorKind::ValidationError, "cannot write " + c.out);
    }
    out << text;
}

// Flat matrix dump for CSV: one line per entry.
void csv_matrix(std::ostringstream& out, const std::string& tag, const ComplexMatrix& m) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            out << tag << ',' << r << ',' << c << ',' << format_double(m(r, c).real()) << ','
                << format_double(m(r, c).imag()) << '\n';
        }
    }
}

std::string render(const Common& c, const json& doc,
                   const std::vector<std::pair<std::string, ComplexMatrix>>& mats) {
    if (c.format == "json") {
        return doc.dump(2) + "\n";
    }
    std::ostringstream out;
    out << "name,row,col,re,im\n";
    for (const auto& [tag, m] : mats) {
        csv_matrix(out, tag, m);
    }
    return out.str();
}

std::string tag_of(const std::string& base, double t) { return base + "@t=" + format_double(t); }

std::string cmd_limit_coeffs(const Common& c) {
    const Scenario s = load(c);
    const QsdeCoefficients coeffs = limit_coefficients(s.params);
    std::vector<std::pair<std::string, ComplexMatrix>> mats;
    json blocks = json::array();
    for (Eigen::Index j = 0; j <= s.dims.n_env; ++j) {
        for (Eigen::Index i = 0; i <= s.dims.n_env; ++i) {
            const ComplexMatrix& b = coeffs.table.block(j, i);
            blocks.push_back({{"j", j}, {"i", i}, {"matrix", matrix_to_json(b)}});
            mats.emplace_back("L_" + std::to_string(j) + "^" + std::to_string(i), b);
        }
    }
    json doc = {{"scenario", s.name}, {"blocks", blocks}};
    if (coeffs.structured) {
        const auto& st = *coeffs.structured;
        doc["k"] = matrix_to_json(st.k.matrix());
        doc["w"] = matrix_to_json(st.w);
        doc["s"] = matrix_to_json(st.s);
        mats.emplace_back("K", st.k.matrix());
        mats.emplace_back("W", st.w);
        mats.emplace_back("S", st.s);
    }
    const StructureDiagnostics diag = unitarity_structure_check(coeffs, 1e-10);
    doc["structure_check"] = {{"s_isometry", diag.s_isometry},
                              {"s_coisometry", diag.s_coisometry},
                              {"annihilation_defect", diag.annihilation_defect},
                              {"drift_defect", diag.drift_defect},
                              {"k_hermiticity", diag.k_hermiticity},
                              {"pass", diag.pass}};
    return render(c, doc, mats);
}

std::string cmd_simulate(const Common& c, const std::string& mode) {
    const Scenario s = load(c);
    const double h = s.h_list.back();
    std::vector<std::pair<std::string, ComplexMatrix>> mats;
    json times = json::array();
    if (mode == "discrete") {
        const BlockOperator l = s.step_family()(h);
        const Superoperator ell = reduced_cp_map(l);
        for (const double t : s.t_grid) {
            const std::size_t n = steps_for(t, h);
            const std::size_t sites =
                std::max({n, sites_covering(s.phi, h), sites_covering(s.psi, h)});
            const DiscreteBracket b = discrete_matrix_element(
                l, discretize_coherent(s.phi, h, sites), discretize_coherent(s.psi, h, sites), n);
            const Superoperator ell_n = iterate_cp(ell, n);
            json obs = json::array();
            for (std::size_t k = 0; k < s.observables.size(); ++k) {
                const ComplexMatrix y = ell_n.apply(s.observables[k]);
                obs.push_back(matrix_to_json(y));
                mats.emplace_back(tag_of("obs" + std::to_string(k), t), y);
            }
            times.push_back({{"t", t},
                             {"steps", n},
                             {"bracket", matrix_to_json(b.bracket_operator)},
                             {"observables", obs}});
            mats.emplace_back(tag_of("bracket", t), b.bracket_operator);
        }
    } else {
        const QsdeCoefficients coeffs = limit_coefficients(s.params);
        const Superoperator gen = lindblad_generator(coeffs);
        for (const double t : s.t_grid) {
            const ComplexMatrix theta = qsde_matrix_element(coeffs, s.phi, s.psi, t, s.ode_step);
            const Superoperator flow = semigroup_apply(gen, t);
            json obs = json::array();
            for (std::size_t k = 0; k < s.observables.size(); ++k) {
                const ComplexMatrix y = flow.apply(s.observables[k]);
                obs.push_back(matrix_to_json(y));
                mats.emplace_back(tag_of("obs" + std::to_string(k), t), y);
            }
            times.push_back(
                {{"t", t}, {"bracket", matrix_to_json(theta)}, {"observables", obs}});
            mats.emplace_back(tag_of("bracket", t), theta);
        }
    }
    const json doc = {{"scenario", s.name}, {"mode", mode}, {"h", h}, {"times", times}};
    return render(c, doc, mats);
}

std::string cmd_converge(const Common& c, const std::string& kind, bool timing) {
    const Scenario s = load(c);
    const ConvergenceReport r = kind == "semigroup" ? run_semigroup_convergence(s)
                                                    : run_matrix_element_convergence(s);
    return emit_report(r, c.format == "csv" ? ReportFormat::csv : ReportFormat::json, timing);
}

std::string cmd_dilate(const Common& c) {
    const Scenario s = load(c);
    if (s.kraus.empty()) {
        throw Error(ErrorKind::ValidationError, "kraus: missing field");
    }
    const KrausFamily fam(s.dims, s.kraus);
    const BlockOperator u = kraus_dilate(fam);
    const ComplexMatrix flat = block_to_flat(u);
    const double residual =
        op_norm(flat.adjoint() * flat - ComplexMatrix::Identity(flat.rows(), flat.cols()));
    const double roundtrip =
        op_norm(reduced_cp_map(u).matrix - kraus_superoperator(s.kraus).matrix);
    const json doc = {{"scenario", s.name},
                      {"unitary", matrix_to_json(flat)},
                      {"unitarity_residual", residual},
                      {"reduction_defect", roundtrip}};
    return render(c, doc, {{"U", flat}});
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"repeated quantum interactions: discrete dynamics and their limits"};
    app.require_subcommand(1);

    Common c;
    std::string mode = "discrete";
    std::string kind = "matrix-element";
    bool timing = false;
    std::string builtin_name;

    auto* limit = app.add_subcommand("limit-coeffs", "coefficients of the limit equation");
    add_common(limit, c);
    auto* sim = app.add_subcommand("simulate", "bracket and observables at the finest h");
    add_common(sim, c);
    sim->add_option("--mode", mode)->check(CLI::IsMember({"discrete", "qsde"}));
    auto* conv = app.add_subcommand("converge", "discrete vs continuous sweep over h_list");
    add_common(conv, c);
    conv->add_option("--kind", kind)->check(CLI::IsMember({"matrix-element", "semigroup"}));
    conv->add_flag("--timing", timing, "include wall time in JSON metadata");
    auto* dil = app.add_subcommand("dilate", "unitary dilation of the scenario's Kraus family");
    add_common(dil, c);
    auto* scen = app.add_subcommand("scenario", "print a builtin scenario document");
    scen->add_option("--builtin", builtin_name)->required();
    scen->add_option("--seed", c.seed);
    scen->add_option("--out", c.out);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        std::string text;
        if (*limit) {
            text = cmd_limit_coeffs(c);
        } else if (*sim) {
            text = cmd_simulate(c, mode);
        } else if (*conv) {
            text = cmd_converge(c, kind, timing);
        } else if (*dil) {
            text = cmd_dilate(c);
        } else {
            text = serialize_scenario(builtin_scenario(builtin_name, c.seed)) + "\n";
        }
        write(c, text);
    } catch (const Error& e) {
        std::cerr << "error (" << to_string(e.kind()) << "): " << e.detail() << '\n';
        return is_validation_error(e.kind()) ? 1 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
