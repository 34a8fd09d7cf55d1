#include "rqi/harness.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <map>
#include <sstream>

#include "rqi/continuous.hpp"
#include "rqi/fit.hpp"
#include "rqi/scenarios.hpp"

namespace rqi {

using nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
    throw Error(ErrorKind::SchemaError, path + ": " + what);
}

[[noreturn]] void validation_error(const std::string& path, const std::string& what) {
    throw Error(ErrorKind::ValidationError, path + ": " + what);
}

double read_real(const json& j, const std::string& path) {
    if (!j.is_number()) {
        schema_error(path, "expected a number");
    }
    const double x = j.get<double>();
    if (!std::isfinite(x)) {
        validation_error(path, "must be finite");
    }
    return x;
}

cplx read_complex(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2) {
        schema_error(path, "expected a complex number [re, im]");
    }
    return {read_real(j[0], path + "[0]"), read_real(j[1], path + "[1]")};
}

json complex_to_json(cplx z) { return json::array({z.real(), z.imag()}); }

std::vector<double> read_real_list(const json& j, const std::string& path) {
    if (!j.is_array()) {
        schema_error(path, "expected an array of numbers");
    }
    std::vector<double> out;
    for (std::size_t k = 0; k < j.size(); ++k) {
        out.push_back(read_real(j[k], path + "[" + std::to_string(k) + "]"));
    }
    return out;
}

const json& require(const json& obj, const char* key, const std::string& path) {
    if (!obj.contains(key)) {
        schema_error(path.empty() ? key : path + "." + key, "missing field");
    }
    return obj.at(key);
}

std::string child(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
}

HermitianMatrix read_hermitian(const json& j, const std::string& path, Eigen::Index n) {
    const ComplexMatrix m = matrix_from_json(j, path);
    if (m.rows() != n || m.cols() != n) {
        validation_error(path, "expected a " + std::to_string(n) + "x" + std::to_string(n) +
                                   " matrix");
    }
    try {
        return HermitianMatrix(m);
    } catch (const Error& e) {
        validation_error(path, std::string("not Hermitian (") + e.what() + ")");
    }
}

std::vector<ComplexMatrix> read_matrix_list(const json& j, const std::string& path) {
    if (!j.is_array()) {
        schema_error(path, "expected an array of matrices");
    }
    std::vector<ComplexMatrix> out;
    for (std::size_t k = 0; k < j.size(); ++k) {
        out.push_back(matrix_from_json(j[k], path + "[" + std::to_string(k) + "]"));
    }
    return out;
}

json matrix_list_to_json(const std::vector<ComplexMatrix>& ms) {
    json out = json::array();
    for (const auto& m : ms) {
        out.push_back(matrix_to_json(m));
    }
    return out;
}

CoherentFunction read_coherent(const json& j, const std::string& path, Eigen::Index n_levels) {
    if (!j.is_object()) {
        schema_error(path, "expected an object with breakpoints and values");
    }
    std::vector<double> breakpoints =
        read_real_list(require(j, "breakpoints", path), child(path, "breakpoints"));
    const json& jv = require(j, "values", path);
    const std::string vpath = child(path, "values");
    if (!jv.is_array()) {
        schema_error(vpath, "expected an array of complex vectors");
    }
    std::vector<ComplexVector> values;
    for (std::size_t k = 0; k < jv.size(); ++k) {
        const std::string p = vpath + "[" + std::to_string(k) + "]";
        if (!jv[k].is_array()) {
            schema_error(p, "expected an array of complex numbers");
        }
        if (static_cast<Eigen::Index>(jv[k].size()) != n_levels) {
            validation_error(p, "expected " + std::to_string(n_levels) + " components");
        }
        ComplexVector v(n_levels);
        for (Eigen::Index i = 0; i < n_levels; ++i) {
            v(i) = read_complex(jv[k][static_cast<std::size_t>(i)],
                                p + "[" + std::to_string(i) + "]");
        }
        values.push_back(v);
    }
    try {
        return CoherentFunction(n_levels, std::move(breakpoints), std::move(values));
    } catch (const Error& e) {
        validation_error(path, e.what());
    }
}

json coherent_to_json(const CoherentFunction& f) {
    json values = json::array();
    for (const auto& v : f.values()) {
        json row = json::array();
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            row.push_back(complex_to_json(v(i)));
        }
        values.push_back(row);
    }
    return {{"breakpoints", f.breakpoints()}, {"values", values}};
}

const char* family_name(FamilyKind k) {
    return k == FamilyKind::hamiltonian ? "hamiltonian" : "two-level-exchange";
}

FamilyKind read_family(const json& j, const std::string& path) {
    if (!j.is_string()) {
        schema_error(path, "expected a string");
    }
    const auto name = j.get<std::string>();
    if (name == "hamiltonian") {
        return FamilyKind::hamiltonian;
    }
    if (name == "two-level-exchange") {
        return FamilyKind::two_level_exchange;
    }
    validation_error(path, "unknown family '" + name + "'");
}

void validate_scenario(const Scenario& s) {
    if (s.h_list.empty()) {
        validation_error("h_list", "must not be empty");
    }
    for (std::size_t k = 0; k < s.h_list.size(); ++k) {
        if (!(s.h_list[k] > 0.0)) {
            validation_error("h_list[" + std::to_string(k) + "]", "must be positive");
        }
        if (k > 0 && !(s.h_list[k] < s.h_list[k - 1])) {
            validation_error("h_list[" + std::to_string(k) + "]", "must be strictly decreasing");
        }
    }
    for (std::size_t k = 0; k < s.t_grid.size(); ++k) {
        if (!(s.t_grid[k] >= 0.0)) {
            validation_error("t_grid[" + std::to_string(k) + "]", "must be nonnegative");
        }
    }
    if (!(s.ode_step > 0.0)) {
        validation_error("ode_step", "must be positive");
    }
    for (std::size_t k = 0; k < s.observables.size(); ++k) {
        if (s.observables[k].rows() != s.dims.n0 || s.observables[k].cols() != s.dims.n0) {
            validation_error("observables[" + std::to_string(k) + "]", "must be n0 x n0");
        }
    }
    if (!s.kraus.empty()) {
        if (static_cast<Eigen::Index>(s.kraus.size()) != s.dims.env_dim()) {
            validation_error("kraus", "needs N + 1 operators");
        }
        for (std::size_t k = 0; k < s.kraus.size(); ++k) {
            if (s.kraus[k].rows() != s.dims.n0 || s.kraus[k].cols() != s.dims.n0) {
                validation_error("kraus[" + std::to_string(k) + "]", "must be n0 x n0");
            }
        }
    }
    if (s.phi.n_levels() != s.dims.n_env) {
        validation_error("phi", "must have N components");
    }
    if (s.psi.n_levels() != s.dims.n_env) {
        validation_error("psi", "must have N components");
    }
    if (s.family == FamilyKind::two_level_exchange && !(s.dims == SpaceDims(2, 1))) {
        validation_error("family", "two-level-exchange needs n0 = 2, n_env = 1");
    }
}

SpaceDims read_dims(const json& j, const std::string& path) {
    if (!j.is_object()) {
        schema_error(path, "expected an object with n0 and n_env");
    }
    const json& jn0 = require(j, "n0", path);
    const json& jnn = require(j, "n_env", path);
    if (!jn0.is_number_integer() || jn0.get<long long>() < 1) {
        validation_error(child(path, "n0"), "must be an integer >= 1");
    }
    if (!jnn.is_number_integer() || jnn.get<long long>() < 1) {
        validation_error(child(path, "n_env"), "must be an integer >= 1");
    }
    return {jn0.get<Eigen::Index>(), jnn.get<Eigen::Index>()};
}

InteractionParams read_params(const json& j, SpaceDims dims) {
    const std::string path = "params";
    if (!j.is_object()) {
        schema_error(path, "expected an object");
    }
    HermitianMatrix h0 = read_hermitian(require(j, "h0", path), "params.h0", dims.n0);
    HermitianMatrix hs = read_hermitian(require(j, "hs", path), "params.hs", dims.env_dim());
    std::vector<ComplexMatrix> v = read_matrix_list(require(j, "v", path), "params.v");
    if (static_cast<Eigen::Index>(v.size()) != dims.n_env) {
        validation_error("params.v", "needs N = " + std::to_string(dims.n_env) + " operators");
    }
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (v[k].rows() != dims.n0 || v[k].cols() != dims.n0) {
            validation_error("params.v[" + std::to_string(k) + "]", "must be n0 x n0");
        }
    }
    HermitianMatrix d =
        read_hermitian(require(j, "d", path), "params.d", dims.n0 * dims.n_env);
    return {dims, std::move(h0), std::move(hs), std::move(v), std::move(d)};
}

json params_to_json(const InteractionParams& p) {
    return {{"h0", matrix_to_json(p.h0.matrix())},
            {"hs", matrix_to_json(p.hs.matrix())},
            {"v", matrix_list_to_json(p.v)},
            {"d", matrix_to_json(p.d.matrix())}};
}

bool same_matrix(const ComplexMatrix& a, const ComplexMatrix& b) {
    return a.rows() == b.rows() && a.cols() == b.cols() && a == b;
}

bool same_matrices(const std::vector<ComplexMatrix>& a, const std::vector<ComplexMatrix>& b) {
    if (a.size() != b.size()) {
        return false;
    }
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (!same_matrix(a[k], b[k])) {
            return false;
        }
    }
    return true;
}

bool same_function(const CoherentFunction& a, const CoherentFunction& b) {
    if (a.n_levels() != b.n_levels() || a.breakpoints() != b.breakpoints() ||
        a.values().size() != b.values().size()) {
        return false;
    }
    for (std::size_t k = 0; k < a.values().size(); ++k) {
        if (a.values()[k] != b.values()[k]) {
            return false;
        }
    }
    return true;
}

} // namespace

json matrix_to_json(const ComplexMatrix& m) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            row.push_back(complex_to_json(m(i, j)));
        }
        rows.push_back(row);
    }
    return rows;
}

ComplexMatrix matrix_from_json(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) {
        schema_error(path, "expected a non-empty row-major array of rows");
    }
    const std::size_t rows = j.size();
    if (!j[0].is_array() || j[0].empty()) {
        schema_error(path + "[0]", "expected a non-empty row of complex entries");
    }
    const std::size_t cols = j[0].size();
    ComplexMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < rows; ++r) {
        const std::string rp = path + "[" + std::to_string(r) + "]";
        if (!j[r].is_array() || j[r].size() != cols) {
            schema_error(rp, "rows must all have " + std::to_string(cols) + " entries");
        }
        for (std::size_t c = 0; c < cols; ++c) {
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                read_complex(j[r][c], rp + "[" + std::to_string(c) + "]");
        }
    }
    return m;
}

StepFamily Scenario::step_family() const {
    if (family == FamilyKind::two_level_exchange) {
        return [](double h) { return two_level_step(h); };
    }
    return [p = params](double h) { return unitary_step(p, h); };
}

bool operator==(const Scenario& a, const Scenario& b) {
    return a.name == b.name && a.dims == b.dims && a.builtin == b.builtin &&
           same_matrix(a.params.h0.matrix(), b.params.h0.matrix()) &&
           same_matrix(a.params.hs.matrix(), b.params.hs.matrix()) &&
           same_matrices(a.params.v, b.params.v) &&
           same_matrix(a.params.d.matrix(), b.params.d.matrix()) && a.family == b.family &&
           same_function(a.phi, b.phi) && same_function(a.psi, b.psi) &&
           a.t_grid == b.t_grid && a.h_list == b.h_list &&
           same_matrices(a.observables, b.observables) && same_matrices(a.kraus, b.kraus) &&
           a.ode_step == b.ode_step && a.seed == b.seed;
}

double default_ode_step(const std::vector<double>& h_list) {
    double h_min = 1e-3;
    for (const double h : h_list) {
        h_min = std::min(h_min, h);
    }
    return h_min / 4.0;
}

const std::vector<std::string>& builtin_names() {
    static const std::vector<std::string> names{"von-neumann", "two-level", "weak-coupling",
                                                "low-density"};
    return names;
}

Scenario builtin_scenario(const std::string& name, std::optional<std::uint64_t> seed) {
    Scenario s;
    s.name = name;
    s.builtin = name;
    s.h_list = {1e-2, 1e-3, 1e-4};
    if (name == "two-level") {
        s.params = two_level_params();
        s.family = FamilyKind::two_level_exchange;
        s.t_grid = {1.0};
        const ComplexMatrix v = two_level_lowering();
        s.observables = {v.adjoint() * v};
    } else if (name == "von-neumann") {
        s.params = von_neumann_params(diagonal_projections(2));
        s.t_grid = {0.0, 1.0, 10.0};
        s.observables = {ComplexMatrix::Ones(2, 2)};
    } else if (name == "weak-coupling" || name == "low-density") {
        const std::uint64_t used = seed.value_or(1);
        s.seed = used;
        RandomParamsOptions opts;
        opts.with_d = name == "low-density";
        opts.with_v = name == "weak-coupling";
        s.params = random_params(SpaceDims(2, 2), used, opts);
        s.t_grid = {1.0};
        ComplexMatrix ground = ComplexMatrix::Zero(2, 2);
        ground(0, 0) = 1.0;
        s.observables = {ground};
    } else {
        throw Error(ErrorKind::ValidationError, "builtin: unknown scenario '" + name + "'");
    }
    s.dims = s.params.dims;
    if (name == "weak-coupling" || name == "low-density") {
        const ComplexVector half = ComplexVector::Constant(s.dims.n_env, cplx{0.5, 0.0});
        s.phi = CoherentFunction::constant(half, 1.0);
        s.psi = s.phi;
    } else {
        s.phi = CoherentFunction::zero(s.dims.n_env);
        s.psi = s.phi;
    }
    s.ode_step = default_ode_step(s.h_list);
    return s;
}

Scenario scenario_from_json(const json& doc) {
    if (!doc.is_object()) {
        schema_error("$", "scenario document must be an object");
    }
    std::optional<std::uint64_t> seed;
    if (doc.contains("seed")) {
        if (!doc["seed"].is_number_unsigned() && !doc["seed"].is_number_integer()) {
            schema_error("seed", "expected a nonnegative integer");
        }
        if (doc["seed"].is_number_integer() && doc["seed"].get<long long>() < 0) {
            validation_error("seed", "must be nonnegative");
        }
        seed = doc["seed"].get<std::uint64_t>();
    }

    Scenario s;
    if (doc.contains("builtin")) {
        if (!doc["builtin"].is_string()) {
            schema_error("builtin", "expected a string");
        }
        if (doc.contains("params")) {
            schema_error("params", "not allowed together with builtin");
        }
        s = builtin_scenario(doc["builtin"].get<std::string>(), seed);
        if (doc.contains("dims") && !(read_dims(doc["dims"], "dims") == s.dims)) {
            validation_error("dims", "does not match the builtin scenario");
        }
    } else {
        s.dims = read_dims(require(doc, "dims", ""), "dims");
        s.params = read_params(require(doc, "params", ""), s.dims);
        s.seed = seed;
        s.name = "custom";
        s.phi = CoherentFunction::zero(s.dims.n_env);
        s.psi = s.phi;
        if (!doc.contains("h_list")) {
            schema_error("h_list", "missing field");
        }
        if (!doc.contains("t_grid")) {
            schema_error("t_grid", "missing field");
        }
    }
    if (doc.contains("name")) {
        if (!doc["name"].is_string()) {
            schema_error("name", "expected a string");
        }
        s.name = doc["name"].get<std::string>();
    }
    if (doc.contains("origin")) {
        if (!doc["origin"].is_string()) {
            schema_error("origin", "expected a string");
        }
        s.builtin = doc["origin"].get<std::string>();
    }
    if (doc.contains("family")) {
        s.family = read_family(doc["family"], "family");
    }
    if (doc.contains("phi")) {
        s.phi = read_coherent(doc["phi"], "phi", s.dims.n_env);
    }
    if (doc.contains("psi")) {
        s.psi = read_coherent(doc["psi"], "psi", s.dims.n_env);
    }
    if (doc.contains("t_grid")) {
        s.t_grid = read_real_list(doc["t_grid"], "t_grid");
    }
    if (doc.contains("h_list")) {
        s.h_list = read_real_list(doc["h_list"], "h_list");
    }
    if (doc.contains("observables")) {
        s.observables = read_matrix_list(doc["observables"], "observables");
    }
    if (doc.contains("kraus")) {
        s.kraus = read_matrix_list(doc["kraus"], "kraus");
    }
    if (doc.contains("ode_step")) {
        s.ode_step = read_real(doc["ode_step"], "ode_step");
    } else {
        s.ode_step = default_ode_step(s.h_list);
    }
    validate_scenario(s);
    return s;
}

Scenario parse_scenario(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::ParseError, std::string("$: ") + e.what());
    }
    return scenario_from_json(doc);
}

json scenario_to_json(const Scenario& s) {
    json doc = {
        {"name", s.name},
        {"dims", {{"n0", s.dims.n0}, {"n_env", s.dims.n_env}}},
        {"params", params_to_json(s.params)},
        {"family", family_name(s.family)},
        {"phi", coherent_to_json(s.phi)},
        {"psi", coherent_to_json(s.psi)},
        {"t_grid", s.t_grid},
        {"h_list", s.h_list},
        {"observables", matrix_list_to_json(s.observables)},
        {"ode_step", s.ode_step},
    };
    if (!s.kraus.empty()) {
        doc["kraus"] = matrix_list_to_json(s.kraus);
    }
    if (s.builtin) {
        doc["origin"] = *s.builtin;
    }
    if (s.seed) {
        doc["seed"] = *s.seed;
    }
    return doc;
}

std::string serialize_scenario(const Scenario& s) { return scenario_to_json(s).dump(2); }

std::optional<double> ConvergenceReport::order_at(double t) const {
    for (const auto& f : fitted_orders) {
        if (f.t == t) {
            return f.order;
        }
    }
    return std::nullopt;
}

const ReportRow* ConvergenceReport::find(double t, double h) const {
    for (const auto& r : rows) {
        if (r.t == t && r.h == h) {
            return &r;
        }
    }
    return nullptr;
}

namespace {

ReportMetadata metadata_for(const Scenario& s) {
    ReportMetadata m;
    m.n0 = s.dims.n0;
    m.n_env = s.dims.n_env;
    m.seed = s.seed;
    m.alpha = lemma20_alpha(s.params);
    return m;
}

void finish_report(ConvergenceReport& r) {
    std::stable_sort(r.rows.begin(), r.rows.end(), [](const ReportRow& a, const ReportRow& b) {
        return a.t != b.t ? a.t < b.t : a.h < b.h;
    });
    std::map<double, std::vector<std::pair<double, double>>> by_t;
    for (const auto& row : r.rows) {
        by_t[row.t].emplace_back(row.h, row.abs_error);
    }
    r.fitted_orders.clear();
    for (const auto& [t, points] : by_t) {
        OrderFit fit{t, std::nullopt};
        if (points.size() >= 3) {
            try {
                fit.order = fit_order(points);
            } catch (const Error&) {
                fit.order.reset();
            }
        }
        r.fitted_orders.push_back(fit);
    }
}

double seconds_since(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

} // namespace

ConvergenceReport run_matrix_element_convergence(const Scenario& s) {
    const auto start = std::chrono::steady_clock::now();
    ConvergenceReport report;
    report.kind = "matrix-element";
    report.scenario = s.name;
    report.metadata = metadata_for(s);

    const QsdeCoefficients coeffs = limit_coefficients(s.params);
    const StepFamily family = s.step_family();
    std::vector<BlockOperator> steps;
    steps.reserve(s.h_list.size());
    for (const double h : s.h_list) {
        steps.push_back(family(h));
    }
    for (const double t : s.t_grid) {
        const ComplexMatrix continuous = qsde_matrix_element(coeffs, s.phi, s.psi, t, s.ode_step);
        const double continuous_norm = op_norm(continuous);
        for (std::size_t k = 0; k < s.h_list.size(); ++k) {
            const double h = s.h_list[k];
            const std::size_t n = steps_for(t, h);
            const std::size_t sites =
                std::max({n, sites_covering(s.phi, h), sites_covering(s.psi, h)});
            const DiscreteCoherent phi = discretize_coherent(s.phi, h, sites);
            const DiscreteCoherent psi = discretize_coherent(s.psi, h, sites);
            const DiscreteBracket discrete = discrete_matrix_element(steps[k], phi, psi, n);
            report.rows.push_back({t, h, op_norm(discrete.bracket_operator), continuous_norm,
                                   op_norm(discrete.bracket_operator - continuous)});
        }
    }
    finish_report(report);
    report.metadata.wall_time_seconds = seconds_since(start);
    return report;
}

ConvergenceReport run_semigroup_convergence(const Scenario& s) {
    const auto start = std::chrono::steady_clock::now();
    ConvergenceReport report;
    report.kind = "semigroup";
    report.scenario = s.name;
    report.metadata = metadata_for(s);

    const QsdeCoefficients coeffs = limit_coefficients(s.params);
    const StepFamily family = s.step_family();
    for (const double t : s.t_grid) {
        const SemigroupLimitReport check =
            discrete_semigroup_limit_check(family, coeffs, t, s.h_list);
        for (const auto& row : check.rows) {
            report.rows.push_back(
                {t, row.h, row.discrete_norm, row.continuous_norm, row.distance});
        }
    }
    finish_report(report);
    report.metadata.wall_time_seconds = seconds_since(start);
    return report;
}

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return {buf, res.ptr};
}

std::string emit_report(const ConvergenceReport& r, ReportFormat format, bool include_timing) {
    if (format == ReportFormat::csv) {
        std::ostringstream out;
        out << "t,h,discrete_norm,continuous_norm,abs_error,fitted_order\n";
        for (const auto& row : r.rows) {
            const auto order = r.order_at(row.t);
            out << format_double(row.t) << ',' << format_double(row.h) << ','
                << format_double(row.discrete_norm) << ',' << format_double(row.continuous_norm)
                << ',' << format_double(row.abs_error) << ','
                << (order ? format_double(*order) : std::string()) << '\n';
        }
        return out.str();
    }
    json rows = json::array();
    for (const auto& row : r.rows) {
        rows.push_back({{"t", row.t},
                        {"h", row.h},
                        {"discrete_norm", row.discrete_norm},
                        {"continuous_norm", row.continuous_norm},
                        {"abs_error", row.abs_error}});
    }
    json orders = json::array();
    for (const auto& f : r.fitted_orders) {
        orders.push_back({{"t", f.t}, {"order", f.order ? json(*f.order) : json(nullptr)}});
    }
    json meta = {{"n0", r.metadata.n0},
                 {"n_env", r.metadata.n_env},
                 {"seed", r.metadata.seed ? json(*r.metadata.seed) : json(nullptr)},
                 {"alpha", r.metadata.alpha}};
    if (include_timing) {
        meta["wall_time_seconds"] = r.metadata.wall_time_seconds;
    }
    const json doc = {{"kind", r.kind},
                      {"scenario", r.scenario},
                      {"rows", rows},
                      {"fitted_orders", orders},
                      {"metadata", meta}};
    return doc.dump(2) + "\n";
}

ConvergenceReport report_from_json(const json& doc) {
    ConvergenceReport r;
    try {
        r.kind = doc.at("kind").get<std::string>();
        r.scenario = doc.at("scenario").get<std::string>();
        for (const auto& row : doc.at("rows")) {
            r.rows.push_back({row.at("t").get<double>(), row.at("h").get<double>(),
                              row.at("discrete_norm").get<double>(),
                              row.at("continuous_norm").get<double>(),
                              row.at("abs_error").get<double>()});
        }
        for (const auto& f : doc.at("fitted_orders")) {
            OrderFit fit{f.at("t").get<double>(), std::nullopt};
            if (!f.at("order").is_null()) {
                fit.order = f.at("order").get<double>();
            }
            r.fitted_orders.push_back(fit);
        }
        const json& meta = doc.at("metadata");
        r.metadata.n0 = meta.at("n0").get<Eigen::Index>();
        r.metadata.n_env = meta.at("n_env").get<Eigen::Index>();
        if (!meta.at("seed").is_null()) {
            r.metadata.seed = meta.at("seed").get<std::uint64_t>();
        }
        r.metadata.alpha = meta.at("alpha").get<double>();
        if (meta.contains("wall_time_seconds")) {
            r.metadata.wall_time_seconds = meta.at("wall_time_seconds").get<double>();
        }
    } catch (const json::exception& e) {
        throw Error(ErrorKind::SchemaError, std::string("report: ") + e.what());
    }
    return r;
}

} // namespace rqi
