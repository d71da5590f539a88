#include "eqtk/cli.hpp"

#include "eqtk/oscillatory.hpp"
#include "eqtk/shear.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace eqtk::cli {

namespace {

using io::Json;
using io::SchemaError;

// Returns params[key], inserting `fallback` first when the key is absent.
const Json& with_default(Json& params, const std::string& key, const Json& fallback) {
    if (!params.contains(key)) params[key] = fallback;
    return params[key];
}

std::int64_t int_param(Json& params, const std::string& key, std::optional<std::int64_t> fallback = {}) {
    if (!params.contains(key)) {
        if (!fallback) throw SchemaError("missing parameter '" + key + "'");
        params[key] = *fallback;
    }
    const auto& v = params[key];
    if (!v.is_number_integer()) throw SchemaError("parameter '" + key + "' must be an integer");
    return v.get<std::int64_t>();
}

double real_param(Json& params, const std::string& key, std::optional<double> fallback = {}) {
    if (!params.contains(key)) {
        if (!fallback) throw SchemaError("missing parameter '" + key + "'");
        params[key] = *fallback;
    }
    return io::real_from(params[key], "parameter '" + key + "'");
}

std::string string_param(Json& params, const std::string& key, const std::string& fallback) {
    const auto& v = with_default(params, key, fallback);
    if (!v.is_string()) throw SchemaError("parameter '" + key + "' must be a string");
    return v.get<std::string>();
}

// A number or a list of numbers; stored back as a list.
std::vector<double> real_list_param(Json& params, const std::string& key, std::optional<std::vector<double>> fallback = {}) {
    if (!params.contains(key)) {
        if (!fallback) throw SchemaError("missing parameter '" + key + "'");
        params[key] = *fallback;
    }
    if (!params[key].is_array()) params[key] = Json::array({params[key]});
    std::vector<double> out;
    for (const auto& x : params[key]) out.push_back(io::real_from(x, "parameter '" + key + "'"));
    if (out.empty()) throw SchemaError("parameter '" + key + "' is empty");
    return out;
}

std::vector<std::int64_t> int_list_param(Json& params, const std::string& key,
                                         std::optional<std::vector<std::int64_t>> fallback = {}) {
    if (!params.contains(key)) {
        if (!fallback) throw SchemaError("missing parameter '" + key + "'");
        params[key] = *fallback;
    }
    if (!params[key].is_array()) params[key] = Json::array({params[key]});
    std::vector<std::int64_t> out;
    for (const auto& x : params[key]) {
        if (!x.is_number_integer()) throw SchemaError("parameter '" + key + "' must hold integers");
        out.push_back(x.get<std::int64_t>());
    }
    if (out.empty()) throw SchemaError("parameter '" + key + "' is empty");
    return out;
}

std::uint64_t require_seed(const RunConfig& cfg) {
    if (!cfg.seed) throw SchemaError("command '" + cfg.command + "' is Monte-Carlo and needs --seed");
    return *cfg.seed;
}

VectorNorm norm_param(Json& params) {
    const std::string name = string_param(params, "norm", "euclidean");
    if (name == "euclidean") return VectorNorm::Euclidean;
    if (name == "sup") return VectorNorm::Sup;
    throw SchemaError("norm must be 'euclidean' or 'sup'");
}

BumpFunction bump_from(const Json& value, const std::string& where) {
    if (!value.is_object()) throw SchemaError(where + ": bump must be an object");
    const double x0 = value.contains("x0") ? io::real_from(value["x0"], where) : 0.0;
    const double x1 = value.contains("x1") ? io::real_from(value["x1"], where) : 1.0;
    const auto degree = value.contains("degree") ? value["degree"].get<unsigned>() : 3u;
    return BumpFunction(x0, x1, degree);
}

Json bump_json(const BumpFunction& f) {
    return Json{{"x0", f.x0()}, {"x1", f.x1()}, {"degree", f.degree()}};
}

std::string join(const RationalVector& v, const char* sep = " ") {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + format_rational(v[i]);
    return s;
}

Json coords_json(const Character& c) { return Json(c.coords()); }

Table weight_table(const WeightSystem& w) {
    Table t;
    for (std::size_t i = 0; i < w.rank(); ++i) t.header.push_back("w" + std::to_string(i + 1));
    t.header.push_back("multiplicity");
    for (const auto& [c, m] : w.entries()) {
        std::vector<std::string> row;
        for (auto x : c.coords()) row.push_back(std::to_string(x));
        row.push_back(std::to_string(m));
        t.rows.push_back(std::move(row));
    }
    return t;
}

CommandOutput weight_output(const WeightSystem& w) {
    Json phi = Json::array();
    for (const auto& c : phi_of(w)) phi.push_back(coords_json(c));
    return {Json{{"representation", io::to_json(w)}, {"dimension", w.dimension()}, {"phi", phi}}, weight_table(w)};
}

// ---- weights ----

CommandOutput weights_wedge(RunConfig& cfg) {
    return weight_output(wedge_closure(io::weight_system_from(io::require(cfg.params, "weights", "config"), "weights")));
}

CommandOutput weights_ext(RunConfig& cfg) {
    const auto w = io::weight_system_from(io::require(cfg.params, "weights", "config"), "weights");
    const auto k = int_param(cfg.params, "k");
    if (k < 0) throw SchemaError("k must be nonnegative");
    return weight_output(exterior_power(w, static_cast<std::uint64_t>(k)));
}

CommandOutput weights_tensor(RunConfig& cfg) {
    const auto a = io::weight_system_from(io::require(cfg.params, "a", "config"), "a");
    const auto b = io::weight_system_from(io::require(cfg.params, "b", "config"), "b");
    return weight_output(tensor(a, b));
}

// ---- cones ----

CommandOutput cones_decompose(RunConfig& cfg) {
    const auto phi = io::functional_set_from(cfg.params, "config");
    const auto schedule = io::schedule_from(io::require(cfg.params, "schedule", "config"), phi.size(), "schedule");
    DiagonalMetric metric;
    if (cfg.params.contains("metric")) metric.weights = io::rational_vector_from(cfg.params["metric"], "metric");
    const auto dec = classify_sequence(phi, schedule, metric);

    // a witness vector for the bounded part: zero on phi0, positive on phi1
    IndexSet bounded;
    std::set_union(dec.phi0.begin(), dec.phi0.end(), dec.phi1.begin(), dec.phi1.end(), std::back_inserter(bounded));
    Json witness = nullptr;
    if (!bounded.empty()) {
        std::vector<RationalVector> fs;
        IndexSet local_phi0;
        for (std::size_t i = 0; i < bounded.size(); ++i) {
            fs.push_back(phi[bounded[i]]);
            if (std::binary_search(dec.phi0.begin(), dec.phi0.end(), bounded[i])) local_phi0.push_back(i);
        }
        try {
            witness = io::to_json(interior_vector(FunctionalSet(phi.dim(), fs), local_phi0));
        } catch (const InfeasibleError&) {
            throw InvariantViolation("no interior vector exists for the bounded functionals");
        }
    }

    auto basis_json = [](const std::vector<RationalVector>& basis) {
        Json out = Json::array();
        for (const auto& b : basis) out.push_back(io::to_json(b));
        return out;
    };
    CommandOutput out;
    out.result = Json{{"phi_inf", dec.phi_inf}, {"phi1", dec.phi1},           {"phi0", dec.phi0},
                      {"w_basis", basis_json(dec.w_basis)}, {"u_basis", basis_json(dec.u_basis)},
                      {"interior_vector", witness}};
    out.table.header = {"index", "functional", "class"};
    for (std::size_t i = 0; i < phi.size(); ++i) {
        const char* cls = std::binary_search(dec.phi0.begin(), dec.phi0.end(), i)   ? "phi0"
                          : std::binary_search(dec.phi1.begin(), dec.phi1.end(), i) ? "phi1"
                                                                                     : "phi_inf";
        out.table.rows.push_back({std::to_string(i), join(phi[i]), cls});
    }
    return out;
}

// ---- poly ----

CommandOutput poly_volume(RunConfig& cfg) {
    const auto p = io::polytope_from(cfg.params, "config");
    const bool empty = is_empty(p);
    if (!empty && !is_bounded(p)) throw UnboundedError("polytope is unbounded; its volume is infinite");
    const Rational v = volume(p);
    CommandOutput out;
    out.result = Json{{"empty", empty}, {"volume", io::to_json(v)}, {"volume_real", to_double(v)}};
    out.table.header = {"volume", "volume_real"};
    out.table.rows.push_back({format_rational(v), io::format_real(to_double(v))});
    return out;
}

CommandOutput poly_vertices(RunConfig& cfg) {
    const auto p = io::polytope_from(cfg.params, "config");
    const auto verts = vertices(p);
    CommandOutput out;
    Json list = Json::array();
    for (const auto& v : verts) list.push_back(io::to_json(v));
    out.result = Json{{"count", verts.size()}, {"vertices", list}};
    for (std::size_t i = 0; i < p.dim(); ++i) out.table.header.push_back("x" + std::to_string(i + 1));
    for (const auto& v : verts) {
        std::vector<std::string> row;
        for (const auto& x : v) row.push_back(format_rational(x));
        out.table.rows.push_back(std::move(row));
    }
    return out;
}

CommandOutput poly_ratio(RunConfig& cfg) {
    const auto phi = io::functional_set_from(cfg.params, "config");
    const auto schedule = io::schedule_from(io::require(cfg.params, "schedule", "config"), phi.size(), "schedule");
    const auto& offsets = io::require(cfg.params, "offsets", "config");
    if (!offsets.is_array() || offsets.size() != phi.size()) throw SchemaError("offsets needs one entry per functional");
    // each offset is a constant or {"const": b, "per_n": c}, meaning b + c n
    std::vector<std::pair<Rational, Rational>> affine;
    for (std::size_t i = 0; i < offsets.size(); ++i) {
        const std::string at = "offsets[" + std::to_string(i) + "]";
        if (offsets[i].is_object()) {
            const Rational b = offsets[i].contains("const") ? io::rational_from(offsets[i]["const"], at) : Rational(0);
            const Rational c = offsets[i].contains("per_n") ? io::rational_from(offsets[i]["per_n"], at) : Rational(0);
            affine.emplace_back(b, c);
        } else {
            affine.emplace_back(io::rational_from(offsets[i], at), Rational(0));
        }
    }
    const auto n_list = int_list_param(cfg.params, "n_list");
    const double tolerance = real_param(cfg.params, "tolerance", 0.05);
    const auto& omega_spec = with_default(cfg.params, "omega", "sqrt");
    OmegaRule omega_rule;
    if (omega_spec.is_string() && omega_spec.get<std::string>() == "sqrt") {
        omega_rule = [](std::int64_t n) { return rounded_sqrt(n); };
    } else {
        const Rational constant = io::rational_from(omega_spec, "omega");
        omega_rule = [constant](std::int64_t) { return constant; };
    }
    const auto dec = classify_sequence(phi, schedule);
    const auto report = ratio_experiment(
        phi, dec,
        [&affine](std::int64_t n) {
            RationalVector b;
            for (const auto& [c0, c1] : affine) b.push_back(c0 + c1 * n);
            return b;
        },
        omega_rule, n_list, tolerance, cfg.threads);

    CommandOutput out;
    Json rows = Json::array();
    out.table.header = {"n", "omega", "vol_split", "vol_full", "ratio", "ratio_real", "contained"};
    for (const auto& r : report.rows) {
        rows.push_back(Json{{"n", r.n},
                            {"omega", io::to_json(r.omega)},
                            {"vol_split", io::to_json(r.split_volume)},
                            {"vol_full", io::to_json(r.full_volume)},
                            {"ratio", io::to_json(r.ratio)},
                            {"ratio_real", to_double(r.ratio)},
                            {"contained", r.contained}});
        out.table.rows.push_back({std::to_string(r.n), format_rational(r.omega), format_rational(r.split_volume),
                                  format_rational(r.full_volume), format_rational(r.ratio),
                                  io::format_real(to_double(r.ratio)), r.contained ? "true" : "false"});
    }
    out.result = Json{{"rows", rows},
                      {"limit_estimate", report.limit_estimate},
                      {"converges_to_one", report.converges_to_one}};
    for (const auto& r : report.rows) {
        if (!r.contained) throw InvariantViolation("split polytope escapes the full polytope at n = " + std::to_string(r.n));
    }
    return out;
}

// ---- lattice ----

CommandOutput lattice_svp(RunConfig& cfg) {
    const auto b = io::matrix_from(io::require(cfg.params, "matrix", "config"), "matrix");
    const auto norm = norm_param(cfg.params);
    const auto sv = shortest_vector(b, norm);
    CommandOutput out;
    out.result = Json{{"norm", sv.norm}, {"z", sv.z}, {"lower", sv.lower}, {"upper", sv.upper}, {"candidates", sv.candidates}};
    std::string z;
    for (std::size_t i = 0; i < sv.z.size(); ++i) z += (i ? " " : "") + std::to_string(sv.z[i]);
    out.table.header = {"norm", "lower", "upper", "z"};
    out.table.rows.push_back({io::format_real(sv.norm), io::format_real(sv.lower), io::format_real(sv.upper), z});
    return out;
}

CommandOutput lattice_omega(RunConfig& cfg) {
    const double eps = real_param(cfg.params, "epsilon");
    HPolytope p(1);
    if (cfg.params.contains("parabolic")) {
        p = parabolic_omega(io::parabolic_from(cfg.params["parabolic"], "parabolic"), eps);
    } else {
        const auto act = io::action_from(io::require(cfg.params, "action", "config"), "action");
        std::set<Character> subset;
        if (cfg.params.contains("phi_subset")) {
            for (const auto& c : cfg.params["phi_subset"]) subset.insert(io::character_from(c, "phi_subset"));
        }
        p = omega_polytope(act, eps, subset, norm_param(cfg.params));
    }
    const bool empty = is_empty(p);
    const bool bounded = !empty && is_bounded(p);
    CommandOutput out;
    out.result = Json{{"polytope", io::to_json(p)}, {"empty", empty}, {"bounded", bounded}};
    if (bounded) {
        const Rational v = volume(p);
        out.result["volume"] = io::to_json(v);
        out.result["volume_real"] = to_double(v);
    }
    for (std::size_t i = 0; i < p.dim(); ++i) out.table.header.push_back("a" + std::to_string(i + 1));
    out.table.header.push_back("offset");
    for (const auto& h : p.constraints()) {
        std::vector<std::string> row;
        for (const auto& x : h.normal) row.push_back(format_rational(x));
        row.push_back(format_rational(h.offset));
        out.table.rows.push_back(std::move(row));
    }
    return out;
}

CommandOutput lattice_mahler(RunConfig& cfg) {
    const auto b = io::matrix_from(io::require(cfg.params, "matrix", "config"), "matrix");
    const double eta = real_param(cfg.params, "eta");
    const auto norm = norm_param(cfg.params);
    const double shortest = shortest_vector_norm(b, norm);
    const bool member = mahler_membership(b, eta, norm);
    CommandOutput out;
    out.result = Json{{"member", member}, {"shortest", shortest}};
    out.table.header = {"member", "shortest"};
    out.table.rows.push_back({member ? "true" : "false", io::format_real(shortest)});
    return out;
}

// ---- count ----

SymplecticSpec spec_param(Json& params) {
    int_param(params, "N", 1);
    with_default(params, "d", Json::array({1}));
    return io::spec_from(params, "config");
}

CommandOutput count_sp(RunConfig& cfg) {
    const auto spec = spec_param(cfg.params);
    const auto radii = real_list_param(cfg.params, "R", std::vector<double>{128});
    const auto rows = count_series_n1(spec, radii, cfg.threads);
    CommandOutput out;
    Json list = Json::array();
    out.table.header = {"R", "count", "N_R", "count_over_N_R"};
    for (const auto& r : rows) {
        const double ratio = r.expected > 0 ? static_cast<double>(r.count) / r.expected : 0.0;
        list.push_back(Json{{"R", r.radius}, {"count", r.count}, {"N_R", r.expected}, {"count_over_N_R", ratio},
                            {"fitted_constant", r.fitted_constant}});
        out.table.rows.push_back({io::format_real(r.radius), std::to_string(r.count), io::format_real(r.expected),
                                  io::format_real(ratio)});
    }
    out.result = Json{{"rows", list}};
    return out;
}

CommandOutput count_constants(RunConfig& cfg) {
    const auto spec = spec_param(cfg.params);
    const auto samples = int_param(cfg.params, "mc_samples", 0);
    if (samples < 0) throw SchemaError("mc_samples must be nonnegative");
    const auto c1 = constant_c1(spec.n);
    const double c2 = constant_c2(spec);
    Json xi_values = Json::object();
    for (std::size_t k = 1; k <= spec.n; ++k) xi_values["xi(" + std::to_string(2 * k) + ")"] = xi(2.0 * k);
    CommandOutput out;
    out.result = Json{{"C1", c1.value},
                      {"C1_polytope_volume", io::to_json(c1.polytope_volume)},
                      {"C1_normalization", c1.normalization},
                      {"C2", c2},
                      {"jacobian", jacobian_divisor(spec).str()},
                      {"quadric_volume", quadric_volume(spec.n)},
                      {"xi_values", xi_values}};
    out.table.header = {"name", "value"};
    out.table.rows = {{"C1", io::format_real(c1.value)},
                      {"C1_polytope_volume", format_rational(c1.polytope_volume)},
                      {"C2", io::format_real(c2)},
                      {"jacobian", jacobian_divisor(spec).str()}};
    if (samples > 0) {
        const auto mc = quadric_volume_mc(spec.n, static_cast<std::uint64_t>(samples), require_seed(cfg), cfg.threads);
        const double div = jacobian_divisor(spec).convert_to<double>();
        out.result["C2_monte_carlo"] = mc.volume / div;
        out.result["C2_monte_carlo_standard_error"] = mc.standard_error / div;
        out.table.rows.push_back({"C2_monte_carlo", io::format_real(mc.volume / div)});
    }
    return out;
}

CommandOutput count_ballratio(RunConfig& cfg) {
    const auto spec = spec_param(cfg.params);
    const double radius = real_param(cfg.params, "R", 1000.0);
    const double eps = real_param(cfg.params, "epsilon", 0.0);
    const auto samples = int_param(cfg.params, "samples", 1000000);
    if (samples <= 0) throw SchemaError("samples must be positive");
    const auto r = ball_ratio_mc(spec, radius, eps, static_cast<std::uint64_t>(samples), require_seed(cfg), cfg.threads);
    CommandOutput out;
    out.result = Json{{"ratio_BRe_BR", r.ratio_eps},
                      {"ratio_BR_C2RN2", r.ratio_normalized},
                      {"standard_error", r.standard_error},
                      {"in_ball", r.in_ball},
                      {"in_eps_ball", r.in_eps_ball}};
    out.table.header = {"R", "epsilon", "ratio_BRe_BR", "ratio_BR_C2RN2", "standard_error"};
    out.table.rows.push_back({io::format_real(radius), io::format_real(eps), io::format_real(r.ratio_eps),
                              io::format_real(r.ratio_normalized), io::format_real(r.standard_error)});
    return out;
}

CommandOutput count_growth(RunConfig& cfg) {
    if (!cfg.params.contains("N")) cfg.params["N"] = 2;
    if (!cfg.params.contains("d")) cfg.params["d"] = Json::array({1, 2});
    const auto spec = spec_param(cfg.params);
    const auto radii = real_list_param(cfg.params, "R", std::vector<double>{1e2, 1e3, 1e4});
    const double eps = real_param(cfg.params, "epsilon_prime", 0.1);
    const auto samples = int_param(cfg.params, "samples", 1000);
    if (samples <= 0) throw SchemaError("samples must be positive");
    const auto rows = growth_estimate_check(spec, static_cast<std::uint64_t>(samples), radii, eps, require_seed(cfg),
                                            cfg.threads);
    CommandOutput out;
    Json list = Json::array();
    out.table.header = {"R", "max_normalized_deviation", "max_absolute_deviation", "samples"};
    for (const auto& r : rows) {
        list.push_back(Json{{"R", r.radius},
                            {"max_normalized_deviation", r.max_normalized_deviation},
                            {"max_absolute_deviation", r.max_absolute_deviation},
                            {"samples", r.samples}});
        out.table.rows.push_back({io::format_real(r.radius), io::format_real(r.max_normalized_deviation),
                                  io::format_real(r.max_absolute_deviation), std::to_string(r.samples)});
    }
    out.result = Json{{"rows", list}};
    return out;
}

// ---- dyn ----

CommandOutput dyn_osc(RunConfig& cfg) {
    const auto m = int_param(cfg.params, "m", 1);
    const auto ns = int_list_param(cfg.params, "n", std::vector<std::int64_t>{10, 100, 1000, 10000});
    const auto f = bump_from(with_default(cfg.params, "bump", bump_json(BumpFunction(0, 1, 3))), "bump");
    cfg.params["bump"] = bump_json(f);
    CommandOutput out;
    Json list = Json::array();
    out.table.header = {"n", "re", "im", "abs", "error_estimate"};
    for (auto n : ns) {
        if (n < 0) throw SchemaError("n must be nonnegative");
        const auto r = oscillatory_integral(f, m, n);
        list.push_back(Json{{"n", n}, {"re", r.value.real()}, {"im", r.value.imag()}, {"abs", std::abs(r.value)},
                            {"error_estimate", r.error_estimate}});
        out.table.rows.push_back({std::to_string(n), io::format_real(r.value.real()), io::format_real(r.value.imag()),
                                  io::format_real(std::abs(r.value)), io::format_real(r.error_estimate)});
        if (std::abs(r.value) > f.integral() + 1e-8) throw InvariantViolation("|integral| exceeds the integral of f");
    }
    out.result = Json{{"integral_f", f.integral()}, {"rows", list}};
    return out;
}

CommandOutput dyn_wrap(RunConfig& cfg) {
    const auto ns = int_list_param(cfg.params, "n", std::vector<std::int64_t>{10, 100, 1000, 10000});
    const auto window = real_list_param(cfg.params, "window", std::vector<double>{0.0, 1.0});
    if (window.size() != 2) throw SchemaError("window must be [x_lo, x_hi]");
    const auto points = int_param(cfg.params, "points", 100000);
    if (points <= 0) throw SchemaError("points must be positive");
    std::vector<WrapMode> modes;
    if (cfg.params.contains("modes")) {
        for (const auto& m : cfg.params["modes"]) {
            if (!m.contains("m") || !m["m"].is_number_integer()) throw SchemaError("each mode needs an integer m");
            modes.push_back({m["m"].get<std::int64_t>(), bump_from(m.contains("bump") ? m["bump"] : Json::object(), "mode")});
        }
    } else {
        modes = default_wrap_modes();
        Json list = Json::array();
        for (const auto& m : modes) list.push_back(Json{{"m", m.m}, {"bump", bump_json(m.g)}});
        cfg.params["modes"] = list;
    }
    CommandOutput out;
    Json list = Json::array();
    out.table.header = {"n", "discrepancy"};
    for (auto n : ns) {
        if (n < 0) throw SchemaError("n must be nonnegative");
        const double d = wrap_curve_discrepancy(n, {window[0], window[1]}, static_cast<std::size_t>(points), modes);
        list.push_back(Json{{"n", n}, {"discrepancy", d}});
        out.table.rows.push_back({std::to_string(n), io::format_real(d)});
    }
    out.result = Json{{"rows", list}};
    return out;
}

CommandOutput dyn_shear(RunConfig& cfg) {
    ShearConfig sc;
    sc.n = static_cast<std::size_t>(int_param(cfg.params, "n", 2));
    const auto v = real_list_param(cfg.params, "v", std::vector<double>(sc.n >= 2 ? sc.n - 1 : 1, 1.0));
    sc.v = Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
    sc.lambda = real_param(cfg.params, "lambda", 1.0);
    sc.k_list = real_list_param(cfg.params, "k", std::vector<double>{1e2, 1e3, 1e4});
    const auto steps = int_param(cfg.params, "grid_steps", 20);
    if (steps < 2) throw SchemaError("grid_steps must be at least 2");
    const auto rep = conjugation_limit_check(sc);
    const auto grid = shear_grid_check(sc.v / sc.v.norm(), -3, 3, -2, 2, static_cast<std::size_t>(steps), cfg.threads);

    CommandOutput out;
    Json list = Json::array();
    out.table.header = {"k", "norm_vk", "t_k", "deviation"};
    for (const auto& r : rep.rows) {
        list.push_back(Json{{"k", r.k}, {"norm_vk", r.norm_vk}, {"t_k", r.t_k}, {"deviation", r.deviation}});
        out.table.rows.push_back({io::format_real(r.k), io::format_real(r.norm_vk), io::format_real(r.t_k),
                                  io::format_real(r.deviation)});
    }
    out.result = Json{{"rows", list},
                      {"decreasing", rep.decreasing},
                      {"grid", Json{{"cells", grid.cells},
                                    {"max_difference", grid.max_difference},
                                    {"max_lorentz_defect", grid.max_lorentz_defect}}}};
    if (grid.max_lorentz_defect > 1e-10) throw InvariantViolation("generated element fails to preserve Q");
    if (grid.max_difference > 1e-9) throw InvariantViolation("closed form disagrees with the matrix action");
    return out;
}

using Handler = std::function<CommandOutput(RunConfig&)>;

const std::map<std::string, Handler>& handlers() {
    static const std::map<std::string, Handler> table{
        {"weights wedge", weights_wedge},   {"weights tensor", weights_tensor},   {"weights ext", weights_ext},
        {"cones decompose", cones_decompose}, {"poly volume", poly_volume},       {"poly vertices", poly_vertices},
        {"poly ratio", poly_ratio},         {"lattice svp", lattice_svp},         {"lattice omega", lattice_omega},
        {"lattice mahler", lattice_mahler}, {"count sp", count_sp},               {"count constants", count_constants},
        {"count ballratio", count_ballratio}, {"count growth", count_growth},     {"dyn osc", dyn_osc},
        {"dyn wrap", dyn_wrap},             {"dyn shear", dyn_shear},
    };
    return table;
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

int exit_code_for(const std::exception& e) {
    if (dynamic_cast<const InvariantViolation*>(&e)) return kInvariantViolation;
    if (dynamic_cast<const SchemaError*>(&e) || dynamic_cast<const ParseError*>(&e) ||
        dynamic_cast<const DimensionError*>(&e) || dynamic_cast<const DomainError*>(&e) ||
        dynamic_cast<const UnboundedError*>(&e) || dynamic_cast<const nlohmann::json::exception*>(&e)) {
        return kSchemaError;
    }
    return kNumericalError;
}

}  // namespace

std::vector<std::string> command_names() {
    std::vector<std::string> out;
    for (const auto& [name, h] : handlers()) out.push_back(name);
    return out;
}

CommandOutput execute(RunConfig& config) {
    const auto it = handlers().find(config.command);
    if (it == handlers().end()) throw SchemaError("unknown command '" + config.command + "'");
    if (config.format != "json" && config.format != "csv") throw SchemaError("format must be json or csv");
    if (config.threads == 0) throw SchemaError("threads must be positive");
    if (!config.params.is_object()) throw SchemaError("config must be an object");
    return it->second(config);
}

std::string render(const RunConfig& config, const CommandOutput& output) {
    if (config.format == "csv") {
        std::string s;
        for (std::size_t i = 0; i < output.table.header.size(); ++i) s += (i ? "," : "") + csv_field(output.table.header[i]);
        s += "\n";
        for (const auto& row : output.table.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) s += (i ? "," : "") + csv_field(row[i]);
            s += "\n";
        }
        return s;
    }
    Json resolved{{"command", config.command}};
    if (config.seed) resolved["seed"] = *config.seed;
    resolved["params"] = config.params;
    const Json doc{{"schema_version", kSchemaVersion}, {"config", resolved}, {"result", output.result}};
    return doc.dump(2) + "\n";
}

int run(RunConfig config, std::ostream& out, std::ostream& err) {
    try {
        const auto output = execute(config);
        const std::string text = render(config, output);
        if (config.out.empty()) {
            out << text;
        } else {
            std::ofstream file(config.out, std::ios::binary);
            if (!file) throw SchemaError("cannot open output file '" + config.out + "'");
            file << text;
        }
        return kOk;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
}

namespace {

struct Flag {
    const char* name;
    const char* key;
    enum Kind { Int, Real, Text, IntList, RealList } kind;
    const char* help;
};

const std::map<std::string, std::vector<Flag>>& flags() {
    static const std::map<std::string, std::vector<Flag>> table{
        {"weights ext", {{"--k", "k", Flag::Int, "exterior power degree"}}},
        {"poly ratio", {{"--n-list", "n_list", Flag::IntList, "values of n"},
                        {"--tolerance", "tolerance", Flag::Real, "allowed |ratio - 1| at the last n"}}},
        {"lattice svp", {{"--norm", "norm", Flag::Text, "euclidean or sup"}}},
        {"lattice omega", {{"--epsilon", "epsilon", Flag::Real, "threshold epsilon"},
                           {"--norm", "norm", Flag::Text, "euclidean or sup"}}},
        {"lattice mahler", {{"--eta", "eta", Flag::Real, "Mahler threshold"},
                            {"--norm", "norm", Flag::Text, "euclidean or sup"}}},
        {"count sp", {{"--N", "N", Flag::Int, "symplectic rank N"},
                      {"--d", "d", Flag::IntList, "eigenvalue parameters d_i"},
                      {"--R", "R", Flag::RealList, "radii"}}},
        {"count constants", {{"--N", "N", Flag::Int, "symplectic rank N"},
                             {"--d", "d", Flag::IntList, "eigenvalue parameters d_i"},
                             {"--mc-samples", "mc_samples", Flag::Int, "Monte-Carlo check of C2 (0 = off)"}}},
        {"count ballratio", {{"--N", "N", Flag::Int, "symplectic rank N"},
                             {"--d", "d", Flag::IntList, "eigenvalue parameters d_i"},
                             {"--R", "R", Flag::Real, "radius"},
                             {"--epsilon", "epsilon", Flag::Real, "thickness of B_{R,eps}"},
                             {"--samples", "samples", Flag::Int, "Monte-Carlo samples"}}},
        {"count growth", {{"--N", "N", Flag::Int, "symplectic rank N"},
                          {"--d", "d", Flag::IntList, "eigenvalue parameters d_i"},
                          {"--R", "R", Flag::RealList, "radii"},
                          {"--epsilon-prime", "epsilon_prime", Flag::Real, "simple-root floor"},
                          {"--samples", "samples", Flag::Int, "samples per radius"}}},
        {"dyn osc", {{"--m", "m", Flag::Int, "frequency m"}, {"--n", "n", Flag::IntList, "values of n"}}},
        {"dyn wrap", {{"--n", "n", Flag::IntList, "values of n"},
                      {"--points", "points", Flag::Int, "grid points"},
                      {"--window", "window", Flag::RealList, "x window lo,hi"}}},
        {"dyn shear", {{"--n", "n", Flag::Int, "hyperbolic dimension"},
                       {"--v", "v", Flag::RealList, "direction v"},
                       {"--lambda", "lambda", Flag::Real, "limit parameter"},
                       {"--k", "k", Flag::RealList, "scales k"},
                       {"--grid-steps", "grid_steps", Flag::Int, "grid points per axis"}}},
    };
    return table;
}

Json flag_value(const Flag& f, const std::vector<std::string>& raw) {
    auto integer = [&](const std::string& s) -> Json {
        std::size_t used = 0;
        const long long v = std::stoll(s, &used);
        if (used != s.size()) throw SchemaError(std::string(f.name) + ": '" + s + "' is not an integer");
        return v;
    };
    auto real = [&](const std::string& s) -> Json {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size()) throw SchemaError(std::string(f.name) + ": '" + s + "' is not a number");
        return v;
    };
    try {
        switch (f.kind) {
            case Flag::Int: return integer(raw.at(0));
            case Flag::Real: return real(raw.at(0));
            case Flag::Text: return raw.at(0);
            case Flag::IntList: {
                Json a = Json::array();
                for (const auto& s : raw) a.push_back(integer(s));
                return a;
            }
            case Flag::RealList: {
                Json a = Json::array();
                for (const auto& s : raw) a.push_back(real(s));
                return a;
            }
        }
    } catch (const std::logic_error&) {
        throw SchemaError(std::string(f.name) + ": malformed value");
    }
    return nullptr;
}

}  // namespace

int main(int argc, char** argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact polytope, lattice and counting experiments"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::uint64_t seed = 0;
    std::string out_path;
    std::string format = "json";
    unsigned threads = 1;
    auto* seed_opt = app.add_option("--seed", seed, "64-bit seed for Monte-Carlo commands");
    app.add_option("--config", config_path, "flat JSON config file");
    app.add_option("--out", out_path, "output file (default: stdout)");
    app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    app.add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);

    struct Leaf {
        CLI::App* app;
        std::string name;
        std::vector<std::pair<const Flag*, std::shared_ptr<std::vector<std::string>>>> values;
    };
    std::vector<Leaf> leaves;
    std::map<std::string, CLI::App*> groups;
    for (const auto& name : command_names()) {
        const auto space = name.find(' ');
        const std::string group = name.substr(0, space), sub = name.substr(space + 1);
        if (!groups.count(group)) {
            groups[group] = app.add_subcommand(group);
            groups[group]->require_subcommand(1);
            groups[group]->fallthrough();
        }
        Leaf leaf{groups[group]->add_subcommand(sub), name, {}};
        leaf.app->fallthrough();
        if (const auto it = flags().find(name); it != flags().end()) {
            for (const auto& f : it->second) {
                auto store = std::make_shared<std::vector<std::string>>();
                auto* opt = leaf.app->add_option(f.name, *store, f.help);
                if (f.kind == Flag::IntList || f.kind == Flag::RealList) opt->delimiter(',');
                else opt->expected(1);
                leaf.values.emplace_back(&f, store);
            }
        }
        leaves.push_back(std::move(leaf));
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kSchemaError;
    }

    RunConfig cfg;
    try {
        if (!config_path.empty()) {
            std::ifstream file(config_path);
            if (!file) throw SchemaError("cannot read config '" + config_path + "'");
            Json flat = Json::parse(file);
            if (!flat.is_object()) throw SchemaError("config file must hold a JSON object");
            // reserved keys configure the run; everything else is a command parameter
            if (flat.contains("seed")) cfg.seed = flat["seed"].get<std::uint64_t>();
            if (flat.contains("threads")) cfg.threads = flat["threads"].get<unsigned>();
            if (flat.contains("format")) cfg.format = flat["format"].get<std::string>();
            if (flat.contains("out")) cfg.out = flat["out"].get<std::string>();
            if (flat.contains("command")) cfg.command = flat["command"].get<std::string>();
            for (const char* k : {"seed", "threads", "format", "out", "command"}) flat.erase(k);
            cfg.params = std::move(flat);
        }
        if (*seed_opt) cfg.seed = seed;
        if (app.count("--threads")) cfg.threads = threads;
        if (app.count("--format")) cfg.format = format;
        if (app.count("--out")) cfg.out = out_path;
        for (const auto& leaf : leaves) {
            if (!leaf.app->parsed()) continue;
            if (!cfg.command.empty() && cfg.command != leaf.name) {
                throw SchemaError("config is for '" + cfg.command + "' but '" + leaf.name + "' was requested");
            }
            cfg.command = leaf.name;
            for (const auto& [f, store] : leaf.values) {
                if (!store->empty()) cfg.params[f->key] = flag_value(*f, *store);
            }
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kSchemaError;
    }
    return run(std::move(cfg), out, err);
}

}  // namespace eqtk::cli
