#include "eqtk/cli.hpp"
#include "eqtk/oscillatory.hpp"
#include "eqtk/shear.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace eqtk;

namespace {

// Rationals cross the boundary as "p/q" strings; the Python layer turns them into Fractions.
Rational to_rational(const py::handle& x) { return parse_rational(py::str(x).cast<std::string>()); }

RationalVector to_rational_vector(const py::iterable& xs) {
    RationalVector v;
    for (auto x : xs) v.push_back(to_rational(x));
    return v;
}

std::vector<std::string> strings(const RationalVector& v) {
    std::vector<std::string> out;
    for (const auto& x : v) out.push_back(format_rational(x));
    return out;
}

FunctionalSet functionals(std::size_t dim, const py::iterable& rows) {
    std::vector<RationalVector> fs;
    for (auto r : rows) fs.push_back(to_rational_vector(r.cast<py::iterable>()));
    return FunctionalSet(dim, std::move(fs));
}

HPolytope polytope(std::size_t dim, const py::iterable& constraints) {
    HPolytope p(dim);
    for (auto c : constraints) {
        auto pair = c.cast<py::tuple>();
        if (pair.size() != 2) throw py::value_error("constraints are (normal, offset) pairs");
        p.add(to_rational_vector(pair[0].cast<py::iterable>()), to_rational(pair[1]));
    }
    return p;
}

using Weights = std::vector<std::pair<std::vector<std::int64_t>, std::uint64_t>>;

WeightSystem weight_system(std::size_t rank, const Weights& entries) {
    WeightSystem w(rank);
    for (const auto& [c, m] : entries) w.add(Character(c), m);
    return w;
}

Weights weight_list(const WeightSystem& w) {
    Weights out;
    for (const auto& [c, m] : w.entries()) out.emplace_back(c.coords(), m);
    return out;
}

std::vector<OffsetTag> schedule(const std::vector<py::object>& entries) {
    std::vector<OffsetTag> out;
    for (const auto& e : entries) {
        if (e.is_none() || (py::isinstance<py::str>(e) && e.cast<std::string>() == "diverges")) {
            out.emplace_back(Diverges{});
        } else {
            out.emplace_back(to_rational(e));
        }
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Exact polytope, lattice and counting experiments";

    // translators run newest first, so the base class goes in before its subclasses
    py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<DimensionError>(m, "DimensionError", PyExc_ValueError);
    py::register_exception<UnboundedError>(m, "UnboundedError", PyExc_ValueError);
    py::register_exception<InvariantViolation>(m, "InvariantViolation", PyExc_RuntimeError);

    m.def("exterior_power", [](std::size_t rank, const Weights& w, std::uint64_t k) {
        return weight_list(exterior_power(weight_system(rank, w), k));
    }, py::arg("rank"), py::arg("weights"), py::arg("k"));
    m.def("tensor", [](std::size_t rank, const Weights& a, const Weights& b) {
        return weight_list(tensor(weight_system(rank, a), weight_system(rank, b)));
    }, py::arg("rank"), py::arg("a"), py::arg("b"));
    m.def("wedge_closure", [](std::size_t rank, const Weights& w) {
        return weight_list(wedge_closure(weight_system(rank, w)));
    }, py::arg("rank"), py::arg("weights"));

    m.def("classify", [](std::size_t dim, const py::iterable& rows, const std::vector<py::object>& sched) {
        const auto dec = classify_sequence(functionals(dim, rows), schedule(sched));
        auto basis = [](const std::vector<RationalVector>& b) {
            std::vector<std::vector<std::string>> out;
            for (const auto& v : b) out.push_back(strings(v));
            return out;
        };
        py::dict d;
        d["phi_inf"] = dec.phi_inf;
        d["phi1"] = dec.phi1;
        d["phi0"] = dec.phi0;
        d["w_basis"] = basis(dec.w_basis);
        d["u_basis"] = basis(dec.u_basis);
        return d;
    }, py::arg("dim"), py::arg("functionals"), py::arg("schedule"),
       "Splits functionals into phi_inf, phi1 and phi0; schedule entries are 'diverges' (or None) or a rational limit.");

    m.def("volume", [](std::size_t dim, const py::iterable& c) { return format_rational(volume(polytope(dim, c))); },
          py::arg("dim"), py::arg("constraints"), "Exact volume of {v : normal . v >= offset for every constraint}.");
    m.def("vertices", [](std::size_t dim, const py::iterable& c) {
        std::vector<std::vector<std::string>> out;
        for (const auto& v : vertices(polytope(dim, c))) out.push_back(strings(v));
        return out;
    }, py::arg("dim"), py::arg("constraints"));

    m.def("shortest_vector", [](const Eigen::MatrixXd& basis, const std::string& norm) {
        const auto sv = shortest_vector(basis, norm == "sup" ? VectorNorm::Sup : VectorNorm::Euclidean);
        return py::make_tuple(sv.norm, sv.z, sv.lower, sv.upper);
    }, py::arg("basis"), py::arg("norm") = "euclidean", "Returns (norm, z, lower, upper).");

    m.def("count_points", [](std::int64_t d, double radius, unsigned threads) {
        return count_points_n1(SymplecticSpec(1, {d}), radius, threads).count;
    }, py::arg("d"), py::arg("radius"), py::arg("threads") = 1);
    m.def("constant_c1", [](std::size_t n) { return constant_c1(n).value; }, py::arg("n"));
    m.def("constant_c2", [](std::size_t n, std::vector<std::int64_t> d) { return constant_c2(SymplecticSpec(n, d)); },
          py::arg("n"), py::arg("d"));
    m.def("xi", &xi, py::arg("z"));

    m.def("oscillatory_integral", [](std::int64_t mm, std::int64_t n, double x0, double x1, unsigned degree) {
        const auto r = oscillatory_integral(BumpFunction(x0, x1, degree), mm, n);
        return py::make_tuple(r.value, r.error_estimate);
    }, py::arg("m"), py::arg("n"), py::arg("x0") = 0.0, py::arg("x1") = 1.0, py::arg("degree") = 3u,
       "Returns (value, error_estimate).");
    m.def("a_t", &a_t_matrix, py::arg("n"), py::arg("t"));
    m.def("u_v", &u_v_matrix, py::arg("v"));
    m.def("sheared_orbit_point", &sheared_orbit_point, py::arg("t"), py::arg("v"));

    m.def("run", [](const std::string& command, const std::string& params_json, std::optional<std::uint64_t> seed,
                    const std::string& format, unsigned threads) {
        cli::RunConfig cfg;
        cfg.command = command;
        cfg.params = io::Json::parse(params_json);
        cfg.seed = seed;
        cfg.format = format;
        cfg.threads = threads;
        std::ostringstream out, err;
        const int code = cli::run(cfg, out, err);
        return py::make_tuple(code, out.str(), err.str());
    }, py::arg("command"), py::arg("params_json") = "{}", py::arg("seed") = py::none(), py::arg("format") = "json",
       py::arg("threads") = 1u, "Runs a CLI command in-process; returns (exit_code, stdout, stderr).");
}
