#include "eqtk/io.hpp"

#include <cstdio>

namespace eqtk::io {

const Json& require(const Json& obj, const std::string& key, const std::string& where) {
    if (!obj.is_object()) throw SchemaError(where + ": expected an object");
    const auto it = obj.find(key);
    if (it == obj.end()) throw SchemaError(where + ": missing key '" + key + "'");
    return *it;
}

Rational rational_from(const Json& value, const std::string& where) {
    if (value.is_number_integer()) return Rational(value.get<long long>());
    if (value.is_string()) {
        try {
            return parse_rational(value.get<std::string>());
        } catch (const ParseError& e) {
            throw SchemaError(where + ": " + e.what());
        }
    }
    throw SchemaError(where + ": expected an integer or a rational string such as \"3/4\"");
}

RationalVector rational_vector_from(const Json& value, const std::string& where) {
    if (!value.is_array()) throw SchemaError(where + ": expected an array");
    RationalVector out;
    for (std::size_t i = 0; i < value.size(); ++i) out.push_back(rational_from(value[i], where + "[" + std::to_string(i) + "]"));
    return out;
}

Json to_json(const Rational& value) { return format_rational(value); }

Json to_json(const RationalVector& value) {
    Json out = Json::array();
    for (const auto& x : value) out.push_back(format_rational(x));
    return out;
}

double real_from(const Json& value, const std::string& where) {
    if (value.is_number()) return value.get<double>();
    if (value.is_string()) return to_double(rational_from(value, where));
    throw SchemaError(where + ": expected a number");
}

Eigen::MatrixXd matrix_from(const Json& value, const std::string& where) {
    if (!value.is_array() || value.empty()) throw SchemaError(where + ": expected a nonempty array of rows");
    const auto rows = static_cast<Eigen::Index>(value.size());
    if (!value[0].is_array()) throw SchemaError(where + ": rows must be arrays");
    const auto cols = static_cast<Eigen::Index>(value[0].size());
    Eigen::MatrixXd m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const auto& row = value[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
            throw SchemaError(where + ": ragged matrix rows");
        }
        for (Eigen::Index c = 0; c < cols; ++c) {
            m(r, c) = real_from(row[static_cast<std::size_t>(c)], where);
        }
    }
    return m;
}

Json to_json(const Eigen::MatrixXd& value) {
    Json out = Json::array();
    for (Eigen::Index r = 0; r < value.rows(); ++r) {
        Json row = Json::array();
        for (Eigen::Index c = 0; c < value.cols(); ++c) row.push_back(value(r, c));
        out.push_back(row);
    }
    return out;
}

Character character_from(const Json& value, const std::string& where) {
    if (!value.is_array()) throw SchemaError(where + ": a character is an array of integers");
    std::vector<std::int64_t> coords;
    for (const auto& x : value) {
        if (!x.is_number_integer()) throw SchemaError(where + ": character coordinates must be integers");
        coords.push_back(x.get<std::int64_t>());
    }
    return Character(std::move(coords));
}

WeightSystem weight_system_from(const Json& value, const std::string& where) {
    const auto& rank = require(value, "rank", where);
    if (!rank.is_number_unsigned() || rank.get<std::size_t>() == 0) throw SchemaError(where + ": rank must be positive");
    const auto& list = require(value, "weights", where);
    if (!list.is_array() || list.empty()) throw SchemaError(where + ": weights must be a nonempty array");
    WeightSystem w(rank.get<std::size_t>());
    for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string at = where + ".weights[" + std::to_string(i) + "]";
        const auto& entry = list[i];
        if (!entry.is_array() || entry.size() != 2 || !entry[1].is_number_unsigned() || entry[1].get<std::uint64_t>() == 0) {
            throw SchemaError(at + ": expected [[coords...], positive multiplicity]");
        }
        const Character c = character_from(entry[0], at);
        if (c.rank() != w.rank()) throw SchemaError(at + ": character length differs from rank");
        w.add(c, entry[1].get<std::uint64_t>());
    }
    return w;
}

Json to_json(const WeightSystem& value) {
    Json list = Json::array();
    for (const auto& [c, m] : value.entries()) list.push_back(Json::array({c.coords(), m}));
    return Json{{"rank", value.rank()}, {"weights", list}};
}

FunctionalSet functional_set_from(const Json& value, const std::string& where) {
    const auto& dim = require(value, "dim", where);
    if (!dim.is_number_unsigned()) throw SchemaError(where + ": dim must be a positive integer");
    const auto& list = require(value, "functionals", where);
    if (!list.is_array()) throw SchemaError(where + ": functionals must be an array");
    std::vector<RationalVector> fs;
    for (std::size_t i = 0; i < list.size(); ++i) {
        fs.push_back(rational_vector_from(list[i], where + ".functionals[" + std::to_string(i) + "]"));
    }
    try {
        return FunctionalSet(dim.get<std::size_t>(), std::move(fs));
    } catch (const Error& e) {
        throw SchemaError(where + ": " + e.what());
    }
}

std::vector<OffsetTag> schedule_from(const Json& value, std::size_t size, const std::string& where) {
    if (!value.is_array() || value.size() != size) {
        throw SchemaError(where + ": schedule needs one entry per functional");
    }
    std::vector<OffsetTag> out;
    for (std::size_t i = 0; i < size; ++i) {
        if (value[i].is_string() && value[i].get<std::string>() == "diverges") out.emplace_back(Diverges{});
        else out.emplace_back(rational_from(value[i], where + "[" + std::to_string(i) + "]"));
    }
    return out;
}

HPolytope polytope_from(const Json& value, const std::string& where) {
    const auto& dim = require(value, "dim", where);
    if (!dim.is_number_unsigned() || dim.get<std::size_t>() == 0) throw SchemaError(where + ": dim must be positive");
    const auto& list = require(value, "constraints", where);
    if (!list.is_array()) throw SchemaError(where + ": constraints must be an array");
    HPolytope p(dim.get<std::size_t>());
    for (std::size_t i = 0; i < list.size(); ++i) {
        const std::string at = where + ".constraints[" + std::to_string(i) + "]";
        if (!list[i].is_array() || list[i].size() != 2) throw SchemaError(at + ": expected [[normal...], offset]");
        auto normal = rational_vector_from(list[i][0], at);
        if (normal.size() != p.dim()) throw SchemaError(at + ": normal length differs from dim");
        p.add(std::move(normal), rational_from(list[i][1], at));
    }
    return p;
}

Json to_json(const HPolytope& value) {
    Json list = Json::array();
    for (const auto& h : value.constraints()) list.push_back(Json::array({to_json(h.normal), to_json(h.offset)}));
    return Json{{"dim", value.dim()}, {"constraints", list}};
}

WeightLatticeAction action_from(const Json& value, const std::string& where) {
    WeightLatticeAction act;
    const auto& rank = require(value, "rank", where);
    if (!rank.is_number_unsigned()) throw SchemaError(where + ": rank must be a positive integer");
    act.rank = rank.get<std::size_t>();
    const auto& blocks = require(value, "blocks", where);
    if (!blocks.is_array() || blocks.empty()) throw SchemaError(where + ": blocks must be a nonempty array");
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        const std::string at = where + ".blocks[" + std::to_string(i) + "]";
        act.blocks.push_back({character_from(require(blocks[i], "character", at), at),
                              matrix_from(require(blocks[i], "matrix", at), at)});
    }
    try {
        act.validate();
    } catch (const Error& e) {
        throw SchemaError(where + ": " + e.what());
    }
    return act;
}

std::vector<ParabolicEntry> parabolic_from(const Json& value, const std::string& where) {
    if (!value.is_array() || value.empty()) throw SchemaError(where + ": expected a nonempty array");
    std::vector<ParabolicEntry> out;
    for (std::size_t i = 0; i < value.size(); ++i) {
        const std::string at = where + "[" + std::to_string(i) + "]";
        ParabolicEntry e;
        e.label = value[i].contains("label") && value[i]["label"].is_string() ? value[i]["label"].get<std::string>()
                                                                             : "P" + std::to_string(i + 1);
        e.character = character_from(require(value[i], "character", at), at);
        e.d_value = real_from(require(value[i], "d", at), at);
        out.push_back(std::move(e));
    }
    return out;
}

SymplecticSpec spec_from(const Json& value, const std::string& where) {
    const auto& n = require(value, "N", where);
    const auto& d = require(value, "d", where);
    if (!n.is_number_integer() || n.get<std::int64_t>() <= 0) throw SchemaError(where + ": N must be a positive integer");
    if (!d.is_array()) throw SchemaError(where + ": d must be an array of integers");
    std::vector<std::int64_t> ds;
    for (const auto& x : d) {
        if (!x.is_number_integer()) throw SchemaError(where + ": d must be an array of integers");
        ds.push_back(x.get<std::int64_t>());
    }
    try {
        return SymplecticSpec(n.get<std::size_t>(), std::move(ds));
    } catch (const Error& e) {
        throw SchemaError(where + ": " + e.what());
    }
}

std::string format_real(double value) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", value);
    return buf;
}

}  // namespace eqtk::io
