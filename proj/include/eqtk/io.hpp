#pragma once

#include "eqtk/cones.hpp"
#include "eqtk/errors.hpp"
#include "eqtk/lattice.hpp"
#include "eqtk/polytopes.hpp"
#include "eqtk/sp_counting.hpp"
#include "eqtk/weights.hpp"

#include <json.hpp>

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace eqtk::io {

using Json = nlohmann::ordered_json;

/// Thrown when a record does not match the expected layout; maps to the schema exit code.
class SchemaError : public Error {
public:
    using Error::Error;
};

/// Looks up a required key; `where` names the record in error messages.
const Json& require(const Json& obj, const std::string& key, const std::string& where);

/// Integers or rational strings ("p/q", decimals).
Rational rational_from(const Json& value, const std::string& where);
RationalVector rational_vector_from(const Json& value, const std::string& where);
Json to_json(const Rational& value);
Json to_json(const RationalVector& value);

/// Reals may be given as numbers or as rational/decimal strings.
double real_from(const Json& value, const std::string& where);
Eigen::MatrixXd matrix_from(const Json& value, const std::string& where);
Json to_json(const Eigen::MatrixXd& value);

Character character_from(const Json& value, const std::string& where);

/// {"rank": r, "weights": [[[c_1, ..., c_r], multiplicity], ...]}
WeightSystem weight_system_from(const Json& value, const std::string& where);
Json to_json(const WeightSystem& value);

/// {"dim": d, "functionals": [[...], ...]}
FunctionalSet functional_set_from(const Json& value, const std::string& where);

/// One entry per functional: "diverges" or a rational constant.
std::vector<OffsetTag> schedule_from(const Json& value, std::size_t size, const std::string& where);

/// {"dim": d, "constraints": [[[normal...], offset], ...]} meaning normal . v >= offset.
HPolytope polytope_from(const Json& value, const std::string& where);
Json to_json(const HPolytope& value);

/// {"rank": r, "blocks": [{"character": [...], "matrix": [[...]]}, ...]}
WeightLatticeAction action_from(const Json& value, const std::string& where);

/// [{"label": "P1", "character": [...], "d": 0.5}, ...]
std::vector<ParabolicEntry> parabolic_from(const Json& value, const std::string& where);

/// {"N": n, "d": [d_1, ..., d_N]}
SymplecticSpec spec_from(const Json& value, const std::string& where);

/// 17 significant digits, as used in CSV output.
std::string format_real(double value);

}  // namespace eqtk::io
