#pragma once
// File formats: fans {"rank","rays","max_cones"}, divisors {"coeffs"}.

#include "fltz/complex.hpp"
#include "fltz/toric.hpp"

#include <json.hpp>

#include <string>

namespace fltz {

Fan load_fan(const std::string& path);  // throws std::runtime_error on I/O or format errors
Fan fan_from_json(const nlohmann::json& j);
nlohmann::json fan_to_json(const Fan& fan);
Divisor load_divisor(const std::string& path);
Divisor divisor_from_json(const nlohmann::json& j);

// {"<degree>": {"rank": r, "torsion": [...]}}; cohomological flips the sign of degrees
nlohmann::json graded_json(const GradedGroup& g, bool cohomological);
// "1/2,0" or "[1/2, 0]"
QVec parse_point(const std::string& s);
ZVec parse_int_vector(const std::string& s);

// cone poset as a DOT digraph, nodes in cone order, edges along covers
std::string fan_dot(const Fan& fan);
// integers as numbers, other rationals as "p/q" strings
nlohmann::json rat_json(const Rat& q);
nlohmann::json vec_json(const QVec& v);

}  // namespace fltz
