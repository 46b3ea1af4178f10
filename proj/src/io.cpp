#include "fltz/io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace fltz {

namespace {

nlohmann::json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

}  // namespace

Fan fan_from_json(const nlohmann::json& j) {
    try {
        int rank = j.at("rank").get<int>();
        auto rays = j.at("rays").get<std::vector<ZVec>>();
        auto cones = j.at("max_cones").get<std::vector<std::vector<int>>>();
        return Fan::from_max_cones(rank, std::move(rays), std::move(cones));
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("malformed fan: ") + e.what());
    }
}

Fan load_fan(const std::string& path) { return fan_from_json(read_json(path)); }

nlohmann::json fan_to_json(const Fan& fan) {
    return {{"rank", fan.rank()}, {"rays", fan.rays()}, {"max_cones", fan.input_max_cones()}};
}

Divisor divisor_from_json(const nlohmann::json& j) {
    try {
        return Divisor{j.at("coeffs").get<ZVec>()};
    } catch (const nlohmann::json::exception& e) {
        throw std::runtime_error(std::string("malformed divisor: ") + e.what());
    }
}

Divisor load_divisor(const std::string& path) { return divisor_from_json(read_json(path)); }

nlohmann::json graded_json(const GradedGroup& g, bool cohomological) {
    nlohmann::json out = nlohmann::json::object();
    for (const auto& [k, grp] : g.groups) {
        nlohmann::json tors = nlohmann::json::array();
        for (const auto& t : grp.torsion) tors.push_back(to_long(t));
        out[std::to_string(cohomological ? -k : k)] = {{"rank", grp.rank}, {"torsion", tors}};
    }
    return out;
}

namespace {

std::vector<std::string> split_list(std::string s) {
    std::string clean;
    for (char c : s)
        if (c != '[' && c != ']' && c != ' ' && c != '(' && c != ')') clean += c;
    std::vector<std::string> parts;
    std::stringstream ss(clean);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) parts.push_back(item);
    if (parts.empty()) throw std::invalid_argument("empty vector: '" + s + "'");
    return parts;
}

}  // namespace

QVec parse_point(const std::string& s) {
    QVec v;
    for (const auto& p : split_list(s)) v.push_back(Rat::parse(p));
    return v;
}

ZVec parse_int_vector(const std::string& s) {
    ZVec v;
    for (const auto& p : split_list(s)) {
        Rat r = Rat::parse(p);
        if (!r.is_integer()) throw std::invalid_argument("expected an integer, got '" + p + "'");
        v.push_back(to_long(r));
    }
    return v;
}

std::string fan_dot(const Fan& fan) {
    std::ostringstream os;
    os << "digraph fan {\n";
    for (int c = 0; c < fan.num_cones(); ++c) {
        os << "  c" << c << " [label=\"{";
        for (std::size_t i = 0; i < fan.cone(c).size(); ++i) os << (i ? "," : "") << fan.cone(c)[i];
        os << "}\"];\n";
    }
    for (auto [a, b] : fan.poset()->covers()) os << "  c" << a << " -> c" << b << ";\n";
    os << "}\n";
    return os.str();
}

nlohmann::json rat_json(const Rat& q) {
    if (q.is_integer()) return to_long(q);
    return q.str();
}

nlohmann::json vec_json(const QVec& v) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& q : v) a.push_back(rat_json(q));
    return a;
}

}  // namespace fltz
