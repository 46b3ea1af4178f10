#include "fltz/cli.hpp"

#include "fltz/ccc.hpp"
#include "fltz/euler.hpp"
#include "fltz/io.hpp"
#include "fltz/microlocal.hpp"

#include <json.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <stdexcept>

namespace fltz {

namespace {

// insertion-ordered keys, so reports read in a fixed, meaningful order
using json = nlohmann::ordered_json;

json ord(const nlohmann::json& j) { return json::parse(j.dump()); }

struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Fan read_fan(const std::string& path) {
    if (path.empty()) throw InputError("missing fan file");
    try {
        return load_fan(path);
    } catch (const std::exception& e) {
        throw InputError(e.what());
    }
}

std::vector<Divisor> read_divisors(const RunConfig& c, const Fan& fan, std::size_t at_least) {
    if (c.divisor_paths.size() < at_least)
        throw InputError(c.command + " needs " + std::to_string(at_least) + " divisor file(s)");
    std::vector<Divisor> out;
    for (const auto& p : c.divisor_paths) {
        Divisor D;
        try {
            D = load_divisor(p);
        } catch (const std::exception& e) {
            throw InputError(e.what());
        }
        if (static_cast<int>(D.n.size()) != fan.num_rays())
            throw InputError(p + ": expected " + std::to_string(fan.num_rays()) + " coefficients");
        out.push_back(std::move(D));
    }
    return out;
}

std::string stem(const std::string& path) {
    std::string s = std::filesystem::path(path).filename().string();
    for (const char* ext : {".div.json", ".json"})
        if (s.size() > std::string(ext).size() && s.ends_with(ext)) return s.substr(0, s.size() - std::string(ext).size());
    return s;
}

// the supplied window, or the support-element spread of the divisors plus 2,
// widened so that the core always holds [0,1]^n
Window choose_window(const RunConfig& c, const Fan& fan, const std::vector<Divisor>& divs) {
    const int n = fan.rank();
    if (c.window) {
        if (!(c.window->first < c.window->second)) throw InputError("empty window");
        return Window::cube(n, c.window->first, c.window->second);
    }
    Window w = Window::cube(n, Rat(-2), Rat(3));
    if (divs.empty()) return w;
    DivisorClass cls;
    for (const auto& D : divs) cls.push_back({D, 1});
    Window m = morelli_window(fan, cls);
    for (int i = 0; i < n; ++i) {
        w.lo[i] = std::min(w.lo[i], m.lo[i]);
        w.hi[i] = std::max(w.hi[i], m.hi[i]);
    }
    return w;
}

json window_json(const Window& w) { return json{{"lo", ord(vec_json(w.lo))}, {"hi", ord(vec_json(w.hi))}}; }

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw InputError("cannot write " + path);
    f << text;
}

json parsed(const std::string& s) { return json::parse(s); }

int status(bool pass) { return pass ? kExitPass : kExitCheckFailed; }

int fan_check(const RunConfig& c, json& out) {
    Fan fan = read_fan(c.fan_path);
    const bool smooth = fan.is_smooth();
    std::optional<Divisor> witness;
    if (fan.is_complete()) witness = certify_projective(fan);
    out = json{{"smooth", smooth}, {"projective", witness.has_value()}};
    out["witness"] = witness ? json(witness->n) : json(nullptr);
    if (!c.dot_path.empty()) write_file(c.dot_path, fan_dot(fan));
    return status(smooth && witness);
}

int fan_polytope(const RunConfig& c, json& out) {
    Fan fan = read_fan(c.fan_path);
    Divisor D = read_divisors(c, fan, 1)[0];
    Polytope P = divisor_to_polytope(fan, D);
    json verts = json::array();
    for (const auto& v : P.vertices) verts.push_back(ord(vec_json(v)));
    json lower = json::array();
    for (const auto& l : P.lower) lower.push_back(ord(rat_json(l)));
    out = json{{"normals", P.normals},
               {"lower", lower},
               {"vertices", verts},
               {"strictly_convex", is_strictly_convex(fan, D)}};
    return kExitPass;
}

int strata_cmd(const RunConfig& c, json& out) {
    Fan fan = read_fan(c.fan_path);
    auto divs = read_divisors(c, fan, 0);
    Window w = c.window || !divs.empty() ? choose_window(c, fan, divs) : Window::cube(fan.rank(), Rat(-2), Rat(2));
    StrataPoset S(fltz_arrangement(fan, w));
    json arr = json::array();
    int core = 0;
    for (int s = 0; s < S.size(); ++s) {
        const auto& st = S.stratum(s);
        core += S.in_core(s);
        arr.push_back({{"signs", sign_string(st.sign)}, {"dim", st.dim}, {"sample", ord(vec_json(st.sample))}});
    }
    out = json{{"window", window_json(w)},
               {"hyperplanes", S.arrangement().hyperplanes.size()},
               {"count", S.size()},
               {"core_count", core},
               {"strata", arr}};
    if (!c.dot_path.empty()) write_file(c.dot_path, S.to_dot());
    return kExitPass;
}

int kappa_cmd(const RunConfig& c, json& out) {
    Fan fan = read_fan(c.fan_path);
    auto divs = read_divisors(c, fan, 1);
    Window w = choose_window(c, fan, divs);
    auto S = std::make_shared<const StrataPoset>(fltz_arrangement(fan, w));
    auto K = kappa_line_bundle(fan, divs[0], S);
    out = json{{"window", window_json(w)}, {"sheaf", parsed(to_json(K))}};
    if (c.point) out["stalk"] = ord(graded_json(homology(kappa_stalk(fan, divs[0], *c.point)), true));
    return kExitPass;
}

int hom_cmd(const RunConfig& c, json& out) {
    Fan fan = read_fan(c.fan_path);
    auto divs = read_divisors(c, fan, 2);
    HomResult h = hom_nonequivariant(fan, divs[0], divs[1], c.max_doublings);
    json contrib = json::array();
    for (const auto& [m, g] : h.contributions) contrib.push_back({{"twist", m}, {"ext", ord(graded_json(g, true))}});
    out = json{{"ext", ord(graded_json(h.ext, true))},
               {"radius", h.radius},
               {"checked_radius", h.checked_radius},
               {"doublings", h.doublings},
               {"distinct_supports", h.distinct_supports},
               {"contributions", contrib}};
    return kExitPass;
}

int ext_table_cmd(const RunConfig& c, json& out) {
    Fan fan = read_fan(c.fan_path);
    auto divs = read_divisors(c, fan, 1);
    std::vector<std::string> labels;
    for (const auto& p : c.divisor_paths) labels.push_back(stem(p));
    out = parsed(ext_table(fan, divs, labels).to_json());
    return kExitPass;
}

int glue_check(const RunConfig& c, json& out) {
    Fan fan = read_fan(c.fan_path);
    if (c.samples < 1) throw InputError("--samples must be positive");
    Report r = unit_gluing_check(fan, sample_points(fan.rank(), c.samples, c.seed));
    out = parsed(r.to_json());
    return status(r.pass);
}

int probe_cmd(const RunConfig& c, json& out) {
    Fan fan = read_fan(c.fan_path);
    auto divs = read_divisors(c, fan, 1);
    if (!c.point) throw InputError("probe needs --point");
    if (static_cast<int>(c.point->size()) != fan.rank()) throw InputError("point rank does not match the fan");
    Report r = probing_check(fan, *c.point, divs[0]);
    out = parsed(r.to_json());
    return status(r.pass);
}

int ss_check_cmd(const RunConfig& c, json& out) {
    Fan fan = read_fan(c.fan_path);
    auto divs = read_divisors(c, fan, 1);
    Window w = choose_window(c, fan, divs);
    auto S = std::make_shared<const StrataPoset>(fltz_arrangement(fan, w));
    auto K = kappa_line_bundle(fan, divs[0], S);
    std::vector<QVec> pts;
    if (c.point) {
        pts.push_back(*c.point);
    } else {
        // one point per stratum class of the fundamental domain
        for (const auto& v : core_samples(K))
            if (std::all_of(v.begin(), v.end(), [](const Rat& q) { return Rat(0) <= q && q < Rat(1); }))
                pts.push_back(v);
    }
    SsReport r = ss_check(K, fan, pts);
    out = parsed(r.to_json());
    return status(r.pass());
}

int morelli_cmd(const RunConfig& c, json& out) {
    Fan fan = read_fan(c.fan_path);
    auto divs = read_divisors(c, fan, 1);
    std::vector<long> coeffs = c.coefficients;
    if (coeffs.empty()) coeffs.assign(divs.size(), 1);
    if (coeffs.size() != divs.size()) throw InputError("one coefficient per divisor expected");
    DivisorClass cls;
    for (std::size_t i = 0; i < divs.size(); ++i) cls.push_back({divs[i], coeffs[i]});
    Window w = c.window ? choose_window(c, fan, divs) : morelli_window(fan, cls);
    auto S = std::make_shared<const StrataPoset>(fltz_arrangement(fan, w));
    ConstructibleFunction f = morelli_map(fan, cls, S);
    out = parsed(f.to_json());
    out["window"] = window_json(w);
    if (!c.csv_path.empty()) write_file(c.csv_path, f.to_csv());
    return kExitPass;
}

int beilinson_cmd(const RunConfig& c, json& out) {
    Fan fan = read_fan(c.fan_path);
    BeilinsonResult b = beilinson_report(fan);
    out = json{{"report", parsed(b.report.to_json())},
               {"ext_table", parsed(b.table.to_json())},
               {"quiver", parsed(b.quiver_json)}};
    return status(b.report.pass);
}

int dispatch(const RunConfig& c, json& out) {
    if (c.command == "fan check") return fan_check(c, out);
    if (c.command == "fan polytope") return fan_polytope(c, out);
    if (c.command == "strata") return strata_cmd(c, out);
    if (c.command == "kappa") return kappa_cmd(c, out);
    if (c.command == "hom") return hom_cmd(c, out);
    if (c.command == "ext-table") return ext_table_cmd(c, out);
    if (c.command == "glue-check") return glue_check(c, out);
    if (c.command == "probe") return probe_cmd(c, out);
    if (c.command == "ss-check") return ss_check_cmd(c, out);
    if (c.command == "morelli") return morelli_cmd(c, out);
    if (c.command == "beilinson") return beilinson_cmd(c, out);
    throw InputError("unknown command '" + c.command + "'");
}

}  // namespace

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    json result;
    int code;
    try {
        if (!config.out_dir.empty()) std::filesystem::create_directories(config.out_dir);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitBadInput;
    }
    try {
        code = dispatch(config, result);
    } catch (const InputError& e) {
        err << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::invalid_argument& e) {
        // precondition failures on the given fan or divisors
        err << "error: " << e.what() << "\n";
        return kExitBadInput;
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
    const std::string text = result.dump() + "\n";
    out << text;
    if (!config.out_dir.empty()) {
        std::string name = config.command;
        std::replace(name.begin(), name.end(), ' ', '-');
        try {
            write_file((std::filesystem::path(config.out_dir) / (name + ".json")).string(), text);
        } catch (const std::exception& e) {
            err << "error: " << e.what() << "\n";
            return kExitBadInput;
        }
    }
    return code;
}

}  // namespace fltz
