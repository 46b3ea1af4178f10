#include "fltz/euler.hpp"

#include "fltz/arrangement.hpp"
#include "fltz/parallel.hpp"

#include <json.hpp>

#include <algorithm>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>

namespace fltz {

ConstructibleFunction ConstructibleFunction::zero(std::shared_ptr<const StrataPoset> strata) {
    ConstructibleFunction f;
    f.values.assign(strata->size(), 0);
    f.strata = std::move(strata);
    return f;
}

long ConstructibleFunction::at(const QVec& x) const {
    if (!strata->arrangement().window.contains(x)) return 0;
    return values[strata->stratum_of(x)];
}

std::vector<int> ConstructibleFunction::support() const {
    std::vector<int> out;
    for (int s = 0; s < static_cast<int>(values.size()); ++s)
        if (values[s] != 0) out.push_back(s);
    return out;
}

bool ConstructibleFunction::supported_in_core() const {
    for (int s : support())
        if (!strata->in_core(s)) return false;
    return true;
}

ConstructibleFunction& ConstructibleFunction::operator+=(const ConstructibleFunction& o) {
    if (strata != o.strata) throw std::invalid_argument("constructible functions on different strata");
    for (std::size_t i = 0; i < values.size(); ++i) values[i] += o.values[i];
    return *this;
}

ConstructibleFunction ConstructibleFunction::scaled(long k) const {
    ConstructibleFunction f = *this;
    for (auto& v : f.values) v *= k;
    return f;
}

std::string ConstructibleFunction::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (int s = 0; s < strata->size(); ++s)
        arr.push_back({{"signs", sign_string(strata->stratum(s).sign)}, {"value", values[s]}});
    return nlohmann::json{{"strata", arr}}.dump();
}

std::string ConstructibleFunction::to_csv() const {
    std::ostringstream os;
    const int n = strata->rank();
    for (int i = 0; i < n; ++i) os << "x" << i << ",";
    os << "dim,value\n";
    for (int s = 0; s < strata->size(); ++s) {
        const auto& st = strata->stratum(s);
        for (const auto& c : st.sample) os << c.str() << ",";
        os << st.dim << "," << values[s] << "\n";
    }
    return os.str();
}

ConstructibleFunction local_euler(const SheafDiagram& F) {
    ConstructibleFunction f = ConstructibleFunction::zero(F.strata_ptr());
    for (int s = 0; s < F.strata().size(); ++s) {
        const ChainComplex& C = F.value(s);
        long chi = 0;
        if (!C.empty())
            for (int k = C.lo(); k <= C.hi(); ++k) chi += (k % 2 == 0 ? 1 : -1) * C.rank(k);
        f.values[s] = chi;
    }
    return f;
}

namespace {

// -1, 0, +1 for <v, a> - b over the closure vertices: 2 if both signs occur
int side_of(const std::vector<QVec>& verts, const QVec& a, const Rat& b) {
    bool pos = false, neg = false, zero = false;
    for (const auto& v : verts) {
        int s = (dot(v, a) - b).sign();
        pos |= s > 0;
        neg |= s < 0;
        zero |= s == 0;
    }
    if (pos && neg) return 2;
    if (zero) return 0;
    return pos ? 1 : -1;
}

// Euler integral with compact supports of x -> g(z - x) over the open cell st.
long cell_integral(const ConstructibleFunction& g, const Stratum& st, const Arrangement& fa, const QVec& z) {
    const int n = static_cast<int>(z.size());
    auto g_at = [&](const QVec& x) {
        QVec y(n);
        for (int i = 0; i < n; ++i) y[i] = z[i] - x[i];
        return g.at(y);
    };
    if (st.dim == 0) return g_at(st.sample);

    std::vector<Hyperplane> H;
    std::vector<std::uint8_t> allowed;
    std::vector<std::int8_t> want;  // required sign on the f hyperplanes kept
    std::set<std::pair<ZVec, Rat>> seen;
    for (std::size_t h = 0; h < fa.hyperplanes.size(); ++h) {
        const auto& hp = fa.hyperplanes[h];
        QVec a = to_q(hp.normal);
        if (side_of(st.closure_vertices, a, hp.offset) != 0) continue;
        std::int8_t s = st.sign[h];
        H.push_back(Hyperplane{a, hp.offset});
        allowed.push_back(s == 0 ? kZero : (s > 0 ? (kZero | kPos) : (kNeg | kZero)));
        want.push_back(s);
        seen.insert({hp.normal, hp.offset});
    }
    const std::size_t nf = H.size();
    for (const auto& hp : g.strata->arrangement().hyperplanes) {
        Rat off = dot(z, hp.normal) - hp.offset;
        if (seen.count({hp.normal, off})) continue;
        QVec a = to_q(hp.normal);
        if (side_of(st.closure_vertices, a, off) != 2) continue;
        seen.insert({hp.normal, off});
        H.push_back(Hyperplane{a, off});
        allowed.push_back(kAny);
    }
    FaceLattice L = enumerate_faces(n, H, allowed);
    long total = 0;
    for (const auto& f : L.faces) {
        bool inside = true;
        for (std::size_t i = 0; i < nf && inside; ++i) inside = f.sign[i] == want[i];
        if (!inside) continue;
        long gv = g_at(f.sample);
        if (gv) total += (f.dim % 2 == 0 ? gv : -gv);
    }
    return total;
}

// Validates the inputs and returns a closed box holding supp f + supp g
// (empty optional when either support is empty).
std::optional<std::pair<QVec, QVec>> check_inputs(const ConstructibleFunction& f, const ConstructibleFunction& g,
                                                  const StrataPoset& target) {
    if (f.strata->rank() != g.strata->rank() || target.rank() != f.strata->rank())
        throw std::invalid_argument("rank mismatch");
    if (!f.supported_in_core() || !g.supported_in_core()) throw std::invalid_argument("non-compact support");
    auto fs = f.support(), gs = g.support();
    if (fs.empty() || gs.empty()) return std::nullopt;
    const int n = target.rank();
    auto bbox = [n](const ConstructibleFunction& h, const std::vector<int>& supp) {
        QVec lo = h.strata->stratum(supp[0]).sample, hi = lo;
        for (int s : supp)
            for (const auto& v : h.strata->stratum(s).closure_vertices)
                for (int i = 0; i < n; ++i) lo[i] = std::min(lo[i], v[i]), hi[i] = std::max(hi[i], v[i]);
        return std::make_pair(lo, hi);
    };
    auto [lo, hi] = bbox(f, fs);
    auto [glo, ghi] = bbox(g, gs);
    const Window& w = target.arrangement().window;
    for (int i = 0; i < n; ++i) {
        lo[i] += glo[i];
        hi[i] += ghi[i];
        if (!(w.lo[i] < lo[i] && hi[i] < w.hi[i])) throw std::invalid_argument("window overflow");
    }
    return std::make_pair(lo, hi);
}

bool in_box(const QVec& x, const std::pair<QVec, QVec>& box) {
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] < box.first[i] || box.second[i] < x[i]) return false;
    return true;
}

}  // namespace

long euler_convolution_at(const ConstructibleFunction& f, const ConstructibleFunction& g, const QVec& z) {
    long total = 0;
    for (int s : f.support()) total += f.values[s] * cell_integral(g, f.strata->stratum(s), f.strata->arrangement(), z);
    return total;
}

ConstructibleFunction euler_convolution(const ConstructibleFunction& f, const ConstructibleFunction& g,
                                        std::shared_ptr<const StrataPoset> target) {
    auto box = check_inputs(f, g, *target);
    configure_threads();
    ConstructibleFunction out = ConstructibleFunction::zero(target);
    if (!box) return out;
    const int cnt = target->size();
#pragma omp parallel for schedule(dynamic)
    for (int t = 0; t < cnt; ++t) {
        const QVec& z = target->stratum(t).sample;
        if (in_box(z, *box)) out.values[t] = euler_convolution_at(f, g, z);
    }
    return out;
}

ConstructibleFunction euler_convolution_serial(const ConstructibleFunction& f, const ConstructibleFunction& g,
                                               std::shared_ptr<const StrataPoset> target) {
    // no support pruning here: every target stratum is integrated
    check_inputs(f, g, *target);
    ConstructibleFunction out = ConstructibleFunction::zero(target);
    for (int t = 0; t < target->size(); ++t) out.values[t] = euler_convolution_at(f, g, target->stratum(t).sample);
    return out;
}

Window morelli_window(const Fan& fan, const DivisorClass& cls) {
    const int n = fan.rank();
    QVec lo(n, Rat(0)), hi(n, Rat(0));
    for (const auto& [D, c] : cls) {
        auto f = find_support_function(fan, D);
        for (const auto& [sigma, m] : f.m)
            for (int i = 0; i < n; ++i) lo[i] = std::min(lo[i], m[i]), hi[i] = std::max(hi[i], m[i]);
    }
    Window w;
    for (int i = 0; i < n; ++i) {
        w.lo.push_back(Rat(floor(lo[i]) - 2));
        w.hi.push_back(Rat(ceil(hi[i]) + 2));
    }
    return w;
}

ConstructibleFunction morelli_map(const Fan& fan, const DivisorClass& cls, std::shared_ptr<const StrataPoset> strata) {
    ConstructibleFunction out = ConstructibleFunction::zero(strata);
    for (const auto& [D, c] : cls) {
        if (c == 0) continue;
        out += local_euler(kappa_line_bundle(fan, D, strata)).scaled(c);
    }
    if (!out.supported_in_core()) throw std::invalid_argument("window overflow");
    return out;
}

ConstructibleFunction morelli_map(const Fan& fan, const DivisorClass& cls) {
    auto strata = std::make_shared<const StrataPoset>(fltz_arrangement(fan, morelli_window(fan, cls)));
    return morelli_map(fan, cls, strata);
}

}  // namespace fltz
