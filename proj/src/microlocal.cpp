#include "fltz/microlocal.hpp"

#include "fltz/arrangement.hpp"
#include "fltz/lp.hpp"
#include "fltz/parallel.hpp"

#include <json.hpp>

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace fltz {

namespace {

ZVec canonical_normal(ZVec v) {
    for (long x : v) {
        if (x == 0) continue;
        if (x < 0)
            for (auto& y : v) y = -y;
        break;
    }
    return v;
}

bool is_zero(const QVec& x) {
    return std::all_of(x.begin(), x.end(), [](const Rat& c) { return c == Rat(0); });
}

long euler_of(const ChainComplex& C) {
    long chi = 0;
    if (!C.empty())
        for (int k = C.lo(); k <= C.hi(); ++k) chi += (k % 2 == 0 ? 1 : -1) * C.rank(k);
    return chi;
}

}  // namespace

std::shared_ptr<const StrataPoset> central_arrangement(int rank, const std::vector<ZVec>& normals) {
    std::set<ZVec> uniq;
    for (const auto& v : normals) {
        if (static_cast<int>(v.size()) != rank) throw std::invalid_argument("normal of wrong rank");
        if (std::all_of(v.begin(), v.end(), [](long x) { return x == 0; })) throw std::invalid_argument("zero normal");
        uniq.insert(canonical_normal(primitive(to_q(v))));
    }
    Arrangement A;
    A.rank = rank;
    A.window = Window::cube(rank, Rat(-1), Rat(1));
    for (const auto& v : uniq) A.hyperplanes.push_back(ArrHyperplane{v, Rat(0), false});
    return std::make_shared<const StrataPoset>(A);
}

int ConicModel::cone_of(const QVec& x) const {
    std::vector<std::int8_t> s;
    for (const auto& h : cones->arrangement().hyperplanes) s.push_back(static_cast<std::int8_t>(dot(x, h.normal).sign()));
    int c = cones->find(s);
    if (c < 0) throw std::logic_error("no cone for a covector");
    return c;
}

ConicModel localize(const SheafDiagram& F, const QVec& v) {
    const StrataPoset& S = F.strata();
    if (static_cast<int>(v.size()) != S.rank() || !S.arrangement().window.core_contains(v))
        throw std::out_of_range("point " + str(v) + " is outside the trusted core");
    const auto& hs = S.arrangement().hyperplanes;
    std::vector<ZVec> through;
    std::vector<std::int8_t> base;
    for (const auto& h : hs) {
        Rat d = dot(v, h.normal) - h.offset;
        base.push_back(static_cast<std::int8_t>(d.sign()));
        if (d == Rat(0)) through.push_back(h.normal);
    }
    auto C = central_arrangement(S.rank(), through);
    std::vector<int> image(C->size());
    std::vector<ChainComplex> values(C->size());
    for (int c = 0; c < C->size(); ++c) {
        auto sign = base;
        const QVec& x = C->stratum(c).sample;
        for (std::size_t h = 0; h < hs.size(); ++h)
            if (base[h] == 0) sign[h] = static_cast<std::int8_t>(dot(x, hs[h].normal).sign());
        image[c] = S.find(sign);
        if (image[c] < 0) throw std::logic_error("localization left the stratification");
        values[c] = F.value(image[c]);
    }
    std::map<std::pair<int, int>, ChainMap> maps;
    for (auto [a, b] : C->poset()->covers()) maps[{a, b}] = F.diagram().map(image[a], image[b]);
    return ConicModel{S.rank(), C, Diagram(C->poset(), std::move(values), std::move(maps))};
}

namespace {

// sections over the closed box of radius R of the extension by zero from
// (open box) cap {<x, xi> <= 0}
ChainComplex clipped_sections(const ConicModel& C, const QVec& xi, long R) {
    const int n = C.rank;
    std::vector<Hyperplane> H;
    std::vector<std::uint8_t> allowed;
    std::set<ZVec> normals;
    for (const auto& h : C.cones->arrangement().hyperplanes) {
        H.push_back(Hyperplane{to_q(h.normal), Rat(0)});
        allowed.push_back(kAny);
        normals.insert(h.normal);
    }
    const std::size_t m = H.size();
    if (!is_zero(xi)) {
        ZVec w = canonical_normal(primitive(xi));
        if (!normals.count(w)) {
            H.push_back(Hyperplane{to_q(w), Rat(0)});
            allowed.push_back(kAny);
        }
    }
    const std::size_t box = H.size();
    for (int i = 0; i < n; ++i) {
        QVec e(n);
        e[i] = 1;
        H.push_back(Hyperplane{e, Rat(-R)});
        allowed.push_back(kZero | kPos);
        H.push_back(Hyperplane{e, Rat(R)});
        allowed.push_back(kNeg | kZero);
    }
    FaceLattice L = enumerate_faces(n, H, allowed);
    const int nf = static_cast<int>(L.faces.size());
    std::vector<int> cone(nf, -1);
    std::vector<ChainComplex> values(nf);
    for (int f = 0; f < nf; ++f) {
        const auto& face = L.faces[f];
        bool in = dot(face.sample, xi) <= Rat(0);
        for (std::size_t j = box; j < H.size() && in; ++j) in = face.sign[j] != 0;
        if (!in) continue;
        std::vector<std::int8_t> s(face.sign.begin(), face.sign.begin() + static_cast<long>(m));
        cone[f] = C.cones->find(s);
        if (cone[f] < 0) throw std::logic_error("refinement failure at covector " + str(xi));
        values[f] = C.diagram.value(cone[f]);
    }
    auto P = std::make_shared<const FinitePoset>(nf, L.covers);
    std::map<std::pair<int, int>, ChainMap> maps;
    for (auto [a, b] : L.covers)
        if (cone[a] >= 0 && cone[b] >= 0) maps[{a, b}] = C.diagram.map(cone[a], cone[b]);
    return holim(Diagram(P, std::move(values), std::move(maps)));
}

}  // namespace

ChainComplex fs_microstalk(const ConicModel& C, const QVec& xi) {
    if (static_cast<int>(xi.size()) != C.rank) throw std::invalid_argument("covector of wrong rank");
    ChainComplex a = clipped_sections(C, xi, 2);
    ChainComplex b = clipped_sections(C, xi, 4);
    if (homology(a) != homology(b)) throw std::logic_error("microstalk at " + str(xi) + " depends on the clipping box");
    return a;
}

long compact_euler(const ConicModel& C) {
    long total = 0;
    for (int c = 0; c < C.cones->size(); ++c) {
        long chi = euler_of(C.diagram.value(c));
        total += C.cones->stratum(c).dim % 2 == 0 ? chi : -chi;
    }
    return total;
}

bool SkeletonFiber::contains(const Fan& fan, const QVec& xi) const {
    if (is_zero(xi)) return true;
    QVec neg = xi;
    for (auto& c : neg) c = -c;
    for (int t : cones) {
        if (fan.cone_dim(t) == 0) continue;
        std::vector<QVec> gens;
        for (int r : fan.cone(t)) gens.push_back(to_q(fan.rays()[r]));
        if (cone_contains(gens, neg)) return true;
    }
    return false;
}

SkeletonFiber skeleton_fiber(const Fan& fan, const QVec& y) {
    if (static_cast<int>(y.size()) != fan.rank()) throw std::invalid_argument("point of wrong rank");
    SkeletonFiber F;
    F.point = y;
    for (int c = 0; c < fan.num_cones(); ++c) {
        bool ok = true;
        for (int r : fan.cone(c)) ok = ok && dot(y, fan.rays()[r]).is_integer();
        if (ok) F.cones.push_back(c);
    }
    return F;
}

std::shared_ptr<const StrataPoset> test_fan(const Fan& fan) {
    const int n = fan.rank();
    std::vector<ZVec> normals;
    if (n == 1) {
        normals.push_back({1});
    } else {
        const int k = n - 1, nr = fan.num_rays();
        std::vector<int> pick(k);
        for (int i = 0; i < k; ++i) pick[i] = i;
        while (k <= nr) {
            std::vector<QVec> rows;
            for (int i : pick) rows.push_back(to_q(fan.rays()[i]));
            if (rank_q(rows) == k) normals.push_back(kernel_basis(rows, n).at(0));
            int i = k - 1;
            while (i >= 0 && pick[i] == nr - k + i) --i;
            if (i < 0) break;
            ++pick[i];
            for (int j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
        }
    }
    return central_arrangement(n, normals);
}

namespace {

void put(std::ostringstream& os, const IntMatrix& M) {
    os << M.rows() << "x" << M.cols() << "[";
    for (int c = 0; c < M.cols(); ++c)
        for (const auto& [r, v] : M.column(c)) os << r << "," << c << ":" << v << " ";
    os << "]";
}

std::string fingerprint(const ConicModel& C) {
    std::ostringstream os;
    for (const auto& h : C.cones->arrangement().hyperplanes) os << str(to_q(h.normal)) << ";";
    os << "|";
    for (int c = 0; c < C.cones->size(); ++c) {
        const ChainComplex& V = C.diagram.value(c);
        if (V.empty()) {
            os << "0;";
            continue;
        }
        os << V.lo() << ":";
        for (int k = V.lo(); k <= V.hi(); ++k) {
            os << V.rank(k);
            put(os, V.d(k));
        }
        os << ";";
    }
    os << "|";
    for (const auto& [ab, f] : C.diagram.cover_maps()) {
        os << ab.first << ">" << ab.second << "{";
        for (const auto& [k, M] : f.f) {
            os << k << ":";
            put(os, M);
        }
        os << "}";
    }
    return os.str();
}

}  // namespace

Microsupport microsupport_at(const SheafDiagram& F, const QVec& v, std::shared_ptr<const StrataPoset> test,
                             MicrosupportCache* cache) {
    if (cache && cache->test() != test) throw std::invalid_argument("microsupport cache built on another test fan");
    ConicModel C = localize(F, v);
    Microsupport M;
    M.test = test;
    const int nt = test->size();
    std::string key;
    if (cache) {
        key = fingerprint(C);
        auto it = cache->memo_.find(key);
        if (it != cache->memo_.end()) {
            ++cache->hits_;
            M.cones = it->second;
            for (int t : M.cones) M.covectors.push_back(test->stratum(t).sample);
            return M;
        }
    }
    std::vector<char> hit(nt, 0);
    configure_threads();
    std::string err;
#pragma omp parallel for schedule(dynamic)
    for (int t = 0; t < nt; ++t) {
        try {
            hit[t] = !homology(fs_microstalk(C, test->stratum(t).sample)).is_zero();
        } catch (const std::exception& e) {
#pragma omp critical
            err = e.what();
        }
    }
    if (!err.empty()) throw std::runtime_error(err);
    for (int t = 0; t < nt; ++t) {
        bool in = false;
        for (int u = 0; u < nt && !in; ++u) in = hit[u] && test->leq(t, u);
        if (!in) continue;
        M.cones.push_back(t);
        M.covectors.push_back(test->stratum(t).sample);
    }
    if (cache) cache->memo_.emplace(std::move(key), M.cones);
    return M;
}

bool SsReport::pass() const {
    return std::all_of(points.begin(), points.end(), [](const SsPoint& p) { return p.contained; });
}

std::string SsReport::to_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& p : points) {
        nlohmann::json pt = nlohmann::json::array();
        for (const auto& c : p.point) pt.push_back(c.str());
        nlohmann::json j{{"point", pt},
                         {"stratum", p.stratum},
                         {"microsupport_cones", p.microsupport},
                         {"skeleton_cones", p.skeleton},
                         {"contained", p.contained}};
        if (!p.contained) j["counterexample"] = p.counterexample;
        arr.push_back(j);
    }
    return nlohmann::json{{"points", arr}, {"pass", pass()}, {"relative_to", "test fan"}}.dump();
}

SsReport ss_check(const SheafDiagram& F, const Fan& fan, const std::vector<QVec>& samples, MicrosupportCache* cache) {
    auto test = cache ? cache->test() : test_fan(fan);
    SsReport rep;
    for (const auto& v : samples) {
        SsPoint p;
        p.point = v;
        p.stratum = F.strata().stratum_of(v);
        Microsupport M = microsupport_at(F, v, test, cache);
        SkeletonFiber fib = skeleton_fiber(fan, v);
        for (int t : fib.cones) {
            std::string s = "-{";
            for (std::size_t i = 0; i < fan.cone(t).size(); ++i)
                s += (i ? "," : "") + str(to_q(fan.rays()[fan.cone(t)[i]]));
            p.skeleton.push_back(s + "}");
        }
        for (const auto& xi : M.covectors) {
            p.microsupport.push_back(str(xi));
            if (p.contained && !fib.contains(fan, xi)) {
                p.contained = false;
                p.counterexample = str(xi);
            }
        }
        rep.points.push_back(std::move(p));
    }
    return rep;
}

std::vector<QVec> core_samples(const SheafDiagram& F) {
    std::vector<QVec> out;
    for (int s = 0; s < F.strata().size(); ++s)
        if (F.strata().in_core(s)) out.push_back(F.strata().stratum(s).sample);
    return out;
}

}  // namespace fltz
