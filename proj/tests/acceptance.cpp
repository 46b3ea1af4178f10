// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Every comparison is exact (graded groups, integers, normal forms); the
// constants below fix sample sizes and seeds.

#include "fltz/ccc.hpp"
#include "fltz/euler.hpp"
#include "fltz/lp.hpp"
#include "fltz/microlocal.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

using namespace fltz;

namespace {

constexpr int kSamplesPerClass = 5;      // criterion 1
constexpr int kDirectionsPerFan = 12;    // criterion 2
constexpr int kRandomP2Triples = 50;     // criterion 3
constexpr int kNonzeroCovectors = 8;     // criterion 4
constexpr long kTranslateBound = 2;      // criterion 5, |m|_inf
constexpr int kKappaDivisorsPerFan = 10; // criterion 5
constexpr int kProbeGrid = 3;            // criterion 8, kProbeGrid^2 >= 9 points in rank 2
constexpr int kProbeDivisors = 5;        // criterion 8
constexpr long kOracleSpread = 3;        // criterion 9
constexpr int kMorelliPairs = 20;        // criterion 10
constexpr int kSnfMatrices = 100;        // criterion 12
constexpr unsigned kSeed = 20240611;

Fan p1() { return Fan::from_max_cones(1, {{1}, {-1}}, {{0}, {1}}); }
Fan p2() { return Fan::from_max_cones(2, {{1, 0}, {0, 1}, {-1, -1}}, {{0, 1}, {1, 2}, {0, 2}}); }
Fan p1xp1() { return Fan::from_max_cones(2, {{1, 0}, {-1, 0}, {0, 1}, {0, -1}}, {{0, 2}, {2, 1}, {1, 3}, {3, 0}}); }
Fan f1() { return Fan::from_max_cones(2, {{1, 0}, {0, 1}, {-1, 1}, {0, -1}}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}); }

struct Named {
    std::string name;
    Fan fan;
};

std::vector<Named> all_fans() { return {{"P1", p1()}, {"P2", p2()}, {"P1xP1", p1xp1()}, {"F1", f1()}}; }

std::shared_ptr<const StrataPoset> strata(const Fan& F, const Window& w) {
    return std::make_shared<const StrataPoset>(fltz_arrangement(F, w));
}
std::shared_ptr<const StrataPoset> strata(const Fan& F, long lo, long hi) {
    return strata(F, Window::cube(F.rank(), Rat(lo), Rat(hi)));
}

// twice as wide about the centre
Window doubled(const Window& w) {
    Window d = w;
    for (int i = 0; i < w.rank(); ++i) {
        Rat half = (w.hi[i] - w.lo[i]) / Rat(2);
        d.lo[i] -= half;
        d.hi[i] += half;
    }
    return d;
}

bool in_unit_box(const QVec& v) {
    return std::all_of(v.begin(), v.end(), [](const Rat& q) { return Rat(0) <= q && q < Rat(1); });
}

bool is_origin(const QVec& v) {
    return std::all_of(v.begin(), v.end(), [](const Rat& q) { return q == Rat(0); });
}

QVec plus(const QVec& a, const ZVec& m) {
    QVec r = a;
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += Rat(m[i]);
    return r;
}

// d o d = 0 on everything the run produces
struct DdAudit {
    long seen = 0, bad = 0;
    void operator()(const ChainComplex& C) {
        ++seen;
        if (!C.is_complex()) ++bad;
    }
    void operator()(const SheafDiagram& F) {
        for (int s = 0; s < F.strata().size(); ++s) (*this)(F.value(s));
    }
} dd;

// window-doubling stability results for criteria 1, 5, 8, 9
std::map<int, std::string> doubling_failures;
std::set<int> doubling_ran;

void doubling(int crit, bool ok, const std::string& what) {
    doubling_ran.insert(crit);
    if (!ok && !doubling_failures.count(crit)) doubling_failures[crit] = what;
}

struct Result {
    bool pass = true;
    std::string note;
    int checks = 0;
    void check(bool ok, const std::string& what) {
        ++checks;
        if (!ok && pass) {
            pass = false;
            note = what;
        }
    }
};

Divisor random_divisor(const Fan& F, std::mt19937& rng, long lo, long hi) {
    Divisor D{ZVec(F.num_rays())};
    for (auto& x : D.n) x = lo + static_cast<long>(rng() % static_cast<unsigned>(hi - lo + 1));
    return D;
}

Divisor random_ample(const Fan& F, std::mt19937& rng) {
    for (int it = 0;; ++it) {
        Divisor D = random_divisor(F, rng, 0, it < 50 ? 1 : 2);
        if (is_strictly_convex(F, D)) return D;
    }
}

long lattice_count(const Polytope& P) {
    if (P.empty()) return 0;
    const int n = P.rank;
    ZVec lo(n), hi(n);
    for (int i = 0; i < n; ++i) {
        Rat a = P.vertices[0][i], b = a;
        for (const auto& v : P.vertices) a = std::min(a, v[i]), b = std::max(b, v[i]);
        lo[i] = to_long(ceil(a));
        hi[i] = to_long(floor(b));
    }
    long cnt = 0;
    ZVec m = lo;
    while (true) {
        if (P.contains(to_q(m))) ++cnt;
        int i = n - 1;
        while (i >= 0 && m[i] == hi[i]) m[i] = lo[i], --i;
        if (i < 0) break;
        ++m[i];
    }
    return cnt;
}

// ---- 1 ----

// At least kSamplesPerClass points in every stratum class of the core: the
// sample, midpoints towards closure vertices, and lattice translates.
std::vector<std::pair<QVec, int>> class_samples(const Fan& F, const StrataPoset& S) {
    const int n = F.rank();
    std::vector<std::pair<QVec, int>> out;
    for (int s = 0; s < S.size(); ++s) {
        const auto& st = S.stratum(s);
        if (!S.in_core(s) || !in_unit_box(st.sample)) continue;
        std::vector<QVec> pts{st.sample};
        for (const auto& v : st.closure_vertices) {
            if (static_cast<int>(pts.size()) >= 3) break;
            QVec mid(n);
            for (int i = 0; i < n; ++i) mid[i] = (st.sample[i] + v[i]) / Rat(2);
            if (std::find(pts.begin(), pts.end(), mid) == pts.end()) pts.push_back(mid);
        }
        for (int i = 0; static_cast<int>(pts.size()) < kSamplesPerClass + 2; ++i) {
            ZVec m(n, 0);
            m[i % n] = (i / n) % 2 == 0 ? 1 : -1;
            m[(i + 1) % n] -= i / (2 * n);
            pts.push_back(plus(st.sample, m));
        }
        for (const auto& p : pts) out.push_back({p, s});
    }
    return out;
}

Result criterion1() {
    Result r;
    for (const auto& [name, F] : all_fans()) {
        Window w = Window::cube(F.rank(), Rat(-2), Rat(3));
        auto S = strata(F, w);
        auto samples = class_samples(F, *S);
        std::map<int, int> per_class;
        std::vector<QVec> pts;
        for (const auto& [p, s] : samples) {
            ++per_class[s];
            pts.push_back(p);
        }
        bool enough = true;
        for (const auto& [s, k] : per_class) enough = enough && k >= kSamplesPerClass;
        r.check(enough && !per_class.empty(), name + ": too few samples per class");
        Report rep = unit_gluing_check(F, pts);
        r.check(rep.pass, name + ": " + (rep.witnesses.empty() ? "" : rep.witnesses.front()));

        // the same stalks read off the sheaf model on W and on the doubled window
        Divisor zero{ZVec(F.num_rays(), 0)};
        auto K1 = kappa_line_bundle(F, zero, S);
        auto K2 = kappa_line_bundle(F, zero, strata(F, doubled(w)));
        dd(K1);
        dd(K2);
        for (const auto& p : pts) {
            if (!w.core_contains(p)) continue;
            GradedGroup want = is_origin(p) ? GradedGroup::free(0) : GradedGroup{};
            GradedGroup a = homology(stalk(K1, p)), b = homology(stalk(K2, p));
            r.check(a == want, name + ": stalk at " + str(p) + " is " + a.str());
            doubling(1, a == b, name + " at " + str(p));
        }
    }
    return r;
}

// ---- 2 ----

Result criterion2() {
    Result r;
    std::mt19937 rng(kSeed + 2);
    for (const auto& [name, F] : all_fans()) {
        for (int k = 0; k < kDirectionsPerFan;) {
            QVec m(F.rank());
            for (auto& v : m) v = Rat(static_cast<long>(rng() % 13) - 6, 1 + static_cast<long>(rng() % 4));
            if (is_origin(m)) continue;
            ++k;
            r.check(contractibility_check(F, m), name + ": direction " + str(m));
        }
    }
    return r;
}

// ---- 3 ----

std::vector<SymbolicObject> generators(std::shared_ptr<const Fan> F, long bound, const std::vector<Divisor>& glued) {
    const int n = F->rank();
    std::vector<SymbolicObject> out;
    std::vector<ZVec> ms;
    ZVec m(n, -bound);
    while (true) {
        ms.push_back(m);
        int i = n - 1;
        while (i >= 0 && m[i] == bound) m[i] = -bound, --i;
        if (i < 0) break;
        ++m[i];
    }
    for (const auto& v : ms) {
        for (int c = 0; c < F->num_cones(); ++c) out.push_back(SymbolicObject::cone(F, v, c));
        out.push_back(SymbolicObject::point(F, v));
    }
    for (const auto& D : glued) out.push_back(SymbolicObject::glued(F, D));
    return out;
}

Result criterion3() {
    Result r;
    for (const auto& [name, G] : all_fans()) {
        auto F = std::make_shared<const Fan>(G);
        const int n = F->rank();
        for (int x = 0; x < F->num_cones(); ++x)
            for (int y = 0; y < F->num_cones(); ++y) {
                std::vector<int> common;
                std::set_intersection(F->cone(x).begin(), F->cone(x).end(), F->cone(y).begin(), F->cone(y).end(),
                                      std::back_inserter(common));
                int meet = F->find_cone(common);
                auto lhs = convolve_symbolic(SymbolicObject::cone(F, ZVec(n, 0), x), SymbolicObject::cone(F, ZVec(n, 0), y));
                r.check(meet >= 0 && lhs == SymbolicObject::cone(F, ZVec(n, 0), meet),
                        name + ": cones " + std::to_string(x) + "," + std::to_string(y) + " give " + lhs.str());
            }
    }
    auto laws = [&](const SymbolicObject& a, const SymbolicObject& b, const SymbolicObject& c, const std::string& where) {
        r.check(convolve_symbolic(a, b) == convolve_symbolic(b, a), where + ": commutativity");
        r.check(convolve_symbolic(convolve_symbolic(a, b), c) == convolve_symbolic(a, convolve_symbolic(b, c)),
                where + ": associativity");
    };
    {
        auto F = std::make_shared<const Fan>(p1());
        auto gens = generators(F, 1, {Divisor{{0, 1}}, Divisor{{1, 1}}, Divisor{{2, -1}}});
        for (const auto& a : gens)
            for (const auto& b : gens)
                for (const auto& c : gens) laws(a, b, c, "P1 " + a.str() + " " + b.str() + " " + c.str());
    }
    {
        auto F = std::make_shared<const Fan>(p2());
        auto gens = generators(F, 2, {Divisor{{1, 0, 0}}, Divisor{{1, 1, 1}}, Divisor{{0, 2, 0}}, Divisor{{2, -1, 0}}});
        std::mt19937 rng(kSeed + 3);
        for (int t = 0; t < kRandomP2Triples; ++t) {
            const auto& a = gens[rng() % gens.size()];
            const auto& b = gens[rng() % gens.size()];
            const auto& c = gens[rng() % gens.size()];
            laws(a, b, c, "P2 " + a.str() + " " + b.str() + " " + c.str());
        }
    }
    return r;
}

// ---- 4 ----

Result criterion4() {
    Result r;
    for (const auto& [name, F] : all_fans()) {
        const int n = F.rank();
        auto T = test_fan(F);
        std::vector<ZVec> normals;
        for (const auto& h : T->arrangement().hyperplanes) normals.push_back(h.normal);
        for (int c = 0; c < F.num_cones(); ++c) {
            const auto& rays = F.cone(c);
            std::vector<QVec> gens;
            for (int ray : rays) gens.push_back(to_q(F.rays()[ray]));
            // relative interior of the cone: positive combination of all its rays
            auto in_relint = [&](const QVec& x) {
                if (gens.empty()) return is_origin(x);
                if (!cone_contains(gens, x)) return false;
                for (std::size_t k = 0; k < gens.size(); ++k) {
                    std::vector<QVec> facet;
                    for (std::size_t j = 0; j < gens.size(); ++j)
                        if (j != k) facet.push_back(gens[j]);
                    if (facet.empty() ? is_origin(x) : cone_contains(facet, x)) return false;
                }
                return true;
            };
            auto W = conic_indicator(n, normals, in_relint, F.cone_dim(c));
            for (int t = 0; t < T->size(); ++t) {
                const QVec& xi = T->stratum(t).sample;
                int hi = -1;
                for (int ray : rays) hi = std::max(hi, dot(xi, F.rays()[ray]).sign());
                auto C = fs_microstalk(W, xi);
                dd(C);
                GradedGroup got = homology(C);
                if (hi < 0)
                    r.check(got == GradedGroup::free(0), name + ": cone " + std::to_string(c) + " at " + str(xi) + " got " + got.str());
                else if (hi > 0)
                    r.check(got.is_zero(), name + ": cone " + std::to_string(c) + " at " + str(xi) + " got " + got.str());
            }
        }
        auto constant = conic_indicator(n, normals, [](const QVec&) { return true; }, 0);
        auto z = fs_microstalk(constant, QVec(n, Rat(0)));
        dd(z);
        // cohomological degree n is homological -n
        r.check(homology(z) == GradedGroup::free(-n), name + ": constant sheaf at 0 got " + homology(z).str());
        std::mt19937 rng(kSeed + 4);
        for (int k = 0; k < kNonzeroCovectors;) {
            QVec xi(n);
            for (auto& v : xi) v = Rat(static_cast<long>(rng() % 9) - 4, 1 + static_cast<long>(rng() % 3));
            if (is_origin(xi)) continue;
            ++k;
            auto m = fs_microstalk(constant, xi);
            dd(m);
            r.check(homology(m).is_zero(), name + ": constant sheaf at " + str(xi));
        }
    }
    return r;
}

// ---- 5 ----

std::string ss_signature(const SsReport& rep) {
    std::ostringstream os;
    for (const auto& p : rep.points) {
        os << str(p.point) << (p.contained ? "+" : "-");
        for (const auto& c : p.microsupport) os << c;
        os << ";";
    }
    return os.str();
}

Result criterion5() {
    Result r;
    for (const auto& [name, F] : all_fans()) {
        const int n = F.rank();
        MicrosupportCache cache(test_fan(F));
        // omega of m + sigma^v near m
        auto S = strata(F, -(kTranslateBound + 2), kTranslateBound + 2);
        std::vector<QVec> local;
        {
            auto S0 = strata(F, -3, 3);
            for (int s = 0; s < S0->size(); ++s) {
                const QVec& v = S0->stratum(s).sample;
                if (std::all_of(v.begin(), v.end(), [](const Rat& q) { return Rat(-1) <= q && q < Rat(1); }))
                    local.push_back(v);
            }
        }
        ZVec m(n, -kTranslateBound);
        while (true) {
            for (int c = 0; c < F.num_cones(); ++c) {
                auto W = omega_closed(translated_dual_cone(F, c, m), S);
                std::vector<QVec> pts;
                for (const auto& v : local) pts.push_back(plus(v, m));
                auto rep = ss_check(W, F, pts, &cache);
                r.check(rep.pass(), name + ": omega of " + str(to_q(m)) + " + cone " + std::to_string(c) + "^v");
            }
            int i = n - 1;
            while (i >= 0 && m[i] == kTranslateBound) m[i] = -kTranslateBound, --i;
            if (i < 0) break;
            ++m[i];
        }
        // kappa of random divisors over the fundamental domain
        std::mt19937 rng(kSeed + 5);
        for (int k = 0; k < kKappaDivisorsPerFan; ++k) {
            Divisor D = random_divisor(F, rng, -1, 1);
            Window w = morelli_window(F, {{D, 1}});
            for (int i = 0; i < n; ++i) w.lo[i] = std::min(w.lo[i], Rat(-2)), w.hi[i] = std::max(w.hi[i], Rat(3));
            auto K = kappa_line_bundle(F, D, strata(F, w));
            dd(K);
            std::vector<QVec> pts;
            for (const auto& v : core_samples(K))
                if (in_unit_box(v)) pts.push_back(v);
            auto rep = ss_check(K, F, pts, &cache);
            r.check(rep.pass() && !pts.empty(), name + ": kappa(" + D.str() + ") " + rep.to_json());
            if (k < 3) {
                auto K2 = kappa_line_bundle(F, D, strata(F, doubled(w)));
                doubling(5, ss_signature(ss_check(K2, F, pts)) == ss_signature(rep), name + " kappa(" + D.str() + ")");
            }
        }
    }
    // negative control: a skyscraper off the lattice fails exactly at its point
    Fan F = p1();
    auto S = std::make_shared<const StrataPoset>(
        fltz_arrangement(F, Window::cube(1, Rat(-3), Rat(3)), {{ZVec{1}, Rat(1, 2)}}));
    auto sky = skyscraper({Rat(1, 2)}, S);
    std::vector<QVec> pts{{Rat(1, 2)}, {Rat(0)}, {Rat(1, 4)}, {Rat(3, 4)}, {Rat(1)}, {Rat(-1, 2)}};
    auto rep = ss_check(sky, F, pts);
    for (const auto& p : rep.points) {
        bool at_support = p.point == QVec{Rat(1, 2)};
        r.check(p.contained != at_support, "skyscraper(1/2) control at " + str(p.point));
    }
    return r;
}

// ---- 6 ----

Result criterion6() {
    Result r;
    Fan F = p1();
    BeilinsonResult b = beilinson_report(F);
    r.check(b.report.pass, "beilinson report: " + b.report.to_json());
    const auto& e = b.table.ext;
    r.check(e.size() == 2 && e[0][0] == GradedGroup::free(0) && e[0][1] == GradedGroup::free(0, 2) && e[1][0].is_zero() &&
                e[1][1] == GradedGroup::free(0),
            "Ext table of O, O(1): " + b.table.to_json());
    Divisor O{{0, 0}};
    for (long d = 0; d <= 5; ++d) {
        Divisor Od{{0, d}};
        auto h = hom_nonequivariant(F, O, Od);
        long oracle = lattice_count(divisor_to_polytope(F, Od));
        r.check(oracle == d + 1 && h.ext == GradedGroup::free(0, static_cast<int>(oracle)),
                "Ext(O, O(" + std::to_string(d) + ")) = " + h.ext.str());
    }
    for (long d = 2; d <= 5; ++d) {
        auto h = hom_nonequivariant(F, O, Divisor{{0, -d}});
        // Serre duality: h^1(O(-d)) = h^0(O(d-2))
        long oracle = lattice_count(divisor_to_polytope(F, Divisor{{0, d - 2}}));
        r.check(oracle == d - 1 && h.ext == GradedGroup::free(-1, static_cast<int>(oracle)),
                "Ext(O, O(-" + std::to_string(d) + ")) = " + h.ext.str());
    }
    return r;
}

// ---- 7 ----

Result criterion7() {
    Result r;
    Fan F = p2();
    Divisor O{{0, 0, 0}};
    auto certified = [&](const HomResult& h) { return h.checked_radius > h.radius && h.doublings <= 4; };
    for (long d = 0; d <= 4; ++d) {
        auto h = hom_nonequivariant(F, O, Divisor{{d, 0, 0}});
        int want = static_cast<int>((d + 1) * (d + 2) / 2);
        r.check(h.ext == GradedGroup::free(0, want), "Ext(O, O(" + std::to_string(d) + ")) = " + h.ext.str());
        r.check(certified(h), "twist sum certificate for O(" + std::to_string(d) + ")");
        for (const auto& [m, g] : h.contributions) r.check(g == GradedGroup::free(0), "weight " + str(to_q(m)));
    }
    auto h = hom_nonequivariant(F, O, Divisor{{-3, 0, 0}});
    r.check(h.ext == GradedGroup::free(-2), "Ext(O, O(-3)) = " + h.ext.str());
    r.check(certified(h), "twist sum certificate for O(-3)");
    return r;
}

// ---- 8 ----

Result criterion8() {
    Result r;
    std::mt19937 rng(kSeed + 8);
    for (const auto& [name, F] : {Named{"P1", p1()}, Named{"P2", p2()}}) {
        const int n = F.rank();
        std::vector<QVec> grid;
        const int steps = n == 1 ? kProbeGrid * kProbeGrid : kProbeGrid;
        ZVec idx(n, 0);
        while (true) {
            QVec x(n);
            for (int i = 0; i < n; ++i) x[i] = Rat(idx[i], steps);
            grid.push_back(x);
            int i = n - 1;
            while (i >= 0 && idx[i] == steps - 1) idx[i] = 0, --i;
            if (i < 0) break;
            ++idx[i];
        }
        r.check(grid.size() >= 9, name + ": grid too small");
        for (int k = 0; k < kProbeDivisors; ++k) {
            Divisor D = random_divisor(F, rng, -2, 2);
            Window w = Window::cube(n, Rat(-3), Rat(4));
            auto K1 = kappa_line_bundle(F, D, strata(F, w));
            auto K2 = kappa_line_bundle(F, D, strata(F, doubled(w)));
            for (const auto& x : grid) {
                Report rep = probing_check(F, x, D);
                r.check(rep.pass, name + ": " + rep.to_json());
                auto hc = hom_equivariant(F, probing_divisor(F, x), D);
                dd(hc);
                GradedGroup lhs = homology(hc).shifted(n);
                GradedGroup a = homology(stalk(K1, x));
                r.check(lhs == a, name + ": x=" + str(x) + " D=" + D.str() + " map=" + lhs.str() + " stalk=" + a.str());
                doubling(8, a == homology(stalk(K2, x)), name + " x=" + str(x));
            }
        }
    }
    return r;
}

// ---- 9 ----

Divisor translated(const Fan& F, const Divisor& D, const ZVec& a) {
    Divisor E = D;
    for (int r = 0; r < F.num_rays(); ++r)
        for (int i = 0; i < F.rank(); ++i) E.n[r] -= a[i] * F.rays()[r][i];
    return E;
}

Result criterion9() {
    Result r;
    Fan F = p1();
    // ample on P1 means n_+ + n_- > 0; the polytope is [-n_+, n_-] with spread n_+ + n_-
    std::vector<Divisor> ample;
    for (long s = 1; s <= kOracleSpread; ++s)
        for (long a = -1; a <= 1; ++a) ample.push_back(Divisor{{a, s - a}});
    constexpr long kTwistBox = 8;  // every nonzero twist has |m| <= 2 * spread + 2
    for (const auto& D1 : ample)
        for (const auto& D2 : ample) {
            GradedGroup total, total2;
            for (long m = -kTwistBox; m <= kTwistBox; ++m) {
                Divisor E = translated(F, D2, {m});
                Polytope P1 = divisor_to_polytope(F, D1), P2 = divisor_to_polytope(F, E);
                Rat lo = std::min(P1.vertices.front()[0], P2.vertices.front()[0]) - Rat(3);
                Rat hi = std::max(P1.vertices.back()[0], P2.vertices.back()[0]) + Rat(3);
                Window w = Window::cube(1, Rat(floor(lo)), Rat(ceil(hi)));
                auto S = strata(F, w);
                auto mc = mapping_complex_window(omega_closed(P1, S), omega_closed(P2, S));
                dd(mc);
                GradedGroup g = homology(mc);
                if (std::abs(m) == kTwistBox) r.check(g.is_zero(), "twist box too small at " + std::to_string(m));
                total += g;
                auto S2 = strata(F, doubled(w));
                GradedGroup g2 = homology(mapping_complex_window(omega_closed(P1, S2), omega_closed(P2, S2)));
                total2 += g2;
                doubling(9, g == g2, D1.str() + " " + E.str());
            }
            auto h = hom_nonequivariant(F, D1, D2);
            r.check(h.ext == total, "(" + D1.str() + ", " + D2.str() + "): twist sum " + h.ext.str() + " oracle " + total.str());
        }
    return r;
}

// ---- 10 ----

Result criterion10() {
    Result r;
    std::mt19937 rng(kSeed + 10);
    for (const auto& [name, F] : all_fans()) {
        const int n = F.rank();
        const long sign = n % 2 == 0 ? 1 : -1;
        for (int k = 0; k < 3; ++k) {
            Divisor D = random_ample(F, rng);
            Polytope P = divisor_to_polytope(F, D);
            auto f = morelli_map(F, {{D, 1}});
            bool ok = true;
            for (int s = 0; s < f.strata->size(); ++s) {
                const QVec& y = f.strata->stratum(s).sample;
                bool inside = true;
                for (std::size_t i = 0; i < P.normals.size(); ++i) inside = inside && dot(y, P.normals[i]) > P.lower[i];
                ok = ok && f.values[s] == (inside ? sign : 0);
            }
            r.check(ok, name + ": morelli(" + D.str() + ") is not (-1)^n on the open polytope");
        }
        for (int k = 0; k < kMorelliPairs; ++k) {
            Divisor D1 = random_ample(F, rng), D2 = random_ample(F, rng);
            auto S = strata(F, morelli_window(F, {{D1 + D2, 1}}));
            auto a = morelli_map(F, {{D1, 1}}, S), b = morelli_map(F, {{D2, 1}}, S);
            r.check(euler_convolution(a, b, S) == morelli_map(F, {{D1 + D2, 1}}, S),
                    name + ": morelli(" + D1.str() + " + " + D2.str() + ")");
        }
    }
    return r;
}

// ---- 11 ----

Result criterion11() {
    Result r;
    for (const auto& [name, F] : all_fans()) {
        const int n = F.rank();
        Polytope P = divisor_to_polytope(F, Divisor{ZVec(F.num_rays(), 1)});
        // grid of step 1/4 over W = [-2,2]^n
        ZVec idx(n, -8);
        while (true) {
            QVec x(n);
            for (int i = 0; i < n; ++i) x[i] = Rat(idx[i], 4);
            Rat eps = choose_epsilon(F, x, P);
            r.check(Rat(0) < eps && deformation_integrality(F, x, P, eps), name + ": x=" + str(x));
            bool integral = std::all_of(x.begin(), x.end(), [](const Rat& q) { return q.is_integer(); });
            if (integral) r.check(!deformation_integrality(F, x, P, Rat(1)), name + ": eps=1 passes at " + str(x));
            int i = n - 1;
            while (i >= 0 && idx[i] == 8) idx[i] = -8, --i;
            if (i < 0) break;
            ++idx[i];
        }
    }
    return r;
}

// ---- 12 ----

Result criterion12() {
    Result r;
    std::mt19937 rng(kSeed + 12);
    for (int k = 0; k < kSnfMatrices; ++k) {
        int rows = 1 + static_cast<int>(rng() % 6), cols = 1 + static_cast<int>(rng() % 6);
        std::vector<std::vector<long>> a(rows, std::vector<long>(cols));
        for (auto& row : a)
            for (auto& v : row) v = rng() % 3 == 0 ? 0 : static_cast<long>(rng() % 19) - 9;
        IntMatrix A = IntMatrix::from_rows(a);
        SmithForm f = smith_normal_form(A);
        r.check(f.U * A * f.V == f.S, "U A V != S on matrix " + std::to_string(k));
        Int u = determinant(f.U), v = determinant(f.V);
        r.check((u == 1 || u == -1) && (v == 1 || v == -1), "non-unimodular transform on matrix " + std::to_string(k));
        Int prev = 1;
        bool diag = true;
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j)
                if (i != j && f.S.at(i, j) != 0) diag = false;
        for (int i = 0; i < std::min(rows, cols); ++i) {
            Int d = f.S.at(i, i);
            if (d < 0) diag = false;
            if (prev == 0 ? d != 0 : d % prev != 0) diag = false;
            prev = d;
        }
        r.check(diag, "S not in Smith form on matrix " + std::to_string(k));
    }
    r.check(dd.seen > 0 && dd.bad == 0,
            "d o d != 0 on " + std::to_string(dd.bad) + " of " + std::to_string(dd.seen) + " complexes");
    for (int c : {1, 5, 8, 9}) {
        r.check(doubling_ran.count(c) > 0, "no window-doubling run for criterion " + std::to_string(c));
        if (doubling_failures.count(c))
            r.check(false, "window doubling changes criterion " + std::to_string(c) + ": " + doubling_failures[c]);
    }
    return r;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Result()>>> criteria{
        {"unit gluing on P1, P2, P1xP1, F1", criterion1},
        {"visible subposets are acyclic", criterion2},
        {"convolution laws", criterion3},
        {"Fourier-Sato cone law", criterion4},
        {"singular support in the skeleton", criterion5},
        {"Beilinson quiver and P1 line bundle cohomology", criterion6},
        {"P2 line bundle cohomology", criterion7},
        {"probing corepresents stalks", criterion8},
        {"twist sum against the window oracle", criterion9},
        {"Morelli ring map", criterion10},
        {"deformation integrality", criterion11},
        {"Smith forms, d o d = 0, window doubling", criterion12},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        auto t0 = std::chrono::steady_clock::now();
        Result res;
        try {
            res = criteria[i].second();
        } catch (const std::exception& e) {
            res.pass = false;
            res.note = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        failed += !res.pass;
        std::printf("%s %2zu %s (%d checks, %.1fs)%s%s\n", res.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                    res.checks, secs, res.pass ? "" : ": ", res.note.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
