#include "fltz/ccc.hpp"

#include "fltz/io.hpp"
#include "fltz/parallel.hpp"

#include <json.hpp>

#include <algorithm>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace fltz {

void require_smooth_projective(const Fan& fan) {
    if (!fan.is_smooth()) throw std::invalid_argument("fan is not smooth");
    if (!fan.is_complete() || !certify_projective(fan)) throw std::invalid_argument("fan is not projective");
}

ConeHolim::ConeHolim(const Fan& fan) : op_(std::make_shared<FinitePoset>(fan.poset()->opposite())) {
    chains_ = op_->chains();
    chain_id_.resize(chains_.size());
    for (std::size_t k = 0; k < chains_.size(); ++k)
        for (std::size_t i = 0; i < chains_[k].size(); ++i) chain_id_[k][chains_[k][i]] = static_cast<int>(i);
}

std::vector<std::vector<int>> ConeHolim::generators(const std::vector<char>& support) const {
    if (static_cast<int>(support.size()) != op_->size()) throw std::invalid_argument("support size mismatch");
    for (auto [a, b] : op_->covers())
        if (support[a] && !support[b]) throw std::invalid_argument("cone support is not closed under faces");
    std::vector<std::vector<int>> gens(chains_.size());
    for (std::size_t k = 0; k < chains_.size(); ++k)
        for (std::size_t i = 0; i < chains_[k].size(); ++i)
            if (support[chains_[k][i].back()]) gens[k].push_back(static_cast<int>(i));
    return gens;
}

// Same generator order and signs as poset_holim, so the two agree exactly.
ChainComplex ConeHolim::complex(const std::vector<char>& support, int shift) const {
    auto gens = generators(support);
    ComplexBuilder B;
    std::vector<std::vector<int>> pos(chains_.size());
    for (std::size_t k = 0; k < chains_.size(); ++k) {
        pos[k].assign(chains_[k].size(), -1);
        for (int id : gens[k]) pos[k][id] = B.add_generator(shift - static_cast<int>(k));
    }
    for (std::size_t k = 1; k < chains_.size(); ++k) {
        for (int id : gens[k]) {
            const auto& c = chains_[k][id];
            for (std::size_t i = 0; i <= k; ++i) {
                std::vector<int> f;
                f.reserve(k);
                for (std::size_t t = 0; t <= k; ++t)
                    if (t != i) f.push_back(c[t]);
                if (!support[f.back()]) continue;
                int src = pos[k - 1][chain_id_[k - 1].at(f)];
                B.add_entry(shift - static_cast<int>(k) + 1, pos[k][id], src, Int(i % 2 == 0 ? 1 : -1));
            }
        }
    }
    return B.build();
}

ChainMap ConeHolim::inclusion(const std::vector<char>& small, const std::vector<char>& big, int shift) const {
    for (std::size_t i = 0; i < small.size(); ++i)
        if (small[i] && !big[i]) throw std::logic_error("support inclusion fails");
    auto gs = generators(small), gb = generators(big);
    ChainMap f;
    for (std::size_t k = 0; k < chains_.size(); ++k) {
        if (gs[k].empty()) continue;
        IntMatrix M(static_cast<int>(gb[k].size()), static_cast<int>(gs[k].size()));
        for (std::size_t j = 0; j < gs[k].size(); ++j) {
            auto it = std::lower_bound(gb[k].begin(), gb[k].end(), gs[k][j]);
            M.set(static_cast<int>(it - gb[k].begin()), static_cast<int>(j), Int(1));
        }
        f.f[shift - static_cast<int>(k)] = std::move(M);
    }
    return f;
}

std::vector<char> kappa_support(const Fan& fan, const Divisor& D, const QVec& y) {
    if (static_cast<int>(D.n.size()) != fan.num_rays()) throw std::invalid_argument("divisor has wrong length");
    if (static_cast<int>(y.size()) != fan.rank()) throw std::invalid_argument("point has wrong rank");
    std::vector<char> open(fan.num_rays());
    for (int r = 0; r < fan.num_rays(); ++r) open[r] = dot(y, fan.rays()[r]) > Rat(-D.n[r]);
    std::vector<char> S(fan.num_cones());
    for (int c = 0; c < fan.num_cones(); ++c) {
        bool in = true;
        for (int r : fan.cone(c)) in = in && open[r];
        S[c] = in;
    }
    return S;
}

ChainComplex kappa_stalk(const Fan& fan, const Divisor& D, const QVec& y) {
    require_smooth_projective(fan);
    return ConeHolim(fan).complex(kappa_support(fan, D, y), fan.rank());
}

SheafDiagram kappa_line_bundle(const Fan& fan, const Divisor& D, std::shared_ptr<const StrataPoset> strata) {
    require_smooth_projective(fan);
    if (strata->rank() != fan.rank()) throw std::invalid_argument("strata rank mismatch");
    ConeHolim H(fan);
    const int n = fan.rank();
    std::vector<std::vector<char>> supp(strata->size());
    std::map<std::vector<char>, ChainComplex> cache;
    std::vector<ChainComplex> values(strata->size());
    for (int s = 0; s < strata->size(); ++s) {
        supp[s] = kappa_support(fan, D, strata->stratum(s).sample);
        auto it = cache.find(supp[s]);
        if (it == cache.end()) it = cache.emplace(supp[s], H.complex(supp[s], n)).first;
        values[s] = it->second;
    }
    std::map<std::pair<int, int>, ChainMap> maps;
    for (auto [a, b] : strata->poset()->covers()) maps[{a, b}] = H.inclusion(supp[a], supp[b], n);
    return SheafDiagram(strata, Diagram(strata->poset(), std::move(values), std::move(maps)));
}

GluedObject::GluedObject(std::shared_ptr<const Fan> fan, Divisor D)
    : fan_(std::move(fan)), D_(std::move(D)), f_(find_support_function(*fan_, D_)) {
    require_smooth_projective(*fan_);
}

const SheafDiagram& GluedObject::diagram(std::shared_ptr<const StrataPoset> strata) {
    auto it = cache_.find(strata.get());
    if (it == cache_.end()) {
        SheafDiagram d = kappa_line_bundle(*fan_, D_, strata);
        it = cache_.emplace(strata.get(), std::make_pair(strata, std::move(d))).first;
    }
    return it->second.second;
}

std::vector<char> hom_support(const Fan& fan, const Divisor& D1, const Divisor& D2, const ZVec& twist) {
    const int nr = fan.num_rays();
    if (static_cast<int>(D1.n.size()) != nr || static_cast<int>(D2.n.size()) != nr)
        throw std::invalid_argument("divisor has wrong length");
    std::vector<char> ok(nr);
    for (int r = 0; r < nr; ++r) {
        long v = D2.n[r] - D1.n[r];
        if (!twist.empty())
            for (int i = 0; i < fan.rank(); ++i) v -= twist[i] * fan.rays()[r][i];
        ok[r] = v >= 0;
    }
    std::vector<char> S(fan.num_cones());
    for (int c = 0; c < fan.num_cones(); ++c) {
        bool in = true;
        for (int r : fan.cone(c)) in = in && ok[r];
        S[c] = in;
    }
    return S;
}

ChainComplex hom_equivariant(const Fan& fan, const Divisor& D1, const Divisor& D2, const ZVec& twist) {
    require_smooth_projective(fan);
    if (!twist.empty() && static_cast<int>(twist.size()) != fan.rank()) throw std::invalid_argument("twist has wrong rank");
    return ConeHolim(fan).complex(hom_support(fan, D1, D2, twist), 0);
}

namespace {

// lattice points with r_in < |m|_inf <= r_out, lexicographic
std::vector<ZVec> shell(int n, int r_in, int r_out) {
    std::vector<ZVec> out;
    ZVec m(n, -r_out);
    while (true) {
        long norm = 0;
        for (long x : m) norm = std::max(norm, std::labs(x));
        if (norm > r_in || r_in < 0) out.push_back(m);
        int i = n - 1;
        while (i >= 0 && m[i] == r_out) m[i--] = -r_out;
        if (i < 0) break;
        ++m[i];
    }
    return out;
}

int initial_radius(const Fan& fan, const Divisor& D1, const Divisor& D2) {
    auto f1 = find_support_function(fan, D1), f2 = find_support_function(fan, D2);
    Rat spread;
    for (int c : fan.maximal_cones())
        for (int i = 0; i < fan.rank(); ++i) spread = std::max(spread, abs(f1.m.at(c)[i] - f2.m.at(c)[i]));
    return static_cast<int>(to_long(ceil(spread))) + 2;
}

using HomCache = std::map<std::vector<char>, GradedGroup>;

// Adds the twists of `ms` to res; returns whether any contributed.
bool accumulate(const Fan& fan, const ConeHolim& H, const Divisor& D1, const Divisor& D2, const std::vector<ZVec>& ms,
                HomCache& cache, HomResult& res, bool parallel) {
    std::vector<std::vector<char>> masks(ms.size());
    if (parallel) {
        const long cnt = static_cast<long>(ms.size());
#pragma omp parallel for schedule(static)
        for (long i = 0; i < cnt; ++i) masks[i] = hom_support(fan, D1, D2, ms[i]);
        std::vector<std::vector<char>> fresh;
        std::set<std::vector<char>> seen;
        for (const auto& mk : masks)
            if (!cache.count(mk) && seen.insert(mk).second) fresh.push_back(mk);
        std::vector<GradedGroup> hs(fresh.size());
        const long nf = static_cast<long>(fresh.size());
#pragma omp parallel for schedule(dynamic)
        for (long i = 0; i < nf; ++i) hs[i] = homology(H.complex(fresh[i], 0));
        for (std::size_t i = 0; i < fresh.size(); ++i) cache.emplace(fresh[i], hs[i]);
    } else {
        for (std::size_t i = 0; i < ms.size(); ++i) {
            masks[i] = hom_support(fan, D1, D2, ms[i]);
            if (!cache.count(masks[i])) cache.emplace(masks[i], homology(H.complex(masks[i], 0)));
        }
    }
    bool any = false;
    for (std::size_t i = 0; i < ms.size(); ++i) {
        const GradedGroup& g = cache.at(masks[i]);
        if (g.is_zero()) continue;
        any = true;
        res.contributions[ms[i]] = g;
        res.ext += g;
    }
    return any;
}

HomResult twist_sum(const Fan& fan, const Divisor& D1, const Divisor& D2, int max_doublings, bool parallel) {
    require_smooth_projective(fan);
    if (parallel) configure_threads();
    ConeHolim H(fan);
    HomCache cache;
    HomResult res;
    const int n = fan.rank();
    int R = initial_radius(fan, D1, D2);
    accumulate(fan, H, D1, D2, shell(n, -1, R), cache, res, parallel);
    while (true) {
        bool grew = accumulate(fan, H, D1, D2, shell(n, R, 2 * R), cache, res, parallel);
        if (!grew) {
            res.radius = R;
            res.checked_radius = 2 * R;
            break;
        }
        if (++res.doublings > max_doublings) throw std::runtime_error("non-stabilizing twist sum");
        R *= 2;
    }
    res.distinct_supports = static_cast<int>(cache.size());
    return res;
}

}  // namespace

HomResult hom_nonequivariant(const Fan& fan, const Divisor& D1, const Divisor& D2, int max_doublings) {
    return twist_sum(fan, D1, D2, max_doublings, true);
}

HomResult hom_nonequivariant_serial(const Fan& fan, const Divisor& D1, const Divisor& D2, int max_doublings) {
    return twist_sum(fan, D1, D2, max_doublings, false);
}

std::string Report::to_json() const {
    nlohmann::json j{{"claim", claim}, {"status", pass ? "pass" : "fail"}, {"witnesses", witnesses}};
    return j.dump();
}

Report unit_gluing_check(const Fan& fan, const std::vector<QVec>& samples) {
    require_smooth_projective(fan);
    Report rep;
    rep.claim = "holim of omega over the dual cones is the convolution unit";
    ConeHolim H(fan);
    Divisor zero{ZVec(fan.num_rays(), 0)};
    for (const auto& y : samples) {
        GradedGroup got = homology(H.complex(kappa_support(fan, zero, y), fan.rank()));
        bool origin = std::all_of(y.begin(), y.end(), [](const Rat& v) { return v == Rat(0); });
        GradedGroup want = origin ? GradedGroup::free(0) : GradedGroup{};
        std::string w = str(y) + " -> " + got.str();
        if (got != want)
            rep.fail("mismatch at " + w + ", expected " + want.str());
        else
            rep.witnesses.push_back(w);
    }
    return rep;
}

bool contractibility_check(const Fan& fan, const QVec& m) {
    if (static_cast<int>(m.size()) != fan.rank()) throw std::invalid_argument("direction has wrong rank");
    if (std::all_of(m.begin(), m.end(), [](const Rat& v) { return v == Rat(0); }))
        throw std::invalid_argument("direction must be nonzero");
    // m is in the interior of sigma^v iff <m, v> > 0 on every ray of sigma
    std::vector<int> elems;
    for (int c = 0; c < fan.num_cones(); ++c) {
        bool interior = true;
        for (int r : fan.cone(c)) interior = interior && dot(m, fan.rays()[r]) > Rat(0);
        if (!interior) elems.push_back(c);
    }
    FinitePoset sub = fan.poset()->opposite().subposet(elems);
    return order_complex_cohomology(sub, true).is_zero();
}

// map(omega(D_x), F) is computed in sheaves on M_R, i.e. weight 0. The twist
// sum is checked as well: weight m probes the stalk at x - m, so the
// non-equivariant Hom sees the sum of stalks over the orbit of x.
Report probing_check(const Fan& fan, const QVec& x, const Divisor& D) {
    Report rep;
    rep.claim = "map(omega(D_x), kappa(D))[n] is the stalk of kappa(D) at x";
    const int n = fan.rank();
    Divisor Dx = probing_divisor(fan, x);
    ConeHolim H(fan);
    require_smooth_projective(fan);
    GradedGroup lhs = homology(H.complex(hom_support(fan, Dx, D, ZVec(n, 0)), 0)).shifted(n);
    GradedGroup rhs = homology(H.complex(kappa_support(fan, D, x), n));
    std::string w = "x=" + str(x) + " D=" + D.str() + " D_x=" + Dx.str() + " hom=" + lhs.str() + " stalk=" + rhs.str();
    if (lhs != rhs)
        rep.fail(w);
    else
        rep.witnesses.push_back(w);

    HomResult total = hom_nonequivariant(fan, Dx, D);
    GradedGroup orbit;
    int bad = 0;
    for (const ZVec& m : shell(n, -1, total.checked_radius)) {
        QVec xm = x;
        for (int i = 0; i < n; ++i) xm[i] -= Rat(m[i]);
        GradedGroup st = homology(H.complex(kappa_support(fan, D, xm), n));
        GradedGroup hm = homology(H.complex(hom_support(fan, Dx, D, m), 0)).shifted(n);
        if (st != hm && bad++ < 3) rep.fail("twist " + str(to_q(m)) + ": hom=" + hm.str() + " stalk=" + st.str());
        orbit += st;
    }
    GradedGroup tsum = total.ext.shifted(n);
    std::string wo = "orbit stalks=" + orbit.str() + " twist sum=" + tsum.str();
    if (orbit != tsum || bad)
        rep.fail(wo);
    else
        rep.witnesses.push_back(wo);
    return rep;
}

std::string ExtTable::to_json() const {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : ext) {
        nlohmann::json row = nlohmann::json::array();
        for (const auto& g : r) row.push_back(graded_json(g, true));
        rows.push_back(row);
    }
    return nlohmann::json{{"labels", labels}, {"ext", rows}}.dump();
}

ExtTable ext_table(const Fan& fan, const std::vector<Divisor>& objects, const std::vector<std::string>& labels) {
    if (objects.size() != labels.size()) throw std::invalid_argument("one label per object expected");
    require_smooth_projective(fan);
    const std::size_t k = objects.size();
    ExtTable t;
    t.labels = labels;
    t.ext.assign(k, std::vector<GradedGroup>(k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) t.ext[i][j] = hom_nonequivariant(fan, objects[i], objects[j]).ext;
    return t;
}

BeilinsonResult beilinson_report(const Fan& fan) {
    std::set<ZVec> rays(fan.rays().begin(), fan.rays().end());
    if (fan.rank() != 1 || rays != std::set<ZVec>{{1}, {-1}}) throw std::invalid_argument("fan mismatch: expected the P1 fan");
    Divisor O{ZVec(2, 0)}, O1{ZVec(2, 0)};
    O1.n[fan.rays()[0][0] == 1 ? 1 : 0] = 1;  // the ray (-1)
    BeilinsonResult out;
    out.table = ext_table(fan, {O, O1}, {"O", "O(1)"});
    Report& rep = out.report;
    rep.claim = "Ext algebra of O, O(1) on P1 is the Kronecker quiver";
    const auto& E = out.table.ext;
    auto expect = [&](int i, int j, const GradedGroup& want) {
        std::string w = "Ext(" + out.table.labels[i] + "," + out.table.labels[j] + ") = " + E[i][j].str();
        if (E[i][j] != want)
            rep.fail(w + ", expected " + want.str());
        else
            rep.witnesses.push_back(w);
    };
    expect(0, 0, GradedGroup::free(0));
    expect(1, 1, GradedGroup::free(0));
    expect(0, 1, GradedGroup::free(0, 2));
    expect(1, 0, GradedGroup{});
    rep.witnesses.push_back("chi(O,O(1)) = " + std::to_string(E[0][1].euler_characteristic()));
    rep.witnesses.push_back("chi(O(1),O) = " + std::to_string(E[1][0].euler_characteristic()));
    nlohmann::json arrows = nlohmann::json::array();
    for (int a = 0; a < E[0][1].at(0).rank; ++a)
        arrows.push_back({{"source", "O"}, {"target", "O(1)"}, {"label", "x" + std::to_string(a)}});
    out.quiver_json = nlohmann::json{{"vertices", {"O", "O(1)"}}, {"arrows", arrows}}.dump();
    return out;
}

std::vector<QVec> sample_points(int rank, int count, unsigned seed) {
    std::mt19937 rng(seed);
    std::vector<QVec> out;
    if (count <= 0) return out;
    out.push_back(QVec(rank, Rat(0)));
    while (static_cast<int>(out.size()) < count) {
        QVec y(rank);
        for (auto& v : y) {
            long den = 1 + static_cast<long>(rng() % 5);
            long num = static_cast<long>(rng() % (4 * den - 1)) - (2 * den - 1);
            v = Rat(num, den);
        }
        out.push_back(y);
    }
    return out;
}

}  // namespace fltz
