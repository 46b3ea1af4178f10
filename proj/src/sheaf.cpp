#include "fltz/sheaf.hpp"

#include "fltz/lp.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace fltz {

bool HPolyhedron::interior_contains(const QVec& y) const {
    for (std::size_t i = 0; i < normals.size(); ++i)
        if (!(dot(y, normals[i]) > lower[i])) return false;
    return true;
}

HPolyhedron as_polyhedron(const Polytope& P) {
    if (P.normals.empty() && !P.vertices.empty()) throw std::invalid_argument("polytope without H-representation");
    return HPolyhedron{P.rank, P.normals, P.lower};
}

HPolyhedron translated_dual_cone(const Fan& fan, int cone, const ZVec& m) {
    HPolyhedron Q;
    Q.rank = fan.rank();
    for (int r : fan.cone(cone)) {
        Q.normals.push_back(fan.rays()[r]);
        Q.lower.push_back(dot(to_q(m), fan.rays()[r]));
    }
    return Q;
}

SheafDiagram::SheafDiagram(std::shared_ptr<const StrataPoset> strata, Diagram d)
    : strata_(std::move(strata)), diag_(std::move(d)) {
    if (diag_.base().size() != strata_->size()) throw std::invalid_argument("diagram does not match the strata");
}

SheafDiagram SheafDiagram::indicator(std::shared_ptr<const StrataPoset> strata, const std::vector<char>& support,
                                     int degree) {
    const int N = strata->size();
    if (static_cast<int>(support.size()) != N) throw std::invalid_argument("support size mismatch");
    const FinitePoset& P = *strata->poset();
    for (int s = 0; s < N; ++s) {
        if (!support[s]) continue;
        for (int t : P.above(s)) {
            if (support[t]) continue;
            for (int u : P.above(t))
                if (support[u]) throw std::invalid_argument("indicator support is not locally closed");
        }
    }
    std::vector<ChainComplex> values(N);
    for (int s = 0; s < N; ++s)
        if (support[s]) values[s] = ChainComplex::concentrated(degree);
    std::map<std::pair<int, int>, ChainMap> maps;
    for (auto [a, b] : P.covers())
        if (support[a] && support[b]) {
            ChainMap id;
            id.f[degree] = IntMatrix::identity(1);
            maps[{a, b}] = id;
        }
    return SheafDiagram(strata, Diagram(strata->poset(), std::move(values), std::move(maps)));
}

SheafDiagram SheafDiagram::zero(std::shared_ptr<const StrataPoset> strata) {
    return indicator(strata, std::vector<char>(strata->size(), 0), 0);
}

std::vector<int> SheafDiagram::support() const {
    std::vector<int> out;
    for (int s = 0; s < strata_->size(); ++s)
        if (value(s).total_rank() > 0) out.push_back(s);
    return out;
}

bool SheafDiagram::supported_in_core() const {
    for (int s : support())
        if (!strata_->in_core(s)) return false;
    return true;
}

namespace {

// nonempty interior iff (y,s,t) with <y,nu> - s*lower - t >= 0, s >= 0, t >= 1
bool has_interior(const HPolyhedron& Q) {
    const int n = Q.rank;
    std::vector<QVec> A;
    QVec b;
    for (std::size_t i = 0; i < Q.normals.size(); ++i) {
        QVec row = to_q(Q.normals[i]);
        row.push_back(-Q.lower[i]);
        row.push_back(Rat(-1));
        A.push_back(row);
        b.push_back(Rat(0));
    }
    QVec srow(n + 2), trow(n + 2);
    srow[n] = 1;
    trow[n + 1] = 1;
    A.push_back(srow);
    b.push_back(Rat(0));
    A.push_back(trow);
    b.push_back(Rat(1));
    return feasible_point(A, b, n + 2).has_value();
}

}  // namespace

SheafDiagram omega_closed(const HPolyhedron& Q, std::shared_ptr<const StrataPoset> strata) {
    if (Q.rank != strata->rank()) throw std::invalid_argument("rank mismatch");
    if (!has_interior(Q)) throw std::invalid_argument("polyhedron has empty interior");
    std::vector<char> supp(strata->size(), 0);
    for (int s = 0; s < strata->size(); ++s) {
        const Stratum& st = strata->stratum(s);
        bool inside = true;
        for (std::size_t i = 0; i < Q.normals.size(); ++i) {
            int c = (dot(st.sample, Q.normals[i]) - Q.lower[i]).sign();
            for (const auto& v : st.closure_vertices) {
                int cv = (dot(v, Q.normals[i]) - Q.lower[i]).sign();
                if ((c == 0 && cv != 0) || (c != 0 && cv == -c)) throw std::invalid_argument("refine arrangement");
            }
            if (c <= 0) inside = false;
        }
        supp[s] = inside;
    }
    return SheafDiagram::indicator(strata, supp, strata->rank());
}

SheafDiagram omega_closed(const Polytope& Q, std::shared_ptr<const StrataPoset> strata) {
    return omega_closed(as_polyhedron(Q), std::move(strata));
}

SheafDiagram skyscraper(const QVec& p, std::shared_ptr<const StrataPoset> strata) {
    int s = strata->stratum_of(p);
    if (strata->stratum(s).dim != 0) throw std::invalid_argument("not a point stratum: " + str(p));
    std::vector<char> supp(strata->size(), 0);
    supp[s] = 1;
    return SheafDiagram::indicator(strata, supp, 0);
}

ChainComplex stalk(const SheafDiagram& F, const QVec& x) {
    if (!F.strata().arrangement().window.core_contains(x))
        throw std::out_of_range("point " + str(x) + " is outside the trusted core");
    return F.value(F.strata().stratum_of(x));
}

ChainComplex global_sections_window(const SheafDiagram& F) {
    if (!F.supported_in_core()) throw std::invalid_argument("support touches the window boundary");
    return holim(F.diagram());
}

ChainComplex mapping_complex_window(const SheafDiagram& F, const SheafDiagram& G) {
    if (F.strata_ptr() != G.strata_ptr() && F.strata().size() != G.strata().size())
        throw std::invalid_argument("diagrams over different strata");
    if (!F.supported_in_core() && !G.supported_in_core())
        throw std::invalid_argument("both supports touch the window boundary");
    return mapping_complex(F.diagram(), G.diagram());
}

SheafDiagram pullback(const SheafDiagram& F, std::shared_ptr<const StrataPoset> target, const ZVec& m) {
    if (!F.supported_in_core()) throw std::invalid_argument("pullback needs support in the trusted core");
    const int N = target->size();
    const Window& w = F.strata().arrangement().window;
    std::vector<int> src(N, -1);
    std::vector<ChainComplex> values(N);
    for (int t = 0; t < N; ++t) {
        QVec y = target->stratum(t).sample;
        for (std::size_t i = 0; i < y.size(); ++i) y[i] -= Rat(m[i]);
        if (!w.contains(y)) continue;
        src[t] = F.strata().stratum_of(y);
        values[t] = F.value(src[t]);
    }
    std::map<std::pair<int, int>, ChainMap> maps;
    for (auto [a, b] : target->poset()->covers()) {
        if (src[a] < 0 || src[b] < 0) continue;
        if (values[a].total_rank() == 0 || values[b].total_rank() == 0) continue;
        if (!F.strata().leq(src[a], src[b])) throw std::invalid_argument("target does not refine the translated strata");
        maps[{a, b}] = F.diagram().map(src[a], src[b]);
    }
    return SheafDiagram(target, Diagram(target->poset(), std::move(values), std::move(maps)));
}

SheafDiagram translate(const SheafDiagram& F, const ZVec& m) {
    Arrangement A = F.strata().arrangement();
    for (auto& h : A.hyperplanes) {
        long s = 0;
        for (std::size_t i = 0; i < m.size(); ++i) s += m[i] * h.normal[i];
        h.offset += Rat(s);
    }
    A.window = A.window.translated(m);
    auto target = std::make_shared<const StrataPoset>(A);
    if (target->size() != F.strata().size()) throw std::logic_error("translated strata differ");
    return SheafDiagram(target, Diagram(target->poset(), F.diagram().values(), F.diagram().cover_maps()));
}

std::string to_json(const SheafDiagram& F) {
    using nlohmann::json;
    json strata = json::array();
    for (int s = 0; s < F.strata().size(); ++s) {
        json betti = json::object();
        const ChainComplex& V = F.value(s);
        if (!V.empty())
            for (int k = V.lo(); k <= V.hi(); ++k)
                if (V.rank(k)) betti[std::to_string(k)] = V.rank(k);
        json sample = json::array();
        for (const auto& x : F.strata().stratum(s).sample) sample.push_back(x.str());
        strata.push_back({{"signs", sign_string(F.strata().stratum(s).sign)},
                          {"dim", F.strata().stratum(s).dim},
                          {"sample", sample},
                          {"ranks", betti}});
    }
    json maps = json::array();
    for (const auto& [ab, cm] : F.diagram().cover_maps()) {
        json mats = json::object();
        for (const auto& [k, M] : cm.f) {
            json rows = json::array();
            for (const auto& r : M.dense()) {
                json row = json::array();
                for (const auto& v : r) row.push_back(to_long(v));
                rows.push_back(row);
            }
            mats[std::to_string(k)] = rows;
        }
        maps.push_back({{"from", ab.first}, {"to", ab.second}, {"matrices", mats}});
    }
    return json{{"strata", strata}, {"maps", maps}}.dump();
}

SymbolicObject::SymbolicObject(std::shared_ptr<const Fan> fan, const Term& t, long coeff) : fan_(std::move(fan)) {
    add(t, coeff);
}

SymbolicObject SymbolicObject::cone(std::shared_ptr<const Fan> fan, const ZVec& m, int cone) {
    if (cone < 0 || cone >= fan->num_cones()) throw std::invalid_argument("cone not in fan");
    Term t;
    t.kind = Term::Cone;
    t.cone = cone;
    t.data = m;
    return SymbolicObject(std::move(fan), t);
}

SymbolicObject SymbolicObject::point(std::shared_ptr<const Fan> fan, const ZVec& m) {
    Term t;
    t.kind = Term::Point;
    t.data = m;
    return SymbolicObject(std::move(fan), t);
}

SymbolicObject SymbolicObject::glued(std::shared_ptr<const Fan> fan, const Divisor& D) {
    Term t;
    t.kind = Term::Glued;
    t.data = D.n;
    return SymbolicObject(std::move(fan), t);
}

SymbolicObject::Key SymbolicObject::key(const Term& t) const {
    ZVec data = t.data;
    if (t.kind == Term::Cone) {
        // m is only defined modulo cone-perp: keep the pairings with the rays
        data.clear();
        for (int r : fan_->cone(t.cone)) {
            long s = 0;
            for (std::size_t i = 0; i < t.data.size(); ++i) s += t.data[i] * fan_->rays()[r][i];
            data.push_back(s);
        }
    }
    return {static_cast<int>(t.kind), t.kind == Term::Cone ? t.cone : 0, data, t.shift};
}

void SymbolicObject::add(const Term& t, long c) {
    if (c == 0) return;
    Key k = key(t);
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        terms_.emplace(k, std::make_pair(t, c));
        return;
    }
    it->second.second += c;
    if (it->second.second == 0) terms_.erase(it);
}

std::vector<std::pair<Term, long>> SymbolicObject::terms() const {
    std::vector<std::pair<Term, long>> out;
    for (const auto& [k, v] : terms_) out.push_back(v);
    return out;
}

SymbolicObject SymbolicObject::shifted(int k) const {
    SymbolicObject out;
    out.fan_ = fan_;
    for (const auto& [key, v] : terms_) {
        Term t = v.first;
        t.shift += k;
        out.add(t, v.second);
    }
    return out;
}

SymbolicObject& SymbolicObject::operator+=(const SymbolicObject& o) {
    if (!fan_) fan_ = o.fan_;
    if (o.fan_ && fan_ != o.fan_) throw std::invalid_argument("cones from different fans");
    for (const auto& [k, v] : o.terms_) add(v.first, v.second);
    return *this;
}

bool operator==(const SymbolicObject& a, const SymbolicObject& b) {
    if (a.terms_.size() != b.terms_.size()) return false;
    auto i = a.terms_.begin();
    auto j = b.terms_.begin();
    for (; i != a.terms_.end(); ++i, ++j)
        if (i->first != j->first || i->second.second != j->second.second) return false;
    return true;
}

std::string SymbolicObject::str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, v] : terms_) {
        const Term& t = v.first;
        if (!first) os << " + ";
        first = false;
        if (v.second != 1) os << v.second << "*";
        if (t.kind == Term::Cone) {
            os << "w(m=" << fltz::str(to_q(t.data)) << ",cone=[";
            const auto& rays = fan_->cone(t.cone);
            for (std::size_t i = 0; i < rays.size(); ++i) os << (i ? "," : "") << rays[i];
            os << "])";
        } else if (t.kind == Term::Point) {
            os << "pt" << fltz::str(to_q(t.data));
        } else {
            os << "w(D=" << Divisor{t.data}.str() << ")";
        }
        if (t.shift) os << "[" << t.shift << "]";
    }
    return first ? "0" : os.str();
}

namespace {

ZVec add_vec(const ZVec& a, const ZVec& b) {
    ZVec c = a;
    for (std::size_t i = 0; i < c.size(); ++i) c[i] += b[i];
    return c;
}

// translate omega(D) by a: n_eta -> n_eta - <a, nu_eta>
ZVec translate_divisor(const Fan& fan, const ZVec& n, const ZVec& a) {
    ZVec out = n;
    for (int r = 0; r < fan.num_rays(); ++r)
        for (int i = 0; i < fan.rank(); ++i) out[r] -= a[i] * fan.rays()[r][i];
    return out;
}

Term product(const Fan& fan, const Term& x, const Term& y) {
    if (x.kind > y.kind) return product(fan, y, x);
    Term t;
    t.shift = x.shift + y.shift;
    if (x.kind == Term::Point && y.kind == Term::Point) {
        t.kind = Term::Point;
        t.data = add_vec(x.data, y.data);
    } else if (x.kind == Term::Cone && y.kind == Term::Point) {
        t.kind = Term::Cone;
        t.cone = x.cone;
        t.data = add_vec(x.data, y.data);
    } else if (x.kind == Term::Point && y.kind == Term::Glued) {
        t.kind = Term::Glued;
        t.data = translate_divisor(fan, y.data, x.data);
    } else if (x.kind == Term::Cone && y.kind == Term::Cone) {
        std::vector<int> common;
        const auto &a = fan.cone(x.cone), &b = fan.cone(y.cone);
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
        t.kind = Term::Cone;
        t.cone = fan.find_cone(common);
        t.data = add_vec(x.data, y.data);
    } else if (x.kind == Term::Cone && y.kind == Term::Glued) {
        // omega(D) = omega of its polytope P, and P + cone^v = m_cone + cone^v
        Divisor D{y.data};
        auto f = find_support_function(fan, D);
        if (!is_strictly_convex(fan, f)) throw std::invalid_argument("glued factor is not strictly convex");
        QVec ms = support_element(fan, f, x.cone);
        ZVec mz;
        for (const auto& v : ms) {
            if (!v.is_integer()) throw std::invalid_argument("non-integral support element");
            mz.push_back(to_long(v));
        }
        t.kind = Term::Cone;
        t.cone = x.cone;
        t.data = add_vec(x.data, mz);
    } else {
        t.kind = Term::Glued;
        t.data = (Divisor{x.data} + Divisor{y.data}).n;
    }
    return t;
}

}  // namespace

SymbolicObject convolve_symbolic(const SymbolicObject& a, const SymbolicObject& b) {
    if (a.fan_ptr() && b.fan_ptr() && a.fan_ptr() != b.fan_ptr()) throw std::invalid_argument("cones from different fans");
    auto fan = a.fan_ptr() ? a.fan_ptr() : b.fan_ptr();
    SymbolicObject out;
    for (const auto& [x, cx] : a.terms())
        for (const auto& [y, cy] : b.terms()) out += SymbolicObject(fan, product(*fan, x, y), cx * cy);
    return out;
}

HPolyhedron term_support(const Fan& fan, const Term& t) {
    if (t.kind != Term::Cone) throw std::invalid_argument("only cone terms have a polyhedral support here");
    return translated_dual_cone(fan, t.cone, t.data);
}

}  // namespace fltz
