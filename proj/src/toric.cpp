#include "fltz/toric.hpp"

#include "fltz/lp.hpp"
#include "fltz/matrix.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace fltz {

namespace {

std::vector<QVec> to_rows(const std::vector<ZVec>& v) {
    std::vector<QVec> out;
    out.reserve(v.size());
    for (const auto& x : v) out.push_back(to_q(x));
    return out;
}

template <class Fn>
void for_each_subset(int n, int k, Fn&& fn) {
    if (k > n || k < 0) return;
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    for (;;) {
        fn(idx);
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) return;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

bool unimodular_rows(const std::vector<ZVec>& gens) {
    if (gens.empty()) return true;
    IntMatrix A = IntMatrix::from_rows(gens);
    auto inv = invariant_factors(A);
    return inv.rank == static_cast<int>(gens.size()) && inv.torsion.empty();
}

}  // namespace

ZVec primitive(const QVec& v) {
    Int l = 1;
    for (const auto& x : v) l = boost::multiprecision::lcm(l, x.den());
    std::vector<Int> w;
    Int g = 0;
    for (const auto& x : v) {
        Int c = x.num() * (l / x.den());
        w.push_back(c);
        g = boost::multiprecision::gcd(g, c);
    }
    ZVec out(v.size(), 0);
    if (g == 0) return out;
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = to_long(Int(w[i] / g));
    return out;
}

std::vector<ZVec> dual_cone(const std::vector<ZVec>& gens, int n) {
    std::set<ZVec> out;
    auto rows = to_rows(gens);
    const int k = gens.empty() ? 0 : rank_q(rows);
    if (static_cast<int>(gens.size()) == n && k == n && unimodular_rows(gens)) {
        // dual basis: solve <m_i, g_j> = delta_ij
        for (int i = 0; i < n; ++i) {
            QVec b(n);
            b[i] = 1;
            QVec m;
            solve_q(rows, b, m);
            out.insert(primitive(m));
        }
        return {out.begin(), out.end()};
    }
    std::vector<ZVec> lineality;
    if (!rows.empty()) {
        lineality = kernel_basis(rows, n);
    } else {
        for (int i = 0; i < n; ++i) {
            ZVec e(n, 0);
            e[i] = 1;
            lineality.push_back(e);
        }
    }
    for (const auto& l : lineality) {
        out.insert(l);
        ZVec neg = l;
        for (auto& x : neg) x = -x;
        out.insert(neg);
    }
    if (k >= 1) {
        auto lq = to_rows(lineality);
        for_each_subset(static_cast<int>(gens.size()), k - 1, [&](const std::vector<int>& T) {
            std::vector<QVec> A = lq;
            for (int t : T) A.push_back(rows[t]);
            if (rank_q(A) != n - 1) return;
            auto ker = kernel_basis(A, n);
            if (ker.size() != 1) return;
            ZVec m = ker[0];
            int pos = 0, neg = 0;
            for (const auto& g : gens) {
                long s = 0;
                for (int i = 0; i < n; ++i) s += m[i] * g[i];
                if (s > 0) ++pos;
                if (s < 0) ++neg;
            }
            if (pos && neg) return;
            if (neg)
                for (auto& x : m) x = -x;
            out.insert(m);
        });
    }
    return {out.begin(), out.end()};
}

bool same_cone(const std::vector<ZVec>& a, const std::vector<ZVec>& b, int n) {
    auto qa = to_rows(a), qb = to_rows(b);
    auto inside = [&](const std::vector<QVec>& gens, const std::vector<QVec>& pts) {
        for (const auto& p : pts) {
            bool zero = std::all_of(p.begin(), p.end(), [](const Rat& x) { return x.sign() == 0; });
            if (zero) continue;
            if (gens.empty() || !cone_contains(gens, p)) return false;
        }
        return true;
    };
    (void)n;
    return inside(qa, qb) && inside(qb, qa);
}

std::vector<ZVec> minkowski_sum(const std::vector<ZVec>& a, const std::vector<ZVec>& b) {
    std::set<ZVec> s(a.begin(), a.end());
    s.insert(b.begin(), b.end());
    return {s.begin(), s.end()};
}

Fan Fan::from_max_cones(int rank, std::vector<ZVec> rays, std::vector<std::vector<int>> max_cones) {
    if (rank < 0) throw std::invalid_argument("negative rank");
    Fan F;
    F.rank_ = rank;
    for (const auto& r : rays) {
        if (static_cast<int>(r.size()) != rank) throw std::invalid_argument("ray of wrong length");
        long g = 0;
        for (long x : r) g = std::gcd(g, x);
        if (g != 1) throw std::invalid_argument("ray " + str(to_q(r)) + " is not primitive");
    }
    {
        std::set<ZVec> seen(rays.begin(), rays.end());
        if (seen.size() != rays.size()) throw std::invalid_argument("duplicate ray");
    }
    F.rays_ = rays;
    if (max_cones.empty()) max_cones.push_back({});

    std::set<std::vector<int>> all;
    std::vector<std::set<std::vector<int>>> faces_of_input;
    for (auto& c : max_cones) {
        std::sort(c.begin(), c.end());
        if (std::adjacent_find(c.begin(), c.end()) != c.end()) throw std::invalid_argument("repeated ray in cone");
        for (int r : c)
            if (r < 0 || r >= static_cast<int>(rays.size())) throw std::invalid_argument("ray index out of range");
        std::vector<ZVec> gens;
        for (int r : c) gens.push_back(rays[r]);
        auto gq = to_rows(gens);
        if (!gens.empty() && !feasible_point(gq, QVec(gens.size(), Rat(1)), rank))
            throw std::invalid_argument("cone is not strongly convex");
        std::set<std::vector<int>> fs;
        const int k = gens.empty() ? 0 : rank_q(gq);
        if (k == static_cast<int>(gens.size())) {
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << c.size()); ++mask) {
                std::vector<int> f;
                for (std::size_t i = 0; i < c.size(); ++i)
                    if (mask >> i & 1) f.push_back(c[i]);
                fs.insert(f);
            }
        } else {
            auto dual = dual_cone(gens, rank);
            if (dual.size() > 24) throw std::invalid_argument("cone too complex");
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << dual.size()); ++mask) {
                std::vector<int> f;
                for (std::size_t j = 0; j < c.size(); ++j) {
                    bool tight = true;
                    for (std::size_t i = 0; i < dual.size() && tight; ++i)
                        if (mask >> i & 1) {
                            long s = 0;
                            for (int t = 0; t < rank; ++t) s += dual[i][t] * gens[j][t];
                            if (s != 0) tight = false;
                        }
                    if (tight) f.push_back(c[j]);
                }
                fs.insert(f);
            }
        }
        all.insert(fs.begin(), fs.end());
        faces_of_input.push_back(std::move(fs));
    }
    F.input_max_ = max_cones;

    // pairwise: the common rays span a common face and a separating covector exists
    for (std::size_t i = 0; i < max_cones.size(); ++i)
        for (std::size_t j = i + 1; j < max_cones.size(); ++j) {
            const auto &a = max_cones[i], &b = max_cones[j];
            std::vector<int> common;
            std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(common));
            if (!faces_of_input[i].count(common) || !faces_of_input[j].count(common))
                throw std::invalid_argument("cones do not meet in a common face");
            std::vector<QVec> A;
            QVec rhs;
            auto push = [&](const ZVec& r, int s, int bound) {
                QVec row = to_q(r);
                for (auto& x : row) x = Rat(s) * x;
                A.push_back(row);
                rhs.push_back(Rat(bound));
            };
            for (int r : a)
                if (!std::binary_search(common.begin(), common.end(), r)) push(rays[r], 1, 1);
            for (int r : b)
                if (!std::binary_search(common.begin(), common.end(), r)) push(rays[r], -1, 1);
            for (int r : common) {
                push(rays[r], 1, 0);
                push(rays[r], -1, 0);
            }
            if (!A.empty() && !feasible_point(A, rhs, rank))
                throw std::invalid_argument("cones do not meet in a common face");
        }

    std::vector<std::pair<int, std::vector<int>>> keyed;
    for (const auto& c : all) {
        std::vector<ZVec> gens;
        for (int r : c) gens.push_back(rays[r]);
        keyed.emplace_back(gens.empty() ? 0 : rank_q(to_rows(gens)), c);
    }
    std::sort(keyed.begin(), keyed.end());
    for (auto& [d, c] : keyed) {
        F.index_[c] = static_cast<int>(F.cones_.size());
        F.cones_.push_back(c);
        F.dims_.push_back(d);
    }
    std::vector<std::pair<int, int>> rel;
    std::vector<char> is_max(F.cones_.size(), 1);
    for (std::size_t i = 0; i < F.cones_.size(); ++i)
        for (std::size_t j = 0; j < F.cones_.size(); ++j) {
            if (i == j) continue;
            const auto &a = F.cones_[i], &b = F.cones_[j];
            if (a.size() < b.size() && std::includes(b.begin(), b.end(), a.begin(), a.end())) {
                is_max[i] = 0;
                if (F.dims_[j] == F.dims_[i] + 1) rel.emplace_back(static_cast<int>(i), static_cast<int>(j));
            }
        }
    for (std::size_t i = 0; i < F.cones_.size(); ++i)
        if (is_max[i]) F.maximal_.push_back(static_cast<int>(i));
    F.poset_ = std::make_shared<FinitePoset>(F.num_cones(), rel);

    for (int c : F.maximal_) {
        std::vector<ZVec> gens = F.cone_generators(c);
        if (!unimodular_rows(gens)) F.smooth_ = false;
    }

    F.complete_ = true;
    for (int c : F.maximal_)
        if (F.dims_[c] != rank) F.complete_ = false;
    if (rank > 0 && F.complete_) {
        for (int t = 0; t < F.num_cones(); ++t) {
            if (F.dims_[t] != rank - 1) continue;
            std::vector<int> containing;
            for (int c : F.maximal_)
                if (F.poset_->leq(t, c)) containing.push_back(c);
            if (containing.size() != 2) {
                F.complete_ = false;
                continue;
            }
            const auto& tau = F.cones_[t];
            int w = -1;
            for (int r : F.cones_[containing[1]])
                if (!std::binary_search(tau.begin(), tau.end(), r)) {
                    w = r;
                    break;
                }
            F.walls_.push_back(Wall{containing[0], containing[1], t, w});
        }
        if (!F.complete_) F.walls_.clear();
    }
    return F;
}

std::vector<ZVec> Fan::cone_generators(int c) const {
    std::vector<ZVec> g;
    for (int r : cones_[c]) g.push_back(rays_[r]);
    return g;
}

int Fan::find_cone(std::vector<int> rays) const {
    std::sort(rays.begin(), rays.end());
    auto it = index_.find(rays);
    return it == index_.end() ? -1 : it->second;
}

std::vector<int> Fan::faces(int c) const {
    std::vector<int> out;
    for (int i = 0; i < num_cones(); ++i)
        if (poset_->leq(i, c)) out.push_back(i);
    return out;
}

bool Fan::is_simplicial() const {
    for (int c = 0; c < num_cones(); ++c)
        if (static_cast<int>(cones_[c].size()) != dims_[c]) return false;
    return true;
}

Divisor operator+(const Divisor& a, const Divisor& b) {
    if (a.n.size() != b.n.size()) throw std::invalid_argument("divisor length mismatch");
    Divisor out = a;
    for (std::size_t i = 0; i < b.n.size(); ++i) out.n[i] += b.n[i];
    return out;
}

Divisor operator*(long k, const Divisor& a) {
    Divisor out = a;
    for (auto& x : out.n) x *= k;
    return out;
}

std::string Divisor::str() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < n.size(); ++i) os << (i ? "," : "") << n[i];
    os << ')';
    return os.str();
}

SupportFunction find_support_function(const Fan& fan, const Divisor& D) {
    if (static_cast<int>(D.n.size()) != fan.num_rays()) throw std::invalid_argument("divisor length mismatch");
    const int n = fan.rank();
    SupportFunction f;
    for (int c : fan.maximal_cones()) {
        if (fan.cone_dim(c) != n) throw std::invalid_argument("underdetermined support function");
        std::vector<QVec> A;
        QVec b;
        for (int r : fan.cone(c)) {
            std::vector<QVec> trial = A;
            trial.push_back(to_q(fan.rays()[r]));
            if (rank_q(trial) == static_cast<int>(trial.size())) {
                A = std::move(trial);
                b.push_back(Rat(-D.n[r]));
            }
            if (static_cast<int>(A.size()) == n) break;
        }
        QVec m(n);
        if (n > 0) solve_q(A, b, m);
        for (int r : fan.cone(c))
            if (dot(m, fan.rays()[r]) != Rat(-D.n[r]))
                throw std::invalid_argument("divisor is not Cartier on a non-simplicial cone");
        f.m[c] = m;
    }
    return f;
}

QVec support_element(const Fan& fan, const SupportFunction& f, int cone) {
    for (int c : fan.maximal_cones())
        if (fan.poset()->leq(cone, c)) return f.m.at(c);
    throw std::invalid_argument("cone not in fan");
}

std::vector<Rat> wall_margins(const Fan& fan, const SupportFunction& f) {
    std::vector<Rat> out;
    for (const auto& w : fan.walls()) {
        QVec diff = f.m.at(w.sigma);
        const QVec& m2 = f.m.at(w.sigma2);
        for (std::size_t i = 0; i < diff.size(); ++i) diff[i] -= m2[i];
        out.push_back(dot(diff, fan.rays()[w.w]));
    }
    return out;
}

bool is_strictly_convex(const Fan& fan, const SupportFunction& f) {
    if (!fan.is_complete()) throw std::invalid_argument("fan is not complete");
    for (const auto& m : wall_margins(fan, f))
        if (m.sign() <= 0) return false;
    // rank 1 and rank 0 need no walls beyond the above; a single maximal cone
    // is only possible in rank 0
    return true;
}

bool is_strictly_convex(const Fan& fan, const Divisor& D) {
    return is_strictly_convex(fan, find_support_function(fan, D));
}

std::optional<Divisor> certify_projective(const Fan& fan) {
    if (!fan.is_complete()) throw std::invalid_argument("fan is not complete");
    const int nr = fan.num_rays();
    Divisor ones{ZVec(nr, 1)};
    if (is_strictly_convex(fan, ones)) return ones;
    // margins are linear in the coefficients; one LP row per wall
    std::vector<std::vector<Rat>> per_ray;
    for (int r = 0; r < nr; ++r) {
        Divisor e{ZVec(nr, 0)};
        e.n[r] = 1;
        per_ray.push_back(wall_margins(fan, find_support_function(fan, e)));
    }
    const std::size_t W = fan.walls().size();
    std::vector<QVec> A(W, QVec(nr));
    for (std::size_t w = 0; w < W; ++w)
        for (int r = 0; r < nr; ++r) A[w][r] = per_ray[r][w];
    auto x = feasible_point(A, QVec(W, Rat(1)), nr);
    if (!x) return std::nullopt;
    Int l = 1;
    for (const auto& v : *x) l = boost::multiprecision::lcm(l, v.den());
    Divisor D{ZVec(nr)};
    for (int r = 0; r < nr; ++r) D.n[r] = to_long((*x)[r] * Rat(l));
    if (!is_strictly_convex(fan, D)) throw std::logic_error("projectivity witness failed verification");
    return D;
}

bool Polytope::contains(const QVec& m) const {
    if (vertices.empty()) return false;
    if (!normals.empty()) {
        for (std::size_t i = 0; i < normals.size(); ++i)
            if (dot(m, normals[i]) < lower[i]) return false;
        return true;
    }
    return hull_contains(vertices, m);
}

Polytope divisor_to_polytope(const Fan& fan, const Divisor& D) {
    if (!fan.is_complete()) throw std::invalid_argument("fan is not complete");
    if (static_cast<int>(D.n.size()) != fan.num_rays()) throw std::invalid_argument("divisor length mismatch");
    const int n = fan.rank();
    Polytope P;
    P.rank = n;
    P.normals = fan.rays();
    for (long c : D.n) P.lower.push_back(Rat(-c));
    std::set<QVec, bool (*)(const QVec&, const QVec&)> verts(
        [](const QVec& a, const QVec& b) { return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end()); });
    if (n == 0) {
        verts.insert(QVec{});
    } else {
        for_each_subset(fan.num_rays(), n, [&](const std::vector<int>& sub) {
            std::vector<QVec> A;
            QVec b;
            for (int r : sub) {
                A.push_back(to_q(fan.rays()[r]));
                b.push_back(P.lower[r]);
            }
            QVec m;
            if (!solve_q(A, b, m)) return;
            for (int r = 0; r < fan.num_rays(); ++r)
                if (dot(m, fan.rays()[r]) < P.lower[r]) return;
            verts.insert(m);
        });
    }
    P.vertices.assign(verts.begin(), verts.end());
    return P;
}

QVec polytope_offsets(const Fan& fan, const Polytope& P) {
    if (P.empty()) throw std::invalid_argument("empty polytope");
    QVec out;
    for (const auto& r : fan.rays()) {
        Rat best = dot(P.vertices[0], r);
        for (const auto& v : P.vertices) best = std::min(best, dot(v, r));
        out.push_back(-best);
    }
    return out;
}

Divisor polytope_to_divisor(const Fan& fan, const Polytope& P) {
    QVec off = polytope_offsets(fan, P);
    Divisor D;
    for (const auto& x : off) {
        if (!x.is_integer()) throw std::invalid_argument("polytope offsets are not integral for this fan");
        D.n.push_back(to_long(x));
    }
    return D;
}

Polytope polytope_from_vertices(int rank, std::vector<QVec> points) {
    auto lex = [](const QVec& a, const QVec& b) {
        return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
    };
    std::sort(points.begin(), points.end(), lex);
    points.erase(std::unique(points.begin(), points.end()), points.end());
    for (std::size_t i = 0; i < points.size();) {
        std::vector<QVec> rest;
        for (std::size_t j = 0; j < points.size(); ++j)
            if (j != i) rest.push_back(points[j]);
        if (!rest.empty() && hull_contains(rest, points[i]))
            points.erase(points.begin() + static_cast<long>(i));
        else
            ++i;
    }
    Polytope P;
    P.rank = rank;
    P.vertices = std::move(points);
    return P;
}

Polytope minkowski_sum(const Polytope& A, const Polytope& B) {
    if (A.rank != B.rank) throw std::invalid_argument("rank mismatch");
    std::vector<QVec> pts;
    for (const auto& a : A.vertices)
        for (const auto& b : B.vertices) {
            QVec s = a;
            for (std::size_t i = 0; i < s.size(); ++i) s[i] += b[i];
            pts.push_back(s);
        }
    Polytope P = polytope_from_vertices(A.rank, pts);
    if (!A.normals.empty() && A.normals == B.normals && !P.empty()) {
        P.normals = A.normals;
        for (const auto& nu : P.normals) {
            Rat best = dot(P.vertices[0], nu);
            for (const auto& v : P.vertices) best = std::min(best, dot(v, nu));
            P.lower.push_back(best);
        }
    }
    return P;
}

Divisor probing_divisor(const Fan& fan, const QVec& x) {
    Divisor D;
    for (const auto& r : fan.rays()) D.n.push_back(to_long(Int(floor(-dot(x, r)) + 1)));
    return D;
}

int dominate(const Fan& fan, const Divisor& D, const Divisor& DP) {
    auto fp = find_support_function(fan, DP);
    if (!is_strictly_convex(fan, fp)) throw std::invalid_argument("D_P is not strictly convex");
    auto mD = wall_margins(fan, find_support_function(fan, D));
    auto mP = wall_margins(fan, fp);
    long bound = 0;
    for (std::size_t w = 0; w < mD.size(); ++w)
        bound = std::max(bound, to_long(Int(floor(-mD[w] / mP[w]) + 1)));
    for (long k = 0; k <= bound; ++k)
        if (is_strictly_convex(fan, D + k * DP)) return static_cast<int>(k);
    throw std::logic_error("dominate: no strictly convex multiple found within the wall bound");
}

bool deformation_integrality(const Fan& fan, const QVec& x, const Polytope& P, const Rat& eps) {
    QVec off = polytope_offsets(fan, P);
    for (const auto& o : off)
        if (o.sign() <= 0) throw std::invalid_argument("moment polytope must contain 0 in its interior");
    for (int r = 0; r < fan.num_rays(); ++r) {
        Rat a = -dot(x, fan.rays()[r]);
        if (!(a + eps * off[r] < Rat(floor(a) + 1))) return false;
    }
    return true;
}

Rat choose_epsilon(const Fan& fan, const QVec& x, const Polytope& P) {
    Rat eps(1);
    for (int k = 0; k < 256; ++k, eps /= Rat(2))
        if (deformation_integrality(fan, x, P, eps)) return eps;
    throw std::logic_error("choose_epsilon: no power of 1/2 found");
}

}  // namespace fltz
