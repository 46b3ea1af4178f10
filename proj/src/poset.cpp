#include "fltz/poset.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <stdexcept>
#include <unordered_map>

namespace fltz {

namespace {

struct VecHash {
    std::size_t operator()(const std::vector<int>& v) const {
        std::size_t h = v.size();
        for (int x : v) h = h * 1000003u ^ static_cast<std::size_t>(x + 0x9e3779b9);
        return h;
    }
};

using ChainIndex = std::unordered_map<std::vector<int>, int, VecHash>;

bool test_bit(const std::vector<std::uint64_t>& b, int i) { return (b[i >> 6] >> (i & 63)) & 1u; }

}  // namespace

FinitePoset::FinitePoset(int n, const std::vector<std::pair<int, int>>& relations) : n_(n) {
    std::vector<std::vector<int>> succ(n);
    std::vector<int> indeg(n, 0);
    for (auto [a, b] : relations) {
        if (a < 0 || b < 0 || a >= n || b >= n || a == b) throw std::invalid_argument("bad order relation");
        succ[a].push_back(b);
        ++indeg[b];
    }
    std::vector<int> topo;
    std::deque<int> q;
    for (int i = 0; i < n; ++i)
        if (indeg[i] == 0) q.push_back(i);
    while (!q.empty()) {
        int a = q.front();
        q.pop_front();
        topo.push_back(a);
        for (int b : succ[a])
            if (--indeg[b] == 0) q.push_back(b);
    }
    if (static_cast<int>(topo.size()) != n) throw std::invalid_argument("order relation has a cycle");

    const std::size_t words = (static_cast<std::size_t>(n) + 63) / 64;
    up_.assign(n, std::vector<std::uint64_t>(words, 0));
    for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
        int a = *it;
        up_[a][a >> 6] |= std::uint64_t(1) << (a & 63);
        for (int b : succ[a])
            for (std::size_t w = 0; w < words; ++w) up_[a][w] |= up_[b][w];
    }
    above_.assign(n, {});
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (b != a && test_bit(up_[a], b)) above_[a].push_back(b);
    // covers: a < b with no c strictly between
    for (int a = 0; a < n; ++a)
        for (int b : above_[a]) {
            bool cover = true;
            for (int c : above_[a])
                if (c != b && test_bit(up_[c], b)) {
                    cover = false;
                    break;
                }
            if (cover) covers_.emplace_back(a, b);
        }
}

bool FinitePoset::leq(int a, int b) const { return test_bit(up_[a], b); }

std::vector<int> FinitePoset::minimal_elements() const {
    std::vector<char> has_below(n_, 0);
    for (auto [a, b] : covers_) has_below[b] = 1;
    std::vector<int> out;
    for (int i = 0; i < n_; ++i)
        if (!has_below[i]) out.push_back(i);
    return out;
}

FinitePoset FinitePoset::opposite() const {
    std::vector<std::pair<int, int>> rel;
    for (auto [a, b] : covers_) rel.emplace_back(b, a);
    return FinitePoset(n_, rel);
}

FinitePoset FinitePoset::subposet(const std::vector<int>& elems) const {
    std::vector<std::pair<int, int>> rel;
    for (std::size_t i = 0; i < elems.size(); ++i)
        for (std::size_t j = 0; j < elems.size(); ++j)
            if (i != j && less(elems[i], elems[j])) rel.emplace_back(static_cast<int>(i), static_cast<int>(j));
    return FinitePoset(static_cast<int>(elems.size()), rel);
}

FinitePoset FinitePoset::permuted(const std::vector<int>& perm) const {
    std::vector<std::pair<int, int>> rel;
    for (auto [a, b] : covers_) rel.emplace_back(perm[a], perm[b]);
    return FinitePoset(n_, rel);
}

std::vector<std::vector<std::vector<int>>> FinitePoset::chains() const {
    std::vector<std::vector<std::vector<int>>> out;
    std::vector<std::vector<int>> level;
    for (int i = 0; i < n_; ++i) level.push_back({i});
    while (!level.empty()) {
        std::vector<std::vector<int>> next;
        for (const auto& c : level)
            for (int b : above_[c.back()]) {
                auto d = c;
                d.push_back(b);
                next.push_back(std::move(d));
            }
        out.push_back(std::move(level));
        level = std::move(next);
    }
    return out;
}

IndicatorDiagram::IndicatorDiagram(std::shared_ptr<const FinitePoset> base, std::vector<char> support, int shift)
    : base_(std::move(base)), support_(std::move(support)), shift_(shift) {
    if (static_cast<int>(support_.size()) != base_->size()) throw std::invalid_argument("support size mismatch");
    for (auto [a, b] : base_->covers())
        if (support_[a] && !support_[b]) throw std::invalid_argument("indicator support is not upward closed");
}

namespace {

// Chains with top in the support, coboundary with alternating signs; the
// augmented variant adds one generator mapping onto every 0-chain.
ChainComplex indicator_tot(const FinitePoset& P, const std::vector<char>& support, int shift, bool augmented) {
    auto levels = P.chains();
    ComplexBuilder B;
    std::vector<ChainIndex> index(levels.size());
    for (std::size_t k = 0; k < levels.size(); ++k)
        for (const auto& c : levels[k])
            if (support[c.back()]) index[k][c] = B.add_generator(shift - static_cast<int>(k));
    int aug = -1;
    if (augmented) aug = B.add_generator(shift + 1);
    for (std::size_t k = 0; k < levels.size(); ++k) {
        for (const auto& c : levels[k]) {
            if (!support[c.back()]) continue;
            int target = index[k].at(c);
            if (k == 0) {
                if (augmented) B.add_entry(shift + 1, target, aug, Int(1));
                continue;
            }
            // faces of c (a k-chain) are (k-1)-chains; entry from face into c
            for (std::size_t i = 0; i <= k; ++i) {
                std::vector<int> f;
                f.reserve(k);
                for (std::size_t t = 0; t <= k; ++t)
                    if (t != i) f.push_back(c[t]);
                if (!support[f.back()]) continue;
                int src = index[k - 1].at(f);
                B.add_entry(shift - static_cast<int>(k) + 1, target, src, Int(i % 2 == 0 ? 1 : -1));
            }
        }
    }
    return B.build();
}

}  // namespace

ChainComplex poset_holim(const IndicatorDiagram& F) {
    return indicator_tot(F.base(), F.support(), F.shift(), false);
}

GradedGroup order_complex_cohomology(const FinitePoset& P, bool reduced) {
    std::vector<char> all(P.size(), 1);
    ChainComplex C = indicator_tot(P, all, 0, reduced);
    return homology(C);
}

Diagram::Diagram(std::shared_ptr<const FinitePoset> base, std::vector<ChainComplex> values,
                 std::map<std::pair<int, int>, ChainMap> cover_maps)
    : base_(std::move(base)), values_(std::move(values)), maps_(std::move(cover_maps)) {
    if (static_cast<int>(values_.size()) != base_->size()) throw std::invalid_argument("one value per element expected");
}

namespace {

IntMatrix identity_or_zero(int rows, int cols) {
    IntMatrix m(rows, cols);
    if (rows == cols)
        for (int i = 0; i < rows; ++i) m.set(i, i, Int(1));
    return m;
}

ChainMap compose(const ChainMap& g, const ChainMap& f, const ChainComplex& A, const ChainComplex& B,
                 const ChainComplex& C) {
    ChainMap h;
    if (A.empty()) return h;
    for (int k = A.lo(); k <= A.hi(); ++k) {
        if (A.rank(k) == 0 || C.rank(k) == 0) continue;
        IntMatrix m = g.at(k, C.rank(k), B.rank(k)) * f.at(k, B.rank(k), A.rank(k));
        if (!m.is_zero()) h.f[k] = std::move(m);
    }
    return h;
}

}  // namespace

ChainMap Diagram::map(int a, int b) const {
    if (a == b) {
        ChainMap id;
        const ChainComplex& A = values_[a];
        if (!A.empty())
            for (int k = A.lo(); k <= A.hi(); ++k)
                if (A.rank(k)) id.f[k] = identity_or_zero(A.rank(k), A.rank(k));
        return id;
    }
    if (!base_->less(a, b)) throw std::invalid_argument("no arrow between these elements");
    // walk up along covers that stay below b
    for (auto [x, y] : base_->covers()) {
        if (x != a || !base_->leq(y, b)) continue;
        auto it = maps_.find({x, y});
        ChainMap first = it == maps_.end() ? ChainMap{} : it->second;
        if (y == b) return first;
        return compose(map(y, b), first, values_[a], values_[y], values_[b]);
    }
    throw std::logic_error("cover path not found");
}

bool Diagram::is_valid() const {
    // chain maps
    for (const auto& [ab, m] : maps_) {
        const ChainComplex& A = values_[ab.first];
        const ChainComplex& B = values_[ab.second];
        if (A.empty()) continue;
        for (int k = A.lo(); k <= A.hi(); ++k) {
            IntMatrix lhs = B.d(k) * m.at(k, B.rank(k), A.rank(k));
            IntMatrix rhs = m.at(k - 1, B.rank(k - 1), A.rank(k - 1)) * A.d(k);
            if (!(lhs == rhs)) return false;
        }
    }
    // path independence for every pair a < b
    const FinitePoset& P = *base_;
    for (int a = 0; a < P.size(); ++a)
        for (int b : P.above(a)) {
            ChainMap ref;
            bool have = false;
            for (auto [x, y] : P.covers()) {
                if (x != a || !P.leq(y, b)) continue;
                auto it = maps_.find({x, y});
                ChainMap first = it == maps_.end() ? ChainMap{} : it->second;
                ChainMap via = y == b ? first : compose(map(y, b), first, values_[a], values_[y], values_[b]);
                if (!have) {
                    ref = via;
                    have = true;
                    continue;
                }
                const ChainComplex& A = values_[a];
                if (A.empty()) continue;
                for (int k = A.lo(); k <= A.hi(); ++k) {
                    int r = values_[b].rank(k), c = A.rank(k);
                    if (!(ref.at(k, r, c) == via.at(k, r, c))) return false;
                }
            }
        }
    return true;
}

ChainComplex holim(const Diagram& F) {
    const FinitePoset& P = F.base();
    auto levels = P.chains();
    ComplexBuilder B;
    // generator index of (chain, internal degree, basis element)
    std::vector<ChainIndex> index(levels.size());
    std::map<std::tuple<int, int, int>, int> offset;  // (level, chain id, degree) -> first generator
    for (std::size_t k = 0; k < levels.size(); ++k)
        for (std::size_t ci = 0; ci < levels[k].size(); ++ci) {
            const auto& c = levels[k][ci];
            index[k][c] = static_cast<int>(ci);
            const ChainComplex& V = F.value(c.back());
            if (V.empty()) continue;
            for (int d = V.lo(); d <= V.hi(); ++d) {
                int r = V.rank(d);
                if (r == 0) continue;
                int total = d - static_cast<int>(k);
                int o = B.add_generator(total);
                for (int t = 1; t < r; ++t) B.add_generator(total);
                offset[{static_cast<int>(k), static_cast<int>(ci), d}] = o;
            }
        }
    auto gen = [&](int k, int ci, int d) -> int {
        auto it = offset.find({k, ci, d});
        return it == offset.end() ? -1 : it->second;
    };
    std::map<std::pair<int, int>, ChainMap> cache;
    auto arrow = [&](int a, int b) -> const ChainMap& {
        auto it = cache.find({a, b});
        if (it == cache.end()) it = cache.emplace(std::make_pair(a, b), F.map(a, b)).first;
        return it->second;
    };

    for (std::size_t k = 0; k < levels.size(); ++k)
        for (std::size_t ci = 0; ci < levels[k].size(); ++ci) {
            const auto& c = levels[k][ci];
            const ChainComplex& V = F.value(c.back());
            if (V.empty()) continue;
            const int sign_k = k % 2 == 0 ? 1 : -1;
            // internal differential, sign (-1)^k
            for (int d = V.lo() + 1; d <= V.hi(); ++d) {
                int src = gen(static_cast<int>(k), static_cast<int>(ci), d);
                int dst = gen(static_cast<int>(k), static_cast<int>(ci), d - 1);
                if (src < 0 || dst < 0) continue;
                IntMatrix dm = V.d(d);
                for (int col = 0; col < dm.cols(); ++col)
                    for (const auto& [row, v] : dm.column(col))
                        B.add_entry(d - static_cast<int>(k), dst + row, src + col, Int(sign_k) * v);
            }
            if (k == 0) continue;
            // coboundary: entries from each face into c
            for (std::size_t i = 0; i <= k; ++i) {
                std::vector<int> f;
                f.reserve(k);
                for (std::size_t t = 0; t <= k; ++t)
                    if (t != i) f.push_back(c[t]);
                int fi = index[k - 1].at(f);
                const ChainComplex& W = F.value(f.back());
                if (W.empty()) continue;
                const Int sgn(i % 2 == 0 ? 1 : -1);
                for (int d = W.lo(); d <= W.hi(); ++d) {
                    int src = gen(static_cast<int>(k - 1), fi, d);
                    int dst = gen(static_cast<int>(k), static_cast<int>(ci), d);
                    if (src < 0 || dst < 0) continue;
                    int total = d - static_cast<int>(k) + 1;
                    if (i < k) {
                        for (int t = 0; t < W.rank(d); ++t) B.add_entry(total, dst + t, src + t, sgn);
                    } else {
                        IntMatrix m = arrow(f.back(), c.back()).at(d, V.rank(d), W.rank(d));
                        for (int col = 0; col < m.cols(); ++col)
                            for (const auto& [row, v] : m.column(col)) B.add_entry(total, dst + row, src + col, sgn * v);
                    }
                }
            }
        }
    return B.build();
}

ChainComplex mapping_complex(const Diagram& F, const Diagram& G) {
    if (F.base().size() != G.base().size()) throw std::invalid_argument("diagrams over different posets");
    const FinitePoset& P = F.base();
    auto levels = P.chains();
    std::vector<ChainIndex> index(levels.size());
    ComplexBuilder B;
    // (level, chain id, source degree d, map degree e) -> offset; block is rank F_d x rank G_{d+e}
    std::map<std::tuple<int, int, int, int>, int> offset;
    for (std::size_t j = 0; j < levels.size(); ++j)
        for (std::size_t ci = 0; ci < levels[j].size(); ++ci) {
            const auto& c = levels[j][ci];
            index[j][c] = static_cast<int>(ci);
            const ChainComplex& A = F.value(c.front());
            const ChainComplex& Z = G.value(c.back());
            if (A.empty() || Z.empty()) continue;
            for (int d = A.lo(); d <= A.hi(); ++d)
                for (int t = Z.lo(); t <= Z.hi(); ++t) {
                    int n = A.rank(d) * Z.rank(t);
                    if (n == 0) continue;
                    int e = t - d;
                    int total = e - static_cast<int>(j);
                    int o = B.add_generator(total);
                    for (int q = 1; q < n; ++q) B.add_generator(total);
                    offset[{static_cast<int>(j), static_cast<int>(ci), d, e}] = o;
                }
        }
    // generator for elementary map a -> b (a in F(s0)_d, b in G(sj)_{d+e}); row-major in b
    auto gen = [&](int j, int ci, int d, int e, int a, int b, int ra) -> int {
        auto it = offset.find({j, ci, d, e});
        if (it == offset.end()) return -1;
        return it->second + b * ra + a;
    };
    std::map<std::pair<int, int>, ChainMap> fcache, gcache;
    auto farrow = [&](int a, int b) -> const ChainMap& {
        auto it = fcache.find({a, b});
        if (it == fcache.end()) it = fcache.emplace(std::make_pair(a, b), F.map(a, b)).first;
        return it->second;
    };
    auto garrow = [&](int a, int b) -> const ChainMap& {
        auto it = gcache.find({a, b});
        if (it == gcache.end()) it = gcache.emplace(std::make_pair(a, b), G.map(a, b)).first;
        return it->second;
    };

    for (std::size_t j = 0; j < levels.size(); ++j)
        for (std::size_t ci = 0; ci < levels[j].size(); ++ci) {
            const auto& c = levels[j][ci];
            const ChainComplex& A = F.value(c.front());
            const ChainComplex& Z = G.value(c.back());
            const int J = static_cast<int>(j);
            const int CI = static_cast<int>(ci);
            const Int sj(j % 2 == 0 ? 1 : -1);
            // internal differential (-1)^j (d_G f - (-1)^e f d_F)
            if (!A.empty() && !Z.empty())
                for (int d = A.lo(); d <= A.hi(); ++d)
                    for (int t = Z.lo(); t <= Z.hi(); ++t) {
                        int ra = A.rank(d), rb = Z.rank(t);
                        if (ra == 0 || rb == 0) continue;
                        int e = t - d;
                        int total = e - J;
                        const Int se(e % 2 == 0 ? 1 : -1);
                        IntMatrix dg = Z.d(t);      // G_t -> G_{t-1}
                        IntMatrix df = A.d(d + 1);  // F_{d+1} -> F_d
                        for (int a = 0; a < ra; ++a)
                            for (int b = 0; b < rb; ++b) {
                                int src = gen(J, CI, d, e, a, b, ra);
                                for (const auto& [b2, v] : dg.column(b)) {
                                    int dst = gen(J, CI, d, e - 1, a, b2, ra);
                                    if (dst >= 0) B.add_entry(total, dst, src, sj * v);
                                }
                                // (f d_F)(x) for x in F_{d+1}: entry (a, a2) of d_F
                                if (A.rank(d + 1) > 0)
                                    for (int a2 = 0; a2 < df.cols(); ++a2) {
                                        Int v = df.at(a, a2);
                                        if (v == 0) continue;
                                        int dst = gen(J, CI, d + 1, e - 1, a2, b, A.rank(d + 1));
                                        if (dst >= 0) B.add_entry(total, dst, src, -sj * se * v);
                                    }
                            }
                    }
            if (j == 0) continue;
            // coboundary into c from its faces
            for (std::size_t i = 0; i <= j; ++i) {
                std::vector<int> f;
                for (std::size_t t = 0; t <= j; ++t)
                    if (t != i) f.push_back(c[t]);
                int fi = index[j - 1].at(f);
                const ChainComplex& FA = F.value(f.front());
                const ChainComplex& FZ = G.value(f.back());
                if (FA.empty() || FZ.empty()) continue;
                const Int sgn(i % 2 == 0 ? 1 : -1);
                for (int d = FA.lo(); d <= FA.hi(); ++d)
                    for (int t = FZ.lo(); t <= FZ.hi(); ++t) {
                        int ra = FA.rank(d), rb = FZ.rank(t);
                        if (ra == 0 || rb == 0) continue;
                        int e = t - d;
                        int total = e - (J - 1);
                        if (i == 0) {
                            // precompose with F(c0 -> c1): new source F(c0)_d
                            IntMatrix m = farrow(c[0], c[1]).at(d, ra, A.rank(d));
                            for (int a0 = 0; a0 < m.cols(); ++a0)
                                for (const auto& [a, v] : m.column(a0))
                                    for (int b = 0; b < rb; ++b) {
                                        int src = gen(J - 1, fi, d, e, a, b, ra);
                                        int dst = gen(J, CI, d, e, a0, b, A.rank(d));
                                        if (src >= 0 && dst >= 0) B.add_entry(total, dst, src, sgn * v);
                                    }
                        } else if (i == j) {
                            // postcompose with G(c_{j-1} -> c_j)
                            IntMatrix m = garrow(c[j - 1], c[j]).at(t, Z.rank(t), rb);
                            for (int b = 0; b < m.cols(); ++b)
                                for (const auto& [b2, v] : m.column(b))
                                    for (int a = 0; a < ra; ++a) {
                                        int src = gen(J - 1, fi, d, e, a, b, ra);
                                        int dst = gen(J, CI, d, e, a, b2, ra);
                                        if (src >= 0 && dst >= 0) B.add_entry(total, dst, src, sgn * v);
                                    }
                        } else {
                            for (int a = 0; a < ra; ++a)
                                for (int b = 0; b < rb; ++b) {
                                    int src = gen(J - 1, fi, d, e, a, b, ra);
                                    int dst = gen(J, CI, d, e, a, b, ra);
                                    if (src >= 0 && dst >= 0) B.add_entry(total, dst, src, sgn);
                                }
                        }
                    }
            }
        }
    return B.build();
}

}  // namespace fltz
