#include "fltz/arrangement.hpp"

#include "fltz/matrix.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

namespace fltz {

namespace {

using Key = std::string;

Key key_of(const std::vector<std::int8_t>& s) {
    Key k(s.size(), '\0');
    for (std::size_t i = 0; i < s.size(); ++i) k[i] = static_cast<char>(s[i] + 1);
    return k;
}

bool allowed_sign(std::int8_t s, std::uint8_t mask) {
    std::uint8_t bit = s < 0 ? kNeg : (s == 0 ? kZero : kPos);
    return (mask & bit) != 0;
}

bool all_allowed(const std::vector<std::int8_t>& s, const std::vector<std::uint8_t>& allowed) {
    for (std::size_t i = 0; i < s.size(); ++i)
        if (!allowed_sign(s[i], allowed[i])) return false;
    return true;
}

void for_each_subset(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
    std::vector<int> idx(k);
    std::function<void(int, int)> rec = [&](int pos, int start) {
        if (pos == k) {
            fn(idx);
            return;
        }
        for (int i = start; i <= n - (k - pos); ++i) {
            idx[pos] = i;
            rec(pos + 1, i + 1);
        }
    };
    if (k <= n) rec(0, 0);
}

}  // namespace

bool sign_leq(const std::vector<std::int8_t>& s, const std::vector<std::int8_t>& t) {
    for (std::size_t i = 0; i < s.size(); ++i)
        if (s[i] != 0 && t[i] != s[i]) return false;
    return true;
}

std::string sign_string(const std::vector<std::int8_t>& s) {
    std::string out;
    for (auto x : s) out += x < 0 ? '-' : (x == 0 ? '0' : '+');
    return out;
}

FaceLattice enumerate_faces(int n, const std::vector<Hyperplane>& H, const std::vector<std::uint8_t>& allowed) {
    const int m = static_cast<int>(H.size());
    if (static_cast<int>(allowed.size()) != m) throw std::invalid_argument("one mask per hyperplane expected");
    std::map<Key, int> index;
    std::vector<ArrFace> faces;
    std::vector<std::pair<int, int>> covers;

    auto signs_at = [&](const QVec& x) {
        std::vector<std::int8_t> s(m);
        for (int i = 0; i < m; ++i) s[i] = static_cast<std::int8_t>(H[i].side(x));
        return s;
    };
    auto insert = [&](std::vector<std::int8_t> s, int dim, QVec sample) -> int {
        Key k = key_of(s);
        auto it = index.find(k);
        if (it != index.end()) return it->second;
        int id = static_cast<int>(faces.size());
        index.emplace(std::move(k), id);
        faces.push_back(ArrFace{std::move(s), dim, std::move(sample)});
        return id;
    };

    // vertices
    if (n == 0) {
        QVec origin;
        auto s = signs_at(origin);
        if (all_allowed(s, allowed)) insert(s, 0, origin);
    } else {
        for_each_subset(m, n, [&](const std::vector<int>& sub) {
            std::vector<QVec> A;
            QVec b;
            for (int i : sub) {
                A.push_back(H[i].a);
                b.push_back(H[i].b);
            }
            QVec x;
            if (!solve_q(A, b, x)) return;
            auto s = signs_at(x);
            if (all_allowed(s, allowed)) insert(s, 0, x);
        });
    }

    // grow one dimension at a time from every face
    std::size_t begin = 0;
    for (int d = 0; d < n; ++d) {
        std::size_t end = faces.size();
        for (std::size_t fi = begin; fi < end; ++fi) {
            if (faces[fi].dim != d) continue;
            const std::vector<std::int8_t> fs = faces[fi].sign;
            const QVec p = faces[fi].sample;
            std::vector<int> Z;
            for (int i = 0; i < m; ++i)
                if (fs[i] == 0) Z.push_back(i);
            const int zr = n - d;  // rank of the normals in Z
            std::set<std::vector<int>> flats;
            auto add_flat = [&](const std::vector<int>& basis) {
                std::vector<QVec> rows;
                for (int i : basis) rows.push_back(H[Z[i]].a);
                int r = static_cast<int>(rows.size());
                if (rank_q(rows) != r) return;
                std::vector<int> closed;
                for (int h : Z) {
                    auto ext = rows;
                    ext.push_back(H[h].a);
                    if (rank_q(ext) == r) closed.push_back(h);
                }
                flats.insert(closed);
            };
            if (zr - 1 == 0)
                add_flat({});
            else
                for_each_subset(static_cast<int>(Z.size()), zr - 1, add_flat);

            for (const auto& Zp : flats) {
                std::vector<QVec> rows;
                for (int h : Zp) rows.push_back(H[h].a);
                std::vector<ZVec> ker;
                if (rows.empty()) {
                    for (int i = 0; i < n; ++i) {
                        ZVec e(n, 0);
                        e[i] = 1;
                        ker.push_back(e);
                    }
                } else {
                    ker = kernel_basis(rows, n);
                }
                QVec u;
                for (const auto& k : ker) {
                    QVec cand = to_q(k);
                    bool moves = false;
                    for (int h : Z)
                        if (dot(H[h].a, cand).sign() != 0) {
                            moves = true;
                            break;
                        }
                    if (moves) {
                        u = cand;
                        break;
                    }
                }
                if (u.empty()) continue;
                Rat delta(1);
                for (int h = 0; h < m; ++h) {
                    if (fs[h] == 0) continue;
                    Rat slope = dot(H[h].a, u);
                    if (slope.sign() == 0) continue;
                    Rat lim = abs(dot(H[h].a, p) - H[h].b) / abs(slope) / Rat(2);
                    if (lim < delta) delta = lim;
                }
                for (int dir : {-1, 1}) {
                    QVec q = p;
                    for (int i = 0; i < n; ++i) q[i] += Rat(dir) * delta * u[i];
                    std::vector<std::int8_t> s = fs;
                    std::set<int> zp(Zp.begin(), Zp.end());
                    for (int h : Z)
                        if (!zp.count(h)) s[h] = static_cast<std::int8_t>((Rat(dir) * dot(H[h].a, u)).sign());
                    if (!all_allowed(s, allowed)) continue;
                    int g = insert(std::move(s), d + 1, std::move(q));
                    covers.emplace_back(static_cast<int>(fi), g);
                }
            }
        }
        begin = end;
    }

    // canonical order
    std::vector<int> order(faces.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return faces[a].sign < faces[b].sign; });
    std::vector<int> pos(faces.size());
    FaceLattice out;
    for (std::size_t i = 0; i < order.size(); ++i) {
        pos[order[i]] = static_cast<int>(i);
        out.faces.push_back(faces[order[i]]);
    }
    std::set<std::pair<int, int>> cv;
    for (auto [a, b] : covers) cv.emplace(pos[a], pos[b]);
    out.covers.assign(cv.begin(), cv.end());
    return out;
}

}  // namespace fltz
