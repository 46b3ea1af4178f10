#include "fltz/lp.hpp"

#include <stdexcept>

namespace fltz {

namespace {

// Phase one on: rows  sum_j T[i][j] y_j = rhs_i (rhs_i >= 0), y >= 0.
// Returns y or nullopt. Artificial variables are appended internally.
std::optional<QVec> phase_one(std::vector<QVec> T, QVec rhs) {
    const int m = static_cast<int>(T.size());
    const int nv = m ? static_cast<int>(T[0].size()) : 0;
    if (m == 0) return QVec(nv);
    const int ncol = nv + m;
    std::vector<QVec> tab(m, QVec(ncol + 1));
    std::vector<int> basis(m);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < nv; ++j) tab[i][j] = T[i][j];
        tab[i][nv + i] = 1;
        tab[i][ncol] = rhs[i];
        basis[i] = nv + i;
    }
    // objective: minimize sum of artificials; reduced costs row
    QVec cost(ncol + 1);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= ncol; ++j)
            if (j < nv || j == ncol) cost[j] -= tab[i][j];
    for (;;) {
        int enter = -1;
        for (int j = 0; j < ncol; ++j)
            if (cost[j].sign() < 0) {
                enter = j;
                break;
            }
        if (enter < 0) break;
        int leave = -1;
        Rat best;
        for (int i = 0; i < m; ++i) {
            if (tab[i][enter].sign() <= 0) continue;
            Rat ratio = tab[i][ncol] / tab[i][enter];
            if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave < 0) break;  // unbounded direction cannot occur in phase one
        Rat piv = tab[leave][enter];
        for (auto& x : tab[leave]) x /= piv;
        for (int i = 0; i < m; ++i) {
            if (i == leave || tab[i][enter].sign() == 0) continue;
            Rat f = tab[i][enter];
            for (int j = 0; j <= ncol; ++j)
                if (tab[leave][j].sign() != 0) tab[i][j] -= f * tab[leave][j];
        }
        if (cost[enter].sign() != 0) {
            Rat f = cost[enter];
            for (int j = 0; j <= ncol; ++j)
                if (tab[leave][j].sign() != 0) cost[j] -= f * tab[leave][j];
        }
        basis[leave] = enter;
    }
    if (cost[ncol].sign() != 0) return std::nullopt;  // artificials could not be driven to zero
    QVec y(nv);
    for (int i = 0; i < m; ++i)
        if (basis[i] < nv) y[basis[i]] = tab[i][ncol];
    return y;
}

}  // namespace

std::optional<QVec> feasible_point(const std::vector<QVec>& A, const QVec& b, int nvars) {
    // x = p - q, slack s: A p - A q - s = b
    const int m = static_cast<int>(A.size());
    std::vector<QVec> T(m, QVec(2 * nvars + m));
    QVec rhs(m);
    for (int i = 0; i < m; ++i) {
        int sgn = b[i].sign() < 0 ? -1 : 1;
        for (int j = 0; j < nvars; ++j) {
            T[i][j] = Rat(sgn) * A[i][j];
            T[i][nvars + j] = Rat(-sgn) * A[i][j];
        }
        T[i][2 * nvars + i] = Rat(-sgn);
        rhs[i] = Rat(sgn) * b[i];
    }
    auto y = phase_one(T, rhs);
    if (!y) return std::nullopt;
    QVec x(nvars);
    for (int j = 0; j < nvars; ++j) x[j] = (*y)[j] - (*y)[nvars + j];
    return x;
}

bool cone_contains(const std::vector<QVec>& gens, const QVec& v) {
    const int n = static_cast<int>(v.size());
    const int g = static_cast<int>(gens.size());
    std::vector<QVec> T(n, QVec(g));
    QVec rhs(n);
    for (int i = 0; i < n; ++i) {
        int sgn = v[i].sign() < 0 ? -1 : 1;
        for (int j = 0; j < g; ++j) T[i][j] = Rat(sgn) * gens[j][i];
        rhs[i] = Rat(sgn) * v[i];
    }
    return phase_one(T, rhs).has_value();
}

bool hull_contains(const std::vector<QVec>& points, const QVec& v) {
    if (points.empty()) return false;
    const int n = static_cast<int>(v.size());
    const int g = static_cast<int>(points.size());
    std::vector<QVec> T(n + 1, QVec(g));
    QVec rhs(n + 1);
    for (int i = 0; i < n; ++i) {
        int sgn = v[i].sign() < 0 ? -1 : 1;
        for (int j = 0; j < g; ++j) T[i][j] = Rat(sgn) * points[j][i];
        rhs[i] = Rat(sgn) * v[i];
    }
    for (int j = 0; j < g; ++j) T[n][j] = 1;
    rhs[n] = 1;
    return phase_one(T, rhs).has_value();
}

}  // namespace fltz
