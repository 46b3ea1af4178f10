#include "fltz/matrix.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>

namespace fltz {

IntMatrix IntMatrix::identity(int n) {
    IntMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.col_[i].emplace_back(i, Int(1));
    return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long>>& rows) {
    int r = static_cast<int>(rows.size());
    int c = r ? static_cast<int>(rows[0].size()) : 0;
    IntMatrix m(r, c);
    for (int i = 0; i < r; ++i) {
        if (static_cast<int>(rows[i].size()) != c) throw std::invalid_argument("ragged matrix");
        for (int j = 0; j < c; ++j)
            if (rows[i][j] != 0) m.col_[j].emplace_back(i, Int(rows[i][j]));
    }
    return m;
}

Int IntMatrix::at(int r, int c) const {
    const auto& col = col_.at(c);
    auto it = std::lower_bound(col.begin(), col.end(), r,
                               [](const Entry& e, int row) { return e.first < row; });
    return (it != col.end() && it->first == r) ? it->second : Int(0);
}

void IntMatrix::set(int r, int c, const Int& v) {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_) throw std::out_of_range("matrix index");
    auto& col = col_[c];
    auto it = std::lower_bound(col.begin(), col.end(), r,
                               [](const Entry& e, int row) { return e.first < row; });
    if (it != col.end() && it->first == r) {
        if (v == 0)
            col.erase(it);
        else
            it->second = v;
    } else if (v != 0) {
        col.insert(it, Entry(r, v));
    }
}

void IntMatrix::add(int r, int c, const Int& v) {
    if (v != 0) set(r, c, at(r, c) + v);
}

std::size_t IntMatrix::nnz() const {
    std::size_t n = 0;
    for (const auto& c : col_) n += c.size();
    return n;
}

IntMatrix IntMatrix::transpose() const {
    IntMatrix t(cols_, rows_);
    for (int j = 0; j < cols_; ++j)
        for (const auto& [i, v] : col_[j]) t.col_[i].emplace_back(j, v);
    return t;
}

std::vector<std::vector<Int>> IntMatrix::dense() const {
    std::vector<std::vector<Int>> d(rows_, std::vector<Int>(cols_));
    for (int j = 0; j < cols_; ++j)
        for (const auto& [i, v] : col_[j]) d[i][j] = v;
    return d;
}

IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix shape mismatch");
    IntMatrix c(a.rows_, b.cols_);
    std::vector<Int> acc(a.rows_);
    std::vector<char> touched(a.rows_, 0);
    std::vector<int> rows;
    for (int j = 0; j < b.cols_; ++j) {
        rows.clear();
        for (const auto& [k, bv] : b.col_[j])
            for (const auto& [i, av] : a.col_[k]) {
                if (!touched[i]) {
                    touched[i] = 1;
                    rows.push_back(i);
                    acc[i] = 0;
                }
                acc[i] += av * bv;
            }
        std::sort(rows.begin(), rows.end());
        for (int i : rows) {
            if (acc[i] != 0) c.col_[j].emplace_back(i, acc[i]);
            touched[i] = 0;
        }
    }
    return c;
}

bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.col_ == b.col_;
}

namespace {

struct Overflow {};

inline long long mul(long long a, long long b) {
    long long r;
    if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
    return r;
}
inline long long sub(long long a, long long b) {
    long long r;
    if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
    return r;
}
inline long long add(long long a, long long b) {
    long long r;
    if (__builtin_add_overflow(a, b, &r)) throw Overflow{};
    return r;
}
inline long long neg(long long a) {
    if (a == INT64_MIN) throw Overflow{};
    return -a;
}
inline long long absval(long long a) { return a < 0 ? neg(a) : a; }
inline Int mul(const Int& a, const Int& b) { return a * b; }
inline Int sub(const Int& a, const Int& b) { return a - b; }
inline Int add(const Int& a, const Int& b) { return a + b; }
inline Int neg(const Int& a) { return -a; }
inline Int absval(const Int& a) { return a < 0 ? Int(-a) : a; }

template <class T>
using Dense = std::vector<std::vector<T>>;

// Smith reduction in place. When U/V are given they accumulate the row and column
// operations so that U * A_in * V == A_out.
template <class T>
void smith_dense(Dense<T>& a, Dense<T>* U, Dense<T>* V) {
    const int r = static_cast<int>(a.size());
    const int c = r ? static_cast<int>(a[0].size()) : 0;
    auto swap_rows = [&](int i, int j) {
        if (i == j) return;
        std::swap(a[i], a[j]);
        if (U) std::swap((*U)[i], (*U)[j]);
    };
    auto swap_cols = [&](int i, int j) {
        if (i == j) return;
        for (auto& row : a) std::swap(row[i], row[j]);
        if (V)
            for (auto& row : *V) std::swap(row[i], row[j]);
    };
    auto row_axpy = [&](int dst, int src, const T& q) {  // row dst -= q * row src
        for (int k = 0; k < c; ++k)
            if (a[src][k] != 0) a[dst][k] = sub(a[dst][k], mul(q, a[src][k]));
        if (U)
            for (std::size_t k = 0; k < U->size(); ++k)
                if ((*U)[src][k] != 0) (*U)[dst][k] = sub((*U)[dst][k], mul(q, (*U)[src][k]));
    };
    auto col_axpy = [&](int dst, int src, const T& q) {  // col dst -= q * col src
        for (int k = 0; k < r; ++k)
            if (a[k][src] != 0) a[k][dst] = sub(a[k][dst], mul(q, a[k][src]));
        if (V)
            for (std::size_t k = 0; k < V->size(); ++k)
                if ((*V)[k][src] != 0) (*V)[k][dst] = sub((*V)[k][dst], mul(q, (*V)[k][src]));
    };

    for (int t = 0; t < std::min(r, c); ++t) {
        for (;;) {
            // smallest nonzero in the trailing block becomes the pivot
            int pi = -1, pj = -1;
            T best = 0;
            for (int i = t; i < r; ++i)
                for (int j = t; j < c; ++j)
                    if (a[i][j] != 0 && (pi < 0 || absval(a[i][j]) < best)) {
                        best = absval(a[i][j]);
                        pi = i;
                        pj = j;
                    }
            if (pi < 0) return;
            swap_rows(t, pi);
            swap_cols(t, pj);
            bool clean = true;
            for (int i = t + 1; i < r; ++i)
                if (a[i][t] != 0) {
                    T q = a[i][t] / a[t][t];
                    row_axpy(i, t, q);
                    if (a[i][t] != 0) clean = false;
                }
            for (int j = t + 1; j < c; ++j)
                if (a[t][j] != 0) {
                    T q = a[t][j] / a[t][t];
                    col_axpy(j, t, q);
                    if (a[t][j] != 0) clean = false;
                }
            if (!clean) continue;
            // divisibility: fold an offending row into row t and retry
            int bad = -1;
            for (int i = t + 1; i < r && bad < 0; ++i)
                for (int j = t + 1; j < c; ++j)
                    if (a[i][j] % a[t][t] != 0) {
                        bad = i;
                        break;
                    }
            if (bad < 0) break;
            row_axpy(t, bad, T(-1));
        }
        if (a[t][t] < 0) {
            a[t][t] = neg(a[t][t]);
            if (U)
                for (auto& x : (*U)[t]) x = neg(x);
        }
    }
}

template <class T>
Dense<T> to_dense(const IntMatrix& A) {
    Dense<T> d(A.rows(), std::vector<T>(A.cols(), T(0)));
    for (int j = 0; j < A.cols(); ++j)
        for (const auto& [i, v] : A.column(j)) d[i][j] = static_cast<T>(v);
    return d;
}

template <class T>
InvariantFactors factors_from_dense(Dense<T>& d) {
    smith_dense<T>(d, nullptr, nullptr);
    InvariantFactors out;
    for (std::size_t t = 0; t < d.size() && (d.empty() || t < d[0].size()); ++t) {
        if (d[t][t] == 0) break;
        ++out.rank;
        if (d[t][t] != 1) out.torsion.emplace_back(d[t][t]);
    }
    return out;
}

template <class T>
InvariantFactors sparse_factors(const IntMatrix& A) {
    const int R = A.rows(), C = A.cols();
    using Col = std::vector<std::pair<int, T>>;
    std::vector<Col> cols(C);
    std::vector<std::vector<int>> rowcols(R);
    std::vector<int> rowcount(R, 0);
    for (int j = 0; j < C; ++j) {
        for (const auto& [i, v] : A.column(j)) {
            cols[j].emplace_back(i, static_cast<T>(v));
            rowcols[i].push_back(j);
            ++rowcount[i];
        }
    }
    std::vector<char> col_alive(C, 1), row_alive(R, 1);
    using Item = std::pair<std::size_t, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> pq;
    for (int j = 0; j < C; ++j) pq.emplace(cols[j].size(), j);

    InvariantFactors out;
    Col merged;
    while (!pq.empty()) {
        auto [sz, c] = pq.top();
        pq.pop();
        if (!col_alive[c] || sz != cols[c].size()) continue;
        if (cols[c].empty()) {
            col_alive[c] = 0;
            continue;
        }
        int prow = -1;
        T pval = 0;
        for (const auto& [i, v] : cols[c])
            if ((v == 1 || v == -1) && (prow < 0 || rowcount[i] < rowcount[prow])) {
                prow = i;
                pval = v;
            }
        if (prow < 0) continue;  // no unit here; left for the dense pass unless it changes

        auto& rc = rowcols[prow];
        std::sort(rc.begin(), rc.end());
        rc.erase(std::unique(rc.begin(), rc.end()), rc.end());
        for (int c2 : rc) {
            if (c2 == c || !col_alive[c2]) continue;
            auto& col2 = cols[c2];
            auto it = std::lower_bound(col2.begin(), col2.end(), prow,
                                       [](const auto& e, int row) { return e.first < row; });
            if (it == col2.end() || it->first != prow) continue;
            T f = mul(it->second, pval);  // pval is its own inverse
            merged.clear();
            auto a = col2.begin();
            auto b = cols[c].begin();
            while (a != col2.end() || b != cols[c].end()) {
                if (b == cols[c].end() || (a != col2.end() && a->first < b->first)) {
                    merged.push_back(*a++);
                } else if (a == col2.end() || b->first < a->first) {
                    merged.emplace_back(b->first, neg(mul(f, b->second)));
                    ++rowcount[b->first];
                    rowcols[b->first].push_back(c2);
                    ++b;
                } else {
                    T v = sub(a->second, mul(f, b->second));
                    if (v != 0)
                        merged.emplace_back(a->first, v);
                    else
                        --rowcount[a->first];
                    ++a;
                    ++b;
                }
            }
            col2.swap(merged);
            pq.emplace(col2.size(), c2);
        }
        for (const auto& [i, v] : cols[c]) --rowcount[i];
        col_alive[c] = 0;
        row_alive[prow] = 0;
        rc.clear();
        ++out.rank;
    }

    // dense remainder
    std::vector<int> rmap(R, -1);
    int nr = 0;
    std::vector<int> live_cols;
    for (int j = 0; j < C; ++j) {
        if (!col_alive[j] || cols[j].empty()) continue;
        live_cols.push_back(j);
        for (const auto& [i, v] : cols[j])
            if (rmap[i] < 0) rmap[i] = nr++;
    }
    if (live_cols.empty()) return out;
    Dense<T> d(nr, std::vector<T>(live_cols.size(), T(0)));
    for (std::size_t k = 0; k < live_cols.size(); ++k)
        for (const auto& [i, v] : cols[live_cols[k]]) d[rmap[i]][k] = v;
    InvariantFactors rest = factors_from_dense<T>(d);
    out.rank += rest.rank;
    for (auto& t : rest.torsion) out.torsion.emplace_back(Int(t));
    std::sort(out.torsion.begin(), out.torsion.end());
    return out;
}

}  // namespace

SmithForm smith_normal_form(const IntMatrix& A) {
    Dense<Int> a = to_dense<Int>(A);
    Dense<Int> U = IntMatrix::identity(A.rows()).dense();
    Dense<Int> V = IntMatrix::identity(A.cols()).dense();
    smith_dense<Int>(a, &U, &V);
    auto pack = [](const Dense<Int>& d, int r, int c) {
        IntMatrix m(r, c);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < c; ++j)
                if (d[i][j] != 0) m.set(i, j, d[i][j]);
        return m;
    };
    return {pack(a, A.rows(), A.cols()), pack(U, A.rows(), A.rows()), pack(V, A.cols(), A.cols())};
}

Int determinant(const IntMatrix& A) {
    if (A.rows() != A.cols()) throw std::invalid_argument("determinant of non-square matrix");
    // fraction-free Bareiss elimination
    Dense<Int> a = to_dense<Int>(A);
    const int n = A.rows();
    Int prev = 1;
    int sign = 1;
    for (int k = 0; k < n; ++k) {
        int p = k;
        while (p < n && a[p][k] == 0) ++p;
        if (p == n) return 0;
        if (p != k) {
            std::swap(a[p], a[k]);
            sign = -sign;
        }
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    return n == 0 ? Int(1) : Int(sign * a[n - 1][n - 1]);
}

InvariantFactors invariant_factors(const IntMatrix& A) {
    bool small = true;
    for (int j = 0; j < A.cols() && small; ++j)
        for (const auto& [i, v] : A.column(j))
            if (v > (Int(1) << 40) || v < -(Int(1) << 40)) {
                small = false;
                break;
            }
    if (small) {
        try {
            return sparse_factors<long long>(A);
        } catch (const Overflow&) {
        }
    }
    return sparse_factors<Int>(A);
}

namespace {

// Row echelon form over Q; returns pivot columns.
std::vector<int> echelon(std::vector<QVec>& rows, int ncols) {
    std::vector<int> piv;
    int r = 0;
    for (int c = 0; c < ncols && r < static_cast<int>(rows.size()); ++c) {
        int p = -1;
        for (int i = r; i < static_cast<int>(rows.size()); ++i)
            if (rows[i][c].sign() != 0) {
                p = i;
                break;
            }
        if (p < 0) continue;
        std::swap(rows[r], rows[p]);
        Rat inv = Rat(1) / rows[r][c];
        for (auto& x : rows[r]) x *= inv;
        for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
            if (i == r || rows[i][c].sign() == 0) continue;
            Rat f = rows[i][c];
            for (std::size_t k = 0; k < rows[i].size(); ++k)
                if (rows[r][k].sign() != 0) rows[i][k] -= f * rows[r][k];
        }
        piv.push_back(c);
        ++r;
    }
    return piv;
}

}  // namespace

int rank_q(std::vector<QVec> rows) {
    if (rows.empty()) return 0;
    return static_cast<int>(echelon(rows, static_cast<int>(rows[0].size())).size());
}

std::vector<ZVec> kernel_basis(const std::vector<QVec>& A, int ncols) {
    std::vector<QVec> rows = A;
    std::vector<int> piv = echelon(rows, ncols);
    std::vector<char> is_piv(ncols, 0);
    for (int p : piv) is_piv[p] = 1;
    std::vector<ZVec> basis;
    for (int f = 0; f < ncols; ++f) {
        if (is_piv[f]) continue;
        QVec x(ncols);
        x[f] = 1;
        for (std::size_t r = 0; r < piv.size(); ++r) x[piv[r]] = -rows[r][f];
        Int l = 1;
        for (const auto& v : x) l = boost::multiprecision::lcm(l, v.den());
        std::vector<Int> zi(ncols);
        Int g = 0;
        for (int k = 0; k < ncols; ++k) {
            zi[k] = x[k].num() * (l / x[k].den());
            g = boost::multiprecision::gcd(g, zi[k]);
        }
        ZVec z(ncols);
        for (int k = 0; k < ncols; ++k) z[k] = to_long(Int(zi[k] / g));
        basis.push_back(std::move(z));
    }
    return basis;
}

bool solve_q(std::vector<QVec> A, QVec b, QVec& x) {
    const int n = static_cast<int>(A.size());
    for (int i = 0; i < n; ++i) A[i].push_back(b[i]);
    std::vector<int> piv = echelon(A, n);
    if (static_cast<int>(piv.size()) < n) return false;
    x.assign(n, Rat(0));
    for (int i = 0; i < n; ++i) x[i] = A[i][n];
    return true;
}

}  // namespace fltz
