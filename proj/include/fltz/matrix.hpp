#pragma once

#include "fltz/rational.hpp"

#include <utility>
#include <vector>

namespace fltz {

// Column-sparse integer matrix. Entries are exact; zero entries are never stored.
class IntMatrix {
public:
    using Entry = std::pair<int, Int>;  // (row, value), rows strictly increasing

    IntMatrix() = default;
    IntMatrix(int rows, int cols) : rows_(rows), cols_(cols), col_(cols) {}
    static IntMatrix identity(int n);
    static IntMatrix from_rows(const std::vector<std::vector<long>>& rows);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Int at(int r, int c) const;
    void set(int r, int c, const Int& v);
    void add(int r, int c, const Int& v);
    const std::vector<Entry>& column(int c) const { return col_[c]; }
    std::size_t nnz() const;
    bool is_zero() const { return nnz() == 0; }

    IntMatrix transpose() const;
    std::vector<std::vector<Int>> dense() const;

    friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b);
    friend bool operator==(const IntMatrix& a, const IntMatrix& b);

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<std::vector<Entry>> col_;
};

struct SmithForm {
    IntMatrix S, U, V;  // U * A * V == S
};

// Dense reduction with unimodular transforms; cubic, intended for small inputs.
SmithForm smith_normal_form(const IntMatrix& A);
Int determinant(const IntMatrix& A);

// Rank and invariant factors != 1 of A, without transforms. Sparse pivoting on
// unit entries, dense Smith reduction on whatever remains.
struct InvariantFactors {
    int rank = 0;
    std::vector<Int> torsion;  // d_i > 1, in divisibility order
};
InvariantFactors invariant_factors(const IntMatrix& A);

// Rank over Q of a small rational matrix given by rows; also used for kernels.
int rank_q(std::vector<QVec> rows);
// Basis of {x : A x = 0} for A given by rows, each vector scaled to be integral and primitive.
std::vector<ZVec> kernel_basis(const std::vector<QVec>& rows, int ncols);
// Unique solution of the square system A x = b, or false when singular.
bool solve_q(std::vector<QVec> A, QVec b, QVec& x);

}  // namespace fltz
