#pragma once
// Bounded complexes of finitely generated free abelian groups.
// Grading is homological throughout: d_k : C_k -> C_{k-1}. A cohomological
// degree k is reported as homological degree -k.

#include "fltz/matrix.hpp"

#include <map>
#include <string>
#include <vector>

namespace fltz {

struct Group {
    int rank = 0;
    std::vector<Int> torsion;  // invariant factors > 1
    bool is_zero() const { return rank == 0 && torsion.empty(); }
    friend bool operator==(const Group& a, const Group& b) {
        return a.rank == b.rank && a.torsion == b.torsion;
    }
    std::string str() const;  // "Z^2 + Z/2"
};

// Homology as degree -> group; zero groups are not stored.
struct GradedGroup {
    std::map<int, Group> groups;

    const Group& at(int k) const;
    bool is_zero() const { return groups.empty(); }
    GradedGroup shifted(int k) const;  // H_j(result) = H_{j-k}(this)
    int euler_characteristic() const;  // sum (-1)^k rank H_k
    GradedGroup& operator+=(const GradedGroup& o);
    friend bool operator==(const GradedGroup& a, const GradedGroup& b) { return a.groups == b.groups; }
    friend bool operator!=(const GradedGroup& a, const GradedGroup& b) { return !(a == b); }
    std::string str() const;  // "{0: Z, -1: Z^2}"

    static GradedGroup free(int degree, int rank = 1);
};

class ChainComplex {
public:
    ChainComplex() = default;
    // ranks[i] is the rank in degree lo+i; d[i] maps degree lo+i to lo+i-1
    // (d[0] must have 0 rows). Throws if shapes disagree.
    ChainComplex(int lo, std::vector<int> ranks, std::vector<IntMatrix> d);

    static ChainComplex concentrated(int degree, int rank = 1);

    bool empty() const { return ranks_.empty(); }
    int lo() const { return lo_; }
    int hi() const { return lo_ + static_cast<int>(ranks_.size()) - 1; }
    int rank(int k) const;
    // differential out of degree k (rank(k-1) x rank(k)); zero matrix outside range
    IntMatrix d(int k) const;
    const std::vector<int>& ranks() const { return ranks_; }
    int total_rank() const;

    bool is_complex() const;  // d_{k-1} d_k == 0 for all k
    friend bool operator==(const ChainComplex& a, const ChainComplex& b);

private:
    int lo_ = 0;
    std::vector<int> ranks_;
    std::vector<IntMatrix> d_;
};

// Homology via Smith normal form; throws std::invalid_argument if d o d != 0.
GradedGroup homology(const ChainComplex& C);
// Same without the d o d check, for callers that certify separately.
GradedGroup homology_unchecked(const ChainComplex& C);
ChainComplex shift(const ChainComplex& C, int k);

// Degree-preserving chain map; f[k] : A_k -> B_k.
struct ChainMap {
    std::map<int, IntMatrix> f;
    IntMatrix at(int k, int rows, int cols) const;
};

// Builder for complexes assembled from explicitly indexed generators.
class ComplexBuilder {
public:
    // reserve a generator in the given degree; returns its index in that degree
    int add_generator(int degree);
    void add_entry(int degree, int target_index, int source_index, const Int& v);
    ChainComplex build() const;
    int count(int degree) const;

private:
    std::map<int, int> count_;
    std::map<int, std::vector<std::tuple<int, int, Int>>> entries_;  // keyed by source degree
};

}  // namespace fltz
