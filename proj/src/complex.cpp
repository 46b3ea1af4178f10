#include "fltz/complex.hpp"

#include <sstream>
#include <stdexcept>
#include <tuple>

namespace fltz {

std::string Group::str() const {
    if (is_zero()) return "0";
    std::string s;
    if (rank > 0) s = rank == 1 ? "Z" : "Z^" + std::to_string(rank);
    for (const auto& t : torsion) {
        if (!s.empty()) s += " + ";
        s += "Z/" + t.str();
    }
    return s;
}

const Group& GradedGroup::at(int k) const {
    static const Group zero;
    auto it = groups.find(k);
    return it == groups.end() ? zero : it->second;
}

GradedGroup GradedGroup::shifted(int k) const {
    GradedGroup g;
    for (const auto& [deg, grp] : groups) g.groups[deg + k] = grp;
    return g;
}

int GradedGroup::euler_characteristic() const {
    int chi = 0;
    for (const auto& [deg, grp] : groups) chi += (deg % 2 == 0 ? 1 : -1) * grp.rank;
    return chi;
}

GradedGroup& GradedGroup::operator+=(const GradedGroup& o) {
    for (const auto& [deg, grp] : o.groups) {
        Group& g = groups[deg];
        g.rank += grp.rank;
        g.torsion.insert(g.torsion.end(), grp.torsion.begin(), grp.torsion.end());
        // direct sums of cyclic groups: re-normalize to invariant factors
        if (!g.torsion.empty()) {
            IntMatrix diag(static_cast<int>(g.torsion.size()), static_cast<int>(g.torsion.size()));
            for (int i = 0; i < static_cast<int>(g.torsion.size()); ++i) diag.set(i, i, g.torsion[i]);
            g.torsion = invariant_factors(diag).torsion;
        }
        if (g.is_zero()) groups.erase(deg);
    }
    return *this;
}

std::string GradedGroup::str() const {
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (auto it = groups.rbegin(); it != groups.rend(); ++it) {
        if (!first) os << ", ";
        first = false;
        os << it->first << ": " << it->second.str();
    }
    os << "}";
    return os.str();
}

GradedGroup GradedGroup::free(int degree, int rank) {
    GradedGroup g;
    if (rank > 0) g.groups[degree] = Group{rank, {}};
    return g;
}

ChainComplex::ChainComplex(int lo, std::vector<int> ranks, std::vector<IntMatrix> d)
    : lo_(lo), ranks_(std::move(ranks)), d_(std::move(d)) {
    if (d_.size() != ranks_.size()) throw std::invalid_argument("one differential per degree expected");
    for (std::size_t i = 0; i < ranks_.size(); ++i) {
        if (ranks_[i] < 0) throw std::invalid_argument("negative rank");
        int rows = i == 0 ? 0 : ranks_[i - 1];
        if (d_[i].cols() != ranks_[i] || d_[i].rows() != rows)
            throw std::invalid_argument("differential shape mismatch");
    }
}

ChainComplex ChainComplex::concentrated(int degree, int rank) {
    return ChainComplex(degree, {rank}, {IntMatrix(0, rank)});
}

int ChainComplex::rank(int k) const {
    if (empty() || k < lo_ || k > hi()) return 0;
    return ranks_[k - lo_];
}

IntMatrix ChainComplex::d(int k) const {
    if (empty() || k <= lo_ || k > hi()) return IntMatrix(rank(k - 1), rank(k));
    return d_[k - lo_];
}

int ChainComplex::total_rank() const {
    int s = 0;
    for (int r : ranks_) s += r;
    return s;
}

bool ChainComplex::is_complex() const {
    for (int k = lo_ + 2; k <= hi(); ++k) {
        const IntMatrix& a = d_[k - 1 - lo_];
        const IntMatrix& b = d_[k - lo_];
        if (a.is_zero() || b.is_zero()) continue;
        if (!(a * b).is_zero()) return false;
    }
    return true;
}

bool operator==(const ChainComplex& a, const ChainComplex& b) {
    if (a.empty() || b.empty()) return a.total_rank() == 0 && b.total_rank() == 0;
    return a.lo_ == b.lo_ && a.ranks_ == b.ranks_ && a.d_ == b.d_;
}

GradedGroup homology_unchecked(const ChainComplex& C) {
    GradedGroup H;
    if (C.empty()) return H;
    std::map<int, InvariantFactors> f;  // factors of d_k
    for (int k = C.lo(); k <= C.hi() + 1; ++k) {
        IntMatrix dk = C.d(k);
        f[k] = dk.is_zero() ? InvariantFactors{} : invariant_factors(dk);
    }
    for (int k = C.lo(); k <= C.hi(); ++k) {
        Group g;
        g.rank = C.rank(k) - f[k].rank - f[k + 1].rank;
        g.torsion = f[k + 1].torsion;
        if (!g.is_zero()) H.groups[k] = g;
    }
    return H;
}

GradedGroup homology(const ChainComplex& C) {
    if (!C.is_complex()) throw std::invalid_argument("d o d != 0");
    return homology_unchecked(C);
}

ChainComplex shift(const ChainComplex& C, int k) {
    if (C.empty()) return C;
    std::vector<IntMatrix> d;
    for (int j = C.lo(); j <= C.hi(); ++j) d.push_back(C.d(j));
    return ChainComplex(C.lo() + k, C.ranks(), std::move(d));
}

IntMatrix ChainMap::at(int k, int rows, int cols) const {
    auto it = f.find(k);
    if (it == f.end()) return IntMatrix(rows, cols);
    return it->second;
}

int ComplexBuilder::add_generator(int degree) { return count_[degree]++; }

int ComplexBuilder::count(int degree) const {
    auto it = count_.find(degree);
    return it == count_.end() ? 0 : it->second;
}

void ComplexBuilder::add_entry(int degree, int target_index, int source_index, const Int& v) {
    if (v != 0) entries_[degree].emplace_back(target_index, source_index, v);
}

ChainComplex ComplexBuilder::build() const {
    int lo = 0, hi = -1;
    bool any = false;
    for (const auto& [deg, n] : count_) {
        if (n == 0) continue;
        if (!any) {
            lo = hi = deg;
            any = true;
        }
        lo = std::min(lo, deg);
        hi = std::max(hi, deg);
    }
    if (!any) return ChainComplex();
    std::vector<int> ranks;
    std::vector<IntMatrix> d;
    for (int k = lo; k <= hi; ++k) {
        ranks.push_back(count(k));
        IntMatrix m(k == lo ? 0 : count(k - 1), count(k));
        auto it = entries_.find(k);
        if (it != entries_.end() && k != lo)
            for (const auto& [t, s, v] : it->second) m.add(t, s, v);
        d.push_back(std::move(m));
    }
    return ChainComplex(lo, std::move(ranks), std::move(d));
}

}  // namespace fltz
