#pragma once

#include "fltz/complex.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace fltz {

class FinitePoset {
public:
    FinitePoset() = default;
    // covers (a,b) mean a < b with nothing in between; throws on cycles.
    // Redundant (non-covering) pairs are accepted and reduced away.
    FinitePoset(int n, const std::vector<std::pair<int, int>>& relations);

    int size() const { return n_; }
    bool leq(int a, int b) const;
    bool less(int a, int b) const { return a != b && leq(a, b); }
    // strictly greater elements, ascending index order
    const std::vector<int>& above(int a) const { return above_[a]; }
    const std::vector<std::pair<int, int>>& covers() const { return covers_; }
    std::vector<int> minimal_elements() const;

    FinitePoset opposite() const;
    // induced order on the listed elements (new index i <-> elems[i])
    FinitePoset subposet(const std::vector<int>& elems) const;
    // relabel: new element perm[i] corresponds to old element i
    FinitePoset permuted(const std::vector<int>& perm) const;

    // all nondegenerate chains p0 < ... < pk, grouped by k
    std::vector<std::vector<std::vector<int>>> chains() const;

private:
    int n_ = 0;
    std::vector<std::vector<std::uint64_t>> up_;  // reflexive up-set bitsets
    std::vector<std::vector<int>> above_;
    std::vector<std::pair<int, int>> covers_;
};

// Rank <= 1 diagram: Z on an upward-closed support, 0 elsewhere, identity maps.
class IndicatorDiagram {
public:
    IndicatorDiagram(std::shared_ptr<const FinitePoset> base, std::vector<char> support, int shift);
    const FinitePoset& base() const { return *base_; }
    bool in_support(int p) const { return support_[p] != 0; }
    const std::vector<char>& support() const { return support_; }
    int shift() const { return shift_; }

private:
    std::shared_ptr<const FinitePoset> base_;
    std::vector<char> support_;
    int shift_;
};

// Normalized cochain model of the derived limit, re-graded homologically and
// shifted by F.shift(): the k-chains contribute in degree shift - k.
ChainComplex poset_holim(const IndicatorDiagram& F);

// Nerve cohomology; cohomological degree k is stored at homological degree -k.
// Reduced cohomology of the empty poset is Z in cohomological degree -1.
GradedGroup order_complex_cohomology(const FinitePoset& P, bool reduced);

// Strict diagram of chain complexes over a poset, with chain maps along covers.
class Diagram {
public:
    Diagram() = default;
    Diagram(std::shared_ptr<const FinitePoset> base, std::vector<ChainComplex> values,
            std::map<std::pair<int, int>, ChainMap> cover_maps);

    const FinitePoset& base() const { return *base_; }
    std::shared_ptr<const FinitePoset> base_ptr() const { return base_; }
    const ChainComplex& value(int p) const { return values_[p]; }
    const std::vector<ChainComplex>& values() const { return values_; }
    const std::map<std::pair<int, int>, ChainMap>& cover_maps() const { return maps_; }
    // composite along any cover path from a to b (a <= b); identity when a == b
    ChainMap map(int a, int b) const;
    // chain-map and functoriality checks on every cover square
    bool is_valid() const;

private:
    std::shared_ptr<const FinitePoset> base_;
    std::vector<ChainComplex> values_;
    std::map<std::pair<int, int>, ChainMap> maps_;
};

// Tot of the cosimplicial replacement: piece over the chain p0<..<pk is F(pk)
// placed in total degree (internal degree - k).
ChainComplex holim(const Diagram& F);
// End formula: piece over s0<..<sj is Hom(F(s0), G(sj)) in total degree (map degree - j).
ChainComplex mapping_complex(const Diagram& F, const Diagram& G);

}  // namespace fltz
