#pragma once
// Line bundles to constructible sheaves: kappa via the idempotent cover by
// translated dual cones, Ext over the fan poset, and structural checks.
//
// Ext degrees are cohomological in reports: Ext^k is homological degree -k of
// the mapping complex.

#include "fltz/sheaf.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace fltz {

// Throws std::invalid_argument unless the fan is smooth and projective.
void require_smooth_projective(const Fan& fan);

// Chain model of holim over the opposite fan poset of an indicator, with the
// generator list exposed so that support inclusions give explicit chain maps.
class ConeHolim {
public:
    explicit ConeHolim(const Fan& fan);
    const FinitePoset& opposite() const { return *op_; }
    std::shared_ptr<const FinitePoset> opposite_ptr() const { return op_; }
    // support must be closed under taking faces; throws otherwise
    ChainComplex complex(const std::vector<char>& support, int shift) const;
    // inclusion C(small) -> C(big) for small a subset of big
    ChainMap inclusion(const std::vector<char>& small, const std::vector<char>& big, int shift) const;

private:
    std::vector<std::vector<int>> generators(const std::vector<char>& support) const;  // chain ids per level

    std::shared_ptr<const FinitePoset> op_;
    std::vector<std::vector<std::vector<int>>> chains_;
    std::vector<std::map<std::vector<int>, int>> chain_id_;
};

// {sigma : y in (m_sigma + sigma^v)°}, i.e. <y, nu> > -n_nu for the rays of sigma
std::vector<char> kappa_support(const Fan& fan, const Divisor& D, const QVec& y);
ChainComplex kappa_stalk(const Fan& fan, const Divisor& D, const QVec& y);
SheafDiagram kappa_line_bundle(const Fan& fan, const Divisor& D, std::shared_ptr<const StrataPoset> strata);

// A line bundle with its support elements and the diagrams built so far.
class GluedObject {
public:
    GluedObject(std::shared_ptr<const Fan> fan, Divisor D);
    const Divisor& divisor() const { return D_; }
    const SupportFunction& support_elements() const { return f_; }
    const SheafDiagram& diagram(std::shared_ptr<const StrataPoset> strata);

private:
    std::shared_ptr<const Fan> fan_;
    Divisor D_;
    SupportFunction f_;
    std::map<const StrataPoset*, std::pair<std::shared_ptr<const StrataPoset>, SheafDiagram>> cache_;
};

// {sigma : n2 - n1 - <m, nu> >= 0 on the rays of sigma}
std::vector<char> hom_support(const Fan& fan, const Divisor& D1, const Divisor& D2, const ZVec& twist);
// Weight-m part of Hom(O(D1), O(D2)); twist empty means m = 0.
ChainComplex hom_equivariant(const Fan& fan, const Divisor& D1, const Divisor& D2, const ZVec& twist = {});

struct HomResult {
    GradedGroup ext;                           // homological grading
    std::map<ZVec, GradedGroup> contributions;  // nonzero twists only
    int radius = 0;                            // sup-norm box that carries every contribution
    int checked_radius = 0;                    // box verified to add nothing
    int doublings = 0;
    int distinct_supports = 0;
};

// Sums hom_equivariant over lattice twists, doubling the box until the outer
// shell contributes nothing. Throws "non-stabilizing twist sum" after
// max_doublings failed attempts.
HomResult hom_nonequivariant(const Fan& fan, const Divisor& D1, const Divisor& D2, int max_doublings = 4);
// single-threaded reference with the same result
HomResult hom_nonequivariant_serial(const Fan& fan, const Divisor& D1, const Divisor& D2, int max_doublings = 4);

struct Report {
    std::string claim;
    bool pass = true;
    std::vector<std::string> witnesses;
    void fail(const std::string& w) {
        pass = false;
        witnesses.push_back(w);
    }
    std::string to_json() const;
};

Report unit_gluing_check(const Fan& fan, const std::vector<QVec>& samples);
// Reduced cohomology of {sigma : m not in interior of sigma^v} vanishes.
bool contractibility_check(const Fan& fan, const QVec& m);
Report probing_check(const Fan& fan, const QVec& x, const Divisor& D);

struct ExtTable {
    std::vector<std::string> labels;
    std::vector<std::vector<GradedGroup>> ext;  // ext[i][j] = Ext(obj i, obj j), homological
    std::string to_json() const;               // cohomological degrees
};

ExtTable ext_table(const Fan& fan, const std::vector<Divisor>& objects, const std::vector<std::string>& labels);

struct BeilinsonResult {
    Report report;
    ExtTable table;
    std::string quiver_json;
};

BeilinsonResult beilinson_report(const Fan& fan);

// Deterministic rational sample points in (-2,2)^n, including the origin.
std::vector<QVec> sample_points(int rank, int count, unsigned seed = 7);

}  // namespace fltz
