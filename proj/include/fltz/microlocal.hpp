#pragma once
// Conic localization at a point, Fourier-Sato microstalks by compactly
// supported cohomology over half-spaces, and singular support against the
// FLTZ skeleton.

#include "fltz/sheaf.hpp"

#include <map>
#include <memory>
#include <string>
#include <vector>

namespace fltz {

// A sheaf on R^n constant along the cones of a central arrangement. The cone
// poset is realized by the strata of the arrangement inside (-1,1)^n.
struct ConicModel {
    int rank = 0;
    std::shared_ptr<const StrataPoset> cones;
    Diagram diagram;

    // cone containing x (x = 0 gives the origin)
    int cone_of(const QVec& x) const;
    ChainComplex value_at(const QVec& x) const { return diagram.value(cone_of(x)); }
};

std::shared_ptr<const StrataPoset> central_arrangement(int rank, const std::vector<ZVec>& normals);
// Z in `degree` on the union of the cones whose sample satisfies `inside`;
// the union must be locally closed.
template <class Pred>
ConicModel conic_indicator(int rank, const std::vector<ZVec>& normals, Pred inside, int degree) {
    auto C = central_arrangement(rank, normals);
    std::vector<char> supp(C->size());
    for (int s = 0; s < C->size(); ++s) supp[s] = inside(C->stratum(s).sample);
    return ConicModel{rank, C, SheafDiagram::indicator(C, supp, degree).diagram()};
}

// Restricts F to the strata through v, recentred at v, dropping walls that
// miss v. Throws std::out_of_range unless v is in the trusted core.
ConicModel localize(const SheafDiagram& F, const QVec& v);

// Gamma_c({x : <x, xi> <= 0}; C), homologically graded (cohomological degree
// k at -k). Computed on the closed box of radius 2 as sections of the
// extension by zero from the clipped half-space, and checked against radius 4.
ChainComplex fs_microstalk(const ConicModel& C, const QVec& xi);
// Gamma_c(R^n; C) from the cone filtration: sum over cones of (-1)^dim chi(value)
long compact_euler(const ConicModel& C);

// Cones -tau for tau in the fan with <y, nu> integral on every ray of tau.
struct SkeletonFiber {
    QVec point;
    std::vector<int> cones;  // fan cone indices tau, meaning -tau
    bool contains(const Fan& fan, const QVec& xi) const;
};

SkeletonFiber skeleton_fiber(const Fan& fan, const QVec& y);

// Central arrangement of the hyperplanes spanned by (n-1)-subsets of rays. It
// refines every cone of the fan, of its negative and of the local duals.
std::shared_ptr<const StrataPoset> test_fan(const Fan& fan);

struct Microsupport {
    std::shared_ptr<const StrataPoset> test;
    std::vector<int> cones;  // test cones with nonzero microstalk, closed under faces
    std::vector<QVec> covectors;  // the sample covector of each listed cone
};

// Memo of microsupports keyed by the exact content of the localized model
// (walls, values, maps). Tied to one test fan; reusable across sheaves.
class MicrosupportCache {
public:
    explicit MicrosupportCache(std::shared_ptr<const StrataPoset> test) : test_(std::move(test)) {}
    const std::shared_ptr<const StrataPoset>& test() const { return test_; }
    std::size_t size() const { return memo_.size(); }
    std::size_t hits() const { return hits_; }

private:
    friend Microsupport microsupport_at(const SheafDiagram&, const QVec&, std::shared_ptr<const StrataPoset>,
                                        MicrosupportCache*);
    std::shared_ptr<const StrataPoset> test_;
    std::map<std::string, std::vector<int>> memo_;
    std::size_t hits_ = 0;
};

Microsupport microsupport_at(const SheafDiagram& F, const QVec& v, std::shared_ptr<const StrataPoset> test,
                             MicrosupportCache* cache = nullptr);

struct SsPoint {
    QVec point;
    int stratum = -1;
    std::vector<std::string> microsupport;  // covector samples
    std::vector<std::string> skeleton;      // cones -tau as ray lists
    bool contained = true;
    std::string counterexample;  // first covector outside the skeleton
};

struct SsReport {
    std::vector<SsPoint> points;
    bool pass() const;
    std::string to_json() const;
};

// cache, when given, must be built on test_fan(fan)
SsReport ss_check(const SheafDiagram& F, const Fan& fan, const std::vector<QVec>& samples,
                  MicrosupportCache* cache = nullptr);
// one sample per stratum of F in the trusted core
std::vector<QVec> core_samples(const SheafDiagram& F);

}  // namespace fltz
