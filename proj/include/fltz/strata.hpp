#pragma once
// The FLTZ hyperplane arrangement clipped to an open rational box, and its
// strata ordered by closure.

#include "fltz/arrangement.hpp"
#include "fltz/poset.hpp"
#include "fltz/toric.hpp"

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace fltz {

struct Window {
    QVec lo, hi;  // open box prod (lo_i, hi_i)
    static Window cube(int n, const Rat& lo, const Rat& hi);
    int rank() const { return static_cast<int>(lo.size()); }
    bool contains(const QVec& x) const;  // open box
    // trusted core: the closed box shrunk by one lattice step
    bool core_contains(const QVec& x) const;
    Window translated(const ZVec& m) const;
    Window grown(const Rat& r) const;
};

struct ArrHyperplane {
    ZVec normal;  // primitive, first nonzero coordinate positive
    Rat offset;   // {y : <y,normal> = offset}
    bool fltz = true;
};

struct Arrangement {
    int rank = 0;
    std::vector<ArrHyperplane> hyperplanes;  // sorted by (normal, offset)
    Window window;
};

// One hyperplane per ray direction and integer offset meeting the window, plus
// optional extra hyperplanes with rational offsets (used for refinements).
Arrangement fltz_arrangement(const Fan& fan, const Window& window,
                             const std::vector<std::pair<ZVec, Rat>>& extra = {});

struct Stratum {
    std::vector<std::int8_t> sign;  // one entry per arrangement hyperplane
    int dim = 0;
    QVec sample;                       // relative-interior point
    std::vector<QVec> closure_vertices;  // may lie on the window boundary
};

class StrataPoset {
public:
    explicit StrataPoset(Arrangement A);

    const Arrangement& arrangement() const { return arr_; }
    int rank() const { return arr_.rank; }
    int size() const { return static_cast<int>(strata_.size()); }
    const Stratum& stratum(int i) const { return strata_[i]; }
    const std::vector<Stratum>& strata() const { return strata_; }
    std::shared_ptr<const FinitePoset> poset() const { return poset_; }
    bool leq(int s, int t) const { return poset_->leq(s, t); }

    int find(const std::vector<std::int8_t>& sign) const;  // -1 if absent
    std::vector<std::int8_t> signs_at(const QVec& x) const;
    int stratum_of(const QVec& x) const;  // throws std::out_of_range outside the window
    std::vector<int> open_star(int s) const;
    // closure of s lies in the trusted core
    bool in_core(int s) const;

    std::string to_dot() const;

private:
    Arrangement arr_;
    std::vector<Stratum> strata_;
    std::map<std::vector<std::int8_t>, int> index_;
    std::shared_ptr<const FinitePoset> poset_;
};

StrataPoset face_poset(const Arrangement& A);

// x = rep + m with rep in [0,1)^n and m integral
std::pair<QVec, ZVec> period_reduce(const QVec& x);

}  // namespace fltz
