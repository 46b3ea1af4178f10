#pragma once
// Constructible sheaves on a window as strict diagrams over its strata poset.

#include "fltz/poset.hpp"
#include "fltz/strata.hpp"
#include "fltz/toric.hpp"

#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

namespace fltz {

// {y : <y, normals[i]> >= lower[i]}
struct HPolyhedron {
    int rank = 0;
    std::vector<ZVec> normals;
    std::vector<Rat> lower;
    bool interior_contains(const QVec& y) const;
};

HPolyhedron as_polyhedron(const Polytope& P);  // needs the H-rep
HPolyhedron translated_dual_cone(const Fan& fan, int cone, const ZVec& m);  // m + cone^v

class SheafDiagram {
public:
    SheafDiagram(std::shared_ptr<const StrataPoset> strata, Diagram d);

    // Z in `degree` on a convex (locally closed) set of strata, identity maps
    // inside it and zero maps out of it.
    static SheafDiagram indicator(std::shared_ptr<const StrataPoset> strata, const std::vector<char>& support,
                                  int degree);
    static SheafDiagram zero(std::shared_ptr<const StrataPoset> strata);

    const StrataPoset& strata() const { return *strata_; }
    std::shared_ptr<const StrataPoset> strata_ptr() const { return strata_; }
    const Diagram& diagram() const { return diag_; }
    const ChainComplex& value(int s) const { return diag_.value(s); }
    std::vector<int> support() const;  // strata with a nonzero value
    bool supported_in_core() const;

private:
    std::shared_ptr<const StrataPoset> strata_;
    Diagram diag_;
};

// Z[n] (homological degree n) on the strata inside the interior of Q.
// Throws "refine arrangement" if a facet hyperplane of Q cuts a stratum.
SheafDiagram omega_closed(const HPolyhedron& Q, std::shared_ptr<const StrataPoset> strata);
SheafDiagram omega_closed(const Polytope& Q, std::shared_ptr<const StrataPoset> strata);
// Z in degree 0 at a point stratum
SheafDiagram skyscraper(const QVec& p, std::shared_ptr<const StrataPoset> strata);

// value at the stratum of x; x must lie in the trusted core
ChainComplex stalk(const SheafDiagram& F, const QVec& x);
ChainComplex global_sections_window(const SheafDiagram& F);
ChainComplex mapping_complex_window(const SheafDiagram& F, const SheafDiagram& G);

// G(t) = F(stratum of sample(t) - m), for a target poset that refines the
// translated strata of F. F must be supported in its trusted core.
SheafDiagram pullback(const SheafDiagram& F, std::shared_ptr<const StrataPoset> target, const ZVec& m);
// onto the translated window, keeping the arrangement combinatorics
SheafDiagram translate(const SheafDiagram& F, const ZVec& m);

std::string to_json(const SheafDiagram& F);

// Formal sums of generating objects: omega of translated dual cones, points
// (skyscrapers) and glued objects omega(D), each with a shift.
struct Term {
    enum Kind { Cone = 0, Point = 1, Glued = 2 };
    Kind kind = Point;
    int cone = 0;  // Cone only
    ZVec data;     // Cone: representative m; Point: m; Glued: divisor coefficients
    int shift = 0;
};

class SymbolicObject {
public:
    SymbolicObject() = default;
    SymbolicObject(std::shared_ptr<const Fan> fan, const Term& t, long coeff = 1);

    static SymbolicObject cone(std::shared_ptr<const Fan> fan, const ZVec& m, int cone);
    static SymbolicObject point(std::shared_ptr<const Fan> fan, const ZVec& m);
    static SymbolicObject glued(std::shared_ptr<const Fan> fan, const Divisor& D);

    const Fan* fan() const { return fan_.get(); }
    std::shared_ptr<const Fan> fan_ptr() const { return fan_; }
    // normalized terms with coefficients
    std::vector<std::pair<Term, long>> terms() const;
    SymbolicObject shifted(int k) const;
    SymbolicObject& operator+=(const SymbolicObject& o);
    friend bool operator==(const SymbolicObject& a, const SymbolicObject& b);
    std::string str() const;

private:
    using Key = std::tuple<int, int, ZVec, int>;  // kind, cone, normal-form data, shift
    Key key(const Term& t) const;
    void add(const Term& t, long c);

    std::shared_ptr<const Fan> fan_;
    std::map<Key, std::pair<Term, long>> terms_;
};

SymbolicObject convolve_symbolic(const SymbolicObject& a, const SymbolicObject& b);
// The closed set m + cone^v of a Cone term.
HPolyhedron term_support(const Fan& fan, const Term& t);

}  // namespace fltz
