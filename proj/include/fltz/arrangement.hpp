#pragma once
// Faces of a finite affine hyperplane arrangement inside a bounded region,
// enumerated exactly from the vertices upward.

#include "fltz/rational.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace fltz {

struct Hyperplane {
    QVec a;  // normal
    Rat b;   // {x : <a,x> = b}
    int side(const QVec& x) const { return (dot(a, x) - b).sign(); }
};

struct ArrFace {
    std::vector<std::int8_t> sign;  // per hyperplane: -1, 0, +1
    int dim = 0;
    QVec sample;  // relative-interior point
};

struct FaceLattice {
    std::vector<ArrFace> faces;               // sorted lexicographically by sign (- < 0 < +)
    std::vector<std::pair<int, int>> covers;  // (f, g): f a facet of g
};

// Allowed-sign masks per hyperplane.
constexpr std::uint8_t kNeg = 1, kZero = 2, kPos = 4, kAny = 7;

// Enumerates all faces whose sign vectors respect `allowed`. The closure of the
// region cut out by the masks must be bounded (every face must have a vertex
// in its closure); box hyperplanes are the usual way to ensure this.
FaceLattice enumerate_faces(int n, const std::vector<Hyperplane>& H, const std::vector<std::uint8_t>& allowed);

// s <= t in the face order: wherever s is nonzero, t agrees.
bool sign_leq(const std::vector<std::int8_t>& s, const std::vector<std::int8_t>& t);
std::string sign_string(const std::vector<std::int8_t>& s);  // "+0-" style

}  // namespace fltz
