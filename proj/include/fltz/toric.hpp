#pragma once
// Fans, cones, divisors, support functions and polytopes. All arithmetic exact.

#include "fltz/poset.hpp"
#include "fltz/rational.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace fltz {

// Generators of {m : <m,v> >= 0 for all v in cone(gens)}, primitive, sorted.
// For a cone with lineality, both +l and -l are listed for a lattice basis l of it.
std::vector<ZVec> dual_cone(const std::vector<ZVec>& gens, int n);
// cone(a) == cone(b) as sets
bool same_cone(const std::vector<ZVec>& a, const std::vector<ZVec>& b, int n);
// generator union; for dual cones this is the Minkowski sum
std::vector<ZVec> minkowski_sum(const std::vector<ZVec>& a, const std::vector<ZVec>& b);
ZVec primitive(const QVec& v);

class Fan {
public:
    Fan() = default;
    // Generates all faces and validates: primitive rays, strongly convex cones,
    // cones meeting in common faces. Throws std::invalid_argument otherwise.
    static Fan from_max_cones(int rank, std::vector<ZVec> rays, std::vector<std::vector<int>> max_cones);

    int rank() const { return rank_; }
    const std::vector<ZVec>& rays() const { return rays_; }
    int num_rays() const { return static_cast<int>(rays_.size()); }
    // cones sorted by (dim, ray list); index 0 is the zero cone
    int num_cones() const { return static_cast<int>(cones_.size()); }
    const std::vector<int>& cone(int c) const { return cones_[c]; }
    int cone_dim(int c) const { return dims_[c]; }
    std::vector<ZVec> cone_generators(int c) const;
    const std::vector<int>& maximal_cones() const { return maximal_; }
    const std::vector<std::vector<int>>& input_max_cones() const { return input_max_; }
    int find_cone(std::vector<int> rays) const;  // -1 if absent
    // faces of cone c, as cone indices
    std::vector<int> faces(int c) const;
    // cones ordered by inclusion (tau <= sigma iff tau is a face of sigma)
    std::shared_ptr<const FinitePoset> poset() const { return poset_; }

    bool is_smooth() const { return smooth_; }
    bool is_complete() const { return complete_; }
    bool is_simplicial() const;

    struct Wall {
        int sigma, sigma2;  // maximal cones
        int tau;            // common facet
        int w;              // ray of sigma2 off the wall
    };
    const std::vector<Wall>& walls() const { return walls_; }

private:
    int rank_ = 0;
    std::vector<ZVec> rays_;
    std::vector<std::vector<int>> cones_;
    std::vector<int> dims_;
    std::vector<int> maximal_;
    std::vector<std::vector<int>> input_max_;
    std::map<std::vector<int>, int> index_;
    std::shared_ptr<const FinitePoset> poset_;
    std::vector<Wall> walls_;
    bool smooth_ = true;
    bool complete_ = false;
};

struct Divisor {
    ZVec n;  // one coefficient per ray
    friend Divisor operator+(const Divisor& a, const Divisor& b);
    friend Divisor operator*(long k, const Divisor& a);
    friend bool operator==(const Divisor& a, const Divisor& b) { return a.n == b.n; }
    std::string str() const;
};

// f|_sigma = <m_sigma, ->, keyed by maximal cone index
struct SupportFunction {
    std::map<int, QVec> m;
};

SupportFunction find_support_function(const Fan& fan, const Divisor& D);
// m_tau for any cone: m_sigma of some maximal cone containing it (defined mod tau-perp)
QVec support_element(const Fan& fan, const SupportFunction& f, int cone);
// <m_sigma - m_sigma2, w> for each wall, in walls() order
std::vector<Rat> wall_margins(const Fan& fan, const SupportFunction& f);
bool is_strictly_convex(const Fan& fan, const SupportFunction& f);
bool is_strictly_convex(const Fan& fan, const Divisor& D);
std::optional<Divisor> certify_projective(const Fan& fan);

struct Polytope {
    int rank = 0;
    std::vector<ZVec> normals;  // <m, normals[i]> >= lower[i]
    std::vector<Rat> lower;
    std::vector<QVec> vertices;  // sorted
    bool empty() const { return vertices.empty(); }
    bool contains(const QVec& m) const;
};

Polytope divisor_to_polytope(const Fan& fan, const Divisor& D);
Divisor polytope_to_divisor(const Fan& fan, const Polytope& P);
// n_eta(P) = -min_P <., nu_eta>, rational
QVec polytope_offsets(const Fan& fan, const Polytope& P);
Polytope polytope_from_vertices(int rank, std::vector<QVec> points);
// V-rep sum; the H-rep reuses A's normals with tight offsets
Polytope minkowski_sum(const Polytope& A, const Polytope& B);

Divisor probing_divisor(const Fan& fan, const QVec& x);
int dominate(const Fan& fan, const Divisor& D, const Divisor& DP);
bool deformation_integrality(const Fan& fan, const QVec& x, const Polytope& P, const Rat& eps);
Rat choose_epsilon(const Fan& fan, const QVec& x, const Polytope& P);

}  // namespace fltz
