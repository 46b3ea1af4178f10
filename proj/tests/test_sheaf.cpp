#include "fltz/sheaf.hpp"

#include <doctest.h>

#include <random>

using namespace fltz;

namespace {

Fan p1() { return Fan::from_max_cones(1, {{1}, {-1}}, {{0}, {1}}); }
Fan p2() { return Fan::from_max_cones(2, {{1, 0}, {0, 1}, {-1, -1}}, {{0, 1}, {1, 2}, {0, 2}}); }
Fan f1() { return Fan::from_max_cones(2, {{1, 0}, {0, 1}, {-1, 1}, {0, -1}}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}); }

std::shared_ptr<const StrataPoset> strata(const Fan& F, const Rat& lo, const Rat& hi) {
    return std::make_shared<const StrataPoset>(fltz_arrangement(F, Window::cube(F.rank(), lo, hi)));
}

QVec q(std::initializer_list<long> xs) {
    QVec v;
    for (long x : xs) v.push_back(Rat(x));
    return v;
}

HPolyhedron segment(long a, long b) { return HPolyhedron{1, {{1}, {-1}}, {Rat(a), Rat(-b)}}; }

}  // namespace

TEST_CASE("omega of closed segments") {
    auto S = strata(p1(), Rat(-2), Rat(2));
    auto w01 = omega_closed(segment(0, 1), S);
    REQUIRE(w01.support().size() == 1);
    CHECK(w01.support()[0] == S->stratum_of({Rat(1, 2)}));
    CHECK(w01.value(w01.support()[0]) == ChainComplex::concentrated(1));
    auto w11 = omega_closed(segment(-1, 1), S);
    CHECK(w11.support().size() == 3);
    CHECK(w11.diagram().is_valid());
    auto all = omega_closed(segment(-2, 2), S);
    CHECK(all.support().size() == 7);
    CHECK_THROWS_WITH(omega_closed(HPolyhedron{1, {{1}, {-1}}, {Rat(1, 2), Rat(-1)}}, S), "refine arrangement");
    CHECK_THROWS(omega_closed(segment(1, 1), S));
}

TEST_CASE("stalks") {
    auto S = strata(p1(), Rat(-3), Rat(3));
    auto w01 = omega_closed(segment(0, 1), S);
    CHECK(homology(stalk(w01, {Rat(1, 2)})) == GradedGroup::free(1));
    CHECK(homology(stalk(w01, {Rat(0)})).is_zero());
    CHECK(homology(stalk(w01, {Rat(1)})).is_zero());
    auto sk = skyscraper(q({0}), S);
    CHECK(homology(stalk(sk, {Rat(0)})) == GradedGroup::free(0));
    CHECK_THROWS_AS(stalk(sk, {Rat(5, 2)}), std::out_of_range);
    CHECK_THROWS(skyscraper({Rat(1, 2)}, S));
}

TEST_CASE("global sections") {
    auto S = strata(p1(), Rat(-3), Rat(3));
    CHECK(homology(global_sections_window(skyscraper(q({0}), S))) == GradedGroup::free(0));
    // compactly supported cohomology of an open interval sits in degree 1; the [1] cancels it
    CHECK(homology(global_sections_window(omega_closed(segment(0, 1), S))) == GradedGroup::free(0));
    CHECK(homology(global_sections_window(SheafDiagram::zero(S))).is_zero());
    CHECK_THROWS(global_sections_window(omega_closed(segment(-3, 3), S)));
}

TEST_CASE("property: sections of omega of a box are Z in degree 0") {
    // relative nerve cohomology oracle: H(N(P), N(P - U)) for the open box U
    std::mt19937 rng(5);
    for (const Fan& F : {p2(), f1()}) {
        auto S = strata(F, Rat(-3), Rat(4));
        for (int it = 0; it < 4; ++it) {
            long a = static_cast<long>(rng() % 3) - 2, b = a + 1 + static_cast<long>(rng() % 2);
            long c = static_cast<long>(rng() % 3) - 2, d = c + 1 + static_cast<long>(rng() % 2);
            HPolyhedron Q{2, {{1, 0}, {-1, 0}, {0, 1}, {0, -1}}, {Rat(a), Rat(-b), Rat(c), Rat(-d)}};
            auto W = omega_closed(Q, S);
            CHECK(homology(global_sections_window(W)) == GradedGroup::free(0));
            std::vector<int> rest;
            std::vector<char> in(S->size(), 0);
            for (int s : W.support()) in[s] = 1;
            for (int s = 0; s < S->size(); ++s)
                if (!in[s]) rest.push_back(s);
            // N(P) is contractible, so H^k(N(P), N(rest)) = reduced H^{k-1}(N(rest))
            auto red = order_complex_cohomology(S->poset()->subposet(rest), true);
            CHECK(red == GradedGroup::free(-1));
        }
    }
}

TEST_CASE("boundary vanishing and generization") {
    auto S = strata(p2(), Rat(-3), Rat(4));
    Polytope P = divisor_to_polytope(p2(), Divisor{{1, 1, 1}});
    auto W = omega_closed(P, S);
    CHECK(W.diagram().is_valid());
    std::vector<char> in(S->size(), 0);
    for (int s : W.support()) in[s] = 1;
    for (int s = 0; s < S->size(); ++s) {
        // closure points on the boundary of P carry nothing
        const auto& st = S->stratum(s);
        bool on_boundary = P.contains(st.sample) && !as_polyhedron(P).interior_contains(st.sample);
        if (on_boundary) CHECK_FALSE(in[s]);
        if (in[s])
            for (int t : S->poset()->above(s)) CHECK(in[t]);
    }
    // compactly supported Euler characteristic of an open disk
    int chi = 0;
    for (int s : W.support()) chi += S->stratum(s).dim % 2 ? -1 : 1;
    CHECK(chi == 1);
}

TEST_CASE("mapping complexes") {
    auto S = strata(p1(), Rat(-3), Rat(3));
    auto sk = skyscraper(q({0}), S);
    CHECK(homology(mapping_complex_window(sk, sk)) == GradedGroup::free(0));
    // Ext^1 = Z, stored at homological -1
    CHECK(homology(mapping_complex_window(omega_closed(segment(-1, 1), S), sk)) == GradedGroup::free(-1));
    auto w01 = omega_closed(segment(0, 1), S);
    CHECK(homology(mapping_complex_window(w01, w01)) == GradedGroup::free(0));
    // the local cohomology of w01 at its boundary point 0 is Z in degree 0
    CHECK(homology(mapping_complex_window(sk, w01)) == GradedGroup::free(0));
    CHECK(homology(mapping_complex_window(skyscraper(q({2}), S), w01)).is_zero());
}

TEST_CASE("window stability") {
    auto S = strata(p2(), Rat(-2), Rat(3));
    auto B = strata(p2(), Rat(-4), Rat(5));
    Polytope P = divisor_to_polytope(p2(), Divisor{{0, 0, 1}});
    auto a = omega_closed(P, S), b = omega_closed(P, B);
    CHECK(homology(global_sections_window(a)) == homology(global_sections_window(b)));
    for (auto x : {QVec{Rat(1, 3), Rat(1, 3)}, QVec{Rat(0), Rat(0)}, QVec{Rat(-1), Rat(1, 2)}})
        CHECK(homology(stalk(a, x)) == homology(stalk(b, x)));
    auto sa = skyscraper(q({0, 0}), S), sb = skyscraper(q({0, 0}), B);
    CHECK(homology(mapping_complex_window(a, sa)) == homology(mapping_complex_window(b, sb)));
    // pullback onto the bigger window agrees with building there directly
    auto pb = pullback(a, B, ZVec{0, 0});
    for (int s = 0; s < B->size(); ++s) CHECK(pb.value(s) == b.value(s));
}

TEST_CASE("translation") {
    auto S = strata(p1(), Rat(-3), Rat(3));
    auto t = translate(omega_closed(segment(0, 1), S), ZVec{1});
    auto direct = omega_closed(segment(1, 2), t.strata_ptr());
    for (int s = 0; s < t.strata().size(); ++s) CHECK(t.value(s) == direct.value(s));
    auto S2 = strata(p1(), Rat(-3), Rat(3));
    auto moved = pullback(omega_closed(segment(0, 1), S), S2, ZVec{1});
    auto direct2 = omega_closed(segment(1, 2), S2);
    for (int s = 0; s < S2->size(); ++s) CHECK(moved.value(s) == direct2.value(s));
}

TEST_CASE("symbolic convolution") {
    auto F = std::make_shared<const Fan>(p1());
    int sp = F->find_cone({0}), sm = F->find_cone({1});
    auto a = SymbolicObject::cone(F, ZVec{0}, sp);
    auto b = SymbolicObject::cone(F, ZVec{0}, sm);
    CHECK(convolve_symbolic(a, b) == SymbolicObject::cone(F, ZVec{0}, 0));
    auto unit = SymbolicObject::point(F, ZVec{0});
    auto o1 = SymbolicObject::glued(F, Divisor{{0, 1}});
    auto moved = convolve_symbolic(SymbolicObject::point(F, ZVec{1}), o1);
    REQUIRE(moved.terms().size() == 1);
    auto P = divisor_to_polytope(*F, Divisor{moved.terms()[0].first.data});
    CHECK(P.vertices == std::vector<QVec>{q({1}), q({2})});
    CHECK(convolve_symbolic(o1, o1) == SymbolicObject::glued(F, Divisor{{0, 2}}));
    CHECK(divisor_to_polytope(*F, Divisor{{0, 2}}).vertices == std::vector<QVec>{q({0}), q({2})});
    CHECK(convolve_symbolic(unit, o1) == o1);
    // shifts and coefficients are bilinear
    auto s = a.shifted(2);
    s += b;
    auto prod = convolve_symbolic(s, a);
    auto expect = convolve_symbolic(a, a).shifted(2);
    expect += convolve_symbolic(b, a);
    CHECK(prod == expect);
    auto other = std::make_shared<const Fan>(p1());
    CHECK_THROWS(convolve_symbolic(a, SymbolicObject::point(other, ZVec{0})));
}

TEST_CASE("convolution laws on all cone pairs") {
    std::mt19937 rng(9);
    for (const Fan& G : {p1(), p2(), f1()}) {
        auto F = std::make_shared<const Fan>(G);
        const int n = F->rank();
        auto rnd = [&] {
            ZVec m(n);
            for (auto& x : m) x = static_cast<long>(rng() % 5) - 2;
            return m;
        };
        auto unit = SymbolicObject::point(F, ZVec(n, 0));
        for (int x = 0; x < F->num_cones(); ++x)
            for (int y = 0; y < F->num_cones(); ++y) {
                auto A = SymbolicObject::cone(F, rnd(), x);
                auto B = SymbolicObject::cone(F, rnd(), y);
                CHECK(convolve_symbolic(A, B) == convolve_symbolic(B, A));
                CHECK(convolve_symbolic(unit, A) == A);
                for (int z = 0; z < F->num_cones(); ++z) {
                    auto C = SymbolicObject::cone(F, rnd(), z);
                    CHECK(convolve_symbolic(convolve_symbolic(A, B), C) == convolve_symbolic(A, convolve_symbolic(B, C)));
                }
            }
    }
}

TEST_CASE("glued times cone matches polytope geometry") {
    for (const Fan& G : {p2(), f1()}) {
        auto F = std::make_shared<const Fan>(G);
        Divisor D{ZVec(F->num_rays(), 1)};
        Polytope P = divisor_to_polytope(*F, D);
        for (int c = 0; c < F->num_cones(); ++c) {
            auto prod = convolve_symbolic(SymbolicObject::glued(F, D), SymbolicObject::cone(F, ZVec(2, 0), c));
            REQUIRE(prod.terms().size() == 1);
            Term t = prod.terms()[0].first;
            HPolyhedron Q = term_support(*F, t);
            // P + c^v = m + c^v: m in P, and every vertex of P lies in m + c^v
            CHECK(P.contains(to_q(t.data)));
            for (const auto& v : P.vertices)
                for (std::size_t i = 0; i < Q.normals.size(); ++i) CHECK(dot(v, Q.normals[i]) >= Q.lower[i]);
        }
    }
}

TEST_CASE("json dump") {
    auto S = strata(p1(), Rat(-2), Rat(2));
    auto js = to_json(omega_closed(segment(-1, 1), S));
    CHECK(js.find("\"ranks\":{\"1\":1}") != std::string::npos);
    CHECK(js.find("\"matrices\":{\"1\":[[1]]}") != std::string::npos);
}
