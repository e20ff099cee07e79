#include "stablepi1/errors.hpp"
#include "stablepi1/torus.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace stablepi1;

namespace {

RatVector vec(std::initializer_list<long> v, long den = 1) { return RatVector(std::vector<Integer>(v.begin(), v.end()), den); }

// Z/2 x Z/2 example on E x E, coordinates (1, tau, 1', tau'), halves.
AffineTorusMap b1_e1() { return {IntMatrix::identity(4), vec({1, 0, 1, 0}, 2)}; }
AffineTorusMap b1_e2() { return {IntMatrix{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, -1, 0}, {0, 0, 0, -1}}, vec({0, 1, 0, 0}, 2)}; }
AffineTorusMap b1_sigma_bar() {
    return {IntMatrix{{0, 0, 1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}, {0, 1, 0, 0}}, vec({0, 1, 0, 0}, 2)};
}

// Z/3 x Z/3 example on E x E, E = C/Z[zeta], coordinates (1, zeta, 1', zeta'), thirds.
const IntMatrix rho{{0, -1}, {1, -1}};
AffineTorusMap b2_e1() { return {IntMatrix::identity(4), vec({1, -1, 1, -1}, 3)}; }
AffineTorusMap b2_e2() {
    return {IntMatrix{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, -1}, {0, 0, 1, -1}}, vec({1, 0, 0, 0}, 3)};
}

BiTriEllipticParams odd(long d) { return {d, 6 - d, Parity::odd, 0}; }
BiTriEllipticParams even(long d_prime, std::size_t glue = 0) { return {3 - d_prime, d_prime, Parity::even, glue}; }

using Bits = GlueSubgroup::Bits;

}  // namespace

TEST_CASE("torus lattices") {
    CHECK_NOTHROW(TorusLattice(4, {"1", "tau", "1'", "tau'"}, 2));
    CHECK_THROWS(TorusLattice(3, {"a", "b", "c"}));
    CHECK_THROWS(TorusLattice(2, {"a", "a"}));
    CHECK_THROWS(TorusLattice(2, {"a", "b"}, 0));
}

TEST_CASE("composition") {
    AffineTorusMap sq = compose(b1_e2(), b1_e2());
    CHECK(sq.linear() == IntMatrix::identity(4));
    CHECK(sq.is_identity());
    CHECK(compose(b1_sigma_bar(), AffineTorusMap::identity(4)) == b1_sigma_bar());
    CHECK(compose(AffineTorusMap::translation(vec({1, 0}, 3)), AffineTorusMap::translation(vec({1, 1}, 3))) ==
          AffineTorusMap::translation(vec({2, 1}, 3)));
    CHECK(AffineTorusMap::translation(vec({4, -1}, 3)).shift() == vec({1, 2}, 3));
    CHECK_THROWS(compose(AffineTorusMap::identity(2), AffineTorusMap::identity(4)));
}

TEST_CASE("composition is associative") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> e(-3, 3), n(0, 5);
    auto random_map = [&] {
        IntMatrix m(2, 2);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = 0; j < 2; ++j) m(i, j) = e(rng);
        return AffineTorusMap(m, vec({n(rng), n(rng)}, 6));
    };
    for (int i = 0; i < 50; ++i) {
        auto f = random_map(), g = random_map(), h = random_map();
        CHECK(compose(f, compose(g, h)) == compose(compose(f, g), h));
    }
}

TEST_CASE("orders of maps") {
    CHECK(map_order(b1_sigma_bar(), 100) == 4);
    CHECK(map_order(b2_e2(), 100) == 3);
    CHECK(map_order(AffineTorusMap::identity(2), 1) == 1);
    CHECK_THROWS_AS(map_order(AffineTorusMap::translation(vec({1, 0}, 7)), 5), OrderExceedsCap);
    CHECK_THROWS_AS(map_order(AffineTorusMap::linear_map(IntMatrix{{2, 1}, {1, 1}}), 50), OrderExceedsCap);
    // The order of an element divides the order of the group it generates with others.
    std::size_t group = generated_group({b2_e1(), b2_e2()}).size();
    CHECK(group % map_order(b2_e2(), 100) == 0);
}

TEST_CASE("free actions") {
    CHECK(generated_group({b1_e1(), b1_e2()}).size() == 4);
    CHECK(is_free_action({b1_e1(), b1_e2()}));
    CHECK(generated_group({b2_e1(), b2_e2()}).size() == 9);
    CHECK(is_free_action({b2_e1(), b2_e2()}));
    CHECK(is_free_action({b1_sigma_bar()}));
    CHECK_FALSE(is_free_action({AffineTorusMap::linear_map(IntMatrix{{-1, 0}, {0, -1}})}));
    CHECK(is_free_action({AffineTorusMap::translation(vec({1, 0}, 5))}));
    // e2 alone (without the translation part) fixes the origin.
    CHECK_FALSE(is_free_action({AffineTorusMap::linear_map(b1_e2().linear())}));
    CHECK_THROWS_AS(generated_group({AffineTorusMap::translation(vec({1}, 600))}), OrderExceedsCap);
}

TEST_CASE("fixed points") {
    CHECK(AffineTorusMap::identity(2).has_fixed_point());
    CHECK_FALSE(AffineTorusMap::translation(vec({1, 0}, 2)).has_fixed_point());
    // x -> -x + t always has a fixed point t/2.
    CHECK(AffineTorusMap(IntMatrix{{-1, 0}, {0, -1}}, vec({1, 1}, 3)).has_fixed_point());
    CHECK_FALSE(b1_e2().has_fixed_point());
}

TEST_CASE("preimage counts") {
    IntMatrix node_system = kronecker(IntMatrix{{1, -1}, {1, 1}}, IntMatrix::identity(2));
    CHECK(preimage_count(node_system, vec({1, 0, 0, 1}, 2)) == 4);
    IntMatrix one_minus_rho = IntMatrix::identity(2) - rho;
    CHECK(preimage_count(one_minus_rho, vec({1, 0}, 3)) == 3);
    CHECK(preimage_count(IntMatrix::identity(3), RatVector::zero(3)) == 1);
    CHECK_THROWS_AS(preimage_count(IntMatrix{{1, 1}, {1, 1}}, RatVector::zero(2)), SingularMatrix);

    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> n(-20, 20);
    for (int i = 0; i < 20; ++i) {
        RatVector t = vec({n(rng), n(rng), n(rng), n(rng)}, 7);
        CHECK(preimage_count(node_system, t) == 4);
    }
}

TEST_CASE("isogeny cokernels") {
    CHECK(isogeny_cokernel(IntMatrix{{1, 0}, {0, 5}}) == AbelianInvariants{0, {5}});
    AbelianInvariants phi = isogeny_cokernel(kronecker(IntMatrix{{1, 1}, {1, -1}}, IntMatrix::identity(2)));
    CHECK(phi == AbelianInvariants{0, {2, 2}});
    CHECK(*phi.order() == 4);
    CHECK(isogeny_cokernel(IntMatrix::identity(2)).is_trivial());
    CHECK_THROWS_AS(isogeny_cokernel(IntMatrix{{2, 4}, {1, 2}}), SingularMatrix);
}

TEST_CASE("intersection numbers") {
    SubtorusClass d_axis(IntMatrix{{1, 0, 0, 0}, {0, 1, 0, 0}});
    SubtorusClass d_prime_axis(IntMatrix{{0, 0, 1, 0}, {0, 0, 0, 1}});
    CHECK(intersection_number(d_axis, d_prime_axis) == 1);
    CHECK(intersection_number(d_axis, d_axis) == 0);

    SubtorusClass diagonal(IntMatrix{{1, 0, 1, 0}, {0, 1, 0, 1}});
    SubtorusClass antidiagonal(IntMatrix{{1, 0, -1, 0}, {0, 1, 0, -1}});
    CHECK(intersection_number(diagonal, antidiagonal) == 4);
    CHECK(intersection_number(antidiagonal, diagonal) == 4);

    // Diagonal against its image under (x, y) -> (x, zeta y): three points.
    SubtorusClass twisted(IntMatrix{{1, 0, 0, 1}, {0, 1, -1, -1}});
    CHECK(intersection_number(diagonal, twisted) == 3);

    Cycle theta = Integer(2) * (Cycle(d_axis) + Cycle(d_prime_axis));
    CHECK(intersection_number(theta, Cycle(diagonal)) == 4);
    CHECK(intersection_number(Cycle(diagonal), theta) == 4);
    Cycle two = Cycle(diagonal) + Cycle(diagonal);
    CHECK(intersection_number(theta, two) == 2 * intersection_number(theta, Cycle(diagonal)));

    CHECK(descend_intersection(12, 4) == 3);
    CHECK_THROWS(descend_intersection(10, 4));
    CHECK_THROWS(SubtorusClass(IntMatrix{{2, 0, 0, 0}, {0, 1, 0, 0}}));
    CHECK_THROWS(SubtorusClass(IntMatrix{{1, 0, 0, 0}}));
}

TEST_CASE("Theta.Fbar in both parities") {
    CHECK(theta_dot_fbar(odd(1)) == 3);
    CHECK(theta_dot_fbar(odd(3)) == 3);
    CHECK(theta_dot_fbar(odd(5)) == 3);
    CHECK(theta_dot_fbar(even(1)) == 3);
    CHECK(theta_dot_fbar(even(2)) == 3);
}

TEST_CASE("twisting numbers") {
    CHECK(twisting_number(odd(5)) == 5);
    CHECK(twisting_number(odd(3)) == 3);
    CHECK(twisting_number(odd(1)) == 1);
    CHECK(twisting_number(even(2)) == 2);  // d = 1
    CHECK(twisting_number(even(1)) == 4);  // d = 2
    CHECK_THROWS_AS(twisting_number({2, 4, Parity::odd, 0}), InvalidParams);
    CHECK_THROWS_AS(twisting_number({1, 1, Parity::even, 0}), InvalidParams);
    CHECK_THROWS_AS(twisting_number({0, 6, Parity::odd, 0}), InvalidParams);
}

TEST_CASE("glue subgroups") {
    const std::vector<Bits> g1{{0, 1, 0, 1}, {1, 0, 1, 0}, {1, 1, 1, 1}};  // <(tau,tau), (d',d)>
    const std::vector<Bits> g2{{0, 1, 0, 1}, {1, 0, 1, 1}, {1, 1, 1, 0}};  // <(tau,tau), (d'+tau,d)>
    for (long d_prime : {1L, 2L}) {
        CAPTURE(d_prime);
        auto all = enumerate_glue_subgroups(even(d_prime), false);
        CHECK(all.size() == 4);
        auto normalized = enumerate_glue_subgroups(even(d_prime), true);
        REQUIRE(normalized.size() == 2);
        CHECK(normalized[0].elements == g1);
        CHECK(normalized[1].elements == g2);
    }
    CHECK_THROWS_AS(enumerate_glue_subgroups(odd(3), false), InvalidParams);

    // Every order-4 subgroup of (Z/2)^4, counted independently: 15*14/(3*2) = 35.
    auto subgroups = all_order4_subgroups();
    CHECK(subgroups.size() == 35);
    for (long d_prime : {1L, 2L}) {
        auto all = enumerate_glue_subgroups(even(d_prime), false);
        for (const auto& normalized : enumerate_glue_subgroups(even(d_prime), true))
            CHECK(std::find(all.begin(), all.end(), normalized) != all.end());
        for (const auto& g : all) {
            REQUIRE(g.elements.size() == 3);
            Bits sum{};
            for (const auto& e : g.elements) {
                CHECK((e[0] | e[1]) != 0);  // misses the D' axis
                CHECK((e[2] | e[3]) != 0);  // misses the D axis
                for (std::size_t i = 0; i < 4; ++i) sum[i] ^= e[i];
            }
            CHECK(sum == Bits{});  // closed: the three nonzero elements add to zero
        }
    }
}

TEST_CASE("H1(A) matches the hand-written generator lists") {
    // Real coordinates (x_1, x_tau, y_1, y_tau).
    SUBCASE("odd, d = 1") {
        auto l = eplus_lattices(odd(1));
        CHECK(same_lattice(l.h1_a, IntMatrix{{0, 0, 2, 0}, {0, 0, 0, 2}, {1, 0, 1, 0}, {0, 5, 0, 5}}));
        CHECK(same_lattice(l.h1_fbar, IntMatrix{{1, 0, 1, 0}, {0, 5, 0, 5}}));
    }
    SUBCASE("odd, d = 3") {
        auto l = eplus_lattices(odd(3));
        CHECK(same_lattice(l.h1_a, IntMatrix{{2, 0, 0, 0}, {0, 0, 0, 2}, {3, 0, 3, 0}, {0, 3, 0, 3}}));
        CHECK(same_lattice(l.h1_fbar, IntMatrix{{3, 0, 3, 0}, {0, 3, 0, 3}}));
    }
    SUBCASE("odd, d = 5") {
        auto l = eplus_lattices(odd(5));
        CHECK(same_lattice(l.h1_a, IntMatrix{{2, 0, 0, 0}, {0, 2, 0, 0}, {5, 0, 5, 0}, {0, 1, 0, 1}}));
        CHECK(same_lattice(l.h1_fbar, IntMatrix{{5, 0, 5, 0}, {0, 1, 0, 1}}));
    }
    const IntMatrix fbar_even{{4, 0, 4, 0}, {0, 1, 0, 1}};
    SUBCASE("even, d' = 1, G1") {
        auto l = eplus_lattices(even(1, 0));
        CHECK(same_lattice(l.h1_a, IntMatrix{{2, 0, 0, 0}, {0, 2, 0, 0}, {1, 0, 2, 0}, {4, 0, 4, 0}, {0, 1, 0, 1}}));
        CHECK(same_lattice(l.h1_fbar, fbar_even));
    }
    SUBCASE("even, d' = 1, G2") {
        auto l = eplus_lattices(even(1, 1));
        CHECK(same_lattice(l.h1_a, IntMatrix{{2, 0, 0, 0}, {0, 0, 0, 2}, {1, 1, 2, 0}, {4, 0, 4, 0}, {0, 1, 0, 1}}));
        CHECK(same_lattice(l.h1_fbar, fbar_even));
    }
    SUBCASE("even, d' = 2, G1") {
        auto l = eplus_lattices(even(2, 0));
        CHECK(same_lattice(l.h1_a, IntMatrix{{0, 0, 2, 0}, {0, 0, 0, 2}, {2, 0, 1, 0}, {4, 0, 4, 0}, {0, 1, 0, 1}}));
        CHECK(same_lattice(l.h1_fbar, fbar_even));
    }
    SUBCASE("even, d' = 2, G2") {
        auto l = eplus_lattices(even(2, 1));
        CHECK(same_lattice(l.h1_a, IntMatrix{{0, 0, 2, 0}, {0, 0, 0, 2}, {2, 1, 1, 0}, {4, 0, 4, 0}, {0, 1, 0, 1}}));
        CHECK(same_lattice(l.h1_fbar, fbar_even));
    }
}

TEST_CASE("pushout presentations") {
    auto order_of = [](const BiTriEllipticParams& p) {
        Presentation g = eplus_presentation(p);
        CHECK(g.generator_count() == 4);
        CHECK(g.relators().size() == 8);
        return abelianization(g);
    };
    CHECK(order_of(odd(1)).is_trivial());
    CHECK(order_of(odd(3)) == AbelianInvariants{0, {3}});
    CHECK(order_of(odd(5)) == AbelianInvariants{0, {5}});
    for (std::size_t glue : {0u, 1u}) {
        CHECK(order_of(even(1, glue)) == AbelianInvariants{0, {4}});
        CHECK(order_of(even(2, glue)) == AbelianInvariants{0, {2}});
    }
    CHECK(todd_coxeter_order(eplus_presentation(odd(5))) == 5);

    // The relation rows alone (commutators dropped) already have cokernel Z/3 for d = 3.
    Presentation g = eplus_presentation(odd(3));
    IntMatrix rows = exponent_matrix(g);
    CHECK(cokernel_invariants(rows, 4) == AbelianInvariants{0, {3}});
}
