#include "property_suites.hpp"

#include <doctest.h>

namespace {

void check(const props::Outcome& o) {
    INFO(o.detail);
    CHECK(o.cases > 0);
    CHECK(o.passed);
}

}  // namespace

TEST_CASE("free reduction round trips") {
    for (std::uint64_t seed : {1u, 2u, 3u}) check(props::word_round_trips(seed));
}

TEST_CASE("smith normal form invariants") {
    for (std::uint64_t seed : {10u, 11u}) check(props::snf_suite(seed));
}

TEST_CASE("coset enumeration agrees with determinants on abelian presentations") {
    check(props::abelian_order_suite(20));
}

TEST_CASE("edge order does not change computed groups") {
    check(props::edge_permutation_suite(STABLEPI1_CATALOGUE_DIR, 30));
}
