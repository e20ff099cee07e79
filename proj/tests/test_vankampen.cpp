#include "stablepi1/errors.hpp"
#include "stablepi1/scenarios.hpp"
#include "stablepi1/vankampen.hpp"

#include <doctest.h>

#include <filesystem>

using namespace stablepi1;

namespace {

VanKampenPayload payload_of(const std::string& id) {
    Scenario s = load_scenario(std::filesystem::path(STABLEPI1_CATALOGUE_DIR) / (id + ".scn"));
    return std::get<VanKampenPayload>(s.payload);
}

Presentation trivial_xbar_pushout(const VanKampenPayload& p) {
    Pi1Result dbar = pi1_presentation(p.dbar);
    Pi1Result d = pi1_presentation(p.d);
    GroupHom to_d = induced_hom(p.gluing_map(), dbar, d);
    GroupHom to_one(dbar.group, Presentation::trivial(), std::vector<Word>(dbar.group.generator_count()));
    return glue_fundamental_group(Presentation::trivial(), to_one, to_d);
}

GluingComplex triangle() {
    GluingComplex c("triangle");
    for (const char* v : {"u", "v", "w"}) c.add_vertex(v);
    c.add_edge("x", "u", "v");
    c.add_edge("y", "v", "w");
    c.add_edge("z", "w", "u");
    c.set_basepoint("u");
    return c;
}

}  // namespace

TEST_CASE("fundamental groups of graphs and cells") {
    SUBCASE("a tree is simply connected") {
        GluingComplex t;
        for (const char* v : {"a", "b", "c", "d"}) t.add_vertex(v);
        t.add_edge("e1", "a", "b");
        t.add_edge("e2", "a", "c");
        t.add_edge("e3", "c", "d");
        t.set_basepoint("a");
        Pi1Result r = pi1_presentation(t);
        CHECK(r.group.generator_count() == 0);
        CHECK(todd_coxeter_order(r.group) == 1);
    }
    SUBCASE("a triangle has one loop; filling it kills it") {
        GluingComplex c = triangle();
        Pi1Result r = pi1_presentation(c);
        CHECK(r.group.generator_count() == 1);
        CHECK(abelianization(r.group) == AbelianInvariants{1, {}});
        c.add_cell("x y z");
        CHECK(todd_coxeter_order(pi1_presentation(c).group) == 1);
    }
    SUBCASE("the four-vertex conic pair has free rank three") {
        auto p = payload_of("P1");
        Presentation dbar = tietze_simplify(pi1_presentation(p.dbar).group);
        Presentation d = tietze_simplify(pi1_presentation(p.d).group);
        CHECK(abelianization(dbar) == AbelianInvariants{3, {}});
        CHECK(dbar.relators().empty());
        CHECK(abelianization(d) == AbelianInvariants{3, {}});
    }
    SUBCASE("graph rank is E - V + 1") {
        for (const char* id : {"P1", "P2", "P3", "X1.1", "X1.2", "X1.3", "X1.4", "X1.5"}) {
            CAPTURE(id);
            auto p = payload_of(id);
            for (const GluingComplex* c : {&p.dbar, &p.d}) {
                Pi1Result r = pi1_presentation(*c);
                CHECK(r.group.generator_count() == c->edges().size() - c->vertices().size() + 1);
                CHECK(r.group.relators().size() == c->cells().size());
            }
        }
    }
}

TEST_CASE("loops and rewriting") {
    GluingComplex c = triangle();
    Pi1Result r = pi1_presentation(c);
    REQUIRE(r.loops.size() == 1);
    CHECK(c.walk(c.basepoint(), r.loops[0]) == c.basepoint());
    CHECK(r.rewrite(c.path("x y z")) == r.rewrite(r.loops[0]));
    CHECK(r.rewrite(c.path("x y y^-1 x^-1")).empty());
    CHECK(r.rewrite(c.path("z^-1 y^-1 x^-1")) == r.rewrite(r.loops[0]).inverse());
    CHECK_FALSE(c.walk(c.basepoint(), c.path("y")));
    CHECK(c.format(c.path("x y^-1")) == "x y^-1");
}

TEST_CASE("cellular maps on edge paths") {
    SUBCASE("conic pair onto the quartic") {
        auto p = payload_of("P1");
        GluingMap m = p.gluing_map();
        CHECK(p.d.format(m.apply(p.dbar.path("a2 b1^-1"))) == "A B^-1");
    }
    SUBCASE("four lines") {
        auto p = payload_of("X1.5");
        GluingMap m = p.gluing_map();
        EdgePath loop = p.dbar.path("b1 g4 b2 a1");
        CHECK(p.dbar.walk(p.dbar.find_vertex("Q1").value(), loop) == p.dbar.find_vertex("Q1"));
        CHECK(p.d.format(m.apply(loop)) == "B G B A");
    }
    SUBCASE("the identity map induces the identity") {
        GluingComplex c = triangle();
        c.add_edge("w2", "u", "w");
        Pi1Result r = pi1_presentation(c);
        GluingMap id = GluingMap::from_labels(c, c, {{"x", "x"}, {"y", "y"}, {"z", "z"}, {"w2", "w2"}});
        GroupHom h = induced_hom(id, r, r);
        for (std::size_t g = 0; g < r.group.generator_count(); ++g) {
            Word gen(std::vector<Letter>{static_cast<Letter>(g + 1)});
            CHECK(h.apply(gen) == gen);
        }
    }
}

TEST_CASE("pushout groups of the plane cases") {
    CHECK(todd_coxeter_order(trivial_xbar_pushout(payload_of("P1"))) == 4);
    CHECK(is_cyclic_of_order(trivial_xbar_pushout(payload_of("P1")), 4));
    CHECK(todd_coxeter_order(trivial_xbar_pushout(payload_of("X1.3"))) == 3);
    CHECK(todd_coxeter_order(trivial_xbar_pushout(payload_of("X1.1"))) == 1);
    CHECK(todd_coxeter_order(trivial_xbar_pushout(payload_of("X1.5"))) == 5);
}

TEST_CASE("invariants do not depend on the basepoint") {
    auto p = payload_of("P1");
    const AbelianInvariants expected = abelianization(trivial_xbar_pushout(p));
    for (const auto& v : p.dbar.vertices()) {
        CAPTURE(v);
        VanKampenPayload q = p;
        q.dbar.set_basepoint(v);
        CHECK(abelianization(trivial_xbar_pushout(q)) == expected);
        CHECK(todd_coxeter_order(trivial_xbar_pushout(q)) == 4);
    }
}

TEST_CASE("malformed complexes and maps") {
    SUBCASE("disconnected") {
        GluingComplex c = triangle();
        c.add_vertex("island");
        CHECK_THROWS_AS(c.validate(), DisconnectedComplex);
        CHECK_THROWS_AS(pi1_presentation(c), DisconnectedComplex);
    }
    SUBCASE("cell boundary is not closed") {
        GluingComplex c = triangle();
        c.add_cell("x y");
        CHECK_THROWS_AS(c.validate(), ValidationError);
    }
    SUBCASE("unknown labels") {
        GluingComplex c = triangle();
        CHECK_THROWS(c.add_edge("q", "u", "nowhere"));
        CHECK_THROWS(c.path("nope"));
        CHECK_THROWS(c.set_basepoint("nowhere"));
    }
    SUBCASE("incidence is not preserved") {
        GluingComplex c = triangle();
        GluingComplex loop;
        loop.add_vertex("p");
        loop.add_vertex("q");
        loop.add_edge("s", "p", "q");
        loop.add_edge("t", "q", "p");
        loop.set_basepoint("p");
        // x -> s, y -> s cannot both hold: s does not start where it ends.
        CHECK_THROWS_AS(GluingMap::from_labels(c, loop, {{"x", "s"}, {"y", "s"}, {"z", "t"}}), IncompatibleMap);
        CHECK_THROWS_AS(GluingMap::from_labels(c, loop, {{"x", "s"}, {"y", "t"}}), IncompatibleMap);
        CHECK_NOTHROW(GluingMap::from_labels(c, loop, {{"x", "s"}, {"y", "t"}, {"z", "s t"}}));
    }
}
