#pragma once

// Randomised checks shared by the doctest suite and the acceptance runner.

#include "stablepi1/errors.hpp"
#include "stablepi1/fpgroup.hpp"
#include "stablepi1/intlin.hpp"
#include "stablepi1/scenarios.hpp"

#include <algorithm>
#include <filesystem>
#include <random>
#include <string>

namespace props {

using namespace stablepi1;

struct Outcome {
    bool passed = true;
    std::size_t cases = 0;
    std::string detail;

    void fail(const std::string& why) {
        if (passed) detail = why;
        passed = false;
    }
};

inline Word random_word(std::mt19937_64& rng, std::size_t generators, std::size_t max_len) {
    std::uniform_int_distribution<std::size_t> len(0, max_len), gen(0, generators - 1);
    std::bernoulli_distribution inv(0.5);
    std::vector<Letter> ls(len(rng));
    for (auto& l : ls) l = letter(gen(rng), inv(rng) ? -1 : 1);
    return Word(std::move(ls));
}

inline IntMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, long lo, long hi) {
    std::uniform_int_distribution<long> entry(lo, hi);
    IntMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m(i, j) = entry(rng);
    return m;
}

// reduce_word is idempotent, never longer, and w w^-1 reduces to the identity.
inline Outcome word_round_trips(std::uint64_t seed, std::size_t count = 1000) {
    std::mt19937_64 rng(seed);
    Outcome out;
    for (std::size_t i = 0; i < count; ++i, ++out.cases) {
        Word w = random_word(rng, 4, 30);
        Word r = reduce_word(w);
        if (reduce_word(r) != r) out.fail("not idempotent");
        if (r.size() > w.size()) out.fail("reduction grew a word");
        for (std::size_t k = 1; k < r.size(); ++k)
            if (r.letters()[k] == -r.letters()[k - 1]) out.fail("adjacent inverse pair survived");
        if (!reduce_word(w * w.inverse()).empty()) out.fail("w w^-1 is not trivial");
        if (!reduce_word(w.inverse() * r).empty()) out.fail("w and its reduction differ");
    }
    return out;
}

inline bool unimodular(const IntMatrix& m) {
    Integer d = determinant(m);
    return d == 1 || d == -1;
}

// U A V = D, U and V unimodular, D a divisibility chain, det preserved for square A.
inline Outcome snf_suite(std::uint64_t seed, std::size_t count = 500) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> dim(1, 6);
    Outcome out;
    for (std::size_t i = 0; i < count; ++i, ++out.cases) {
        const std::size_t m = dim(rng), n = dim(rng);
        IntMatrix a = random_matrix(rng, m, n, -9, 9);
        SnfResult s = smith_normal_form(a);
        if (s.U * a * s.V != s.D) out.fail("U A V != D for " + a.to_string());
        if (!unimodular(s.U) || !unimodular(s.V)) out.fail("transform not unimodular for " + a.to_string());
        auto diag = s.diagonal();
        for (std::size_t r = 0; r < m; ++r)
            for (std::size_t c = 0; c < n; ++c)
                if (r != c && s.D(r, c) != 0) out.fail("D not diagonal for " + a.to_string());
        for (std::size_t k = 0; k < diag.size(); ++k) {
            if (diag[k] < 0) out.fail("negative invariant factor");
            if (k + 1 < diag.size() && diag[k] == 0 && diag[k + 1] != 0) out.fail("zero before nonzero factor");
            if (k + 1 < diag.size() && diag[k] != 0 && !mpz_divisible_p(diag[k + 1].get_mpz_t(), diag[k].get_mpz_t()))
                out.fail("divisibility chain broken for " + a.to_string());
        }
        if (m == n) {
            Integer prod = 1;
            for (const auto& d : diag) prod *= d;
            if (prod != abs(determinant(a))) out.fail("product of factors != |det| for " + a.to_string());
        }
    }
    return out;
}

// Random finite abelian presentations: coset enumeration agrees with the invariant factors.
inline Outcome abelian_order_suite(std::uint64_t seed, std::size_t count = 100) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::size_t> gens(1, 3);
    Outcome out;
    while (out.cases < count) {
        const std::size_t k = gens(rng);
        IntMatrix rows = random_matrix(rng, k, k, -5, 5);
        Integer det = abs(determinant(rows));
        if (det == 0 || det > 60) continue;
        std::vector<Word> rels;
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = i + 1; j < k; ++j) rels.push_back(Word::commutator(Word::power(i, 1), Word::power(j, 1)));
        std::vector<std::size_t> order(k);
        for (std::size_t i = 0; i < k; ++i) order[i] = i;
        for (std::size_t r = 0; r < k; ++r) {
            std::shuffle(order.begin(), order.end(), rng);
            Word w;
            for (std::size_t c : order) w *= Word::power(c, rows(r, c).get_si());
            rels.push_back(w);
        }
        Presentation p(k, rels);
        AbelianInvariants ab = abelianization(p);
        std::size_t tc = todd_coxeter_order(p);
        ++out.cases;
        if (!ab.order() || *ab.order() != det || Integer(static_cast<unsigned long>(tc)) != det)
            out.fail("order mismatch on " + p.to_string() + ": coset count " + std::to_string(tc) + ", invariants " +
                     ab.to_string());
    }
    return out;
}

// Re-declaring the edges of both complexes in random order leaves the glued group unchanged.
inline Outcome edge_permutation_suite(const std::filesystem::path& catalogue, std::uint64_t seed, std::size_t trials = 8) {
    std::mt19937_64 rng(seed);
    Outcome out;
    for (const auto& file : catalogue_files(catalogue)) {
        Scenario s = load_scenario(file);
        if (s.kind != ScenarioKind::vankampen) continue;
        const auto& base = std::get<VanKampenPayload>(s.payload);
        Presentation ref = compute_group(s).group;
        const std::size_t ref_order = todd_coxeter_order(ref);
        const AbelianInvariants ref_ab = abelianization(ref);
        for (std::size_t t = 0; t < trials; ++t, ++out.cases) {
            auto shuffled = [&](const GluingComplex& c) {
                std::vector<std::size_t> order(c.edges().size());
                for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
                std::shuffle(order.begin(), order.end(), rng);
                return c.with_edge_order(order);
            };
            Scenario p = s;
            p.payload = VanKampenPayload{shuffled(base.dbar), shuffled(base.d), base.edge_map, base.vertex_map};
            Presentation g = compute_group(p).group;
            if (todd_coxeter_order(g) != ref_order || abelianization(g) != ref_ab)
                out.fail(s.id + ": invariants changed under edge permutation");
        }
    }
    return out;
}

}  // namespace props
