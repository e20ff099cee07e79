#pragma once

// Finitely presented groups.

#include "stablepi1/intlin.hpp"

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace stablepi1 {

// A letter is a signed, 1-based generator index: +(g+1) for g, -(g+1) for g^-1.
using Letter = std::int32_t;

constexpr Letter letter(std::size_t generator, int sign = 1) {
    return sign > 0 ? static_cast<Letter>(generator + 1) : -static_cast<Letter>(generator + 1);
}
constexpr std::size_t generator_of(Letter l) { return static_cast<std::size_t>(l > 0 ? l : -l) - 1; }
constexpr int sign_of(Letter l) { return l > 0 ? 1 : -1; }

class Word {
public:
    Word() = default;
    explicit Word(std::vector<Letter> letters) : letters_(std::move(letters)) {}

    static Word power(std::size_t generator, long exponent);
    static Word commutator(const Word& a, const Word& b);  // a b a^-1 b^-1

    const std::vector<Letter>& letters() const noexcept { return letters_; }
    std::size_t size() const noexcept { return letters_.size(); }
    bool empty() const noexcept { return letters_.empty(); }

    Word inverse() const;
    Word operator*(const Word& rhs) const;
    Word& operator*=(const Word& rhs);

    friend bool operator==(const Word&, const Word&) = default;
    friend auto operator<=>(const Word&, const Word&) = default;

private:
    std::vector<Letter> letters_;
};

Word reduce_word(const Word& w);
// Freely and cyclically reduced.
Word cyclically_reduce(const Word& w);

class Presentation {
public:
    Presentation() = default;
    // Default names x0, x1, ... when `names` is empty. Relators are stored reduced; empty ones are dropped.
    Presentation(std::size_t generator_count, std::vector<Word> relators, std::vector<std::string> names = {});
    Presentation(std::vector<std::string> names, std::vector<Word> relators);

    static Presentation trivial() { return {}; }
    static Presentation free(std::size_t rank) { return Presentation(rank, {}); }

    std::size_t generator_count() const noexcept { return names_.size(); }
    const std::vector<std::string>& generator_names() const noexcept { return names_; }
    const std::vector<Word>& relators() const noexcept { return relators_; }

    // Parse a word such as "G^2 B^2" or "B^-1 A" in this presentation's names.
    // Tokens are separated by whitespace, '*' or '.'.
    Word word(std::string_view text) const;
    std::string format(const Word& w) const;
    std::string to_string() const;

private:
    std::vector<std::string> names_;
    std::vector<Word> relators_;
};

// Builds a presentation from relator strings over the given names.
Presentation parse_presentation(const std::vector<std::string>& names, const std::vector<std::string>& relators);

class GroupHom {
public:
    GroupHom(Presentation source, Presentation target, std::vector<Word> images);

    const Presentation& source() const noexcept { return source_; }
    const Presentation& target() const noexcept { return target_; }
    const std::vector<Word>& images() const noexcept { return images_; }

    Word apply(const Word& w) const;
    // Every source relator maps to a word trivial in the abelianized target.
    bool respects_relators_abelian() const;
    // Every source relator maps to the identity (Todd-Coxeter on the target; target must be finite).
    bool respects_relators(std::size_t max_cosets) const;

private:
    Presentation source_;
    Presentation target_;
    std::vector<Word> images_;
};

constexpr std::size_t default_max_cosets = 1'000'000;

// Exponent-sum matrix: one row per relator, one column per generator.
IntMatrix exponent_matrix(const Presentation& p);
AbelianInvariants abelianization(const Presentation& p);

Presentation quotient_by_normal_closure(const Presentation& p, const std::vector<Word>& words);

Presentation amalgamated_product(const Presentation& a, const Presentation& b, const Presentation& c,
                                 const GroupHom& f, const GroupHom& g);

// Order of the group by HLT coset enumeration over the trivial subgroup.
std::size_t todd_coxeter_order(const Presentation& p, std::size_t max_cosets = default_max_cosets);

// Does w represent the identity? Only meaningful for finite groups.
bool is_identity(const Presentation& p, const Word& w, std::size_t max_cosets = default_max_cosets);

bool is_cyclic_of_order(const Presentation& p, std::size_t n, std::size_t max_cosets = default_max_cosets);

Presentation tietze_simplify(const Presentation& p);

}  // namespace stablepi1
