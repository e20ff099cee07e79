#pragma once

// Complex tori through their integral first homology: lattices, affine maps,
// subtori and the bi-tri-elliptic lattice arithmetic.

#include "stablepi1/fpgroup.hpp"
#include "stablepi1/intlin.hpp"

#include <array>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace stablepi1 {

struct TorusLattice {
    std::size_t rank = 2;
    std::vector<std::string> labels;
    // Global denominator clearing torsion coordinates; see RatVector.
    Integer denominator = 1;

    TorusLattice(std::size_t rank, std::vector<std::string> labels, Integer denominator = 1);
};

// x -> M x + t on R^n / Z^n; t is kept reduced mod Z^n.
class AffineTorusMap {
public:
    AffineTorusMap(IntMatrix linear, RatVector translation);

    static AffineTorusMap identity(std::size_t rank);
    static AffineTorusMap translation(RatVector t);
    static AffineTorusMap linear_map(IntMatrix m);

    std::size_t rank() const noexcept { return linear_.rows(); }
    const IntMatrix& linear() const noexcept { return linear_; }
    const RatVector& shift() const noexcept { return translation_; }
    bool is_identity() const;
    bool has_fixed_point() const;

    friend bool operator==(const AffineTorusMap&, const AffineTorusMap&) = default;
    std::string to_string() const;

private:
    IntMatrix linear_;
    RatVector translation_;
};

// f after g.
AffineTorusMap compose(const AffineTorusMap& f, const AffineTorusMap& g);

std::size_t map_order(const AffineTorusMap& f, std::size_t cap);

constexpr std::size_t default_closure_cap = 512;

// All elements of the group generated by `gens`, identity first.
std::vector<AffineTorusMap> generated_group(const std::vector<AffineTorusMap>& gens,
                                            std::size_t cap = default_closure_cap);

bool is_free_action(const std::vector<AffineTorusMap>& gens, std::size_t cap = default_closure_cap);

// Number of solutions of A x = t on the torus.
Integer preimage_count(const IntMatrix& a, const RatVector& t);

AbelianInvariants isogeny_cokernel(const IntMatrix& a);

// A real 2-dimensional subtorus direction of a rank-4 torus, given by a primitive sublattice.
class SubtorusClass {
public:
    explicit SubtorusClass(IntMatrix rows);
    const IntMatrix& rows() const noexcept { return rows_; }

private:
    IntMatrix rows_;
};

// Formal sum of subtorus classes with multiplicities.
struct Cycle {
    std::vector<std::pair<Integer, SubtorusClass>> terms;

    Cycle() = default;
    Cycle(SubtorusClass c) { terms.emplace_back(1, std::move(c)); }  // NOLINT: a class is a cycle
    Cycle& add(const Integer& k, const SubtorusClass& c);
    friend Cycle operator+(Cycle a, const Cycle& b);
    friend Cycle operator*(const Integer& k, Cycle c);
};

Integer intersection_number(const SubtorusClass& a, const SubtorusClass& b);
Integer intersection_number(const Cycle& a, const Cycle& b);

// Downstairs intersection from the pulled-back product under a cover of the given degree.
Integer descend_intersection(const Integer& upstairs, const Integer& degree);

// --- bi-tri-elliptic configurations ----------------------------------------

enum class Parity { odd, even };

struct BiTriEllipticParams {
    long deg_phi = 1;        // d
    long deg_phi_prime = 5;  // d'
    Parity parity = Parity::odd;
    std::size_t glue_choice = 0;  // index into the normalized glue subgroups (even case)

    void validate() const;
};

long twisting_number(const BiTriEllipticParams& p);

// An order-4 subgroup of D[2] x D'[2]. Elements are bit vectors over the half-lattice
// basis (a_1, a_2 | b_1, b_2) of the two factors.
struct GlueSubgroup {
    using Bits = std::array<int, 4>;
    std::vector<Bits> elements;  // the three nonzero elements, sorted
    IntMatrix lifts;             // two generators in real coordinates (x_1, x_tau, y_1, y_tau)

    friend bool operator==(const GlueSubgroup& a, const GlueSubgroup& b) { return a.elements == b.elements; }
};

std::vector<GlueSubgroup> enumerate_glue_subgroups(const BiTriEllipticParams& p, bool normalized);

// Every order-4 subgroup of (Z/2)^4, by brute force (35 of them).
std::vector<std::vector<GlueSubgroup::Bits>> all_order4_subgroups();

// Homology lattices of the construction, in real coordinates (x_1, x_tau, y_1, y_tau) of C^2.
struct EPlusLattices {
    IntMatrix h1_d;         // H_1(D)
    IntMatrix h1_d_prime;   // H_1(D')
    IntMatrix h1_f;         // H_1(F), on the diagonal
    IntMatrix glue_lifts;   // lifts of generators of G
    IntMatrix h1_a;         // H_1(A), Hermite basis
    IntMatrix h1_a_gens;    // generating list h1_d + h1_d_prime + glue_lifts
    IntMatrix h1_fbar;      // H_1(A) on the diagonal
    IntMatrix base_basis;   // basis (a, b) of H_1(D/D[2]) in the first factor
    std::size_t glue_order_on_f = 0;  // |G meet F|
};

EPlusLattices eplus_lattices(const BiTriEllipticParams& p);

Presentation eplus_presentation(const BiTriEllipticParams& p);

// Theta . Fbar computed upstairs on D x D' and descended along the degree-|G| quotient.
Integer theta_dot_fbar(const BiTriEllipticParams& p);

}  // namespace stablepi1
