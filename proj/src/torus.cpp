#include "stablepi1/torus.hpp"

#include "stablepi1/errors.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>

namespace stablepi1 {

TorusLattice::TorusLattice(std::size_t rank_, std::vector<std::string> labels_, Integer denominator_)
    : rank(rank_), labels(std::move(labels_)), denominator(std::move(denominator_)) {
    if (rank < 2 || rank % 2 != 0) throw std::invalid_argument("torus lattice rank must be even and at least 2");
    if (labels.size() != rank) throw std::invalid_argument("one basis label per lattice direction");
    std::set<std::string> distinct(labels.begin(), labels.end());
    if (distinct.size() != labels.size()) throw std::invalid_argument("basis labels must be distinct");
    if (denominator <= 0) throw std::invalid_argument("denominator must be positive");
}

// --- affine maps -----------------------------------------------------------

AffineTorusMap::AffineTorusMap(IntMatrix linear, RatVector translation)
    : linear_(std::move(linear)), translation_(translation.mod_lattice()) {
    if (linear_.rows() != linear_.cols()) throw std::invalid_argument("linear part must be square");
    if (translation_.size() != linear_.rows()) throw std::invalid_argument("translation has wrong length");
}

AffineTorusMap AffineTorusMap::identity(std::size_t rank) {
    return {IntMatrix::identity(rank), RatVector::zero(rank)};
}

AffineTorusMap AffineTorusMap::translation(RatVector t) {
    std::size_t n = t.size();
    return {IntMatrix::identity(n), std::move(t)};
}

AffineTorusMap AffineTorusMap::linear_map(IntMatrix m) {
    std::size_t n = m.rows();
    return {std::move(m), RatVector::zero(n)};
}

bool AffineTorusMap::is_identity() const {
    return linear_ == IntMatrix::identity(rank()) && translation_.is_zero();
}

bool AffineTorusMap::has_fixed_point() const {
    // M x + t = x + lambda has a solution iff -t lies in image(M - I) + Z^n.
    IntMatrix shifted = linear_ - IntMatrix::identity(rank());
    return membership(-translation_, shifted.transpose(), IntMatrix::identity(rank()));
}

std::string AffineTorusMap::to_string() const {
    return "x -> " + linear_.to_string() + " x + " + translation_.to_string();
}

AffineTorusMap compose(const AffineTorusMap& f, const AffineTorusMap& g) {
    if (f.rank() != g.rank()) throw std::invalid_argument("composing maps of different rank");
    return {f.linear() * g.linear(), f.linear() * g.shift() + f.shift()};
}

std::size_t map_order(const AffineTorusMap& f, std::size_t cap) {
    if (cap == 0) throw std::invalid_argument("cap must be positive");
    AffineTorusMap power = f;
    for (std::size_t n = 1; n <= cap; ++n) {
        if (power.is_identity()) return n;
        power = compose(f, power);
    }
    throw OrderExceedsCap(cap);
}

std::vector<AffineTorusMap> generated_group(const std::vector<AffineTorusMap>& gens, std::size_t cap) {
    if (gens.empty()) throw std::invalid_argument("need at least one generator");
    const std::size_t n = gens.front().rank();
    std::vector<AffineTorusMap> elements{AffineTorusMap::identity(n)};
    std::set<std::string> seen{elements.front().to_string()};
    for (std::size_t i = 0; i < elements.size(); ++i) {
        for (const auto& g : gens) {
            AffineTorusMap h = compose(g, elements[i]);
            if (!seen.insert(h.to_string()).second) continue;
            if (elements.size() == cap) throw OrderExceedsCap(cap);
            elements.push_back(std::move(h));
        }
    }
    return elements;
}

bool is_free_action(const std::vector<AffineTorusMap>& gens, std::size_t cap) {
    for (const auto& g : generated_group(gens, cap))
        if (!g.is_identity() && g.has_fixed_point()) return false;
    return true;
}

Integer preimage_count(const IntMatrix& a, const RatVector& t) {
    if (a.rows() != a.cols() || t.size() != a.rows()) throw std::invalid_argument("preimage system has wrong shape");
    Integer det = determinant(a);
    if (det == 0) throw SingularMatrix();
    return abs(det);
}

AbelianInvariants isogeny_cokernel(const IntMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("isogeny matrix must be square");
    if (determinant(a) == 0) throw SingularMatrix();
    // Image lattice A Z^n is spanned by the columns of A.
    return cokernel_invariants(a.transpose(), a.rows());
}

// --- subtori and intersections ----------------------------------------------

SubtorusClass::SubtorusClass(IntMatrix rows) : rows_(std::move(rows)) {
    if (rows_.cols() % 2 != 0 || rows_.rows() * 2 != rows_.cols())
        throw std::invalid_argument("a subtorus class has half as many rows as the ambient rank");
    if (!same_lattice(rows_, saturation(rows_))) throw std::invalid_argument("subtorus lattice must be primitive");
}

Cycle& Cycle::add(const Integer& k, const SubtorusClass& c) {
    terms.emplace_back(k, c);
    return *this;
}

Cycle operator+(Cycle a, const Cycle& b) {
    a.terms.insert(a.terms.end(), b.terms.begin(), b.terms.end());
    return a;
}

Cycle operator*(const Integer& k, Cycle c) {
    for (auto& t : c.terms) t.first *= k;
    return c;
}

Integer intersection_number(const SubtorusClass& a, const SubtorusClass& b) {
    if (a.rows().cols() != 4 || b.rows().cols() != 4) throw std::invalid_argument("intersection numbers need a rank-4 torus");
    return abs(determinant(a.rows().stacked(b.rows())));
}

Integer intersection_number(const Cycle& a, const Cycle& b) {
    Integer total = 0;
    for (const auto& [ka, ca] : a.terms)
        for (const auto& [kb, cb] : b.terms) total += ka * kb * intersection_number(ca, cb);
    return total;
}

Integer descend_intersection(const Integer& upstairs, const Integer& degree) {
    if (degree <= 0) throw std::invalid_argument("cover degree must be positive");
    if (!mpz_divisible_p(upstairs.get_mpz_t(), degree.get_mpz_t()))
        throw std::invalid_argument("pulled-back intersection is not divisible by the cover degree");
    return upstairs / degree;
}

// --- bi-tri-elliptic configurations ------------------------------------------

void BiTriEllipticParams::validate() const {
    if (deg_phi < 1 || deg_phi_prime < 1) throw InvalidParams("isogeny degrees must be positive");
    if (parity == Parity::odd) {
        if (deg_phi + deg_phi_prime != 6 || deg_phi % 2 == 0)
            throw InvalidParams("odd case needs deg phi + deg phi' = 6 with deg phi odd");
    } else {
        if (deg_phi + deg_phi_prime != 3) throw InvalidParams("even case needs deg phi + deg phi' = 3");
        if (glue_choice > 1) throw InvalidParams("even case has two normalized glue subgroups");
    }
}

long twisting_number(const BiTriEllipticParams& p) {
    p.validate();
    // m = 4 deg(phi) / |F meet G|; G = F[2] in the odd case, |F meet G| = 2 in the even case.
    long meet = p.parity == Parity::odd ? 4 : 2;
    return 4 * p.deg_phi / meet;
}

namespace {

using Bits = GlueSubgroup::Bits;

Bits add_bits(const Bits& u, const Bits& v) {
    return {(u[0] + v[0]) % 2, (u[1] + v[1]) % 2, (u[2] + v[2]) % 2, (u[3] + v[3]) % 2};
}

bool is_zero(const Bits& b) { return b == Bits{0, 0, 0, 0}; }

// Half-lattice basis of D[2] x D'[2], as rows in real coordinates.
IntMatrix half_basis(const BiTriEllipticParams& p) {
    long d = p.deg_phi, dp = p.deg_phi_prime;
    if (p.parity == Parity::odd) return IntMatrix{{1, 0, 0, 0}, {0, dp, 0, 0}, {0, 0, d, 0}, {0, 0, 0, 1}};
    return IntMatrix{{dp, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, d, 0}, {0, 0, 0, 1}};
}

Bits to_bits(const IntMatrix& half, const std::vector<Integer>& point) {
    auto x = solve_left(half, RatVector(point));
    if (!x || !x->is_integral()) throw std::logic_error("point is not a half-lattice point");
    Bits b{};
    for (std::size_t i = 0; i < 4; ++i) {
        Integer r;
        mpz_fdiv_r_ui(r.get_mpz_t(), x->numerators()[i].get_mpz_t(), 2);
        b[i] = static_cast<int>(r.get_si());
    }
    return b;
}

std::vector<Bits> sorted_nonzero(const Bits& u, const Bits& v) {
    std::vector<Bits> e{u, v, add_bits(u, v)};
    std::sort(e.begin(), e.end());
    return e;
}

}  // namespace

std::vector<std::vector<Bits>> all_order4_subgroups() {
    std::set<std::vector<Bits>> found;
    for (int i = 1; i < 16; ++i)
        for (int j = i + 1; j < 16; ++j) {
            Bits u{(i >> 3) & 1, (i >> 2) & 1, (i >> 1) & 1, i & 1};
            Bits v{(j >> 3) & 1, (j >> 2) & 1, (j >> 1) & 1, j & 1};
            found.insert(sorted_nonzero(u, v));
        }
    return {found.begin(), found.end()};
}

std::vector<GlueSubgroup> enumerate_glue_subgroups(const BiTriEllipticParams& p, bool normalized) {
    p.validate();
    if (p.parity != Parity::even) throw InvalidParams("glue subgroups are enumerated only in the even case");

    IntMatrix half = half_basis(p);
    // F = C/<4, 2 tau> on the diagonal; F[2] is generated by the images of 2 and tau.
    const Bits xi = to_bits(half, {0, 1, 0, 1});
    const Bits zeta = to_bits(half, {2, 0, 2, 0});
    const std::set<Bits> f2{Bits{}, xi, zeta, add_bits(xi, zeta)};

    std::vector<GlueSubgroup> out;
    for (const auto& elements : all_order4_subgroups()) {
        bool ok = true;
        int meet_f = 1;  // zero is always shared
        for (const auto& e : elements) {
            if (is_zero({e[0], e[1], 0, 0}) || is_zero({0, 0, e[2], e[3]})) ok = false;  // meets an axis
            meet_f += static_cast<int>(f2.count(e));
        }
        if (!ok || meet_f != 2) continue;
        if (normalized && std::find(elements.begin(), elements.end(), xi) == elements.end()) continue;

        GlueSubgroup g{elements, IntMatrix(0, 4)};
        for (std::size_t k = 0; k < 2; ++k) {
            std::vector<Integer> lift(4);
            for (std::size_t i = 0; i < 4; ++i)
                for (std::size_t j = 0; j < 4; ++j) lift[j] += elements[k][i] * half(i, j);
            g.lifts.append_row(lift);
        }
        out.push_back(std::move(g));
    }
    return out;
}

EPlusLattices eplus_lattices(const BiTriEllipticParams& p) {
    p.validate();
    const long d = p.deg_phi, dp = p.deg_phi_prime;
    EPlusLattices l;
    l.h1_d_prime = IntMatrix{{0, 0, 2 * d, 0}, {0, 0, 0, 2}};
    if (p.parity == Parity::odd) {
        l.h1_d = IntMatrix{{2, 0, 0, 0}, {0, 2 * dp, 0, 0}};
        l.h1_f = IntMatrix{{2 * d, 0, 2 * d, 0}, {0, 2 * dp, 0, 2 * dp}};
        l.glue_lifts = IntMatrix{{d, 0, d, 0}, {0, dp, 0, dp}};  // G = F[2]
        l.glue_order_on_f = 4;
    } else {
        l.h1_d = IntMatrix{{2 * dp, 0, 0, 0}, {0, 2, 0, 0}};
        l.h1_f = IntMatrix{{4, 0, 4, 0}, {0, 2, 0, 2}};
        l.glue_lifts = enumerate_glue_subgroups(p, true).at(p.glue_choice).lifts;
        l.glue_order_on_f = 2;
    }
    l.h1_a_gens = l.h1_d.stacked(l.h1_d_prime).stacked(l.glue_lifts);
    l.h1_a = hermite_normal_form(l.h1_a_gens);

    // H_1(Fbar): the part of H_1(A) lying on the diagonal, i.e. saturate the diagonal inside H_1(A).
    IntMatrix diagonal_coords(0, 4);
    for (const auto& dir : {std::vector<Integer>{1, 0, 1, 0}, std::vector<Integer>{0, 1, 0, 1}}) {
        auto x = solve_left(l.h1_a, RatVector(dir));
        diagonal_coords.append_row(x->numerators());
    }
    l.h1_fbar = saturation(diagonal_coords) * l.h1_a;

    l.base_basis = IntMatrix(2, 2);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) l.base_basis(i, j) = l.h1_d(i, j) / 2;
    return l;
}

Presentation eplus_presentation(const BiTriEllipticParams& p) {
    EPlusLattices l = eplus_lattices(p);

    // Projection H_1(A) -> H_1(A)/H_1(Fbar) ~ Z^2 via Smith form of the Fbar coordinates.
    IntMatrix fbar_coords(0, 4);
    for (std::size_t i = 0; i < l.h1_fbar.rows(); ++i)
        fbar_coords.append_row(solve_left(l.h1_a, RatVector(l.h1_fbar.row(i)))->numerators());
    SnfResult snf = smith_normal_form(fbar_coords);

    enum { a, b, alpha, beta };
    std::vector<Word> rels{Word::commutator(Word::power(a, 1), Word::power(b, 1)),
                           Word::commutator(Word::power(alpha, 1), Word::power(beta, 1))};
    for (std::size_t i = 0; i < l.h1_a_gens.rows(); ++i) {
        auto gamma = l.h1_a_gens.row(i);
        auto down = solve_left(l.base_basis, RatVector(std::vector<Integer>{gamma[0], gamma[1]}));
        if (!down || !down->is_integral()) throw std::logic_error("projection leaves H_1(D/D[2])");
        auto coords = solve_left(l.h1_a, RatVector(gamma));
        RatVector q = *coords * snf.V;
        const auto& pi = down->numerators();
        Word rel = Word::power(a, pi[0].get_si()) * Word::power(b, pi[1].get_si()) *
                   (Word::power(alpha, q.numerators()[2].get_si()) * Word::power(beta, q.numerators()[3].get_si())).inverse();
        rels.push_back(reduce_word(rel));
    }
    return Presentation({"a", "b", "alpha", "beta"}, std::move(rels));
}

Integer theta_dot_fbar(const BiTriEllipticParams& p) {
    EPlusLattices l = eplus_lattices(p);
    IntMatrix product_basis = l.h1_d.stacked(l.h1_d_prime);

    IntMatrix f_rows(0, 4);
    for (std::size_t i = 0; i < l.h1_f.rows(); ++i) {
        auto x = solve_left(product_basis, RatVector(l.h1_f.row(i)));
        if (!x || !x->is_integral()) throw std::logic_error("F is not a sublattice of D x D'");
        f_rows.append_row(x->numerators());
    }
    SubtorusClass f(f_rows);
    SubtorusClass d_axis(IntMatrix{{1, 0, 0, 0}, {0, 1, 0, 0}});
    SubtorusClass d_prime_axis(IntMatrix{{0, 0, 1, 0}, {0, 0, 0, 1}});

    // Theta pulls back to twice the product polarisation; Fbar pulls back to |G|/|G meet F| translates of F.
    const Integer group_order = 4;
    Cycle theta_up = Integer(2) * (Cycle(d_axis) + Cycle(d_prime_axis));
    Cycle fbar_up = Integer(group_order / static_cast<long>(l.glue_order_on_f)) * Cycle(f);
    return descend_intersection(intersection_number(theta_up, fbar_up), group_order);
}

}  // namespace stablepi1
