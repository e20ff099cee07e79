#include "stablepi1/fpgroup.hpp"

#include "stablepi1/errors.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace stablepi1 {

// --- words -----------------------------------------------------------------

Word Word::power(std::size_t generator, long exponent) {
    std::vector<Letter> ls(static_cast<std::size_t>(exponent < 0 ? -exponent : exponent),
                           letter(generator, exponent < 0 ? -1 : 1));
    return Word(std::move(ls));
}

Word Word::commutator(const Word& a, const Word& b) { return reduce_word(a * b * a.inverse() * b.inverse()); }

Word Word::inverse() const {
    std::vector<Letter> ls(letters_.rbegin(), letters_.rend());
    for (auto& l : ls) l = -l;
    return Word(std::move(ls));
}

Word Word::operator*(const Word& rhs) const {
    Word w = *this;
    w *= rhs;
    return w;
}

Word& Word::operator*=(const Word& rhs) {
    letters_.insert(letters_.end(), rhs.letters_.begin(), rhs.letters_.end());
    return *this;
}

Word reduce_word(const Word& w) {
    std::vector<Letter> out;
    out.reserve(w.size());
    for (Letter l : w.letters()) {
        if (!out.empty() && out.back() == -l)
            out.pop_back();
        else
            out.push_back(l);
    }
    return Word(std::move(out));
}

Word cyclically_reduce(const Word& w) {
    Word reduced = reduce_word(w);
    const auto& ls = reduced.letters();
    std::size_t lo = 0, hi = ls.size();
    while (hi - lo >= 2 && ls[lo] == -ls[hi - 1]) {
        ++lo;
        --hi;
    }
    return Word(std::vector<Letter>(ls.begin() + static_cast<std::ptrdiff_t>(lo),
                                    ls.begin() + static_cast<std::ptrdiff_t>(hi)));
}

// --- presentations ---------------------------------------------------------

namespace {

std::vector<std::string> default_names(std::size_t n) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i));
    return names;
}

}  // namespace

Presentation::Presentation(std::size_t generator_count, std::vector<Word> relators, std::vector<std::string> names)
    : Presentation(names.empty() ? default_names(generator_count) : std::move(names), std::move(relators)) {
    if (names_.size() != generator_count) throw std::invalid_argument("generator name count mismatch");
}

Presentation::Presentation(std::vector<std::string> names, std::vector<Word> relators) : names_(std::move(names)) {
    for (const auto& r : relators) {
        for (Letter l : r.letters())
            if (l == 0 || generator_of(l) >= names_.size())
                throw std::invalid_argument("relator letter outside the generator range");
        Word c = cyclically_reduce(r);
        if (!c.empty()) relators_.push_back(std::move(c));
    }
}

Word Presentation::word(std::string_view text) const {
    std::vector<Letter> ls;
    std::size_t i = 0;
    auto is_sep = [](char ch) { return std::isspace(static_cast<unsigned char>(ch)) || ch == '*' || ch == '.'; };
    while (i < text.size()) {
        if (is_sep(text[i])) {
            ++i;
            continue;
        }
        std::size_t start = i;
        while (i < text.size() && !is_sep(text[i]) && text[i] != '^') ++i;
        std::string_view name = text.substr(start, i - start);
        auto it = std::find(names_.begin(), names_.end(), name);
        if (it == names_.end()) throw std::invalid_argument("unknown generator '" + std::string(name) + "'");
        long exponent = 1;
        if (i < text.size() && text[i] == '^') {
            ++i;
            std::size_t e0 = i;
            if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
            while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
            std::string_view digits = text.substr(e0, i - e0);
            if (!digits.empty() && digits.front() == '+') digits.remove_prefix(1);
            auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), exponent);
            if (ec != std::errc() || ptr != digits.data() + digits.size())
                throw std::invalid_argument("bad exponent in '" + std::string(text) + "'");
        }
        auto g = static_cast<std::size_t>(it - names_.begin());
        for (long k = 0; k < (exponent < 0 ? -exponent : exponent); ++k) ls.push_back(letter(g, exponent < 0 ? -1 : 1));
    }
    return Word(std::move(ls));
}

std::string Presentation::format(const Word& w) const {
    if (w.empty()) return "1";
    std::ostringstream out;
    const auto& ls = w.letters();
    for (std::size_t i = 0; i < ls.size();) {
        std::size_t j = i;
        while (j < ls.size() && ls[j] == ls[i]) ++j;
        long e = static_cast<long>(j - i) * sign_of(ls[i]);
        out << (i ? " " : "") << names_[generator_of(ls[i])];
        if (e != 1) out << '^' << e;
        i = j;
    }
    return out.str();
}

std::string Presentation::to_string() const {
    std::ostringstream out;
    out << "< ";
    for (std::size_t i = 0; i < names_.size(); ++i) out << (i ? ", " : "") << names_[i];
    out << " | ";
    for (std::size_t i = 0; i < relators_.size(); ++i) out << (i ? ", " : "") << format(relators_[i]);
    out << " >";
    return out.str();
}

Presentation parse_presentation(const std::vector<std::string>& names, const std::vector<std::string>& relators) {
    Presentation shell(names, {});
    std::vector<Word> rels;
    for (const auto& r : relators) rels.push_back(shell.word(r));
    return Presentation(names, std::move(rels));
}

// --- homomorphisms ---------------------------------------------------------

GroupHom::GroupHom(Presentation source, Presentation target, std::vector<Word> images)
    : source_(std::move(source)), target_(std::move(target)), images_(std::move(images)) {
    if (images_.size() != source_.generator_count())
        throw std::invalid_argument("homomorphism needs one image per source generator");
    for (auto& w : images_) {
        for (Letter l : w.letters())
            if (l == 0 || generator_of(l) >= target_.generator_count())
                throw std::invalid_argument("image letter outside the target generators");
        w = reduce_word(w);
    }
}

Word GroupHom::apply(const Word& w) const {
    Word out;
    for (Letter l : w.letters()) out *= sign_of(l) > 0 ? images_[generator_of(l)] : images_[generator_of(l)].inverse();
    return reduce_word(out);
}

bool GroupHom::respects_relators_abelian() const {
    IntMatrix target_rel = exponent_matrix(target_);
    const std::size_t n = target_.generator_count();
    for (const auto& r : source_.relators()) {
        Word img = apply(r);
        std::vector<Integer> v(n);
        for (Letter l : img.letters()) v[generator_of(l)] += sign_of(l);
        if (!membership(RatVector(v), IntMatrix(0, n), target_rel.rows() ? target_rel : IntMatrix(0, n))) return false;
    }
    return true;
}

bool GroupHom::respects_relators(std::size_t max_cosets) const {
    for (const auto& r : source_.relators())
        if (!is_identity(target_, apply(r), max_cosets)) return false;
    return true;
}

// --- abelian invariants, quotients, products -------------------------------

IntMatrix exponent_matrix(const Presentation& p) {
    IntMatrix m(p.relators().size(), p.generator_count());
    for (std::size_t i = 0; i < p.relators().size(); ++i)
        for (Letter l : p.relators()[i].letters()) m(i, generator_of(l)) += sign_of(l);
    return m;
}

AbelianInvariants abelianization(const Presentation& p) {
    return cokernel_invariants(exponent_matrix(p), p.generator_count());
}

Presentation quotient_by_normal_closure(const Presentation& p, const std::vector<Word>& words) {
    std::vector<Word> rels = p.relators();
    rels.insert(rels.end(), words.begin(), words.end());
    return Presentation(p.generator_names(), std::move(rels));
}

namespace {

Word shifted(const Word& w, std::size_t offset) {
    std::vector<Letter> ls = w.letters();
    for (auto& l : ls) l = letter(generator_of(l) + offset, sign_of(l));
    return Word(std::move(ls));
}

}  // namespace

Presentation amalgamated_product(const Presentation& a, const Presentation& b, const Presentation& c,
                                 const GroupHom& f, const GroupHom& g) {
    if (f.source().generator_count() != c.generator_count() || g.source().generator_count() != c.generator_count())
        throw std::invalid_argument("amalgamating maps must be defined on the common subgroup");
    if (f.target().generator_count() != a.generator_count() || g.target().generator_count() != b.generator_count())
        throw std::invalid_argument("amalgamating maps land in the wrong factors");

    const std::size_t offset = a.generator_count();
    std::vector<std::string> names = a.generator_names();
    std::set<std::string> taken(names.begin(), names.end());
    for (std::string n : b.generator_names()) {
        while (taken.count(n)) n += "'";
        taken.insert(n);
        names.push_back(std::move(n));
    }
    std::vector<Word> rels = a.relators();
    for (const auto& r : b.relators()) rels.push_back(shifted(r, offset));
    for (std::size_t i = 0; i < c.generator_count(); ++i)
        rels.push_back(f.images()[i] * shifted(g.images()[i], offset).inverse());
    return Presentation(std::move(names), std::move(rels));
}

// --- coset enumeration -----------------------------------------------------

namespace {

class CosetEnumerator {
public:
    CosetEnumerator(const Presentation& p, std::size_t max_cosets)
        : cols_(2 * p.generator_count()), limit_(max_cosets) {
        if (max_cosets == 0) throw std::invalid_argument("max_cosets must be positive");
        for (const auto& r : p.relators()) {
            std::vector<int> cs;
            for (Letter l : r.letters()) cs.push_back(column(l));
            relators_.push_back(std::move(cs));
        }
        new_row();
    }

    static int column(Letter l) { return static_cast<int>(2 * generator_of(l) + (l > 0 ? 0 : 1)); }

    // Runs HLT to completion and returns the number of cosets.
    std::size_t run() {
        for (std::size_t c = 0; c < parent_.size(); ++c) {
            for (;;) {
                try {
                    process(static_cast<int>(c));
                    break;
                } catch (const OutOfSpace&) {
                    std::size_t before = live_;
                    lookahead();
                    c = compact(c);
                    if (live_ >= before && live_ >= limit_) throw CosetLimitExceeded(limit_);
                    if (c == parent_.size()) break;
                }
            }
        }
        compact(0);
        return live_;
    }

    // Coset reached from coset 0 by reading w; requires a completed table.
    int trace(const Word& w) const {
        int c = 0;
        for (Letter l : w.letters()) c = at(c, column(l));
        return c;
    }

private:
    struct OutOfSpace {};

    int& at(int c, int x) { return table_[static_cast<std::size_t>(c) * cols_ + static_cast<std::size_t>(x)]; }
    int at(int c, int x) const { return table_[static_cast<std::size_t>(c) * cols_ + static_cast<std::size_t>(x)]; }
    bool alive(int c) const { return parent_[static_cast<std::size_t>(c)] == c; }

    int new_row() {
        int d = static_cast<int>(parent_.size());
        parent_.push_back(d);
        table_.resize(table_.size() + cols_, -1);
        ++live_;
        return d;
    }

    int define(int c, int x) {
        if (live_ >= limit_) throw OutOfSpace{};
        int d = new_row();
        at(c, x) = d;
        at(d, x ^ 1) = c;
        return d;
    }

    int rep(int c) {
        int r = c;
        while (parent_[static_cast<std::size_t>(r)] != r) r = parent_[static_cast<std::size_t>(r)];
        while (parent_[static_cast<std::size_t>(c)] != r) {
            int next = parent_[static_cast<std::size_t>(c)];
            parent_[static_cast<std::size_t>(c)] = r;
            c = next;
        }
        return r;
    }

    void merge(int k, int l) {
        k = rep(k);
        l = rep(l);
        if (k == l) return;
        if (k > l) std::swap(k, l);
        parent_[static_cast<std::size_t>(l)] = k;
        queue_.push_back(l);
        --live_;
    }

    void coincidence(int a, int b) {
        queue_.clear();
        merge(a, b);
        for (std::size_t i = 0; i < queue_.size(); ++i) {
            int e = queue_[i];
            for (int x = 0; x < static_cast<int>(cols_); ++x) {
                int f = at(e, x);
                if (f < 0) continue;
                at(f, x ^ 1) = -1;
                int e1 = rep(e), f1 = rep(f);
                if (at(e1, x) >= 0)
                    merge(f1, at(e1, x));
                else if (at(f1, x ^ 1) >= 0)
                    merge(e1, at(f1, x ^ 1));
                else {
                    at(e1, x) = f1;
                    at(f1, x ^ 1) = e1;
                }
            }
        }
        queue_.clear();
    }

    // HLT scan of relator w at coset c; without `fill` it only deduces.
    void scan(int c, const std::vector<int>& w, bool fill) {
        if (w.empty()) return;
        int f = c, b = c;
        int i = 0, j = static_cast<int>(w.size()) - 1;
        for (;;) {
            while (i <= j && at(f, w[static_cast<std::size_t>(i)]) >= 0) f = at(f, w[static_cast<std::size_t>(i++)]);
            if (i > j) {
                if (f != b) coincidence(f, b);
                return;
            }
            while (j >= i && at(b, w[static_cast<std::size_t>(j)] ^ 1) >= 0) b = at(b, w[static_cast<std::size_t>(j--)] ^ 1);
            if (j < i) {
                coincidence(f, b);
                return;
            }
            if (i == j) {
                at(f, w[static_cast<std::size_t>(i)]) = b;
                at(b, w[static_cast<std::size_t>(i)] ^ 1) = f;
                return;
            }
            if (!fill) return;
            define(f, w[static_cast<std::size_t>(i)]);
        }
    }

    void process(int c) {
        for (const auto& r : relators_) {
            if (!alive(c)) return;
            scan(c, r, true);
        }
        if (!alive(c)) return;
        for (int x = 0; x < static_cast<int>(cols_); ++x)
            if (at(c, x) < 0) define(c, x);
    }

    void lookahead() {
        for (std::size_t c = 0; c < parent_.size(); ++c)
            for (const auto& r : relators_) {
                if (!alive(static_cast<int>(c))) break;
                scan(static_cast<int>(c), r, false);
            }
    }

    // Renumber live cosets consecutively; returns the new index of the first live coset at or after `c`.
    std::size_t compact(std::size_t c) {
        std::vector<int> index(parent_.size(), -1);
        int next = 0;
        std::size_t new_c = 0;
        bool found = false;
        for (std::size_t i = 0; i < parent_.size(); ++i) {
            if (!found && i >= c && alive(static_cast<int>(i))) {
                new_c = static_cast<std::size_t>(next);
                found = true;
            }
            if (alive(static_cast<int>(i))) index[i] = next++;
        }
        if (!found) new_c = static_cast<std::size_t>(next);
        std::vector<int> table(static_cast<std::size_t>(next) * cols_, -1);
        for (std::size_t i = 0; i < parent_.size(); ++i) {
            if (index[i] < 0) continue;
            for (std::size_t x = 0; x < cols_; ++x) {
                int t = table_[i * cols_ + x];
                if (t >= 0) table[static_cast<std::size_t>(index[i]) * cols_ + x] = index[static_cast<std::size_t>(rep(t))];
            }
        }
        table_ = std::move(table);
        parent_.resize(static_cast<std::size_t>(next));
        std::iota(parent_.begin(), parent_.end(), 0);
        return new_c;
    }

    std::size_t cols_;
    std::size_t limit_;
    std::vector<std::vector<int>> relators_;
    std::vector<int> table_;
    std::vector<int> parent_;
    std::vector<int> queue_;
    std::size_t live_ = 0;
};

}  // namespace

std::size_t todd_coxeter_order(const Presentation& p, std::size_t max_cosets) {
    CosetEnumerator e(p, max_cosets);
    return e.run();
}

bool is_identity(const Presentation& p, const Word& w, std::size_t max_cosets) {
    CosetEnumerator e(p, max_cosets);
    e.run();
    return e.trace(w) == 0;
}

bool is_cyclic_of_order(const Presentation& p, std::size_t n, std::size_t max_cosets) {
    if (n == 0) throw std::invalid_argument("order must be positive");
    if (todd_coxeter_order(p, max_cosets) != n) return false;
    AbelianInvariants ab = abelianization(p);
    if (n == 1) return ab.is_trivial();
    return ab.free_rank == 0 && ab.torsion.size() == 1 && ab.torsion.front() == static_cast<unsigned long>(n);
}

// --- Tietze simplification -------------------------------------------------

namespace {

// Smallest rotation of w or its inverse; identifies relators up to cyclic permutation and inversion.
std::vector<Letter> canonical_relator(const Word& w) {
    std::vector<Letter> best = w.letters();
    for (const Word& v : {w, w.inverse()}) {
        std::vector<Letter> ls = v.letters();
        for (std::size_t k = 0; k < ls.size(); ++k) {
            std::rotate(ls.begin(), ls.begin() + 1, ls.end());
            if (ls < best) best = ls;
        }
    }
    return best;
}

std::vector<Word> normalize_relators(const std::vector<Word>& rels) {
    std::vector<Word> out;
    std::set<std::vector<Letter>> seen;
    for (const auto& r : rels) {
        Word c = cyclically_reduce(r);
        if (c.empty()) continue;
        if (seen.insert(canonical_relator(c)).second) out.push_back(std::move(c));
    }
    return out;
}

std::size_t occurrences(const Word& w, std::size_t g) {
    return static_cast<std::size_t>(std::count_if(w.letters().begin(), w.letters().end(),
                                                  [g](Letter l) { return generator_of(l) == g; }));
}

}  // namespace

Presentation tietze_simplify(const Presentation& p) {
    std::vector<std::string> names = p.generator_names();
    std::vector<Word> rels = normalize_relators(p.relators());

    for (;;) {
        // Candidate (relator, generator) with a single occurrence; prefer short relators, then
        // high generator indices so that earlier names survive.
        std::size_t best_rel = rels.size(), best_gen = 0;
        long best_growth = 0;
        std::size_t total = 0;
        for (const auto& r : rels) total += r.size();
        for (std::size_t i = 0; i < rels.size(); ++i) {
            const Word& r = rels[i];
            for (std::size_t g = names.size(); g-- > 0;) {
                if (occurrences(r, g) != 1) continue;
                std::size_t elsewhere = 0;
                for (std::size_t j = 0; j < rels.size(); ++j)
                    if (j != i) elsewhere += occurrences(rels[j], g);
                long growth = static_cast<long>(elsewhere) * (static_cast<long>(r.size()) - 2) - static_cast<long>(r.size());
                if (r.size() > 2 && growth > 0) continue;
                bool better = best_rel == rels.size() || r.size() < rels[best_rel].size() ||
                              (r.size() == rels[best_rel].size() && growth < best_growth);
                if (better) {
                    best_rel = i;
                    best_gen = g;
                    best_growth = growth;
                }
                break;
            }
        }
        if (best_rel == rels.size()) break;

        // Rotate so the eliminated letter comes first: x^s u = 1, hence x = u^-s.
        std::vector<Letter> ls = rels[best_rel].letters();
        auto pos = std::find_if(ls.begin(), ls.end(), [&](Letter l) { return generator_of(l) == best_gen; });
        std::rotate(ls.begin(), pos, ls.end());
        int s = sign_of(ls.front());
        Word rest(std::vector<Letter>(ls.begin() + 1, ls.end()));
        Word value = s > 0 ? rest.inverse() : rest;

        std::vector<Word> next;
        for (std::size_t j = 0; j < rels.size(); ++j) {
            if (j == best_rel) continue;
            Word w;
            for (Letter l : rels[j].letters()) {
                if (generator_of(l) == best_gen)
                    w *= sign_of(l) > 0 ? value : value.inverse();
                else
                    w *= Word(std::vector<Letter>{l});
            }
            // Close the gap left by the removed generator.
            std::vector<Letter> shifted_ls = w.letters();
            for (auto& l : shifted_ls)
                if (generator_of(l) > best_gen) l = letter(generator_of(l) - 1, sign_of(l));
            next.emplace_back(std::move(shifted_ls));
        }
        names.erase(names.begin() + static_cast<std::ptrdiff_t>(best_gen));
        rels = normalize_relators(next);
    }
    return Presentation(std::move(names), std::move(rels));
}

}  // namespace stablepi1
