#include "stablepi1/scenarios.hpp"

#include "stablepi1/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <future>
#include <set>
#include <sstream>

namespace stablepi1 {

using ordered_json = nlohmann::ordered_json;

std::string to_string(ScenarioKind k) {
    switch (k) {
        case ScenarioKind::vankampen: return "vankampen";
        case ScenarioKind::torus_lattice: return "torus-lattice";
        case ScenarioKind::parametric: return "parametric";
        case ScenarioKind::constant: return "constant";
    }
    return "?";
}

std::optional<ScenarioKind> parse_kind(std::string_view text) {
    for (auto k : {ScenarioKind::vankampen, ScenarioKind::torus_lattice, ScenarioKind::parametric, ScenarioKind::constant})
        if (to_string(k) == text) return k;
    return std::nullopt;
}

std::string ExpectedGroup::describe() const {
    std::string order_text = order_is_det ? "|det|" : (order ? std::to_string(*order) : "?");
    if (order && *order == 1) return "trivial";
    return (cyclic ? "cyclic of order " : "order ") + order_text;
}

const std::vector<std::string>* TorusPayload::setting(const std::string& key) const {
    for (const auto& [k, v] : settings)
        if (k == key) return &v;
    return nullptr;
}

std::vector<const std::vector<std::string>*> TorusPayload::all(const std::string& key) const {
    std::vector<const std::vector<std::string>*> out;
    for (const auto& [k, v] : settings)
        if (k == key) out.push_back(&v);
    return out;
}

// --- parsing -----------------------------------------------------------------

namespace {

struct Token {
    std::string text;
    std::size_t column;  // 1-based
};

struct Line {
    std::size_t number;
    std::vector<Token> tokens;

    [[noreturn]] void fail(std::size_t token, const std::string& what) const {
        std::size_t col = token < tokens.size() ? tokens[token].column : (tokens.empty() ? 1 : tokens.back().column);
        throw ParseError(number, col, what);
    }
    const std::string& at(std::size_t i, const char* what) const {
        if (i >= tokens.size()) fail(i, std::string("missing ") + what);
        return tokens[i].text;
    }
    std::string rest(std::size_t from) const {
        std::string s;
        for (std::size_t i = from; i < tokens.size(); ++i) {
            if (i > from) s += ' ';
            s += tokens[i].text;
        }
        return s;
    }
};

// Whitespace tokens; a token starting with '[' runs until its brackets balance.
std::vector<Token> tokenize(std::string_view text, std::size_t line_number) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text.size()) {
        if (std::isspace(static_cast<unsigned char>(text[i]))) {
            ++i;
            continue;
        }
        std::size_t start = i;
        if (text[i] == '[') {
            int depth = 0;
            for (; i < text.size(); ++i) {
                if (text[i] == '[') ++depth;
                if (text[i] == ']' && --depth == 0) {
                    ++i;
                    break;
                }
            }
            if (depth != 0) throw ParseError(line_number, start + 1, "unbalanced brackets");
        } else {
            while (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        }
        out.push_back({std::string(text.substr(start, i - start)), start + 1});
    }
    return out;
}

long parse_long(const Line& line, std::size_t i, const char* what) {
    const std::string& s = line.at(i, what);
    try {
        std::size_t used = 0;
        long v = std::stol(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return v;
    } catch (const std::exception&) {
        line.fail(i, std::string("expected an integer for ") + what + ", got '" + s + "'");
    }
}

Integer json_integer(const nlohmann::json& j) {
    if (j.is_number_integer()) return Integer(j.get<long>());
    if (j.is_string()) return Integer(j.get<std::string>());
    throw std::invalid_argument("not an integer");
}

std::vector<Integer> parse_vector(const Line& line, std::size_t i) {
    const std::string& s = line.at(i, "vector");
    try {
        auto j = nlohmann::json::parse(s);
        if (!j.is_array()) throw std::invalid_argument("not a list");
        std::vector<Integer> v;
        for (const auto& x : j) v.push_back(json_integer(x));
        return v;
    } catch (const std::exception&) {
        line.fail(i, "expected an integer list such as [1,0,-1], got '" + s + "'");
    }
}

IntMatrix parse_matrix(const Line& line, std::size_t i) {
    const std::string& s = line.at(i, "matrix");
    try {
        auto j = nlohmann::json::parse(s);
        if (!j.is_array() || j.empty()) throw std::invalid_argument("not a list");
        std::vector<std::vector<Integer>> rows;
        for (const auto& r : j) {
            if (!r.is_array()) throw std::invalid_argument("row is not a list");
            std::vector<Integer> row;
            for (const auto& x : r) row.push_back(json_integer(x));
            if (!rows.empty() && row.size() != rows.front().size()) throw std::invalid_argument("ragged");
            rows.push_back(std::move(row));
        }
        return IntMatrix::from_rows(rows);
    } catch (const std::exception&) {
        line.fail(i, "expected a rectangular row list such as [[1,0],[0,1]], got '" + s + "'");
    }
}

bool parse_yes_no(const Line& line, std::size_t i) {
    const std::string& s = line.at(i, "yes/no");
    if (s == "yes") return true;
    if (s == "no") return false;
    line.fail(i, "expected yes or no");
}

enum class Section { none, meta, complex, map, torus, expected };

struct Builder {
    Scenario s;
    std::optional<std::string> kind_text;
    std::map<std::string, GluingComplex> complexes;
    std::map<std::string, std::string> edge_map, vertex_map;
    TorusPayload torus;
    bool has_map = false, has_torus = false, has_order = false, has_cyclic = false;
    std::set<std::string> meta_seen;
};

void meta_line(Builder& b, const Line& line) {
    const std::string& key = line.tokens[0].text;
    if (line.tokens.size() < 2) line.fail(1, "missing value for " + key);
    if (!b.meta_seen.insert(key).second) line.fail(0, "duplicate meta key " + key);
    std::string value = line.rest(1);
    if (key == "id") b.s.id = value;
    else if (key == "kind") b.kind_text = value;
    else if (key == "normal") b.s.meta.normal = value;
    else if (key == "smoothable") b.s.meta.smoothable = value;
    else if (key == "family") b.s.meta.family = value;
    else if (key == "nodes") b.s.meta.nodes = parse_long(line, 1, "nodes");
    else if (key == "cusps") b.s.meta.cusps = parse_long(line, 1, "cusps");
    else if (key == "ramification") b.s.meta.ramification = parse_long(line, 1, "ramification");
    else line.fail(0, "unknown meta key " + key);
}

void complex_line(GluingComplex& c, const Line& line) {
    const std::string& key = line.tokens[0].text;
    try {
        if (key == "vertex") {
            if (line.tokens.size() < 2) line.fail(1, "vertex needs a label");
            for (std::size_t i = 1; i < line.tokens.size(); ++i) c.add_vertex(line.tokens[i].text);
        } else if (key == "edge") {
            if (line.tokens.size() != 4) line.fail(0, "edge needs: label source target");
            c.add_edge(line.tokens[1].text, line.tokens[2].text, line.tokens[3].text);
        } else if (key == "cell") {
            if (line.tokens.size() < 2) line.fail(1, "cell needs a boundary word");
            c.add_cell(line.rest(1));
        } else if (key == "basepoint") {
            c.set_basepoint(line.at(1, "basepoint vertex"));
        } else {
            line.fail(0, "unknown complex key " + key);
        }
    } catch (const ValidationError& e) {
        throw ValidationError("line " + std::to_string(line.number) + ": " + e.what());
    }
}

void map_line(Builder& b, const Line& line) {
    std::size_t arrow = line.tokens[0].text == "vertex" ? 2 : 1;
    if (line.tokens.size() < arrow + 1 || line.tokens[arrow].text != "->")
        line.fail(arrow, "expected 'edge -> image' or 'vertex v -> w'");
    if (arrow == 2) {
        if (line.tokens.size() != 4) line.fail(3, "vertex image must be a single vertex");
        if (!b.vertex_map.emplace(line.tokens[1].text, line.tokens[3].text).second)
            line.fail(1, "vertex mapped twice");
    } else {
        std::string image = line.rest(2);
        if (!b.edge_map.emplace(line.tokens[0].text, image).second) line.fail(0, "edge mapped twice");
    }
}

void torus_line(Builder& b, const Line& line) {
    TorusPayload& t = b.torus;
    const std::string& key = line.tokens[0].text;
    auto named = [&](auto& store, const std::string& what) -> const std::string& {
        const std::string& name = line.at(1, what.c_str());
        if (store.count(name)) line.fail(1, "duplicate " + what + " " + name);
        return name;
    };
    if (key == "pipeline") {
        t.pipeline = line.at(1, "pipeline name");
    } else if (key == "basis") {
        t.basis.clear();
        for (std::size_t i = 1; i < line.tokens.size(); ++i) t.basis.push_back(line.tokens[i].text);
    } else if (key == "denominator") {
        long d = parse_long(line, 1, "denominator");
        if (d <= 0) line.fail(1, "denominator must be positive");
        t.denominator = d;
    } else if (key == "map") {
        const std::string& name = named(t.maps, "map");
        if (line.at(2, "'linear'") != "linear") line.fail(2, "expected 'linear'");
        IntMatrix m = parse_matrix(line, 3);
        std::vector<Integer> shift(m.rows());
        if (line.tokens.size() > 4) {
            if (line.at(4, "'translation'") != "translation") line.fail(4, "expected 'translation'");
            shift = parse_vector(line, 5);
            if (line.tokens.size() > 6) line.fail(6, "unexpected trailing input");
        }
        if (m.rows() != m.cols()) line.fail(3, "linear part must be square");
        if (shift.size() != m.rows()) line.fail(5, "translation length does not match the matrix");
        t.maps.emplace(name, AffineTorusMap(std::move(m), RatVector(std::move(shift), t.denominator)));
    } else if (key == "matrix" || key == "lattice" || key == "subtorus") {
        auto& store = key == "matrix" ? t.matrices : key == "lattice" ? t.lattices : t.subtori;
        const std::string& name = named(store, key);
        store.emplace(name, parse_matrix(line, 2));
        if (line.tokens.size() > 3) line.fail(3, "unexpected trailing input");
    } else {
        std::vector<std::string> values;
        for (std::size_t i = 1; i < line.tokens.size(); ++i) values.push_back(line.tokens[i].text);
        t.settings.emplace_back(key, std::move(values));
    }
}

void expected_line(Builder& b, const Line& line) {
    const std::string& key = line.tokens[0].text;
    if (key == "order") {
        if (line.at(1, "order") == "det") {
            b.s.expected.order_is_det = true;
        } else {
            b.s.expected.order = parse_long(line, 1, "order");
            if (*b.s.expected.order < 1) line.fail(1, "order must be positive");
        }
        b.has_order = true;
    } else if (key == "cyclic") {
        b.s.expected.cyclic = parse_yes_no(line, 1);
        b.has_cyclic = true;
    } else {
        line.fail(0, "unknown expected key " + key);
    }
}

// --- validation ------------------------------------------------------------

void require(bool ok, const std::string& what) {
    if (!ok) throw ValidationError(what);
}

long id_numeral(const std::string& id) {
    std::size_t i = 0;
    while (i < id.size() && !std::isdigit(static_cast<unsigned char>(id[i]))) ++i;
    std::size_t j = i;
    while (j < id.size() && std::isdigit(static_cast<unsigned char>(id[j]))) ++j;
    if (i == j) throw ValidationError("scenario id " + id + " carries no numeral");
    return std::stol(id.substr(i, j - i));
}

BiTriEllipticParams eplus_params(const TorusPayload& t) {
    auto single = [&](const char* key) -> std::string {
        auto v = t.setting(key);
        require(v && v->size() == 1, std::string("torus section needs '") + key + " <value>'");
        return v->front();
    };
    BiTriEllipticParams p;
    std::string parity = single("parity");
    require(parity == "odd" || parity == "even", "parity must be odd or even");
    p.parity = parity == "odd" ? Parity::odd : Parity::even;
    try {
        p.deg_phi = std::stol(single("deg_phi"));
        p.deg_phi_prime = std::stol(single("deg_phi_prime"));
    } catch (const std::logic_error&) {
        throw ValidationError("isogeny degrees must be integers");
    }
    if (auto g = t.setting("glue")) {
        require(g->size() == 1 && (g->front() == "G1" || g->front() == "G2"), "glue must be G1 or G2");
        p.glue_choice = g->front() == "G1" ? 0 : 1;
    }
    try {
        p.validate();
    } catch (const InvalidParams& e) {
        throw ValidationError(e.what());
    }
    return p;
}

void require_names(const TorusPayload& t) {
    auto need_map = [&](const std::string& n) { require(t.maps.count(n), "unknown map " + n); };
    auto need_matrix = [&](const std::string& n) { require(t.matrices.count(n), "unknown matrix " + n); };
    auto need_lattice = [&](const std::string& n) { require(t.lattices.count(n), "unknown lattice " + n); };
    auto need_subtorus = [&](const std::string& n) { require(t.subtori.count(n), "unknown subtorus " + n); };

    for (auto* v : t.all("free_group"))
        for (const auto& n : *v)
            if (n == "order") break;
            else need_map(n);
    for (auto* v : t.all("map_order")) {
        require(v->size() == 2, "map_order needs: map order");
        need_map((*v)[0]);
    }
    for (auto* v : t.all("meet")) {
        require(v->size() == 4, "meet needs: subtorus subtorus matrix count");
        need_subtorus((*v)[0]);
        need_subtorus((*v)[1]);
        need_matrix((*v)[2]);
    }
    for (auto* v : t.all("cover_components")) {
        require(v->size() >= 4 && (*v)[v->size() - 2] == "nodes", "cover_components needs: name count ... nodes n");
        for (std::size_t i = 0; i + 2 < v->size(); i += 2) need_subtorus((*v)[i]);
    }
    for (auto* v : t.all("homology")) {
        require(v->size() == 2 || (v->size() == 4 && (*v)[2] == "orbit"), "homology needs: ambient sub [orbit map]");
        need_lattice((*v)[0]);
        need_lattice((*v)[1]);
        if (v->size() == 4) need_map((*v)[3]);
    }
    for (auto* v : t.all("deck"))
        for (const auto& n : *v)
            if (n != "modulo") need_map(n);
}

void validate_scenario(Builder& b) {
    Scenario& s = b.s;
    require(!s.id.empty(), "meta section needs an id");
    require(b.kind_text.has_value(), s.id + ": meta section needs a kind");
    auto kind = parse_kind(*b.kind_text);
    require(kind.has_value(), s.id + ": unknown kind " + *b.kind_text);
    s.kind = *kind;
    require(b.has_order && b.has_cyclic, s.id + ": expected section needs order and cyclic");
    if (s.expected.order_is_det) require(s.kind == ScenarioKind::parametric, s.id + ": only parametric scenarios use order det");
    else require(*s.expected.order >= 1 && *s.expected.order <= 5, s.id + ": expected order must lie in 1..5");

    try {
        switch (s.kind) {
            case ScenarioKind::vankampen: {
                require(b.complexes.count("Dbar") && b.complexes.count("D"), s.id + ": needs complexes Dbar and D");
                require(b.complexes.size() == 2, s.id + ": only complexes Dbar and D are allowed");
                require(b.has_map, s.id + ": needs a map section");
                VanKampenPayload p{b.complexes.at("Dbar"), b.complexes.at("D"), b.edge_map, b.vertex_map};
                p.dbar.validate();
                p.d.validate();
                (void)p.gluing_map();
                require(s.meta.nodes && s.meta.cusps && s.meta.ramification,
                        s.id + ": gluing scenarios record nodes, cusps and ramification");
                s.payload = std::move(p);
                break;
            }
            case ScenarioKind::torus_lattice:
            case ScenarioKind::parametric: {
                require(b.has_torus, s.id + ": needs a torus section");
                const auto& t = b.torus;
                static const std::set<std::string> known{"deck-cover", "eplus", "eplus-reducible", "isogeny"};
                require(known.count(t.pipeline), s.id + ": unknown pipeline '" + t.pipeline + "'");
                require((t.pipeline == "isogeny") == (s.kind == ScenarioKind::parametric),
                        s.id + ": parametric scenarios use the isogeny pipeline and only they do");
                if (!t.basis.empty()) {
                    for (const auto& [name, m] : t.maps)
                        require(m.rank() == t.basis.size(), s.id + ": map " + name + " does not match the basis");
                }
                if (t.pipeline == "eplus" || t.pipeline == "eplus-reducible") (void)eplus_params(t);
                if (t.pipeline == "eplus-reducible") {
                    require(t.matrices.count("phi_star"), s.id + ": needs matrix phi_star");
                    const auto& m = t.matrices.at("phi_star");
                    require(m.rows() == 2 && m.cols() == 2, s.id + ": phi_star must be 2x2");
                }
                if (t.pipeline == "isogeny") {
                    require(t.matrices.count("isogeny"), s.id + ": needs matrix isogeny");
                    const auto& m = t.matrices.at("isogeny");
                    require(m.rows() == m.cols(), s.id + ": isogeny matrix must be square");
                }
                if (t.pipeline == "deck-cover") {
                    require(!t.all("deck").empty(), s.id + ": deck-cover needs a deck line");
                    require_names(t);
                    for (const auto& [name, rows] : t.subtori) (void)SubtorusClass(rows);
                }
                s.payload = t;
                break;
            }
            case ScenarioKind::constant:
                require(b.complexes.empty() && !b.has_torus && !b.has_map, s.id + ": constant scenarios carry no payload");
                require(*s.expected.order == 1, s.id + ": constant scenarios describe the trivial group");
                break;
        }
    } catch (const ValidationError&) {
        throw;
    } catch (const std::exception& e) {
        throw ValidationError(s.id + ": " + e.what());
    }
}

}  // namespace

Scenario parse_scenario(std::string_view text, const std::string& origin) {
    Builder b;
    b.s.origin = origin;
    Section section = Section::none;
    GluingComplex* current = nullptr;

    std::size_t number = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find('\n', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view raw = text.substr(pos, end - pos);
        pos = end + 1;
        ++number;
        if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
        Line line{number, tokenize(raw, number)};
        if (line.tokens.empty()) {
            if (end == text.size()) break;
            continue;
        }
        const std::string& head = line.tokens[0].text;

        if (line.tokens.size() == 1 && (head == "meta" || head == "map" || head == "torus" || head == "expected")) {
            section = head == "meta" ? Section::meta : head == "map" ? Section::map : head == "torus" ? Section::torus : Section::expected;
            if (section == Section::map) {
                if (b.has_map) line.fail(0, "second map section");
                b.has_map = true;
            }
            if (section == Section::torus) {
                if (b.has_torus) line.fail(0, "second torus section");
                b.has_torus = true;
            }
            continue;
        }
        if (head == "complex" && section != Section::torus) {
            if (line.tokens.size() != 2) line.fail(0, "expected 'complex <name>'");
            const std::string& name = line.tokens[1].text;
            if (b.complexes.count(name)) line.fail(1, "duplicate complex " + name);
            current = &b.complexes.emplace(name, GluingComplex(name)).first->second;
            section = Section::complex;
            continue;
        }

        switch (section) {
            case Section::none: line.fail(0, "content before the first section header");
            case Section::meta: meta_line(b, line); break;
            case Section::complex: complex_line(*current, line); break;
            case Section::map: map_line(b, line); break;
            case Section::torus: torus_line(b, line); break;
            case Section::expected: expected_line(b, line); break;
        }
        if (end == text.size()) break;
    }
    validate_scenario(b);
    return std::move(b.s);
}

Scenario load_scenario(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot read scenario file " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_scenario(buffer.str(), path.string());
}

// --- pipelines -------------------------------------------------------------

namespace {

Check make_check(std::string name, bool passed, std::string detail) {
    return {std::move(name), passed, std::move(detail)};
}

std::string join(const std::vector<std::string>& v, std::size_t from = 0, std::size_t to = std::string::npos) {
    std::string s;
    for (std::size_t i = from; i < std::min(to, v.size()); ++i) {
        if (i > from) s += ' ';
        s += v[i];
    }
    return s;
}

ScenarioGroup vankampen_group(const Scenario& s, const VanKampenPayload& p) {
    ScenarioGroup out;
    const auto& m = s.meta;
    long vertices = static_cast<long>(p.dbar.vertices().size());
    long predicted = *m.ramification / 2 + 2 * *m.cusps + 2;
    out.checks.push_back(make_check("node bookkeeping", *m.ramification % 2 == 0 && predicted == *m.nodes && vertices == *m.nodes,
                                    "nodes " + std::to_string(*m.nodes) + ", ramification/2 + 2 cusps + 2 = " +
                                        std::to_string(predicted) + ", Dbar vertices " + std::to_string(vertices)));

    Pi1Result dbar = pi1_presentation(p.dbar);
    Pi1Result d = pi1_presentation(p.d);
    GroupHom to_d = induced_hom(p.gluing_map(), dbar, d);
    GroupHom to_plane(dbar.group, Presentation::trivial(), std::vector<Word>(dbar.group.generator_count()));
    out.group = glue_fundamental_group(Presentation::trivial(), to_plane, to_d);
    return out;
}

ScenarioGroup isogeny_group(const TorusPayload& t) {
    ScenarioGroup out;
    const IntMatrix& a = t.matrices.at("isogeny");
    const std::size_t n = a.rows();
    std::vector<std::string> names;
    if (n == 2) names = {"x", "y"};
    else
        for (std::size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i + 1));
    std::vector<Word> rels;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) rels.push_back(Word::commutator(Word::power(i, 1), Word::power(j, 1)));
    for (std::size_t r = 0; r < n; ++r) {
        Word w;
        for (std::size_t c = 0; c < n; ++c) w *= Word::power(c, a(r, c).get_si());
        rels.push_back(w);
    }
    out.group = Presentation(std::move(names), std::move(rels));

    AbelianInvariants cok = isogeny_cokernel(a);
    Integer deg = abs(determinant(a));
    out.resolved_order = deg.get_si();
    out.checks.push_back(make_check("cokernel matches abelianization", cok == abelianization(out.group),
                                    "cokernel " + cok.to_string()));
    out.checks.push_back(make_check("cokernel cyclic", cok.is_cyclic(), cok.to_string()));
    out.checks.push_back(make_check("degree between 3 and 5", deg >= 3 && deg <= 5, "degree " + deg.get_str()));
    return out;
}

Check twisting_check(const Scenario& s, const BiTriEllipticParams& p) {
    long m = twisting_number(p);
    long want = id_numeral(s.id);
    return make_check("twisting number", m == want && m >= 1 && m <= 5,
                      "m = " + std::to_string(m) + ", id numeral " + std::to_string(want));
}

ScenarioGroup eplus_group(const Scenario& s, const TorusPayload& t) {
    ScenarioGroup out;
    BiTriEllipticParams p = eplus_params(t);
    out.checks.push_back(twisting_check(s, p));
    Integer theta = theta_dot_fbar(p);
    out.checks.push_back(make_check("Theta.Fbar", theta == 3, "Theta.Fbar = " + theta.get_str()));
    if (p.parity == Parity::even) {
        std::size_t all = enumerate_glue_subgroups(p, false).size();
        std::size_t normalized = enumerate_glue_subgroups(p, true).size();
        out.checks.push_back(make_check("glue subgroups", all == 4 && normalized == 2,
                                        std::to_string(all) + " admissible, " + std::to_string(normalized) + " normalized"));
    }
    out.group = eplus_presentation(p);
    return out;
}

ScenarioGroup eplus_reducible_group(const Scenario& s, const TorusPayload& t) {
    ScenarioGroup out;
    BiTriEllipticParams p = eplus_params(t);
    out.checks.push_back(twisting_check(s, p));
    const IntMatrix& phi = t.matrices.at("phi_star");
    Integer det = determinant(phi);
    out.checks.push_back(make_check("phi_* invertible", abs(det) == 1, "det " + det.get_str()));

    // pi_1(Xbar) and pi_1(D) are both pi_1 of the section curve; Dbar = C1 + C2 has a free product group.
    auto torus_group = [](std::vector<std::string> names) {
        return Presentation(std::move(names), {Word::commutator(Word::power(0, 1), Word::power(1, 1))});
    };
    Presentation xbar = torus_group({"x", "y"});
    Presentation d = torus_group({"u", "v"});
    Presentation dbar({"a1", "b1", "a2", "b2"},
                      {Word::commutator(Word::power(0, 1), Word::power(1, 1)),
                       Word::commutator(Word::power(2, 1), Word::power(3, 1))});
    auto linear_word = [&](std::size_t row) {
        return Word::power(0, phi(row, 0).get_si()) * Word::power(1, phi(row, 1).get_si());
    };
    GroupHom to_xbar(dbar, xbar, {Word::power(0, 1), Word::power(1, 1), Word(), Word()});
    GroupHom to_d(dbar, d, {Word::power(0, 1), Word::power(1, 1), linear_word(0), linear_word(1)});
    out.group = glue_fundamental_group(xbar, to_xbar, to_d);
    return out;
}

std::vector<AffineTorusMap> maps_named(const TorusPayload& t, const std::vector<std::string>& names) {
    std::vector<AffineTorusMap> out;
    for (const auto& n : names) out.push_back(t.maps.at(n));
    return out;
}

IntMatrix orbit_rows(const IntMatrix& rows, const IntMatrix& linear) {
    const std::size_t k = map_order(AffineTorusMap::linear_map(linear), default_closure_cap);
    IntMatrix out = rows;
    IntMatrix current = rows;
    const IntMatrix step = linear.transpose();
    for (std::size_t i = 1; i < k; ++i) {
        current = current * step;
        out = out.stacked(current);
    }
    return out;
}

ScenarioGroup deck_cover_group(const TorusPayload& t) {
    ScenarioGroup out;

    for (auto* v : t.all("free_group")) {
        auto split = std::find(v->begin(), v->end(), "order");
        std::vector<std::string> names(v->begin(), split);
        auto group = generated_group(maps_named(t, names));
        bool free = is_free_action(maps_named(t, names));
        bool order_ok = true;
        if (split != v->end() && split + 1 != v->end()) order_ok = std::to_string(group.size()) == *(split + 1);
        out.checks.push_back(make_check("free action of <" + join(names) + ">", free && order_ok,
                                        "order " + std::to_string(group.size()) + (free ? ", free" : ", has fixed points")));
    }

    for (auto* v : t.all("map_order")) {
        std::size_t n = map_order(t.maps.at((*v)[0]), default_closure_cap);
        out.checks.push_back(make_check("order of " + (*v)[0], std::to_string(n) == (*v)[1], "order " + std::to_string(n)));
    }

    std::optional<Integer> node_count;
    for (auto* v : t.all("meet")) {
        Integer meet = intersection_number(SubtorusClass(t.subtori.at((*v)[0])), SubtorusClass(t.subtori.at((*v)[1])));
        const IntMatrix& system = t.matrices.at((*v)[2]);
        Integer points = preimage_count(system, RatVector::zero(system.rows()));
        node_count = points;
        out.checks.push_back(make_check((*v)[0] + " meets " + (*v)[1], meet == points && points.get_str() == (*v)[3],
                                        "intersection " + meet.get_str() + ", solutions " + points.get_str()));
    }

    for (auto* v : t.all("cover_components")) {
        Cycle total;
        std::vector<std::pair<std::string, long>> parts;
        for (std::size_t i = 0; i + 2 < v->size(); i += 2) parts.emplace_back((*v)[i], std::stol((*v)[i + 1]));
        Integer nodes = 0;
        for (std::size_t i = 0; i < parts.size(); ++i) {
            SubtorusClass ci(t.subtori.at(parts[i].first));
            nodes += Integer(parts[i].second * (parts[i].second - 1) / 2) * intersection_number(ci, ci);
            for (std::size_t j = i + 1; j < parts.size(); ++j)
                nodes += Integer(parts[i].second * parts[j].second) *
                         intersection_number(ci, SubtorusClass(t.subtori.at(parts[j].first)));
        }
        bool ok = nodes.get_str() == v->back() && (!node_count || *node_count == nodes);
        out.checks.push_back(make_check("cover components", ok, "nodes " + nodes.get_str()));
    }

    for (auto* v : t.all("homology")) {
        IntMatrix sub = t.lattices.at((*v)[1]);
        if (v->size() == 4) sub = orbit_rows(sub, t.maps.at((*v)[3]).linear());
        AbelianInvariants q = quotient_invariants(t.lattices.at((*v)[0]), sub);
        out.checks.push_back(make_check("curves generate " + (*v)[0], q.is_trivial(), "quotient " + q.to_string()));
    }

    const auto& deck = *t.all("deck").front();
    auto split = std::find(deck.begin(), deck.end(), "modulo");
    std::vector<std::string> gens(deck.begin(), split);
    std::vector<std::string> kernel_gens(split == deck.end() ? deck.end() : split + 1, deck.end());
    auto elements = generated_group(maps_named(t, gens));
    std::set<std::string> kernel;
    if (kernel_gens.empty()) kernel.insert(AffineTorusMap::identity(elements.front().rank()).to_string());
    else
        for (const auto& k : generated_group(maps_named(t, kernel_gens))) kernel.insert(k.to_string());
    bool kernel_inside = true;
    std::set<std::string> element_keys;
    for (const auto& e : elements) element_keys.insert(e.to_string());
    for (const auto& k : kernel) kernel_inside = kernel_inside && element_keys.count(k);

    const std::size_t deck_order = elements.size() / kernel.size();
    std::size_t longest = 0;
    for (const auto& g : elements) {
        AffineTorusMap power = g;
        std::size_t k = 1;
        while (!kernel.count(power.to_string()) && k <= elements.size()) {
            power = compose(g, power);
            ++k;
        }
        longest = std::max(longest, k);
    }
    bool cyclic = kernel_inside && elements.size() % kernel.size() == 0 && longest == deck_order;
    out.checks.push_back(make_check("cyclic deck group", cyclic, "order " + std::to_string(deck_order)));

    out.group = Presentation({"s"}, {Word::power(0, static_cast<long>(deck_order))});
    return out;
}

}  // namespace

ScenarioGroup compute_group(const Scenario& s) {
    switch (s.kind) {
        case ScenarioKind::vankampen: return vankampen_group(s, std::get<VanKampenPayload>(s.payload));
        case ScenarioKind::constant: return {Presentation::trivial(), {}, std::nullopt};
        case ScenarioKind::parametric:
        case ScenarioKind::torus_lattice: {
            const auto& t = std::get<TorusPayload>(s.payload);
            if (t.pipeline == "isogeny") return isogeny_group(t);
            if (t.pipeline == "eplus") return eplus_group(s, t);
            if (t.pipeline == "eplus-reducible") return eplus_reducible_group(s, t);
            return deck_cover_group(t);
        }
    }
    throw std::logic_error("unhandled scenario kind");
}

Report run_scenario(const Scenario& s, const RunOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    Report r;
    r.id = s.id;
    r.expected = s.expected;
    r.expected_order = s.expected.order;
    r.meta = s.meta;
    try {
        ScenarioGroup g = compute_group(s);
        r.checks = std::move(g.checks);
        if (s.expected.order_is_det) r.expected_order = g.resolved_order;
        Presentation simple = tietze_simplify(g.group);
        r.presentation = simple;
        r.abelianization = abelianization(simple);

        auto failed = std::find_if(r.checks.begin(), r.checks.end(), [](const Check& c) { return !c.passed; });
        if (failed != r.checks.end()) {
            r.error = "check failed: " + failed->name + " (" + failed->detail + ")";
        } else {
            r.order = todd_coxeter_order(simple, options.max_cosets);
            r.cyclic = is_cyclic_of_order(simple, *r.order, options.max_cosets);
            r.passed = r.expected_order && static_cast<long>(*r.order) == *r.expected_order && *r.cyclic == s.expected.cyclic;
        }
    } catch (const std::exception& e) {
        r.error = e.what();
        r.passed = false;
    }
    r.elapsed_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return r;
}

std::size_t CatalogueResult::passed() const {
    return static_cast<std::size_t>(std::count_if(reports.begin(), reports.end(), [](const Report& r) { return r.passed; }));
}

std::vector<std::filesystem::path> catalogue_files(const std::filesystem::path& dir) {
    if (!std::filesystem::is_directory(dir)) throw ValidationError("catalogue directory not found: " + dir.string());
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(dir))
        if (entry.is_regular_file() && entry.path().extension() == ".scn") files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    return files;
}

CatalogueResult verify_catalogue(const std::filesystem::path& dir, const RunOptions& options) {
    std::vector<std::future<Report>> jobs;
    for (const auto& file : catalogue_files(dir)) {
        jobs.push_back(std::async(std::launch::async, [file, options] {
            try {
                return run_scenario(load_scenario(file), options);
            } catch (const std::exception& e) {
                Report r;
                r.id = file.stem().string();
                r.error = e.what();
                return r;
            }
        }));
    }
    CatalogueResult out;
    for (auto& j : jobs) out.reports.push_back(j.get());
    std::stable_sort(out.reports.begin(), out.reports.end(), [](const Report& a, const Report& b) { return a.id < b.id; });
    for (std::size_t i = 0; i + 1 < out.reports.size(); ++i)
        if (out.reports[i].id == out.reports[i + 1].id)
            for (auto* r : {&out.reports[i], &out.reports[i + 1]}) {
                r->passed = false;
                if (r->error.empty()) r->error = "duplicate scenario id " + r->id;
            }
    return out;
}

// --- output ------------------------------------------------------------------

namespace {

ordered_json integer_json(const Integer& v) {
    if (v.fits_slong_p()) return v.get_si();
    return v.get_str();
}

ordered_json to_json(const Report& r) {
    ordered_json j;
    j["scenario"] = r.id;
    j["presentation"] = r.presentation ? ordered_json(r.presentation->to_string()) : ordered_json(nullptr);
    if (r.abelianization) {
        ordered_json torsion = ordered_json::array();
        for (const auto& t : r.abelianization->torsion) torsion.push_back(integer_json(t));
        j["abelianization"] = {{"free_rank", r.abelianization->free_rank}, {"torsion", torsion}};
    } else {
        j["abelianization"] = nullptr;
    }
    j["order"] = r.order ? ordered_json(*r.order) : ordered_json(nullptr);
    j["cyclic"] = r.cyclic ? ordered_json(*r.cyclic) : ordered_json(nullptr);
    j["expected"] = {{"order", r.expected_order ? ordered_json(*r.expected_order) : ordered_json(nullptr)},
                     {"cyclic", r.expected.cyclic}};
    j["verdict"] = r.passed ? "pass" : "fail";
    j["elapsed_ms"] = r.elapsed_ms;
    j["error"] = r.error.empty() ? ordered_json(nullptr) : ordered_json(r.error);
    ordered_json checks = ordered_json::array();
    for (const auto& c : r.checks) checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    j["checks"] = checks;
    return j;
}

std::string cell(const std::string& s) { return s.empty() ? "-" : s; }

std::string markdown_row(const Report& r) {
    std::ostringstream out;
    out << "| " << r.id << " | " << (r.order ? std::to_string(*r.order) : "-") << " | "
        << (r.expected_order ? std::to_string(*r.expected_order) : "-") << " | "
        << (r.cyclic ? (*r.cyclic ? "yes" : "no") : "-") << " | " << cell(r.meta.normal) << " | "
        << cell(r.meta.smoothable) << " | " << cell(r.meta.family) << " | " << (r.passed ? "pass" : "FAIL") << " |\n";
    return out.str();
}

const char* markdown_header =
    "| case | computed order | expected order | cyclic | normal | smoothable | family | verdict |\n"
    "|---|---|---|---|---|---|---|---|\n";

}  // namespace

std::string report_json(const Report& r, int indent) { return to_json(r).dump(indent); }

std::string catalogue_json(const CatalogueResult& c, int indent) {
    ordered_json j;
    j["reports"] = ordered_json::array();
    for (const auto& r : c.reports) j["reports"].push_back(to_json(r));
    j["summary"] = {{"passed", c.passed()}, {"total", c.total()}};
    return j.dump(indent);
}

std::string report_markdown(const Report& r) {
    std::string out = markdown_header + markdown_row(r);
    if (r.presentation) out += "\npresentation: `" + r.presentation->to_string() + "`\n";
    if (!r.error.empty()) out += "\nerror: " + r.error + "\n";
    return out;
}

std::string catalogue_markdown(const CatalogueResult& c) {
    std::string out = markdown_header;
    for (const auto& r : c.reports) out += markdown_row(r);
    out += "\n" + std::to_string(c.passed()) + "/" + std::to_string(c.total()) + " scenarios pass\n";
    for (const auto& r : c.reports)
        if (!r.error.empty()) out += "- " + r.id + ": " + r.error + "\n";
    return out;
}

}  // namespace stablepi1
