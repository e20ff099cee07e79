#include "stablepi1/vankampen.hpp"

#include "stablepi1/errors.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace stablepi1 {

// --- complexes ---------------------------------------------------------------

std::size_t GluingComplex::add_vertex(const std::string& label) {
    if (find_vertex(label)) throw ValidationError(name_ + ": duplicate vertex " + label);
    vertices_.push_back(label);
    return vertices_.size() - 1;
}

std::size_t GluingComplex::add_edge(const std::string& label, const std::string& source, const std::string& target) {
    if (find_edge(label)) throw ValidationError(name_ + ": duplicate edge label " + label);
    auto s = find_vertex(source);
    auto t = find_vertex(target);
    if (!s) throw ValidationError(name_ + ": edge " + label + " starts at unknown vertex " + source);
    if (!t) throw ValidationError(name_ + ": edge " + label + " ends at unknown vertex " + target);
    edges_.push_back({label, *s, *t});
    return edges_.size() - 1;
}

void GluingComplex::add_cell(const std::string& boundary) {
    EdgePath p;
    try {
        p = path(boundary);
    } catch (const std::invalid_argument& e) {
        throw ValidationError(name_ + ": cell '" + boundary + "': " + e.what());
    }
    cell_text_.push_back(boundary);
    cells_.push_back(std::move(p));
}

void GluingComplex::set_basepoint(const std::string& vertex) {
    auto v = find_vertex(vertex);
    if (!v) throw ValidationError(name_ + ": unknown basepoint " + vertex);
    basepoint_ = *v;
    basepoint_set_ = true;
}

std::optional<std::size_t> GluingComplex::find_vertex(const std::string& label) const {
    auto it = std::find(vertices_.begin(), vertices_.end(), label);
    if (it == vertices_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - vertices_.begin());
}

std::optional<std::size_t> GluingComplex::find_edge(const std::string& label) const {
    auto it = std::find_if(edges_.begin(), edges_.end(), [&](const Edge& e) { return e.label == label; });
    if (it == edges_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - edges_.begin());
}

Presentation GluingComplex::edge_alphabet() const {
    std::vector<std::string> labels;
    for (const auto& e : edges_) labels.push_back(e.label);
    return Presentation(std::move(labels), {});
}

EdgePath GluingComplex::path(const std::string& text) const { return edge_alphabet().word(text); }

std::string GluingComplex::format(const EdgePath& p) const { return edge_alphabet().format(p); }

std::optional<std::size_t> GluingComplex::walk(std::size_t start, const EdgePath& p) const {
    std::size_t at = start;
    for (Letter l : p.letters()) {
        const Edge& e = edges_.at(generator_of(l));
        std::size_t from = sign_of(l) > 0 ? e.source : e.target;
        if (from != at) return std::nullopt;
        at = sign_of(l) > 0 ? e.target : e.source;
    }
    return at;
}

void GluingComplex::validate() const {
    if (vertices_.empty()) throw ValidationError(name_ + ": complex has no vertices");
    if (!basepoint_set_ && vertices_.size() > 1) throw ValidationError(name_ + ": no basepoint declared");

    for (std::size_t i = 0; i < cells_.size(); ++i) {
        const EdgePath& c = cells_[i];
        if (c.empty()) throw ValidationError(name_ + ": empty 2-cell boundary");
        const Edge& first = edges_[generator_of(c.letters().front())];
        std::size_t start = sign_of(c.letters().front()) > 0 ? first.source : first.target;
        auto end = walk(start, c);
        if (!end) throw ValidationError(name_ + ": cell '" + cell_text_[i] + "' is not an edge path");
        if (*end != start) throw ValidationError(name_ + ": cell '" + cell_text_[i] + "' is not closed");
    }

    std::vector<bool> seen(vertices_.size(), false);
    std::deque<std::size_t> queue{basepoint_};
    seen[basepoint_] = true;
    while (!queue.empty()) {
        std::size_t v = queue.front();
        queue.pop_front();
        for (const auto& e : edges_)
            for (auto [a, b] : {std::pair{e.source, e.target}, std::pair{e.target, e.source}})
                if (a == v && !seen[b]) {
                    seen[b] = true;
                    queue.push_back(b);
                }
    }
    for (std::size_t v = 0; v < vertices_.size(); ++v)
        if (!seen[v]) throw DisconnectedComplex(name_ + ": vertex " + vertices_[v] + " is not reachable from the basepoint");
}

GluingComplex GluingComplex::with_edge_order(const std::vector<std::size_t>& order) const {
    if (order.size() != edges_.size()) throw std::invalid_argument("edge order must be a permutation");
    GluingComplex out(name_);
    out.vertices_ = vertices_;
    std::set<std::size_t> used;
    for (std::size_t i : order) {
        if (i >= edges_.size() || !used.insert(i).second) throw std::invalid_argument("edge order must be a permutation");
        out.edges_.push_back(edges_[i]);
    }
    for (const auto& text : cell_text_) out.add_cell(text);
    out.basepoint_ = basepoint_;
    out.basepoint_set_ = basepoint_set_;
    return out;
}

// --- maps --------------------------------------------------------------------

GluingMap::GluingMap(const GluingComplex& source, const GluingComplex& target, std::vector<EdgePath> edge_images,
                     std::vector<std::size_t> vertex_images)
    : edge_images_(std::move(edge_images)), vertex_images_(std::move(vertex_images)) {
    if (edge_images_.size() != source.edges().size()) throw IncompatibleMap("one image per source edge required");
    if (vertex_images_.size() != source.vertices().size()) throw IncompatibleMap("one image per source vertex required");
    for (std::size_t v : vertex_images_)
        if (v >= target.vertices().size()) throw IncompatibleMap("vertex image outside the target");
    for (std::size_t i = 0; i < edge_images_.size(); ++i) {
        const auto& e = source.edges()[i];
        for (Letter l : edge_images_[i].letters())
            if (generator_of(l) >= target.edges().size()) throw IncompatibleMap("edge image outside the target");
        auto end = target.walk(vertex_images_[e.source], edge_images_[i]);
        if (!end || *end != vertex_images_[e.target])
            throw IncompatibleMap("image of edge " + e.label + " does not run between the images of its endpoints");
    }
}

GluingMap GluingMap::from_labels(const GluingComplex& source, const GluingComplex& target,
                                 const std::map<std::string, std::string>& edge_images,
                                 const std::map<std::string, std::string>& vertex_images) {
    std::vector<std::optional<std::size_t>> vmap(source.vertices().size());
    auto assign = [&](std::size_t v, std::size_t image, const std::string& why) {
        if (vmap[v] && *vmap[v] != image)
            throw IncompatibleMap("vertex " + source.vertices()[v] + " is sent to both " +
                                  target.vertices()[*vmap[v]] + " and " + target.vertices()[image] + " (" + why + ")");
        vmap[v] = image;
    };

    for (const auto& [from, to] : vertex_images) {
        auto v = source.find_vertex(from);
        auto w = target.find_vertex(to);
        if (!v || !w) throw IncompatibleMap("unknown vertex in map: " + from + " -> " + to);
        assign(*v, *w, "declared");
    }

    std::vector<EdgePath> images;
    for (const auto& e : source.edges()) {
        auto it = edge_images.find(e.label);
        if (it == edge_images.end()) throw IncompatibleMap("edge " + e.label + " has no image");
        EdgePath img;
        try {
            img = target.path(it->second);
        } catch (const std::invalid_argument& err) {
            throw IncompatibleMap("image of " + e.label + ": " + err.what());
        }
        if (!img.empty()) {
            Letter first = img.letters().front(), last = img.letters().back();
            const auto& f = target.edges()[generator_of(first)];
            const auto& l = target.edges()[generator_of(last)];
            assign(e.source, sign_of(first) > 0 ? f.source : f.target, "edge " + e.label);
            assign(e.target, sign_of(last) > 0 ? l.target : l.source, "edge " + e.label);
        }
        images.push_back(std::move(img));
    }
    for (const auto& [label, _] : edge_images)
        if (!source.find_edge(label)) throw IncompatibleMap("map names unknown edge " + label);

    std::vector<std::size_t> resolved;
    for (std::size_t v = 0; v < vmap.size(); ++v) {
        if (!vmap[v]) throw IncompatibleMap("vertex " + source.vertices()[v] + " has no image");
        resolved.push_back(*vmap[v]);
    }
    return GluingMap(source, target, std::move(images), std::move(resolved));
}

EdgePath GluingMap::apply(const EdgePath& p) const {
    Word out;
    for (Letter l : p.letters()) {
        const EdgePath& img = edge_images_.at(generator_of(l));
        out *= sign_of(l) > 0 ? img : img.inverse();
    }
    return out;
}

// --- fundamental groups ----------------------------------------------------

Word Pi1Result::rewrite(const EdgePath& p) const {
    std::vector<Letter> out;
    for (Letter l : p.letters())
        if (auto g = generator_of_edge.at(generator_of(l))) out.push_back(letter(*g, sign_of(l)));
    return reduce_word(Word(std::move(out)));
}

Pi1Result pi1_presentation(const GluingComplex& c) {
    c.validate();
    const auto& edges = c.edges();
    const std::size_t nv = c.vertices().size();

    // Tree path from the basepoint to every vertex.
    std::vector<std::optional<EdgePath>> to_vertex(nv);
    std::vector<bool> in_tree(edges.size(), false);
    to_vertex[c.basepoint()] = EdgePath();
    std::deque<std::size_t> queue{c.basepoint()};
    while (!queue.empty()) {
        std::size_t v = queue.front();
        queue.pop_front();
        for (std::size_t i = 0; i < edges.size(); ++i) {
            const auto& e = edges[i];
            if (e.source == e.target) continue;
            std::size_t other;
            Letter step;
            if (e.source == v) {
                other = e.target;
                step = letter(i, 1);
            } else if (e.target == v) {
                other = e.source;
                step = letter(i, -1);
            } else {
                continue;
            }
            if (to_vertex[other]) continue;
            in_tree[i] = true;
            to_vertex[other] = *to_vertex[v] * Word(std::vector<Letter>{step});
            queue.push_back(other);
        }
    }

    Pi1Result out;
    out.generator_of_edge.resize(edges.size());
    std::vector<std::string> names;
    for (std::size_t i = 0; i < edges.size(); ++i) {
        if (in_tree[i]) continue;
        out.generator_of_edge[i] = names.size();
        names.push_back(edges[i].label);
        const auto& e = edges[i];
        out.loops.push_back(reduce_word(*to_vertex[e.source] * Word(std::vector<Letter>{letter(i, 1)}) *
                                        to_vertex[e.target]->inverse()));
    }

    std::vector<Word> relators;
    for (const auto& cell : c.cells()) relators.push_back(out.rewrite(cell));
    out.group = Presentation(std::move(names), std::move(relators));
    return out;
}

GroupHom induced_hom(const GluingMap& m, const Pi1Result& source, const Pi1Result& target) {
    std::vector<Word> images;
    for (const auto& loop : source.loops) images.push_back(target.rewrite(m.apply(loop)));
    return GroupHom(source.group, target.group, std::move(images));
}

Presentation glue_fundamental_group(const Presentation& pi1_xbar, const GroupHom& dbar_to_xbar,
                                    const GroupHom& dbar_to_d) {
    if (dbar_to_xbar.source().generator_count() != dbar_to_d.source().generator_count())
        throw std::invalid_argument("both maps must start at the same group");
    return amalgamated_product(pi1_xbar, dbar_to_d.target(), dbar_to_xbar.source(), dbar_to_xbar, dbar_to_d);
}

}  // namespace stablepi1
