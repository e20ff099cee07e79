#pragma once

// Fundamental groups of 2-complexes given by labelled 1-skeletons and 2-cells,
// maps between them, and the pushout group of a glueing.

#include "stablepi1/fpgroup.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace stablepi1 {

// Edge paths reuse Word: letter generator i is edge i, sign is the traversal direction.
using EdgePath = Word;

class GluingComplex {
public:
    struct Edge {
        std::string label;
        std::size_t source;
        std::size_t target;
    };

    GluingComplex() = default;
    explicit GluingComplex(std::string name) : name_(std::move(name)) {}

    std::size_t add_vertex(const std::string& label);
    std::size_t add_edge(const std::string& label, const std::string& source, const std::string& target);
    // Boundary of a 2-cell, written in edge labels, e.g. "a1 b1 f1^-1 g1".
    void add_cell(const std::string& boundary);
    void set_basepoint(const std::string& vertex);

    const std::string& name() const noexcept { return name_; }
    const std::vector<std::string>& vertices() const noexcept { return vertices_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    const std::vector<EdgePath>& cells() const noexcept { return cells_; }
    std::size_t basepoint() const noexcept { return basepoint_; }

    std::optional<std::size_t> find_vertex(const std::string& label) const;
    std::optional<std::size_t> find_edge(const std::string& label) const;
    EdgePath path(const std::string& text) const;
    std::string format(const EdgePath& p) const;

    // Endpoint of `p` walked from `start`; nullopt when consecutive edges do not meet.
    std::optional<std::size_t> walk(std::size_t start, const EdgePath& p) const;

    // Throws DisconnectedComplex or ValidationError.
    void validate() const;

    // Same complex with edges declared in the given order (a permutation of indices).
    GluingComplex with_edge_order(const std::vector<std::size_t>& order) const;

private:
    Presentation edge_alphabet() const;

    std::string name_;
    std::vector<std::string> vertices_;
    std::vector<Edge> edges_;
    std::vector<std::string> cell_text_;
    std::vector<EdgePath> cells_;
    std::size_t basepoint_ = 0;
    bool basepoint_set_ = false;
};

// Cellular map: every source edge goes to an edge path of the target.
class GluingMap {
public:
    GluingMap(const GluingComplex& source, const GluingComplex& target, std::vector<EdgePath> edge_images,
              std::vector<std::size_t> vertex_images);

    // Edge images as label words ("A", "B^-1", ...). Vertex images are inferred from the
    // edges; entries of `vertex_images` are checked against the inferred ones and fill in
    // isolated vertices. Throws IncompatibleMap.
    static GluingMap from_labels(const GluingComplex& source, const GluingComplex& target,
                                 const std::map<std::string, std::string>& edge_images,
                                 const std::map<std::string, std::string>& vertex_images = {});

    const std::vector<EdgePath>& edge_images() const noexcept { return edge_images_; }
    const std::vector<std::size_t>& vertex_images() const noexcept { return vertex_images_; }

    EdgePath apply(const EdgePath& p) const;

private:
    std::vector<EdgePath> edge_images_;
    std::vector<std::size_t> vertex_images_;
};

struct Pi1Result {
    Presentation group;
    std::vector<EdgePath> loops;               // closed loop at the basepoint for each generator
    std::vector<std::optional<std::size_t>> generator_of_edge;  // nullopt for spanning-tree edges

    // Word in the generators for a closed edge path.
    Word rewrite(const EdgePath& p) const;
};

// Breadth-first spanning tree from the basepoint, edges scanned in declared order.
Pi1Result pi1_presentation(const GluingComplex& c);

GroupHom induced_hom(const GluingMap& m, const Pi1Result& source, const Pi1Result& target);

Presentation glue_fundamental_group(const Presentation& pi1_xbar, const GroupHom& dbar_to_xbar,
                                    const GroupHom& dbar_to_d);

}  // namespace stablepi1
