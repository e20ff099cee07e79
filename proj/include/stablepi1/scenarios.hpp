#pragma once

// Catalogue scenarios: parsing, validation, execution and reports.

#include "stablepi1/fpgroup.hpp"
#include "stablepi1/torus.hpp"
#include "stablepi1/vankampen.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace stablepi1 {

enum class ScenarioKind { vankampen, torus_lattice, parametric, constant };

std::string to_string(ScenarioKind k);
std::optional<ScenarioKind> parse_kind(std::string_view text);

struct ExpectedGroup {
    std::optional<long> order;  // unset when the order is the determinant of the isogeny
    bool order_is_det = false;
    bool cyclic = true;

    std::string describe() const;
};

struct ScenarioMeta {
    std::string normal;
    std::string smoothable;  // kept verbatim: "yes", "no", "unknown", ...
    std::string family;
    std::optional<long> nodes;
    std::optional<long> cusps;
    std::optional<long> ramification;
};

struct VanKampenPayload {
    GluingComplex dbar;
    GluingComplex d;
    std::map<std::string, std::string> edge_map;
    std::map<std::string, std::string> vertex_map;

    GluingMap gluing_map() const { return GluingMap::from_labels(dbar, d, edge_map, vertex_map); }
};

struct TorusPayload {
    std::string pipeline;
    std::vector<std::string> basis;
    Integer denominator = 1;
    std::map<std::string, AffineTorusMap> maps;
    std::map<std::string, IntMatrix> matrices;
    std::map<std::string, IntMatrix> lattices;
    std::map<std::string, IntMatrix> subtori;
    // Remaining keyword lines, in file order; a key may repeat.
    std::vector<std::pair<std::string, std::vector<std::string>>> settings;

    const std::vector<std::string>* setting(const std::string& key) const;
    std::vector<const std::vector<std::string>*> all(const std::string& key) const;
};

struct Scenario {
    std::string id;
    ScenarioKind kind = ScenarioKind::constant;
    ScenarioMeta meta;
    ExpectedGroup expected;
    std::variant<std::monostate, VanKampenPayload, TorusPayload> payload;
    std::string origin;  // file path, if any
};

// Throws ParseError (with line and column) or ValidationError.
Scenario parse_scenario(std::string_view text, const std::string& origin = {});
Scenario load_scenario(const std::filesystem::path& path);

struct Check {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct Report {
    std::string id;
    std::optional<Presentation> presentation;
    std::optional<AbelianInvariants> abelianization;
    std::optional<std::size_t> order;
    std::optional<bool> cyclic;
    ExpectedGroup expected;
    std::optional<long> expected_order;  // resolved, including determinant-valued orders
    bool passed = false;
    double elapsed_ms = 0;
    std::string error;
    std::vector<Check> checks;
    ScenarioMeta meta;
};

struct RunOptions {
    std::size_t max_cosets = default_max_cosets;
};

// The pi_1 presentation for a scenario together with the side checks its pipeline performs.
struct ScenarioGroup {
    Presentation group;
    std::vector<Check> checks;
    std::optional<long> resolved_order;  // for determinant-valued expectations
};
ScenarioGroup compute_group(const Scenario& s);

Report run_scenario(const Scenario& s, const RunOptions& options = {});

struct CatalogueResult {
    std::vector<Report> reports;  // sorted by id

    std::size_t passed() const;
    std::size_t total() const { return reports.size(); }
    bool all_passed() const { return passed() == total(); }
};

// Scenario files (*.scn) in `dir`, sorted by name.
std::vector<std::filesystem::path> catalogue_files(const std::filesystem::path& dir);

// Runs every scenario file concurrently; load failures become failing reports.
CatalogueResult verify_catalogue(const std::filesystem::path& dir, const RunOptions& options = {});

std::string report_json(const Report& r, int indent = 2);
std::string catalogue_json(const CatalogueResult& c, int indent = 2);
std::string catalogue_markdown(const CatalogueResult& c);
std::string report_markdown(const Report& r);

}  // namespace stablepi1
