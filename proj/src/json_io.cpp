#include "metricgeo/json_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace metricgeo {

json to_json(const DistanceMatrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.size(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.size(); ++j) row.push_back(m(i, j));
        rows.push_back(row);
    }
    return {{"n", m.size()},
            {"kind", m.kind() == MetricKind::Metric ? "metric" : "pseudometric"},
            {"d", rows}};
}

DistanceMatrix matrix_from_json(const json& j) {
    if (!j.contains("n") || !j.contains("d")) throw std::invalid_argument("matrix JSON needs n and d");
    const int n = j.at("n").get<int>();
    MetricKind kind = MetricKind::Metric;
    if (j.contains("kind")) {
        std::string k = j.at("kind").get<std::string>();
        if (k == "pseudometric") kind = MetricKind::Pseudometric;
        else if (k != "metric") throw std::invalid_argument("kind must be metric or pseudometric");
    }
    const auto& rows = j.at("d");
    if (static_cast<int>(rows.size()) != n) throw std::invalid_argument("d must have n rows");
    Eigen::MatrixXd d(n, n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[i].size()) != n) throw std::invalid_argument("d must be n x n");
        for (int k = 0; k < n; ++k) d(i, k) = rows[i][k].get<double>();
    }
    return DistanceMatrix(std::move(d), kind);
}

DistanceMatrix matrix_from_csv(const std::string& text, MetricKind kind) {
    std::vector<std::vector<double>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r,") == std::string::npos && !rows.empty()) continue;
        std::vector<double> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) {
            if (cell.find_first_not_of(" \t\r") == std::string::npos) continue;
            row.push_back(std::stod(cell));
        }
        rows.push_back(std::move(row));
    }
    const int n = static_cast<int>(rows.size());
    if (n < 1) throw std::invalid_argument("empty CSV matrix");
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[i].size()) != i)
            throw std::invalid_argument("CSV row " + std::to_string(i) + " must list " +
                                        std::to_string(i) + " entries");
        for (int j = 0; j < i; ++j) d(i, j) = d(j, i) = rows[i][j];
    }
    return DistanceMatrix(std::move(d), kind);
}

DistanceMatrix load_matrix(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open file: " + path);
    std::stringstream buf;
    buf << f.rdbuf();
    if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0)
        return matrix_from_csv(buf.str());
    return matrix_from_json(json::parse(buf.str()));
}

json to_json(const ValidationReport& r) {
    json out = {{"ok", r.ok}};
    if (!r.ok) {
        out["axiom"] = r.axiom;
        json w = json::array();
        for (int x : r.witness)
            if (x >= 0) w.push_back(x);
        out["witness"] = w;
    }
    return out;
}

ModelSpace space_from_json(const json& j) {
    std::string s = j.at("space").get<std::string>();
    if (s == "euclidean") return Euclidean{j.at("dim").get<int>()};
    if (s == "sphere") return Sphere{j.at("dim").get<int>(), j.value("radius", 1.0)};
    if (s == "hyperbolic") return Hyperbolic{j.at("dim").get<int>(), j.value("scale", 1.0)};
    if (s == "circle") return Circle{j.at("length").get<double>()};
    if (s == "tree") return TreeValence{j.at("valence").get<int>()};
    throw std::invalid_argument("unknown model space: " + s);
}

json to_json(const ModelSpace& s) {
    json out = {{"space", space_name(s)}};
    std::visit(
        [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, Euclidean>) out["dim"] = v.dim;
            else if constexpr (std::is_same_v<T, Sphere>) {
                out["dim"] = v.dim;
                out["radius"] = v.radius;
            } else if constexpr (std::is_same_v<T, Hyperbolic>) {
                out["dim"] = v.dim;
                out["scale"] = v.scale;
            } else if constexpr (std::is_same_v<T, Circle>) out["length"] = v.length;
            else out["valence"] = v.valence;
        },
        s);
    return out;
}

json to_json(const EmbedResult& r) {
    json out = {{"embeddable", r.embeddable}, {"marginal", r.marginal}};
    if (r.coordinates) out["witness"] = *r.coordinates;
    if (r.tree_witness) out["tree_witness"] = to_json(*r.tree_witness);
    if (r.certificate) out["certificate"] = *r.certificate;
    return out;
}

json to_json(const FiniteTree& t) {
    json vs = json::array();
    for (int i = 0; i < t.vertex_count(); ++i) {
        json v = {{"id", i}};
        v["label"] = t.vertex(i).label ? json(*t.vertex(i).label) : json(nullptr);
        vs.push_back(v);
    }
    json es = json::array();
    for (const auto& e : t.edges()) es.push_back({{"u", e.u}, {"v", e.v}, {"len", e.len}});
    json out = {{"vertices", vs}, {"edges", es}};
    out["valence_budget"] = t.valence_budget() ? json(*t.valence_budget()) : json(nullptr);
    return out;
}

FiniteTree tree_from_json(const json& j) {
    FiniteTree t;
    for (const auto& v : j.at("vertices")) {
        std::optional<std::string> label;
        if (v.contains("label") && !v.at("label").is_null()) label = v.at("label").get<std::string>();
        int id = t.add_vertex(label);
        if (v.contains("id") && v.at("id").get<int>() != id)
            throw std::invalid_argument("tree vertex ids must be consecutive from 0");
    }
    for (const auto& e : j.at("edges"))
        t.add_edge(e.at("u").get<int>(), e.at("v").get<int>(), e.at("len").get<double>());
    if (j.contains("valence_budget") && !j.at("valence_budget").is_null())
        t.set_valence_budget(j.at("valence_budget").get<int>());
    if (!t.structurally_valid()) throw std::invalid_argument("tree JSON is not a valid tree");
    return t;
}

json to_json(const TreeLocation& loc) {
    if (loc.is_vertex()) return {{"vertex", loc.vertex}};
    return {{"edge", loc.edge}, {"offset", loc.offset}};
}

TreeLocation location_from_json(const json& j) {
    if (j.contains("vertex")) return TreeLocation::at_vertex(j.at("vertex").get<int>());
    return TreeLocation::on_edge(j.at("edge").get<int>(), j.at("offset").get<double>());
}

json to_json(const PartialMap& p) { return {{"domain", p.domain}, {"image", p.image}}; }

PartialMap partial_map_from_json(const json& j) {
    PartialMap p;
    p.domain = j.at("domain").get<std::vector<int>>();
    p.image = j.at("image").get<std::vector<int>>();
    return p;
}

json to_json(const HomogeneityReport& r) {
    json out = {{"verdict", r.verdict},
                {"checked_k", r.checked_k},
                {"isometry_group_size", r.isometry_group_size}};
    if (r.witness) out["witness"] = to_json(*r.witness);
    return out;
}

json to_json(const FingerprintVector& v) { return {{"n", v.n}, {"entries", v.entries}}; }

json to_json(const FingerprintSet& s) { return {{"n", s.n}, {"vectors", s.vectors}}; }

json to_json(const NonclosedReport& r) {
    return {{"valence", r.valence},
            {"k", r.k},
            {"eps", r.eps_list},
            {"members", r.members},
            {"limit_member", r.limit_member},
            {"gaps", r.gaps},
            {"gap_exhibited", r.gap_exhibited},
            {"note", r.note}};
}

json to_json(const EdgeColoring& c) {
    json colors = json::array();
    for (int i = 0; i < c.n; ++i) {
        json row = json::array();
        for (int j = 0; j < i; ++j) row.push_back(c.color[i][j]);
        colors.push_back(row);
    }
    json bins = json::array();
    for (const auto& b : c.bins) bins.push_back({{"lo", b.lo}, {"hi", b.hi}});
    return {{"n", c.n}, {"colors", colors}, {"bins", bins}};
}

json to_json(const TraceStep& s) {
    json out = {{"point", to_json(s.point)}, {"gate", to_json(s.gate)}, {"t", s.t}};
    if (s.direction >= 0) out["direction"] = s.direction;
    else out["offset"] = s.offset;
    return out;
}

json to_json(const ExtensionTrace& t) {
    json steps = json::array();
    for (const auto& s : t.steps) steps.push_back(to_json(s));
    return steps;
}

json to_json(const PartialIsometry& p) {
    json dom = json::array(), img = json::array();
    for (const auto& l : p.domain()) dom.push_back(to_json(l));
    for (int v : p.image_vertices()) img.push_back(to_json(TreeLocation::at_vertex(v)));
    return {{"domain", dom}, {"images", img}, {"target", to_json(p.target())}};
}

} // namespace metricgeo
