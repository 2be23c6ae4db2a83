#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "metricgeo/embed.hpp"
#include "metricgeo/extend.hpp"
#include "metricgeo/fingerprint.hpp"
#include "metricgeo/homog.hpp"
#include "metricgeo/json_io.hpp"
#include "metricgeo/ramsey.hpp"
#include "metricgeo/tree.hpp"

using namespace metricgeo;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitPropertyFalse = 1;
constexpr int kExitInputError = 2;

void emit(const json& payload, const std::string& status) {
    json doc = {{"status", status}, {"payload", payload}};
    std::cout << doc.dump(2) << "\n";
}

int ok(const json& payload) {
    emit(payload, "ok");
    return kExitOk;
}

int property_false(const json& payload) {
    emit(payload, "property-false");
    return kExitPropertyFalse;
}

std::vector<double> parse_doubles(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        if (cell.find_first_not_of(" \t") == std::string::npos) continue;
        out.push_back(std::stod(cell));
    }
    return out;
}

std::vector<int> parse_ints(const std::string& s) {
    std::vector<int> out;
    for (double d : parse_doubles(s)) out.push_back(static_cast<int>(d));
    return out;
}

struct SpaceFlags {
    std::string space;
    int dim = 1;
    double radius = 1.0;
    double scale = 1.0;
    double length = 1.0;
    int valence = 3;

    void attach(CLI::App* cmd, bool require_space = true) {
        auto* s = cmd->add_option("--space", space, "euclidean|sphere|hyperbolic|circle|tree");
        if (require_space) s->required();
        cmd->add_option("--dim", dim, "dimension (euclidean/sphere/hyperbolic)");
        cmd->add_option("--radius", radius, "sphere radius");
        cmd->add_option("--scale", scale, "hyperbolic curvature scale");
        cmd->add_option("--length", length, "circle length");
        cmd->add_option("--valence", valence, "tree valence bound");
    }

    ModelSpace build() const {
        if (space == "euclidean") return Euclidean{dim};
        if (space == "sphere") return Sphere{dim, radius};
        if (space == "hyperbolic") return Hyperbolic{dim, scale};
        if (space == "circle") return Circle{length};
        if (space == "tree") return TreeValence{valence};
        throw std::invalid_argument("unknown model space: " + space);
    }
};

json load_json_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open file: " + path);
    return json::parse(f);
}

TreeLocation location_from_loose(const FiniteTree& t, const json& j) {
    if (j.is_number_integer()) {
        int v = j.get<int>();
        if (v < 0 || v >= t.vertex_count())
            throw std::invalid_argument("vertex id out of range: " + std::to_string(v));
        return TreeLocation::at_vertex(v);
    }
    return t.normalize(location_from_json(j));
}

// The six projective lines behind the bundled dataset (see
// scripts/gen_rpn_triples.py); distances are arccos |<u, v>|. The second
// triple is rotated about (1,1,1) by 40 degrees so all lines are distinct.
DistanceMatrix rpn_matrix() {
    const double s3 = std::sqrt(3.0);
    auto rotate = [&](std::array<double, 3> u, double ang) {
        const double ax = 1.0 / s3;
        const double c = std::cos(ang), s = std::sin(ang);
        const double dot = ax * (u[0] + u[1] + u[2]);
        const std::array<double, 3> cross = {ax * (u[2] - u[1]), ax * (u[0] - u[2]),
                                             ax * (u[1] - u[0])};
        std::array<double, 3> out;
        for (int i = 0; i < 3; ++i) out[i] = u[i] * c + cross[i] * s + ax * dot * (1.0 - c);
        return out;
    };
    const double ang = 40.0 * std::acos(-1.0) / 180.0;
    const std::vector<std::array<double, 3>> u = {
        {1.0, 0.0, 0.0},
        {0.5, s3 / 2.0, 0.0},
        {-0.5, s3 / 2.0, 0.0},
        rotate({1.0, 0.0, 0.0}, ang),
        rotate({0.5, s3 / 2.0, 0.0}, ang),
        rotate({0.5, 1.0 / (2.0 * s3), std::sqrt(2.0 / 3.0)}, ang),
    };
    const int n = static_cast<int>(u.size());
    Eigen::MatrixXd d = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            double dot = std::fabs(u[i][0] * u[j][0] + u[i][1] * u[j][1] + u[i][2] * u[j][2]);
            d(i, j) = std::acos(std::min(1.0, dot));
        }
    return DistanceMatrix(std::move(d));
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite metric space toolkit"};
    app.require_subcommand(1);

    // validate
    std::string validate_file;
    auto* cmd_validate = app.add_subcommand("validate", "check the metric axioms");
    cmd_validate->add_option("matrix-file", validate_file)->required();

    // embed
    SpaceFlags embed_space;
    std::string embed_file;
    auto* cmd_embed = app.add_subcommand("embed", "test embeddability into a model space");
    embed_space.attach(cmd_embed);
    cmd_embed->add_option("matrix-file", embed_file)->required();

    // tree build
    auto* cmd_tree = app.add_subcommand("tree", "tree-metric operations");
    cmd_tree->require_subcommand(1);
    std::string tree_file;
    int tree_valence = 0;
    auto* cmd_tree_build = cmd_tree->add_subcommand("build", "realize a tree metric");
    cmd_tree_build->add_option("--valence", tree_valence, "valence budget to enforce");
    cmd_tree_build->add_option("matrix-file", tree_file)->required();

    // homog
    std::string homog_file;
    int homog_k = 0;
    auto* cmd_homog = app.add_subcommand("homog", "homogeneity check");
    cmd_homog->add_option("--k", homog_k, "k-homogeneity only (0 = all-set)");
    cmd_homog->add_option("matrix-file", homog_file)->required();

    // fingerprint
    std::string fp_file, fp_mode = "tuples";
    int fp_n = 0;
    auto* cmd_fp = app.add_subcommand("fingerprint", "enumerate n-point configurations");
    cmd_fp->add_option("--n", fp_n, "configuration size")->required();
    cmd_fp->add_option("--mode", fp_mode, "tuples|injective");
    cmd_fp->add_option("matrix-file", fp_file)->required();

    // member
    SpaceFlags member_space;
    std::string member_vector;
    auto* cmd_member = app.add_subcommand("member", "test a configuration vector for membership");
    member_space.attach(cmd_member);
    cmd_member->add_option("--vector", member_vector, "comma-separated pair distances")->required();

    // extend
    std::string ext_source, ext_map, ext_points;
    int ext_valence = 0;
    auto* cmd_extend = app.add_subcommand("extend", "extend a partial isometry of a tree");
    cmd_extend->add_option("--source", ext_source, "source tree JSON")->required();
    cmd_extend->add_option("--map", ext_map, "partial map JSON (domain/image locations)")->required();
    cmd_extend->add_option("--points", ext_points, "comma-separated vertex ids to extend over")
        ->required();
    cmd_extend->add_option("--valence", ext_valence, "valence budget (default: tree budget or 3)");

    // ramsey
    auto* cmd_ramsey = app.add_subcommand("ramsey", "clique extraction by distance color");
    cmd_ramsey->require_subcommand(1);
    std::string ramsey_near_file, ramsey_equi_file;
    double ramsey_delta = 1.0, ramsey_r = 1.0, ramsey_tol = 0.0;
    auto* cmd_near = cmd_ramsey->add_subcommand("near", "monochromatic clique over distance bins");
    cmd_near->add_option("--delta", ramsey_delta, "bin width");
    cmd_near->add_option("matrix-file", ramsey_near_file)->required();
    auto* cmd_equi = cmd_ramsey->add_subcommand("equi", "maximum near-equilateral subset");
    cmd_equi->add_option("--r", ramsey_r, "target distance")->required();
    cmd_equi->add_option("--tol", ramsey_tol, "distance slack");
    cmd_equi->add_option("matrix-file", ramsey_equi_file)->required();

    // demo
    auto* cmd_demo = app.add_subcommand("demo", "bundled demonstrations");
    cmd_demo->require_subcommand(1);
    int demo_valence = 3, demo_k = 4;
    std::string demo_eps = "0.1,0.01,0.001", demo_csv;
    auto* cmd_nonclosed = cmd_demo->add_subcommand("nonclosed", "configuration-set limit point demo");
    cmd_nonclosed->add_option("--valence", demo_valence, "tree valence");
    cmd_nonclosed->add_option("--k", demo_k, "points per configuration");
    cmd_nonclosed->add_option("--eps", demo_eps, "comma-separated epsilon list");
    cmd_nonclosed->add_option("--csv", demo_csv, "write the vector sequence as CSV");
    auto* cmd_rpn = cmd_demo->add_subcommand("rpn-triples",
                                             "projective-plane two-triples dataset and report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << e.what() << "\n";
        return kExitInputError;
    }

    try {
        if (*cmd_validate) {
            DistanceMatrix m = load_matrix(validate_file);
            ValidationReport r = validate_metric(m);
            json payload = {{"matrix", to_json(m)}, {"report", to_json(r)}};
            return r.ok ? ok(payload) : property_false(payload);
        }

        if (*cmd_embed) {
            DistanceMatrix m = load_matrix(embed_file);
            ValidationReport v = validate_metric(m);
            if (!v.ok) throw std::invalid_argument("input is not a (pseudo)metric: " + v.axiom);
            ModelSpace space = embed_space.build();
            EmbedResult r = embed(m, space);
            json payload = {{"space", to_json(space)}, {"result", to_json(r)}};
            return r.embeddable ? ok(payload) : property_false(payload);
        }

        if (*cmd_tree_build) {
            DistanceMatrix m = load_matrix(tree_file);
            ValidationReport v = validate_metric(m);
            if (!v.ok) throw std::invalid_argument("input is not a metric: " + v.axiom);
            FourPointReport fp = four_point_check(m);
            if (!fp.ok) {
                json payload = {{"four_point", false},
                                {"witness", {fp.witness[0], fp.witness[1], fp.witness[2],
                                             fp.witness[3]}}};
                return property_false(payload);
            }
            FiniteTree t = build_realization(m);
            json payload = {{"four_point", true}, {"tree", to_json(t)},
                            {"max_degree", max_degree(t)}};
            if (tree_valence > 0) {
                payload["valence"] = tree_valence;
                if (max_degree(t) > tree_valence) {
                    payload["within_valence"] = false;
                    return property_false(payload);
                }
                payload["within_valence"] = true;
            }
            return ok(payload);
        }

        if (*cmd_homog) {
            DistanceMatrix m = load_matrix(homog_file);
            ValidationReport v = validate_metric(m);
            if (!v.ok) throw std::invalid_argument("input is not a metric: " + v.axiom);
            HomogeneityReport r =
                homog_k > 0 ? is_k_homogeneous(m, homog_k) : is_all_set_homogeneous(m);
            json payload = to_json(r);
            return r.verdict ? ok(payload) : property_false(payload);
        }

        if (*cmd_fp) {
            DistanceMatrix m = load_matrix(fp_file);
            FingerprintMode mode;
            if (fp_mode == "tuples") mode = FingerprintMode::Tuples;
            else if (fp_mode == "injective") mode = FingerprintMode::Injective;
            else throw std::invalid_argument("mode must be tuples or injective");
            FingerprintSet s = fingerprint_finite(m, fp_n, mode);
            return ok(to_json(s));
        }

        if (*cmd_member) {
            std::vector<double> entries = parse_doubles(member_vector);
            const auto L = entries.size();
            int n = static_cast<int>((1.0 + std::sqrt(1.0 + 8.0 * static_cast<double>(L))) / 2.0);
            if (static_cast<std::size_t>(n) * (n - 1) / 2 != L)
                throw std::invalid_argument("vector length must be n(n-1)/2 for some n");
            FingerprintVector v{n, entries};
            ModelSpace space = member_space.build();
            MemberResult r = member(v, space);
            json payload = {{"space", to_json(space)}, {"vector", to_json(v)},
                            {"member", r.member}};
            if (!r.certificate.empty()) payload["certificate"] = r.certificate;
            return r.member ? ok(payload) : property_false(payload);
        }

        if (*cmd_extend) {
            FiniteTree source = tree_from_json(load_json_file(ext_source));
            json mapj = load_json_file(ext_map);
            std::vector<TreeLocation> domain, images;
            for (const auto& j : mapj.at("domain")) domain.push_back(location_from_loose(source, j));
            const json& img = mapj.contains("image") ? mapj.at("image") : mapj.at("images");
            for (const auto& j : img) images.push_back(location_from_loose(source, j));
            int valence = ext_valence > 0 ? ext_valence
                                          : source.valence_budget().value_or(
                                                std::max(3, max_degree(source)));
            PartialIsometry iso = PartialIsometry::from_self_map(source, domain, images, valence);
            std::vector<TreeLocation> points;
            for (int v : parse_ints(ext_points)) {
                if (v < 0 || v >= source.vertex_count())
                    throw std::invalid_argument("point id out of range: " + std::to_string(v));
                points.push_back(TreeLocation::at_vertex(v));
            }
            ExtensionTrace trace;
            try {
                trace = iso.extend_all(points);
            } catch (const std::runtime_error& e) {
                return property_false({{"extended", false}, {"reason", e.what()}});
            }
            auto check = iso.verify();
            json payload = {{"extended", true},
                            {"trace", to_json(trace)},
                            {"map", to_json(iso)},
                            {"verified", check.ok},
                            {"worst_deviation", check.worst}};
            return check.ok ? ok(payload) : property_false(payload);
        }

        if (*cmd_near) {
            DistanceMatrix m = load_matrix(ramsey_near_file);
            EdgeColoring c = bin_distances(m, ramsey_delta);
            auto r = monochromatic_clique(c);
            json payload = {{"coloring", to_json(c)}};
            if (r) payload["clique"] = {{"color", r->color}, {"subset", r->subset}};
            else payload["clique"] = nullptr;
            return ok(payload);
        }

        if (*cmd_equi) {
            DistanceMatrix m = load_matrix(ramsey_equi_file);
            std::vector<int> subset = equilateral_subset(m, ramsey_r, ramsey_tol);
            json payload = {{"r", ramsey_r}, {"tol", ramsey_tol}, {"subset", subset},
                            {"size", subset.size()}};
            return ok(payload);
        }

        if (*cmd_nonclosed) {
            std::vector<double> eps = parse_doubles(demo_eps);
            NonclosedReport r = nonclosed_demo(demo_valence, demo_k, eps);
            if (!demo_csv.empty()) {
                std::ofstream out(demo_csv);
                if (!out) throw std::invalid_argument("cannot write CSV: " + demo_csv);
                for (std::size_t i = 0; i < eps.size(); ++i) {
                    FingerprintVector v = comb_vector(demo_valence, demo_k, eps[i]);
                    out << eps[i];
                    for (double e : v.entries) out << "," << e;
                    out << "\n";
                }
                out << "0";
                const int pairs = demo_k * (demo_k - 1) / 2;
                for (int i = 0; i < pairs; ++i) out << ",1";
                out << "\n";
            }
            return ok(to_json(r));
        }

        if (*cmd_rpn) {
            DistanceMatrix m = rpn_matrix();
            std::vector<int> a = {0, 1, 2}, b = {3, 4, 5};
            auto perm = is_isometric(restrict(m, a), restrict(m, b));
            json triples_iso = nullptr;
            PartialMap p{a, b};
            if (perm) {
                p.image = {b[(*perm)[0]], b[(*perm)[1]], b[(*perm)[2]]};
                triples_iso = *perm;
            }
            auto glob = extends_to_global(m, p);
            HomogeneityReport hr = is_all_set_homogeneous(m);
            json payload = {{"matrix", to_json(m)},
                            {"triples", {a, b}},
                            {"triples_isometric", triples_iso},
                            {"triple_map_extends", glob.has_value()},
                            {"homog", to_json(hr)}};
            return ok(payload);
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }

    std::cerr << "no subcommand dispatched\n";
    return kExitInputError;
}
