// nsurf: command-line front end to the normal surface library.
//
// Exit codes: 0 ok, 1 error (including usage errors), 2 unreadable or invalid
// input, 3 negative or not-applicable result.

#include "nsurf/casson.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>

namespace {

using namespace nsurf;
using json = nlohmann::ordered_json;

enum Exit : int { kOk = 0, kError = 1, kInvalidInput = 2, kNegative = 3 };

constexpr int kFormat = 1;

/// Input that cannot be read or does not describe what the command needs.
struct InputError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Triangulation load_triangulation(const std::string& path)
{
    const auto text = read_file(path);
    try {
        return parse_triangulation(text);
    } catch (const Error& e) {
        throw InputError(path + ": " + e.what());
    }
}

// first line that is neither blank nor a comment
NormalVector load_vector(const std::string& path, std::size_t tets)
{
    std::istringstream in(read_file(path));
    std::string line;
    while (std::getline(in, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            return parse_normal_vector(line, tets);
        } catch (const Error& e) {
            throw InputError(path + ": " + e.what());
        }
    }
    throw InputError(path + ": no vector line");
}

// Coordinates are arbitrary precision; anything outside int64 goes out as a decimal string.
json integer_json(const Integer& x)
{
    if (x >= std::numeric_limits<long long>::min() && x <= std::numeric_limits<long long>::max())
        return static_cast<long long>(x);
    return x.str();
}

json coords_json(const NormalVector& x)
{
    json a = json::array();
    for (const auto& c : x.coords()) a.push_back(integer_json(c));
    return a;
}

json surface_json(const NormalVector& x, const SurfaceClass& c)
{
    return json{{"coords", coords_json(x)},
                {"kind", to_string(c.kind)},
                {"euler", c.euler},
                {"connected", c.connected},
                {"orientable", c.orientable},
                {"vertex_linking", c.vertex_linking},
                {"components", c.component_count},
                {"quad_support", x.quad_support()}};
}

json group_json(const HomologyGroup& g)
{
    json torsion = json::array();
    for (const auto& d : g.torsion) torsion.push_back(integer_json(d));
    return json{{"betti", g.betti}, {"torsion", torsion}, {"text", g.str()}};
}

json triangulation_json(const Triangulation& t)
{
    return json{{"tetrahedra", t.size()}, {"gluing", serialize(t)}};
}

json candidate_json(const SphereCandidate& c)
{
    json j = surface_json(c.sphere, c.cls);
    j["origin"] = to_string(c.origin);
    j["pattern"] = c.pattern ? json(c.pattern->str()) : json(nullptr);
    return j;
}

json stats_json(const SearchStats& s)
{
    return json{{"cone_enumerations", s.cone_enumerations},
                {"max_rows", s.max_rows},
                {"max_columns", s.max_columns},
                {"pair_sum_supplements", s.pair_sum_supplements}};
}

std::string yes(bool b) { return b ? "yes" : "no"; }

std::string join(const std::vector<std::size_t>& xs)
{
    std::string s;
    for (auto x : xs) s += (s.empty() ? "" : " ") + std::to_string(x);
    return s.empty() ? "-" : s;
}

std::string describe(const SurfaceClass& c)
{
    std::ostringstream s;
    s << to_string(c.kind) << ", euler " << c.euler << ", " << (c.connected ? "connected" : "disconnected") << ", "
      << (c.orientable ? "two-sided" : "one-sided") << (c.vertex_linking ? ", vertex-linking" : "");
    return s.str();
}

/// Text goes to stdout unless the JSON document is sent there instead.
struct Output {
    std::string json_path;
    std::ostringstream text;
    json doc;

    Output(std::string command, std::string path) : json_path(std::move(path))
    {
        doc["format"] = kFormat;
        doc["command"] = std::move(command);
    }

    int finish(int code)
    {
        doc["exit_code"] = code;
        const std::string rendered = doc.dump(2) + "\n";
        if (json_path == "-") {
            std::cout << rendered;
        } else {
            std::cout << text.str();
            if (!json_path.empty()) {
                std::ofstream out(json_path, std::ios::binary);
                if (!(out << rendered)) {
                    std::cerr << "nsurf: cannot write " << json_path << "\n";
                    return kError;
                }
            }
        }
        return code;
    }
};

int cmd_validate(const std::string& file, Output& out)
{
    const auto t = load_triangulation(file);
    const auto r = validate(t);
    const bool good = r.closed_orientable_manifold();
    auto& s = out.text;
    s << "tetrahedra: " << t.size() << "\n"
      << "orientable: " << yes(r.orientable) << "\n"
      << "closed: " << yes(r.closed) << "\n"
      << "edges valid: " << yes(r.edge_valid) << "\n"
      << "vertex links:";
    json links = json::array();
    for (auto l : r.vertex_link_types) {
        s << " " << to_string(l);
        links.push_back(to_string(l));
    }
    s << "\n";
    json failures = json::array();
    for (const auto& d : r.failures) {
        s << "defect " << d.code << ": " << d.message << "\n";
        failures.push_back({{"code", d.code}, {"message", d.message}});
    }
    s << "closed orientable 3-manifold: " << yes(good) << "\n";
    out.doc["tetrahedra"] = t.size();
    out.doc["orientable"] = r.orientable;
    out.doc["closed"] = r.closed;
    out.doc["edge_valid"] = r.edge_valid;
    out.doc["vertex_links"] = links;
    out.doc["failures"] = failures;
    out.doc["valid"] = good;
    return good ? kOk : kNegative;
}

int cmd_skeleton(const std::string& file, Output& out)
{
    const auto t = load_triangulation(file);
    const auto sk = compute_skeleton(t);
    const auto r = validate(t);
    auto& s = out.text;
    s << "tetrahedra: " << t.size() << "\n"
      << "vertices: " << sk.vertices.size() << "\n"
      << "edges: " << sk.edges.size() << "\n"
      << "faces: " << sk.faces.size() << "\n"
      << "boundary faces: " << sk.boundary_faces.size() << "\n"
      << "euler characteristic: " << euler_characteristic(sk, t.size()) << "\n";
    json vertices = json::array();
    for (std::size_t v = 0; v < sk.vertices.size(); ++v) {
        s << "vertex " << v << ": " << sk.vertices[v].size() << " corners, link " << to_string(r.vertex_link_types[v])
          << "\n";
        vertices.push_back({{"corners", sk.vertices[v].size()}, {"link", to_string(r.vertex_link_types[v])}});
    }
    json edges = json::array();
    for (std::size_t e = 0; e < sk.edges.size(); ++e) {
        s << "edge " << e << ": degree " << sk.degree(e) << "\n";
        edges.push_back({{"degree", sk.degree(e)}});
    }
    json boundary = json::array();
    for (const auto& f : sk.boundary_faces) boundary.push_back({f.tet, f.face});
    out.doc["tetrahedra"] = t.size();
    out.doc["vertices"] = vertices;
    out.doc["edges"] = edges;
    out.doc["faces"] = sk.faces.size();
    out.doc["boundary_faces"] = boundary;
    out.doc["euler_characteristic"] = euler_characteristic(sk, t.size());
    out.doc["edge_valid"] = sk.edge_valid;
    return kOk;
}

int cmd_homology(const std::string& file, Output& out)
{
    const auto t = load_triangulation(file);
    const auto g = h1(t);
    out.text << "H1 = " << g.str() << "\n";
    out.doc["h1"] = group_json(g);
    return kOk;
}

int cmd_surfaces(const std::string& file, Output& out)
{
    const auto t = load_triangulation(file);
    const SurfaceContext ctx(t);
    const auto vs = vertex_solutions(ctx);
    json list = json::array();
    for (const auto& x : vs.vectors) {
        out.text << x.str() << "\n";
        list.push_back(surface_json(x, ctx.classify(x)));
    }
    out.doc["tetrahedra"] = t.size();
    out.doc["surfaces"] = list;
    return kOk;
}

int cmd_find_sphere(const std::string& file, std::optional<std::size_t> restricted, bool full, unsigned threads,
                    Output& out)
{
    const auto t = load_triangulation(file);
    const std::size_t k = restricted.value_or(2);
    const auto r = full ? full_sphere_search(t) : restricted_sphere_search(t, RestrictedSearchOptions{k, threads});
    out.doc["mode"] = full ? "full" : "restricted";
    out.doc["k"] = full ? json(nullptr) : json(k);
    out.doc["stats"] = stats_json(r.stats);
    auto& s = out.text;
    if (!r.found) {
        s << "no non-trivial normal sphere found (" << (full ? "full" : "restricted") << " search)\n";
        out.doc["found"] = nullptr;
        return kNegative;
    }
    const auto& c = *r.found;
    s << c.sphere.str() << "\n"
      << "classification: " << describe(c.cls) << "\n"
      << "quad support: " << join(c.sphere.quad_support()) << "\n"
      << "origin: " << to_string(c.origin) << "\n";
    if (c.pattern) s << "pattern: " << c.pattern->str() << "\n";
    s << "cone enumerations: " << r.stats.cone_enumerations << "\n";
    out.doc["found"] = candidate_json(c);
    return kOk;
}

int cmd_crush(const std::string& file, const std::string& vecfile, const std::string& out_dir, Output& out)
{
    const auto t = load_triangulation(file);
    const auto x = load_vector(vecfile, t.size());
    const auto outcome = crush_sphere(t, x);
    out.doc["sphere"] = coords_json(x);
    auto& s = out.text;
    if (const auto* f = std::get_if<CrushFailure>(&outcome)) {
        s << "crush failed (" << f->defect << "): " << f->message << "\n";
        out.doc["status"] = "failure";
        out.doc["defect"] = f->defect;
        out.doc["message"] = f->message;
        return kNegative;
    }
    const auto& r = std::get<CrushReport>(outcome);
    if (!out_dir.empty()) std::filesystem::create_directories(out_dir);
    s << "input: " << r.input_tets << " tetrahedra, H1 = " << r.input_h1.str() << "\n"
      << "separating: " << yes(r.separating) << "\n"
      << "destroyed tetrahedra: " << join(r.destroyed_tets) << "\n";
    json outputs = json::array();
    for (std::size_t k = 0; k < r.outputs.size(); ++k) {
        const auto& o = r.outputs[k];
        json j = triangulation_json(o);
        j["h1"] = group_json(r.output_h1[k]);
        s << "output " << k << ": " << o.size() << " tetrahedra, H1 = " << r.output_h1[k].str();
        if (!out_dir.empty()) {
            const auto path = (std::filesystem::path(out_dir) / ("output_" + std::to_string(k) + ".tri")).string();
            std::ofstream f(path, std::ios::binary);
            if (!(f << serialize(o))) throw std::runtime_error("cannot write " + path);
            j["file"] = path;
            s << " -> " << path;
        }
        s << "\n";
        outputs.push_back(std::move(j));
    }
    out.doc["status"] = "ok";
    out.doc["input_tets"] = r.input_tets;
    out.doc["input_h1"] = group_json(r.input_h1);
    out.doc["separating"] = r.separating;
    out.doc["complement_components"] = r.complement_components;
    out.doc["destroyed_tets"] = r.destroyed_tets;
    out.doc["outputs"] = outputs;
    return kOk;
}

int cmd_decompose(const std::string& file, bool assume_minimal, unsigned threads, Output& out)
{
    const auto t = load_triangulation(file);
    const auto r = decompose(t, DecomposeOptions{assume_minimal, threads});
    auto& s = out.text;
    s << "root: " << t.size() << " tetrahedra, H1 = " << r.root_h1.str() << "\n";
    json steps = json::array();
    for (std::size_t i = 0; i < r.steps.size(); ++i) {
        const auto& st = r.steps[i];
        s << "step " << i << ": item " << st.item << " (" << st.report.input_tets << " tets), " << to_string(st.mode)
          << " sphere " << (st.report.separating ? "separating" : "non-separating") << " -> "
          << st.report.output_tets() << " tets, total " << r.total_tets_after_step[i] << "\n";
        json failed = json::array();
        for (const auto& f : st.failed_attempts) failed.push_back({{"defect", f.defect}, {"message", f.message}});
        json outputs = json::array();
        for (std::size_t k = 0; k < st.report.outputs.size(); ++k) {
            outputs.push_back(triangulation_json(st.report.outputs[k]));
            outputs.back()["h1"] = group_json(st.report.output_h1[k]);
        }
        steps.push_back({{"item", st.item},
                         {"parent_step", st.parent_step ? json(*st.parent_step) : json(nullptr)},
                         {"mode", to_string(st.mode)},
                         {"input_tets", st.report.input_tets},
                         {"sphere", candidate_json(st.sphere)},
                         {"separating", st.report.separating},
                         {"destroyed_tets", st.report.destroyed_tets},
                         {"outputs", outputs},
                         {"child_items", st.child_items},
                         {"restricted_enumerations", st.restricted_enumerations},
                         {"restricted_found", st.restricted_found},
                         {"full_enumeration_used", st.full_enumeration_used},
                         {"failed_attempts", failed},
                         {"total_tets_after", r.total_tets_after_step[i]}});
    }
    json leaves = json::array();
    for (const auto& l : r.leaves) {
        s << "leaf: item " << l.item << ", " << l.triangulation.size() << " tetrahedra, H1 = " << l.h1.str() << "\n";
        json j = triangulation_json(l.triangulation);
        j["item"] = l.item;
        j["parent_step"] = l.parent_step ? json(*l.parent_step) : json(nullptr);
        j["h1"] = group_json(l.h1);
        leaves.push_back(std::move(j));
    }
    s << "S2 x S1 factors: " << r.s2xs1_factors << "\n"
      << "dropped 3-spheres: " << r.dropped_trivial << "\n"
      << "ledger: " << r.ledger_sum().str() << " (" << (r.ledger_balanced() ? "balanced" : "UNBALANCED") << ")\n";
    out.doc["assume_minimal"] = assume_minimal;
    out.doc["root"] = triangulation_json(t);
    out.doc["root_h1"] = group_json(r.root_h1);
    out.doc["steps"] = steps;
    out.doc["leaves"] = leaves;
    out.doc["s2xs1_factors"] = r.s2xs1_factors;
    out.doc["dropped_trivial"] = r.dropped_trivial;
    out.doc["ledger"] = {{"sum", group_json(r.ledger_sum())}, {"balanced", r.ledger_balanced()}};
    return r.ledger_balanced() ? kOk : kError;
}

int cmd_check_reducible(const std::string& file, unsigned threads, Output& out)
{
    const auto t = load_triangulation(file);
    const auto v = check_reducible_minimal(t, threads);
    auto& s = out.text;
    s << "verdict: " << to_string(v.verdict) << "\n"
      << "assumption: " << v.assumption << "\n"
      << "cone enumerations: " << v.stats.cone_enumerations << "\n";
    if (v.certificate) {
        s << "certificate: " << v.certificate->sphere.str() << "\n"
          << "classification: " << describe(v.certificate->cls) << "\n";
        if (v.certificate->pattern) s << "pattern: " << v.certificate->pattern->str() << "\n";
    }
    out.doc["tetrahedra"] = t.size();
    out.doc["verdict"] = to_string(v.verdict);
    out.doc["assumption"] = v.assumption;
    out.doc["certificate"] = v.certificate ? candidate_json(*v.certificate) : json(nullptr);
    out.doc["stats"] = stats_json(v.stats);
    return v.verdict == Reducibility::not_applicable ? kNegative : kOk;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Normal surface tools for triangulated 3-manifolds"};
    app.require_subcommand(1);
    app.fallthrough();
    bool seedless = false;
    app.add_flag("--seedless", seedless, "Accepted for scripting; every command is deterministic already");

    std::string file, vecfile, json_path, out_dir;
    std::optional<std::size_t> restricted;
    bool full = false, assume_minimal = false;
    unsigned threads = 0;

    auto with_file = [&](CLI::App* sub) {
        sub->add_option("file", file, "Gluing file")->required();
        sub->add_option("--json", json_path, "Write a JSON document to a path, or '-' for stdout");
        return sub;
    };
    auto* validate_cmd = with_file(app.add_subcommand("validate", "Check orientability, closure and vertex links"));
    auto* skeleton_cmd = with_file(app.add_subcommand("skeleton", "Vertex, edge and face classes"));
    auto* homology_cmd = with_file(app.add_subcommand("homology", "First homology group"));
    auto* surfaces_cmd = with_file(app.add_subcommand("surfaces", "Vertex normal surfaces, one vector per line"));
    auto* find_cmd = with_file(app.add_subcommand("find-sphere", "Search for a non-trivial normal 2-sphere"));
    auto* r_opt = find_cmd->add_option("--restricted", restricted, "Quad support bound k (default 2)");
    auto* f_opt = find_cmd->add_flag("--full", full, "Search all vertex normal surfaces");
    r_opt->excludes(f_opt);
    find_cmd->add_option("--threads", threads, "Worker threads (0 = hardware)");
    auto* crush_cmd = with_file(app.add_subcommand("crush", "Crush a normal sphere"));
    crush_cmd->add_option("vector", vecfile, "File holding one normal coordinate line")->required();
    crush_cmd->add_option("--out-dir", out_dir, "Directory for output gluing files");
    auto* decompose_cmd = with_file(app.add_subcommand("decompose", "Connected-sum decomposition"));
    decompose_cmd->add_flag("--assume-minimal", assume_minimal, "Record that the input is assumed minimal");
    decompose_cmd->add_option("--threads", threads, "Worker threads (0 = hardware)");
    auto* check_cmd = with_file(app.add_subcommand("check-reducible", "Restricted reducibility test for minimal input"));
    check_cmd->add_flag("--assume-minimal", assume_minimal, "Caller asserts the triangulation is minimal")->required();
    check_cmd->add_option("--threads", threads, "Worker threads (0 = hardware)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kError;
    }

    auto* sub = app.get_subcommands().front();
    Output out(sub->get_name(), json_path);
    try {
        int code = kError;
        if (sub == validate_cmd) code = cmd_validate(file, out);
        else if (sub == skeleton_cmd) code = cmd_skeleton(file, out);
        else if (sub == homology_cmd) code = cmd_homology(file, out);
        else if (sub == surfaces_cmd) code = cmd_surfaces(file, out);
        else if (sub == find_cmd) code = cmd_find_sphere(file, restricted, full, threads, out);
        else if (sub == crush_cmd) code = cmd_crush(file, vecfile, out_dir, out);
        else if (sub == decompose_cmd) code = cmd_decompose(file, assume_minimal, threads, out);
        else if (sub == check_cmd) code = cmd_check_reducible(file, threads, out);
        return out.finish(code);
    } catch (const InputError& e) {
        std::cerr << "nsurf: " << e.what() << "\n";
        return kInvalidInput;
    } catch (const PreconditionError& e) {
        std::cerr << "nsurf: invalid input: " << e.what() << "\n";
        return kInvalidInput;
    } catch (const std::exception& e) {
        std::cerr << "nsurf: " << e.what() << "\n";
        return kError;
    }
}
