#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "tdag/embed.hpp"
#include "tdag/families.hpp"
#include "tdag/graph.hpp"
#include "tdag/io.hpp"
#include "tdag/ops.hpp"
#include "tdag/oracle.hpp"
#include "tdag/width.hpp"

using nlohmann::json;

namespace {

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream f(path);
    if (!f) throw tdag::GraphError(tdag::ErrKind::BadInput, "cannot open file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text << "\n";
        return;
    }
    std::ofstream f(path);
    if (!f) throw tdag::GraphError(tdag::ErrKind::BadInput, "cannot open file for writing: " + path);
    f << text;
}

tdag::DiGraph load_graph(const std::string& path) { return tdag::graph_from_json(read_input(path)); }

json path_to_json(const tdag::DirPath& p) {
    return json{{"vertices", p.vertices}, {"edges", p.edges}};
}

json witness_to_json_obj(const tdag::SpwWitness& w) {
    json j;
    if (w.has_set_certificate) {
        j["serial_path"] = path_to_json(w.serial_path);
        j["set"] = std::vector<tdag::EdgeId>(w.set.begin(), w.set.end());
        j["cut_certificate"] = {
            {"forward_tree", std::vector<tdag::EdgeId>(w.cut_cert.forward_tree.begin(), w.cut_cert.forward_tree.end())},
            {"backward_tree",
             std::vector<tdag::EdgeId>(w.cut_cert.backward_tree.begin(), w.cut_cert.backward_tree.end())}};
    }
    j["minor_sequence"] = json::parse(tdag::witness_to_json(w.minor_sequence));
    j["variant"] = {{"k", w.variant.forward.k},
                    {"forward_parent", w.variant.forward.parent},
                    {"backward_child", w.variant.backward.parent}};
    return j;
}

int run(int argc, char** argv) {
    CLI::App app{"2-terminal DAG minors, embeddings, and width analysis"};
    app.require_subcommand(1);
    int jobs = 1;
    app.add_option("--jobs", jobs, "cap internal parallelism (accepted for compatibility; engines are sequential)");

    // ---- gen ----------------------------------------------------------
    auto* gen = app.add_subcommand("gen", "emit a named family member as JSON");
    std::string family;
    int gen_k = 0, gen_i = 0;
    bool gen_dot = false;
    gen->add_option("family", family, "braess | parallel | gsp | gsp-variant")->required();
    gen->add_option("k", gen_k, "family size parameter");
    gen->add_option("index", gen_i, "variant enumeration index (gsp-variant)");
    gen->add_flag("--dot", gen_dot, "emit DOT instead of JSON");

    // ---- validate -----------------------------------------------------
    auto* validate = app.add_subcommand("validate", "check that a graph is a 2-terminal DAG");
    std::string val_in;
    bool val_general = false;
    long long val_budget = 1000000;
    validate->add_option("graph", val_in, "graph JSON file or -")->required();
    validate->add_flag("--general", val_general, "allow cycles: check the general 2-terminal property");
    validate->add_option("--budget", val_budget, "step budget for the general check");

    // ---- info ---------------------------------------------------------
    auto* info = app.add_subcommand("info", "summarize a graph");
    std::string info_in;
    info->add_option("graph", info_in, "graph JSON file or -")->required();

    // ---- width --------------------------------------------------------
    auto* width = app.add_subcommand("width", "parallel / serial-parallel width, longest path");
    std::string width_in, width_engine = "both", width_witness;
    bool w_pw = false, w_spw = false, w_longest = false, width_oracle = false;
    int width_k = -1;
    width->add_option("graph", width_in, "graph JSON file or -")->required();
    width->add_flag("--pw", w_pw, "parallel width");
    width->add_flag("--spw", w_spw, "serial-parallel width (default)");
    width->add_flag("--longest", w_longest, "longest source-target path");
    width->add_option("--engine", width_engine, "a | b | both (serial-parallel width engines)")
        ->check(CLI::IsMember({"a", "b", "both"}));
    width->add_option("-k", width_k, "decision mode: test width >= k");
    width->add_option("--witness", width_witness, "write the witness JSON here ('-' for stdout)");
    width->add_flag("--oracle", width_oracle, "use the exhaustive reference engine");

    // ---- check-set ----------------------------------------------------
    auto* checkset = app.add_subcommand("check-set", "classify an edge set");
    std::string cs_in, cs_edges, cs_prop;
    bool cs_oracle = false;
    checkset->add_option("graph", cs_in, "graph JSON file or -")->required();
    checkset->add_option("--edges", cs_edges, "comma-separated edge ids")->required();
    checkset->add_option("--property", cs_prop, "serial | parallel | concurrent | serial-parallel")
        ->required()
        ->check(CLI::IsMember({"serial", "parallel", "concurrent", "serial-parallel"}));
    checkset->add_flag("--oracle", cs_oracle, "use the exhaustive reference engine");

    // ---- minor --------------------------------------------------------
    auto* minor = app.add_subcommand("minor", "test whether PATTERN is a d-minor of HOST");
    std::string mi_pattern, mi_host, mi_cert;
    bool mi_oracle = false;
    minor->add_option("pattern", mi_pattern, "pattern graph JSON file or -")->required();
    minor->add_option("host", mi_host, "host graph JSON file")->required();
    minor->add_option("--certificate", mi_cert, "write the minor-operation witness JSON here");
    minor->add_flag("--oracle", mi_oracle, "use the exhaustive reference engine");

    // ---- reduce-witness -----------------------------------------------
    auto* redw = app.add_subcommand("reduce-witness", "replay and check an operation-sequence witness");
    std::string rw_in;
    bool rw_verify = false;
    redw->add_option("witness", rw_in, "witness JSON file or -")->required();
    redw->add_flag("--verify", rw_verify, "replay with full precondition checking");

    // ---- oracle -------------------------------------------------------
    auto* oracle = app.add_subcommand("oracle", "exhaustive reference reports");
    auto* oracle_enum = oracle->add_subcommand("enumerate", "dump all s-t paths and minimal cuts");
    std::string oe_in;
    oracle_enum->add_option("graph", oe_in, "graph JSON file or -")->required();

    CLI11_PARSE(app, argc, argv);

    if (*gen) {
        tdag::Tdag g;
        if (family == "braess") {
            g = tdag::braess();
        } else if (family == "parallel") {
            g = tdag::parallel_graph(gen_k);
        } else if (family == "gsp") {
            g = tdag::gsp(gen_k);
        } else if (family == "gsp-variant") {
            auto idxs = tdag::gsp_variant_indices(gen_k);
            if (gen_i < 0 || gen_i >= (int)idxs.size())
                throw tdag::GraphError(tdag::ErrKind::InvalidK,
                                       "variant index out of range (0.." + std::to_string(idxs.size() - 1) + ")");
            g = tdag::gsp_variant(gen_k, idxs[gen_i]);
        } else {
            throw tdag::GraphError(tdag::ErrKind::BadInput, "unknown family: " + family);
        }
        std::cout << (gen_dot ? tdag::export_dot(g.g) : tdag::graph_to_json(g.g)) << "\n";
        return 0;
    }

    if (*validate) {
        tdag::DiGraph g = load_graph(val_in);
        json rep;
        bool ok = false;
        std::string reason;
        try {
            if (val_general) {
                ok = tdag::validate_two_terminal_general(g, val_budget);
                if (!ok) reason = "some vertex or edge lies on no simple source-target path";
            } else {
                tdag::validate_tdag(g);
                ok = true;
            }
        } catch (const tdag::GraphError& e) {
            if (e.kind == tdag::ErrKind::BudgetExhausted) throw;
            ok = false;
            reason = e.what();
        }
        rep["valid"] = ok;
        rep["mode"] = val_general ? "two-terminal" : "tdag";
        if (!ok) rep["reason"] = reason;
        std::cout << rep.dump(2) << "\n";
        return ok ? 0 : 1;
    }

    if (*info) {
        tdag::DiGraph g = load_graph(info_in);
        json rep;
        rep["vertices"] = g.vertices.size();
        rep["edges"] = g.edges.size();
        rep["source"] = g.source;
        rep["target"] = g.target;
        bool tdag_ok = true;
        try {
            tdag::Tdag t = tdag::validate_tdag(g);
            rep["topological_order"] = t.topo_order;
            json hubs = json::array();
            for (const auto& h : tdag::hubs(g))
                hubs.push_back({{"vertex", h.vertex}, {"indegree", h.indegree}, {"outdegree", h.outdegree}});
            rep["hubs"] = hubs;
        } catch (const tdag::GraphError& e) {
            tdag_ok = false;
            rep["reason"] = e.what();
        }
        rep["tdag"] = tdag_ok;
        std::cout << rep.dump(2) << "\n";
        return 0;
    }

    if (*width) {
        int modes = (int)w_pw + (int)w_spw + (int)w_longest;
        if (modes > 1) throw tdag::GraphError(tdag::ErrKind::BadInput, "choose one of --pw/--spw/--longest");
        if (modes == 0) w_spw = true;
        tdag::Tdag g = tdag::validate_tdag(load_graph(width_in));
        json rep;
        int exit_code = 0;

        if (w_longest) {
            tdag::DirPath p = tdag::longest_path(g);
            rep["longest_path"] = path_to_json(p);
            rep["length"] = p.edges.size();
            if (width_oracle) {
                auto wr = tdag::oracle_width(g.g);
                rep["oracle_length"] = wr.max_serial;
                if (wr.max_serial != (int)p.edges.size())
                    throw tdag::GraphError(tdag::ErrKind::EngineDisagreement, "longest path disagrees with oracle");
            }
            if (width_k >= 0) exit_code = (int)p.edges.size() >= width_k ? 0 : 1;
        } else if (w_pw) {
            if (width_oracle) {
                auto wr = tdag::oracle_width(g.g);
                rep["pw"] = wr.pw;
                if (width_k >= 0) exit_code = wr.pw >= width_k ? 0 : 1;
            } else if (width_k >= 0) {
                bool yes = tdag::parallel_width_at_least(g, width_k);
                rep["decision"] = yes;
                rep["k"] = width_k;
                exit_code = yes ? 0 : 1;
            } else {
                rep["pw"] = tdag::parallel_width(g);
            }
        } else {
            tdag::SpwEngine eng = width_engine == "a"   ? tdag::SpwEngine::A
                                  : width_engine == "b" ? tdag::SpwEngine::B
                                                        : tdag::SpwEngine::Both;
            tdag::SpwWitness wit;
            bool want_wit = !width_witness.empty();
            if (width_oracle) {
                auto wr = tdag::oracle_width(g.g);
                rep["spw"] = wr.spw;
                if (width_k >= 0) exit_code = wr.spw >= width_k ? 0 : 1;
            } else if (width_k >= 0) {
                bool yes = tdag::spw_at_least(g, width_k, eng, want_wit ? &wit : nullptr);
                rep["decision"] = yes;
                rep["k"] = width_k;
                exit_code = yes ? 0 : 1;
                if (yes && want_wit) write_output(width_witness, witness_to_json_obj(wit).dump(2));
            } else {
                int v = tdag::spw_value(g, eng, want_wit ? &wit : nullptr);
                rep["spw"] = v;
                if (want_wit && v >= 2) write_output(width_witness, witness_to_json_obj(wit).dump(2));
            }
        }
        std::cout << rep.dump(2) << "\n";
        return exit_code;
    }

    if (*checkset) {
        tdag::Tdag g = tdag::validate_tdag(load_graph(cs_in));
        tdag::EdgeSet S;
        std::stringstream ss(cs_edges);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok.empty()) continue;
            try {
                S.insert(std::stoi(tok));
            } catch (const std::exception&) {
                throw tdag::GraphError(tdag::ErrKind::BadInput, "bad edge id: " + tok);
            }
        }
        json rep;
        rep["edges"] = std::vector<tdag::EdgeId>(S.begin(), S.end());
        rep["property"] = cs_prop;
        bool holds = false;
        if (cs_oracle) {
            if (cs_prop == "serial")
                holds = tdag::oracle_is_serial(g.g, S);
            else if (cs_prop == "parallel")
                holds = tdag::oracle_is_parallel(g.g, S);
            else if (cs_prop == "concurrent")
                holds = tdag::oracle_is_concurrent(g.g, S);
            else
                holds = tdag::oracle_is_serial(g.g, S) && tdag::oracle_is_parallel(g.g, S);
        } else {
            if (cs_prop == "serial") {
                auto p = tdag::is_serial(g, S);
                holds = p.has_value();
                if (p) rep["path"] = path_to_json(*p);
            } else if (cs_prop == "parallel") {
                auto c = tdag::is_parallel(g, S);
                holds = c.has_value();
                if (c)
                    rep["cut_certificate"] = {
                        {"forward_tree", std::vector<tdag::EdgeId>(c->forward_tree.begin(), c->forward_tree.end())},
                        {"backward_tree", std::vector<tdag::EdgeId>(c->backward_tree.begin(), c->backward_tree.end())}};
            } else if (cs_prop == "concurrent") {
                holds = tdag::is_concurrent(g, S);
            } else {
                auto p = tdag::is_serial(g, S);
                std::optional<tdag::CutCertificate> c;
                if (p) c = tdag::is_parallel(g, S);
                holds = p.has_value() && c.has_value();
                if (holds) rep["path"] = path_to_json(*p);
            }
        }
        rep["holds"] = holds;
        std::cout << rep.dump(2) << "\n";
        return holds ? 0 : 1;
    }

    if (*minor) {
        tdag::Tdag pattern = tdag::validate_tdag(load_graph(mi_pattern));
        tdag::Tdag host = tdag::validate_tdag(load_graph(mi_host));
        json rep;
        bool found = false;
        if (mi_oracle) {
            auto w = tdag::oracle_d_minor(pattern, host);
            found = w.has_value();
            if (found && !mi_cert.empty()) write_output(mi_cert, tdag::witness_to_json(*w));
        } else {
            auto dm = tdag::is_d_minor(pattern, host);
            found = dm.has_value();
            if (found && !mi_cert.empty()) {
                tdag::OpSequence w = tdag::minor_witness_from_match(pattern, host, *dm);
                write_output(mi_cert, tdag::witness_to_json(w));
            }
        }
        rep["minor"] = found;
        std::cout << rep.dump(2) << "\n";
        return found ? 0 : 1;
    }

    if (*redw) {
        tdag::OpSequence w = tdag::witness_from_json(read_input(rw_in));
        json rep;
        rep["operations"] = w.ops.size();
        if (rw_verify) {
            tdag::VerifyResult vr = tdag::verify_witness(w);
            rep["ok"] = vr.ok;
            if (!vr.ok) {
                rep["failed_step"] = vr.failed_step;
                rep["reason"] = vr.reason;
            }
            std::cout << rep.dump(2) << "\n";
            return vr.ok ? 0 : 1;
        }
        std::cout << rep.dump(2) << "\n";
        return 0;
    }

    if (*oracle) {
        if (!*oracle_enum) throw tdag::GraphError(tdag::ErrKind::BadInput, "usage: oracle enumerate GRAPH");
        tdag::DiGraph g = load_graph(oe_in);
        auto er = tdag::oracle_enumerate(g);
        json rep;
        json paths = json::array();
        for (const auto& p : er.st_paths) paths.push_back(path_to_json(p));
        json cuts = json::array();
        for (const auto& c : er.minimal_cuts) cuts.push_back(std::vector<tdag::EdgeId>(c.begin(), c.end()));
        rep["st_paths"] = paths;
        rep["minimal_cuts"] = cuts;
        std::cout << rep.dump(2) << "\n";
        return 0;
    }

    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const tdag::GraphError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.kind == tdag::ErrKind::EngineDisagreement ? 3 : 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
