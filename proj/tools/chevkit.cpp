#include <CLI11.hpp>

#include <fstream>
#include <iostream>

#include "chevkit/chevalley.hpp"
#include "chevkit/data.hpp"
#include "chevkit/fixtures.hpp"
#include "chevkit/localtools.hpp"
#include "chevkit/pipeline.hpp"
#include "chevkit/rigidity.hpp"
#include "chevkit/spectral.hpp"

using namespace chevkit;

namespace {

constexpr int kPass = 0, kFail = 1, kUsage = 2;

struct Globals {
    std::string ring = "Z";
    std::string system = "A3";
    uint64_t seed = 7;
    bool json_out = false;
    std::vector<std::string> only;
};

void emit(const json& j) { std::cout << j.dump(2) << '\n'; }

int emit_report(const PipelineReport& rep, bool as_json) {
    if (as_json) emit(rep.to_json());
    else std::cout << rep.text();
    return rep.ok() ? kPass : kFail;
}

// Root given as an index, a name like "e1-e2", or "a<k>" for the k-th simple root.
int resolve_root(const RootSystem& sys, const std::string& s) {
    if (s.empty()) throw SpecError("empty root");
    if (s[0] == 'a' && s.size() > 1 && std::all_of(s.begin() + 1, s.end(), ::isdigit))
        return sys.simple_root(std::stoi(s.substr(1)));
    if (std::all_of(s.begin(), s.end(), ::isdigit)) {
        const int i = std::stoi(s);
        if (i >= sys.num_roots()) throw SpecError("root index " + s + " out of range");
        return i;
    }
    return sys.parse_root(s);
}

Ring field_from_flag(const std::string& f) {
    if (f == "F2") return Ring::make("Z/2");
    if (f == "F4") return Ring::make("omega(Z/2)");
    throw SpecError("field must be F2 or F4");
}

json roots_json(const RootSystem& sys) {
    json roots = json::array(), labels = json::array();
    for (int i = 0; i < sys.num_roots(); ++i) roots.push_back(sys.root(i));
    for (int k = 0; k < sys.dim(); ++k) labels.push_back(sys.basis_label(k));
    json simples = json::array();
    for (int s : sys.simple()) simples.push_back(s);
    return json{{"family", std::string(1, sys.name()[0])}, {"rank", sys.rank()}, {"roots", roots},
                {"simples", simples}, {"basis_order", labels}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Chevalley group toolkit"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--ring", g.ring, "ring spec, e.g. Z/4, dual(Z/2), omega(Z/4)");
    app.add_option("--system", g.system, "root system, e.g. A3, D4, E6");
    app.add_option("--seed", g.seed);
    app.add_flag("--json", g.json_out, "machine-readable output");
    app.add_option("--only", g.only, "restrict pipeline stages")->delimiter(',');

    std::string positional_sys;
    auto* roots = app.add_subcommand("roots", "list the roots of a system");
    roots->add_option("system", positional_sys);

    std::string elem = "x", root_s = "a1", t_s = "1";
    int wi = 1, wj = 2;
    auto* gen = app.add_subcommand("gen", "emit a generator matrix");
    gen->add_option("--elem", elem)->check(CLI::IsMember({"x", "w", "h", "q", "wij"}));
    gen->add_option("--root", root_s, "index, name, or a<k>");
    gen->add_option("--t", t_s);
    gen->add_option("--i", wi, "wij: first position in the orthogonal sequence (1-based)");
    gen->add_option("--j", wj, "wij: second position");

    std::vector<std::string> vargs;
    size_t samples = 200;
    auto* verify = app.add_subcommand("verify", "sample relations: verify [system] [ring] [relations]");
    verify->add_option("args", vargs)->expected(0, 3);
    verify->add_option("--samples", samples);

    std::string target = "x1";
    auto* blocks = app.add_subcommand("blocks", "commutant block partition");
    blocks->add_option("--target", target)->check(CLI::IsMember({"x1", "x2"}));

    auto* diag = app.add_subcommand("diag", "diagonalize Q_alpha over an omega ring");
    diag->add_option("--root", root_s);

    std::string fixture, field = "F2";
    int mu = 1;
    auto* rig = app.add_subcommand("rigidity", "linearized rigidity check");
    rig->add_option("--fixture", fixture)->required();
    rig->add_option("--field", field)->check(CLI::IsMember({"F2", "F4"}));
    rig->add_option("--mu", mu)->check(CLI::IsMember({1, -1}));

    auto* cen = app.add_subcommand("centralizer6", "enumerate the unipotent centralizer family");

    std::string matrix_file;
    auto* split = app.add_subcommand("split3", "order-3 idempotent split");
    split->add_option("--matrix", matrix_file)->required();

    std::vector<std::string> fixture_list;
    auto* fix = app.add_subcommand("fixtures", "compare shipped matrix fixtures");
    fix->add_option("ids", fixture_list);

    auto* pipe = app.add_subcommand("pipeline", "run every verification stage");
    pipe->add_option("--samples", samples);

    for (auto* sc : app.get_subcommands([](CLI::App*) { return true; })) sc->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kPass : kUsage;
    }

    try {
        if (*roots) {
            emit(roots_json(RootSystem::parse(positional_sys.empty() ? g.system : positional_sys)));
            return kPass;
        }
        if (*gen) {
            const RootSystem& sys = RootSystem::parse(g.system);
            Ring r = Ring::make(g.ring);
            json spec{{"op", elem}};
            if (elem == "wij") {
                spec["i"] = wi - 1;
                spec["j"] = wj - 1;
            } else {
                spec["root"] = sys.root_name(resolve_root(sys, root_s));
                if (elem != "q") spec["t"] = t_s;
            }
            if (elem == "x" || elem == "w" || elem == "h") {
                const int a = resolve_root(sys, root_s);
                Element t = r.parse(std::string_view(t_s));
                Matrix m = elem == "x" ? x_elem(r, sys, a, t) : elem == "w" ? w_elem(r, sys, a, t) : h_elem(r, sys, a, t);
                emit(m.to_json());
            } else {
                emit(generator_matrix(r, sys, spec).to_json());
            }
            return kPass;
        }
        if (*verify) {
            std::string sys = g.system, ring = g.ring, set = "steinberg";
            if (vargs.size() > 0) sys = vargs[0];
            if (vargs.size() > 1) ring = vargs[1];
            if (vargs.size() > 2) set = vargs[2];
            Ring r = Ring::make(ring);
            if (!r.is_local()) throw NotLocal(ring + " is not a local ring");
            PipelineReport rep;
            for (const auto& res : run_relations(RootSystem::parse(sys), r, set, g.seed, samples)) {
                json d{{"checked", res.checked}, {"failed", res.failed}};
                if (res.failed) d["first_failure"] = res.first_failure;
                d["summary"] = std::to_string(res.checked - res.failed) + "/" + std::to_string(res.checked) + " hold";
                rep.stages.push_back({res.relation, res.failed ? "fail" : "pass", d});
            }
            return emit_report(rep, g.json_out);
        }
        if (*blocks) {
            const RootSystem& sys = RootSystem::parse(g.system);
            const auto seq = sys.orthogonal_sequence();
            const size_t skip = target == "x1" ? 1 : 2;
            if (seq.gammas.size() < skip) throw SpecError(g.system + ": orthogonal sequence too short");
            BlockSpec spec;
            spec.system = g.system;
            spec.target = target;
            for (size_t k = skip; k < seq.gammas.size(); ++k) spec.commutes_with_q.push_back(sys.root_name(seq.gammas[k]));
            emit(json{{"system", g.system}, {"target", target}, {"knowns", spec.commutes_with_q},
                      {"parts", named_parts(sys, computed_blocks(spec))}});
            return kPass;
        }
        if (*diag) {
            const RootSystem& sys = RootSystem::parse(g.system);
            Ring r = Ring::make(g.ring);
            if (r.kind() != Kind::Omega) throw SpecError("diag needs a ring of the form omega(...)");
            auto d = diagonalize_q(r, sys, resolve_root(sys, root_s));
            emit(json{{"P", d.P.to_json()}, {"D", d.D.to_json()},
                      {"multiplicities", {{"1", d.mult_one}, {"xi", d.mult_xi}, {"xi2", d.mult_xi2}}}});
            return kPass;
        }
        if (*rig) {
            const auto ids = condition_set_ids();
            if (std::find(ids.begin(), ids.end(), fixture) == ids.end() || fixture == "centralizer6")
                throw UnknownFixture("unknown rigidity fixture '" + fixture + "'");
            auto rep = rigidity_check(load_condition_set(fixture), field_from_flag(field), mu);
            emit(rep.to_json());
            return rep.contained ? kPass : kFail;
        }
        if (*cen) {
            auto rep = unipotent_centralizer(Ring::make(app.get_option("--ring")->count() ? g.ring : "Z/4"), load_condition_set("centralizer6"));
            json j = rep.to_json();
            j.erase("family");
            emit(j);
            return rep.collapses ? kPass : kFail;
        }
        if (*split) {
            Ring r = Ring::make(g.ring);
            Matrix a = Matrix::from_json(load_json_file(matrix_file), r);
            auto s = order3_split(a);
            emit(json{{"rank0", s.rank0}, {"rank1", s.rank1}, {"e", s.e.to_json()}});
            return kPass;
        }
        if (*fix) {
            if (fixture_list.empty()) fixture_list = fixture_ids();
            PipelineReport rep;
            for (const auto& id : fixture_list) {
                auto f = compare_fixture(id);
                json d = f.to_json();
                d["summary"] = f.detail;
                rep.stages.push_back({id, f.pass ? "pass" : "fail", d});
            }
            return emit_report(rep, g.json_out);
        }
        if (*pipe) {
            PipelineOptions opt;
            opt.seed = g.seed;
            opt.samples = samples;
            opt.only = g.only;
            return emit_report(run_pipeline(opt), g.json_out);
        }
    } catch (const NotLocal& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::invalid_argument& e) {  // SpecError, UnsupportedSystem, UnknownFixture
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFail;
    }
    return kUsage;
}
