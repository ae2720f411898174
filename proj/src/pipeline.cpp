#include "chevkit/pipeline.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include "chevkit/chevalley.hpp"
#include "chevkit/fixtures.hpp"
#include "chevkit/localtools.hpp"
#include "chevkit/rigidity.hpp"
#include "chevkit/spectral.hpp"

namespace chevkit {

std::vector<std::string> relation_names() {
    return {"additivity", "commutator", "torus", "commutator1", "qorder", "wij", "steinberg"};
}

namespace {

Element power(const Element& u, int k) { return k >= 0 ? u.pow(k) : u.inverse().pow(-k); }

std::vector<std::pair<int, int>> summable_pairs(const RootSystem& sys) {
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < sys.num_roots(); ++a)
        for (int b = 0; b < sys.num_roots(); ++b)
            if (sys.sum(a, b)) out.emplace_back(a, b);
    return out;
}

struct Sweep {
    RelationResult res;
    void record(bool ok, const std::string& what) {
        ++res.checked;
        if (ok) return;
        if (res.failed++ == 0) res.first_failure = what;
    }
};

}  // namespace

std::vector<RelationResult> run_relations(const RootSystem& sys, const Ring& r, const std::string& set, uint64_t seed,
                                          size_t samples) {
    std::vector<std::string> todo;
    if (set == "steinberg") todo = {"additivity", "commutator", "torus", "commutator1"};
    else if (std::find(relation_names().begin(), relation_names().end(), set) != relation_names().end()) todo = {set};
    else throw std::invalid_argument("unknown relation set '" + set + "'");
    if (!r.is_local()) throw NotLocal(r.spec() + " is not local");

    std::mt19937_64 rng(seed);
    const auto pairs = summable_pairs(sys);
    std::uniform_int_distribution<int> pick_root(0, sys.num_roots() - 1);
    std::uniform_int_distribution<size_t> pick_pair(0, pairs.size() - 1);
    std::vector<RelationResult> out;
    for (const auto& rel : todo) {
        Sweep s;
        s.res.relation = rel;
        if (rel == "additivity") {
            for (size_t k = 0; k < samples; ++k) {
                const int a = pick_root(rng);
                Element t = r.random(rng), u = r.random(rng);
                s.record(x_elem(r, sys, a, t) * x_elem(r, sys, a, u) == x_elem(r, sys, a, t + u),
                         "x_" + sys.root_name(a) + "(" + t.str() + ") x(" + u.str() + ")");
            }
        } else if (rel == "commutator" || rel == "commutator1") {
            const StructureConstants& N = StructureConstants::of(sys);
            for (size_t k = 0; k < samples; ++k) {
                auto [a, b] = pairs[pick_pair(rng)];
                Element t = r.random(rng);
                Element u = rel == "commutator" ? r.random(rng) : r.one();
                Matrix lhs = x_elem(r, sys, a, t) * x_elem(r, sys, b, u) * x_elem(r, sys, a, -t) * x_elem(r, sys, b, -u);
                Matrix rhs = x_elem(r, sys, *sys.sum(a, b), r.from_int(N(a, b)) * t * u);
                s.record(lhs == rhs, "[x_" + sys.root_name(a) + "(" + t.str() + "), x_" + sys.root_name(b) + "(" + u.str() + ")]");
            }
        } else if (rel == "torus") {
            for (size_t k = 0; k < samples; ++k) {
                const int a = pick_root(rng), b = pick_root(rng);
                Element u = r.random_unit(rng), t = r.random(rng);
                Matrix lhs = h_elem(r, sys, a, u) * x_elem(r, sys, b, t) * h_elem(r, sys, a, u.inverse());
                Matrix rhs = x_elem(r, sys, b, power(u, sys.pairing(b, a)) * t);
                s.record(lhs == rhs && h_elem(r, sys, a, u) == h_closed_form(r, sys, a, u),
                         "h_" + sys.root_name(a) + "(" + u.str() + ") on x_" + sys.root_name(b));
            }
        } else if (rel == "qorder") {
            for (int a = 0; a < sys.num_roots(); ++a) s.record(q_elem(r, sys, a).pow(3).is_identity(), "Q_" + sys.root_name(a));
        } else if (rel == "wij") {
            const auto seq = sys.orthogonal_sequence();
            const int k = static_cast<int>(seq.gammas.size());
            for (int i = 0; i < k; ++i)
                for (int j = 0; j < k; ++j) {
                    if (i == j) continue;
                    Matrix w = wij_elem(r, sys, seq, i, j);
                    Matrix qi = q_elem(r, sys, seq.gammas[i]), qj = q_elem(r, sys, seq.gammas[j]);
                    s.record((w * w).is_identity() && w * qi * w == qj, "w_" + std::to_string(i + 1) + "," + std::to_string(j + 1));
                }
        }
        out.push_back(std::move(s.res));
    }
    return out;
}

// ---- pipeline ----

bool PipelineReport::ok() const {
    return std::all_of(stages.begin(), stages.end(), [](const StageResult& s) { return s.status != "fail"; });
}

json PipelineReport::to_json() const {
    json st = json::array();
    for (const auto& s : stages) st.push_back({{"name", s.name}, {"status", s.status}, {"details", s.details}});
    return json{{"ok", ok()}, {"stages", st}};
}

std::string PipelineReport::text() const {
    std::ostringstream os;
    for (const auto& s : stages) {
        os << s.name << ": " << s.status;
        if (s.details.contains("summary")) os << "  " << s.details["summary"].get<std::string>();
        os << '\n';
    }
    os << (ok() ? "all stages pass" : "some stages failed") << '\n';
    return os.str();
}

std::vector<std::string> pipeline_stage_names() {
    return {"rings", "roots", "steinberg", "identities", "diagonalization", "blocks",
            "fixtures", "rigidity", "centralizer", "matrix_unit", "idempotents"};
}

namespace {

using Stage = StageResult (*)(const PipelineOptions&);

StageResult finish(std::string name, bool ok, json details, const std::string& summary) {
    details["summary"] = summary;
    return StageResult{std::move(name), ok ? "pass" : "fail", std::move(details)};
}

StageResult stage_rings(const PipelineOptions& opt) {
    std::mt19937_64 rng(opt.seed);
    json d = json::object();
    bool ok = true;
    for (const char* spec : {"Z", "Z/4", "Z/8", "Z/9", "Zodd", "dual(Z/2)", "omega(Z/4)", "dual(omega(Z/2))", "residue(Zodd)"}) {
        Ring r = Ring::make(spec);
        size_t bad = 0;
        for (size_t k = 0; k < opt.samples; ++k) {
            Element a = r.random(rng), b = r.random(rng), c = r.random(rng);
            bad += (a + b) + c != a + (b + c);
            bad += (a * b) * c != a * (b * c);
            bad += a * (b + c) != a * b + a * c;
            bad += a * b != b * a;
            bad += a + r.zero() != a || a * r.one() != a || a - a != r.zero();
            if (a.is_unit()) bad += a * a.inverse() != r.one();
            if (r.is_local() && !r.is_field()) bad += a.is_unit() == a.in_radical();
        }
        d[spec] = bad;
        ok = ok && bad == 0;
    }
    return finish("rings", ok, d, ok ? "axioms hold on every sample" : "axiom violations found");
}

StageResult stage_roots(const PipelineOptions&) {
    json d = json::object();
    bool ok = true;
    const std::vector<std::pair<std::string, int>> systems = {{"A3", 12}, {"A4", 20}, {"A5", 30}, {"A6", 42}, {"A7", 56}, {"D4", 24},
                                                              {"D5", 40}, {"D6", 60}, {"E6", 72}, {"E7", 126}, {"E8", 240}};
    for (const auto& [name, count] : systems) {
        const RootSystem& s = RootSystem::parse(name);
        bool good = s.num_roots() == count;
        for (int a = 0; a < s.num_roots() && good; ++a) {
            good = dot2(s.root(a), s.root(a)) == 8;
            for (int b = 0; b < s.num_roots() && good; ++b) {
                good = s.pairing(a, b) == s.pairing(b, a) && s.index_of(s.reflect(s.root(b), a)).has_value();
            }
            const auto& c = s.simple_coefficients(a);
            const bool pos = RootSystem::is_positive(a);
            good = good && std::all_of(c.begin(), c.end(), [&](int v) { return pos ? v >= 0 : v <= 0; });
        }
        const auto seq = s.orthogonal_sequence();
        for (size_t i = 0; i < seq.gammas.size() && good; ++i)
            for (size_t j = i + 1; j < seq.gammas.size() && good; ++j) {
                const int c = seq.connector(static_cast<int>(i), static_cast<int>(j));
                good = s.pairing(seq.gammas[i], seq.gammas[j]) == 0 && s.pairing(c, seq.gammas[i]) == -1 &&
                       s.pairing(c, seq.gammas[j]) == -1;
            }
        d[name] = good;
        ok = ok && good;
    }
    return finish("roots", ok, d, ok ? "counts, pairings, reflections and sequences consistent" : "invariant violated");
}

StageResult stage_steinberg(const PipelineOptions& opt) {
    json d = json::object();
    bool ok = true;
    for (const char* sys : {"A3", "A5", "D4"})
        for (const char* ring : {"Z/4", "Z/8", "dual(Z/2)", "Zodd"}) {
            auto res = run_relations(RootSystem::parse(sys), Ring::make(ring), "steinberg", opt.seed, opt.samples);
            json row = json::object();
            for (const auto& r : res) {
                row[r.relation] = r.failed;
                ok = ok && r.failed == 0;
            }
            d[std::string(sys) + " " + ring] = row;
        }
    return finish("steinberg", ok, d, ok ? "all sampled relations hold" : "relation failures");
}

StageResult stage_identities(const PipelineOptions&) {
    Ring r = Ring::make("Z/4");
    json d = json::object();
    bool ok = true;
    for (const char* name : {"A3", "A4", "A5", "A6", "D4", "D5", "D6", "E6"}) {
        const RootSystem& s = RootSystem::parse(name);
        size_t bad = 0;
        for (int a = 0; a < s.num_roots(); ++a) bad += !q_elem(r, s, a).pow(3).is_identity();
        d[std::string("qorder ") + name] = bad;
        ok = ok && bad == 0;
    }
    for (const char* name : {"E7", "E8"}) {
        const RootSystem& s = RootSystem::parse(name);
        size_t bad = 0;
        for (int a : s.simple()) bad += !q_elem(r, s, a).pow(3).is_identity();
        d[std::string("qorder simple ") + name] = bad;
        ok = ok && bad == 0;
    }
    const RootSystem& a5 = RootSystem::parse("A5");
    auto wij = run_relations(a5, r, "wij", 0, 0);
    d["wij A5"] = wij[0].failed;
    const auto seq = a5.orthogonal_sequence();
    Matrix w13 = wij_elem(r, a5, seq, 0, 1), w35 = wij_elem(r, a5, seq, 1, 2);
    const bool braid = (w13 * w35).pow(3).is_identity();
    d["(w13 w35)^3 = 1"] = braid;
    ok = ok && wij[0].failed == 0 && braid;
    return finish("identities", ok, d, ok ? "Q^3 = 1, w_ij relations hold" : "identity failures");
}

StageResult stage_diagonalization(const PipelineOptions&) {
    Ring r = Ring::make("omega(Z/4)");
    json d = json::object();
    bool ok = true;
    for (const char* name : {"A3", "A5", "D4", "E6"}) {
        const RootSystem& s = RootSystem::parse(name);
        Matrix q = q_elem(r, s, s.simple_root(1));
        auto dg = diagonalize_order3(q);
        const bool good = dg.D.is_diagonal() && dg.P * q == dg.D * dg.P && dg.mult_xi == dg.mult_xi2;
        d[name] = {{"one", dg.mult_one}, {"xi", dg.mult_xi}, {"xi2", dg.mult_xi2}, {"ok", good}};
        ok = ok && good;
    }
    return finish("diagonalization", ok, d, ok ? "P Q P^-1 diagonal with balanced xi, xi^2" : "diagonalization failed");
}

StageResult stage_blocks(const PipelineOptions&) {
    json d = json::object();
    bool ok = true;
    for (const auto& id : block_spec_ids()) {
        auto rep = compare_blocks(load_block_spec(id));
        d[id] = {{"match", rep.match}, {"computed_parts", rep.computed_parts}, {"expected_parts", rep.expected_parts},
                 {"missing_parts", rep.missing.size()}};
        ok = ok && rep.match;
    }
    return finish("blocks", ok, d, ok ? "partitions equal the transcribed lists" : "computed partitions differ from the transcribed lists");
}

StageResult stage_fixtures(const PipelineOptions&) {
    json d = json::object();
    bool ok = true;
    size_t passed = 0;
    const auto ids = fixture_ids();
    for (const auto& id : ids) {
        auto rep = compare_fixture(id);
        d[id] = {{"pass", rep.pass}, {"detail", rep.detail}};
        ok = ok && rep.pass;
        passed += rep.pass;
    }
    return finish("fixtures", ok && !ids.empty(), d, std::to_string(passed) + "/" + std::to_string(ids.size()) + " fixtures match up to gauge");
}

StageResult stage_rigidity(const PipelineOptions&) {
    Ring f2 = Ring::make("Z/2");
    json d = json::object();
    bool ok = true;
    for (const char* id : {"fourth", "third", "second", "first-a3"}) {
        ConditionSet cs = load_condition_set(id);
        for (int mu : {1, -1}) {
            auto rep = rigidity_check(cs, f2, mu);
            bool good = rep.contained && rep.inconsistent == 0;
            if (cs.expect_solution_dim) good = good && rep.solution_dim == cs.expected_solution_dim;
            d[std::string(id) + (mu == 1 ? " mu=+1" : " mu=-1")] = rep.to_json();
            ok = ok && good;
        }
    }
    return finish("rigidity", ok, d, ok ? "every solution lies in the gauge space" : "solutions outside the gauge space");
}

StageResult stage_centralizer(const PipelineOptions&) {
    auto rep = unipotent_centralizer(Ring::make("Z/4"), load_condition_set("centralizer6"));
    json d = rep.to_json();
    d.erase("survivor_params");
    return finish("centralizer", rep.collapses, d,
                  std::to_string(rep.survivors) + " survivors, " + std::to_string(rep.invertible_survivors) + " invertible");
}

// Independent route: divided powers of ad computed directly from brackets.
Matrix unit_oracle(const RootSystem& sys) {
    Ring z = Ring::integers();
    auto x = [&](int a) {
        Matrix ad = ad_matrix(sys, a);
        Matrix e = Matrix::identity(z, sys.dim()) + ad;
        for (int k = 2; k <= 3; ++k) e = e + divided_power(ad, k);
        return e;
    };
    const Matrix id = Matrix::identity(z, sys.dim());
    Matrix p = (x(sys.simple_root(1)) - id) * (x(sys.simple_root(2)) - id);
    return p * p;
}

StageResult stage_matrix_unit(const PipelineOptions&) {
    const RootSystem& a3 = RootSystem::parse("A3");
    json d = json::object();
    bool ok = true;
    const Matrix oracle = unit_oracle(a3);
    for (const char* spec : {"Z", "Z/4"}) {
        Ring r = Ring::make(spec);
        try {
            auto rep = matrix_unit_extract(r, a3);
            const bool same = rep.m == oracle.change_ring(r) && rep.scalar == r.one();
            d[spec] = {{"support", rep.support}, {"row", rep.row_label}, {"col", rep.col_label}, {"scalar", rep.scalar.str()}, {"matches_oracle", same}};
            ok = ok && same;
        } catch (const std::runtime_error& e) {
            d[spec] = {{"error", e.what()}};
            ok = false;
        }
    }
    return finish("matrix_unit", ok, d, ok ? "single nonzero entry with scalar 1" : "extraction failed");
}

StageResult stage_idempotents(const PipelineOptions& opt) {
    std::mt19937_64 rng(opt.seed);
    json d = json::object();
    bool ok = true;
    for (const char* spec : {"Z/4", "dual(Z/2)"}) {
        Ring r = Ring::make(spec);
        size_t bad = 0, witness_bad = 0;
        std::uniform_int_distribution<size_t> dim(2, 8);
        for (int k = 0; k < 50; ++k) {
            Matrix a = random_order3(r, dim(rng), rng);
            auto s = order3_split(a);
            bad += !(s.e * s.e == s.e && s.rank0 + s.rank1 == a.rows());
        }
        for (int k = 0; k < 20; ++k) {
            const size_t n = dim(rng);
            Matrix a = random_order3(r, n, rng);
            Matrix nrad(r, n, n);
            for (size_t i = 0; i < n; ++i)
                for (size_t j = 0; j < n; ++j) nrad.set(i, j, r.random_radical(rng));
            Matrix u = Matrix::identity(r, n) + nrad;
            Matrix b = u * a * u.inverse();
            Matrix t = conjugacy_witness(a, b);
            witness_bad += !(t * a * t.inverse() == b);
        }
        d[spec] = {{"split_failures", bad}, {"witness_failures", witness_bad}};
        ok = ok && bad == 0 && witness_bad == 0;
    }
    return finish("idempotents", ok, d, ok ? "e^2 = e, ranks add up, witnesses conjugate" : "split failures");
}

}  // namespace

PipelineReport run_pipeline(const PipelineOptions& opt) {
    const std::vector<std::pair<std::string, Stage>> stages = {
        {"rings", stage_rings},         {"roots", stage_roots},       {"steinberg", stage_steinberg},
        {"identities", stage_identities}, {"diagonalization", stage_diagonalization}, {"blocks", stage_blocks},
        {"fixtures", stage_fixtures},   {"rigidity", stage_rigidity}, {"centralizer", stage_centralizer},
        {"matrix_unit", stage_matrix_unit}, {"idempotents", stage_idempotents}};
    for (const auto& o : opt.only)
        if (std::none_of(stages.begin(), stages.end(), [&](const auto& s) { return s.first == o; }))
            throw std::invalid_argument("unknown stage '" + o + "'");
    PipelineReport rep;
    for (const auto& [name, fn] : stages) {
        if (!opt.only.empty() && std::find(opt.only.begin(), opt.only.end(), name) == opt.only.end()) continue;
        try {
            rep.stages.push_back(fn(opt));
        } catch (const std::exception& e) {
            rep.stages.push_back(StageResult{name, "fail", json{{"error", e.what()}, {"summary", std::string("error: ") + e.what()}}});
        }
    }
    return rep;
}

}  // namespace chevkit
