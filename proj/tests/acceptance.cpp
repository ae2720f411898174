// One line per acceptance criterion; exit status 1 if any criterion fails.
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "chevkit/chevalley.hpp"
#include "chevkit/fixtures.hpp"
#include "chevkit/localtools.hpp"
#include "chevkit/pipeline.hpp"
#include "chevkit/rigidity.hpp"
#include "chevkit/spectral.hpp"

using namespace chevkit;

namespace {

constexpr uint64_t kSeed = 7;
constexpr size_t kSamples = 200;

struct Outcome {
    bool pass = false;
    std::string note;
};

struct Criterion {
    int number;
    const char* name;
    double limit_s;  // 0 = no time bound
    std::function<Outcome()> run;
};

Outcome steinberg() {
    size_t checked = 0, failed = 0;
    std::string first;
    for (const char* sys : {"A3", "A5", "D4"})
        for (const char* ring : {"Z/4", "Z/8", "dual(Z/2)", "Zodd"})
            for (const auto& r : run_relations(RootSystem::parse(sys), Ring::make(ring), "steinberg", kSeed, kSamples)) {
                checked += r.checked;
                failed += r.failed;
                if (r.failed && first.empty()) first = std::string(sys) + " " + ring + " " + r.first_failure;
            }
    return {failed == 0 && checked == 3 * 4 * 4 * kSamples,
            std::to_string(checked - failed) + "/" + std::to_string(checked) + " samples hold" + (first.empty() ? "" : "; " + first)};
}

Outcome order_identities() {
    Ring z4 = Ring::make("Z/4");
    size_t checked = 0, failed = 0;
    for (const char* name : {"A3", "A4", "A5", "A6", "D4", "D5", "D6", "E6"}) {
        const RootSystem& s = RootSystem::parse(name);
        for (int a = 0; a < s.num_roots(); ++a, ++checked) failed += !q_elem(z4, s, a).pow(3).is_identity();
    }
    for (const char* name : {"E7", "E8"}) {
        const RootSystem& s = RootSystem::parse(name);
        for (int a : s.simple()) {
            ++checked;
            failed += !q_elem(z4, s, a).pow(3).is_identity();
        }
    }
    const RootSystem& a5 = RootSystem::parse("A5");
    auto seq = a5.orthogonal_sequence();
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            if (i == j) continue;
            Matrix w = wij_elem(z4, a5, seq, i, j);
            checked += 2;
            failed += !(w * w).is_identity();
            failed += w * q_elem(z4, a5, seq.gammas[i]) * w != q_elem(z4, a5, seq.gammas[j]);
        }
    ++checked;
    failed += !(wij_elem(z4, a5, seq, 0, 1) * wij_elem(z4, a5, seq, 1, 2)).pow(3).is_identity();
    return {failed == 0, std::to_string(checked - failed) + "/" + std::to_string(checked) + " identities hold"};
}

Outcome fixtures() {
    size_t passed = 0;
    std::string failed;
    const auto ids = fixture_ids();
    for (const auto& id : ids) {
        auto rep = compare_fixture(id);
        if (rep.pass) ++passed;
        else failed += (failed.empty() ? "" : ", ") + id + " (" + rep.detail + ")";
    }
    return {ids.size() == 11 && passed == ids.size(),
            std::to_string(passed) + "/" + std::to_string(ids.size()) + " match up to gauge" + (failed.empty() ? "" : "; failing: " + failed)};
}

Outcome diagonalization() {
    Ring w = Ring::make("omega(Z/4)");
    const Element xi = w.xi(), xi2 = xi * xi;
    std::string note;
    bool ok = true;
    for (const char* name : {"A3", "A5", "D4", "E6"}) {
        const RootSystem& s = RootSystem::parse(name);
        const Matrix q = q_elem(w, s, s.simple_root(1));
        auto d = diagonalize_order3(q);
        bool good = d.D.is_diagonal() && d.P * q * d.P.inverse() == d.D && d.mult_xi == d.mult_xi2;
        for (int k = 0; k < s.dim() && good; ++k) {
            const Element e = d.D.get(k, k);
            good = e == w.one() || e == xi || e == xi2;
        }
        ok = ok && good;
        note += std::string(note.empty() ? "" : ", ") + name + " (" + std::to_string(d.mult_one) + "," +
                std::to_string(d.mult_xi) + "," + std::to_string(d.mult_xi2) + ")";
    }
    return {ok, "multiplicities of 1, xi, xi^2: " + note};
}

Outcome blocks() {
    bool ok = true;
    std::string note;
    for (const auto& id : block_spec_ids()) {
        auto rep = compare_blocks(load_block_spec(id));
        ok = ok && rep.match;
        note += std::string(note.empty() ? "" : ", ") + id + " " + std::to_string(rep.computed_parts) + " vs " +
                std::to_string(rep.expected_parts) + " parts";
    }
    return {ok && block_spec_ids().size() == 5, note};
}

Outcome rigidity() {
    Ring f2 = Ring::make("Z/2");
    bool ok = true;
    std::string note;
    for (const char* id : {"fourth", "third", "second", "first-a3"}) {
        auto rep = rigidity_check(load_condition_set(id), f2);
        const bool strict = std::string(id) == "fourth" || std::string(id) == "third";
        const bool good = strict ? rep.solution_dim == 0 : rep.contained;
        ok = ok && good;
        note += std::string(note.empty() ? "" : ", ") + id + " sol " + std::to_string(rep.solution_dim) + " gauge " +
                std::to_string(rep.gauge_dim) + (rep.contained ? " contained" : " not contained");
    }
    return {ok, note};
}

Outcome centralizer() {
    auto rep = unipotent_centralizer(Ring::make("Z/4"), load_condition_set("centralizer6"));
    const bool ok = rep.enumerated == 4096 && rep.survivors == 4 && rep.matching_x_alpha1 == 4;
    return {ok, std::to_string(rep.enumerated) + " enumerated, " + std::to_string(rep.survivors) + " survivors (" +
                    std::to_string(rep.invertible_survivors) + " invertible), " + std::to_string(rep.matching_x_alpha1) +
                    " equal to x_a1(s)"};
}

// Brute-force oracle: exponentiate integer adjoint matrices assembled from brackets.
std::vector<std::vector<mpz_class>> brute_unit(const RootSystem& sys) {
    const int n = sys.dim();
    using M = std::vector<std::vector<mpz_class>>;
    auto zero = [&] { return M(n, std::vector<mpz_class>(n, 0)); };
    auto mul = [&](const M& a, const M& b) {
        M c = zero();
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k)
                if (a[i][k] != 0)
                    for (int j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
        return c;
    };
    auto x_minus_one = [&](int alpha) {
        M ad = zero();
        for (int j = 0; j < n; ++j) {
            auto col = bracket(sys, alpha, j);
            for (int i = 0; i < n; ++i) ad[i][j] = col[i];
        }
        M acc = zero(), term = ad;
        mpz_class fact = 1;
        for (int k = 1; k <= 4; ++k) {
            fact *= k;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) acc[i][j] += term[i][j] / fact;
            term = mul(term, ad);
        }
        return acc;
    };
    M p = mul(x_minus_one(sys.simple_root(1)), x_minus_one(sys.simple_root(2)));
    return mul(p, p);
}

Outcome matrix_unit() {
    const RootSystem& a3 = RootSystem::parse("A3");
    const auto oracle = brute_unit(a3);
    size_t nz = 0;
    mpz_class value = 0;
    for (const auto& row : oracle)
        for (const auto& v : row)
            if (v != 0) {
                ++nz;
                value = v;
            }
    try {
        auto rep = matrix_unit_extract(Ring::integers(), a3);
        mpz_class scalar;
        Ring::integers().as_integer(rep.scalar.value(), scalar);
        const bool ok = rep.support == 1 && nz == 1 && oracle[rep.row][rep.col] == scalar;
        return {ok, "single entry at " + rep.row_label + " x " + rep.col_label + ", scalar " + scalar.get_str() + ", oracle " +
                        value.get_str()};
    } catch (const std::runtime_error& e) {
        return {false, e.what()};
    }
}

Outcome idempotents() {
    std::mt19937_64 rng(kSeed);
    size_t split_bad = 0, witness_bad = 0;
    for (const char* spec : {"Z/4", "dual(Z/2)"}) {
        Ring r = Ring::make(spec);
        for (int k = 0; k < 50; ++k) {
            Matrix a = random_order3(r, 2 + k % 7, rng);
            auto s = order3_split(a);
            split_bad += !(s.e * s.e == s.e && s.rank0 + s.rank1 == a.rows());
        }
    }
    Ring d = Ring::make("dual(Z/2)");
    for (int k = 0; k < 20; ++k) {
        const size_t n = 2 + k % 6;
        Matrix a = random_order3(d, n, rng);
        Matrix u = Matrix::identity(d, n);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) u.set(i, j, u.get(i, j) + d.random_radical(rng));
        Matrix b = u * a * u.inverse();
        Matrix t = conjugacy_witness(a, b);
        witness_bad += !(t.det().is_unit() && t * a * t.inverse() == b);
    }
    return {split_bad == 0 && witness_bad == 0, std::to_string(100 - split_bad) + "/100 splits, " +
                                                     std::to_string(20 - witness_bad) + "/20 witnesses"};
}

}  // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "steinberg relations", 30, steinberg},
        {2, "order identities", 60, order_identities},
        {3, "fixture reproduction", 0, fixtures},
        {4, "diagonalization", 0, diagonalization},
        {5, "block decomposition", 0, blocks},
        {6, "rigidity", 120, rigidity},
        {7, "unipotent centralizer", 120, centralizer},
        {8, "matrix unit extraction", 0, matrix_unit},
        {9, "idempotent split", 0, idempotents},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("error: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = c.limit_s == 0 || secs < c.limit_s;
        const bool pass = o.pass && in_time;
        failed += !pass;
        char timing[64];
        if (c.limit_s > 0) std::snprintf(timing, sizeof timing, "%.2fs, limit %.0fs", secs, c.limit_s);
        else std::snprintf(timing, sizeof timing, "%.2fs, exact", secs);
        std::printf("%s criterion %d %s: %s [%s]\n", pass ? "PASS" : "FAIL", c.number, c.name, o.note.c_str(), timing);
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria pass\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed ? 1 : 0;
}
