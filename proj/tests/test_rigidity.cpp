#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "chevkit/chevalley.hpp"
#include "chevkit/rigidity.hpp"

using namespace chevkit;

namespace {

Support full(size_t n) {
    Support s(n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) s.set(i, j);
    return s;
}

// Lift an F_2 matrix into dual(F_2) as a + b eps.
Matrix lift(const Ring& d, const Matrix& a, const Matrix& b) {
    Matrix out(d, a.rows(), a.cols());
    for (size_t i = 0; i < a.rows(); ++i)
        for (size_t j = 0; j < a.cols(); ++j)
            out.set(i, j, d.parse(json{{"a", a.get(i, j).to_json()}, {"b", b.get(i, j).to_json()}}));
    return out;
}

// Split a dual(F_2) matrix into its constant and eps parts.
std::pair<Matrix, Matrix> split(const Ring& f, const Matrix& m) {
    Matrix a(f, m.rows(), m.cols()), b(f, m.rows(), m.cols());
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j) {
            json e = m.get(i, j).to_json();
            if (e.is_object()) {
                a.set(i, j, f.parse(e.at("a")));
                b.set(i, j, f.parse(e.value("b", json(0))));
            } else {
                a.set(i, j, f.parse(e));
            }
        }
    return {a, b};
}

}  // namespace

TEST_CASE("expression round trip") {
    for (const char* text : {"(w1' w2')^3", "w2^-1 X w2 x2 X", "x12' x1' x2'", "E"}) {
        Expr e = parse_expr(text);
        CHECK(format_expr(parse_expr(format_expr(e))) == format_expr(e));
    }
    CHECK(format_expr(parse_expr("a  b")) == "a b");
    CHECK_THROWS_AS(parse_expr("(a b"), ConditionError);
    CHECK_THROWS_AS(parse_condition("a b"), ConditionError);
    CHECK(parse_condition("W = 0").rhs_zero);
}

TEST_CASE("linearization is exact over dual numbers") {
    // Over F_2[eps] with W = B + eps V, products of two perturbations vanish,
    // so the eps part of the word is exactly the linearized row evaluated at V.
    Ring f2 = Ring::make("Z/2"), d = Ring::make("dual(Z/2)");
    const RootSystem& a3 = RootSystem::parse("A3");
    const std::vector<size_t> idx = {0, 1, static_cast<size_t>(a3.h_index(1)), static_cast<size_t>(a3.h_index(2))};
    const Matrix K = restrict_to(q_elem(f2, a3, 0), idx);
    const Matrix B = restrict_to(w_elem(f2, a3, 0), idx);
    const size_t n = idx.size();

    UnknownRegistry reg;
    const int slot = reg.add("W", B, full(n));
    std::vector<ConditionWord> words = {parse_condition("W K W^-1 = K^2 W"), parse_condition("W^3 K = K W")};
    LinearSystem sys = linearize(words, reg, {{"K", K}}, {}, {{"W", slot}});
    CHECK(sys.nvars == n * n);

    const Matrix Kd = lift(d, K, Matrix(f2, n, n));
    auto exact = [&](const Matrix& V) {
        const Matrix W = lift(d, B, V);
        const Matrix Wi = W.inverse();
        std::vector<Matrix> out;
        out.push_back(W * Kd * Wi - Kd * Kd * W);
        out.push_back(W.pow(3) * Kd - Kd * W);
        return out;
    };

    // Reassemble the expected rows column by column from exact evaluations.
    const auto base = exact(Matrix(f2, n, n));
    std::vector<std::vector<Matrix>> cols;  // cols[v][word] = eps part with V = e_v
    for (size_t v = 0; v < n * n; ++v) {
        Matrix V(f2, n, n);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                if (reg.slots[0].id(i, j) == static_cast<int64_t>(v)) V.set_int(i, j, 1);
        std::vector<Matrix> parts;
        for (const auto& m : exact(V)) parts.push_back(split(f2, m).second);
        cols.push_back(parts);
    }
    std::vector<AffineExpr> expected;
    for (size_t w = 0; w < words.size(); ++w) {
        const Matrix c = split(f2, base[w]).first;
        for (size_t e = 0; e < n * n; ++e) {
            AffineExpr row;
            row.constant = c.at(e / n, e % n);
            for (size_t v = 0; v < n * n; ++v) {
                const Value& x = cols[v][w].at(e / n, e % n);
                if (!f2.is_zero(x)) row.terms.emplace_back(static_cast<uint32_t>(v), x);
            }
            if (!row.terms.empty() || !f2.is_zero(row.constant)) expected.push_back(row);
        }
    }
    REQUIRE(sys.rows.size() == expected.size());
    for (size_t k = 0; k < expected.size(); ++k) {
        CHECK(f2.equal(sys.rows[k].constant, expected[k].constant));
        REQUIRE(sys.rows[k].terms.size() == expected[k].terms.size());
        for (size_t t = 0; t < expected[k].terms.size(); ++t) {
            CHECK(sys.rows[k].terms[t].first == expected[k].terms[t].first);
            CHECK(f2.equal(sys.rows[k].terms[t].second, expected[k].terms[t].second));
        }
    }
}

TEST_CASE("trivial words") {
    Ring f2 = Ring::make("Z/2");
    const size_t n = 3;
    UnknownRegistry reg;
    const int s = reg.add("W", Matrix::identity(f2, n), full(n));

    auto vac = linearize({parse_condition("W K = K W")}, reg, {{"K", Matrix::identity(f2, n)}}, {}, {{"W", s}});
    CHECK(vac.rows.empty());

    auto zero = linearize({parse_condition("W = 0")}, reg, {}, {}, {{"W", s}});
    CHECK(solve(zero).dim() == 0);
    CHECK(zero.inconsistent_rows() == n);  // base point is the identity
}

TEST_CASE("order-three word forces W2 = W1 in characteristic two") {
    Ring f2 = Ring::make("Z/2");
    const size_t n = 2;
    UnknownRegistry reg;
    const int s1 = reg.add("W1", Matrix::identity(f2, n), full(n));
    const int s2 = reg.add("W2", Matrix::identity(f2, n), full(n));
    auto sys = linearize({parse_condition("(W1 W2)^3 = E")}, reg, {}, {}, {{"W1", s1}, {"W2", s2}});
    CHECK(sys.rows.size() == n * n);
    for (const auto& r : sys.rows) CHECK(r.terms.size() == 2);
    CHECK(solve(sys).dim() == n * n);
}

TEST_CASE("solve on small systems") {
    Ring f2 = Ring::make("Z/2");
    LinearSystem sys;
    sys.field = f2;
    sys.nvars = 2;
    sys.rows.push_back({f2.vzero(), {{0, f2.vone()}, {1, f2.vone()}}});
    sys.rows.push_back({f2.vzero(), {{1, f2.vone()}}});
    CHECK(solve(sys).dim() == 0);

    LinearSystem empty;
    empty.field = f2;
    empty.nvars = 3;
    CHECK(solve(empty).dim() == 3);

    Ring f4 = Ring::make("omega(Z/2)");
    LinearSystem s4;
    s4.field = f4;
    s4.nvars = 2;
    s4.rows.push_back({f4.vzero(), {{0, f4.xi().value()}, {1, f4.vone()}}});
    CHECK(solve(s4).dim() == 1);
}

TEST_CASE("gauge tuples solve the linearized words") {
    Ring f2 = Ring::make("Z/2");
    const RootSystem& a3 = RootSystem::parse("A3");
    const Matrix K = q_elem(f2, a3, a3.simple_root(1));
    const Matrix B = w_elem(f2, a3, a3.simple_root(3));
    UnknownRegistry reg;
    const int s = reg.add("W", B, full(a3.dim()));
    auto sys = linearize({parse_condition("W^4 = E"), parse_condition("W K = K W")}, reg, {{"K", K}}, {}, {{"W", s}});
    CHECK(sys.inconsistent_rows() == 0);
    size_t leaked = 0;
    auto gauge = gauge_space(f2, {K}, reg, &leaked);
    CHECK(leaked == 0);
    CHECK_FALSE(gauge.empty());
    for (const auto& g : gauge)
        for (const auto& row : sys.rows) {
            Value acc = f2.vzero();
            for (const auto& [id, c] : row.terms) f2.fma(acc, c, g[id]);
            CHECK(f2.is_zero(acc));
        }
}

TEST_CASE("scalars leave no gauge") {
    Ring f2 = Ring::make("Z/2");
    const RootSystem& a3 = RootSystem::parse("A3");
    UnknownRegistry reg;
    reg.add("W", w_elem(f2, a3, 0), full(a3.dim()));
    std::vector<Matrix> everything;
    for (int a = 0; a < a3.num_roots(); ++a) everything.push_back(x_elem(f2, a3, a, 1));
    CHECK(gauge_space(f2, everything, reg).empty());
    CHECK(gauge_space(f2, {}, reg).size() > 0);
}

TEST_CASE("shipped condition sets load") {
    auto ids = condition_set_ids();
    for (const char* id : {"fourth", "third", "second", "first-a3", "centralizer6"})
        CHECK(std::find(ids.begin(), ids.end(), id) != ids.end());
    for (const auto& id : ids) {
        auto cs = load_condition_set(id);
        CHECK_FALSE(cs.source.empty());
        CHECK_FALSE(cs.relations.empty());
        CHECK(cs.basis.size() == cs.basis_names.size());
    }
    CHECK_THROWS(load_condition_set("missing"));
}

TEST_CASE("fourth and third type blocks are rigid") {
    for (const char* id : {"fourth", "third"}) {
        auto cs = load_condition_set(id);
        for (const char* f : {"Z/2", "omega(Z/2)"}) {
            auto rep = rigidity_check(cs, Ring::make(f));
            CHECK(rep.solution_dim == 0);
            CHECK(rep.contained);
            CHECK(rep.inconsistent == 0);
        }
    }
}

TEST_CASE("gauge directions always solve the shipped systems") {
    for (const char* id : {"second", "first-a3"}) {
        auto cs = load_condition_set(id);
        auto plus = rigidity_check(cs, Ring::make("Z/2"), 1);
        auto minus = rigidity_check(cs, Ring::make("Z/2"), -1);
        CHECK(plus.inconsistent == 0);
        CHECK(plus.gauge_in_solutions);
        CHECK(plus.solution_dim >= plus.gauge_dim);
        CHECK(plus.to_json() .dump() == [&] {
            json j = minus.to_json();
            j["mu"] = 1;
            return j.dump();
        }());
    }
}

TEST_CASE("unipotent centralizer family") {
    auto rep = unipotent_centralizer(Ring::make("Z/4"), load_condition_set("centralizer6"));
    CHECK(rep.rational_rank == 6);
    CHECK(rep.enumerated == 4096);
    CHECK(rep.originals_satisfy);
    CHECK(rep.matching_x_alpha1 == 4);
    CHECK(rep.survivors >= rep.invertible_survivors);
    CHECK(rep.invertible_survivors >= 4);
    bool identity = false;
    for (const auto& p : rep.survivor_params) identity = identity || std::all_of(p.begin(), p.end(), [](int64_t v) { return v == 0; });
    CHECK(identity);
    CHECK_THROWS(unipotent_centralizer(Ring::make("Zodd"), load_condition_set("centralizer6")));
}

TEST_CASE("matrix unit extraction") {
    const RootSystem& a3 = RootSystem::parse("A3");
    auto z = matrix_unit_extract(Ring::integers(), a3);
    auto z4 = matrix_unit_extract(Ring::make("Z/4"), a3);
    CHECK(z.support == 1);
    CHECK(z4.support == 1);
    CHECK(z.row == z4.row);
    CHECK(z.col == z4.col);
    CHECK(z.row_label == "x[e1-e3]");
    CHECK(z.col_label == "x[-e1+e3]");
    CHECK(z.scalar == Ring::integers().one());
    CHECK(z4.scalar == Ring::make("Z/4").one());
}
