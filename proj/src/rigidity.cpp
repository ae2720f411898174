#include "chevkit/rigidity.hpp"

#include <algorithm>
#include <cmath>
#include <cctype>
#include <filesystem>
#include <functional>
#include <numeric>

#include "chevkit/chevalley.hpp"
#include "chevkit/data.hpp"

namespace chevkit {

int UnknownRegistry::add(std::string name, Matrix base, const Support& allowed) {
    const size_t n = base.rows();
    SymbolicMatrix s{std::move(name), std::move(base), allowed, std::vector<int64_t>(n * n, -1)};
    const int slot = static_cast<int>(slots.size());
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (allowed(i, j)) {
                s.ids[i * n + j] = static_cast<int64_t>(ids.size());
                ids.push_back({slot, static_cast<uint32_t>(i), static_cast<uint32_t>(j)});
            }
    slots.push_back(std::move(s));
    return slot;
}

std::string UnknownRegistry::label(size_t id) const {
    const auto& u = ids.at(id);
    return slots[u.slot].name + "[" + std::to_string(u.row + 1) + "," + std::to_string(u.col + 1) + "]";
}

// ---- expressions ----

namespace {

class ExprParser {
public:
    explicit ExprParser(const std::string& s) : s_(s) {}

    Expr parse() {
        Expr e = product();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return e;
    }

private:
    static bool name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw ConditionError("cannot parse '" + s_ + "' at " + std::to_string(pos_) + ": " + msg);
    }
    Expr product() {
        Expr p;
        p.op = Expr::Op::Product;
        while (true) {
            skip();
            if (pos_ >= s_.size() || s_[pos_] == ')') break;
            p.args.push_back(power());
        }
        if (p.args.empty()) fail("empty product");
        if (p.args.size() == 1) return std::move(p.args[0]);
        return p;
    }
    Expr power() {
        Expr base = atom();
        skip();
        if (pos_ < s_.size() && s_[pos_] == '^') {
            ++pos_;
            skip();
            size_t used = 0;
            int k = 0;
            try {
                k = std::stoi(s_.substr(pos_), &used);
            } catch (const std::exception&) {
                fail("bad exponent");
            }
            pos_ += used;
            Expr e;
            e.op = Expr::Op::Power;
            e.exponent = k;
            e.args.push_back(std::move(base));
            return e;
        }
        return base;
    }
    Expr atom() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end");
        if (s_[pos_] == '(') {
            ++pos_;
            Expr e = product();
            skip();
            if (pos_ >= s_.size() || s_[pos_] != ')') fail("missing ')'");
            ++pos_;
            return e;
        }
        size_t st = pos_;
        while (pos_ < s_.size() && name_char(s_[pos_])) ++pos_;
        if (st == pos_) fail("expected a name");
        Expr e;
        e.name = s_.substr(st, pos_ - st);
        return e;
    }

    const std::string& s_;
    size_t pos_ = 0;
};

}  // namespace

Expr parse_expr(const std::string& text) { return ExprParser(text).parse(); }

std::string format_expr(const Expr& e) {
    switch (e.op) {
        case Expr::Op::Name:
            return e.name;
        case Expr::Op::Power: {
            const Expr& b = e.args[0];
            std::string inner = format_expr(b);
            if (b.op != Expr::Op::Name) inner = "(" + inner + ")";
            return inner + "^" + std::to_string(e.exponent);
        }
        case Expr::Op::Product: {
            std::string out;
            for (const auto& a : e.args) {
                if (!out.empty()) out += " ";
                out += a.op == Expr::Op::Product ? "(" + format_expr(a) + ")" : format_expr(a);
            }
            return out;
        }
    }
    return {};
}

ConditionWord parse_condition(const std::string& text) {
    auto eq = text.find('=');
    if (eq == std::string::npos || text.find('=', eq + 1) != std::string::npos)
        throw ConditionError("condition needs exactly one '=': " + text);
    ConditionWord w;
    w.text = text;
    w.lhs = parse_expr(text.substr(0, eq));
    std::string rhs = text.substr(eq + 1);
    rhs.erase(0, rhs.find_first_not_of(" \t"));
    rhs.erase(rhs.find_last_not_of(" \t") + 1);
    if (rhs == "0") w.rhs_zero = true;
    else w.rhs = parse_expr(rhs);
    return w;
}

namespace {

template <class T>
T eval_expr(const Expr& e, const std::function<T(const std::string&)>& lookup,
            const std::function<T(const T&, int)>& power) {
    switch (e.op) {
        case Expr::Op::Name:
            return lookup(e.name);
        case Expr::Op::Power:
            return power(eval_expr<T>(e.args[0], lookup, power), e.exponent);
        case Expr::Op::Product: {
            T acc = eval_expr<T>(e.args[0], lookup, power);
            for (size_t k = 1; k < e.args.size(); ++k) acc = acc * eval_expr<T>(e.args[k], lookup, power);
            return acc;
        }
    }
    throw std::logic_error("bad expression node");
}

bool is_identity_name(const std::string& s) { return s == "E" || s == "I"; }

}  // namespace

// ---- linear matrices ----

LinearMatrix LinearMatrix::constant(Matrix m) { return LinearMatrix{std::move(m), {}}; }

LinearMatrix LinearMatrix::unknown(const Matrix& base, int slot) {
    Matrix id = Matrix::identity(base.ring(), base.rows());
    return LinearMatrix{base, {Term{id, slot, id}}};
}

namespace {

void push_term(std::vector<LinearMatrix::Term>& terms, LinearMatrix::Term t) {
    if (t.P.is_zero() || t.S.is_zero()) return;
    for (auto& u : terms)
        if (u.slot == t.slot && u.P == t.P) {
            u.S = u.S + t.S;
            return;
        }
    terms.push_back(std::move(t));
}

}  // namespace

LinearMatrix LinearMatrix::operator*(const LinearMatrix& o) const {
    LinearMatrix r;
    r.c = c * o.c;
    for (const auto& t : terms) push_term(r.terms, Term{t.P, t.slot, t.S * o.c});
    for (const auto& t : o.terms) push_term(r.terms, Term{c * t.P, t.slot, t.S});
    return r;
}

LinearMatrix LinearMatrix::operator-(const LinearMatrix& o) const {
    LinearMatrix r;
    r.c = c - o.c;
    r.terms = terms;
    for (const auto& t : o.terms) push_term(r.terms, Term{-t.P, t.slot, t.S});
    return r;
}

LinearMatrix LinearMatrix::pow(int k) const {
    if (k < 0) {
        Matrix ci = c.inverse();
        LinearMatrix inv;
        inv.c = ci;
        for (const auto& t : terms) push_term(inv.terms, Term{-(ci * t.P), t.slot, t.S * ci});
        return inv.pow(-k);
    }
    LinearMatrix r = constant(Matrix::identity(c.ring(), c.rows()));
    for (int i = 0; i < k; ++i) r = r * *this;
    return r;
}

size_t LinearSystem::inconsistent_rows() const {
    size_t k = 0;
    for (const auto& r : rows) k += !field.is_zero(r.constant);
    return k;
}

LinearSystem linearize(const std::vector<ConditionWord>& words, const UnknownRegistry& reg,
                       const std::map<std::string, Matrix>& knowns, const std::map<std::string, Expr>& derived,
                       const std::map<std::string, int>& unknown_slots) {
    if (reg.slots.empty() && knowns.empty()) throw ConditionError("nothing to linearize");
    const Matrix& any = reg.slots.empty() ? knowns.begin()->second : reg.slots[0].base;
    const Ring field = any.ring();
    const size_t n = any.rows();
    for (const auto& [name, m] : knowns)
        if (m.rows() != n || m.ring() != field) throw ConditionError("known " + name + " has the wrong size or ring");

    std::map<std::string, LinearMatrix> memo;
    std::vector<std::string> stack;
    std::function<LinearMatrix(const std::string&)> lookup = [&](const std::string& name) -> LinearMatrix {
        if (auto it = memo.find(name); it != memo.end()) return it->second;
        LinearMatrix v;
        if (is_identity_name(name)) v = LinearMatrix::constant(Matrix::identity(field, n));
        else if (auto u = unknown_slots.find(name); u != unknown_slots.end())
            v = LinearMatrix::unknown(reg.slots.at(u->second).base, u->second);
        else if (auto k = knowns.find(name); k != knowns.end()) v = LinearMatrix::constant(k->second);
        else if (auto d = derived.find(name); d != derived.end()) {
            if (std::find(stack.begin(), stack.end(), name) != stack.end()) throw ConditionError("cyclic definition of " + name);
            stack.push_back(name);
            v = eval_expr<LinearMatrix>(d->second, lookup, [](const LinearMatrix& m, int k) { return m.pow(k); });
            stack.pop_back();
        } else
            throw ConditionError("unknown matrix name '" + name + "'");
        memo.emplace(name, v);
        return v;
    };
    auto power = [](const LinearMatrix& m, int k) { return m.pow(k); };

    LinearSystem sys;
    sys.field = field;
    sys.nvars = reg.size();
    const size_t nv = sys.nvars;
    for (size_t w = 0; w < words.size(); ++w) {
        const auto& word = words[w];
        LinearMatrix L = eval_expr<LinearMatrix>(word.lhs, lookup, power);
        if (!word.rhs_zero) L = L - eval_expr<LinearMatrix>(word.rhs, lookup, power);
        std::vector<Value> dense(n * n * nv, field.vzero());
        std::vector<char> touched(n * n, 0);
        for (const auto& t : L.terms) {
            const auto& slot = reg.slots.at(t.slot);
            auto prs = t.P.row_support();
            auto srs = t.S.row_support();
            for (size_t i = 0; i < n; ++i)
                for (uint32_t a : prs[i])
                    for (size_t b = 0; b < n; ++b) {
                        const int64_t id = slot.id(a, b);
                        if (id < 0) continue;
                        for (uint32_t j : srs[b]) {
                            field.fma(dense[(i * n + j) * nv + static_cast<size_t>(id)], t.P.at(i, a), t.S.at(b, j));
                            touched[i * n + j] = 1;
                        }
                    }
        }
        for (size_t e = 0; e < n * n; ++e) {
            AffineExpr row;
            row.constant = L.c.at(e / n, e % n);
            if (touched[e])
                for (size_t v = 0; v < nv; ++v)
                    if (!field.is_zero(dense[e * nv + v])) row.terms.emplace_back(static_cast<uint32_t>(v), dense[e * nv + v]);
            if (row.terms.empty() && field.is_zero(row.constant)) continue;
            sys.rows.push_back(std::move(row));
            sys.word_of_row.push_back(w);
        }
    }
    return sys;
}

namespace {

bool binary_field(const Ring& f) { return f.field_order() == 2; }

std::vector<std::vector<Value>> nullspace_of(const Ring& f, const std::vector<SparseRow>& rows, size_t nvars) {
    if (!binary_field(f)) return field_nullspace(f, rows, nvars);
    std::vector<BitVec> bits;
    bits.reserve(rows.size());
    for (const auto& r : rows) {
        BitVec b(nvars);
        for (const auto& [c, v] : r)
            if (!f.is_zero(v)) b.flip(c);
        bits.push_back(std::move(b));
    }
    std::vector<std::vector<Value>> out;
    for (const auto& b : gf2_nullspace(std::move(bits), nvars)) {
        std::vector<Value> v(nvars, f.vzero());
        for (size_t k : b.ones()) v[k] = f.vone();
        out.push_back(std::move(v));
    }
    return out;
}

size_t rank_of(const Ring& f, const std::vector<std::vector<Value>>& vecs, size_t nvars) {
    if (vecs.empty()) return 0;
    if (!binary_field(f)) return field_rank(f, vecs);
    std::vector<BitVec> bits;
    for (const auto& v : vecs) {
        BitVec b(nvars);
        for (size_t k = 0; k < nvars; ++k)
            if (!f.is_zero(v[k])) b.set(k);
        bits.push_back(std::move(b));
    }
    return gf2_rank(bits, nvars);
}

}  // namespace

SolutionSpace solve(const LinearSystem& sys) {
    std::vector<SparseRow> rows;
    rows.reserve(sys.rows.size());
    for (const auto& r : sys.rows) rows.push_back(r.terms);
    SolutionSpace s;
    s.nvars = sys.nvars;
    s.basis = nullspace_of(sys.field, rows, sys.nvars);
    return s;
}

std::vector<std::vector<Value>> gauge_space(const Ring& field, const std::vector<Matrix>& knowns,
                                            const UnknownRegistry& reg, size_t* leaked) {
    if (reg.slots.empty()) return {};
    const size_t n = reg.slots[0].base.rows();
    std::vector<std::vector<Value>> out;
    size_t leak = 0;
    for (const Matrix& C : commutant_basis(field, knowns, n)) {
        std::vector<Value> v(reg.size(), field.vzero());
        bool nonzero = false;
        for (const auto& slot : reg.slots) {
            Matrix d = C * slot.base - slot.base * C;
            for (size_t i = 0; i < n; ++i)
                for (size_t j = 0; j < n; ++j) {
                    if (field.is_zero(d.at(i, j))) continue;
                    const int64_t id = slot.id(i, j);
                    if (id < 0) {
                        ++leak;
                        continue;
                    }
                    v[static_cast<size_t>(id)] = d.at(i, j);
                    nonzero = true;
                }
        }
        if (nonzero) out.push_back(std::move(v));
    }
    if (leaked) *leaked = leak;
    return out;
}

// ---- condition sets ----

Matrix generator_matrix(const Ring& r, const RootSystem& sys, const json& spec) {
    const std::string op = spec.at("op").get<std::string>();
    auto root = [&]() { return sys.parse_root(spec.at("root").get<std::string>()); };
    auto param = [&]() { return spec.contains("t") ? r.parse(spec.at("t")) : r.one(); };
    if (op == "x") return x_elem(r, sys, root(), param());
    if (op == "w") return w_elem(r, sys, root(), param());
    if (op == "h") return h_elem(r, sys, root(), param());
    if (op == "q") return q_elem(r, sys, root());
    if (op == "wij") return wij_elem(r, sys, sys.orthogonal_sequence(), spec.at("i").get<int>(), spec.at("j").get<int>());
    if (op == "identity") return Matrix::identity(r, sys.dim());
    throw ConditionError("unknown generator op '" + op + "'");
}

Matrix restrict_to(const Matrix& m, const std::vector<size_t>& idx) {
    std::vector<char> in(m.rows(), 0);
    for (size_t i : idx) in.at(i) = 1;
    for (size_t i = 0; i < m.rows(); ++i)
        for (size_t j = 0; j < m.cols(); ++j)
            if (in[i] != in[j] && !m.is_zero_at(i, j))
                throw ConditionError("basis part is not invariant: entry (" + std::to_string(i) + "," + std::to_string(j) + ")");
    return m.sub(idx);
}

namespace {

std::vector<size_t> basis_indices(const RootSystem& sys, const json& b, std::vector<std::string>& names) {
    std::vector<size_t> idx;
    if (b.is_string() && b.get<std::string>() == "all") {
        for (int k = 0; k < sys.dim(); ++k) idx.push_back(static_cast<size_t>(k));
    } else {
        for (const auto& nm : b) {
            const std::string s = nm.get<std::string>();
            if (s.size() >= 2 && s[0] == 'h' && std::isdigit(static_cast<unsigned char>(s[1])))
                idx.push_back(static_cast<size_t>(sys.h_index(std::stoi(s.substr(1)))));
            else
                idx.push_back(static_cast<size_t>(sys.parse_root(s)));
        }
    }
    for (size_t i : idx) names.push_back(sys.basis_label(static_cast<int>(i)));
    return idx;
}

}  // namespace

ConditionSet load_condition_set(const std::string& id) {
    const json j = load_json_file(data_dir() + "/conditions/" + id + ".json");
    ConditionSet cs;
    cs.id = j.value("id", id);
    cs.source = j.value("source", "");
    cs.system = j.at("system").get<std::string>();
    const RootSystem& sys = RootSystem::parse(cs.system);
    cs.basis = basis_indices(sys, j.at("basis"), cs.basis_names);
    Ring z = Ring::integers();
    for (const auto& [name, spec] : j.at("knowns").items()) {
        cs.knowns.emplace(name, restrict_to(generator_matrix(z, sys, spec), cs.basis));
        cs.known_order.push_back(name);
    }
    for (const auto& u : j.at("unknowns")) {
        ConditionSet::Unknown un;
        un.name = u.at("name").get<std::string>();
        un.base = u.at("base").get<std::string>();
        if (!cs.knowns.count(un.base)) throw ConditionError("unknown " + un.name + " has no known base " + un.base);
        if (u.contains("commutes_with")) un.commutes_with = u.at("commutes_with").get<std::vector<std::string>>();
        cs.unknowns.push_back(std::move(un));
    }
    if (j.contains("derived"))
        for (const auto& d : j.at("derived")) cs.derived.emplace_back(d.at("name").get<std::string>(), parse_expr(d.at("expr").get<std::string>()));
    for (const auto& r : j.at("relations")) cs.relations.push_back(parse_condition(r.get<std::string>()));
    if (j.contains("gauge_knowns")) cs.gauge_knowns = j.at("gauge_knowns").get<std::vector<std::string>>();
    cs.sign_known = j.value("sign_known", "");
    if (j.contains("expected_solution_dim")) {
        cs.expect_solution_dim = true;
        cs.expected_solution_dim = j.at("expected_solution_dim").get<size_t>();
    }
    for (const auto& g : cs.gauge_knowns)
        if (!cs.knowns.count(g)) throw ConditionError("gauge known " + g + " is not defined");
    return cs;
}

std::vector<std::string> condition_set_ids() {
    std::vector<std::string> ids;
    for (const auto& e : std::filesystem::directory_iterator(data_dir() + "/conditions"))
        if (e.path().extension() == ".json") ids.push_back(e.path().stem().string());
    std::sort(ids.begin(), ids.end());
    return ids;
}

json RigidityReport::to_json() const {
    return json{{"id", id},
                {"field", field},
                {"mu", mu},
                {"n", n},
                {"unknowns", unknowns},
                {"equations", equations},
                {"inconsistent_rows", inconsistent},
                {"solution_dim", solution_dim},
                {"gauge_dim", gauge_dim},
                {"commutant_dim", commutant_dim},
                {"gauge_leaked", gauge_leaked},
                {"solution_support", solution_support},
                {"contained", contained},
                {"gauge_in_solutions", gauge_in_solutions}};
}

RigidityReport rigidity_check(const ConditionSet& cs, const Ring& field, int mu) {
    if (!field.is_field()) throw std::domain_error(field.spec() + " is not a field");
    const size_t n = cs.basis.size();
    std::map<std::string, Matrix> knowns;
    for (const auto& [name, m] : cs.knowns) {
        Matrix k = m.change_ring(field);
        if (name == cs.sign_known && mu == -1) k = -k;
        knowns.emplace(name, std::move(k));
    }
    UnknownRegistry reg;
    std::map<std::string, int> slots;
    std::vector<ConditionWord> words;
    for (const auto& u : cs.unknowns) {
        Support allowed(n);
        if (u.commutes_with.empty()) {
            for (size_t i = 0; i < n; ++i)
                for (size_t j = 0; j < n; ++j) allowed.set(i, j);
        } else {
            std::vector<Matrix> ks;
            for (const auto& k : u.commutes_with) ks.push_back(knowns.at(k));
            allowed = centralizer_pattern(field, ks);
            for (const auto& k : u.commutes_with) words.push_back(parse_condition(u.name + " " + k + " = " + k + " " + u.name));
        }
        slots[u.name] = reg.add(u.name, knowns.at(u.base), allowed);
    }
    words.insert(words.end(), cs.relations.begin(), cs.relations.end());
    std::map<std::string, Expr> derived(cs.derived.begin(), cs.derived.end());

    LinearSystem sys = linearize(words, reg, knowns, derived, slots);
    SolutionSpace sol = solve(sys);

    std::vector<Matrix> gk;
    for (const auto& g : cs.gauge_knowns) gk.push_back(knowns.at(g));
    RigidityReport rep;
    rep.id = cs.id;
    rep.field = field.spec();
    rep.mu = mu;
    rep.n = n;
    rep.unknowns = reg.size();
    rep.equations = sys.rows.size();
    rep.inconsistent = sys.inconsistent_rows();
    rep.commutant_dim = commutant_basis(field, gk, n).size();
    auto gauge = gauge_space(field, gk, reg, &rep.gauge_leaked);
    const size_t nv = reg.size();
    rep.gauge_dim = rank_of(field, gauge, nv);
    rep.solution_dim = sol.dim();
    auto both = gauge;
    both.insert(both.end(), sol.basis.begin(), sol.basis.end());
    const size_t joint = rank_of(field, both, nv);
    rep.contained = joint == rep.gauge_dim;
    rep.gauge_in_solutions = joint == rep.solution_dim;
    for (size_t v = 0; v < nv; ++v)
        for (const auto& b : sol.basis)
            if (!field.is_zero(b[v])) {
                ++rep.solution_support;
                break;
            }
    return rep;
}

// ---- unipotent centralizer ----

json CentralizerReport::to_json() const {
    return json{{"ring", ring},
                {"rational_rank", rational_rank},
                {"enumerated", enumerated},
                {"survivors", survivors},
                {"invertible_survivors", invertible_survivors},
                {"matching_x_alpha1", matching_x_alpha1},
                {"originals_satisfy", originals_satisfy},
                {"collapses", collapses},
                {"survivor_params", survivor_params}};
}

CentralizerReport unipotent_centralizer(const Ring& r, const ConditionSet& cs) {
    if (r.kind() != Kind::IntMod) throw std::invalid_argument("enumeration needs a ring Z/n, got " + r.spec());
    if (cs.unknowns.size() != 1 || cs.relations.empty()) throw ConditionError(cs.id + " is not a centralizer setup");
    const auto& u = cs.unknowns[0];
    const size_t n = cs.basis.size();
    const size_t nv = n * n;

    std::vector<QRow> rows;
    for (const auto& kname : u.commutes_with) {
        const Matrix& K = cs.knowns.at(kname);
        mpz_class z;
        std::vector<std::vector<int64_t>> k(n, std::vector<int64_t>(n, 0));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                if (!K.is_zero_at(i, j)) {
                    K.ring().as_integer(K.at(i, j), z);
                    k[i][j] = z.get_si();
                }
        // (CK - KC)_{ij} = sum_m C_im K_mj - K_im C_mj
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                QRow row;
                for (size_t m = 0; m < n; ++m) {
                    if (k[m][j]) row.emplace_back(static_cast<uint32_t>(i * n + m), mpq_class(k[m][j]));
                    if (k[i][m]) row.emplace_back(static_cast<uint32_t>(m * n + j), mpq_class(-k[i][m]));
                }
                if (!row.empty()) rows.push_back(std::move(row));
            }
    }
    auto basis = rational_nullspace(rows, nv);
    CentralizerReport rep;
    rep.ring = r.spec();
    rep.rational_rank = basis.size();
    Ring z = Ring::integers();
    for (auto& v : basis) {
        mpz_class l = 1;
        for (const auto& q : v)
            if (sgn(q) != 0) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t());
        Matrix m(z, n, n);
        for (size_t k = 0; k < nv; ++k)
            if (sgn(v[k]) != 0) {
                mpq_class s = v[k] * l;
                m.at(k / n, k % n) = z.vmpz(s.get_num());
            }
        rep.family.push_back(std::move(m));
    }

    const int64_t q = r.modulus();
    const size_t k = rep.family.size();
    double total = std::pow(static_cast<double>(q), static_cast<double>(k));
    if (total > 5e7) throw std::invalid_argument("parameter space too large to enumerate");

    std::map<std::string, Matrix> kn;
    for (const auto& [name, m] : cs.knowns) kn.emplace(name, m.change_ring(r));
    std::vector<Matrix> fam;
    for (const auto& m : rep.family) fam.push_back(m.change_ring(r));
    const Matrix base = kn.at(u.base);
    // x_{a1}(s) = x_{a1}(1)^s on the block.
    std::vector<Matrix> originals;
    Matrix acc = Matrix::identity(r, n);
    for (int64_t s = 0; s < q; ++s) {
        originals.push_back(acc);
        acc = acc * base;
    }
    std::map<std::string, Expr> derived(cs.derived.begin(), cs.derived.end());
    auto holds = [&](const Matrix& X) {
        std::function<Matrix(const std::string&)> lookup = [&](const std::string& name) -> Matrix {
            if (name == u.name) return X;
            if (is_identity_name(name)) return Matrix::identity(r, n);
            if (auto it = kn.find(name); it != kn.end()) return it->second;
            if (auto d = derived.find(name); d != derived.end())
                return eval_expr<Matrix>(d->second, lookup, [](const Matrix& m, int e) { return e < 0 ? m.inverse().pow(-e) : m.pow(e); });
            throw ConditionError("unknown matrix name '" + name + "'");
        };
        auto power = [](const Matrix& m, int e) { return e < 0 ? m.inverse().pow(-e) : m.pow(e); };
        for (const auto& w : cs.relations) {
            Matrix l = eval_expr<Matrix>(w.lhs, lookup, power);
            if (w.rhs_zero ? !l.is_zero() : l != eval_expr<Matrix>(w.rhs, lookup, power)) return false;
        }
        return true;
    };
    rep.originals_satisfy = std::all_of(originals.begin(), originals.end(), holds);

    std::vector<int64_t> t(k, 0);
    std::vector<Matrix> survivors;
    for (size_t idx = 0; idx < static_cast<size_t>(total); ++idx) {
        size_t rem = idx;
        for (size_t a = k; a-- > 0;) {
            t[a] = static_cast<int64_t>(rem % static_cast<size_t>(q));
            rem /= static_cast<size_t>(q);
        }
        Matrix X(r, n, n);
        for (size_t a = 0; a < k; ++a)
            if (t[a]) X = X + fam[a].scaled(r.from_int(t[a]));
        ++rep.enumerated;
        if (!holds(X)) continue;
        rep.survivor_params.push_back(t);
        survivors.push_back(std::move(X));
    }
    rep.survivors = survivors.size();
    for (const auto& X : survivors) {
        if (X.det().is_unit()) ++rep.invertible_survivors;
        if (std::any_of(originals.begin(), originals.end(), [&](const Matrix& o) { return o == X; })) ++rep.matching_x_alpha1;
    }
    rep.collapses = rep.survivors == originals.size() && rep.matching_x_alpha1 == originals.size();
    return rep;
}

// ---- matrix units ----

MatrixUnitReport matrix_unit_extract(const Ring& r, const RootSystem& sys) {
    const int a1 = sys.simple_root(1), a2 = sys.simple_root(2);
    const Matrix id = Matrix::identity(r, sys.dim());
    Matrix p = (x_elem(r, sys, a1, 1) - id) * (x_elem(r, sys, a2, 1) - id);
    MatrixUnitReport rep;
    rep.m = p * p;
    rep.support = rep.m.nonzeros();
    for (size_t i = 0; i < rep.m.rows(); ++i)
        for (size_t j = 0; j < rep.m.cols(); ++j)
            if (!rep.m.is_zero_at(i, j)) {
                rep.row = i;
                rep.col = j;
                rep.scalar = rep.m.get(i, j);
            }
    if (rep.support != 1)
        throw std::runtime_error("expected a single nonzero entry, found " + std::to_string(rep.support));
    rep.row_label = sys.basis_label(static_cast<int>(rep.row));
    rep.col_label = sys.basis_label(static_cast<int>(rep.col));
    return rep;
}

}  // namespace chevkit
