#include "chevkit/spectral.hpp"

#include <algorithm>
#include <filesystem>
#include <map>
#include <set>

#include "chevkit/chevalley.hpp"
#include "chevkit/data.hpp"
#include "chevkit/linsolve.hpp"

namespace chevkit {

namespace {

// Incremental independence test over a field.
class FieldEchelon {
public:
    explicit FieldEchelon(Ring f) : f_(std::move(f)) {}
    bool try_add(std::vector<Value> v) {
        for (size_t r = 0; r < rows_.size(); ++r) {
            const size_t c = piv_[r];
            if (f_.is_zero(v[c])) continue;
            Value k = f_.neg(v[c]);
            for (size_t j = 0; j < v.size(); ++j)
                if (!f_.is_zero(rows_[r][j])) f_.fma(v[j], k, rows_[r][j]);
        }
        size_t c = 0;
        while (c < v.size() && f_.is_zero(v[c])) ++c;
        if (c == v.size()) return false;
        Value inv = f_.inv(v[c]);
        for (auto& x : v) x = f_.mul(x, inv);
        rows_.push_back(std::move(v));
        piv_.push_back(c);
        return true;
    }

private:
    Ring f_;
    std::vector<std::vector<Value>> rows_;
    std::vector<size_t> piv_;
};

}  // namespace

Diagonalization diagonalize_order3(const Matrix& q) {
    const Ring& r = q.ring();
    if (r.kind() != Kind::Omega) throw SpecError("diagonalization needs an omega extension, got " + r.spec());
    Element three = r.from_int(3);
    Element inv3 = three.inverse();
    Element xi = r.xi();
    const size_t n = q.rows();
    if (!q.pow(3).is_identity()) throw std::domain_error("matrix does not have order 3");
    const Matrix q2 = q * q;
    const Matrix id = Matrix::identity(r, n);
    const Element lams[3] = {xi, xi * xi, r.one()};
    Ring k = r.residue_field();

    struct Col {
        size_t j;
        int lam;
    };
    std::vector<Col> chosen;
    std::vector<Matrix> proj;
    for (int li = 0; li < 3; ++li) {
        const Element& l = lams[li];
        Matrix e = (id + q.scaled(l * l) + q2.scaled(l)).scaled(inv3);
        FieldEchelon ech(k);
        for (size_t j = 0; j < n; ++j) {
            std::vector<Value> col(n);
            for (size_t i = 0; i < n; ++i) col[i] = r.residue_value(e.at(i, j));
            if (ech.try_add(std::move(col))) chosen.push_back({j, li});
        }
        proj.push_back(std::move(e));
    }
    if (chosen.size() != n) throw SingularTransition("eigenvectors do not span: found " + std::to_string(chosen.size()) + " of " + std::to_string(n));
    std::stable_sort(chosen.begin(), chosen.end(), [](const Col& a, const Col& b) { return a.j != b.j ? a.j < b.j : a.lam < b.lam; });
    Matrix pinv(r, n, n);
    for (size_t c = 0; c < n; ++c)
        for (size_t i = 0; i < n; ++i) pinv.at(i, c) = proj[chosen[c].lam].at(i, chosen[c].j);
    Diagonalization d;
    try {
        d.P = pinv.inverse();
    } catch (const SingularMatrix&) {
        throw SingularTransition("assembled transition matrix is not invertible");
    }
    d.D = d.P * q * pinv;
    if (!d.D.is_diagonal()) throw std::logic_error("conjugated matrix is not diagonal");
    for (size_t c = 0; c < n; ++c) {
        Element ev = d.D.get(c, c);
        if (ev != lams[chosen[c].lam]) throw std::logic_error("unexpected eigenvalue on the diagonal");
        (chosen[c].lam == 0 ? d.mult_xi : chosen[c].lam == 1 ? d.mult_xi2 : d.mult_one)++;
    }
    return d;
}

Diagonalization diagonalize_q(const Ring& r, const RootSystem& sys, int alpha) {
    return diagonalize_order3(q_elem(r, sys, alpha));
}

size_t Support::count() const {
    size_t c = 0;
    for (char b : bits_) c += b != 0;
    return c;
}

bool Support::subset_of(const Support& o) const {
    for (size_t k = 0; k < bits_.size(); ++k)
        if (bits_[k] && !o.bits_[k]) return false;
    return true;
}

namespace {

Matrix to_residue_field(const Matrix& m) {
    if (m.ring().is_field()) return m;
    return m.residue();
}

struct CommutantResult {
    Support support;
    size_t dim = 0;
};

// Linear system M K - K M = 0 in the n^2 entries of M, split into connected
// components of unknowns before elimination.
CommutantResult solve_commutant(const Ring& field, const std::vector<Matrix>& knowns_in, size_t n, std::vector<Matrix>* basis_out = nullptr) {
    CommutantResult res{Support(n), 0};
    std::vector<Matrix> knowns;
    bool gf2 = true;
    for (const auto& k : knowns_in) {
        if (k.rows() != n || k.cols() != n) throw std::invalid_argument("known matrices must share the dimension");
        Matrix r = to_residue_field(k);
        if (r.ring().field_order() != 2) gf2 = false;
        knowns.push_back(std::move(r));
    }
    const int64_t fo = field.field_order();
    if (fo != 2 && fo != 4) gf2 = false;
    if (!gf2)
        for (auto& k : knowns)
            if (k.ring() != field) k = k.change_ring(field);

    const size_t nv = n * n;
    struct Eq {
        std::vector<std::pair<uint32_t, Value>> terms;
    };
    std::vector<Eq> eqs;
    UnionFind uf(nv);
    for (const auto& K : knowns) {
        const Ring& kr = K.ring();
        auto rs = K.row_support();
        std::vector<std::vector<uint32_t>> cs(n);
        for (size_t i = 0; i < n; ++i)
            for (uint32_t j : rs[i]) cs[j].push_back(static_cast<uint32_t>(i));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) {
                std::map<uint32_t, Value> acc;
                auto addt = [&](uint32_t var, const Value& v) {
                    auto it = acc.find(var);
                    if (it == acc.end()) acc.emplace(var, v);
                    else it->second = kr.add(it->second, v);
                };
                for (uint32_t k : cs[j]) addt(static_cast<uint32_t>(i * n + k), K.at(k, j));
                for (uint32_t k : rs[i]) addt(static_cast<uint32_t>(k * n + j), kr.neg(K.at(i, k)));
                Eq e;
                for (auto& [var, v] : acc)
                    if (!kr.is_zero(v)) e.terms.emplace_back(var, v);
                if (e.terms.empty()) continue;
                for (size_t t = 1; t < e.terms.size(); ++t) uf.unite(e.terms[0].first, e.terms[t].first);
                eqs.push_back(std::move(e));
            }
    }
    std::map<size_t, std::vector<uint32_t>> comp_vars;
    for (size_t v = 0; v < nv; ++v) comp_vars[uf.find(v)].push_back(static_cast<uint32_t>(v));
    std::map<size_t, std::vector<const Eq*>> comp_eqs;
    for (const auto& e : eqs) comp_eqs[uf.find(e.terms[0].first)].push_back(&e);

    for (const auto& [root, vars] : comp_vars) {
        auto it = comp_eqs.find(root);
        if (it == comp_eqs.end()) {
            for (uint32_t v : vars) {
                res.support.set(v / n, v % n);
                if (basis_out) {
                    Matrix m(field, n, n);
                    m.at(v / n, v % n) = field.vone();
                    basis_out->push_back(std::move(m));
                }
            }
            res.dim += vars.size();
            continue;
        }
        std::map<uint32_t, uint32_t> local;
        for (size_t k = 0; k < vars.size(); ++k) local[vars[k]] = static_cast<uint32_t>(k);
        if (gf2) {
            std::vector<BitVec> rows;
            for (const Eq* e : it->second) {
                BitVec b(vars.size());
                for (const auto& [var, v] : e->terms) b.set(local[var]);
                rows.push_back(std::move(b));
            }
            auto basis = gf2_nullspace(std::move(rows), vars.size());
            res.dim += basis.size();
            for (const auto& b : basis) {
                Matrix m(field, n, n);
                for (size_t k : b.ones()) {
                    res.support.set(vars[k] / n, vars[k] % n);
                    m.at(vars[k] / n, vars[k] % n) = field.vone();
                }
                if (basis_out) basis_out->push_back(std::move(m));
            }
        } else {
            std::vector<SparseRow> rows;
            for (const Eq* e : it->second) {
                SparseRow s;
                for (const auto& [var, v] : e->terms) s.emplace_back(local[var], v);
                rows.push_back(std::move(s));
            }
            auto basis = field_nullspace(field, rows, vars.size());
            res.dim += basis.size();
            for (const auto& b : basis) {
                Matrix m(field, n, n);
                for (size_t k = 0; k < b.size(); ++k)
                    if (!field.is_zero(b[k])) {
                        res.support.set(vars[k] / n, vars[k] % n);
                        m.at(vars[k] / n, vars[k] % n) = b[k];
                    }
                if (basis_out) basis_out->push_back(std::move(m));
            }
        }
    }
    return res;
}

size_t common_dim(const std::vector<Matrix>& knowns) {
    if (knowns.empty()) throw std::invalid_argument("need at least one known matrix to fix the dimension");
    return knowns[0].rows();
}

}  // namespace

Support centralizer_pattern(const Ring& field, const std::vector<Matrix>& knowns) {
    if (!field.is_field()) throw std::domain_error(field.spec() + " is not a field");
    return solve_commutant(field, knowns, common_dim(knowns)).support;
}

size_t commutant_dimension(const Ring& field, const std::vector<Matrix>& knowns) {
    if (!field.is_field()) throw std::domain_error(field.spec() + " is not a field");
    return solve_commutant(field, knowns, common_dim(knowns)).dim;
}

std::vector<Matrix> commutant_basis(const Ring& field, const std::vector<Matrix>& knowns, size_t n) {
    if (!field.is_field()) throw std::domain_error(field.spec() + " is not a field");
    std::vector<Matrix> basis;
    solve_commutant(field, knowns, n, &basis);
    return basis;
}

BlockPartition block_partition(const Support& s) {
    const size_t n = s.n();
    UnionFind uf(n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
            if (s(i, j)) uf.unite(i, j);
    std::map<size_t, std::vector<int>> parts;
    for (size_t i = 0; i < n; ++i) parts[uf.find(i)].push_back(static_cast<int>(i));
    BlockPartition p;
    for (auto& [r, v] : parts) p.parts.push_back(std::move(v));
    std::sort(p.parts.begin(), p.parts.end());
    return p;
}

std::vector<std::vector<std::string>> named_parts(const RootSystem& sys, const BlockPartition& p) {
    std::vector<std::vector<std::string>> out;
    for (const auto& part : p.parts) {
        std::set<std::string> names;
        for (int i : part) names.insert(i < sys.num_roots() ? sys.root_name(i) : "h");
        out.emplace_back(names.begin(), names.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

BlockSpec load_block_spec(const std::string& id) {
    json j = load_json_file(data_dir() + "/blocks/" + id + ".json");
    BlockSpec s;
    s.id = id;
    s.system = j.at("system").get<std::string>();
    s.target = j.at("target").get<std::string>();
    s.source = j.value("source", "");
    s.commutes_with_q = j.at("commutes_with_q").get<std::vector<std::string>>();
    const RootSystem& sys = RootSystem::parse(s.system);
    for (const auto& part : j.at("parts")) {
        std::set<std::string> names;
        for (const auto& nm : part) {
            std::string t = nm.get<std::string>();
            names.insert(t == "h" ? t : sys.root_name(sys.parse_root(t)));
        }
        s.parts.emplace_back(names.begin(), names.end());
    }
    std::sort(s.parts.begin(), s.parts.end());
    return s;
}

std::vector<std::string> block_spec_ids() {
    std::vector<std::string> ids;
    for (const auto& e : std::filesystem::directory_iterator(data_dir() + "/blocks"))
        if (e.path().extension() == ".json") ids.push_back(e.path().stem().string());
    std::sort(ids.begin(), ids.end());
    return ids;
}

BlockPartition computed_blocks(const BlockSpec& spec) {
    const RootSystem& sys = RootSystem::parse(spec.system);
    Ring z2 = Ring::make("Z/2");
    Ring f4 = Ring::make("omega(residue(Z/2))");
    std::vector<Matrix> knowns;
    for (const auto& g : spec.commutes_with_q) knowns.push_back(q_elem(z2, sys, sys.parse_root(g)));
    return block_partition(centralizer_pattern(f4, knowns));
}

BlockReport compare_blocks(const BlockSpec& spec) {
    const RootSystem& sys = RootSystem::parse(spec.system);
    BlockReport r;
    r.id = spec.id;
    r.computed = named_parts(sys, computed_blocks(spec));
    r.computed_parts = r.computed.size();
    r.expected_parts = spec.parts.size();
    r.match = r.computed == spec.parts;
    for (const auto& p : spec.parts)
        if (!std::binary_search(r.computed.begin(), r.computed.end(), p)) r.missing.push_back(p);
    return r;
}

}  // namespace chevkit
