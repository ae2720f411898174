#include "chevkit/fixtures.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "chevkit/data.hpp"
#include "chevkit/rigidity.hpp"

#ifndef CHEVKIT_DATA_DIR
#define CHEVKIT_DATA_DIR "data"
#endif

namespace chevkit {

std::string data_dir() {
    if (const char* env = std::getenv("CHEVKIT_FIXTURE_DIR"); env && *env) return env;
    return CHEVKIT_DATA_DIR;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

std::optional<std::vector<int>> sign_gauge(const Matrix& t, const Matrix& f) {
    const size_t n = t.rows();
    if (f.rows() != n || f.cols() != t.cols() || t.ring() != f.ring()) return std::nullopt;
    const Ring& r = t.ring();
    // parent and parity relative to the parent
    std::vector<size_t> par(n);
    std::vector<int> par_sign(n, 1);
    for (size_t i = 0; i < n; ++i) par[i] = i;
    auto find = [&](size_t i) {
        int s = 1;
        while (par[i] != i) {
            s *= par_sign[i];
            i = par[i];
        }
        return std::pair<size_t, int>{i, s};
    };
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            const bool tz = r.is_zero(t.at(i, j)), fz = r.is_zero(f.at(i, j));
            if (tz && fz) continue;
            int want;
            if (r.equal(t.at(i, j), f.at(i, j))) want = 1;
            else if (r.equal(r.neg(t.at(i, j)), f.at(i, j))) want = -1;
            else return std::nullopt;
            if (tz) continue;
            auto [ri, si] = find(i);
            auto [rj, sj] = find(j);
            if (ri == rj) {
                if (si * sj != want) return std::nullopt;
            } else {
                par[ri] = rj;
                par_sign[ri] = si * sj * want;
            }
        }
    std::vector<int> d(n);
    for (size_t i = 0; i < n; ++i) d[i] = find(i).second;
    return d;
}

json FixtureReport::to_json() const {
    return json{{"id", id}, {"kind", kind}, {"pass", pass}, {"gauge", gauge}, {"detail", detail}, {"source", source}};
}

std::vector<std::string> fixture_ids() {
    std::vector<std::string> ids;
    const std::string dir = data_dir() + "/fixtures";
    if (!std::filesystem::is_directory(dir)) return ids;
    for (const auto& e : std::filesystem::directory_iterator(dir))
        if (e.path().extension() == ".json") ids.push_back(e.path().stem().string());
    std::sort(ids.begin(), ids.end());
    return ids;
}

namespace {

std::vector<size_t> fixture_basis(const RootSystem& sys, const json& b) {
    std::vector<size_t> idx;
    if (b.is_string()) {
        if (b.get<std::string>() != "all") throw std::invalid_argument("basis must be a list or \"all\"");
        for (int k = 0; k < sys.dim(); ++k) idx.push_back(static_cast<size_t>(k));
        return idx;
    }
    for (const auto& nm : b) {
        const std::string s = nm.get<std::string>();
        if (s.size() >= 2 && s[0] == 'h' && std::isdigit(static_cast<unsigned char>(s[1])))
            idx.push_back(static_cast<size_t>(sys.h_index(std::stoi(s.substr(1)))));
        else
            idx.push_back(static_cast<size_t>(sys.parse_root(s)));
    }
    return idx;
}

Matrix gauge_matrix(const Ring& r, const std::vector<int>& d) {
    Matrix m(r, d.size(), d.size());
    for (size_t i = 0; i < d.size(); ++i) m.set_int(i, i, d[i]);
    return m;
}

// Does some +-1 gauge make every row (or every column) of T an eigenvector
// of all the given order-3 matrices with eigenvalue in {1, xi, xi^2}?
bool transition_diagonalizes(const Matrix& t, const std::vector<Matrix>& qs, std::vector<int>& gauge, std::string& mode) {
    const Ring& r = t.ring();
    const size_t n = t.rows();
    const Element lams[3] = {r.one(), r.xi(), r.xi() * r.xi()};
    auto eigen_rows = [&](const Matrix& prod, bool rows) {
        for (size_t a = 0; a < n; ++a) {
            bool found = false;
            for (const auto& l : lams) {
                bool ok = true;
                for (size_t b = 0; b < n && ok; ++b) {
                    const size_t i = rows ? a : b, j = rows ? b : a;
                    ok = prod.get(i, j) == l * t.get(i, j);
                }
                if (ok) {
                    found = true;
                    break;
                }
            }
            if (!found) return false;
        }
        return true;
    };
    for (uint32_t mask = 0; mask < (1u << n); ++mask) {
        std::vector<int> d(n);
        for (size_t i = 0; i < n; ++i) d[i] = (mask >> i) & 1 ? -1 : 1;
        const Matrix g = gauge_matrix(r, d);
        for (bool rows : {true, false}) {
            bool all = true;
            for (const auto& q : qs) {
                const Matrix gq = g * q * g;
                if (!eigen_rows(rows ? t * gq : gq * t, rows)) {
                    all = false;
                    break;
                }
            }
            if (all) {
                gauge = d;
                mode = rows ? "rows" : "columns";
                return true;
            }
        }
    }
    return false;
}

}  // namespace

FixtureReport compare_fixture(const std::string& id) {
    const std::string path = data_dir() + "/fixtures/" + id + ".json";
    if (!std::filesystem::exists(path)) throw UnknownFixture("unknown fixture '" + id + "'");
    const json j = load_json_file(path);
    FixtureReport rep;
    rep.id = id;
    rep.kind = j.value("kind", "matrix");
    rep.source = j.value("source", "");
    const RootSystem& sys = RootSystem::parse(j.at("system").get<std::string>());
    const auto idx = fixture_basis(sys, j.at("basis"));
    const Matrix fixture = Matrix::from_json(j.at("matrix"));
    if (fixture.rows() != idx.size()) throw std::invalid_argument(id + ": matrix size does not match the basis");

    if (rep.kind == "matrix") {
        const Matrix ours = restrict_to(generator_matrix(fixture.ring(), sys, j.at("generator")), idx);
        auto g = sign_gauge(ours, fixture);
        rep.pass = g.has_value();
        if (g) {
            rep.gauge = *g;
            size_t flips = static_cast<size_t>(std::count(g->begin(), g->end(), -1));
            rep.detail = flips ? std::to_string(flips) + " basis signs flipped" : "identity gauge";
        } else {
            size_t diff = 0;
            for (size_t a = 0; a < ours.rows(); ++a)
                for (size_t b = 0; b < ours.cols(); ++b)
                    if (!fixture.ring().equal(ours.at(a, b), fixture.at(a, b)) &&
                        !fixture.ring().equal(fixture.ring().neg(ours.at(a, b)), fixture.at(a, b)))
                        ++diff;
            rep.detail = diff ? std::to_string(diff) + " entries differ beyond sign" : "sign pattern admits no diagonal gauge";
        }
        return rep;
    }
    if (rep.kind == "transition") {
        std::vector<Matrix> qs;
        for (const auto& spec : j.at("diagonalizes"))
            qs.push_back(restrict_to(generator_matrix(Ring::integers(), sys, spec), idx).change_ring(fixture.ring()));
        std::string mode;
        rep.pass = transition_diagonalizes(fixture, qs, rep.gauge, mode);
        rep.detail = rep.pass ? "eigenvectors along " + mode
                              : "no diagonal +-1 gauge makes the rows or columns common eigenvectors";
        return rep;
    }
    throw std::invalid_argument(id + ": unknown fixture kind '" + rep.kind + "'");
}

}  // namespace chevkit
