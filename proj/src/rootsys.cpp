#include "chevkit/rootsys.hpp"

#include <algorithm>
#include <cctype>
#include <memory>
#include <mutex>
#include <sstream>

namespace chevkit {

int dot2(const Coords2& a, const Coords2& b) {
    int s = 0;
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Family parse_family(char c) {
    switch (c) {
        case 'A': case 'a': return Family::A;
        case 'D': case 'd': return Family::D;
        case 'E': case 'e': return Family::E;
    }
    throw UnsupportedSystem(std::string("unknown family ") + c);
}

namespace {

Coords2 unit_diff(int d, int i, int si, int j, int sj) {
    Coords2 v(d, 0);
    v[i] += 2 * si;
    v[j] += 2 * sj;
    return v;
}

std::vector<Coords2> simple_roots(Family f, int l) {
    std::vector<Coords2> s;
    switch (f) {
        case Family::A:
            for (int i = 0; i < l; ++i) s.push_back(unit_diff(l + 1, i, 1, i + 1, -1));
            break;
        case Family::D:
            for (int i = 0; i + 1 < l; ++i) s.push_back(unit_diff(l, i, 1, i + 1, -1));
            s.push_back(unit_diff(l, l - 2, 1, l - 1, 1));
            break;
        case Family::E: {
            s.push_back({1, -1, -1, -1, -1, -1, -1, 1});
            s.push_back(unit_diff(8, 0, 1, 1, 1));
            for (int i = 1; i <= 6; ++i) s.push_back(unit_diff(8, i, 1, i - 1, -1));
            s.resize(l);
            break;
        }
    }
    return s;
}

}  // namespace

RootSystem::RootSystem(Family f, int rank) : family_(f), rank_(rank) {
    bool ok = (f == Family::A && rank >= 2) || (f == Family::D && rank >= 4) || (f == Family::E && rank >= 6 && rank <= 8);
    if (!ok) throw UnsupportedSystem("unsupported root system " + std::string(1, "ADE"[static_cast<int>(f)]) + std::to_string(rank));
    const auto simples = simple_roots(f, rank);
    ambient_ = static_cast<int>(simples[0].size());

    // Positive roots by breadth-first extension along simple roots.
    std::map<Coords2, std::vector<int>> pos;
    std::vector<Coords2> frontier;
    for (int i = 0; i < rank; ++i) {
        std::vector<int> c(rank, 0);
        c[i] = 1;
        pos[simples[i]] = c;
        frontier.push_back(simples[i]);
    }
    while (!frontier.empty()) {
        std::vector<Coords2> next;
        for (const auto& r : frontier) {
            for (int i = 0; i < rank; ++i) {
                if (dot2(r, simples[i]) != -4) continue;
                Coords2 q(r.size());
                for (size_t k = 0; k < r.size(); ++k) q[k] = r[k] + simples[i][k];
                if (pos.count(q)) continue;
                auto c = pos[r];
                c[i] += 1;
                pos[q] = c;
                next.push_back(q);
            }
        }
        frontier.swap(next);
    }
    std::vector<Coords2> order;
    for (const auto& [r, c] : pos) order.push_back(r);
    std::sort(order.begin(), order.end(), [&](const Coords2& a, const Coords2& b) {
        int ha = 0, hb = 0;
        for (int x : pos[a]) ha += x;
        for (int x : pos[b]) hb += x;
        if (ha != hb) return ha < hb;
        return a > b;
    });
    for (const auto& r : order) {
        Coords2 nr(r.size());
        for (size_t k = 0; k < r.size(); ++k) nr[k] = -r[k];
        std::vector<int> c = pos[r], nc(c.size());
        for (size_t k = 0; k < c.size(); ++k) nc[k] = -c[k];
        roots_.push_back(r);
        coef_.push_back(c);
        roots_.push_back(nr);
        coef_.push_back(nc);
    }
    const int nr = num_roots();
    for (int i = 0; i < nr; ++i) index_[roots_[i]] = i;
    for (const auto& s : simples) simple_.push_back(index_.at(s));
    pair_.assign(nr * nr, 0);
    sum_.assign(nr * nr, -1);
    for (int a = 0; a < nr; ++a)
        for (int b = 0; b < nr; ++b) {
            pair_[a * nr + b] = dot2(roots_[a], roots_[b]) / 4;
            if (pair_[a * nr + b] == -1) {
                Coords2 q(ambient_);
                for (int k = 0; k < ambient_; ++k) q[k] = roots_[a][k] + roots_[b][k];
                sum_[a * nr + b] = index_.at(q);
            }
        }
}

const RootSystem& RootSystem::get(Family f, int rank) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::unique_ptr<RootSystem>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(static_cast<int>(f), rank);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, std::unique_ptr<RootSystem>(new RootSystem(f, rank))).first;
    return *it->second;
}

const RootSystem& RootSystem::parse(const std::string& name) {
    if (name.size() < 2) throw UnsupportedSystem("bad system name '" + name + "'");
    Family f = parse_family(name[0]);
    int rank = 0;
    try {
        size_t used = 0;
        rank = std::stoi(name.substr(1), &used);
        if (used != name.size() - 1) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
        throw UnsupportedSystem("bad system name '" + name + "'");
    }
    return get(f, rank);
}

std::string RootSystem::name() const { return std::string(1, "ADE"[static_cast<int>(family_)]) + std::to_string(rank_); }

std::optional<int> RootSystem::index_of(const Coords2& c) const {
    auto it = index_.find(c);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::optional<int> RootSystem::sum(int a, int b) const {
    int s = sum_[a * num_roots() + b];
    if (s < 0) return std::nullopt;
    return s;
}

int RootSystem::height(int i) const {
    int h = 0;
    for (int x : coef_[i]) h += x;
    return h;
}

Coords2 RootSystem::reflect(const Coords2& beta, int alpha) const {
    const Coords2& a = roots_[alpha];
    int p = dot2(beta, a) / 4;
    Coords2 r(beta.size());
    for (size_t k = 0; k < beta.size(); ++k) r[k] = beta[k] - p * a[k];
    return r;
}

std::string RootSystem::root_name(int i) const {
    const Coords2& r = roots_[i];
    std::ostringstream os;
    if (r[0] % 2 != 0) {
        os << "1/2(";
        for (int x : r) os << (x > 0 ? '+' : '-');
        os << ")";
        return os.str();
    }
    for (int k = 0; k < ambient_; ++k) {
        if (r[k] == 0) continue;
        os << (r[k] > 0 ? (os.tellp() == 0 ? "" : "+") : "-") << "e" << k + 1;
    }
    return os.str();
}

std::string RootSystem::basis_label(int k) const {
    if (k < num_roots()) return "x[" + root_name(k) + "]";
    return "h" + std::to_string(k - num_roots() + 1);
}

int RootSystem::parse_root(const std::string& text) const {
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    Coords2 v(ambient_, 0);
    auto fail = [&]() -> int { throw std::invalid_argument("cannot parse root '" + text + "' in " + name()); };
    if (s.rfind("1/2(", 0) == 0) {
        if (s.size() != 5 + static_cast<size_t>(ambient_) || s.back() != ')') fail();
        for (int k = 0; k < ambient_; ++k) {
            char c = s[4 + k];
            if (c != '+' && c != '-') fail();
            v[k] = c == '+' ? 1 : -1;
        }
    } else if (s.rfind("a", 0) == 0) {
        // simple root by label a1..al
        int k = 0;
        try {
            k = std::stoi(s.substr(1));
        } catch (const std::exception&) {
            fail();
        }
        if (k < 1 || k > rank_) fail();
        return simple_root(k);
    } else {
        size_t i = 0;
        while (i < s.size()) {
            int sign = 1;
            if (s[i] == '+' || s[i] == '-') sign = s[i++] == '-' ? -1 : 1;
            if (i >= s.size() || s[i] != 'e') fail();
            ++i;
            size_t st = i;
            while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
            if (st == i) fail();
            int k = std::stoi(s.substr(st, i - st));
            if (k < 1 || k > ambient_) fail();
            v[k - 1] += 2 * sign;
        }
    }
    auto idx = index_of(v);
    if (!idx) fail();
    return *idx;
}

std::optional<int> RootSystem::connector(int a, int b) const {
    for (int r = 0; r < num_roots(); r += 2)
        if (pairing(r, a) == -1 && pairing(r, b) == -1) return r;
    for (int r = 1; r < num_roots(); r += 2)
        if (pairing(r, a) == -1 && pairing(r, b) == -1) return r;
    return std::nullopt;
}

int OrthogonalSequence::connector(int i, int j) const {
    auto it = connectors.find({std::min(i, j), std::max(i, j)});
    if (it == connectors.end()) throw std::out_of_range("no connector stored for pair");
    return it->second;
}

OrthogonalSequence RootSystem::orthogonal_sequence() const {
    OrthogonalSequence seq;
    std::vector<std::string> names;
    switch (family_) {
        case Family::A:
            for (int k = 1; k <= rank_; k += 2) seq.gammas.push_back(simple_root(k));
            break;
        case Family::D:
            for (int i = 1; 2 * i <= rank_; ++i) names.push_back("e" + std::to_string(2 * i - 1) + "-e" + std::to_string(2 * i));
            for (int i = 1; 2 * i <= rank_; ++i) names.push_back("e" + std::to_string(2 * i - 1) + "+e" + std::to_string(2 * i));
            break;
        case Family::E:
            if (rank_ == 6) names = {"e1-e2", "e3-e4", "e1+e2", "e3+e4"};
            if (rank_ == 7) names = {"e1-e2", "e3-e4", "e5-e6", "e7-e8", "e1+e2", "e3+e4", "e5+e6"};
            if (rank_ == 8)
                names = {"e1-e2", "e3-e4", "e5-e6", "e7-e8",
                         "1/2(++++----)", "1/2(++--++--)", "1/2(++----++)", "1/2(++++++++)"};
            break;
    }
    for (const auto& nm : names) seq.gammas.push_back(parse_root(nm));
    const int k = static_cast<int>(seq.gammas.size());
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            auto c = connector(seq.gammas[i], seq.gammas[j]);
            if (c) seq.connectors[{i, j}] = *c;
        }
    return seq;
}

}  // namespace chevkit
