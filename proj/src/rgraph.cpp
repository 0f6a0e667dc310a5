#include "mantel/rgraph.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "mantel/util.hpp"

namespace mantel {

RGraph::RGraph(int n, int r, std::vector<Edge> edges) : n_(n), r_(r) {
    if (n < 0) throw std::invalid_argument("vertex count must be nonnegative");
    if (r < 1) throw std::invalid_argument("uniformity must be at least 1");
    for (Edge& e : edges) {
        if (static_cast<int>(e.size()) != r) {
            throw std::invalid_argument("edge arity does not match uniformity");
        }
        std::sort(e.begin(), e.end());
        if (std::adjacent_find(e.begin(), e.end()) != e.end()) {
            throw std::invalid_argument("edge has a repeated vertex");
        }
        if (e.front() < 1 || e.back() > n) {
            throw std::invalid_argument("edge vertex out of range 1..n");
        }
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    edges_ = std::move(edges);

    degrees_.assign(n + 1, 0);
    for (const Edge& e : edges_) {
        for (Vertex v : e) ++degrees_[v];
    }
}

RGraph RGraph::complete(int n, int r) {
    if (n < r) throw std::invalid_argument("complete r-graph needs n >= r");
    std::vector<Edge> es;
    for_each_combination(n, r, [&](const std::vector<int>& c) {
        Edge e(c.size());
        for (std::size_t i = 0; i < c.size(); ++i) e[i] = c[i] + 1;
        es.push_back(std::move(e));
    });
    return RGraph(n, r, std::move(es));
}

int RGraph::degree(Vertex v) const {
    if (v < 1 || v > n_) throw std::invalid_argument("vertex out of range");
    return degrees_[v];
}

bool RGraph::has_edge(const Edge& sorted_edge) const {
    return std::binary_search(edges_.begin(), edges_.end(), sorted_edge);
}

RGraph link(const RGraph& h, Vertex v) {
    if (v < 1 || v > h.n()) throw std::invalid_argument("vertex out of range");
    if (h.r() < 2) throw std::invalid_argument("link needs uniformity >= 2");
    std::vector<Edge> es;
    for (const Edge& e : h.edges()) {
        if (!std::binary_search(e.begin(), e.end(), v)) continue;
        Edge f;
        f.reserve(e.size() - 1);
        for (Vertex u : e) {
            if (u != v) f.push_back(u);
        }
        es.push_back(std::move(f));
    }
    return RGraph(h.n(), h.r() - 1, std::move(es));
}

RGraph shadow(const RGraph& h, int level) {
    if (level < 1 || level > h.r() - 1) {
        throw std::invalid_argument("shadow level must be in 1..r-1");
    }
    int k = h.r() - level;
    std::set<Edge> subs;
    for (const Edge& e : h.edges()) {
        for_each_combination(h.r(), k, [&](const std::vector<int>& c) {
            Edge f(k);
            for (int i = 0; i < k; ++i) f[i] = e[c[i]];
            subs.insert(std::move(f));
        });
    }
    return RGraph(h.n(), k, std::vector<Edge>(subs.begin(), subs.end()));
}

RGraph remove_vertex(const RGraph& h, Vertex v) {
    if (v < 1 || v > h.n()) throw std::invalid_argument("vertex out of range");
    std::vector<Edge> es;
    for (const Edge& e : h.edges()) {
        if (std::binary_search(e.begin(), e.end(), v)) continue;
        Edge f(e);
        for (Vertex& u : f) {
            if (u > v) --u;
        }
        es.push_back(std::move(f));
    }
    return RGraph(h.n() - 1, h.r(), std::move(es));
}

RGraph blowup(const RGraph& g, const std::vector<int>& sizes) {
    if (static_cast<int>(sizes.size()) != g.n()) {
        throw std::invalid_argument("sizes length must equal vertex count");
    }
    for (int s : sizes) {
        if (s < 0) throw std::invalid_argument("class sizes must be nonnegative");
    }
    std::vector<int> base(g.n() + 1, 0);
    for (int i = 1; i <= g.n(); ++i) base[i] = base[i - 1] + sizes[i - 1];
    int n = base[g.n()];

    std::vector<Edge> es;
    Edge cur(g.r());
    for (const Edge& e : g.edges()) {
        // cartesian product over the classes of e
        std::vector<int> pick(g.r(), 0);
        bool nonempty = true;
        for (int j = 0; j < g.r(); ++j) {
            if (sizes[e[j] - 1] == 0) nonempty = false;
        }
        if (!nonempty) continue;
        while (true) {
            for (int j = 0; j < g.r(); ++j) cur[j] = base[e[j] - 1] + pick[j] + 1;
            es.push_back(cur);
            int j = g.r() - 1;
            while (j >= 0 && pick[j] + 1 == sizes[e[j] - 1]) {
                pick[j] = 0;
                --j;
            }
            if (j < 0) break;
            ++pick[j];
        }
    }
    return RGraph(n, g.r(), std::move(es));
}

RGraph duplicate_vertex(const RGraph& h, Vertex v) {
    if (v < 1 || v > h.n()) throw std::invalid_argument("vertex out of range");
    std::vector<Edge> es = h.edges();
    Vertex fresh = h.n() + 1;
    for (const Edge& e : h.edges()) {
        if (!std::binary_search(e.begin(), e.end(), v)) continue;
        Edge f;
        f.reserve(e.size());
        for (Vertex u : e) {
            if (u != v) f.push_back(u);
        }
        f.push_back(fresh);
        es.push_back(std::move(f));
    }
    return RGraph(h.n() + 1, h.r(), std::move(es));
}

bool is_2_covered(const RGraph& h) {
    int n = h.n();
    if (n < 2) return true;
    std::vector<char> covered(static_cast<std::size_t>(n) * n, 0);
    for (const Edge& e : h.edges()) {
        for (std::size_t a = 0; a < e.size(); ++a) {
            for (std::size_t b = a + 1; b < e.size(); ++b) {
                covered[static_cast<std::size_t>(e[a] - 1) * n + (e[b] - 1)] = 1;
            }
        }
    }
    for (int u = 1; u <= n; ++u) {
        for (int w = u + 1; w <= n; ++w) {
            if (!covered[static_cast<std::size_t>(u - 1) * n + (w - 1)]) return false;
        }
    }
    return true;
}

bool is_partial_steiner(const RGraph& h) {
    std::set<Edge> seen;
    for (const Edge& e : h.edges()) {
        bool dup = false;
        for_each_combination(h.r(), h.r() - 1, [&](const std::vector<int>& c) {
            Edge f(h.r() - 1);
            for (int i = 0; i < h.r() - 1; ++i) f[i] = e[c[i]];
            if (!seen.insert(std::move(f)).second) dup = true;
        });
        if (dup) return false;
    }
    return true;
}

DegreeProfile degree_profile(const RGraph& h) {
    DegreeProfile p;
    if (h.n() == 0) return p;
    p.min = h.degree(1);
    p.max = h.degree(1);
    for (Vertex v = 2; v <= h.n(); ++v) {
        p.min = std::min(p.min, h.degree(v));
        p.max = std::max(p.max, h.degree(v));
    }
    long long num = static_cast<long long>(h.r()) * static_cast<long long>(h.size());
    long long den = h.n();
    long long g = std::gcd(num, den);
    p.avg_num = num / g;
    p.avg_den = den / g;
    return p;
}

RGraph drop_isolated(const RGraph& h) {
    std::vector<int> relabel(h.n() + 1, 0);
    int next = 0;
    for (Vertex v = 1; v <= h.n(); ++v) {
        if (h.degree(v) > 0) relabel[v] = ++next;
    }
    std::vector<Edge> es;
    es.reserve(h.size());
    for (const Edge& e : h.edges()) {
        Edge f(e);
        for (Vertex& u : f) u = relabel[u];
        es.push_back(std::move(f));
    }
    return RGraph(next, h.r(), std::move(es));
}

RGraph parse_hg(std::istream& in) {
    std::string line;
    int r = 0, n = 0;
    bool header = false;
    std::vector<Edge> edges;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '#') continue;
        std::istringstream ls(line);
        if (!header) {
            if (!(ls >> r >> n)) {
                throw std::runtime_error("hg parse: malformed header, expected 'r n'");
            }
            header = true;
            continue;
        }
        Edge e;
        int v;
        while (ls >> v) e.push_back(v);
        if (static_cast<int>(e.size()) != r) {
            throw std::runtime_error("hg parse: line " + std::to_string(lineno) +
                                     " has " + std::to_string(e.size()) +
                                     " vertices, expected " + std::to_string(r));
        }
        edges.push_back(std::move(e));
    }
    if (!header) throw std::runtime_error("hg parse: missing header");
    try {
        return RGraph(n, r, std::move(edges));
    } catch (const std::invalid_argument& ex) {
        throw std::runtime_error(std::string("hg parse: ") + ex.what());
    }
}

RGraph parse_hg_string(const std::string& text) {
    std::istringstream in(text);
    return parse_hg(in);
}

RGraph load_hg(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return parse_hg(in);
}

std::string to_hg(const RGraph& h) {
    std::ostringstream out;
    out << h.r() << ' ' << h.n() << '\n';
    for (const Edge& e : h.edges()) {
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (i) out << ' ';
            out << e[i];
        }
        out << '\n';
    }
    return out.str();
}

void save_hg(const RGraph& h, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << to_hg(h);
}

}  // namespace mantel
