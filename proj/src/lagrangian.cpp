#include "mantel/lagrangian.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>

#include "mantel/families.hpp"
#include "mantel/util.hpp"

namespace mantel {

SimplexVector::SimplexVector(std::vector<double> x, double tol) : x_(std::move(x)) {
    for (double v : x_) {
        if (!(v >= 0.0)) throw std::invalid_argument("simplex entries must be nonnegative");
    }
    if (!x_.empty()) {
        KahanSum s;
        for (double v : x_) s.add(v);
        if (std::abs(s.value() - 1.0) > tol) {
            throw std::invalid_argument("simplex entries must sum to 1");
        }
    }
}

SimplexVector SimplexVector::normalized(std::vector<double> x) {
    KahanSum s;
    for (double v : x) {
        if (!(v >= 0.0)) throw std::invalid_argument("simplex entries must be nonnegative");
        s.add(v);
    }
    if (!(s.value() > 0.0)) throw std::invalid_argument("cannot normalize a zero vector");
    for (double& v : x) v /= s.value();
    return SimplexVector(std::move(x), 1e-9);
}

SimplexVector SimplexVector::uniform(int n) {
    if (n < 1) throw std::invalid_argument("uniform simplex vector needs n >= 1");
    return SimplexVector(std::vector<double>(n, 1.0 / n), 1e-9);
}

SimplexVector SimplexVector::uniform_on(int n, const std::vector<Vertex>& support) {
    if (support.empty()) throw std::invalid_argument("support must be nonempty");
    std::vector<double> x(n, 0.0);
    for (Vertex v : support) {
        if (v < 1 || v > n) throw std::invalid_argument("support vertex out of range");
        x[v - 1] = 1.0 / static_cast<double>(support.size());
    }
    return SimplexVector(std::move(x), 1e-9);
}

std::vector<Vertex> SimplexVector::support(double eps) const {
    std::vector<Vertex> s;
    for (int i = 0; i < dim(); ++i) {
        if (x_[i] > eps) s.push_back(i + 1);
    }
    return s;
}

double eval_poly(const RGraph& h, std::span<const double> x) {
    if (static_cast<int>(x.size()) != h.n()) throw std::invalid_argument("dimension mismatch");
    KahanSum s;
    for (const Edge& e : h.edges()) {
        double p = 1.0;
        for (Vertex v : e) p *= x[v - 1];
        s.add(p);
    }
    return s.value();
}

std::vector<double> grad_poly(const RGraph& h, std::span<const double> x) {
    if (static_cast<int>(x.size()) != h.n()) throw std::invalid_argument("dimension mismatch");
    std::vector<KahanSum> g(h.n());
    int r = h.r();
    std::vector<double> pre(r + 1), suf(r + 1);
    for (const Edge& e : h.edges()) {
        pre[0] = 1.0;
        for (int j = 0; j < r; ++j) pre[j + 1] = pre[j] * x[e[j] - 1];
        suf[r] = 1.0;
        for (int j = r - 1; j >= 0; --j) suf[j] = suf[j + 1] * x[e[j] - 1];
        for (int j = 0; j < r; ++j) g[e[j] - 1].add(pre[j] * suf[j + 1]);
    }
    std::vector<double> out(h.n());
    for (int i = 0; i < h.n(); ++i) out[i] = g[i].value();
    return out;
}

double eval_P(const RGraph& h, const SimplexVector& x) { return eval_poly(h, x.values()); }

std::vector<double> grad_P(const RGraph& h, const SimplexVector& x) {
    return grad_poly(h, x.values());
}

namespace {

constexpr double kTieEps = 1e-12;
constexpr double kSupportEps = 1e-9;

// Euclidean projection onto the simplex (sort-based).
std::vector<double> project_simplex(std::vector<double> y) {
    std::vector<double> u(y);
    std::sort(u.begin(), u.end(), std::greater<double>());
    double css = 0.0, theta = 0.0;
    int rho = 0;
    for (std::size_t j = 0; j < u.size(); ++j) {
        css += u[j];
        double t = (css - 1.0) / static_cast<double>(j + 1);
        if (u[j] - t > 0) {
            rho = static_cast<int>(j + 1);
            theta = t;
        }
    }
    (void)rho;
    for (double& v : y) v = std::max(v - theta, 0.0);
    return y;
}

// Partial-pivot LU solve with a Levenberg bump on near-singular pivots, so
// supports with a continuum of stationary points still make progress.
bool solve_linear(std::vector<double>& a, std::vector<double>& rhs, int m) {
    for (int k = 0; k < m; ++k) {
        int piv = k;
        for (int i = k + 1; i < m; ++i) {
            if (std::abs(a[i * m + k]) > std::abs(a[piv * m + k])) piv = i;
        }
        if (std::abs(a[piv * m + k]) < 1e-13) {
            a[k * m + k] += 1e-9;
            piv = k;
        }
        if (piv != k) {
            for (int j = 0; j < m; ++j) std::swap(a[k * m + j], a[piv * m + j]);
            std::swap(rhs[k], rhs[piv]);
        }
        double d = a[k * m + k];
        if (d == 0.0) return false;
        for (int i = k + 1; i < m; ++i) {
            double f = a[i * m + k] / d;
            if (f == 0.0) continue;
            for (int j = k; j < m; ++j) a[i * m + j] -= f * a[k * m + j];
            rhs[i] -= f * rhs[k];
        }
    }
    for (int k = m - 1; k >= 0; --k) {
        double s = rhs[k];
        for (int j = k + 1; j < m; ++j) s -= a[k * m + j] * rhs[j];
        rhs[k] = s / a[k * m + k];
    }
    return true;
}

struct SupportProblem {
    int r = 0;
    std::vector<Vertex> verts;             // sorted support
    std::vector<std::vector<int>> edges;   // local vertex indices per edge
};

double sp_eval(const SupportProblem& sp, const std::vector<double>& x) {
    KahanSum s;
    for (const auto& e : sp.edges) {
        double p = 1.0;
        for (int j : e) p *= x[j];
        s.add(p);
    }
    return s.value();
}

std::vector<double> sp_grad(const SupportProblem& sp, const std::vector<double>& x) {
    int m = static_cast<int>(sp.verts.size());
    std::vector<double> g(m, 0.0);
    std::vector<double> pre(sp.r + 1), suf(sp.r + 1);
    for (const auto& e : sp.edges) {
        pre[0] = 1.0;
        for (int j = 0; j < sp.r; ++j) pre[j + 1] = pre[j] * x[e[j]];
        suf[sp.r] = 1.0;
        for (int j = sp.r - 1; j >= 0; --j) suf[j] = suf[j + 1] * x[e[j]];
        for (int j = 0; j < sp.r; ++j) g[e[j]] += pre[j] * suf[j + 1];
    }
    return g;
}

// Hessian of the restricted polynomial; diagonal is zero (multilinearity).
std::vector<double> sp_hessian(const SupportProblem& sp, const std::vector<double>& x) {
    int m = static_cast<int>(sp.verts.size());
    std::vector<double> hess(static_cast<std::size_t>(m) * m, 0.0);
    for (const auto& e : sp.edges) {
        for (int a = 0; a < sp.r; ++a) {
            for (int b = a + 1; b < sp.r; ++b) {
                double p = 1.0;
                for (int j = 0; j < sp.r; ++j) {
                    if (j != a && j != b) p *= x[e[j]];
                }
                hess[static_cast<std::size_t>(e[a]) * m + e[b]] += p;
                hess[static_cast<std::size_t>(e[b]) * m + e[a]] += p;
            }
        }
    }
    return hess;
}

struct NewtonOutcome {
    bool converged = false;
    bool interior = false;
    std::vector<double> x;  // local coordinates on the support
};

// Damped Newton (factor 0.5, <= 200 iterations) on the first-order system
// dP_j = c for j in the support, sum x_j = 1.
NewtonOutcome newton_on_support(const SupportProblem& sp, std::vector<double> x) {
    int m = static_cast<int>(sp.verts.size());
    double c = static_cast<double>(sp.r) * sp_eval(sp, x);
    NewtonOutcome out;
    for (int it = 0; it < 200; ++it) {
        std::vector<double> g = sp_grad(sp, x);
        std::vector<double> f(m + 1);
        double fmax = 0.0;
        double xsum = 0.0;
        for (int j = 0; j < m; ++j) {
            f[j] = g[j] - c;
            fmax = std::max(fmax, std::abs(f[j]));
            xsum += x[j];
        }
        f[m] = xsum - 1.0;
        fmax = std::max(fmax, std::abs(f[m]));
        if (fmax <= 1e-12 * std::max(1.0, std::abs(c))) {
            out.converged = true;
            break;
        }
        std::vector<double> hess = sp_hessian(sp, x);
        int dim = m + 1;
        std::vector<double> jac(static_cast<std::size_t>(dim) * dim, 0.0);
        for (int a = 0; a < m; ++a) {
            for (int b = 0; b < m; ++b) jac[static_cast<std::size_t>(a) * dim + b] = hess[static_cast<std::size_t>(a) * m + b];
            jac[static_cast<std::size_t>(a) * dim + m] = -1.0;
            jac[static_cast<std::size_t>(m) * dim + a] = 1.0;
        }
        std::vector<double> rhs(dim);
        for (int j = 0; j < dim; ++j) rhs[j] = -f[j];
        if (!solve_linear(jac, rhs, dim)) return out;
        for (int j = 0; j < m; ++j) x[j] += 0.5 * rhs[j];
        c += 0.5 * rhs[m];
        if (!std::isfinite(c)) return out;
    }
    if (!out.converged) return out;
    out.interior = true;
    for (double v : x) {
        if (!(v > 1e-10)) out.interior = false;
    }
    out.x = std::move(x);
    return out;
}

std::vector<double> pg_on_support(const SupportProblem& sp, std::vector<double> x, int iters) {
    double step = 0.1;
    double best = sp_eval(sp, x);
    for (int it = 0; it < iters; ++it) {
        std::vector<double> g = sp_grad(sp, x);
        std::vector<double> y(x.size());
        for (std::size_t j = 0; j < x.size(); ++j) y[j] = x[j] + step * g[j];
        y = project_simplex(std::move(y));
        double v = sp_eval(sp, y);
        if (v > best + 1e-18) {
            x = std::move(y);
            best = v;
            step = std::min(step * 1.25, 1e3);
        } else {
            step *= 0.5;
            if (step < 1e-14) break;
        }
    }
    return x;
}

struct Best {
    double value = -1.0;
    std::vector<double> x;
    std::vector<Vertex> support;
    bool any = false;
};

void consider(Best& best, const RGraph& h, const std::vector<double>& raw) {
    std::vector<double> x(raw);
    double mass = 0.0;
    for (double& v : x) {
        if (v <= kSupportEps) v = 0.0;
        mass += v;
    }
    if (!(mass > 0.0)) return;
    for (double& v : x) v /= mass;
    double value = eval_poly(h, x);
    std::vector<Vertex> supp;
    for (int j = 0; j < h.n(); ++j) {
        if (x[j] > 0.0) supp.push_back(j + 1);
    }
    if (!best.any || value > best.value + kTieEps) {
        best = {value, std::move(x), std::move(supp), true};
    } else if (value >= best.value - kTieEps && supp < best.support) {
        best = {std::max(value, best.value), std::move(x), std::move(supp), true};
    }
}

SupportProblem make_problem(const RGraph& h, const std::vector<Vertex>& verts) {
    SupportProblem sp;
    sp.r = h.r();
    sp.verts = verts;
    std::vector<int> local(h.n() + 1, -1);
    for (std::size_t j = 0; j < verts.size(); ++j) local[verts[j]] = static_cast<int>(j);
    for (const Edge& e : h.edges()) {
        std::vector<int> le;
        bool inside = true;
        for (Vertex v : e) {
            if (local[v] < 0) {
                inside = false;
                break;
            }
            le.push_back(local[v]);
        }
        if (inside) sp.edges.push_back(std::move(le));
    }
    return sp;
}

std::vector<double> expand(const RGraph& h, const SupportProblem& sp, const std::vector<double>& local) {
    std::vector<double> full(h.n(), 0.0);
    for (std::size_t j = 0; j < sp.verts.size(); ++j) full[sp.verts[j] - 1] = local[j];
    return full;
}

}  // namespace

OptResult maximize(const RGraph& h, const MaximizeConfig& cfg) {
    OptResult res{.value = 0.0,
                  .maximizer = SimplexVector(std::vector<double>{}, 1.0),
                  .support = {},
                  .kkt_residual = 0.0,
                  .off_support_slack = std::numeric_limits<double>::infinity(),
                  .certified = false,
                  .restarts_used = 0,
                  .nonconverged_supports = 0,
                  .exact_value = std::nullopt,
                  .candidates = {}};
    if (h.size() == 0) {
        // empty graph: the polynomial is identically zero
        if (h.n() > 0) res.maximizer = SimplexVector::uniform(h.n());
        res.certified = true;
        res.exact_value = Rational{0, 1};
        return res;
    }

    const bool exact_feasible = h.n() <= 14;
    const bool run_exact = cfg.mode == MaxMode::Exact && exact_feasible;

    Best best;
    // deterministic floor: uniform mass on the first edge
    consider(best, h, SimplexVector::uniform_on(h.n(), h.edges().front()).values());

    int nonconverged = 0;
    double enum_best = best.value;
    if (run_exact) {
        int n = h.n();
        std::vector<std::uint32_t> emasks;
        for (const Edge& e : h.edges()) {
            std::uint32_t m = 0;
            for (Vertex v : e) m |= std::uint32_t(1) << (v - 1);
            emasks.push_back(m);
        }
        for (std::uint32_t mask = 1; mask < (std::uint32_t(1) << n); ++mask) {
            std::uint32_t covered = 0;
            bool has_edge = false;
            for (std::uint32_t em : emasks) {
                if ((em & ~mask) == 0) {
                    covered |= em;
                    has_edge = true;
                }
            }
            // a support vertex lying in no internal edge forces c = 0 there,
            // so such supports only carry value-0 stationary points
            if (!has_edge || covered != mask) continue;

            std::vector<Vertex> verts;
            for (int v = 1; v <= n; ++v) {
                if (mask >> (v - 1) & 1) verts.push_back(v);
            }
            SupportProblem sp = make_problem(h, verts);
            std::vector<double> start(verts.size(), 1.0 / static_cast<double>(verts.size()));
            NewtonOutcome nt = newton_on_support(sp, start);
            if (nt.converged) {
                if (nt.interior) {
                    auto full = expand(h, sp, nt.x);
                    consider(best, h, full);
                    enum_best = std::max(enum_best, eval_poly(h, full));
                }
                continue;  // boundary solutions belong to a smaller support
            }
            // fallback: ascend on the face first, then polish
            std::vector<double> y = pg_on_support(sp, start, 500);
            bool boundary = false;
            for (double v : y) {
                if (v <= 1e-8) boundary = true;
            }
            if (boundary) continue;
            NewtonOutcome nt2 = newton_on_support(sp, y);
            if (nt2.converged && nt2.interior) {
                auto full = expand(h, sp, nt2.x);
                consider(best, h, full);
                enum_best = std::max(enum_best, eval_poly(h, full));
            } else {
                ++nonconverged;
            }
        }
    }

    // heuristic restarts (also run in exact mode; see certification below)
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double restart_best = -1.0;
    for (int t = 0; t < cfg.restarts; ++t) {
        std::vector<double> x(h.n());
        for (double& v : x) v = -std::log(1.0 - unif(rng));
        double s = std::accumulate(x.begin(), x.end(), 0.0);
        for (double& v : x) v /= s;

        std::vector<Vertex> all(h.n());
        std::iota(all.begin(), all.end(), 1);
        SupportProblem full_sp = make_problem(h, all);
        x = pg_on_support(full_sp, x, cfg.max_iter);

        // polish on the trimmed support
        std::vector<Vertex> supp;
        for (int j = 0; j < h.n(); ++j) {
            if (x[j] > 1e-8) supp.push_back(j + 1);
        }
        if (!supp.empty()) {
            SupportProblem sp = make_problem(h, supp);
            std::vector<double> local(supp.size());
            double mass = 0.0;
            for (std::size_t j = 0; j < supp.size(); ++j) mass += x[supp[j] - 1];
            for (std::size_t j = 0; j < supp.size(); ++j) local[j] = x[supp[j] - 1] / mass;
            NewtonOutcome nt = newton_on_support(sp, local);
            if (nt.converged && nt.interior) {
                auto polished = expand(h, sp, nt.x);
                if (eval_poly(h, polished) >= eval_poly(h, x)) x = polished;
            }
        }
        double v = eval_poly(h, x);
        restart_best = std::max(restart_best, v);
        consider(best, h, x);
        if (cfg.collect_candidates) {
            res.candidates.emplace_back(v, SimplexVector(std::vector<double>(x), 1e-6));
        }
        ++res.restarts_used;
    }

    res.value = best.value;
    res.maximizer = SimplexVector(std::vector<double>(best.x), 1e-6);
    res.support = best.support;
    res.certified = run_exact && nonconverged == 0 && restart_best <= enum_best + kTieEps;
    res.nonconverged_supports = nonconverged;

    KktReport kkt = kkt_check(h, res.maximizer, cfg.tol);
    res.kkt_residual = kkt.residual;
    res.off_support_slack = kkt.off_support_slack;

    // uniform-on-support maximizers have an exact rational value
    if (!res.support.empty()) {
        double m = static_cast<double>(res.support.size());
        bool uni = true;
        for (Vertex v : res.support) {
            if (std::abs(res.maximizer.at(v) - 1.0 / m) > 1e-7) uni = false;
        }
        if (uni) {
            SupportProblem sp = make_problem(h, res.support);
            long long num = static_cast<long long>(sp.edges.size());
            long long den = ipow_checked(static_cast<long long>(res.support.size()), h.r());
            long long g = std::gcd(num, den);
            res.exact_value = Rational{num / g, den / g};
        }
    }
    return res;
}

KktReport kkt_check(const RGraph& h, const SimplexVector& x, double tol) {
    if (x.dim() != h.n()) throw std::invalid_argument("dimension mismatch");
    KktReport rep;
    double p = eval_P(h, x);
    std::vector<double> g = grad_P(h, x);
    double target = h.r() * p;
    rep.off_support_slack = std::numeric_limits<double>::infinity();
    for (int j = 0; j < h.n(); ++j) {
        if (x.values()[j] > 0.0) {
            rep.residual = std::max(rep.residual, std::abs(g[j] - target));
        } else {
            rep.off_support_slack = std::min(rep.off_support_slack, target - g[j]);
        }
    }
    rep.passes = rep.residual <= tol && rep.off_support_slack >= -tol;
    return rep;
}

OptStructureReport check_opt_structure(const RGraph& h, const OptResult& res, double tol) {
    OptStructureReport rep;
    if (h.size() == 0 || !is_2_covered(h) || !is_free(h, TrianglePattern::tfam()).free) {
        rep.verdict = StructureVerdict::NotApplicable;
        rep.detail = "input is not a nonempty 2-covered T_r-free graph";
        return rep;
    }
    int r = h.r();
    if (static_cast<int>(res.support.size()) != r) {
        rep.verdict = StructureVerdict::Fail;
        rep.detail = "support size differs from r";
        return rep;
    }
    Edge supp(res.support.begin(), res.support.end());
    if (!h.has_edge(supp)) {
        rep.verdict = StructureVerdict::Fail;
        rep.detail = "support is not an edge";
        return rep;
    }
    for (Vertex v : res.support) {
        if (std::abs(res.maximizer.at(v) - 1.0 / r) > tol) {
            rep.verdict = StructureVerdict::Fail;
            rep.detail = "support weight differs from 1/r";
            return rep;
        }
    }
    double lambda = std::pow(1.0 / r, r);
    if (std::abs(res.value - lambda) > tol) {
        rep.verdict = StructureVerdict::Fail;
        rep.detail = "value differs from 1/r^r";
        return rep;
    }
    rep.verdict = StructureVerdict::Pass;
    rep.detail = "support is an edge with uniform weights 1/r";
    return rep;
}

SuperadditiveReport superadditive_product_bound(const std::vector<double>& xs) {
    SuperadditiveReport rep;
    int r = static_cast<int>(xs.size());
    if (r < 1) return rep;
    rep.hypothesis_holds = true;
    if (!(xs[0] >= 0.0)) rep.hypothesis_holds = false;
    for (int k = 0; k + 1 < r; ++k) {
        if (xs[k] > xs[k + 1] + 1e-12) rep.hypothesis_holds = false;
    }
    if (std::abs(xs[r - 1] - 1.0) > 1e-12) rep.hypothesis_holds = false;
    for (int i = 1; i <= r; ++i) {
        for (int j = i; i + j <= r; ++j) {
            if (xs[i - 1] + xs[j - 1] > xs[i + j - 1] + 1e-12) rep.hypothesis_holds = false;
        }
    }
    rep.product = 1.0;
    for (double v : xs) rep.product *= v;
    double bound = 1.0;
    for (int i = 1; i <= r; ++i) bound *= static_cast<double>(i) / static_cast<double>(r);
    rep.bound = bound;
    rep.bound_ok = !rep.hypothesis_holds || rep.product <= bound + 1e-12;
    rep.equality_case = true;
    for (int i = 1; i <= r; ++i) {
        if (std::abs(xs[i - 1] - static_cast<double>(i) / r) > 1e-9) rep.equality_case = false;
    }
    return rep;
}

MaclaurinReport maclaurin_bound(const SimplexVector& x, int k) {
    int m = x.dim();
    if (k < 0 || k > m) throw std::invalid_argument("degree must be in 0..dim");
    std::vector<double> e(k + 1, 0.0);
    e[0] = 1.0;
    for (double v : x.values()) {
        for (int j = k; j >= 1; --j) e[j] += v * e[j - 1];
    }
    MaclaurinReport rep;
    rep.esp_value = e[k];
    rep.bound = static_cast<double>(binomial(m, k)) / std::pow(static_cast<double>(m), k);
    rep.ok = rep.esp_value <= rep.bound + 1e-12;
    return rep;
}

}  // namespace mantel
