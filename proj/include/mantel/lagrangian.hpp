#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>

#include "mantel/rgraph.hpp"

namespace mantel {

// Nonnegative weights summing to 1 (within tol) over the vertex set.
class SimplexVector {
public:
    SimplexVector() = default;  // dimension-zero placeholder
    explicit SimplexVector(std::vector<double> x, double tol = 1e-12);

    // Scales a nonnegative vector with positive sum onto the simplex.
    static SimplexVector normalized(std::vector<double> x);
    static SimplexVector uniform(int n);
    // Mass 1/|support| on each listed vertex, zero elsewhere.
    static SimplexVector uniform_on(int n, const std::vector<Vertex>& support);

    const std::vector<double>& values() const { return x_; }
    int dim() const { return static_cast<int>(x_.size()); }
    double at(Vertex v) const { return x_[v - 1]; }

    std::vector<Vertex> support(double eps = 0.0) const;

private:
    std::vector<double> x_;
};

// Raw polynomial evaluation (no simplex constraint): sum over edges of the
// coordinate products. Compensated summation.
double eval_poly(const RGraph& h, std::span<const double> x);
std::vector<double> grad_poly(const RGraph& h, std::span<const double> x);

double eval_P(const RGraph& h, const SimplexVector& x);
std::vector<double> grad_P(const RGraph& h, const SimplexVector& x);

enum class MaxMode { Exact, Heuristic };

struct MaximizeConfig {
    MaxMode mode = MaxMode::Exact;
    int restarts = 50;
    int max_iter = 1000;
    double tol = 1e-9;
    std::uint64_t seed = 0x6d616e74656cULL;
    bool collect_candidates = false;  // keep per-restart maximizers in the result
};

struct Rational {
    long long num = 0;
    long long den = 1;
    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
};

struct OptResult {
    double value = 0.0;
    SimplexVector maximizer;
    std::vector<Vertex> support;        // trimmed support of the maximizer
    double kkt_residual = 0.0;          // max over support of |dP_j - r*value|
    double off_support_slack = 0.0;     // min over non-support of (r*value - dP_j)
    bool certified = false;
    int restarts_used = 0;
    int nonconverged_supports = 0;
    // Exact rational value when the maximizer is uniform on its support.
    std::optional<Rational> exact_value;
    // Populated when collect_candidates: (value, point) per restart.
    std::vector<std::pair<double, SimplexVector>> candidates;
};

// Exact mode: enumerate candidate supports (n <= 14), solve the stationarity
// system dP_j = c on each by damped Newton from the uniform start, keep
// feasible stationary points, and also run the heuristic restarts; the best
// point wins, ties broken by lexicographically smallest support. The result
// is certified when every support solve converged and no restart beat the
// enumeration. Inputs with n > 14 fall back to the heuristic path and are
// reported uncertified. Heuristic mode: projected gradient ascent with
// Newton polish from seeded random starts.
OptResult maximize(const RGraph& h, const MaximizeConfig& cfg = {});

struct KktReport {
    double residual = 0.0;
    double off_support_slack = 0.0;
    bool passes = false;
};

// Lagrange-multiplier condition at x: support partials equal r*P(x) within
// tol and off-support partials do not exceed it.
KktReport kkt_check(const RGraph& h, const SimplexVector& x, double tol = 1e-9);

enum class StructureVerdict { Pass, Fail, NotApplicable };

struct OptStructureReport {
    StructureVerdict verdict = StructureVerdict::NotApplicable;
    std::string detail;
};

// For 2-covered T_r-free inputs: the optimum has support equal to an edge,
// all weights 1/r, and value 1/r^r. Other inputs get NotApplicable.
OptStructureReport check_opt_structure(const RGraph& h, const OptResult& res, double tol = 1e-7);

struct SuperadditiveReport {
    bool hypothesis_holds = false;
    double product = 0.0;
    double bound = 0.0;  // r!/r^r
    bool bound_ok = false;
    bool equality_case = false;  // x_i = i/r
};

// Checks 0 <= x_1 <= ... <= x_r = 1 and x_i + x_j <= x_{i+j}; under the
// hypothesis the product is at most r!/r^r with equality iff x_i = i/r.
SuperadditiveReport superadditive_product_bound(const std::vector<double>& xs);

struct MaclaurinReport {
    double esp_value = 0.0;
    double bound = 0.0;  // C(m,k)/m^k
    bool ok = false;
};

// Elementary symmetric polynomial bound e_k(x) <= C(m,k)/m^k on the simplex.
MaclaurinReport maclaurin_bound(const SimplexVector& x, int k);

}  // namespace mantel
