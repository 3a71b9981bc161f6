#include "trunclap/eigensolver.hpp"

#include "trunclap/operator.hpp"

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace trunclap {

namespace {

using SpMat = Eigen::SparseMatrix<double, Eigen::ColMajor, int>;
using LU = Eigen::SparseLU<SpMat, Eigen::COLAMDOrdering<int>>;

constexpr double kPi = std::numbers::pi;

std::string describe_bracket(Bracket b) {
    std::ostringstream s;
    s.precision(10);
    s << " (last bracket [" << b.low << ", " << b.high << "])";
    return s.str();
}

double sup_norm(std::span<const double> x) {
    double m = 0.0;
    for (double v : x) m = std::max(m, std::abs(v));
    return m;
}

// Positive start vanishing one lattice step outside the extreme interior
// nodes: product of distances to the sides of that box.
std::vector<double> initial_field(const Grid2& grid) {
    const std::size_t n = grid.interior_count();
    int i0 = std::numeric_limits<int>::max(), i1 = std::numeric_limits<int>::min();
    int j0 = i0, j1 = i1;
    for (std::size_t k = 0; k < n; ++k) {
        const LatticeNode p = grid.node(k);
        i0 = std::min(i0, p.i);
        i1 = std::max(i1, p.i);
        j0 = std::min(j0, p.j);
        j1 = std::max(j1, p.j);
    }
    std::vector<double> u(n);
    for (std::size_t k = 0; k < n; ++k) {
        const LatticeNode p = grid.node(k);
        u[k] = double(p.i - i0 + 1) * double(i1 + 1 - p.i) * double(p.j - j0 + 1) * double(j1 + 1 - p.j);
    }
    const double m = sup_norm(u);
    for (double& x : u) x /= m;
    return u;
}

// Howard iteration for  min_e (-D_e v) - sigma v = f,  all in lattice units.
// Each step freezes one direction per node, solves the sparse linear system
// and switches nodes whose best direction beats the frozen one by more than
// the tolerance. The factorization is reused while policy and shift repeat.
class PolicySolver {
public:
    explicit PolicySolver(const Grid2& grid) : grid_(grid), n_(grid.interior_count()), K_(grid.stencil().size()) {
        policy_.assign(n_, 0);
    }

    void set_policy_from(std::span<const double> u) {
        std::vector<double> scratch(n_);
        detail::apply_lattice(grid_, u, scratch, policy_);
    }

    long steps() const { return steps_; }

    // Returns false when the frozen system cannot be factorized.
    bool solve(std::span<const double> f, double sigma, double tol, long max_steps, std::vector<double>& v) {
        const double fnorm = sup_norm(f);
        Eigen::Map<const Eigen::VectorXd> rhs(f.data(), static_cast<Eigen::Index>(n_));
        v.resize(n_);
        for (long step = 0;; ++step) {
            if (step >= max_steps)
                throw SolverError(SolverError::Kind::InnerStalled,
                                  "inner solver stalled: policy iteration did not settle within " +
                                      std::to_string(max_steps) + " steps");
            if (!factorized(sigma) && !factor(sigma)) return false;
            Eigen::VectorXd x = lu_->solve(rhs);
            if (lu_->info() != Eigen::Success) return false;
            ++steps_;
            for (std::size_t k = 0; k < n_; ++k) v[k] = x[static_cast<Eigen::Index>(k)];
            for (double y : v)
                if (!std::isfinite(y)) return false;

            const double threshold = tol * (fnorm + std::abs(sigma) * sup_norm(v));
            bool changed = false;
            for (std::size_t k = 0; k < n_; ++k) {
                const double current = detail::lattice_second_difference(v, k, grid_.arm(k, policy_[k]));
                double best = -std::numeric_limits<double>::infinity();
                std::uint16_t best_d = 0;
                for (std::size_t d = 0; d < K_; ++d) {
                    const double val = detail::lattice_second_difference(v, k, grid_.arm(k, d));
                    if (val > best) {
                        best = val;
                        best_d = static_cast<std::uint16_t>(d);
                    }
                }
                if (best - current > threshold) {
                    policy_[k] = best_d;
                    changed = true;
                }
            }
            if (!changed) return true;
        }
    }

private:
    bool factorized(double sigma) const {
        return lu_ && sigma == lu_sigma_ && policy_ == lu_policy_;
    }

    bool factor(double sigma) {
        std::vector<Eigen::Triplet<double>> t;
        t.reserve(3 * n_);
        for (std::size_t k = 0; k < n_; ++k) {
            const Arm& a = grid_.arm(k, policy_[k]);
            const double sum = a.plus + a.minus;
            const double ap = 2.0 / (a.plus * sum);
            const double am = 2.0 / (a.minus * sum);
            const int row = static_cast<int>(k);
            t.emplace_back(row, row, ap + am - sigma);
            if (a.plus_node >= 0) t.emplace_back(row, a.plus_node, -ap);
            if (a.minus_node >= 0) t.emplace_back(row, a.minus_node, -am);
        }
        SpMat A(static_cast<int>(n_), static_cast<int>(n_));
        A.setFromTriplets(t.begin(), t.end());
        A.makeCompressed();
        lu_ = std::make_unique<LU>();
        lu_->analyzePattern(A);
        lu_->factorize(A);
        if (lu_->info() != Eigen::Success) {
            lu_.reset();
            return false;
        }
        lu_sigma_ = sigma;
        lu_policy_ = policy_;
        return true;
    }

    const Grid2& grid_;
    std::size_t n_;
    std::size_t K_;
    std::vector<std::uint16_t> policy_;
    std::unique_ptr<LU> lu_;
    double lu_sigma_ = std::numeric_limits<double>::quiet_NaN();
    std::vector<std::uint16_t> lu_policy_;
    long steps_ = 0;
};

// Explicit monotone marching v <- v + tau_x (Lambda v + f) with a local step
// tau_x = 0.45 min_e s+ s- at node x; returns the number of sweeps.
long pseudo_time(const Grid2& grid, std::span<const double> f, double tol, long max_steps, std::vector<double>& v) {
    const std::size_t n = grid.interior_count();
    const std::size_t K = grid.stencil().size();
    std::vector<double> tau(n);
    for (std::size_t k = 0; k < n; ++k) {
        double m = std::numeric_limits<double>::infinity();
        for (std::size_t d = 0; d < K; ++d) m = std::min(m, grid.arm(k, d).plus * grid.arm(k, d).minus);
        tau[k] = 0.45 * m;
    }
    const double target = tol * sup_norm(f);
    std::vector<double> lv(n);
    double residual = std::numeric_limits<double>::infinity();
    for (long step = 0; step < max_steps; ++step) {
        detail::apply_lattice(grid, v, lv);
        residual = 0.0;
        for (std::size_t k = 0; k < n; ++k) residual = std::max(residual, std::abs(lv[k] + f[k]));
        if (residual <= target) return step;
        for (std::size_t k = 0; k < n; ++k) v[k] += tau[k] * (lv[k] + f[k]);
    }
    std::ostringstream s;
    s << "inner solver stalled: pseudo-time marching hit max_inner=" << max_steps << " with residual " << residual;
    throw SolverError(SolverError::Kind::InnerStalled, s.str());
}

struct Ratios {
    double low_eta;
    double high_eta;
    double low_all;
};

Ratios ratios(const Grid2& grid, std::span<const double> u, double eta) {
    std::vector<double> lu(u.size());
    detail::apply_lattice(grid, u, lu);
    const double umax = sup_norm(u);
    Ratios r{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
             std::numeric_limits<double>::infinity()};
    for (std::size_t k = 0; k < u.size(); ++k) {
        const double q = -lu[k] / u[k];
        r.low_all = std::min(r.low_all, q);
        if (u[k] >= eta * umax) {
            r.low_eta = std::min(r.low_eta, q);
            r.high_eta = std::max(r.high_eta, q);
        }
    }
    return r;
}

}  // namespace

const char* to_string(SolverError::Kind kind) {
    switch (kind) {
        case SolverError::Kind::InvalidConfig: return "invalid configuration";
        case SolverError::Kind::GridTooCoarse: return "grid too coarse";
        case SolverError::Kind::InnerStalled: return "inner solver stalled";
        case SolverError::Kind::BracketNotClosed: return "bracket not closed";
        case SolverError::Kind::NotPositive: return "field not positive";
    }
    return "unknown";
}

void SolverConfig::validate() const {
    auto fail = [](const std::string& what) { throw SolverError(SolverError::Kind::InvalidConfig, what); };
    if (!(h > 0.0) || !std::isfinite(h)) fail("h must be positive");
    if (stencil_width < 1) fail("stencil width must be >= 1");
    if (!(tol_bracket > 0.0 && tol_bracket < 1.0)) fail("tol_bracket must lie in (0, 1)");
    if (!(tol_inner > 0.0 && tol_inner < 1.0)) fail("tol_inner must lie in (0, 1)");
    if (max_outer < 1) fail("max_outer must be positive");
    if (max_inner < 1) fail("max_inner must be positive");
    if (!(cw_floor > 0.0 && cw_floor < 1.0)) fail("cw_floor must lie in (0, 1)");
}

EigenEstimate solve(const DomainSpec& domain, const SolverConfig& cfg) {
    cfg.validate();
    std::shared_ptr<const Grid2> grid;
    try {
        grid = make_grid(domain, cfg.h, StencilSet(cfg.stencil_width), cfg.grid);
    } catch (const GridError& e) {
        throw SolverError(SolverError::Kind::GridTooCoarse, e.what());
    }
    return solve(std::move(grid), cfg);
}

EigenEstimate solve(std::shared_ptr<const Grid2> grid_ptr, const SolverConfig& cfg) {
    cfg.validate();
    if (!grid_ptr) throw SolverError(SolverError::Kind::InvalidConfig, "no grid");
    const Grid2& grid = *grid_ptr;
    const double h2 = grid.spacing() * grid.spacing();
    const bool use_policy = cfg.inner == InnerMethod::PolicyIteration;

    EigenEstimate est{.eigenfunction = ScalarField(grid_ptr), .history = {}};
    est.h = grid.spacing();
    est.W = grid.stencil().width();

    std::vector<double> u = initial_field(grid);
    std::vector<double> v;
    PolicySolver policy(grid);
    if (use_policy) policy.set_policy_from(u);

    double sigma = 0.0;
    double mu_prev = 0.0;
    long pseudo_steps = 0;
    Bracket last{};
    bool closed = false;

    for (int k = 1; k <= cfg.max_outer; ++k) {
        est.outer_iters = k;
        bool ok;
        if (use_policy) {
            const long cap = std::min<long>(cfg.max_inner, 1000);
            ok = policy.solve(u, sigma, cfg.tol_inner, cap, v);
        } else {
            v.assign(u.size(), 0.0);
            if (mu_prev > 0.0)
                for (std::size_t i = 0; i < u.size(); ++i) v[i] = u[i] / mu_prev;
            pseudo_steps += pseudo_time(grid, u, cfg.tol_inner, cfg.max_inner, v);
            ok = true;
        }
        ok = ok && std::all_of(v.begin(), v.end(), [](double x) { return x > 0.0; });
        if (!ok) {
            if (sigma > 0.0) {
                sigma = 0.0;
                continue;
            }
            throw SolverError(SolverError::Kind::NotPositive,
                              "inverse iterate lost positivity" + describe_bracket(last), last);
        }

        const double m = *std::max_element(v.begin(), v.end());
        mu_prev = sigma + 1.0 / m;
        for (std::size_t i = 0; i < u.size(); ++i) u[i] = v[i] / m;

        const Ratios r = ratios(grid, u, cfg.cw_floor);
        last = {r.low_eta / h2, r.high_eta / h2};
        est.history.push_back(last);
        if (r.high_eta - r.low_eta <= cfg.tol_bracket * std::abs(r.high_eta)) {
            closed = true;
            break;
        }
        if (use_policy && cfg.shift)
            sigma = std::max(0.0, r.low_all - std::max(r.high_eta - r.low_all, 1e-3 * r.low_all));
    }
    est.inner_iters_total = use_policy ? policy.steps() : pseudo_steps;
    if (!closed)
        throw SolverError(SolverError::Kind::BracketNotClosed,
                          "bracket not closed after " + std::to_string(cfg.max_outer) + " outer iterations" +
                              describe_bracket(last),
                          last);

    est.mu_low = last.low;
    est.mu_high = last.high;
    est.mu = est.mu_low;

    std::vector<double> lu(u.size());
    detail::apply_lattice(grid, u, lu);
    const double mu_lat = est.mu * h2;
    for (std::size_t i = 0; i < u.size(); ++i)
        est.residual = std::max(est.residual, std::abs(-lu[i] - mu_lat * u[i]));
    est.residual /= h2;
    est.eigenfunction = ScalarField(grid_ptr, std::move(u));
    return est;
}

Bracket collatz_wielandt(const ScalarField& u, const Grid2& grid, const StencilSet& stencil, double eta) {
    if (&u.grid() != &grid) throw OperatorError("field is bound to a different grid");
    if (stencil.width() != grid.stencil().width()) throw OperatorError("stencil does not match the grid");
    for (double x : u.values())
        if (!(x > 0.0)) throw SolverError(SolverError::Kind::NotPositive, "field must be positive on the interior");
    const Ratios r = ratios(grid, u.values(), eta);
    const double h2 = grid.spacing() * grid.spacing();
    return {r.low_eta / h2, r.high_eta / h2};
}

std::optional<double> analytic_mu(const DomainSpec& domain) {
    if (const auto* b = std::get_if<BallSpec>(&domain)) return kPi * kPi / (4.0 * b->radius * b->radius);
    if (const auto* r = std::get_if<HyperRectSpec>(&domain)) {
        double s = 0.0;
        for (double a : r->halfsides) s += a * a;
        return kPi * kPi / (4.0 * s);
    }
    return std::nullopt;
}

double richardson(double coarse, double fine, double ratio, double order) {
    const double f = std::pow(ratio, order);
    return (f * fine - coarse) / (f - 1.0);
}

nlohmann::json to_json(const EigenEstimate& e) {
    return {{"mu", e.mu},
            {"mu_low", e.mu_low},
            {"mu_high", e.mu_high},
            {"h", e.h},
            {"W", e.W},
            {"outer_iters", e.outer_iters},
            {"inner_iters_total", e.inner_iters_total},
            {"residual", e.residual}};
}

}  // namespace trunclap
