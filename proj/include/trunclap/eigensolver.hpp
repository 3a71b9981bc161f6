#pragma once

/// @file eigensolver.hpp
/// @brief Principal eigenpair of -Lambda_h u = mu u by nonlinear inverse power
///        iteration, bracketed by Collatz-Wielandt ratios.

#include "trunclap/domain.hpp"
#include "trunclap/grid.hpp"

#include <json.hpp>

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace trunclap {

enum class InnerMethod {
    PolicyIteration,  ///< Howard iteration on the frozen-direction linear systems
    PseudoTime,       ///< explicit monotone marching, small grids only
};

struct SolverConfig {
    double h = 1.0 / 64.0;
    int stencil_width = 4;
    double tol_bracket = 1e-6;  ///< relative: mu_high - mu_low <= tol_bracket * mu_high
    double tol_inner = 1e-8;    ///< relative sup-norm residual of the inner solve
    int max_outer = 200;
    long max_inner = 200000;
    double cw_floor = 1e-3;     ///< eta: ratios only where u >= eta * max u
    InnerMethod inner = InnerMethod::PolicyIteration;
    /// Shifted inner systems (policy iteration only). The shift stays below a
    /// certified lower bound, so every frozen system remains an M-matrix.
    bool shift = true;
    GridOptions grid;

    /// Throws SolverError(InvalidConfig).
    void validate() const;
};

struct Bracket {
    double low = 0.0;
    double high = 0.0;
};

struct EigenEstimate {
    double mu = 0.0;  ///< reported value, equal to mu_low
    double mu_low = 0.0;
    double mu_high = 0.0;
    ScalarField eigenfunction;
    int outer_iters = 0;
    long inner_iters_total = 0;
    double h = 0.0;
    int W = 0;
    /// sup over interior nodes of |-Lambda_h u - mu u| with max u = 1
    double residual = 0.0;
    std::vector<Bracket> history;  ///< bracket after every outer step
};

class SolverError : public std::runtime_error {
public:
    enum class Kind { InvalidConfig, GridTooCoarse, InnerStalled, BracketNotClosed, NotPositive };

    SolverError(Kind kind, const std::string& what, Bracket last = {})
        : std::runtime_error(what), kind_(kind), last_(last) {}

    Kind kind() const { return kind_; }
    const Bracket& last_bracket() const { return last_; }

private:
    Kind kind_;
    Bracket last_;
};

const char* to_string(SolverError::Kind kind);

/// Rasterizes the domain at cfg.h with a width cfg.stencil_width stencil and solves.
EigenEstimate solve(const DomainSpec& domain, const SolverConfig& cfg);

/// Solves on a prebuilt grid; cfg.h and cfg.stencil_width are ignored.
EigenEstimate solve(std::shared_ptr<const Grid2> grid, const SolverConfig& cfg);

/// Min and max of (-Lambda_h u)/u over nodes with u >= eta * max u, physical
/// units. Throws SolverError(NotPositive) unless u > 0 at every interior node.
Bracket collatz_wielandt(const ScalarField& u, const Grid2& grid, const StencilSet& stencil, double eta);

/// Closed forms: pi^2/(4 r^2) for balls and pi^2/(4 sum alpha_i^2) for
/// hyperrectangles, in any dimension.
std::optional<double> analytic_mu(const DomainSpec& domain);

/// Two-level extrapolation assuming error ~ h^order.
double richardson(double coarse, double fine, double ratio = 2.0, double order = 2.0);

nlohmann::json to_json(const EigenEstimate& e);

}  // namespace trunclap
