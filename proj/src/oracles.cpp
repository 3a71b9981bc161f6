#include "trunclap/oracles.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>

namespace trunclap::oracles {

ToyResult toy_square_eigenvalue(int starts, std::uint64_t seed) {
    // 5x5 array, the outer ring is the boundary of (-1,1)^2 and stays 0
    using Field = std::array<std::array<double, 5>, 5>;
    constexpr double h = 0.5;
    constexpr int di[4] = {1, 0, 1, 1};
    constexpr int dj[4] = {0, 1, 1, -1};
    constexpr double len2[4] = {1.0, 1.0, 2.0, 2.0};

    auto lambda = [&](const Field& u, int i, int j) {
        double best = -1e300;
        for (int d = 0; d < 4; ++d) {
            const double second = (u[i + di[d]][j + dj[d]] + u[i - di[d]][j - dj[d]] - 2.0 * u[i][j]) / (len2[d] * h * h);
            best = std::max(best, second);
        }
        return best;
    };

    // u + tau Lambda u is monotone and positively homogeneous for tau below
    // h^2/2; its growth factor rho gives mu = (1 - rho) / tau.
    constexpr double tau = 0.2 * h * h;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(0.05, 1.0);

    ToyResult out;
    double lo = 1e300, hi = -1e300, sum = 0.0;
    for (int s = 0; s < starts; ++s) {
        Field u{};
        for (int i = 1; i <= 3; ++i)
            for (int j = 1; j <= 3; ++j) u[i][j] = U(rng);
        double rho = 0.0, rho_prev = -1.0;
        for (int it = 0; it < 1000000; ++it) {
            Field next{};
            double m = 0.0;
            for (int i = 1; i <= 3; ++i)
                for (int j = 1; j <= 3; ++j) {
                    next[i][j] = u[i][j] + tau * lambda(u, i, j);
                    m = std::max(m, next[i][j]);
                }
            double change = 0.0;
            for (int i = 1; i <= 3; ++i)
                for (int j = 1; j <= 3; ++j) {
                    next[i][j] /= m;
                    change = std::max(change, std::abs(next[i][j] - u[i][j]));
                }
            u = next;
            rho_prev = rho;
            rho = m;
            if (change == 0.0 || (change < 1e-15 && std::abs(rho - rho_prev) < 1e-16)) break;
        }
        const double mu = (1.0 - rho) / tau;
        lo = std::min(lo, mu);
        hi = std::max(hi, mu);
        sum += mu;
        if (s == 0)
            for (int j = 1; j <= 3; ++j)
                for (int i = 1; i <= 3; ++i) out.u.push_back(u[i][j]);
    }
    out.mu = sum / starts;
    out.spread = hi - lo;
    return out;
}

}  // namespace trunclap::oracles
