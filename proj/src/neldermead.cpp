#include "wwrt/math/neldermead.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wwrt {

NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                             std::vector<double> start, std::vector<double> step, double tol,
                             int max_iter) {
    const std::size_t n = start.size();
    if (n == 0 || step.size() != n) throw std::invalid_argument("nelder_mead: bad dimensions");

    std::vector<std::vector<double>> simplex(n + 1, start);
    std::vector<double> values(n + 1);
    for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += step[i];
    for (std::size_t i = 0; i <= n; ++i) values[i] = f(simplex[i]);

    const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;
    NelderMeadResult result;

    for (int iter = 0; iter < max_iter; ++iter) {
        std::vector<std::size_t> order(n + 1);
        for (std::size_t i = 0; i <= n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

        const std::size_t best = order[0], worst = order[n], second = order[n - 1];
        if (std::abs(values[worst] - values[best]) <=
            tol * (1.0 + std::abs(values[best]))) {
            result.point = simplex[best];
            result.value = values[best];
            result.iterations = iter;
            result.converged = true;
            return result;
        }

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == worst) continue;
            for (std::size_t k = 0; k < n; ++k) centroid[k] += simplex[i][k];
        }
        for (double& c : centroid) c /= static_cast<double>(n);

        auto blend = [&](double coef) {
            std::vector<double> p(n);
            for (std::size_t k = 0; k < n; ++k)
                p[k] = centroid[k] + coef * (simplex[worst][k] - centroid[k]);
            return p;
        };

        std::vector<double> reflected = blend(-alpha);
        double f_ref = f(reflected);
        if (f_ref < values[order[0]]) {
            std::vector<double> expanded = blend(-gamma);
            double f_exp = f(expanded);
            if (f_exp < f_ref) {
                simplex[worst] = std::move(expanded);
                values[worst] = f_exp;
            } else {
                simplex[worst] = std::move(reflected);
                values[worst] = f_ref;
            }
            continue;
        }
        if (f_ref < values[second]) {
            simplex[worst] = std::move(reflected);
            values[worst] = f_ref;
            continue;
        }
        std::vector<double> contracted = blend(rho);
        double f_con = f(contracted);
        if (f_con < values[worst]) {
            simplex[worst] = std::move(contracted);
            values[worst] = f_con;
            continue;
        }
        // Shrink towards the best vertex.
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == best) continue;
            for (std::size_t k = 0; k < n; ++k)
                simplex[i][k] = simplex[best][k] + sigma * (simplex[i][k] - simplex[best][k]);
            values[i] = f(simplex[i]);
        }
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i <= n; ++i)
        if (values[i] < values[best]) best = i;
    result.point = simplex[best];
    result.value = values[best];
    result.iterations = max_iter;
    result.converged = false;
    return result;
}

} // namespace wwrt
