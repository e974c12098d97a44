#include "wwrt/epi/linear.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <array>
#include <cmath>

namespace wwrt::epi {

namespace {

constexpr double kEigenSeparationTol = 1e-8;

// Roots of lambda^2 + (gamma+nu)lambda + gamma(nu - alpha) = 0, the spectrum
// of the (E, I) block. a = 4*alpha*gamma + (gamma - nu)^2 >= 0, so both roots
// are real for alpha >= 0.
std::array<double, 2> block_eigenvalues(double alpha, const RateParams& p) {
    const double a = 4.0 * alpha * p.gamma + (p.gamma - p.nu) * (p.gamma - p.nu);
    const double root = std::sqrt(std::max(a, 0.0));
    return {0.5 * (root - p.gamma - p.nu), 0.5 * (-root - p.gamma - p.nu)};
}

// Eigenvector of the full system for an (E, I)-block eigenvalue lambda,
// parameterized as E = nu + lambda, I = gamma (never degenerate for
// gamma > 0). Remaining entries follow from back-substitution and divide by
// (eta + lambda) and lambda; callers must have excluded those collisions.
void block_eigenvector(StateVariant v, double lambda, double, const RateParams& p,
                       Eigen::VectorXd& out) {
    const double e = p.nu + lambda;
    const double i = p.gamma;
    switch (v) {
    case StateVariant::eirr: {
        const double r1 = p.nu * i / (p.eta + lambda);
        out << e, i, r1, p.eta * r1 / lambda;
        break;
    }
    case StateVariant::eirr_c: {
        const double r1 = p.nu * i / (p.eta + lambda);
        out << e, i, r1, p.eta * r1 / lambda, p.gamma * e / lambda;
        break;
    }
    case StateVariant::eir_c:
        out << e, i, p.nu * i / lambda, p.gamma * e / lambda;
        break;
    default:
        throw std::logic_error("block_eigenvector: not a linear variant");
    }
}

Eigen::MatrixXd pade_exponential(const Eigen::MatrixXd& generator, double dt) {
    Eigen::MatrixXd scaled = generator * dt;
    return scaled.exp();
}

// General-matrix route: numeric eigendecomposition when the spectrum is well
// separated, Pade otherwise.
Eigen::MatrixXd matrix_exponential(const Eigen::MatrixXd& generator, double dt) {
    if (dt == 0.0) return Eigen::MatrixXd::Identity(generator.rows(), generator.cols());
    Eigen::EigenSolver<Eigen::MatrixXd> es(generator);
    if (es.info() != Eigen::Success) return pade_exponential(generator, dt);

    const auto& lam = es.eigenvalues();
    double scale = 1.0;
    for (int i = 0; i < lam.size(); ++i) scale = std::max(scale, std::abs(lam(i)));
    for (int i = 0; i < lam.size(); ++i)
        for (int j = i + 1; j < lam.size(); ++j)
            if (std::abs(lam(i) - lam(j)) < kEigenSeparationTol * scale)
                return pade_exponential(generator, dt);

    Eigen::MatrixXcd w = es.eigenvectors();
    Eigen::FullPivLU<Eigen::MatrixXcd> lu(w);
    if (!lu.isInvertible()) return pade_exponential(generator, dt);
    Eigen::VectorXcd ev(lam.size());
    for (int i = 0; i < lam.size(); ++i) ev(i) = std::exp(lam(i) * dt);
    Eigen::MatrixXcd result = w * ev.asDiagonal() * lu.inverse();
    if (!result.allFinite()) return pade_exponential(generator, dt);
    return result.real();
}

} // namespace

std::size_t state_dim(StateVariant v) {
    switch (v) {
    case StateVariant::eirr: return 4;
    case StateVariant::eirr_c: return 5;
    case StateVariant::eir_c: return 4;
    case StateVariant::seir_c: return 5;
    case StateVariant::seirr: return 5;
    case StateVariant::seirr_c: return 6;
    }
    throw std::logic_error("state_dim: unknown variant");
}

const std::vector<std::string>& state_names(StateVariant v) {
    static const std::vector<std::string> eirr = {"E", "I", "R1", "R2"};
    static const std::vector<std::string> eirr_c = {"E", "I", "R1", "R2", "C"};
    static const std::vector<std::string> eir_c = {"E", "I", "R", "C"};
    static const std::vector<std::string> seir_c = {"S", "E", "I", "R", "C"};
    static const std::vector<std::string> seirr = {"S", "E", "I", "R1", "R2"};
    static const std::vector<std::string> seirr_c = {"S", "E", "I", "R1", "R2", "C"};
    switch (v) {
    case StateVariant::eirr: return eirr;
    case StateVariant::eirr_c: return eirr_c;
    case StateVariant::eir_c: return eir_c;
    case StateVariant::seir_c: return seir_c;
    case StateVariant::seirr: return seirr;
    case StateVariant::seirr_c: return seirr_c;
    }
    throw std::logic_error("state_names: unknown variant");
}

Eigen::Matrix4d build_eirr_generator(double alpha, const RateParams& params) {
    params.validate();
    if (!(alpha >= 0.0) || !std::isfinite(alpha))
        throw std::invalid_argument("build_eirr_generator: alpha must be finite and >= 0");
    Eigen::Matrix4d v = Eigen::Matrix4d::Zero();
    v(0, 0) = -params.gamma;
    v(0, 1) = alpha;
    v(1, 0) = params.gamma;
    v(1, 1) = -params.nu;
    v(2, 1) = params.nu;
    v(2, 2) = -params.eta;
    v(3, 2) = params.eta;
    return v;
}

Eigen::MatrixXd build_linear_generator(StateVariant variant, double alpha,
                                       const RateParams& params) {
    params.validate();
    if (!(alpha >= 0.0) || !std::isfinite(alpha))
        throw std::invalid_argument("build_linear_generator: alpha must be finite and >= 0");
    switch (variant) {
    case StateVariant::eirr:
        return build_eirr_generator(alpha, params);
    case StateVariant::eirr_c: {
        Eigen::MatrixXd v = Eigen::MatrixXd::Zero(5, 5);
        v.topLeftCorner<4, 4>() = build_eirr_generator(alpha, params);
        v(4, 0) = params.gamma;
        return v;
    }
    case StateVariant::eir_c: {
        Eigen::MatrixXd v = Eigen::MatrixXd::Zero(4, 4);
        v(0, 0) = -params.gamma;
        v(0, 1) = alpha;
        v(1, 0) = params.gamma;
        v(1, 1) = -params.nu;
        v(2, 1) = params.nu;
        v(3, 0) = params.gamma;
        return v;
    }
    default:
        throw std::invalid_argument("build_linear_generator: variant is not linear");
    }
}

Eigen::MatrixXd linear_propagator(StateVariant variant, double alpha, const RateParams& params,
                                  double dt) {
    params.validate();
    if (!(dt >= 0.0) || !std::isfinite(dt))
        throw std::invalid_argument("linear_propagator: dt must be finite and >= 0");
    const std::size_t n = state_dim(variant);
    if (dt == 0.0) return Eigen::MatrixXd::Identity(n, n);

    const auto lam = block_eigenvalues(alpha, params);
    const double scale =
        std::max({1.0, std::abs(lam[0]), std::abs(lam[1]), params.eta});
    const double tol = kEigenSeparationTol * scale;

    // Collisions that make the analytic eigenbasis singular: the block pair
    // with each other, with -eta (R1 back-substitution) and with 0 (R2/C
    // back-substitution).
    bool degenerate = std::abs(lam[0] - lam[1]) < tol;
    for (double l : lam)
        degenerate = degenerate || std::abs(l) < tol ||
                     (variant != StateVariant::eir_c && std::abs(l + params.eta) < tol);

    const Eigen::MatrixXd generator = build_linear_generator(variant, alpha, params);
    if (degenerate) return pade_exponential(generator, dt);

    Eigen::MatrixXd w(n, n);
    Eigen::VectorXd values(n);
    Eigen::VectorXd col(n);
    for (int k = 0; k < 2; ++k) {
        block_eigenvector(variant, lam[k], alpha, params, col);
        w.col(k) = col;
        values(k) = lam[k];
    }
    std::size_t next = 2;
    if (variant == StateVariant::eirr || variant == StateVariant::eirr_c) {
        w.col(next).setZero();
        w(2, next) = 1.0;
        w(3, next) = -1.0;
        values(next) = -params.eta;
        ++next;
    }
    // Absorbing compartments (R2/R/C) each contribute a zero eigenvalue with a
    // coordinate eigenvector.
    for (std::size_t j = next; j < n; ++j) {
        w.col(j).setZero();
        std::size_t slot = (variant == StateVariant::eir_c) ? (j - next + 2) : (j - next + 3);
        w(slot, j) = 1.0;
        values(j) = 0.0;
    }

    // Column normalization keeps the basis well scaled when lambda is small.
    for (std::size_t j = 0; j < n; ++j) {
        double m = w.col(j).cwiseAbs().maxCoeff();
        if (m > 0.0) w.col(j) /= m;
    }

    Eigen::FullPivLU<Eigen::MatrixXd> lu(w);
    if (!lu.isInvertible()) return pade_exponential(generator, dt);

    Eigen::VectorXd ev(n);
    for (std::size_t j = 0; j < n; ++j) ev(j) = std::exp(values(j) * dt);
    Eigen::MatrixXd result = w * ev.asDiagonal() * lu.inverse();
    if (!result.allFinite()) return pade_exponential(generator, dt);
    return result;
}

CompartmentState propagate_linear(const CompartmentState& state, const Eigen::MatrixXd& generator,
                                  double dt) {
    if (!(dt >= 0.0) || !std::isfinite(dt))
        throw std::invalid_argument("propagate_linear: dt must be finite and >= 0");
    const std::size_t n = state.counts.size();
    if (static_cast<std::size_t>(generator.rows()) != n ||
        static_cast<std::size_t>(generator.cols()) != n)
        throw std::invalid_argument("propagate_linear: generator/state dimension mismatch");
    for (double x : state.counts)
        if (!std::isfinite(x)) throw std::invalid_argument("propagate_linear: non-finite state");

    Eigen::VectorXd x(n);
    for (std::size_t i = 0; i < n; ++i) x(i) = state.counts[i];
    Eigen::VectorXd y = matrix_exponential(generator, dt) * x;

    CompartmentState out = state;
    for (std::size_t i = 0; i < n; ++i) out.counts[i] = std::max(y(i), 0.0);
    return out;
}

std::vector<CompartmentState> solve_piecewise(const CompartmentState& init,
                                              const AlphaSchedule& schedule,
                                              const RateParams& params,
                                              const std::vector<double>& grid) {
    params.validate();
    schedule.steps.validate();
    init.require_finite_nonnegative();
    if (init.variant != StateVariant::eirr && init.variant != StateVariant::eirr_c &&
        init.variant != StateVariant::eir_c)
        throw std::invalid_argument("solve_piecewise: variant is not linear");
    if (grid.size() < 2) throw std::invalid_argument("solve_piecewise: grid needs >= 2 points");
    for (std::size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw std::invalid_argument("solve_piecewise: grid must be strictly increasing");

    // Every changepoint inside the window must sit on the grid, otherwise a
    // propagation step would straddle two alpha values.
    for (double cp : schedule.steps.times) {
        if (cp <= grid.front() || cp >= grid.back()) continue;
        bool on_grid = false;
        for (double g : grid)
            if (std::abs(g - cp) < 1e-9) { on_grid = true; break; }
        if (!on_grid)
            throw std::invalid_argument("solve_piecewise: changepoint not on output grid");
    }

    std::vector<CompartmentState> out;
    out.reserve(grid.size());
    out.push_back(init);

    Eigen::VectorXd x(init.counts.size());
    for (std::size_t i = 0; i < init.counts.size(); ++i) x(i) = init.counts[i];

    double cached_alpha = std::numeric_limits<double>::quiet_NaN();
    double cached_dt = std::numeric_limits<double>::quiet_NaN();
    Eigen::MatrixXd propagator;

    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double dt = grid[i] - grid[i - 1];
        const double alpha = schedule.steps.at(grid[i - 1]);
        if (alpha != cached_alpha || std::abs(dt - cached_dt) > 1e-12) {
            propagator = linear_propagator(init.variant, alpha, params, dt);
            cached_alpha = alpha;
            cached_dt = dt;
        }
        x = propagator * x;
        CompartmentState st = init;
        for (std::size_t k = 0; k < init.counts.size(); ++k) st.counts[k] = std::max(x(k), 0.0);
        out.push_back(std::move(st));
    }
    return out;
}

} // namespace wwrt::epi
