#include "moco/cone_order.hpp"

#include <cmath>
#include <cstdio>
#include <string>

namespace moco {

namespace {

constexpr double kQuarterPi = 0.78539816339744830961;

void validate_pair(std::span<const double> y, std::span<const double> y_prime, std::size_t m) {
    if (y.size() != m || y_prime.size() != m) {
        throw std::invalid_argument("objective vectors must both have length " + std::to_string(m) +
                                    " (got " + std::to_string(y.size()) + " and " +
                                    std::to_string(y_prime.size()) + ")");
    }
    for (std::size_t i = 0; i < m; ++i) {
        if (!std::isfinite(y[i]) || !std::isfinite(y_prime[i])) {
            throw std::invalid_argument("objective vectors must be finite");
        }
    }
}

DominanceRelation from_signs(bool any_pos, bool any_neg) {
    if (any_pos && any_neg) return DominanceRelation::Incomparable;
    if (any_pos) return DominanceRelation::Dominates;
    if (any_neg) return DominanceRelation::DominatedBy;
    return DominanceRelation::Equal;
}

// Componentwise comparison; lambda_i = y'_i - y_i > 0 iff y improves on y'
// in objective i. Sign tests are exact, no epsilon.
DominanceRelation pareto_compare(std::span<const double> y, std::span<const double> y_prime) {
    bool any_pos = false;
    bool any_neg = false;
    for (std::size_t i = 0; i < y.size(); ++i) {
        if (y[i] < y_prime[i]) {
            any_pos = true;
        } else if (y[i] > y_prime[i]) {
            any_neg = true;
        }
        if (any_pos && any_neg) return DominanceRelation::Incomparable;
    }
    return from_signs(any_pos, any_neg);
}

}  // namespace

const char* to_string(DominanceRelation r) {
    switch (r) {
        case DominanceRelation::Dominates: return "Dominates";
        case DominanceRelation::DominatedBy: return "DominatedBy";
        case DominanceRelation::Incomparable: return "Incomparable";
        case DominanceRelation::Equal: return "Equal";
    }
    return "?";
}

DominanceRelation pareto_classify(std::span<const double> y, std::span<const double> y_prime) {
    if (y.size() < 2) throw std::invalid_argument("objective vectors need length >= 2");
    validate_pair(y, y_prime, y.size());
    return pareto_compare(y, y_prime);
}

ConeOrder::ConeOrder(std::size_t m, double alpha) : m_(m), alpha_(alpha) {
    if (m < 2) {
        throw std::invalid_argument("cone order needs at least 2 objectives, got " + std::to_string(m));
    }
    if (!(alpha >= 0.0) || alpha >= kQuarterPi) {
        throw std::invalid_argument("rotation angle must lie in [0, pi/4), got " + std::to_string(alpha));
    }

    const double root = std::sqrt(static_cast<double>(m - 1));
    const double diag = std::cos(alpha);            // cos(-alpha)
    const double off = -std::sin(alpha) / root;     // sin(-alpha)/sqrt(m-1)

    // A = c1*I + c2*J with J the all-ones matrix, so its eigenvalues are c1
    // (multiplicity m-1) and c1 + m*c2 = margin (on the all-ones vector).
    const double c1 = diag - off;
    margin_ = std::cos(alpha) - root * std::sin(alpha);
    const double det = std::pow(c1, static_cast<double>(m - 1)) * margin_;
    if (std::fabs(det) < 1e-12) {
        throw SingularConeError("cone generator matrix is numerically singular (|det| = " +
                                std::to_string(std::fabs(det)) + ") for m = " + std::to_string(m) +
                                ", alpha = " + std::to_string(alpha));
    }

    degenerate_ = margin_ <= 1e-9;
    identity_ = (alpha == 0.0);
    if (degenerate_) {
        std::fprintf(stderr,
                     "moco: warning: cone order m=%zu alpha=%.6f rad is degenerate "
                     "(pointedness margin %.6f <= 0); it no longer extends the Pareto order\n",
                     m, alpha, margin_);
    }

    a_.assign(m * m, off);
    for (std::size_t i = 0; i < m; ++i) a_[i * m + i] = diag;

    // (c1*I + c2*J)^{-1} = (1/c1)*I - c2/(c1*(c1 + m*c2))*J
    const double q = -off / (c1 * margin_);
    inv_.assign(m * m, q);
    for (std::size_t i = 0; i < m; ++i) inv_[i * m + i] = 1.0 / c1 + q;
}

DominanceRelation ConeOrder::compare(std::span<const double> y,
                                     std::span<const double> y_prime) const noexcept {
    if (identity_) return pareto_compare(y, y_prime);

    bool any_pos = false;
    bool any_neg = false;
    for (std::size_t i = 0; i < m_; ++i) {
        const double* row = inv_.data() + i * m_;
        double lambda = 0.0;
        for (std::size_t j = 0; j < m_; ++j) lambda += row[j] * (y_prime[j] - y[j]);
        if (lambda > 0.0) {
            any_pos = true;
        } else if (lambda < 0.0) {
            any_neg = true;
        }
        if (any_pos && any_neg) return DominanceRelation::Incomparable;
    }
    return from_signs(any_pos, any_neg);
}

DominanceRelation ConeOrder::classify(std::span<const double> y,
                                      std::span<const double> y_prime) const {
    validate_pair(y, y_prime, m_);
    return compare(y, y_prime);
}

}  // namespace moco
