#ifndef MOCO_CONE_ORDER_HPP
#define MOCO_CONE_ORDER_HPP

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace moco {

/// An objective vector. All comparisons assume minimization and require
/// every component to be finite.
using ObjectiveVector = std::vector<double>;

/// Outcome of comparing two objective vectors under a dominance order.
/// classify(a, b) == Dominates means a dominates b (a is the better point).
enum class DominanceRelation { Dominates, DominatedBy, Incomparable, Equal };

const char* to_string(DominanceRelation r);

/// Thrown when the generator matrix of a requested cone is numerically
/// singular (|det A| < 1e-12) and no dominance test can be derived from it.
class SingularConeError : public std::runtime_error {
public:
    explicit SingularConeError(const std::string& what) : std::runtime_error(what) {}
};

/// Plain Pareto dominance: componentwise <= with at least one strict <.
/// Throws std::invalid_argument on dimension mismatch or non-finite input.
DominanceRelation pareto_classify(std::span<const double> y, std::span<const double> y_prime);

/// A dominance order obtained by rotating every edge of the nonnegative
/// orthant by a fixed angle away from the identity line, widening the
/// dominated region. alpha = 0 reproduces the standard Pareto order exactly.
///
/// The generator matrix A holds the rotated edge directions as columns
/// (unit norm). Point y dominates y' when all components of A^{-1}(y' - y)
/// are nonnegative with at least one strictly positive. A and A^{-1} are
/// computed once at construction; instances are immutable and safe to share
/// across threads.
///
/// For m > 2 the cone stops containing the Pareto orthant once
/// cos(alpha) - sqrt(m-1) * sin(alpha) <= 0: points that get uniformly worse
/// in all objectives then count as improving. Such orders are still built
/// (the comparison stays a strict partial order) but are flagged degenerate
/// and a warning is emitted.
class ConeOrder {
public:
    /// Requires m >= 2 and 0 <= alpha < pi/4 (radians).
    /// Throws std::invalid_argument on bad arguments and SingularConeError
    /// when the generator matrix cannot be inverted.
    ConeOrder(std::size_t m, double alpha);

    std::size_t objective_count() const { return m_; }
    double angle() const { return alpha_; }

    /// cos(alpha) - sqrt(m-1) * sin(alpha); the eigenvalue of A along the
    /// all-ones direction.
    double pointedness_margin() const { return margin_; }

    /// True when pointedness_margin() <= 1e-9.
    bool degenerate() const { return degenerate_; }

    /// Row-major m x m matrices.
    const std::vector<double>& generator_matrix() const { return a_; }
    const std::vector<double>& inverse_matrix() const { return inv_; }

    /// Full dominance classification with input validation.
    DominanceRelation classify(std::span<const double> y, std::span<const double> y_prime) const;

    /// Same comparison without validation; callers must guarantee matching,
    /// finite inputs of length objective_count().
    DominanceRelation compare(std::span<const double> y, std::span<const double> y_prime) const noexcept;

private:
    std::size_t m_;
    double alpha_;
    double margin_;
    bool degenerate_;
    bool identity_;
    std::vector<double> a_;
    std::vector<double> inv_;
};

/// Factory spelling of the constructor.
inline ConeOrder build_cone(std::size_t m, double alpha) { return ConeOrder(m, alpha); }

inline DominanceRelation classify(const ConeOrder& order, std::span<const double> y,
                                  std::span<const double> y_prime) {
    return order.classify(y, y_prime);
}

}  // namespace moco

#endif  // MOCO_CONE_ORDER_HPP
