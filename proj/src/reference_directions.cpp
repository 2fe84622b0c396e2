#include "moco/reference_directions.hpp"

#include <stdexcept>

namespace moco {

namespace {

void recurse(std::size_t m, unsigned p, unsigned left, std::size_t depth,
             std::vector<double>& work, std::vector<std::vector<double>>& out) {
    if (depth == m - 1) {
        work[depth] = static_cast<double>(left) / p;
        out.push_back(work);
        return;
    }
    for (unsigned i = 0; i <= left; ++i) {
        work[depth] = static_cast<double>(i) / p;
        recurse(m, p, left - i, depth + 1, work, out);
    }
}

}  // namespace

std::vector<std::vector<double>> das_dennis_weights(std::size_t m, unsigned p) {
    if (m < 2) throw std::invalid_argument("das_dennis_weights: need m >= 2");
    if (p == 0) throw std::invalid_argument("das_dennis_weights: need p >= 1");
    std::vector<std::vector<double>> out;
    std::vector<double> work(m, 0.0);
    recurse(m, p, p, 0, work, out);
    return out;
}

std::vector<std::vector<double>> two_layer_weights(std::size_t m, unsigned p_outer, unsigned p_inner) {
    auto dirs = das_dennis_weights(m, p_outer);
    auto inner = das_dennis_weights(m, p_inner);
    for (auto& w : inner) {
        for (double& v : w) v = v / 2.0 + 1.0 / (2.0 * static_cast<double>(m));
        dirs.push_back(w);
    }
    return dirs;
}

std::vector<std::vector<double>> default_reference_directions(std::size_t m) {
    // Sizes: m=2 -> 100, m=3 -> 91, m=4 -> 120, m=5 -> 126,
    //        m=6 -> 77, m=7 -> 112, m=8 -> 156.
    switch (m) {
        case 2: return das_dennis_weights(2, 99);
        case 3: return das_dennis_weights(3, 12);
        case 4: return das_dennis_weights(4, 7);
        case 5: return das_dennis_weights(5, 5);
        case 6: return two_layer_weights(6, 3, 2);
        case 7: return two_layer_weights(7, 3, 2);
        case 8: return two_layer_weights(8, 3, 2);
        default: break;
    }
    if (m < 2) throw std::invalid_argument("default_reference_directions: need m >= 2");
    return two_layer_weights(m, 3, 2);
}

}  // namespace moco
