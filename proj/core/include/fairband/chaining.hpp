#pragma once
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace fairband {

struct Interval {
    double lower = 0.0;
    double upper = 1.0;

    double width() const { return upper - lower; }
};

// Two arms are linked when their intervals intersect; chained = same component
// of the transitive closure of linked. Confidence intervals are closed, so
// touching endpoints link; prediction intervals (s - eps, s + eps) are open,
// so touching endpoints do not.
enum class Overlap { closed, open };

inline bool linked(const Interval& a, const Interval& b, Overlap mode) {
    if (mode == Overlap::closed) return a.lower <= b.upper && b.lower <= a.upper;
    return a.lower < b.upper && b.lower < a.upper;
}

// Component of `top` in the overlap graph restricted to `candidates`.
// Returns arm indices in increasing order.
inline std::vector<int> chained_set(const std::vector<int>& candidates,
                                    const std::vector<Interval>& intervals,
                                    int top,
                                    Overlap mode = Overlap::closed) {
    if (candidates.empty()) throw std::invalid_argument("chained_set: empty candidate set");
    const std::size_t n = candidates.size();
    std::size_t top_pos = n;
    for (std::size_t i = 0; i < n; ++i)
        if (candidates[i] == top) top_pos = i;
    if (top_pos == n) throw std::invalid_argument("chained_set: top arm not in candidate set");

    std::vector<char> visited(n, 0);
    std::vector<std::size_t> stack{top_pos};
    visited[top_pos] = 1;
    while (!stack.empty()) {
        const std::size_t i = stack.back();
        stack.pop_back();
        const Interval& iv = intervals.at(static_cast<std::size_t>(candidates[i]));
        for (std::size_t j = 0; j < n; ++j) {
            if (visited[j]) continue;
            if (linked(iv, intervals.at(static_cast<std::size_t>(candidates[j])), mode)) {
                visited[j] = 1;
                stack.push_back(j);
            }
        }
    }
    std::vector<int> out;
    for (std::size_t i = 0; i < n; ++i)
        if (visited[i]) out.push_back(candidates[i]);
    return out;
}

}  // namespace fairband
