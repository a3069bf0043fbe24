#include "jsde/grid.hpp"

#include <cmath>

#include "jsde/common.hpp"

namespace jsde {

TimeGrid::TimeGrid(double t_end, double base_step)
    : t_end_(t_end), base_step_(base_step) {
    if (!(base_step > 0)) throw Error("TimeGrid: base_step must be positive");
    if (!(t_end >= 0)) throw Error("TimeGrid: t_end must be nonnegative");
    knots_.push_back(0.0);
    if (t_end > 0) {
        std::size_t n = static_cast<std::size_t>(std::ceil(t_end / base_step - 1e-9));
        knots_.reserve(n + 1);
        for (std::size_t k = 1; k < n; ++k) knots_.push_back(static_cast<double>(k) * base_step);
        knots_.push_back(t_end);
    }
    validate();
}

TimeGrid::TimeGrid(double t_end, double base_step, std::vector<double> knots)
    : t_end_(t_end), base_step_(base_step), knots_(std::move(knots)) {
    if (!(base_step > 0)) throw Error("TimeGrid: base_step must be positive");
    validate();
}

void TimeGrid::validate() const {
    if (knots_.empty() || knots_.front() != 0.0)
        throw Error("TimeGrid: first knot must be 0");
    if (knots_.back() != t_end_)
        throw Error("TimeGrid: last knot must equal t_end");
    for (std::size_t i = 1; i < knots_.size(); ++i)
        if (!(knots_[i] > knots_[i - 1]))
            throw Error("TimeGrid: knots must be strictly increasing");
}

}  // namespace jsde
