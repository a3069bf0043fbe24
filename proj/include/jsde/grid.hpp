#pragma once

#include <vector>

namespace jsde {

// Deterministic discretization of [0, t_end]. Knots are strictly increasing,
// start at 0 and end at t_end. t_end == 0 is the degenerate single-knot grid.
class TimeGrid {
  public:
    TimeGrid(double t_end, double base_step);
    TimeGrid(double t_end, double base_step, std::vector<double> knots);

    double t_end() const { return t_end_; }
    double base_step() const { return base_step_; }
    const std::vector<double>& knots() const { return knots_; }
    std::size_t size() const { return knots_.size(); }

  private:
    void validate() const;

    double t_end_;
    double base_step_;
    std::vector<double> knots_;
};

}  // namespace jsde
