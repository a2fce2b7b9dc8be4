#pragma once

namespace fracmax {

/// C-infinity cutoff: 1 on [0, 1/2], 0 on [1, inf), monotone in between.
double smooth_cutoff(double t);
/// Derivative of smooth_cutoff with respect to t.
double smooth_cutoff_derivative(double t);

}  // namespace fracmax
