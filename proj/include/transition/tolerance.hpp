#pragma once

namespace transition {

/// Library-wide default tolerance. Starts at 1e-10 and can be overridden
/// with the TRANSITION_LAB_TOL environment variable, read once on first use.
double default_tol();

/// Replaces the default tolerance for the rest of the process.
void set_default_tol(double tol);

}  // namespace transition
