#pragma once
// Thread configuration for the OpenMP kernels. FLTZ_THREADS overrides the
// OpenMP default; results never depend on the thread count.

namespace fltz {

// reads FLTZ_THREADS once and applies it; returns the team size in use
int configure_threads();
void set_threads(int n);
int max_threads();

}  // namespace fltz
