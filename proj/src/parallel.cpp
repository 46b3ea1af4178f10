#include "fltz/parallel.hpp"

#include <cstdlib>
#include <mutex>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fltz {

int configure_threads() {
    static std::once_flag once;
    std::call_once(once, [] {
        if (const char* v = std::getenv("FLTZ_THREADS")) {
            try {
                int n = std::stoi(v);
                if (n > 0) set_threads(n);
            } catch (const std::exception&) {
            }
        }
    });
    return max_threads();
}

void set_threads(int n) {
#ifdef _OPENMP
    if (n > 0) omp_set_num_threads(n);
#else
    (void)n;
#endif
}

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

}  // namespace fltz
