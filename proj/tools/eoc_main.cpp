#include "eoc/cli.hpp"

#ifdef __SSE2__
#include <immintrin.h>
#endif

int main(int argc, char** argv) {
#ifdef __SSE2__
    // Flush denormals: deeply subcritical trajectories decay through the
    // denormal range on their way to the exact fixed point at 0.
    _MM_SET_FLUSH_ZERO_MODE(_MM_FLUSH_ZERO_ON);
    _MM_SET_DENORMALS_ZERO_MODE(_MM_DENORMALS_ZERO_ON);
#endif
    return eoc::run_cli(argc, argv);
}
