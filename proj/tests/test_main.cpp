#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>

#ifdef __SSE2__
#include <immintrin.h>
#endif

int main(int argc, char** argv) {
#ifdef __SSE2__
    _MM_SET_FLUSH_ZERO_MODE(_MM_FLUSH_ZERO_ON);
    _MM_SET_DENORMALS_ZERO_MODE(_MM_DENORMALS_ZERO_ON);
#endif
    return doctest::Context(argc, argv).run();
}
