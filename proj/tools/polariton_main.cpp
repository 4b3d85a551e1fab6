#include <cstdlib>
#include <cstring>

#include <unistd.h>

#include "polariton_app.hpp"

extern "C" char* openblas_get_corename(void);

int main(int argc, char** argv) {
    // OpenBLAS reads OPENBLAS_CORETYPE only at load time, so swapping out the
    // broken Cooperlake kernels means starting over once.
    if (!std::getenv("OPENBLAS_CORETYPE") && std::strcmp(openblas_get_corename(), "Cooperlake") == 0) {
        setenv("OPENBLAS_CORETYPE", "SkylakeX", 1);
        execv("/proc/self/exe", argv);
    }
    return polariton::app::run(argc, argv);
}
