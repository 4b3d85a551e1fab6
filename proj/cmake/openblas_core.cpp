#include <cstdio>
extern "C" char* openblas_get_corename(void);
int main() {
    std::printf("%s", openblas_get_corename());
    return 0;
}
