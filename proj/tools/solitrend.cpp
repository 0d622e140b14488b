#include <cstdio>

int main() {
    std::puts("solitrend placeholder");
    return 0;
}
