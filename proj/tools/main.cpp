#include <cstdio>

int main() {
    std::puts("ninecusps CLI placeholder");
    return 0;
}
