#include <cstdio>
int main() { std::puts("mantel"); return 0; }
