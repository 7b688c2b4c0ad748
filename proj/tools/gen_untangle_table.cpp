// Prints the crossing-vertex expansion table computed by the brute-force oracle.
#include <iostream>

#include "satr/acp.hpp"

int main() {
    std::cout << satr::generate_untangle_table();
    return 0;
}
