#include "storplan/storplan.hpp"
int main() { return 0; }
