#include "frac/cli.hpp"

int main(int argc, char** argv) { return frac::main_entry(argc, argv); }
