#include "teso/cli.hpp"

int main(int argc, char** argv) { return teso::run_cli(argc, argv); }
