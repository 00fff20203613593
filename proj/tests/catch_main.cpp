// Compiles the amalgamated Catch2 implementation (default main included)
// once; every unit test binary links against this object.
#include <catch2/catch_amalgamated.cpp>
