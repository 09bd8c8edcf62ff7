#include "expsieve/cli.hpp"

int main(int argc, char** argv) { return expsieve::run(argc, argv); }
