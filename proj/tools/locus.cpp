#include "locus/cli.hpp"

int main(int argc, char** argv) { return locus::cli::main(argc, argv); }
