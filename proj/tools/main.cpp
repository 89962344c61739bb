#include "mcmcl/cli.hpp"

int main(int argc, char** argv) { return mcmcl::cli_main(argc, argv); }
