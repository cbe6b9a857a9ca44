#include "exadam/cli.hpp"

int main(int argc, char** argv) { return exadam::cli_main(argc, argv); }
