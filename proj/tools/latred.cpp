#include "latred/cli.hpp"

int main(int argc, char** argv) { return latred::cli_main(argc, argv); }
