#include "cli.hpp"

int main(int argc, char** argv) { return souriau::cli::run(argc, argv); }
