#include "cli.hpp"

int main(int argc, char** argv) { return galdesc::cli::run(argc, argv); }
