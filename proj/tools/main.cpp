#include "cli.hpp"

int main(int argc, char** argv) { return particula::cli::run(argc, argv); }
