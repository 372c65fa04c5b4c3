#include "ein/cli.hpp"

int main(int argc, char** argv) { return ein::cli::run(argc, argv); }
