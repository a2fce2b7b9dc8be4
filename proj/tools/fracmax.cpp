#include "fracmax/cli.hpp"

int main(int argc, char** argv) { return fracmax::cli::run(argc, argv); }
