#include "flatgrowth/cli.hpp"

int main(int argc, char** argv) { return flatgrowth::cli::run(argc, argv); }
