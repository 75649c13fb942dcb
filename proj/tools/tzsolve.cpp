#include "tz/cli.hpp"

int main(int argc, char** argv) { return tz::cli::run(argc, argv); }
