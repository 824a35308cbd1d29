#include "exactexpo/cli.hpp"

int main(int argc, char** argv) { return exactexpo::cli::run(argc, argv); }
