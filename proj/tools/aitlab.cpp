#include "aitlab/cli.hpp"

int main(int argc, char** argv) { return aitlab::cli::dispatch(argc, argv); }
