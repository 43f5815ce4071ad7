#include "zperm/cli.hpp"

int main(int argc, char** argv) { return zperm::cli::dispatch(argc, argv); }
