#include "commands.hpp"

int main(int argc, char** argv) { return landau::cli::run(argc, argv); }
