#include "cli_core.hpp"

int main(int argc, char** argv) { return ggsum::cli::cli_main(argc, argv); }
