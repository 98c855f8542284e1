#include "cli_app.hpp"

int main(int argc, char** argv) { return hotelling::cli::run_main(argc, argv); }
