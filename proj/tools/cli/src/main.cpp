#include "toycascade/cli/app.hpp"

int main(int argc, char** argv) { return toycascade::cli::main_entry(argc, argv); }
