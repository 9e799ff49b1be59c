#include "commands.hpp"

int main(int argc, char** argv) {
    return qpoker::cli::run(argc, argv);
}
