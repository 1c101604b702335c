#include "fdgs/cli.hpp"

int main(int argc, char** argv) {
    return fdgs::cli_main(std::vector<std::string>(argv + 1, argv + argc));
}
