#include "kemeny/cli.hpp"

#include <exception>
#include <iostream>

int main(int argc, char** argv) {
    try {
        return kemeny::cli::run(argc, argv, std::cout, std::cerr);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kemeny::cli::kExitInvalid;
    }
}
