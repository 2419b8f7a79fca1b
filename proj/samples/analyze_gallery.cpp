// Prints the divisor profile and chain length of every builtin degeneration.

#include <iostream>

#include "neron/neron.hpp"

int main() {
    using namespace neron;
    for (const auto &d : gallery::degenerations()) {
        const auto an = analyze(d);
        std::cout << d.name << ": a = " << an.a() << ", steps = " << an.steps.size()
                  << ", type " << to_string(an.classification) << "\n";
        for (const auto &note : an.notes) {
            std::cout << "  " << note << "\n";
        }
    }
}
