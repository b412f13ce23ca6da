// Acceptance run: one PASS/FAIL line per criterion.
//
//   acceptance            all nine criteria, short mode
//   acceptance --only 7   a single criterion
//   acceptance --long     heavy oracle runs too (also ORBITKIT_LONG=1)

#include <cstdlib>
#include <cstring>
#include <iostream>
#include <string>

#include <orbitkit/verify.hpp>

int main(int argc, char** argv) {
    orbitkit::verify::Options opt;
    int only = 0;
    if (const char* env = std::getenv("ORBITKIT_LONG"); env && *env && std::strcmp(env, "0") != 0) opt.long_mode = true;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--long") {
            opt.long_mode = true;
        } else if (arg == "--only" && i + 1 < argc) {
            only = std::atoi(argv[++i]);
        } else if (arg == "--jobs" && i + 1 < argc) {
            opt.jobs = static_cast<unsigned>(std::atoi(argv[++i]));
        } else {
            std::cerr << "usage: acceptance [--long] [--only N] [--jobs N]\n";
            return 2;
        }
    }
    const auto criteria = orbitkit::verify::all_criteria();
    if (only < 0 || only > static_cast<int>(criteria.size())) {
        std::cerr << "no criterion " << only << '\n';
        return 2;
    }
    bool ok = true;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        if (only && static_cast<int>(k) + 1 != only) continue;
        const auto v = criteria[k](opt);
        std::cout << orbitkit::verify::line(v) << std::endl;
        ok = ok && v.passed;
    }
    return ok ? 0 : 1;
}
