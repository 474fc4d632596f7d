// Acceptance suite runner: one line per criterion, nonzero exit on failure.
#include <cstdlib>
#include <iostream>
#include <string>

#include <lenspine/selftest.hpp>

int main(int argc, char** argv) {
    lenspine::SelftestOptions opt;
    for (int i = 1; i < argc; ++i) {
        std::string arg = argv[i];
        auto next_int = [&](int def) { return i + 1 < argc ? std::atoi(argv[++i]) : def; };
        if (arg == "--max-p") opt.max_p_exhaustive = next_int(opt.max_p_exhaustive);
        else if (arg == "--max-p-hull") opt.max_p_hull = next_int(opt.max_p_hull);
        else if (arg == "--max-p-euclid") opt.max_p_euclid = next_int(opt.max_p_euclid);
        else if (arg == "--max-p-farey") opt.max_p_farey = next_int(opt.max_p_farey);
        else {
            std::cerr << "unknown option: " << arg << "\n";
            return 2;
        }
    }
    auto results = lenspine::run_acceptance(opt, &std::cout);
    bool ok = true;
    for (const auto& r : results) ok = ok && r.pass;
    std::cout << (ok ? "all criteria passed" : "FAILURES present") << std::endl;
    return ok ? 0 : 1;
}
