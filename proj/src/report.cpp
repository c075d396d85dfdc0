#include "stratal/report.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>

namespace stratal {

void ReportDoc::emit() const {
    std::cout << "== stratal report: " << command << " ==\n";
    for (const auto& l : human) std::cout << l << "\n";
    std::cout << "elapsed: " << elapsed_ms << " ms\n";
    std::cout << "--- machine readable ---\n" << machine.dump(2) << "\n";

    const char* dir = std::getenv("STRATAL_REPORT_DIR");
    if (dir && *dir) {
        std::string digest =
            machine.contains("digest") ? machine["digest"].get<std::string>() : "nodigest";
        std::string path = std::string(dir) + "/" + command + "-" + digest + ".json";
        std::ofstream out(path);
        if (out)
            out << machine.dump(2) << "\n";
        else
            std::cerr << "warning: cannot write report to " << path << "\n";
    }
}

}  // namespace stratal
